//! Real and complex root counting for zero-dimensional systems via the
//! signature and rank of the Hermite trace form.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::sign;
use crate::exact::{Monomial, MonomialOrder, MultiPoly, Rational};
use crate::groebner::{buchberger, GroebnerBasis, Ideal};
use crate::par::Execution;

/// Monomials outside the leading-term staircase, ascending in the basis
/// order. Index 0 is always the monomial 1 (unless the ideal is the unit
/// ideal, in which case the basis is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
    ord: MonomialOrder,
}

impl QuotientBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ord
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermiteMatrix {
    entries: Vec<Vec<Rational>>,
}

impl HermiteMatrix {
    pub fn from_rows(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Hermite matrix must be square".into()));
        }
        Ok(HermiteMatrix { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// One row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub real_distinct: usize,
    pub complex_distinct: usize,
}

/// Staircase complement of the leading monomials of `gb`.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<QuotientBasis> {
    let ord = gb.order().clone();
    if gb.is_unit() {
        return Ok(QuotientBasis {
            monomials: Vec::new(),
            ord,
        });
    }
    let n = gb.ring().nvars();
    let lms = gb.leading_monomials();
    let mut bounds = vec![u32::MAX; n];
    for m in &lms {
        if let Some(v) = m.pure_power_var() {
            bounds[v] = bounds[v].min(m.exponents()[v]);
        }
    }
    if let Some(v) = bounds.iter().position(|&b| b == u32::MAX) {
        return Err(Error::InfiniteVariety(gb.ring().names()[v].clone()));
    }
    let mut monomials = Vec::new();
    let mut e = vec![0u32; n];
    'outer: loop {
        let m = Monomial::new(e.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            monomials.push(m);
        }
        for k in 0..n {
            e[k] += 1;
            if e[k] < bounds[k] {
                continue 'outer;
            }
            e[k] = 0;
        }
        break;
    }
    monomials.sort_by(|a, b| ord.cmp(a, b));
    Ok(QuotientBasis { monomials, ord })
}

/// Coordinates of the normal form of `p` in the quotient basis.
fn coordinates(
    p: &MultiPoly,
    gb: &GroebnerBasis,
    index: &HashMap<Monomial, usize>,
) -> Result<Vec<Rational>> {
    let nf = gb.normal_form(p)?;
    let mut v = vec![Rational::zero(); index.len()];
    for (m, c) in nf.terms() {
        let k = index.get(m).ok_or_else(|| {
            Error::InvalidInput(format!("normal form term {m:?} outside the quotient basis"))
        })?;
        v[*k] = c.clone();
    }
    Ok(v)
}

fn basis_index(basis: &QuotientBasis) -> HashMap<Monomial, usize> {
    basis
        .monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// Trace of `g ↦ f·g` on the quotient ring: `Σᵢ [bᵢ] NF(f·bᵢ)`.
pub fn multiplication_trace(
    f: &MultiPoly,
    gb: &GroebnerBasis,
    basis: &QuotientBasis,
) -> Result<Rational> {
    let index = basis_index(basis);
    let ring = gb.ring();
    let mut tr = Rational::zero();
    for (i, b) in basis.monomials.iter().enumerate() {
        let fb = f.mul_term(b, &Rational::one());
        let fb = fb.with_ring(ring)?;
        tr += &coordinates(&fb, gb, &index)?[i];
    }
    Ok(tr)
}

type Matrix = Vec<Vec<Rational>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Multiplication matrices `M_b` (column k = coordinates of `b·b_k`) for
/// every basis monomial `b`.
fn basis_multiplication_matrices(gb: &GroebnerBasis, basis: &QuotientBasis) -> Result<Vec<Matrix>> {
    let index = basis_index(basis);
    let ring = gb.ring();
    let d = basis.len();
    let n = ring.nvars();
    let mut var_mats = Vec::with_capacity(n);
    for v in 0..n {
        let mut m = vec![vec![Rational::zero(); d]; d];
        for (k, b) in basis.monomials.iter().enumerate() {
            let shifted = b.mul(&Monomial::var(n, v, 1));
            let col = match index.get(&shifted) {
                Some(&j) => {
                    let mut e = vec![Rational::zero(); d];
                    e[j] = Rational::one();
                    e
                }
                None => coordinates(
                    &MultiPoly::monomial(ring, shifted, Rational::one()),
                    gb,
                    &index,
                )?,
            };
            for (row, c) in col.into_iter().enumerate() {
                m[row][k] = c;
            }
        }
        var_mats.push(m);
    }
    // Staircases are closed under division, so every b ≠ 1 is x_v times an
    // earlier basis monomial.
    let mut mats: Vec<Matrix> = Vec::with_capacity(d);
    for b in &basis.monomials {
        let m = match b
            .pure_power_var()
            .or_else(|| b.exponents().iter().position(|&e| e > 0))
        {
            None => (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
            Some(v) => {
                let prev = Monomial::var(n, v, 1).quotient_of(b).expect("divisible");
                let p = index[&prev];
                mat_mul(&var_mats[v], &mats[p])
            }
        };
        mats.push(m);
    }
    Ok(mats)
}

/// `H_ij = Tr(m_{bᵢ bⱼ})` over the quotient basis.
pub fn hermite_matrix(gb: &GroebnerBasis, basis: &QuotientBasis) -> Result<HermiteMatrix> {
    hermite_matrix_with(gb, basis, Execution::default())
}

pub fn hermite_matrix_with(
    gb: &GroebnerBasis,
    basis: &QuotientBasis,
    exec: Execution,
) -> Result<HermiteMatrix> {
    let d = basis.len();
    let mats = basis_multiplication_matrices(gb, basis)?;
    let rows = exec.map_range(d, |i| {
        (i..d)
            .map(|j| {
                let (a, b) = (&mats[i], &mats[j]);
                let mut tr = Rational::zero();
                for k in 0..d {
                    for l in 0..d {
                        if !a[k][l].is_zero() && !b[l][k].is_zero() {
                            tr += &a[k][l] * &b[l][k];
                        }
                    }
                }
                tr
            })
            .collect::<Vec<_>>()
    });
    let mut entries = vec![vec![Rational::zero(); d]; d];
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            entries[j][i] = v.clone();
            entries[i][j] = v;
        }
    }
    Ok(HermiteMatrix { entries })
}

fn swap_cr(b: &mut Matrix, i: usize, j: usize) {
    b.swap(i, j);
    for row in b.iter_mut() {
        row.swap(i, j);
    }
}

/// Row i ← row i + row j, row j ← row j − row i; then the same on columns.
fn sum_diff_cr(b: &mut Matrix, i: usize, j: usize) {
    let (ri, rj) = (b[i].clone(), b[j].clone());
    b[i] = ri.iter().zip(&rj).map(|(x, y)| x + y).collect();
    b[j] = ri.iter().zip(&rj).map(|(x, y)| y - x).collect();
    for row in b.iter_mut() {
        let (x, y) = (row[i].clone(), row[j].clone());
        row[i] = &x + &y;
        row[j] = y - x;
    }
}

/// Clears column i below and row i right of a nonzero pivot.
fn clear_cr(b: &mut Matrix, i: usize) {
    let n = b.len();
    let d = b[i][i].clone();
    let ri = b[i].clone();
    for row in b.iter_mut().skip(i + 1) {
        if row[i].is_zero() {
            continue;
        }
        let f = &row[i] / &d;
        for (x, y) in row.iter_mut().zip(&ri) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    let ci: Vec<Rational> = b.iter().map(|row| row[i].clone()).collect();
    for j in i + 1..n {
        if b[i][j].is_zero() {
            continue;
        }
        let f = &b[i][j] / &d;
        for (row, y) in b.iter_mut().zip(&ci) {
            if !y.is_zero() {
                row[j] -= &f * y;
            }
        }
    }
}

/// Exact congruence diagonalization of a symmetric matrix.
pub fn symmetric_reduce(h: &HermiteMatrix) -> Vec<Rational> {
    let mut b = h.entries.clone();
    let n = b.len();
    for i in 0..n {
        if b[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !b[j][j].is_zero()) {
                swap_cr(&mut b, i, j);
            }
        }
        if b[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !b[i][j].is_zero()) {
                sum_diff_cr(&mut b, i, j);
            }
        }
        if !b[i][i].is_zero() {
            clear_cr(&mut b, i);
        }
    }
    (0..n).map(|i| b[i][i].clone()).collect()
}

pub fn signature_and_rank(h: &HermiteMatrix) -> Result<RootCount> {
    if !h.is_symmetric() {
        return Err(Error::InvalidInput(
            "Hermite matrix is not symmetric".into(),
        ));
    }
    let diag = symmetric_reduce(h);
    let pos = diag.iter().filter(|q| sign(q) > 0).count();
    let neg = diag.iter().filter(|q| sign(q) < 0).count();
    Ok(RootCount {
        real_distinct: pos - neg,
        complex_distinct: pos + neg,
    })
}

/// Everything computed on the way to a root count.
#[derive(Debug, Clone)]
pub struct Certification {
    pub basis: GroebnerBasis,
    pub quotient: QuotientBasis,
    pub hermite: HermiteMatrix,
    pub count: RootCount,
}

pub fn certify(system: &[MultiPoly], exec: Execution) -> Result<Certification> {
    let ring = system
        .first()
        .ok_or_else(|| Error::InvalidInput("empty polynomial system".into()))?
        .ring()
        .clone();
    let ideal = Ideal::new(&ring, system.to_vec())?;
    let basis = buchberger(&ideal, &MonomialOrder::degrevlex(ring.nvars()))?;
    let quotient = quotient_basis(&basis)?;
    let hermite = hermite_matrix_with(&basis, &quotient, exec)?;
    let count = signature_and_rank(&hermite)?;
    Ok(Certification {
        basis,
        quotient,
        hermite,
        count,
    })
}

/// Distinct real and complex roots of a zero-dimensional system.
pub fn count_real_roots(system: &[MultiPoly]) -> Result<RootCount> {
    Ok(certify(system, Execution::default())?.count)
}
