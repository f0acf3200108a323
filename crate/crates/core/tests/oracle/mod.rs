//! Independent exact oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use num_traits::{Signed, Zero};

use vortexre::exact::rational::int;
use vortexre::exact::Rational;
use vortexre::hermite::HermiteMatrix;

/// Coefficients low to high.
pub type UPoly = Vec<Rational>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn urem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

pub fn deriv(p: &UPoly) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect(),
    )
}

/// Distinct real roots by Sturm's theorem.
pub fn sturm_count(p: &UPoly) -> usize {
    let mut seq = vec![p.clone(), deriv(p)];
    while !seq.last().unwrap().is_empty() {
        let n = seq.len();
        let r: UPoly = urem(&seq[n - 2], &seq[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        seq.push(trim(r));
    }
    seq.pop();
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|s| *s != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let lead = |q: &UPoly| {
        if q.last().unwrap().is_positive() {
            1
        } else {
            -1
        }
    };
    let at_pos: Vec<i32> = seq.iter().map(lead).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|q| {
            if (q.len() - 1) % 2 == 0 {
                lead(q)
            } else {
                -lead(q)
            }
        })
        .collect();
    changes(at_neg) - changes(at_pos)
}

/// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free
/// algorithm, coefficients high to low.
pub fn charpoly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut v: Vec<Rational> = vec![int(1)];
    for r in 0..n {
        // principal submatrix of size r+1 uses row/col r
        let s: Vec<Rational> = (0..r).map(|j| a[j][r].clone()).collect();
        let rrow: Vec<Rational> = (0..r).map(|j| a[r][j].clone()).collect();
        // Toeplitz column: [1, -a_rr, -R s, -R A s, ...]
        let mut col = vec![int(1), -a[r][r].clone()];
        let mut as_vec = s.clone();
        for _ in 0..r {
            let dot: Rational = rrow.iter().zip(&as_vec).map(|(x, y)| x * y).sum();
            col.push(-dot);
            as_vec = (0..r)
                .map(|i| (0..r).map(|j| &a[i][j] * &as_vec[j]).sum())
                .collect();
        }
        let mut next = vec![Rational::zero(); r + 2];
        for (i, ci) in col.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i + j < r + 2 {
                    next[i + j] += ci * vj;
                }
            }
        }
        v = next;
    }
    v
}

/// (positive, negative) eigenvalue counts of a symmetric matrix via
/// Descartes' rule, exact because all roots are real.
pub fn inertia(h: &HermiteMatrix) -> (usize, usize) {
    let mut c = charpoly(h.entries());
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let changes = |cs: Vec<i32>| {
        let s: Vec<i32> = cs.into_iter().filter(|s| *s != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign = |q: &Rational| {
        if q.is_positive() {
            1
        } else if q.is_negative() {
            -1
        } else {
            0
        }
    };
    let deg = c.len() - 1;
    let pos = changes(c.iter().map(sign).collect());
    let neg = changes(
        c.iter()
            .enumerate()
            .map(|(i, q)| {
                if (deg - i) % 2 == 1 {
                    -sign(q)
                } else {
                    sign(q)
                }
            })
            .collect(),
    );
    (pos, neg)
}

// ---------- Hermite vs oracles ----------
