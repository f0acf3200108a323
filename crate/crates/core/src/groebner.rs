//! Buchberger's algorithm, multivariate division and elimination ideals
//! over ℚ.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Monomial, MonomialOrder, MultiPoly, OrderKind, Rational, Ring};

type Term = (Monomial, Rational);

/// Terms sorted in descending order under the working monomial order.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<Term>,
}

impl Sorted {
    fn from_poly(p: &MultiPoly, ord: &MonomialOrder) -> Self {
        Sorted {
            terms: p.sorted_terms(ord),
        }
    }

    fn to_poly(&self, ring: &Arc<Ring>) -> MultiPoly {
        MultiPoly::from_sorted_unchecked(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = self.lc().recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self[from..] - c * m * g`, merged in order.
    fn sub_scaled(
        &self,
        from: usize,
        c: &Rational,
        m: &Monomial,
        g: &Sorted,
        ord: &MonomialOrder,
    ) -> Sorted {
        let a = &self.terms[from..];
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let mut shifted: Option<Monomial> = None;
        while i < a.len() || j < g.terms.len() {
            if j < g.terms.len() && shifted.is_none() {
                shifted = Some(g.terms[j].0.mul(m));
            }
            let take = match (a.get(i), shifted.as_ref()) {
                (Some(x), Some(s)) => ord.cmp(&x.0, s),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let s = shifted.take().expect("present");
                    out.push((s, -(c * &g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = shifted.take().expect("present");
                    let v = &a[i].1 - c * &g.terms[j].1;
                    if !v.is_zero() {
                        out.push((s, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of `p` by `divisors`. Returns the remainder, and the
/// quotient terms per divisor when `track` is set.
fn divide(
    p: Sorted,
    divisors: &[Sorted],
    ord: &MonomialOrder,
    track: bool,
) -> (Sorted, Vec<Vec<Term>>) {
    let mut quotients = vec![Vec::new(); if track { divisors.len() } else { 0 }];
    let mut remainder = Vec::new();
    let mut work = p;
    let mut head = 0;
    while head < work.terms.len() {
        let (m, c) = &work.terms[head];
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(k, d)| d.lm().quotient_of(m).map(|q| (k, q)));
        match hit {
            Some((k, q)) => {
                let coeff = c / divisors[k].lc();
                work = work.sub_scaled(head, &coeff, &q, &divisors[k], ord);
                head = 0;
                if track {
                    quotients[k].push((q, coeff));
                }
            }
            None => {
                remainder.push(work.terms[head].clone());
                head += 1;
            }
        }
    }
    (Sorted { terms: remainder }, quotients)
}

fn check_common_ring(polys: &[MultiPoly], ord: &MonomialOrder) -> Result<Option<Arc<Ring>>> {
    let Some(first) = polys.first() else {
        return Ok(None);
    };
    for p in polys {
        if p.ring() != first.ring() {
            return Err(Error::RingMismatch(
                "polynomials from different rings".into(),
            ));
        }
    }
    if ord.nvars() != first.nvars() {
        return Err(Error::RingMismatch(format!(
            "order over {} variables, ring has {}",
            ord.nvars(),
            first.nvars()
        )));
    }
    Ok(Some(first.ring().clone()))
}

/// Multivariate division: `p = Σ qᵢ dᵢ + remainder` where no term of the
/// remainder is divisible by any leading monomial of the divisors.
pub fn reduce(
    p: &MultiPoly,
    divisors: &[MultiPoly],
    ord: &MonomialOrder,
) -> Result<(Vec<MultiPoly>, MultiPoly)> {
    let mut all = divisors.to_vec();
    all.push(p.clone());
    check_common_ring(&all, ord)?;
    if divisors.iter().any(MultiPoly::is_zero) {
        return Err(Error::InvalidInput(
            "division by the zero polynomial".into(),
        ));
    }
    let ds: Vec<Sorted> = divisors.iter().map(|d| Sorted::from_poly(d, ord)).collect();
    let (rem, qs) = divide(Sorted::from_poly(p, ord), &ds, ord, true);
    let ring = p.ring();
    let quotients = qs
        .into_iter()
        .map(|q| MultiPoly::from_terms(ring, q))
        .collect();
    Ok((quotients, rem.to_poly(ring)))
}

#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    /// Zero generators are dropped; the rest must share `ring`.
    pub fn new(ring: &Arc<Ring>, generators: Vec<MultiPoly>) -> Result<Self> {
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(
                    "generator outside the ideal's ring".into(),
                ));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            generators,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    polys: Vec<MultiPoly>,
    ord: MonomialOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ord
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// True when the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(MultiPoly::is_constant)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_term(&self.ord).expect("nonzero").0)
            .collect()
    }

    /// Normal form of `p` modulo the basis.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        Ok(reduce(p, &self.polys, &self.ord)?.1)
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let sorted: Vec<Sorted> = self
            .polys
            .iter()
            .map(|p| Sorted::from_poly(p, &self.ord))
            .collect();
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                let s = s_polynomial(&sorted[i], &sorted[j], &self.ord);
                if !divide(s, &sorted, &self.ord, false).0.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn s_polynomial(f: &Sorted, g: &Sorted, ord: &MonomialOrder) -> Sorted {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).expect("lcm divisible");
    let mg = g.lm().quotient_of(&l).expect("lcm divisible");
    let cf = f.lc().recip();
    let cg = g.lc().recip();
    let left = Sorted {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c * &cf)).collect(),
    };
    left.sub_scaled(0, &cg, &mg, g, ord)
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of `ideal` under `ord`.
///
/// Classic Buchberger with normal pair selection (smallest lcm first) and
/// the coprime-leading-monomial criterion.
pub fn buchberger(ideal: &Ideal, ord: &MonomialOrder) -> Result<GroebnerBasis> {
    check_common_ring(ideal.generators(), ord)?;
    if ord.nvars() != ideal.ring.nvars() {
        return Err(Error::RingMismatch("order does not match ring".into()));
    }
    let mut basis: Vec<Sorted> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let add = |h: Sorted, basis: &mut Vec<Sorted>, pairs: &mut Vec<Pair>| {
        let t = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: t,
                lcm: g.lm().lcm(h.lm()),
            });
        }
        basis.push(h);
    };
    for g in ideal.generators() {
        let mut s = Sorted::from_poly(g, ord);
        s.make_monic();
        add(s, &mut basis, &mut pairs);
    }
    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(k);
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        if f.lm().is_coprime(g.lm()) {
            continue;
        }
        let s = s_polynomial(f, g, ord);
        let (mut h, _) = divide(s, &basis, ord, false);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let unit = h.lm().is_one();
        add(h, &mut basis, &mut pairs);
        if unit {
            break;
        }
    }
    Ok(GroebnerBasis {
        ring: ideal.ring.clone(),
        polys: interreduce(basis, ord)
            .iter()
            .map(|s| s.to_poly(&ideal.ring))
            .collect(),
        ord: ord.clone(),
        reduced: true,
    })
}

/// Minimal, monic, tail-reduced basis sorted by ascending leading monomial.
fn interreduce(basis: Vec<Sorted>, ord: &MonomialOrder) -> Vec<Sorted> {
    if let Some(unit) = basis.iter().find(|g| g.lm().is_one()) {
        let nvars = unit.lm().nvars();
        return vec![Sorted {
            terms: vec![(Monomial::one(nvars), Rational::one())],
        }];
    }
    let mut minimal: Vec<Sorted> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    let mut out = minimal.clone();
    for i in 0..minimal.len() {
        let others: Vec<Sorted> = out
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| s.clone())
            .collect();
        let head = Sorted {
            terms: vec![out[i].terms[0].clone()],
        };
        let tail = Sorted {
            terms: out[i].terms[1..].to_vec(),
        };
        let (rem, _) = divide(tail, &others, ord, false);
        let mut full = head;
        full.terms.extend(rem.terms);
        full.make_monic();
        out[i] = full;
    }
    out
}

/// Gröbner basis of `I ∩ ℚ[remaining variables]`.
///
/// Uses the block order with `eliminate` as the leading block (degree
/// reverse lexicographic inside each block) and keeps the basis elements
/// free of eliminated variables.
pub fn elimination_ideal(ideal: &Ideal, eliminate: &[usize]) -> Result<GroebnerBasis> {
    let n = ideal.ring.nvars();
    let mut marked = vec![false; n];
    for &v in eliminate {
        if v >= n || std::mem::replace(&mut marked[v], true) {
            return Err(Error::InvalidInput(format!(
                "bad elimination variable set {eliminate:?}"
            )));
        }
    }
    if eliminate.is_empty() || eliminate.len() == n {
        return Err(Error::InvalidInput(
            "elimination set must be a proper nonempty subset".into(),
        ));
    }
    let mut priority: Vec<usize> = eliminate.to_vec();
    priority.extend((0..n).filter(|v| !marked[*v]));
    let ord = MonomialOrder::with_priority(OrderKind::Elimination(eliminate.len()), priority)?;
    let full = buchberger(ideal, &ord)?;
    let polys = full
        .polys
        .into_iter()
        .filter(|p| eliminate.iter().all(|&v| !p.involves(v)))
        .collect();
    Ok(GroebnerBasis {
        ring: full.ring,
        polys,
        ord,
        reduced: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"])
    }

    fn p(ring: &Arc<Ring>, s: &str) -> MultiPoly {
        MultiPoly::parse(ring, s).unwrap()
    }

    #[test]
    fn reduce_substitutes_leading_variable() {
        let r = xy();
        let (qs, rem) = reduce(&p(&r, "x^2*y"), &[p(&r, "x - y")], &MonomialOrder::lex(2)).unwrap();
        assert_eq!(rem, p(&r, "y^3"));
        assert_eq!(&(&qs[0] * &p(&r, "x - y")) + &rem, p(&r, "x^2*y"));
    }

    #[test]
    fn reduce_self_is_zero() {
        let r = xy();
        let g = p(&r, "3*x^2*y - y^3 + 7");
        for ord in [MonomialOrder::lex(2), MonomialOrder::degrevlex(2)] {
            assert!(reduce(&g, std::slice::from_ref(&g), &ord)
                .unwrap()
                .1
                .is_zero());
        }
    }

    #[test]
    fn reduce_by_two_divisors() {
        // x^2 + y^2 - 1 = (x + y)(x - y) + (2y^2 - 1)
        let r = xy();
        let divisors = [p(&r, "x - y"), p(&r, "2*y^2 - 1")];
        let f = p(&r, "x^2 + y^2 - 1");
        let (qs, rem) = reduce(&f, &divisors, &MonomialOrder::lex(2)).unwrap();
        assert!(rem.is_zero());
        assert_eq!(&(&qs[0] * &divisors[0]) + &(&qs[1] * &divisors[1]), f);
        assert_eq!(qs[0], p(&r, "x + y"));
        assert_eq!(qs[1], p(&r, "1"));
    }

    #[test]
    fn reduce_rejects_zero_divisor() {
        let r = xy();
        assert!(reduce(&p(&r, "x"), &[MultiPoly::zero(&r)], &MonomialOrder::lex(2)).is_err());
    }

    #[test]
    fn circle_and_line() {
        let r = xy();
        let ideal = Ideal::new(&r, vec![p(&r, "x^2 + y^2 - 1"), p(&r, "x - y")]).unwrap();
        let gb = buchberger(&ideal, &MonomialOrder::lex(2)).unwrap();
        let mut got: Vec<String> = gb.polys().iter().map(|g| g.to_text()).collect();
        got.sort();
        assert_eq!(got, vec!["x - y", "y^2 - 1/2"]);
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn principal_ideal() {
        let r = xy();
        let gb = buchberger(
            &Ideal::new(&r, vec![p(&r, "x")]).unwrap(),
            &MonomialOrder::degrevlex(2),
        )
        .unwrap();
        assert_eq!(gb.polys(), &[p(&r, "x")]);
        let gb = buchberger(
            &Ideal::new(&r, vec![p(&r, "2*x + 4")]).unwrap(),
            &MonomialOrder::degrevlex(2),
        )
        .unwrap();
        assert_eq!(gb.polys(), &[p(&r, "x + 2")]);
    }

    #[test]
    fn unit_ideal_collapses() {
        let r = xy();
        let ideal = Ideal::new(&r, vec![p(&r, "x*y - 1"), p(&r, "x")]).unwrap();
        let gb = buchberger(&ideal, &MonomialOrder::degrevlex(2)).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.polys(), &[MultiPoly::one(&r)]);
    }

    #[test]
    fn eliminating_from_a_line_leaves_nothing() {
        let r = xy();
        let gb = elimination_ideal(&Ideal::new(&r, vec![p(&r, "x - y")]).unwrap(), &[0]).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn elimination_rejects_improper_sets() {
        let r = xy();
        let ideal = Ideal::new(&r, vec![p(&r, "x - y")]).unwrap();
        assert!(elimination_ideal(&ideal, &[]).is_err());
        assert!(elimination_ideal(&ideal, &[0, 1]).is_err());
        assert!(elimination_ideal(&ideal, &[2]).is_err());
    }

    #[test]
    fn twisted_cubic_elimination() {
        // (t, t^2, t^3): eliminating t gives y - x^2, z - x*y, ...
        let r = Ring::new(["t", "x", "y", "z"]);
        let ideal =
            Ideal::new(&r, vec![p(&r, "x - t"), p(&r, "y - t^2"), p(&r, "z - t^3")]).unwrap();
        let gb = elimination_ideal(&ideal, &[0]).unwrap();
        assert!(!gb.is_empty());
        for g in gb.polys() {
            assert!(!g.involves(0));
            // vanishes on the curve
            for t in -3..=3 {
                let v = g.eval(&[int(0), int(t), int(t * t), int(t * t * t)]);
                assert!(v.is_zero());
            }
        }
        assert!(gb.contains(&p(&r, "y - x^2")).unwrap());
        assert!(gb.contains(&p(&r, "z - x^3")).unwrap());
    }

    #[test]
    fn reduced_basis_is_independent_of_generator_order() {
        let r = Ring::new(["x", "y", "z"]);
        let gens = vec![
            p(&r, "x^2 + y*z - 2"),
            p(&r, "y^2 - x*z + 1/3"),
            p(&r, "z^2 + x*y - 5"),
        ];
        let ord = MonomialOrder::degrevlex(3);
        let a = buchberger(&Ideal::new(&r, gens.clone()).unwrap(), &ord).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let b = buchberger(&Ideal::new(&r, rev).unwrap(), &ord).unwrap();
        assert_eq!(a.polys(), b.polys());
        assert!(a.satisfies_buchberger_criterion());
        for g in &gens {
            assert!(a.contains(g).unwrap());
        }
        for g in a.polys() {
            assert_eq!(g.leading_term(&ord).unwrap().1, rat(1, 1));
        }
    }
}
