use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{gcd_of_numerators, lcm_of_denominators, to_f64};
use super::{Monomial, MonomialOrder, Rational};
use crate::error::{Error, Result};

/// Variable names of a polynomial ring. Identity is positional; names only
/// matter for printing and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Sparse polynomial over ℚ. No stored coefficient is ever zero.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), Rational::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        assert_eq!(
            m.nvars(),
            ring.nvars(),
            "monomial length does not match ring"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(
                m.nvars(),
                ring.nvars(),
                "monomial length does not match ring"
            );
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_sorted_unchecked(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// True if `var` occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.names, other.ring.names
            )))
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = MultiPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The `ord`-maximal term.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Rational)> {
        if ord.nvars() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "order over {} variables, polynomial over {}",
                ord.nvars(),
                self.nvars()
            )));
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::InvalidInput("leading term of the zero polynomial".into()))
    }

    /// Terms in descending `ord` order.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        v
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, ord: &MonomialOrder) -> MultiPoly {
        match self.leading_term(ord) {
            Ok((_, lc)) => self.scale(&lc.recip()),
            Err(_) => self.clone(),
        }
    }

    /// Integer polynomial with content 1 and positive leading coefficient
    /// under `ord`, together with the rational factor `f` such that
    /// `self = f * result`.
    pub fn primitive_part(&self, ord: &MonomialOrder) -> (MultiPoly, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let den = lcm_of_denominators(self.terms.values());
        let scaled = self.scale(&Rational::from_integer(den.clone()));
        let mut content = gcd_of_numerators(scaled.terms.values());
        let (_, lc) = scaled.leading_term(ord).expect("nonzero");
        if lc.is_negative() {
            content = -content;
        }
        let factor = Rational::new(content.clone(), den);
        (
            scaled.scale(&Rational::from_integer(content).recip()),
            factor,
        )
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// gcd of the (integer) numerators; meaningful for integer polynomials.
    pub fn content(&self) -> BigInt {
        gcd_of_numerators(self.terms.values())
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_ring(divisor)?;
        let ord = MonomialOrder::lex(self.nvars());
        let (dm, dc) = divisor.leading_term(&ord)?;
        let mut rest = self.clone();
        let mut quotient = MultiPoly::zero(&self.ring);
        while !rest.is_zero() {
            let (m, c) = rest.leading_term(&ord)?;
            let Some(q) = dm.quotient_of(&m) else {
                return Ok(None);
            };
            let qc = c / &dc;
            rest = &rest - &divisor.mul_term(&q, &qc);
            quotient.add_term(q, qc);
        }
        Ok(Some(quotient))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            if p.ring != target {
                return Err(Error::RingMismatch("images live in different rings".into()));
            }
        }
        // Cache powers of each image; exponents are small.
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&target), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitutes a rational value for variable `var`, keeping the ring.
    pub fn substitute(&self, var: usize, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = std::mem::replace(&mut e[var], 0);
            let v = num_traits::pow(value.clone(), k as usize);
            out.add_term(Monomial::new(e), c * v);
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                to_f64(c)
                    * point
                        .iter()
                        .zip(m.exponents())
                        .map(|(x, &e)| x.powi(e as i32))
                        .product::<f64>()
            })
            .sum()
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let k = m.exponents()[var];
            if k == 0 {
                continue;
            }
            let mut e = m.exponents().to_vec();
            e[var] -= 1;
            out.add_term(
                Monomial::new(e),
                c * Rational::from_integer(BigInt::from(k)),
            );
        }
        out
    }

    /// Same terms reinterpreted in a ring with identical variable count.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<MultiPoly> {
        if ring.nvars() != self.nvars() {
            return Err(Error::RingMismatch("variable counts differ".into()));
        }
        Ok(MultiPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs)
            .expect("polynomials from different rings")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs)
            .expect("polynomials from different rings")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs)
            .expect("polynomials from different rings")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
