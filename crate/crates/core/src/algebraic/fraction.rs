//! Rational functions whose denominators are kept as a product of known
//! factors, so cancellation never needs a multivariate gcd.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{MonomialOrder, MultiPoly, Rational, Ring};

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: MultiPoly,
    /// Distinct primitive factors with multiplicities; the constant part
    /// of the denominator is always folded into `num`.
    den: Vec<(MultiPoly, u32)>,
}

impl RationalFunction {
    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn new(num: MultiPoly, den: Vec<(MultiPoly, u32)>) -> Self {
        let mut out = RationalFunction {
            num,
            den: Vec::new(),
        };
        for (f, k) in den {
            out.push_den(f, k);
        }
        out.cancel();
        out
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(MultiPoly, u32)] {
        &self.den
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.num.ring()
    }

    pub fn denominator(&self) -> MultiPoly {
        self.den
            .iter()
            .fold(MultiPoly::one(self.num.ring()), |acc, (f, k)| {
                &acc * &f.pow(*k)
            })
    }

    fn push_den(&mut self, f: MultiPoly, k: u32) {
        if k == 0 {
            return;
        }
        let (f, c) = f.primitive_part(&MonomialOrder::degrevlex(f.nvars()));
        if f.is_constant() {
            // f is the constant 1 here; c carries the value
            let c = num_traits::pow(c, k as usize);
            self.num = self.num.scale(&c.recip());
            return;
        }
        self.num = self.num.scale(&num_traits::pow(c, k as usize).recip());
        match self.den.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += k,
            None => self.den.push((f, k)),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        let mut out = RationalFunction::from_poly(&self.num * &other.num);
        for (f, k) in self.den.iter().chain(&other.den) {
            out.push_den(f.clone(), *k);
        }
        out.cancel();
        out
    }

    /// `self / other`; the numerator of `other` is split over `candidates`
    /// (anything left over becomes one opaque factor).
    pub fn div(
        &self,
        other: &RationalFunction,
        candidates: &[MultiPoly],
    ) -> Result<RationalFunction> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = self.num.clone();
        for (f, k) in &other.den {
            num = &num * &f.pow(*k);
        }
        let mut out = RationalFunction {
            num,
            den: Vec::new(),
        };
        for (f, k) in &self.den {
            out.push_den(f.clone(), *k);
        }
        let (factors, rest) = split_factors(&other.num, candidates)?;
        for (f, k) in factors {
            out.push_den(f, k);
        }
        out.push_den(rest, 1);
        out.cancel();
        Ok(out)
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let mut den: Vec<(MultiPoly, u32)> = self.den.clone();
        for (f, k) in &other.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, m)) => *m = (*m).max(*k),
                None => den.push((f.clone(), *k)),
            }
        }
        let lift = |r: &RationalFunction| {
            den.iter().fold(r.num.clone(), |acc, (f, k)| {
                let have = r.den.iter().find(|(g, _)| g == f).map_or(0, |(_, m)| *m);
                &acc * &f.pow(k - have)
            })
        };
        let mut out = RationalFunction {
            num: &lift(self) + &lift(other),
            den,
        };
        out.cancel();
        out
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> RationalFunction {
        let mut out = RationalFunction {
            num: &self.num * p,
            den: self.den.clone(),
        };
        out.cancel();
        out
    }

    /// Divides common factors out of numerator and denominator.
    pub fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, k) in self.den.iter_mut() {
            while *k > 0 {
                match self.num.div_exact(f) {
                    Ok(Some(q)) => {
                        self.num = q;
                        *k -= 1;
                    }
                    _ => break,
                }
            }
        }
        self.den.retain(|(_, k)| *k > 0);
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.denominator().eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.denominator().eval_f64(point)
    }
}

/// Peels every candidate factor off `p` as often as it divides exactly.
/// Returns the factors found and the cofactor.
pub fn split_factors(
    p: &MultiPoly,
    candidates: &[MultiPoly],
) -> Result<(Vec<(MultiPoly, u32)>, MultiPoly)> {
    let mut rest = p.clone();
    let mut found = Vec::new();
    for f in candidates {
        if f.is_constant() {
            continue;
        }
        let mut k = 0;
        while let Some(q) = rest.div_exact(f)? {
            rest = q;
            k += 1;
        }
        if k > 0 {
            found.push((f.clone(), k));
        }
    }
    Ok((found, rest))
}
