//! Arbitrary-precision rationals.
//!
//! `BigRational` keeps every value in lowest terms with a positive
//! denominator, which is exactly the canonical form the polynomial layer
//! relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedDiv, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rational_arith(a: &Rational, b: &Rational, op: RationalOp) -> Result<Rational> {
    Ok(match op {
        RationalOp::Add => a + b,
        RationalOp::Sub => a - b,
        RationalOp::Mul => a * b,
        RationalOp::Div => a.checked_div(b).ok_or(Error::DivisionByZero)?,
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossy conversion used only for numerical cross-checks.
pub fn to_f64(q: &Rational) -> f64 {
    let (n, d) = (q.numer(), q.denom());
    match (n.to_string().parse::<f64>(), d.to_string().parse::<f64>()) {
        (Ok(n), Ok(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both down so the ratio survives f64 range limits.
            let shift = n.bits().max(d.bits()).saturating_sub(900);
            let n = n >> shift;
            let d = d >> shift;
            let n: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn gcd_of_numerators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_reduces() {
        assert_eq!(
            rational_arith(&rat(1, 2), &rat(1, 3), RationalOp::Add).unwrap(),
            rat(5, 6)
        );
        let q = rat(2, 4);
        assert_eq!(q.numer(), &BigInt::from(1));
        assert_eq!(q.denom(), &BigInt::from(2));
        let neg = rat(3, -6);
        assert_eq!(neg.denom(), &BigInt::from(2));
        assert_eq!(neg.numer(), &BigInt::from(-1));
    }

    #[test]
    fn big_round_trip() {
        let big = Rational::from_integer(BigInt::from(10).pow(40));
        let half = rational_arith(&big, &int(2), RationalOp::Div).unwrap();
        let back = rational_arith(&half, &int(2), RationalOp::Mul).unwrap();
        assert_eq!(back, big);
        assert_eq!(back.numer().to_string(), format!("1{}", "0".repeat(40)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            rational_arith(&int(1), &int(0), RationalOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn float_conversion_survives_huge_values() {
        let q = Rational::new(
            BigInt::from(3) * BigInt::from(10).pow(400),
            BigInt::from(10).pow(400),
        );
        assert!((to_f64(&q) - 3.0).abs() < 1e-12);
    }
}
