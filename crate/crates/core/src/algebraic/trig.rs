//! Polynomials in `cos βᵦ, sin βᵦ` of a few base angles and their tangent
//! half-angle images.
//!
//! Every vortex angle is an integer combination of base angles. With
//! `rᵦ = cot(βᵦ/2)`:
//!
//! ```text
//! cos β = (r² - 1) / (1 + r²),   sin β = 2r / (1 + r²)
//! ```
//!
//! so `r = 0` is `β = π` and `β = 0` is pushed to `r = ∞`.

use std::sync::Arc;

use crate::exact::rational::int;
use crate::exact::{Monomial, MultiPoly, Rational, Ring};

use super::fraction::RationalFunction;

/// Variable layout shared by a trigonometric ring (`c_b, s_b` per base
/// angle, then parameters) and its half-angle image (`r_b`, then the same
/// parameters).
#[derive(Debug, Clone)]
pub struct TrigRing {
    bases: Vec<String>,
    params: Vec<String>,
    trig: Arc<Ring>,
    half: Arc<Ring>,
}

impl TrigRing {
    pub fn new(bases: &[&str], params: &[&str]) -> Self {
        let mut trig_names: Vec<String> = bases
            .iter()
            .flat_map(|b| [format!("c_{b}"), format!("s_{b}")])
            .collect();
        trig_names.extend(params.iter().map(|p| p.to_string()));
        let half_names: Vec<String> = bases.iter().chain(params).map(|s| s.to_string()).collect();
        TrigRing {
            bases: bases.iter().map(|s| s.to_string()).collect(),
            params: params.iter().map(|s| s.to_string()).collect(),
            trig: Ring::new(trig_names),
            half: Ring::new(half_names),
        }
    }

    pub fn trig_ring(&self) -> &Arc<Ring> {
        &self.trig
    }

    pub fn half_ring(&self) -> &Arc<Ring> {
        &self.half
    }

    pub fn nbases(&self) -> usize {
        self.bases.len()
    }

    pub fn cos(&self, base: usize) -> MultiPoly {
        MultiPoly::var(&self.trig, 2 * base)
    }

    pub fn sin(&self, base: usize) -> MultiPoly {
        MultiPoly::var(&self.trig, 2 * base + 1)
    }

    pub fn param(&self, k: usize) -> MultiPoly {
        MultiPoly::var(&self.trig, 2 * self.bases.len() + k)
    }

    pub fn constant(&self, c: Rational) -> MultiPoly {
        MultiPoly::constant(&self.trig, c)
    }

    /// `(cos α, sin α)` for `α = Σ combo[b]·βᵦ`, expanded by repeated
    /// angle addition.
    pub fn cos_sin(&self, combo: &[i64]) -> (MultiPoly, MultiPoly) {
        assert_eq!(combo.len(), self.bases.len(), "angle combination length");
        let mut c = MultiPoly::one(&self.trig);
        let mut s = MultiPoly::zero(&self.trig);
        for (b, &n) in combo.iter().enumerate() {
            let (cb, sb) = (self.cos(b), self.sin(b));
            for _ in 0..n.unsigned_abs() {
                let (nc, ns) = if n > 0 {
                    (&(&c * &cb) - &(&s * &sb), &(&s * &cb) + &(&c * &sb))
                } else {
                    (&(&c * &cb) + &(&s * &sb), &(&s * &cb) - &(&c * &sb))
                };
                c = nc;
                s = ns;
            }
        }
        (c, s)
    }

    /// Half-angle variable `r_b` in the target ring.
    pub fn r(&self, base: usize) -> MultiPoly {
        MultiPoly::var(&self.half, base)
    }

    /// `1 + r_b²`.
    pub fn circle_factor(&self, base: usize) -> MultiPoly {
        let r = self.r(base);
        &MultiPoly::one(&self.half) + &(&r * &r)
    }

    /// Substitutes the half-angle identities into a trigonometric
    /// polynomial. Each term `c_b^a s_b^e` is homogenized to the largest
    /// `a + e` occurring for that base, so the denominator is exactly
    /// `Π (1 + r_b²)^{d_b}`.
    pub fn half_angle_transform(&self, p: &MultiPoly) -> RationalFunction {
        assert!(
            Arc::ptr_eq(p.ring(), &self.trig) || p.ring() == &self.trig,
            "foreign ring"
        );
        let nb = self.bases.len();
        let degs: Vec<u32> = (0..nb)
            .map(|b| {
                p.terms()
                    .map(|(m, _)| m.exponents()[2 * b] + m.exponents()[2 * b + 1])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let one = MultiPoly::one(&self.half);
        let mut pow_cache: Vec<[Vec<MultiPoly>; 3]> = (0..nb)
            .map(|b| {
                let r = self.r(b);
                let rr = &r * &r;
                [
                    vec![one.clone(), &rr - &one],
                    vec![one.clone(), r.scale(&int(2))],
                    vec![one.clone(), &rr + &one],
                ]
            })
            .collect();
        let mut pw = |b: usize, which: usize, k: u32| -> MultiPoly {
            let cache = &mut pow_cache[b][which];
            while cache.len() <= k as usize {
                let next = &cache[cache.len() - 1] * &cache[1];
                cache.push(next);
            }
            cache[k as usize].clone()
        };
        let mut num = MultiPoly::zero(&self.half);
        for (m, coef) in p.terms() {
            let e = m.exponents();
            let mut pe = vec![0u32; self.half.nvars()];
            for (k, slot) in pe[nb..].iter_mut().enumerate() {
                *slot = e[2 * nb + k];
            }
            let mut t = MultiPoly::monomial(&self.half, Monomial::new(pe), coef.clone());
            for b in 0..nb {
                let (a, s) = (e[2 * b], e[2 * b + 1]);
                for (which, k) in [(0, a), (1, s), (2, degs[b] - a - s)] {
                    if k > 0 {
                        t = &t * &pw(b, which, k);
                    }
                }
            }
            num = &num + &t;
        }
        let den = (0..nb)
            .filter(|&b| degs[b] > 0)
            .map(|b| (self.circle_factor(b), degs[b]))
            .collect();
        RationalFunction::new(num, den)
    }

    /// Factors that may appear in half-angle denominators: `1 + r_b²`,
    /// `r_b`, `r_a - r_b` and `r_a r_b + 1`.
    pub fn known_factors(&self) -> Vec<MultiPoly> {
        let nb = self.bases.len();
        let one = MultiPoly::one(&self.half);
        let mut out: Vec<MultiPoly> = (0..nb).map(|b| self.circle_factor(b)).collect();
        out.extend(self.collision_factors().into_iter().map(|(_, _, f)| f));
        for a in 0..nb {
            for b in a + 1..nb {
                out.push(&(&self.r(a) * &self.r(b)) + &one);
            }
        }
        out.extend((0..nb).map(|b| self.r(b)));
        out
    }

    /// `(a, b, r_a - r_b)` for each pair of bases.
    pub fn collision_factors(&self) -> Vec<(usize, usize, MultiPoly)> {
        let nb = self.bases.len();
        let mut out = Vec::new();
        for a in 0..nb {
            for b in a + 1..nb {
                out.push((a, b, &self.r(a) - &self.r(b)));
            }
        }
        out
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn bases(&self) -> &[String] {
        &self.bases
    }
}

/// `cot(θ/2)`, the half-angle coordinate of `θ`; infinite at `θ ≡ 0`.
pub fn half_angle_of(theta: f64) -> f64 {
    let h = 0.5 * theta;
    h.cos() / h.sin()
}

/// Inverse of [`half_angle_of`], landing in `(0, 2π)`.
pub fn angle_of_half(r: f64) -> f64 {
    2.0 * 1f64.atan2(r)
}
