//! Exact polynomial systems for critical points of `V`, obtained from the
//! trigonometric gradient by the tangent half-angle substitution.

mod fraction;
mod trig;

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::int;
use crate::exact::{MonomialOrder, MultiPoly, Rational, Ring};
use crate::groebner::{elimination_ideal, GroebnerBasis, Ideal};
use crate::potential::{wrap_diff, AngularConfig};

pub use fraction::{split_factors, RationalFunction};
pub use trig::{angle_of_half, half_angle_of, TrigRing};

/// Why a factor was removed from a numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    /// `r_a - r_b` for half-angle bases `a < b`: the two vortices coincide.
    Collision(usize, usize),
    /// `1 + r²`, which has no real zeros.
    NonReal,
    /// Left over in the reduced denominator.
    Denominator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrippedFactor {
    pub equation: usize,
    pub factor: MultiPoly,
    pub multiplicity: u32,
    pub kind: FactorKind,
}

#[derive(Debug, Clone)]
pub struct HalfAngleSystem {
    ring: Arc<Ring>,
    polys: Vec<MultiPoly>,
    stripped_factors: Vec<StrippedFactor>,
}

impl HalfAngleSystem {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn stripped_factors(&self) -> &[StrippedFactor] {
        &self.stripped_factors
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, self.polys.clone())
    }

    pub fn residuals_f64(&self, point: &[f64]) -> Vec<f64> {
        self.polys.iter().map(|p| p.eval_f64(point)).collect()
    }

    /// One polynomial per line, canonical text form.
    pub fn to_text(&self) -> String {
        self.polys
            .iter()
            .map(|p| p.to_text())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Gradient components `∂V/∂θᵢ` for `i ∈ equations`, with vortex `k` at
/// the angle combination `angles[k]` and weight `mu[k]` (polynomials in
/// the trigonometric ring).
fn gradient_system(
    tr: &TrigRing,
    angles: &[Vec<i64>],
    mu: &[MultiPoly],
    equations: &[usize],
) -> Result<HalfAngleSystem> {
    let candidates = tr.known_factors();
    let two = tr.constant(int(2));
    let one = tr.constant(int(1));
    let ord = MonomialOrder::degrevlex(tr.half_ring().nvars());
    let mut polys = Vec::new();
    let mut stripped = Vec::new();
    for (eq, &i) in equations.iter().enumerate() {
        let mut total = RationalFunction::from_poly(MultiPoly::zero(tr.half_ring()));
        for j in 0..angles.len() {
            if j == i {
                continue;
            }
            let d: Vec<i64> = angles[i]
                .iter()
                .zip(&angles[j])
                .map(|(a, b)| a - b)
                .collect();
            if d.iter().all(|x| *x == 0) {
                return Err(Error::Collision(i.min(j), i.max(j)));
            }
            let (c, s) = tr.cos_sin(&d);
            let top = &(&(&s * &(&c.scale(&int(2)) - &one)) * &mu[i]) * &mu[j];
            let bottom = &two - &c.scale(&int(2));
            let term = tr
                .half_angle_transform(&top)
                .div(&tr.half_angle_transform(&bottom), &candidates)?;
            total = total.add(&term);
        }
        let mut num = -total.numerator().clone();
        for b in 0..tr.nbases() {
            let (fs, rest) = split_factors(&num, &[tr.circle_factor(b)])?;
            num = rest;
            for (factor, multiplicity) in fs {
                stripped.push(StrippedFactor {
                    equation: eq,
                    factor,
                    multiplicity,
                    kind: FactorKind::NonReal,
                });
            }
        }
        for (a, b, f) in tr.collision_factors() {
            let (fs, rest) = split_factors(&num, &[f])?;
            num = rest;
            for (factor, multiplicity) in fs {
                stripped.push(StrippedFactor {
                    equation: eq,
                    factor,
                    multiplicity,
                    kind: FactorKind::Collision(a, b),
                });
            }
        }
        for (factor, multiplicity) in total.denominator_factors() {
            stripped.push(StrippedFactor {
                equation: eq,
                factor: factor.clone(),
                multiplicity: *multiplicity,
                kind: FactorKind::Denominator,
            });
        }
        polys.push(num.primitive_part(&ord).0);
    }
    Ok(HalfAngleSystem {
        ring: tr.half_ring().clone(),
        polys,
        stripped_factors: stripped,
    })
}

/// Reflection-symmetric slices of the three-vortex problem: the axis runs
/// through one weak vortex and the other two are mirror images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryCase {
    /// Axis through vortex 1: `θ₃ = -θ₂`.
    AxisThrough1,
    /// Axis through vortex 2: `θ₃ = 2θ₂`.
    AxisThrough2,
    /// Axis through vortex 3: `θ₂ = 2θ₃`.
    AxisThrough3,
}

impl SymmetryCase {
    pub const ALL: [SymmetryCase; 3] = [
        SymmetryCase::AxisThrough1,
        SymmetryCase::AxisThrough2,
        SymmetryCase::AxisThrough3,
    ];

    pub fn from_index(k: usize) -> Result<Self> {
        match k {
            1 => Ok(SymmetryCase::AxisThrough1),
            2 => Ok(SymmetryCase::AxisThrough2),
            3 => Ok(SymmetryCase::AxisThrough3),
            _ => Err(Error::InvalidInput(format!(
                "symmetry case must be 1, 2 or 3, got {k}"
            ))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            SymmetryCase::AxisThrough1 => 1,
            SymmetryCase::AxisThrough2 => 2,
            SymmetryCase::AxisThrough3 => 3,
        }
    }

    fn angles(self) -> Vec<Vec<i64>> {
        match self {
            SymmetryCase::AxisThrough1 => vec![vec![0], vec![1], vec![-1]],
            SymmetryCase::AxisThrough2 => vec![vec![0], vec![1], vec![2]],
            SymmetryCase::AxisThrough3 => vec![vec![0], vec![2], vec![1]],
        }
    }
}

/// `∂V/∂θ₂`, `∂V/∂θ₃` restricted to a symmetric slice, as polynomials in
/// `(r, mu1, mu2, mu3)` with symbolic weights.
pub fn build_symmetry_case_system(case: SymmetryCase) -> Result<HalfAngleSystem> {
    let tr = TrigRing::new(&["r"], &["mu1", "mu2", "mu3"]);
    let mu: Vec<MultiPoly> = (0..3).map(|k| tr.param(k)).collect();
    gradient_system(&tr, &case.angles(), &mu, &[1, 2])
}

/// Generator(s) of the elimination ideal `⟨system⟩ ∩ ℚ[μ₁, μ₂, μ₃]`: the
/// weight relations a symmetric critical point forces.
pub fn symmetry_elimination(case: SymmetryCase) -> Result<GroebnerBasis> {
    let sys = build_symmetry_case_system(case)?;
    elimination_ideal(&sys.ideal()?, &[0])
}

/// Critical-point system for `N` weak vortices with numeric weights, in
/// the half-angle coordinates `r2, …, rN` of vortices 2..N (vortex 1 is
/// fixed at `θ = 0`).
pub fn build_numeric_system(mu: &[Rational]) -> Result<HalfAngleSystem> {
    let n = mu.len();
    if n < 2 {
        return Err(Error::InvalidInput("need at least two weights".into()));
    }
    if let Some(i) = mu.iter().position(|m| m.is_zero()) {
        return Err(Error::InvalidInput(format!("weight μ{} is zero", i + 1)));
    }
    let names: Vec<String> = (2..=n).map(|k| format!("r{k}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let tr = TrigRing::new(&refs, &[]);
    let angles: Vec<Vec<i64>> = (0..n)
        .map(|k| (1..n).map(|b| i64::from(b == k)).collect())
        .collect();
    let mu: Vec<MultiPoly> = mu.iter().map(|m| tr.constant(m.clone())).collect();
    let eqs: Vec<usize> = (1..n).collect();
    gradient_system(&tr, &angles, &mu, &eqs)
}

/// The three-vortex system `{p, q}` in `(r2, r3)` for integer weights.
pub fn build_equal_weight_system(mu: [i64; 3]) -> Result<HalfAngleSystem> {
    build_numeric_system(&mu.map(int))
}

/// Angles `(0, θ₂, …, θ_N)` from half-angle coordinates `(r₂, …, r_N)`.
pub fn back_transform(root: &[f64]) -> Result<AngularConfig> {
    if let Some(k) = root.iter().position(|r| !r.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "half-angle coordinate r{} is not finite",
            k + 2
        )));
    }
    let mut theta = vec![0.0];
    theta.extend(root.iter().map(|&r| angle_of_half(r)));
    for i in 0..theta.len() {
        for j in i + 1..theta.len() {
            if wrap_diff(theta[i] - theta[j]).abs() < 1e-12 {
                return Err(Error::Collision(i, j));
            }
        }
    }
    Ok(AngularConfig::new(theta))
}

/// Half-angle coordinates of a configuration after fixing `θ₁ = 0`.
pub fn half_angle_coordinates(theta: &AngularConfig) -> Vec<f64> {
    theta.gauge_fixed().theta()[1..]
        .iter()
        .map(|&t| half_angle_of(t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{potential_gradient, CirculationWeights};
    use std::f64::consts::PI;

    #[test]
    fn two_vortex_system_is_the_cubic() {
        let sys = build_numeric_system(&[int(1), int(1)]).unwrap();
        assert_eq!(sys.polys()[0].to_text(), "r2^3 - 3*r2");
    }

    #[test]
    fn back_transform_examples() {
        let t = back_transform(&[1.0]).unwrap();
        assert!((t.theta()[1] - PI / 2.0).abs() < 1e-15);
        assert!((back_transform(&[0.0]).unwrap().theta()[1] - PI).abs() < 1e-15);
        assert!(matches!(
            back_transform(&[2.0, 2.0]),
            Err(Error::Collision(1, 2))
        ));
        assert!(back_transform(&[f64::INFINITY]).is_err());
        let c = AngularConfig::new(vec![0.0, 0.4, 5.0]);
        let back = back_transform(&half_angle_coordinates(&c)).unwrap();
        for (a, b) in back.theta().iter().zip(c.theta()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn numerators_track_the_gradient_off_the_zero_set() {
        // away from critical points both sides are nonzero; on the zero
        // set see the search integration tests
        let sys = build_equal_weight_system([2, 1, 9]).unwrap();
        let mu = CirculationWeights::new(vec![2.0, 1.0, 9.0]).unwrap();
        for (a, b) in [(0.3, 2.0), (1.5, 4.0), (3.0, 5.9)] {
            let th = AngularConfig::new(vec![0.0, a, b]);
            let g = potential_gradient(&th, &mu).unwrap();
            let res = sys.residuals_f64(&half_angle_coordinates(&th));
            assert!(g[1].abs() > 1e-6 && res[0].abs() > 1e-9);
        }
    }

    #[test]
    fn equal_weight_numerators_match_the_printed_forms() {
        let sys = build_equal_weight_system([1, 1, 1]).unwrap();
        let r = sys.ring();
        let p = MultiPoly::parse(r, "1 - r2^4 + 6*r2*r3 - 2*r2^3*r3 - 3*r3^2 + 12*r2^2*r3^2 - r2^4*r3^2 - 6*r2*r3^3 + 2*r2^3*r3^3").unwrap();
        let q = MultiPoly::parse(r, "-1 + 3*r2^2 - 6*r2*r3 + 6*r2^3*r3 - 12*r2^2*r3^2 + 2*r2*r3^3 - 2*r2^3*r3^3 + r3^4 + r2^2*r3^4").unwrap();
        let same_up_to_sign = |a: &MultiPoly, b: &MultiPoly| a == b || *a == -b.clone();
        assert!(same_up_to_sign(&sys.polys()[0], &p), "{}", sys.polys()[0]);
        assert!(same_up_to_sign(&sys.polys()[1], &q), "{}", sys.polys()[1]);
        assert!(
            sys.stripped_factors()
                .iter()
                .any(|f| f.kind == FactorKind::Denominator && f.factor.to_text() == "r2 - r3"),
            "{:?}",
            sys.stripped_factors()
        );
    }

    #[test]
    fn first_symmetry_case_matches_the_printed_form() {
        let sys = build_symmetry_case_system(SymmetryCase::AxisThrough1).unwrap();
        let r = sys.ring();
        let want = MultiPoly::parse(
            r,
            "mu2*(-mu3 - 6*mu1*r^2 + 15*mu3*r^2 - 4*mu1*r^4 - 15*mu3*r^4 + 2*mu1*r^6 + mu3*r^6)",
        )
        .unwrap();
        let got = &sys.polys()[0];
        assert!(*got == want || *got == -want.clone(), "{got}");
        // with mu2 = mu3 the two equations are proportional
        let sub = |p: &MultiPoly| {
            let imgs: Vec<MultiPoly> = ["r", "mu1", "mu3", "mu3"]
                .iter()
                .map(|n| MultiPoly::var(r, r.index_of(n).unwrap()))
                .collect();
            p.compose(&imgs)
                .unwrap()
                .primitive_part(&MonomialOrder::degrevlex(4))
                .0
        };
        assert_eq!(sub(&sys.polys()[0]), sub(&sys.polys()[1]));
    }
}
