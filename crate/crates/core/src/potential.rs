//! The reduced potential `V(θ)`, its derivatives, and linear-stability
//! classification through the weighted Hessian `μ⁻¹ V_θθ`.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weak-vortex weights `μ = (μ₁, …, μ_N)`, all nonzero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CirculationWeights(Vec<f64>);

impl CirculationWeights {
    pub fn new(mu: Vec<f64>) -> Result<Self> {
        if mu.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "need at least two weights, got {}",
                mu.len()
            )));
        }
        if let Some(i) = mu.iter().position(|m| *m == 0.0 || !m.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "weight μ{} must be finite and nonzero",
                i + 1
            )));
        }
        Ok(CirculationWeights(mu))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|m| *m > 0.0)
    }

    /// Scaled to unit Euclidean norm; critical points and verdicts only
    /// depend on the ratios.
    pub fn normalized(&self) -> Self {
        let n = self.0.iter().map(|m| m * m).sum::<f64>().sqrt();
        CirculationWeights(self.0.iter().map(|m| m / n).collect())
    }
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Wraps an angle difference into `(-π, π]`.
pub fn wrap_diff(t: f64) -> f64 {
    let w = wrap_angle(t);
    if w > std::f64::consts::PI {
        w - TAU
    } else {
        w
    }
}

/// Angular positions of the weak vortices on the unit circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularConfig {
    theta: Vec<f64>,
}

impl AngularConfig {
    pub fn new(theta: Vec<f64>) -> Self {
        AngularConfig { theta }
    }

    /// Rotated so that `θ₁ = 0`, every angle wrapped into `[0, 2π)`.
    pub fn gauge_fixed(&self) -> Self {
        let t0 = self.theta.first().copied().unwrap_or(0.0);
        AngularConfig {
            theta: self.theta.iter().map(|t| wrap_angle(t - t0)).collect(),
        }
    }

    pub fn is_gauge_fixed(&self) -> bool {
        self.theta.first().is_none_or(|t| *t == 0.0)
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.theta.iter().map(|t| t.to_degrees()).collect()
    }

    /// Smallest wrapped pairwise separation.
    pub fn min_gap(&self) -> f64 {
        let n = self.theta.len();
        let mut g = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                g = g.min(wrap_diff(self.theta[i] - self.theta[j]).abs());
            }
        }
        g
    }
}

const COLLISION_GAP: f64 = 1e-12;

fn check(theta: &AngularConfig, mu: &CirculationWeights) -> Result<()> {
    let n = theta.len();
    if n != mu.len() {
        return Err(Error::InvalidInput(format!(
            "{n} angles but {} weights",
            mu.len()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            if wrap_diff(theta.theta[i] - theta.theta[j]).abs() < COLLISION_GAP {
                return Err(Error::Collision(i, j));
            }
        }
    }
    Ok(())
}

pub fn potential_value(theta: &AngularConfig, mu: &CirculationWeights) -> Result<f64> {
    check(theta, mu)?;
    let (t, m) = (&theta.theta, &mu.0);
    let mut v = 0.0;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            let c = (t[i] - t[j]).cos();
            v -= m[i] * m[j] * (c + 0.5 * (2.0 - 2.0 * c).ln());
        }
    }
    Ok(v)
}

/// `∂V/∂θᵢ = -Σ_{j≠i} μᵢμⱼ sin d (2 cos d - 1) / (2 - 2 cos d)`, `d = θᵢ - θⱼ`.
pub fn potential_gradient(theta: &AngularConfig, mu: &CirculationWeights) -> Result<Vec<f64>> {
    check(theta, mu)?;
    let (t, m) = (&theta.theta, &mu.0);
    let n = t.len();
    let mut g = vec![0.0; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = t[i] - t[j];
            let (s, c) = d.sin_cos();
            let f = m[i] * m[j] * s * (2.0 * c - 1.0) / (2.0 - 2.0 * c);
            g[i] -= f;
            g[j] += f;
        }
    }
    Ok(g)
}

pub fn potential_hessian(theta: &AngularConfig, mu: &CirculationWeights) -> Result<DMatrix<f64>> {
    check(theta, mu)?;
    let (t, m) = (&theta.theta, &mu.0);
    let n = t.len();
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let c = (t[i] - t[j]).cos();
            let w = -m[i] * m[j] * (c + 1.0 / (2.0 - 2.0 * c));
            h[(i, j)] = w;
            h[(j, i)] = w;
            h[(i, i)] -= w;
            h[(j, j)] -= w;
        }
    }
    Ok(h)
}

/// `μ⁻¹ V_θθ`.
pub fn weighted_hessian(theta: &AngularConfig, mu: &CirculationWeights) -> Result<DMatrix<f64>> {
    let mut h = potential_hessian(theta, mu)?;
    for (i, m) in mu.0.iter().enumerate() {
        h.row_mut(i).scale_mut(1.0 / m);
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalType {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Stable => "stable",
            Verdict::Unstable => "unstable",
            Verdict::Degenerate => "degenerate",
        })
    }
}

impl std::fmt::Display for ExtremalType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExtremalType::Minimum => "minimum",
            ExtremalType::Maximum => "maximum",
            ExtremalType::Saddle => "saddle",
            ExtremalType::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// Eigenvalues of `V_θθ`, ascending.
    pub hessian_eigs: Vec<f64>,
    /// Eigenvalues of `μ⁻¹ V_θθ`, sorted by real then imaginary part.
    pub weighted_eigs: Vec<Eigenvalue>,
    pub zero_count: usize,
    pub verdict: Verdict,
    pub extremal_type: ExtremalType,
    pub gradient_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// ∞-norm bound on the gradient for the point to count as critical.
    pub grad_tol: f64,
    /// Relative zero threshold: `|λ| < zero_tol · max(1, ρ)`.
    pub zero_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            grad_tol: 1e-10,
            zero_tol: 1e-8,
        }
    }
}

/// Orthonormal basis of the complement of `(1, …, 1)` (Helmert columns).
fn rotation_complement(n: usize) -> DMatrix<f64> {
    let mut q = DMatrix::zeros(n, n - 1);
    for k in 1..n {
        let s = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            q[(i, k - 1)] = 1.0 / s;
        }
        q[(k, k - 1)] = -(k as f64) / s;
    }
    q
}

pub fn classify(theta: &AngularConfig, mu: &CirculationWeights) -> Result<StabilityReport> {
    classify_with(theta, mu, &ClassifyOptions::default())
}

pub fn classify_with(
    theta: &AngularConfig,
    mu: &CirculationWeights,
    opts: &ClassifyOptions,
) -> Result<StabilityReport> {
    let g = potential_gradient(theta, mu)?;
    let gradient_norm = g.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if gradient_norm >= opts.grad_tol {
        return Err(Error::NotCritical {
            norm: gradient_norm,
            tol: opts.grad_tol,
        });
    }
    let n = theta.len();
    let h = potential_hessian(theta, mu)?;

    let mut hessian_eigs: Vec<f64> = h
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    hessian_eigs.sort_by(f64::total_cmp);
    let rho_h = hessian_eigs.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let thr_h = opts.zero_tol * rho_h.max(1.0);
    let zero_count = hessian_eigs.iter().filter(|l| l.abs() < thr_h).count();

    let q = rotation_complement(n);
    let reduced = q.transpose() * &h * &q;
    let off_null = reduced.symmetric_eigen().eigenvalues;
    let extremal_type = if off_null.iter().any(|l| l.abs() < thr_h) {
        ExtremalType::Degenerate
    } else if off_null.iter().all(|l| *l > 0.0) {
        ExtremalType::Minimum
    } else if off_null.iter().all(|l| *l < 0.0) {
        ExtremalType::Maximum
    } else {
        ExtremalType::Saddle
    };

    let w = weighted_hessian(theta, mu)?;
    let mut weighted_eigs: Vec<Eigenvalue> = w
        .complex_eigenvalues()
        .iter()
        .map(|z| Eigenvalue { re: z.re, im: z.im })
        .collect();
    weighted_eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let rho_w = weighted_eigs
        .iter()
        .fold(0.0f64, |a, z| a.max(z.re.hypot(z.im)));
    let thr_w = opts.zero_tol * rho_w.max(1.0);
    let real_positive = weighted_eigs
        .iter()
        .filter(|z| z.re > thr_w && z.im.abs() < opts.zero_tol * z.re.hypot(z.im).max(1.0))
        .count();

    let verdict = if zero_count > 1 {
        Verdict::Degenerate
    } else if zero_count == 1 && real_positive == n - 1 {
        Verdict::Stable
    } else {
        Verdict::Unstable
    };
    Ok(StabilityReport {
        hessian_eigs,
        weighted_eigs,
        zero_count,
        verdict,
        extremal_type,
        gradient_norm,
    })
}

/// Newton iteration on the gradient with `θ₁` held fixed. Returns the
/// polished configuration (gauge-fixed) or `None` when it does not settle.
pub fn polish(
    theta: &AngularConfig,
    mu: &CirculationWeights,
    tol: f64,
    max_iter: usize,
    max_step: f64,
) -> Option<AngularConfig> {
    let n = theta.len();
    let mut t = theta.gauge_fixed().theta;
    for _ in 0..max_iter {
        let cfg = AngularConfig { theta: t.clone() };
        let g = potential_gradient(&cfg, mu).ok()?;
        let gnorm = g.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        if gnorm < tol {
            return Some(cfg.gauge_fixed());
        }
        let h = potential_hessian(&cfg, mu).ok()?;
        let hr = h.view((1, 1), (n - 1, n - 1)).into_owned();
        let gr = DVector::from_iterator(n - 1, g[1..].iter().copied());
        let mut step = hr.lu().solve(&gr)?;
        let len = step.amax();
        if !len.is_finite() {
            return None;
        }
        if len > max_step {
            step *= max_step / len;
        }
        for k in 1..n {
            t[k] -= step[k - 1];
        }
    }
    let cfg = AngularConfig { theta: t };
    let g = potential_gradient(&cfg, mu).ok()?;
    (g.iter().fold(0.0f64, |a, x| a.max(x.abs())) < tol).then(|| cfg.gauge_fixed())
}
