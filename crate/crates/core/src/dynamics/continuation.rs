//! Natural-parameter continuation of relative equilibria in `ε`.

use serde::Serialize;

use super::{
    full_stability, newton_solve_with, HelioConfig, NewtonOptions, SpectralReport, SpectralVerdict,
};
use crate::error::{Error, Result};
use crate::potential::{classify, AngularConfig, CirculationWeights};

#[derive(Debug, Clone, Serialize)]
pub struct ContinuationPoint {
    pub eps: f64,
    pub config: HelioConfig,
    pub residual: f64,
    pub spectrum: SpectralReport,
}

impl ContinuationPoint {
    pub fn verdict(&self) -> SpectralVerdict {
        self.spectrum.verdict
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContinuationTrace {
    pub start: AngularConfig,
    pub mu: CirculationWeights,
    pub step: f64,
    pub points: Vec<ContinuationPoint>,
    /// Set when Newton failed before reaching the requested `ε`.
    pub failure: Option<String>,
}

impl ContinuationTrace {
    pub fn last(&self) -> Option<&ContinuationPoint> {
        self.points.last()
    }

    pub fn is_complete(&self) -> bool {
        self.failure.is_none()
    }

    /// The point recorded closest to `eps`.
    pub fn at(&self, eps: f64) -> Option<&ContinuationPoint> {
        self.points
            .iter()
            .min_by(|a, b| (a.eps - eps).abs().total_cmp(&(b.eps - eps).abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationOptions {
    pub newton: NewtonOptions,
    /// Relative bound on `|Re λ|` for a spectrum to count as imaginary.
    pub spectral_tol: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            newton: NewtonOptions::default(),
            spectral_tol: 1e-7,
        }
    }
}

/// Follows the relative equilibrium born at the critical point `theta`
/// from `ε = step` up to `eps_max`, seeding each Newton solve with the
/// previous solution.
pub fn continue_family(
    theta: &AngularConfig,
    mu: &CirculationWeights,
    eps_max: f64,
    step: f64,
) -> Result<ContinuationTrace> {
    continue_family_with(theta, mu, eps_max, step, &ContinuationOptions::default())
}

pub fn continue_family_with(
    theta: &AngularConfig,
    mu: &CirculationWeights,
    eps_max: f64,
    step: f64,
    opts: &ContinuationOptions,
) -> Result<ContinuationTrace> {
    if !(step > 0.0 && step.is_finite()) || !(eps_max >= 0.0 && eps_max.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "bad continuation schedule: step {step}, eps_max {eps_max}"
        )));
    }
    let report = classify(theta, mu)?;
    if report.zero_count != 1 {
        return Err(Error::InvalidInput(format!(
            "critical point is degenerate ({} zero Hessian eigenvalues)",
            report.zero_count
        )));
    }
    let start = theta.gauge_fixed();
    let mut trace = ContinuationTrace {
        start: start.clone(),
        mu: mu.clone(),
        step,
        points: Vec::new(),
        failure: None,
    };
    let nsteps = (eps_max / step - 1e-9).ceil().max(0.0) as usize;
    let mut seed = HelioConfig::on_unit_circle(&start, 0.0, mu.clone())?;
    for k in 1..=nsteps {
        let eps = (k as f64 * step).min(eps_max);
        seed.eps = eps;
        let solved = match newton_solve_with(&seed, &opts.newton) {
            Ok(r) => r,
            Err(e) => {
                trace.failure = Some(format!("at eps = {eps}: {e}"));
                break;
            }
        };
        let spectrum = full_stability(&solved.config, opts.spectral_tol)?;
        trace.points.push(ContinuationPoint {
            eps,
            residual: solved.residual(),
            config: solved.config.clone(),
            spectrum,
        });
        seed = solved.config;
    }
    Ok(trace)
}

/// `max_k maxᵢ |rᵢ(εₖ) - 1| / εₖ`, the constant in `|Zᵢ| = 1 + O(ε)`.
pub fn radial_rate(trace: &ContinuationTrace) -> f64 {
    trace
        .points
        .iter()
        .map(|p| {
            p.config
                .radii()
                .iter()
                .fold(0.0f64, |a, r| a.max((r - 1.0).abs()))
                / p.eps
        })
        .fold(0.0, f64::max)
}
