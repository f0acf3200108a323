//! Serializable records for critical points, configurations and
//! continuation traces.

use serde::{Deserialize, Serialize};

use crate::dynamics::{ContinuationTrace, HelioConfig, SpectralVerdict, Vec2};
use crate::potential::{AngularConfig, CirculationWeights, Eigenvalue, ExtremalType, Verdict};
use crate::search::{family_ids, CriticalPointSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPointRecord {
    /// 1-based, in the set's canonical order.
    pub index: usize,
    /// 1-based family number.
    pub family: usize,
    pub angles_rad: Vec<f64>,
    pub angles_deg: Vec<f64>,
    pub mu: Vec<f64>,
    pub hessian_eigs: Vec<f64>,
    pub weighted_eigs: Vec<Eigenvalue>,
    pub zero_count: usize,
    pub verdict: Verdict,
    pub extremal_type: ExtremalType,
    pub symmetric: bool,
    /// 1-based vortex the mirror axis passes through.
    pub symmetry_axis: Option<usize>,
    pub gradient_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FindReport {
    pub mu: Vec<f64>,
    pub seeds: usize,
    pub count: usize,
    pub family_sizes: Vec<usize>,
    pub points: Vec<CriticalPointRecord>,
}

pub fn find_report(set: &CriticalPointSet, families: &[Vec<usize>]) -> FindReport {
    let ids = family_ids(families, set.len());
    let points = set
        .points
        .iter()
        .zip(&ids)
        .enumerate()
        .map(|(i, (p, f))| CriticalPointRecord {
            index: i + 1,
            family: f + 1,
            angles_rad: p.config.theta().to_vec(),
            angles_deg: p.config.degrees(),
            mu: set.mu.as_slice().to_vec(),
            hessian_eigs: p.report.hessian_eigs.clone(),
            weighted_eigs: p.report.weighted_eigs.clone(),
            zero_count: p.report.zero_count,
            verdict: p.report.verdict,
            extremal_type: p.report.extremal_type,
            symmetric: p.symmetry_axis.is_some(),
            symmetry_axis: p.symmetry_axis.map(|a| a + 1),
            gradient_norm: p.report.gradient_norm,
        })
        .collect();
    FindReport {
        mu: set.mu.as_slice().to_vec(),
        seeds: set.seeds_used,
        count: set.len(),
        family_sizes: families.iter().map(|f| f.len()).collect(),
        points,
    }
}

/// A full snapshot in the center-of-vorticity frame, ready for plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    pub mu: Vec<f64>,
    pub eps: f64,
    pub strong: Vec2,
    pub weak: Vec<Vec2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl ConfigRecord {
    /// Limit configuration on the unit circle (`ε = 0`).
    pub fn from_angles(theta: &AngularConfig, mu: &CirculationWeights) -> Self {
        ConfigRecord {
            mu: mu.as_slice().to_vec(),
            eps: 0.0,
            strong: [0.0, 0.0],
            weak: theta.theta().iter().map(|t| [t.cos(), t.sin()]).collect(),
            label: None,
        }
    }

    pub fn from_helio(c: &HelioConfig) -> Self {
        let q0 = c.strong_vortex_position();
        ConfigRecord {
            mu: c.mu.as_slice().to_vec(),
            eps: c.eps,
            strong: q0,
            weak: c.z.iter().map(|z| [z[0] + q0[0], z[1] + q0[1]]).collect(),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Heliocentric positions `Zᵢ = qᵢ - q₀`.
    pub fn heliocentric(&self) -> Vec<Vec2> {
        self.weak
            .iter()
            .map(|w| [w[0] - self.strong[0], w[1] - self.strong[1]])
            .collect()
    }
}

/// One row of a continuation trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub eps: f64,
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    pub residual: f64,
    pub verdict: String,
    pub strong: Vec2,
}

impl TraceRow {
    pub fn header(n: usize) -> Vec<String> {
        let mut h = vec!["eps".to_string()];
        h.extend((1..=n).map(|i| format!("r{i}")));
        h.extend((1..=n).map(|i| format!("theta{i}")));
        h.extend(["residual", "verdict", "z0_x", "z0_y"].map(String::from));
        h
    }

    pub fn fields(&self) -> Vec<String> {
        let mut f = vec![format!("{}", self.eps)];
        f.extend(self.radii.iter().map(|r| format!("{r:.12}")));
        f.extend(self.angles.iter().map(|t| format!("{t:.12}")));
        f.push(format!("{:.3e}", self.residual));
        f.push(self.verdict.clone());
        f.push(format!("{:.12}", self.strong[0]));
        f.push(format!("{:.12}", self.strong[1]));
        f
    }

    pub fn from_helio(c: &HelioConfig, residual: f64, verdict: impl Into<String>) -> Self {
        TraceRow {
            eps: c.eps,
            radii: c.radii(),
            angles: c.angles().gauge_fixed().theta().to_vec(),
            residual,
            verdict: verdict.into(),
            strong: c.strong_vortex_position(),
        }
    }
}

fn spectral_word(v: SpectralVerdict) -> &'static str {
    match v {
        SpectralVerdict::Stable => "stable",
        SpectralVerdict::Unstable => "unstable",
    }
}

pub fn trace_rows(trace: &ContinuationTrace) -> Vec<TraceRow> {
    trace
        .points
        .iter()
        .map(|p| TraceRow::from_helio(&p.config, p.residual, spectral_word(p.verdict())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_record_round_trips() {
        let mu = CirculationWeights::new(vec![1.0, 2.0]).unwrap();
        let c = HelioConfig::new(vec![[1.0, 0.0], [0.0, 1.0]], 0.1, mu).unwrap();
        let r = ConfigRecord::from_helio(&c).with_label("x");
        let s = serde_json::to_string(&r).unwrap();
        let back: ConfigRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        for (a, b) in back.heliocentric().iter().zip(&c.z) {
            assert!((a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn header_matches_fields() {
        let mu = CirculationWeights::new(vec![1.0, 1.0, 1.0]).unwrap();
        let c = crate::dynamics::polygon_family(3, 1.0, 0.1).unwrap();
        let row = TraceRow::from_helio(&HelioConfig { mu, ..c }, 1e-15, "stable");
        assert_eq!(TraceRow::header(3).len(), row.fields().len());
    }
}
