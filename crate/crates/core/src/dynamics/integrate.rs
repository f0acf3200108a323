//! Dormand–Prince 5(4) with adaptive steps, used to check relative
//! equilibria against the full equations of motion.

use serde::Serialize;

use super::{vortex_field, PlanarConfig, Vec2};
use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `y' = f(t, y)` from `t0` to `t1` with mixed absolute/relative
/// error tolerance `tol`, returning the state at each time in `outputs`
/// (which must be increasing and inside `[t0, t1]`).
pub fn integrate<F>(f: F, y0: &[f64], t0: f64, outputs: &[f64], tol: f64) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>>,
{
    let n = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h = 1e-3;
    let mut out = Vec::with_capacity(outputs.len());
    for &target in outputs {
        if target < t {
            return Err(Error::InvalidInput(
                "output times must be increasing".into(),
            ));
        }
        let mut steps = 0usize;
        while t < target {
            steps += 1;
            if steps > 10_000_000 {
                return Err(Error::InvalidInput(
                    "integrator step budget exhausted".into(),
                ));
            }
            let last = t + h >= target;
            let hh = if last { target - t } else { h };
            let mut k: Vec<Vec<f64>> = Vec::with_capacity(7);
            for s in 0..7 {
                let mut ys = y.clone();
                for (j, kj) in k.iter().enumerate() {
                    if A[s][j] != 0.0 {
                        for i in 0..n {
                            ys[i] += hh * A[s][j] * kj[i];
                        }
                    }
                }
                k.push(f(t + C[s] * hh, &ys)?);
            }
            let mut y5 = y.clone();
            let mut err = 0.0f64;
            for i in 0..n {
                let mut d5 = 0.0;
                let mut d4 = 0.0;
                for s in 0..7 {
                    d5 += B5[s] * k[s][i];
                    d4 += B4[s] * k[s][i];
                }
                y5[i] += hh * d5;
                let sc = tol * (1.0 + y[i].abs().max(y5[i].abs()));
                err = err.max((hh * (d5 - d4)).abs() / sc);
            }
            if err <= 1.0 {
                t = if last { target } else { t + hh };
                y = y5;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = hh * factor;
            if !h.is_finite() || h < 1e-14 {
                return Err(Error::InvalidInput("integrator step size underflow".into()));
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<Vec2>>,
}

/// Samples the motion of `q` at `samples + 1` evenly spaced times in
/// `[0, t_end]`.
pub fn simulate(q: &PlanarConfig, t_end: f64, samples: usize, tol: f64) -> Result<Trajectory> {
    let n = q.positions.len();
    let y0: Vec<f64> = q.positions.iter().flat_map(|p| *p).collect();
    let circ = q.circulations.clone();
    let rhs = |_t: f64, y: &[f64]| -> Result<Vec<f64>> {
        let p = PlanarConfig {
            positions: (0..n).map(|i| [y[2 * i], y[2 * i + 1]]).collect(),
            circulations: circ.clone(),
        };
        Ok(vortex_field(&p)?.into_iter().flatten().collect())
    };
    let samples = samples.max(1);
    let times: Vec<f64> = (0..=samples)
        .map(|k| t_end * k as f64 / samples as f64)
        .collect();
    let states = integrate(rhs, &y0, 0.0, &times, tol)?;
    let positions = states
        .iter()
        .map(|y| (0..n).map(|i| [y[2 * i], y[2 * i + 1]]).collect())
        .collect();
    Ok(Trajectory { times, positions })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let f = |_t: f64, y: &[f64]| Ok(vec![y[1], -y[0]]);
        let tau = std::f64::consts::TAU;
        let out = integrate(f, &[1.0, 0.0], 0.0, &[tau / 4.0, tau], 1e-12).unwrap();
        assert!(out[0][0].abs() < 1e-9 && (out[0][1] + 1.0).abs() < 1e-9);
        assert!((out[1][0] - 1.0).abs() < 1e-9 && out[1][1].abs() < 1e-9);
    }
}
