//! The full point-vortex equations, relative-equilibrium residuals in the
//! heliocentric rotating frame, Newton polishing, continuation in `ε`, and
//! spectral stability of the linearized flow.

mod continuation;
mod integrate;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{AngularConfig, CirculationWeights};

pub use continuation::{
    continue_family, continue_family_with, radial_rate, ContinuationOptions, ContinuationPoint,
    ContinuationTrace,
};
pub use integrate::{integrate, simulate, Trajectory};

pub type Vec2 = [f64; 2];

fn perp(v: Vec2) -> Vec2 {
    [-v[1], v[0]]
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm2(v: Vec2) -> f64 {
    v[0] * v[0] + v[1] * v[1]
}

/// `v^⊥ / |v|²`, the velocity induced at `v` by a unit vortex at the origin.
fn kernel(v: Vec2) -> Vec2 {
    let r2 = norm2(v);
    [-v[1] / r2, v[0] / r2]
}

/// Jacobian of [`kernel`].
fn dkernel(v: Vec2) -> [[f64; 2]; 2] {
    let (x, y) = (v[0], v[1]);
    let r4 = norm2(v).powi(2);
    [
        [2.0 * x * y / r4, (y * y - x * x) / r4],
        [(y * y - x * x) / r4, -2.0 * x * y / r4],
    ]
}

/// Positions and circulations of `n` point vortices in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarConfig {
    pub positions: Vec<Vec2>,
    pub circulations: Vec<f64>,
}

impl PlanarConfig {
    pub fn new(positions: Vec<Vec2>, circulations: Vec<f64>) -> Result<Self> {
        if positions.len() != circulations.len() {
            return Err(Error::InvalidInput(format!(
                "{} positions but {} circulations",
                positions.len(),
                circulations.len()
            )));
        }
        let c = PlanarConfig {
            positions,
            circulations,
        };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        let q = &self.positions;
        for i in 0..q.len() {
            for j in i + 1..q.len() {
                if norm2(sub(q[i], q[j])) == 0.0 {
                    return Err(Error::Collision(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn total_circulation(&self) -> f64 {
        self.circulations.iter().sum()
    }

    pub fn center_of_vorticity(&self) -> Option<Vec2> {
        let g = self.total_circulation();
        if g == 0.0 {
            return None;
        }
        let mut c = [0.0; 2];
        for (q, w) in self.positions.iter().zip(&self.circulations) {
            c[0] += w * q[0];
            c[1] += w * q[1];
        }
        Some([c[0] / g, c[1] / g])
    }
}

/// `q̇ᵢ = Σ_{j≠i} Γⱼ (qᵢ - qⱼ)^⊥ / |qᵢ - qⱼ|²`, i.e. `Γᵢ q̇ᵢ = J ∇ᵢ H` with
/// `J = [[0, 1], [-1, 0]]`.
pub fn vortex_field(q: &PlanarConfig) -> Result<Vec<Vec2>> {
    q.check()?;
    let p = &q.positions;
    let mut v = vec![[0.0; 2]; p.len()];
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let k = kernel(sub(p[i], p[j]));
            v[i][0] += q.circulations[j] * k[0];
            v[i][1] += q.circulations[j] * k[1];
            v[j][0] -= q.circulations[i] * k[0];
            v[j][1] -= q.circulations[i] * k[1];
        }
    }
    Ok(v)
}

/// `H = -Σ_{i<j} Γᵢ Γⱼ log |qᵢ - qⱼ|`.
pub fn hamiltonian(q: &PlanarConfig) -> Result<f64> {
    q.check()?;
    let p = &q.positions;
    let mut h = 0.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            h -= q.circulations[i] * q.circulations[j] * 0.5 * norm2(sub(p[i], p[j])).ln();
        }
    }
    Ok(h)
}

/// Weak-vortex positions relative to the strong unit vortex, in the frame
/// rotating at rate `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HelioConfig {
    pub z: Vec<Vec2>,
    pub eps: f64,
    pub mu: CirculationWeights,
    pub omega: f64,
}

impl HelioConfig {
    pub fn new(z: Vec<Vec2>, eps: f64, mu: CirculationWeights) -> Result<Self> {
        if z.len() != mu.len() {
            return Err(Error::InvalidInput(format!(
                "{} positions but {} weights",
                z.len(),
                mu.len()
            )));
        }
        let c = HelioConfig {
            z,
            eps,
            mu,
            omega: 1.0,
        };
        c.check()?;
        Ok(c)
    }

    /// Weak vortices on the unit circle at the given angles.
    pub fn on_unit_circle(theta: &AngularConfig, eps: f64, mu: CirculationWeights) -> Result<Self> {
        let z = theta.theta().iter().map(|t| [t.cos(), t.sin()]).collect();
        HelioConfig::new(z, eps, mu)
    }

    fn check(&self) -> Result<()> {
        for (i, z) in self.z.iter().enumerate() {
            if norm2(*z) == 0.0 {
                return Err(Error::Collision(0, i + 1));
            }
            for (j, w) in self.z.iter().enumerate().skip(i + 1) {
                if norm2(sub(*z, *w)) == 0.0 {
                    return Err(Error::Collision(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn radii(&self) -> Vec<f64> {
        self.z.iter().map(|z| norm2(*z).sqrt()).collect()
    }

    pub fn angles(&self) -> AngularConfig {
        AngularConfig::new(self.z.iter().map(|z| z[1].atan2(z[0])).collect())
    }

    fn flat(&self) -> DVector<f64> {
        DVector::from_iterator(2 * self.n(), self.z.iter().flat_map(|z| *z))
    }

    fn with_flat(&self, x: &DVector<f64>) -> HelioConfig {
        let z = (0..self.n()).map(|i| [x[2 * i], x[2 * i + 1]]).collect();
        HelioConfig { z, ..self.clone() }
    }

    /// The strong vortex in the inertial frame with the center of
    /// vorticity at the origin: `Z₀ = -Σ Γᵢ Zᵢ / Γ_T`.
    pub fn strong_vortex_position(&self) -> Vec2 {
        let mu = self.mu.as_slice();
        let total = 1.0 + self.eps * mu.iter().sum::<f64>();
        let mut c = [0.0; 2];
        for (z, m) in self.z.iter().zip(mu) {
            c[0] -= self.eps * m * z[0];
            c[1] -= self.eps * m * z[1];
        }
        [c[0] / total, c[1] / total]
    }

    /// All `N + 1` vortices with the center of vorticity at the origin.
    pub fn to_planar(&self) -> PlanarConfig {
        let q0 = self.strong_vortex_position();
        let mut positions = vec![q0];
        positions.extend(self.z.iter().map(|z| [z[0] + q0[0], z[1] + q0[1]]));
        let mut circulations = vec![1.0];
        circulations.extend(self.mu.as_slice().iter().map(|m| self.eps * m));
        PlanarConfig {
            positions,
            circulations,
        }
    }
}

/// Rotating-frame right-hand side
/// `Fᵢ = -ω ξᵢ^⊥ + (1 + εμᵢ) k(ξᵢ) + ε Σ_{j≠i} μⱼ (k(ξⱼ) + k(ξᵢ - ξⱼ))`,
/// `k(v) = v^⊥/|v|²`; zero exactly at relative equilibria.
pub fn re_residual(xi: &HelioConfig) -> Result<Vec<f64>> {
    xi.check()?;
    let (z, mu, eps) = (&xi.z, xi.mu.as_slice(), xi.eps);
    let ks: Vec<Vec2> = z.iter().map(|v| kernel(*v)).collect();
    let mut out = Vec::with_capacity(2 * z.len());
    for i in 0..z.len() {
        let p = perp(z[i]);
        let mut f = [-xi.omega * p[0], -xi.omega * p[1]];
        let a = 1.0 + eps * mu[i];
        f[0] += a * ks[i][0];
        f[1] += a * ks[i][1];
        for j in 0..z.len() {
            if j != i {
                let kd = kernel(sub(z[i], z[j]));
                f[0] += eps * mu[j] * (ks[j][0] + kd[0]);
                f[1] += eps * mu[j] * (ks[j][1] + kd[1]);
            }
        }
        out.extend(f);
    }
    Ok(out)
}

/// Analytic Jacobian of [`re_residual`] with respect to the stacked
/// coordinates `(x₁, y₁, …, x_N, y_N)`.
pub fn jacobian(xi: &HelioConfig) -> Result<DMatrix<f64>> {
    xi.check()?;
    let (z, mu, eps) = (&xi.z, xi.mu.as_slice(), xi.eps);
    let n = z.len();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    let add = |m: &mut DMatrix<f64>, bi: usize, bj: usize, s: f64, d: [[f64; 2]; 2]| {
        for r in 0..2 {
            for c in 0..2 {
                m[(2 * bi + r, 2 * bj + c)] += s * d[r][c];
            }
        }
    };
    for i in 0..n {
        // -ω P with P the quarter-turn matrix
        m[(2 * i, 2 * i + 1)] += xi.omega;
        m[(2 * i + 1, 2 * i)] -= xi.omega;
        add(&mut m, i, i, 1.0 + eps * mu[i], dkernel(z[i]));
        for j in 0..n {
            if j == i {
                continue;
            }
            let dd = dkernel(sub(z[i], z[j]));
            add(&mut m, i, i, eps * mu[j], dd);
            add(&mut m, i, j, eps * mu[j], dkernel(z[j]));
            add(&mut m, i, j, -eps * mu[j], dd);
        }
    }
    Ok(m)
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Relative singular-value cutoff of the least-squares solve.
    pub rank_tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-12,
            max_iter: 50,
            rank_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NewtonReport {
    pub config: HelioConfig,
    pub iterations: usize,
    /// Residual ∞-norm before each step and after the last.
    pub residual_history: Vec<f64>,
}

impl NewtonReport {
    pub fn residual(&self) -> f64 {
        *self.residual_history.last().expect("nonempty history")
    }
}

/// Newton's method on the residual plus the gauge row `y₁ = 0`, each step
/// solved in the least-squares sense (the rotation direction makes the
/// square Jacobian singular).
pub fn newton_solve(initial: &HelioConfig, tol: f64) -> Result<HelioConfig> {
    Ok(newton_solve_with(
        initial,
        &NewtonOptions {
            tol,
            ..NewtonOptions::default()
        },
    )?
    .config)
}

pub fn newton_solve_with(initial: &HelioConfig, opts: &NewtonOptions) -> Result<NewtonReport> {
    let n = initial.n();
    let mut cur = initial.clone();
    let mut history = Vec::new();
    for it in 0..=opts.max_iter {
        let f =
            re_residual(&cur).map_err(|e| Error::NewtonFailure(format!("iteration {it}: {e}")))?;
        let gauge = cur.z[0][1];
        let res = inf_norm(&f).max(gauge.abs());
        history.push(res);
        if !res.is_finite() {
            return Err(Error::NewtonFailure(format!(
                "residual diverged at iteration {it}"
            )));
        }
        if res < opts.tol {
            return Ok(NewtonReport {
                config: cur,
                iterations: it,
                residual_history: history,
            });
        }
        if it == opts.max_iter {
            break;
        }
        let j = jacobian(&cur)?;
        let mut a = DMatrix::zeros(2 * n + 1, 2 * n);
        a.view_mut((0, 0), (2 * n, 2 * n)).copy_from(&j);
        a[(2 * n, 1)] = 1.0;
        let mut b = DVector::zeros(2 * n + 1);
        for (k, v) in f.iter().enumerate() {
            b[k] = -v;
        }
        b[2 * n] = -gauge;
        let svd = a.svd(true, true);
        let smax = svd.singular_values.max();
        let step = svd
            .solve(&b, opts.rank_tol * smax)
            .map_err(|e| Error::NewtonFailure(format!("least-squares solve: {e}")))?;
        cur = cur.with_flat(&(cur.flat() + step));
    }
    Err(Error::NewtonFailure(format!(
        "no convergence in {} iterations (residual {:e})",
        opts.max_iter,
        history.last().copied().unwrap_or(f64::NAN)
    )))
}

/// Regular `N`-gon of equal weak vortices on radius
/// `R = sqrt(1 + μ ε (N - 1) / 2)`, an exact relative equilibrium with `ω = 1`.
pub fn polygon_family(n: usize, mu: f64, eps: f64) -> Result<HelioConfig> {
    if n < 2 {
        return Err(Error::InvalidInput(
            "polygon needs at least two weak vortices".into(),
        ));
    }
    let r2 = 1.0 + mu * eps * (n as f64 - 1.0) / 2.0;
    if r2 <= 0.0 {
        return Err(Error::InvalidInput(format!("no real radius: R² = {r2}")));
    }
    let r = r2.sqrt();
    let z = (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    HelioConfig::new(z, eps, CirculationWeights::new(vec![mu; n])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralVerdict {
    Stable,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    /// Eigenvalues of the linearization restricted off the symmetry
    /// subspace, as `(re, im)` sorted by imaginary part.
    pub eigenvalues: Vec<(f64, f64)>,
    pub max_real_part: f64,
    pub verdict: SpectralVerdict,
}

/// Linear stability of a relative equilibrium at `ε > 0`. The generalized
/// kernel `ker M²` (rotation plus its Jordan partner along the family of
/// rotation rates) is deflated, and the rest of the spectrum must be
/// purely imaginary: `|Re λ| < tol · max |λ|`.
pub fn full_stability(xi: &HelioConfig, tol: f64) -> Result<SpectralReport> {
    let m = jacobian(xi)?;
    let dim = m.nrows();
    let m2 = &m * &m;
    let svd = m2.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    // rows of v_t for the dim-2 largest singular values span (ker M²)^⊥
    let q = DMatrix::from_fn(dim, dim - 2, |r, c| v_t[(order[c], r)]);
    let reduced = q.transpose() * &m * &q;
    let mut eigenvalues: Vec<(f64, f64)> = reduced
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect();
    eigenvalues.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
    let scale = eigenvalues
        .iter()
        .fold(0.0f64, |a, z| a.max(z.0.hypot(z.1)));
    let max_real_part = eigenvalues.iter().fold(0.0f64, |a, z| a.max(z.0.abs()));
    let verdict = if max_real_part < tol * scale.max(f64::MIN_POSITIVE) {
        SpectralVerdict::Stable
    } else {
        SpectralVerdict::Unstable
    };
    Ok(SpectralReport {
        eigenvalues,
        max_real_part,
        verdict,
    })
}
