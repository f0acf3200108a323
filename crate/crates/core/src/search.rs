//! Multi-start search for all critical points of `V`, deduplication modulo
//! rotation, and grouping into families related by weight-preserving
//! relabelings and reflection.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::Result;
use crate::par::Execution;
use crate::potential::{
    classify_with, polish, wrap_diff, AngularConfig, CirculationWeights, ClassifyOptions,
    StabilityReport,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub seeds: usize,
    /// Seeds with a pairwise gap below this are skipped.
    pub min_seed_gap: f64,
    /// Newton stops once `‖∇V‖∞ < newton_tol · max|μᵢμⱼ|`.
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Cap on the ∞-norm of a single Newton step (radians).
    pub max_step: f64,
    pub dedup_tol: f64,
    pub classify: ClassifyOptions,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seeds: 4096,
            min_seed_gap: 0.05,
            newton_tol: 1e-13,
            max_iter: 100,
            max_step: 0.3,
            dedup_tol: 1e-6,
            classify: ClassifyOptions::default(),
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    pub config: AngularConfig,
    pub report: StabilityReport,
    /// Index of the vortex an axis of mirror symmetry passes through.
    pub symmetry_axis: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPointSet {
    pub mu: CirculationWeights,
    pub points: Vec<CriticalPoint>,
    pub seeds_used: usize,
    pub dedup_tol: f64,
}

impl CriticalPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Low-discrepancy points on the `d`-torus from the generalized golden
/// ratio (Roberts' R_d sequence), scaled to `[0, 2π)`.
pub fn lattice_seeds(d: usize, count: usize) -> Vec<Vec<f64>> {
    // φ_d is the positive root of x^{d+1} = x + 1
    let mut phi = 2.0f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    let alpha: Vec<f64> = (1..=d).map(|k| phi.powi(-(k as i32))).collect();
    (1..=count)
        .map(|i| {
            alpha
                .iter()
                .map(|a| TAU * (0.5 + a * i as f64).fract())
                .collect()
        })
        .collect()
}

/// Wrapped ∞-distance between two gauge-fixed configurations.
pub fn config_distance(a: &AngularConfig, b: &AngularConfig) -> f64 {
    a.theta()
        .iter()
        .zip(b.theta())
        .fold(0.0f64, |m, (x, y)| m.max(wrap_diff(x - y).abs()))
}

pub fn find_all_critical_points(mu: &CirculationWeights, seeds: usize) -> Result<CriticalPointSet> {
    find_all_critical_points_with(
        mu,
        &SearchOptions {
            seeds,
            ..SearchOptions::default()
        },
    )
}

pub fn find_all_critical_points_with(
    mu: &CirculationWeights,
    opts: &SearchOptions,
) -> Result<CriticalPointSet> {
    let n = mu.len();
    let m = mu.as_slice();
    let scale = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (m[i] * m[j]).abs()))
        .fold(0.0f64, f64::max)
        .max(1.0);
    let seeds: Vec<AngularConfig> = lattice_seeds(n - 1, opts.seeds)
        .into_iter()
        .map(|s| {
            let mut t = vec![0.0];
            t.extend(s);
            AngularConfig::new(t)
        })
        .filter(|c| c.min_gap() >= opts.min_seed_gap)
        .collect();
    let polished = opts.execution.map(&seeds, |s| {
        polish(s, mu, opts.newton_tol * scale, opts.max_iter, opts.max_step)
            .filter(|c| c.min_gap() > opts.dedup_tol)
    });
    let mut unique: Vec<AngularConfig> = Vec::new();
    for c in polished.into_iter().flatten() {
        if !unique
            .iter()
            .any(|u| config_distance(u, &c) <= opts.dedup_tol)
        {
            unique.push(c);
        }
    }
    unique.sort_by(|a, b| {
        a.theta()
            .iter()
            .zip(b.theta())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut points = Vec::with_capacity(unique.len());
    for config in unique {
        let report = classify_with(&config, mu, &opts.classify)?;
        let symmetry_axis = symmetry_check(&config, 1e-6);
        points.push(CriticalPoint {
            config,
            report,
            symmetry_axis,
        });
    }
    Ok(CriticalPointSet {
        mu: mu.clone(),
        points,
        seeds_used: seeds.len(),
        dedup_tol: opts.dedup_tol,
    })
}

/// Returns `Some(i)` if reflecting across the line through the origin and
/// vortex `i` maps the configuration onto itself (as a set of points).
pub fn symmetry_check(theta: &AngularConfig, tol: f64) -> Option<usize> {
    let t = theta.theta();
    (0..t.len()).find(|&i| {
        let mut used = vec![false; t.len()];
        t.iter().all(|&tk| {
            let img = 2.0 * t[i] - tk;
            match (0..t.len()).find(|&j| !used[j] && wrap_diff(img - t[j]).abs() < tol) {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Families of critical points: classes under relabelings `π` with
/// `μ_{π(i)} = μᵢ`, reflection `θ ↦ -θ`, and rotation. Each family is a
/// sorted list of indices into `set.points`; families are ordered by their
/// first member.
pub fn group_into_families(set: &CriticalPointSet, mu: &CirculationWeights) -> Vec<Vec<usize>> {
    let m = mu.as_slice();
    let n = m.len();
    let perms: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| {
            p.iter()
                .enumerate()
                .all(|(i, &j)| (m[i] - m[j]).abs() <= 1e-12 * m[i].abs().max(m[j].abs()))
        })
        .collect();
    let k = set.points.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let tol = 10.0 * set.dedup_tol.max(1e-9);
    for a in 0..k {
        let ta = set.points[a].config.theta();
        for perm in &perms {
            for sign in [1.0, -1.0] {
                let image =
                    AngularConfig::new(perm.iter().map(|&j| sign * ta[j]).collect()).gauge_fixed();
                for b in a + 1..k {
                    if config_distance(&image, &set.points[b].config) <= tol {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut families: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; k];
    for i in 0..k {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(f) => families[f].push(i),
            None => {
                root_of[r] = Some(families.len());
                families.push(vec![i]);
            }
        }
    }
    families
}

/// Family index of every point, aligned with `set.points`.
pub fn family_ids(families: &[Vec<usize>], len: usize) -> Vec<usize> {
    let mut ids = vec![0; len];
    for (f, members) in families.iter().enumerate() {
        for &i in members {
            ids[i] = f;
        }
    }
    ids
}
