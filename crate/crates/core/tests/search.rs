use std::f64::consts::PI;

use vortexre::algebraic::{build_equal_weight_system, half_angle_coordinates};
use vortexre::potential::{CirculationWeights, ExtremalType, Verdict};
use vortexre::search::{find_all_critical_points, group_into_families, CriticalPointSet};

fn run(mu: [f64; 3]) -> (CirculationWeights, CriticalPointSet, Vec<Vec<usize>>) {
    let w = CirculationWeights::new(mu.to_vec()).unwrap();
    let set = find_all_critical_points(&w, 4096).unwrap();
    let fam = group_into_families(&set, &w);
    (w, set, fam)
}

fn sizes(fam: &[Vec<usize>]) -> Vec<usize> {
    let mut s: Vec<usize> = fam.iter().map(|f| f.len()).collect();
    s.sort();
    s
}

#[test]
fn equal_weights() {
    let (_, set, fam) = run([1.0, 1.0, 1.0]);
    assert_eq!(set.len(), 14);
    assert_eq!(sizes(&fam), vec![2, 6, 6]);
    for f in &fam {
        let kinds: Vec<_> = f
            .iter()
            .map(|&i| {
                (
                    set.points[i].report.extremal_type,
                    set.points[i].report.verdict,
                )
            })
            .collect();
        assert!(kinds.windows(2).all(|w| w[0] == w[1]));
        let (kind, verdict) = kinds[0];
        match f.len() {
            2 => assert_eq!((kind, verdict), (ExtremalType::Maximum, Verdict::Unstable)),
            _ => assert!(
                (kind, verdict) == (ExtremalType::Minimum, Verdict::Stable)
                    || (kind, verdict) == (ExtremalType::Saddle, Verdict::Unstable)
            ),
        }
        for &i in f {
            let p = &set.points[i];
            let axis = p
                .symmetry_axis
                .expect("every equal-weight critical point is symmetric");
            let t = p.config.theta();
            let sep: Vec<f64> = (0..3)
                .filter(|&k| k != axis)
                .map(|k| vortexre::potential::wrap_diff(t[k] - t[axis]).abs())
                .collect();
            assert!((sep[0] - sep[1]).abs() < 1e-8);
            let want = match kind {
                ExtremalType::Maximum => 2.0 * PI / 3.0,
                ExtremalType::Minimum => PI / 4.0,
                _ => 3.0 * PI / 4.0,
            };
            assert!((sep[0] - want).abs() < 1e-8, "{kind:?}: {}", sep[0]);
        }
    }
}

#[test]
fn asymmetric_weights() {
    for (mu, count, families) in [
        ([2.0, 1.0, 9.0], 10, 5),
        ([2.0, -1.0, 3.0], 10, 5),
        ([-1.0, -3.0, 10.0], 8, 4),
    ] {
        let (_, set, fam) = run(mu);
        assert_eq!(set.len(), count, "{mu:?}");
        assert_eq!(fam.len(), families, "{mu:?}");
        assert!(fam.iter().all(|f| f.len() == 2), "{mu:?}");
        for p in &set.points {
            assert!(p.symmetry_axis.is_none(), "{mu:?}");
            assert_eq!(p.report.zero_count, 1);
        }
    }
}

#[test]
fn minima_stable_for_positive_weights_only() {
    let (w, set, _) = run([2.0, 1.0, 9.0]);
    assert!(w.all_positive());
    for p in &set.points {
        let min = p.report.extremal_type == ExtremalType::Minimum;
        assert_eq!(p.report.verdict == Verdict::Stable, min);
    }
    let (_, set, _) = run([2.0, -1.0, 3.0]);
    assert!(set
        .points
        .iter()
        .any(|p| p.report.extremal_type == ExtremalType::Saddle
            && p.report.verdict == Verdict::Stable));
    let (_, set, _) = run([-1.0, -3.0, 10.0]);
    assert!(set
        .points
        .iter()
        .any(|p| p.report.extremal_type == ExtremalType::Maximum
            && p.report.verdict == Verdict::Stable));
    assert!(set
        .points
        .iter()
        .filter(|p| p.report.extremal_type == ExtremalType::Minimum)
        .all(|p| p.report.verdict == Verdict::Unstable));
}

#[test]
fn found_points_are_roots_of_the_half_angle_system() {
    for mu in [[1, 1, 1], [2, 1, 9], [2, -1, 3], [-1, -3, 10]] {
        let sys = build_equal_weight_system(mu).unwrap();
        let (_, set, _) = run(mu.map(|m| m as f64));
        for p in &set.points {
            let r = half_angle_coordinates(&p.config);
            for (k, v) in sys.residuals_f64(&r).iter().enumerate() {
                let scale: f64 = sys.polys()[k]
                    .terms()
                    .map(|(_, c)| vortexre::exact::rational::to_f64(c).abs())
                    .sum::<f64>()
                    * r.iter().fold(1.0f64, |a, x| a.max(x.abs())).powi(8);
                assert!(v.abs() < 1e-9 * scale, "{mu:?} {v}");
            }
        }
    }
}

#[test]
fn doubling_seeds_does_not_add_points() {
    for mu in [[1.0, 1.0, 1.0], [2.0, -1.0, 3.0]] {
        let w = CirculationWeights::new(mu.to_vec()).unwrap();
        let a = find_all_critical_points(&w, 2048).unwrap();
        let b = find_all_critical_points(&w, 4096).unwrap();
        assert!(b.len() <= a.len(), "{mu:?}: {} -> {}", a.len(), b.len());
    }
}

#[test]
fn points_repolish_to_themselves() {
    let (w, set, _) = run([2.0, 1.0, 9.0]);
    for p in &set.points {
        let again = vortexre::potential::polish(&p.config, &w, 1e-12, 10, 0.3).unwrap();
        assert!(vortexre::search::config_distance(&again, &p.config) < 1e-10);
    }
}
