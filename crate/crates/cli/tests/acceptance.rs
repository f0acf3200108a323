//! End-to-end acceptance suite: one PASS/FAIL line per criterion.
//! Run with `cargo test -p vortexre-cli --test acceptance`.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use vortexre::algebraic::build_equal_weight_system;
use vortexre::dynamics::{polygon_family, re_residual};
use vortexre::exact::rational::int;
use vortexre::exact::{Monomial, MonomialOrder, MultiPoly, Ring};
use vortexre::export::FindReport;
use vortexre::hermite::certify;
use vortexre::par::Execution;
use vortexre::potential::{
    potential_gradient, potential_hessian, potential_value, wrap_diff, AngularConfig,
    CirculationWeights, ExtremalType, Verdict,
};
use vortexre::search::symmetry_check;

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

// pinned tolerances
const SEPARATION_TOL: f64 = 1e-8;
const TRACE_RESIDUAL: f64 = 1e-10;
const RATE_HALVING_REL: f64 = 0.05;
const POLYGON_RESIDUAL: f64 = 1e-12;
const FD_REL: f64 = 1e-6;
const ROTATION_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-6;
const CERTIFY_BUDGET: Duration = Duration::from_secs(60);
const ELIMINATION_BUDGET: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cli(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = Command::new(env!("CARGO_BIN_EXE_vortexre"))
        .args(&full)
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!(
            "`vortexre {}` failed: {}",
            full.join(" "),
            String::from_utf8_lossy(&o.stderr).trim()
        ));
    }
    serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())
}

fn find(mu: &str) -> Result<FindReport, String> {
    serde_json::from_value(cli(&["find", "--mu", mu])?).map_err(|e| e.to_string())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn equal_weights_certificate() -> Outcome {
    let t = Instant::now();
    let c = cli(&["certify", "--mu", "1,1,1"])?;
    let dt = t.elapsed();
    let mut lms: Vec<String> = c["leading_monomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    lms.sort();
    let mut want = [
        "r2^2*r3^5",
        "r2*r3^6",
        "r3^7",
        "r2^6",
        "r2^5*r3",
        "r2^4*r3^2",
        "r2^3*r3^3",
    ]
    .map(String::from);
    want.sort();
    check(c["real_roots"] == 14, || {
        format!("real roots {}", c["real_roots"])
    })?;
    check(c["quotient_dimension"] == 24, || {
        format!("quotient dimension {}", c["quotient_dimension"])
    })?;
    check(c["basis_size"] == 7, || {
        format!("basis size {}", c["basis_size"])
    })?;
    check(lms == want, || format!("leading monomials {lms:?}"))?;
    check(dt < CERTIFY_BUDGET, || format!("took {dt:?}"))?;
    Ok(format!(
        "14 real roots, quotient dim 24, 7 basis elements, leading terms match ({dt:.2?})"
    ))
}

fn equal_weights_search() -> Outcome {
    let r = find("1,1,1")?;
    check(r.count == 14, || format!("{} points", r.count))?;
    let mut sizes = r.family_sizes.clone();
    sizes.sort();
    check(sizes == [2, 6, 6], || format!("family sizes {sizes:?}"))?;
    let expect = [
        (PI / 4.0, ExtremalType::Minimum, Verdict::Stable),
        (2.0 * PI / 3.0, ExtremalType::Maximum, Verdict::Unstable),
        (3.0 * PI / 4.0, ExtremalType::Saddle, Verdict::Unstable),
    ];
    for p in &r.points {
        let axis = p
            .symmetry_axis
            .ok_or_else(|| format!("point {} not symmetric", p.index))?
            - 1;
        let seps: Vec<f64> = (0..3)
            .filter(|&k| k != axis)
            .map(|k| wrap_diff(p.angles_rad[k] - p.angles_rad[axis]).abs())
            .collect();
        let (_, kind, verdict) = expect
            .iter()
            .find(|(d, _, _)| seps.iter().all(|s| (s - d).abs() < SEPARATION_TOL))
            .ok_or_else(|| format!("point {} separations {seps:?}", p.index))?;
        check(p.extremal_type == *kind && p.verdict == *verdict, || {
            format!(
                "point {}: {} {} at separation {:.6}",
                p.index, p.extremal_type, p.verdict, seps[0]
            )
        })?;
    }
    // all members of a family share their type
    for f in 1..=r.family_sizes.len() {
        let kinds: Vec<_> = r
            .points
            .iter()
            .filter(|p| p.family == f)
            .map(|p| p.extremal_type)
            .collect();
        check(kinds.windows(2).all(|w| w[0] == w[1]), || {
            format!("family {f} mixes types")
        })?;
    }
    Ok("14 points in families 2+6+6: maxima 2π/3 unstable, minima π/4 stable, saddles 3π/4 unstable".into())
}

fn asymmetric_counts() -> Outcome {
    let mut parts = Vec::new();
    for (mu, real) in [("2,1,9", 10), ("2,-1,3", 10), ("-1,-3,10", 8)] {
        let c = cli(&["certify", "--mu", mu])?;
        check(c["real_roots"] == real, || {
            format!("{mu}: certify {}", c["real_roots"])
        })?;
        let r = find(mu)?;
        check(r.count == real, || format!("{mu}: find {}", r.count))?;
        check(r.points.iter().all(|p| !p.symmetric), || {
            format!("{mu}: symmetric point found")
        })?;
        parts.push(format!("({mu}) → {real}"));
    }
    Ok(format!(
        "{}; find agrees, all points asymmetric",
        parts.join(", ")
    ))
}

fn symmetry_elimination() -> Outcome {
    let ring = Ring::new(["r", "mu1", "mu2", "mu3"]);
    let ord = MonomialOrder::lex(4);
    let want = [
        "mu1*mu2*mu3*(mu2 - mu3)",
        "mu1*mu2*mu3*(mu1 - mu3)",
        "mu1*mu2*mu3*(mu1 - mu2)",
    ];
    let mut slowest = Duration::ZERO;
    for (k, w) in (1..=3).zip(want) {
        let t = Instant::now();
        let j = cli(&["certify", "--symmetry-case", &k.to_string()])?;
        slowest = slowest.max(t.elapsed());
        let gens = j["elimination_ideal"].as_array().unwrap();
        check(gens.len() == 1, || {
            format!("case {k}: {} generators", gens.len())
        })?;
        let g = MultiPoly::parse(&ring, gens[0].as_str().unwrap()).map_err(|e| e.to_string())?;
        let e = MultiPoly::parse(&ring, w).map_err(|e| e.to_string())?;
        check(g.monic(&ord) == e.monic(&ord), || {
            format!("case {k}: {g} vs {e}")
        })?;
    }
    check(slowest < ELIMINATION_BUDGET, || format!("took {slowest:?}"))?;
    Ok(format!(
        "cases 1/2/3 give μ₁μ₂μ₃(μ₂−μ₃), μ₁μ₂μ₃(μ₁−μ₃), μ₁μ₂μ₃(μ₁−μ₂) (slowest {slowest:.2?})"
    ))
}

fn mixed_sign_counterexample() -> Outcome {
    let a = find("2,-1,3")?;
    check(
        a.points
            .iter()
            .any(|p| p.extremal_type == ExtremalType::Saddle && p.verdict == Verdict::Stable),
        || "(2,-1,3): no stable saddle".into(),
    )?;
    let b = find("-1,-3,10")?;
    check(
        b.points
            .iter()
            .any(|p| p.extremal_type == ExtremalType::Maximum && p.verdict == Verdict::Stable),
        || "(-1,-3,10): no stable maximum".into(),
    )?;
    let minima: Vec<_> = b
        .points
        .iter()
        .filter(|p| p.extremal_type == ExtremalType::Minimum)
        .collect();
    check(
        !minima.is_empty() && minima.iter().all(|p| p.verdict == Verdict::Unstable),
        || "(-1,-3,10): minimum family not unstable".into(),
    )?;
    Ok(
        "(2,-1,3) has a stable saddle; (-1,-3,10) has a stable maximum and an unstable minimum"
            .into(),
    )
}

fn trace(step: f64) -> Result<Vec<Value>, String> {
    let j = cli(&[
        "continue",
        "--mu",
        "2,-1,3",
        "--normalize",
        "--select",
        "saddle:stable",
        "--eps-max",
        "0.1",
        "--step",
        &step.to_string(),
    ])?;
    check(j["failure"].is_null(), || {
        format!("continuation failed: {}", j["failure"])
    })?;
    Ok(j["rows"].as_array().unwrap().clone())
}

fn rate(rows: &[Value]) -> f64 {
    rows.iter()
        .filter(|r| r["eps"].as_f64().unwrap() > 0.0)
        .map(|r| {
            let eps = r["eps"].as_f64().unwrap();
            r["radii"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| (x.as_f64().unwrap() - 1.0).abs())
                .fold(0.0, f64::max)
                / eps
        })
        .fold(0.0, f64::max)
}

fn continuation() -> Outcome {
    let rows = trace(0.005)?;
    for target in [0.05, 0.1] {
        let r = rows
            .iter()
            .find(|r| (r["eps"].as_f64().unwrap() - target).abs() < 1e-12)
            .ok_or_else(|| format!("trace never reached ε = {target}"))?;
        let res = r["residual"].as_f64().unwrap();
        check(res < TRACE_RESIDUAL, || {
            format!("residual {res:e} at ε = {target}")
        })?;
    }
    for r in rows.iter().filter(|r| r["eps"].as_f64().unwrap() > 0.0) {
        check(r["verdict"] == "stable", || {
            format!("unstable spectrum at ε = {}", r["eps"])
        })?;
        let theta: Vec<f64> = r["angles"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        check(
            symmetry_check(&AngularConfig::new(theta), SYMMETRY_TOL).is_none(),
            || format!("symmetric configuration at ε = {}", r["eps"]),
        )?;
    }
    let (c1, c2) = (rate(&rows), rate(&trace(0.0025)?));
    check(((c1 - c2) / c1).abs() < RATE_HALVING_REL, || {
        format!("rate {c1} vs {c2} under step halving")
    })?;
    Ok(format!("reaches ε = 0.05 and 0.1 with residual < 1e-10, stable and asymmetric; max|rᵢ−1|/ε = {c1:.4} ({c2:.4} at half step)"))
}

fn polygons() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=6 {
        for mu in [1.0, 2.0] {
            for eps in [0.0, 0.05, 0.1] {
                let p = polygon_family(n, mu, eps).map_err(|e| e.to_string())?;
                let r = re_residual(&p)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .fold(0.0f64, |a, x| a.max(x.abs()));
                check(r < POLYGON_RESIDUAL, || {
                    format!("N={n} μ={mu} ε={eps}: residual {r:e}")
                })?;
                worst = worst.max(r);
            }
        }
    }
    Ok(format!(
        "N = 2..6, μ ∈ {{1,2}}, ε ∈ {{0,0.05,0.1}}: worst residual {worst:.1e}"
    ))
}

fn random_config(rng: &mut StdRng, n: usize) -> (AngularConfig, CirculationWeights) {
    loop {
        let t = AngularConfig::new((0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect());
        if t.min_gap() > 0.1 {
            let m = (0..n)
                .map(|_| rng.gen_range(0.2..5.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
                .collect();
            return (t, CirculationWeights::new(m).unwrap());
        }
    }
}

fn derivative_properties() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(8);
    let h = 1e-6;
    for _ in 0..100 {
        let (t, mu) = random_config(&mut rng, 4);
        let th = t.theta().to_vec();
        let g = potential_gradient(&t, &mu).unwrap();
        let hs = potential_hessian(&t, &mu).unwrap();
        let gs = g.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        let hsc = hs.amax().max(1.0);
        for k in 0..4 {
            let shift = |d: f64| {
                let mut v = th.clone();
                v[k] += d;
                AngularConfig::new(v)
            };
            let fd = (potential_value(&shift(h), &mu).unwrap()
                - potential_value(&shift(-h), &mu).unwrap())
                / (2.0 * h);
            check((fd - g[k]).abs() < FD_REL * gs, || {
                format!("gradient FD {fd} vs {}", g[k])
            })?;
            let (gp, gm) = (
                potential_gradient(&shift(h), &mu).unwrap(),
                potential_gradient(&shift(-h), &mu).unwrap(),
            );
            for i in 0..4 {
                let fd = (gp[i] - gm[i]) / (2.0 * h);
                check((fd - hs[(i, k)]).abs() < FD_REL * hsc, || {
                    format!("Hessian FD {fd} vs {}", hs[(i, k)])
                })?;
            }
        }
        let c = rng.gen_range(-10.0..10.0);
        let rot = AngularConfig::new(th.iter().map(|x| x + c).collect());
        let (v0, v1) = (
            potential_value(&t, &mu).unwrap(),
            potential_value(&rot, &mu).unwrap(),
        );
        check((v0 - v1).abs() < ROTATION_TOL * v0.abs().max(1.0), || {
            format!("V not rotation invariant: {v0} vs {v1}")
        })?;
        let g1 = potential_gradient(&rot, &mu).unwrap();
        let dg = g
            .iter()
            .zip(&g1)
            .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        check(dg < ROTATION_TOL * 10.0 * gs, || {
            format!("gradient not rotation equivariant: {dg:e}")
        })?;
        let dh = (potential_hessian(&rot, &mu).unwrap() - &hs).amax();
        check(dh < ROTATION_TOL * 10.0 * hsc, || {
            format!("Hessian not rotation equivariant: {dh:e}")
        })?;
    }
    Ok(())
}

fn hermite_properties() -> Result<(), String> {
    let ring = Ring::new(["x"]);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let deg = rng.gen_range(1..=8);
        let mut coeffs: oracle::UPoly = (0..=deg).map(|_| int(rng.gen_range(-6..=6))).collect();
        if coeffs[deg] == int(0) {
            coeffs[deg] = int(1);
        }
        let p = MultiPoly::from_terms(
            &ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())),
        );
        let c = certify(&[p], Execution::Sequential).map_err(|e| e.to_string())?;
        let sturm = oracle::sturm_count(&coeffs);
        check(c.count.real_distinct == sturm, || {
            format!(
                "{coeffs:?}: Hermite {} vs Sturm {sturm}",
                c.count.real_distinct
            )
        })?;
        check(c.hermite.is_symmetric(), || {
            "asymmetric Hermite matrix".into()
        })?;
        check(
            c.count.real_distinct % 2 == c.count.complex_distinct % 2,
            || "parity violated".into(),
        )?;
        check(c.basis.satisfies_buchberger_criterion(), || {
            "S-polynomial did not reduce to zero".into()
        })?;
    }
    for mu in [[1, 1, 1], [2, 1, 9], [2, -1, 3], [-1, -3, 10]] {
        let sys = build_equal_weight_system(mu).map_err(|e| e.to_string())?;
        let c = certify(sys.polys(), Execution::Parallel).map_err(|e| e.to_string())?;
        check(
            c.hermite.is_symmetric() && c.basis.satisfies_buchberger_criterion(),
            || format!("{mu:?}: basis/Hermite check"),
        )?;
        check(
            c.count.real_distinct % 2 == c.count.complex_distinct % 2,
            || format!("{mu:?}: parity"),
        )?;
    }
    Ok(())
}

fn properties() -> Outcome {
    derivative_properties()?;
    hermite_properties()?;
    Ok("FD gradient/Hessian, rotation equivariance, Hermite = Sturm on 200 polynomials, Buchberger, symmetry, parity".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("equal-weight certificate", equal_weights_certificate),
        ("equal-weight families", equal_weights_search),
        ("asymmetric root counts", asymmetric_counts),
        ("symmetry elimination", symmetry_elimination),
        ("mixed-sign stability", mixed_sign_counterexample),
        ("continuation", continuation),
        ("polygon family", polygons),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        match out {
            Ok(msg) => println!("PASS [{}] {name}: {msg} [{dt:.1?}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {name}: {msg} [{dt:.1?}]", k + 1)
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
