use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use vortexre::algebraic::{
    build_numeric_system, build_symmetry_case_system, symmetry_elimination, FactorKind,
    SymmetryCase,
};
use vortexre::dynamics::{
    continue_family_with, full_stability, polygon_family, re_residual, simulate as run_simulation,
    ContinuationOptions, HelioConfig, NewtonOptions, PlanarConfig,
};
use vortexre::exact::rational::to_f64;
use vortexre::exact::{MultiPoly, Rational};
use vortexre::export::{find_report, trace_rows, ConfigRecord, FindReport, TraceRow};
use vortexre::hermite::certify as certify_system;
use vortexre::par::Execution;
use vortexre::potential::{
    classify_with, polish, AngularConfig, CirculationWeights, ClassifyOptions,
};
use vortexre::search::{find_all_critical_points_with, group_into_families, SearchOptions};

use crate::args::{
    BuildSystemArgs, CertifyArgs, ContinueArgs, FindArgs, Format, GlobalOpts, PlotArgs,
    SimulateArgs,
};
use crate::plot::render;
use crate::CliError;

type Res<T> = Result<T, CliError>;

pub struct Ctx {
    pub classify: ClassifyOptions,
    pub tol_newton: f64,
    pub seeds: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub exec: Execution,
}

/// Finite and strictly positive (rejects NaN).
fn positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

pub fn validate(g: &GlobalOpts) -> Res<Ctx> {
    for (name, v) in [
        ("--tol-grad", g.tol_grad),
        ("--tol-newton", g.tol_newton),
        ("--tol-zero-eig", g.tol_zero_eig),
    ] {
        if !positive(v) {
            return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
        }
    }
    if g.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    if let Some(dir) = &g.out {
        fs::create_dir_all(dir)?;
    }
    Ok(Ctx {
        classify: ClassifyOptions {
            grad_tol: g.tol_grad,
            zero_tol: g.tol_zero_eig,
        },
        tol_newton: g.tol_newton,
        seeds: g.seeds,
        out: g.out.clone(),
        format: g.format,
        exec: if g.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    })
}

impl Ctx {
    fn write_file(&self, name: &str, contents: &str) -> Res<Option<PathBuf>> {
        match &self.out {
            Some(dir) => {
                let p = dir.join(name);
                fs::write(&p, contents)?;
                Ok(Some(p))
            }
            None => Ok(None),
        }
    }
}

/// Comma-separated exact weights: integers, `p/q`, or decimals.
fn parse_weights_exact(text: &str) -> Res<Vec<Rational>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim) {
        if tok.is_empty() {
            return Err(CliError::Usage(format!(
                "empty entry in weight list `{text}`"
            )));
        }
        let q = match tok.parse::<Rational>() {
            Ok(q) => q,
            Err(_) => {
                let x: f64 = tok
                    .parse()
                    .map_err(|_| CliError::Usage(format!("cannot parse weight `{tok}`")))?;
                Rational::from_float(x)
                    .ok_or_else(|| CliError::Usage(format!("weight `{tok}` is not finite")))?
            }
        };
        out.push(q);
    }
    Ok(out)
}

fn parse_weights(text: &str) -> Res<CirculationWeights> {
    let w = parse_weights_exact(text)?.iter().map(to_f64).collect();
    Ok(CirculationWeights::new(w)?)
}

fn parse_floats(text: &str) -> Res<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse number `{t}`")))
        })
        .collect()
}

fn emit_csv(header: &[String], rows: &[Vec<String>]) -> Res<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    String::from_utf8(
        w.into_inner()
            .map_err(|e| CliError::Compute(e.to_string()))?,
    )
    .map_err(|e| CliError::Compute(e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> Res<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn print(s: &str) -> Res<()> {
    let mut out = io::stdout().lock();
    out.write_all(s.as_bytes())?;
    Ok(())
}

// ---------- find ----------

fn find_table(r: &FindReport) -> String {
    let mut s = format!(
        "mu = ({}): {} critical points in {} families (sizes {})\n",
        r.mu.iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        r.count,
        r.family_sizes.len(),
        r.family_sizes
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    s.push_str(&format!(
        "{:>3} {:>6}  {:<34} {:<26} {:<9} {:<10} {:<9} {}\n",
        "#",
        "family",
        "theta (rad)",
        "theta (deg)",
        "type",
        "verdict",
        "symmetric",
        "eig(mu^-1 V_tt)"
    ));
    for p in &r.points {
        let rad = p
            .angles_rad
            .iter()
            .map(|x| format!("{x:.6}"))
            .collect::<Vec<_>>()
            .join(" ");
        let deg = p
            .angles_deg
            .iter()
            .map(|x| format!("{x:.2}"))
            .collect::<Vec<_>>()
            .join(" ");
        let sym = match p.symmetry_axis {
            Some(a) => format!("axis {a}"),
            None => "no".into(),
        };
        let eig = p
            .weighted_eigs
            .iter()
            .map(|z| {
                if z.im.abs() > 1e-12 {
                    format!("{:.4}{:+.4}i", z.re, z.im)
                } else {
                    format!("{:.4}", z.re)
                }
            })
            .collect::<Vec<_>>()
            .join(" ");
        s.push_str(&format!(
            "{:>3} {:>6}  {:<34} {:<26} {:<9} {:<10} {:<9} {}\n",
            p.index,
            p.family,
            rad,
            deg,
            p.extremal_type.to_string(),
            p.verdict.to_string(),
            sym,
            eig
        ));
    }
    s
}

fn find_csv(r: &FindReport) -> Res<String> {
    let n = r.mu.len();
    let mut header: Vec<String> = vec!["index".into(), "family".into()];
    header.extend((1..=n).map(|i| format!("theta{i}_rad")));
    header.extend((1..=n).map(|i| format!("theta{i}_deg")));
    header.extend(["type", "verdict", "symmetric", "zero_count"].map(String::from));
    let rows: Vec<Vec<String>> = r
        .points
        .iter()
        .map(|p| {
            let mut row = vec![p.index.to_string(), p.family.to_string()];
            row.extend(p.angles_rad.iter().map(|x| format!("{x:.6}")));
            row.extend(p.angles_deg.iter().map(|x| format!("{x:.2}")));
            row.push(p.extremal_type.to_string());
            row.push(p.verdict.to_string());
            row.push(p.symmetric.to_string());
            row.push(p.zero_count.to_string());
            row
        })
        .collect();
    emit_csv(&header, &rows)
}

fn search(
    ctx: &Ctx,
    mu: &CirculationWeights,
    dedup: f64,
) -> Res<(vortexre::search::CriticalPointSet, Vec<Vec<usize>>)> {
    let opts = SearchOptions {
        seeds: ctx.seeds,
        dedup_tol: dedup,
        classify: ctx.classify,
        execution: ctx.exec,
        ..SearchOptions::default()
    };
    let set = find_all_critical_points_with(mu, &opts)?;
    let fam = group_into_families(&set, mu);
    Ok((set, fam))
}

pub fn find(ctx: &Ctx, a: &FindArgs) -> Res<()> {
    if !positive(a.tol_dedup) {
        return Err(CliError::Usage("--tol-dedup must be positive".into()));
    }
    let mu = parse_weights(&a.mu)?;
    let (set, fam) = search(ctx, &mu, a.tol_dedup)?;
    let report = find_report(&set, &fam);
    let table = find_table(&report);
    let json = to_json(&report)?;
    match ctx.format {
        Format::Table => print(&table)?,
        Format::Json => print(&json)?,
        Format::Csv => print(&find_csv(&report)?)?,
    }
    if ctx.out.is_some() {
        ctx.write_file("critical_points.json", &json)?;
        ctx.write_file("critical_points.txt", &table)?;
        for (p, rec) in set.points.iter().zip(&report.points) {
            let cfg = ConfigRecord::from_angles(&p.config, &mu).with_label(format!(
                "#{} family {} {} {}",
                rec.index, rec.family, rec.extremal_type, rec.verdict
            ));
            ctx.write_file(&format!("point_{:02}.json", rec.index), &to_json(&cfg)?)?;
            ctx.write_file(&format!("point_{:02}.svg", rec.index), &render(&cfg))?;
        }
    }
    Ok(())
}

// ---------- certify / build-system ----------

fn integer_weights(text: &str) -> Res<Vec<Rational>> {
    let w = parse_weights_exact(text)?;
    if let Some(q) = w.iter().find(|q| !q.is_integer()) {
        return Err(CliError::Usage(format!(
            "weight {q} is not an integer: exact root counting requires integer weights; \
             scale the vector (the counts depend only on the ratios of the weights)"
        )));
    }
    Ok(w)
}

fn case_of(k: u8) -> Res<SymmetryCase> {
    Ok(SymmetryCase::from_index(k as usize)?)
}

pub fn certify(ctx: &Ctx, a: &CertifyArgs) -> Res<()> {
    if let Some(k) = a.symmetry_case {
        return certify_symmetry(ctx, a, case_of(k)?);
    }
    let mu = integer_weights(a.mu.as_deref().expect("required by clap"))?;
    let sys = build_numeric_system(&mu)?;
    let c = certify_system(sys.polys(), ctx.exec)?;
    let ring = sys.ring();
    let lms: Vec<String> = c
        .basis
        .leading_monomials()
        .iter()
        .map(|m| MultiPoly::monomial(ring, m.clone(), Rational::from_integer(1.into())).to_text())
        .collect();
    let mu_text: Vec<String> = mu.iter().map(|q| q.to_string()).collect();
    let mut j = json!({
        "mu": mu_text,
        "variables": ring.names(),
        "basis_size": c.basis.len(),
        "leading_monomials": lms,
        "quotient_dimension": c.quotient.len(),
        "real_roots": c.count.real_distinct,
        "complex_roots": c.count.complex_distinct,
    });
    if a.show_basis {
        j["basis"] = json!(c
            .basis
            .polys()
            .iter()
            .map(|p| p.to_text())
            .collect::<Vec<_>>());
    }
    if a.show_hermite {
        j["hermite"] = json!(c
            .hermite
            .entries()
            .iter()
            .map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    let mut table = format!(
        "weights: ({})\nvariables: {}\ngroebner basis (degrevlex): {} polynomials\nleading monomials: {}\nquotient dimension: {}\nreal roots: {}\ncomplex roots: {}\n",
        mu_text.join(", "),
        ring.names().join(", "),
        c.basis.len(),
        lms.join(", "),
        c.quotient.len(),
        c.count.real_distinct,
        c.count.complex_distinct
    );
    if a.show_basis {
        table.push_str("basis:\n");
        for p in c.basis.polys() {
            table.push_str(&format!("  {p}\n"));
        }
    }
    if a.show_hermite {
        table.push_str("hermite matrix:\n");
        table.push_str(&c.hermite.to_text());
        table.push('\n');
    }
    let json_text = to_json(&j)?;
    match ctx.format {
        Format::Table => print(&table)?,
        Format::Json => print(&json_text)?,
        Format::Csv => print(&emit_csv(
            &[
                "real_roots",
                "complex_roots",
                "quotient_dimension",
                "basis_size",
            ]
            .map(String::from),
            &[vec![
                c.count.real_distinct.to_string(),
                c.count.complex_distinct.to_string(),
                c.quotient.len().to_string(),
                c.basis.len().to_string(),
            ]],
        )?)?,
    }
    ctx.write_file("certificate.json", &json_text)?;
    Ok(())
}

fn certify_symmetry(ctx: &Ctx, a: &CertifyArgs, case: SymmetryCase) -> Res<()> {
    let gb = symmetry_elimination(case)?;
    let gens: Vec<String> = gb.polys().iter().map(|p| p.to_text()).collect();
    // does the given weight vector satisfy the relation?
    let holds = match &a.mu {
        Some(t) => {
            let mu = parse_weights_exact(t)?;
            if mu.len() != 3 {
                return Err(CliError::Usage(
                    "symmetry cases are defined for three weak vortices".into(),
                ));
            }
            let mut pt = vec![Rational::from_integer(0.into())];
            pt.extend(mu);
            Some(
                gb.polys()
                    .iter()
                    .all(|p| p.eval(&pt) == Rational::from_integer(0.into())),
            )
        }
        None => None,
    };
    let j =
        json!({ "case": case.index(), "elimination_ideal": gens, "weights_admit_symmetry": holds });
    match ctx.format {
        Format::Json => print(&to_json(&j)?)?,
        Format::Csv => print(&emit_csv(
            &["case".into(), "generator".into()],
            &gens
                .iter()
                .map(|g| vec![case.index().to_string(), g.clone()])
                .collect::<Vec<_>>(),
        )?)?,
        Format::Table => {
            let mut s = format!(
                "symmetry case {}: elimination ideal generated by\n",
                case.index()
            );
            for g in &gens {
                s.push_str(&format!("  {g}\n"));
            }
            if let Some(h) = holds {
                s.push_str(&format!(
                    "weights admit a symmetric critical point: {}\n",
                    if h { "yes" } else { "no" }
                ));
            }
            print(&s)?;
        }
    }
    Ok(())
}

pub fn build_system(ctx: &Ctx, a: &BuildSystemArgs) -> Res<()> {
    let sys = match (a.symmetry_case, &a.mu) {
        (Some(k), _) => build_symmetry_case_system(case_of(k)?)?,
        (None, Some(t)) => build_numeric_system(&parse_weights_exact(t)?)?,
        (None, None) => unreachable!("clap requires one"),
    };
    let stripped: Vec<serde_json::Value> = sys
        .stripped_factors()
        .iter()
        .map(|f| {
            let kind = match f.kind {
                FactorKind::Collision(..) => "collision",
                FactorKind::NonReal => "nonreal",
                FactorKind::Denominator => "denominator",
            };
            json!({ "equation": f.equation + 1, "factor": f.factor.to_text(), "multiplicity": f.multiplicity, "kind": kind })
        })
        .collect();
    match ctx.format {
        Format::Table => print(&(sys.to_text() + "\n"))?,
        Format::Json => print(&to_json(&json!({
            "variables": sys.ring().names(),
            "polys": sys.polys().iter().map(|p| p.to_text()).collect::<Vec<_>>(),
            "stripped_factors": stripped,
        }))?)?,
        Format::Csv => print(&emit_csv(
            &["equation".into(), "poly".into()],
            &sys.polys()
                .iter()
                .enumerate()
                .map(|(i, p)| vec![(i + 1).to_string(), p.to_text()])
                .collect::<Vec<_>>(),
        )?)?,
    }
    ctx.write_file("system.txt", &(sys.to_text() + "\n"))?;
    Ok(())
}

// ---------- continue ----------

fn select_start(ctx: &Ctx, a: &ContinueArgs, mu: &CirculationWeights) -> Res<AngularConfig> {
    if let Some(t) = &a.theta {
        let theta = parse_floats(t)?;
        if theta.len() != mu.len() {
            return Err(CliError::Usage(format!(
                "{} angles for {} weights",
                theta.len(),
                mu.len()
            )));
        }
        return polish(&AngularConfig::new(theta), mu, ctx.tol_newton, 100, 0.3).ok_or_else(|| {
            CliError::Compute("no critical point of V near the given angles".into())
        });
    }
    let (set, _) = search(ctx, mu, 1e-6)?;
    if let Some(k) = a.point {
        return set
            .points
            .get(k.wrapping_sub(1))
            .map(|p| p.config.clone())
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "--point {k} out of range (found {} critical points)",
                    set.len()
                ))
            });
    }
    if let Some(sel) = &a.select {
        let (kind, verdict) = match sel.split_once(':') {
            Some((k, v)) => (k.to_string(), Some(v.to_string())),
            None => (sel.clone(), None),
        };
        return set
            .points
            .iter()
            .find(|p| {
                p.report.extremal_type.to_string() == kind
                    && verdict
                        .as_ref()
                        .is_none_or(|v| p.report.verdict.to_string() == *v)
            })
            .map(|p| p.config.clone())
            .ok_or_else(|| CliError::Compute(format!("no critical point matches `{sel}`")));
    }
    Err(CliError::Usage(
        "choose a starting point with --point, --theta, --select or --polygon".into(),
    ))
}

fn snapshot_name(eps: f64) -> String {
    format!("snapshot_eps_{eps:.4}")
}

pub fn continuation(ctx: &Ctx, a: &ContinueArgs) -> Res<()> {
    if !positive(a.step) || !(positive(a.eps_max) || a.eps_max == 0.0) {
        return Err(CliError::Usage("need --step > 0 and --eps-max >= 0".into()));
    }
    let (rows, configs, failure) = if let Some(n) = a.polygon {
        let m = parse_weights_exact(&a.mu)?;
        if m.len() != 1 {
            return Err(CliError::Usage("polygon mode takes a single weight".into()));
        }
        let m = to_f64(&m[0]);
        let m = if a.normalize { m.signum() } else { m };
        polygon_rows(ctx, n, m, a.eps_max, a.step)?
    } else {
        let mut mu = parse_weights(&a.mu)?;
        if a.normalize {
            mu = mu.normalized();
        }
        let start = select_start(ctx, a, &mu)?;
        let report = classify_with(&start, &mu, &ctx.classify)?;
        let at_zero = HelioConfig::on_unit_circle(&start.gauge_fixed(), 0.0, mu.clone())?;
        let res0 = re_residual(&at_zero)?
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let mut rows = vec![TraceRow::from_helio(
            &at_zero,
            res0,
            report.verdict.to_string(),
        )];
        let mut configs = vec![at_zero];
        let opts = ContinuationOptions {
            newton: NewtonOptions {
                tol: ctx.tol_newton,
                ..NewtonOptions::default()
            },
            ..ContinuationOptions::default()
        };
        let trace = continue_family_with(&start, &mu, a.eps_max, a.step, &opts)?;
        rows.extend(trace_rows(&trace));
        configs.extend(trace.points.iter().map(|p| p.config.clone()));
        (rows, configs, trace.failure)
    };
    let n = configs[0].n();
    let header = TraceRow::header(n);
    let body: Vec<Vec<String>> = rows.iter().map(|r| r.fields()).collect();
    let csv_text = emit_csv(&header, &body)?;
    match ctx.format {
        Format::Csv => print(&csv_text)?,
        Format::Json => print(&to_json(&json!({ "rows": rows, "failure": failure }))?)?,
        Format::Table => {
            let mut s = header
                .iter()
                .map(|h| format!("{h:>14}"))
                .collect::<Vec<_>>()
                .join(" ")
                + "\n";
            for r in &body {
                s.push_str(
                    &(r.iter()
                        .map(|f| format!("{:>14}", truncate(f, 14)))
                        .collect::<Vec<_>>()
                        .join(" ")
                        + "\n"),
                );
            }
            print(&s)?;
        }
    }
    ctx.write_file("trace.csv", &csv_text)?;
    if ctx.out.is_some() {
        let snaps = if a.snapshots.is_empty() {
            vec![0.0, a.eps_max]
        } else {
            a.snapshots.clone()
        };
        for e in snaps {
            let c = configs
                .iter()
                .min_by(|x, y| (x.eps - e).abs().total_cmp(&(y.eps - e).abs()))
                .expect("at least the ε = 0 row");
            let rec = ConfigRecord::from_helio(c);
            ctx.write_file(&format!("{}.json", snapshot_name(c.eps)), &to_json(&rec)?)?;
            ctx.write_file(&format!("{}.svg", snapshot_name(c.eps)), &render(&rec))?;
        }
    }
    match failure {
        Some(f) => Err(CliError::Compute(format!(
            "continuation stopped early ({} rows kept): {f}",
            rows.len()
        ))),
        None => Ok(()),
    }
}

fn truncate(s: &str, n: usize) -> &str {
    if s.len() <= n {
        s
    } else {
        &s[..n]
    }
}

type TraceParts = (Vec<TraceRow>, Vec<HelioConfig>, Option<String>);

fn polygon_rows(ctx: &Ctx, n: usize, m: f64, eps_max: f64, step: f64) -> Res<TraceParts> {
    let steps = (eps_max / step - 1e-9).ceil().max(0.0) as usize;
    let mut rows = Vec::new();
    let mut configs = Vec::new();
    for k in 0..=steps {
        let eps = (k as f64 * step).min(eps_max);
        let c = polygon_family(n, m, eps)?;
        let res = re_residual(&c)?.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let verdict = if eps == 0.0 {
            let theta = c.angles();
            classify_with(&theta, &c.mu, &ctx.classify)?
                .verdict
                .to_string()
        } else {
            match full_stability(&c, 1e-7)?.verdict {
                vortexre::dynamics::SpectralVerdict::Stable => "stable".into(),
                vortexre::dynamics::SpectralVerdict::Unstable => "unstable".into(),
            }
        };
        rows.push(TraceRow::from_helio(&c, res, verdict));
        configs.push(c);
    }
    Ok((rows, configs, None))
}

// ---------- plot ----------

fn read_input(p: &Path) -> Res<String> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(p)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
    }
}

fn parse_config(text: &str) -> Res<ConfigRecord> {
    let c: ConfigRecord = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("malformed configuration JSON: {e}")))?;
    if c.weak.is_empty() || c.mu.len() != c.weak.len() {
        return Err(CliError::Usage(
            "configuration needs one weight per weak vortex".into(),
        ));
    }
    Ok(c)
}

pub fn plot(a: &PlotArgs) -> Res<()> {
    let cfg = parse_config(&read_input(&a.input)?)?;
    let svg = render(&cfg);
    match &a.output {
        Some(p) => fs::write(p, svg)?,
        None => print(&svg)?,
    }
    Ok(())
}

// ---------- simulate ----------

pub fn simulate(ctx: &Ctx, a: &SimulateArgs) -> Res<()> {
    if !positive(a.t_end) || !positive(a.tol) {
        return Err(CliError::Usage("need --t-end > 0 and --tol > 0".into()));
    }
    let planar: PlanarConfig = match (&a.config, a.polygon) {
        (Some(p), _) => {
            let c = parse_config(&read_input(p)?)?;
            let mut positions = vec![c.strong];
            positions.extend(c.weak.iter().copied());
            let mut circ = vec![1.0];
            circ.extend(c.mu.iter().map(|m| c.eps * m));
            PlanarConfig::new(positions, circ)?
        }
        (None, Some(n)) => {
            polygon_family(n, a.mu.expect("clap"), a.eps.expect("clap"))?.to_planar()
        }
        (None, None) => unreachable!("clap requires one"),
    };
    let traj = run_simulation(&planar, a.t_end, a.samples, a.tol)?;
    let h0 = vortexre::dynamics::hamiltonian(&planar)?;
    let mut h_drift = 0.0f64;
    let mut rigid_drift = 0.0f64;
    for (t, pos) in traj.times.iter().zip(&traj.positions) {
        let h = vortexre::dynamics::hamiltonian(&PlanarConfig::new(
            pos.clone(),
            planar.circulations.clone(),
        )?)?;
        h_drift = h_drift.max((h - h0).abs());
        let (s, c) = (-t).sin_cos();
        for (p, p0) in pos.iter().zip(&planar.positions) {
            let back = [c * p[0] - s * p[1], s * p[0] + c * p[1]];
            rigid_drift = rigid_drift.max((back[0] - p0[0]).abs().max((back[1] - p0[1]).abs()));
        }
    }
    let n = planar.positions.len();
    let mut header = vec!["t".to_string()];
    for i in 0..n {
        header.push(format!("x{i}"));
        header.push(format!("y{i}"));
    }
    let rows: Vec<Vec<String>> = traj
        .times
        .iter()
        .zip(&traj.positions)
        .map(|(t, pos)| {
            let mut r = vec![format!("{t:.6}")];
            r.extend(
                pos.iter()
                    .flat_map(|p| [format!("{:.12}", p[0]), format!("{:.12}", p[1])]),
            );
            r
        })
        .collect();
    let csv_text = emit_csv(&header, &rows)?;
    match ctx.format {
        Format::Csv => print(&csv_text)?,
        Format::Json => print(&to_json(&json!({
            "trajectory": traj,
            "energy_drift": h_drift,
            "corotating_drift": rigid_drift,
        }))?)?,
        Format::Table => print(&format!(
            "vortices: {n}\nduration: {}\nsamples: {}\nenergy drift: {h_drift:.3e}\nco-rotating drift (omega = 1): {rigid_drift:.3e}\n",
            a.t_end, a.samples
        ))?,
    }
    ctx.write_file("trajectory.csv", &csv_text)?;
    Ok(())
}
