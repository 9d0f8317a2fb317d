use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nearly_kahler::deformation::{
    build_star, deformation_spectrum, eigenvalue_chain_check, s3s3_diagonal, s3s3_factor,
    s3s3_graph, HomogeneousLagrangian,
};
use nearly_kahler::homogeneous::{check_naturally_reductive, su2_cubed};
use nearly_kahler::lagrangian::{
    lagrangian_identity_check, make_lagrangian, random_lagrangian, split_by_r, split_by_spectrum,
    strict_minimality_check, LagrangianFile, LagrangianSubspace,
};
use nearly_kahler::model::registry::{load_model, resolve};
use nearly_kahler::model::{identity_suite, r_operator, ModelFile, NKModel};
use nearly_kahler::report::{Check, CheckReport};
use nearly_kahler::su2_classify::{enumerate_solutions, verify_totally_geodesic};
use nearly_kahler::tensor::Matrix;
use nearly_kahler::twistor::{
    build_twistor_model, check_torsion_axioms, phi_maps, twistor_minimality_check,
    vertical_geodesic_note, TwistorModel,
};
use nearly_kahler::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nkverify",
    version,
    about = "Algebraic checks for nearly Kähler models and their Lagrangian subspaces"
)]
struct Cli {
    /// Tolerance for identity residuals.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Number of random samples for searches.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining identities of a model and compute r and the type constant.
    Verify {
        /// Registry name (flat-kahler:N, cN, s6[:S], s3s3[:S], twistor:N:K, product:A,B) or model file.
        model: String,
    },
    /// Analyse Lagrangian subspaces given in a file or drawn at random.
    Lagrangian {
        model: Option<String>,
        /// File with {"model": ..., "basis": [[...]]}.
        #[arg(long)]
        basis: Option<PathBuf>,
        /// Number of random Lagrangians, with seeds seed, seed+1, ...
        #[arg(long)]
        random: Option<usize>,
    },
    /// Build a twistor-type model and check its torsion, spectrum and Lagrangian block structure.
    Twistor {
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
        #[arg(short = 'k', long = "kappa", default_value_t = 1.0)]
        kappa: f64,
        /// Random Lagrangians to test besides the standard one.
        #[arg(long, default_value_t = 1)]
        random: usize,
    },
    /// Classify invariant Lagrangians of S³×S³.
    ClassifySu2,
    /// Star operator, invariant deformation equation and Hodge eigenvalue on a Lagrangian.
    Deform {
        model: String,
        /// diag, graph:D1,D2,D3, factor1 or factor2 (S³×S³ models only).
        #[arg(default_value = "diag")]
        lagrangian: String,
    },
    /// Print a model in the JSON model format.
    Export { model: String },
}

#[derive(Serialize)]
struct ErrorInfo {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct RunManifest {
    command: &'static str,
    parameters: BTreeMap<&'static str, Value>,
    seed: u64,
    models: Vec<String>,
    tool_version: &'static str,
    passed: bool,
    reports: Vec<CheckReport>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    results: BTreeMap<&'static str, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorInfo>,
}

struct Run {
    manifest: RunManifest,
    /// Set when the output is not a manifest.
    raw: Option<String>,
}

impl Run {
    fn new(command: &'static str, seed: u64) -> Self {
        Run {
            manifest: RunManifest {
                command,
                parameters: BTreeMap::new(),
                seed,
                models: Vec::new(),
                tool_version: env!("CARGO_PKG_VERSION"),
                passed: true,
                reports: Vec::new(),
                results: BTreeMap::new(),
                error: None,
            },
            raw: None,
        }
    }

    fn param(&mut self, key: &'static str, v: impl Serialize) {
        self.manifest
            .parameters
            .insert(key, serde_json::to_value(v).unwrap_or(Value::Null));
    }

    fn result(&mut self, key: &'static str, v: impl Serialize) {
        self.manifest
            .results
            .insert(key, serde_json::to_value(v).unwrap_or(Value::Null));
    }

    fn model(&mut self, name: &str) {
        if !self.manifest.models.iter().any(|m| m == name) {
            self.manifest.models.push(name.to_string());
        }
    }

    fn report(&mut self, mut r: CheckReport) {
        r.canonicalize();
        self.manifest.reports.push(r);
    }
}

fn lagrangian_report(m: &NKModel, l: &LagrangianSubspace, subject: &str) -> CheckReport {
    let mut rep = CheckReport::new(subject);
    rep.absorb("", lagrangian_identity_check(m, l));
    match split_by_r(m, l) {
        Ok(s) => rep.absorb("", s.report),
        Err(e) => rep.push(
            Check::condition("r_preserves_tangent_space", "r(TL) ⊆ TL", false)
                .with_note(e.to_string()),
        ),
    }
    let anchor = "a Lagrangian in a strict six-dimensional model is minimal";
    match strict_minimality_check(m, l) {
        Ok(r) => rep.absorb("minimality/", r),
        Err(e @ (Error::NotDimension6(_) | Error::NotStrict { .. })) => {
            rep.push(Check::skipped("strict_minimality", anchor, &e.to_string()))
        }
        Err(e) => {
            rep.push(Check::condition("strict_minimality", anchor, false).with_note(e.to_string()))
        }
    }
    if let Some(rest) = m.name().strip_prefix("product:") {
        rep.absorb("", factor_split_report(m, l, rest));
    }
    rep
}

/// Recovers Lagrangians of the factors of `product:A,B` when their spectra are disjoint.
fn factor_split_report(m: &NKModel, l: &LagrangianSubspace, factors: &str) -> CheckReport {
    let mut rep = CheckReport::new(m.name());
    let anchor = "L splits into Lagrangians of the factors when the r-spectra are disjoint";
    let Some((a, b)) = factors.split_once(',') else {
        return rep;
    };
    let (Ok(m1), Ok(m2)) = (resolve(a), resolve(b)) else {
        return rep;
    };
    let (m1, m2) = (m1.with_tol(m.tol()), m2.with_tol(m.tol()));
    match split_by_spectrum(&m1, &m2, l) {
        Ok((l1, l2)) => {
            let ok = lagrangian_identity_check(&m1, &l1).passed()
                && lagrangian_identity_check(&m2, &l2).passed();
            rep.push(Check::condition("factor_split", anchor, ok));
        }
        Err(Error::SpectraOverlap { value }) => rep.push(Check::skipped(
            "factor_split",
            anchor,
            &format!("factor spectra overlap at {value}"),
        )),
        Err(e) => {
            rep.push(Check::condition("factor_split", anchor, false).with_note(e.to_string()))
        }
    }
    rep
}

fn cmd_verify(run: &mut Run, model: &str, tol: f64) -> Result<()> {
    run.param("model", model);
    run.param("tol", tol);
    let m = load_model(model)?.with_tol(tol);
    run.model(m.name());
    run.report(identity_suite(&m));
    Ok(())
}

fn cmd_lagrangian(
    run: &mut Run,
    model: Option<&str>,
    basis: Option<&PathBuf>,
    random: Option<usize>,
    tol: f64,
    seed: u64,
) -> Result<()> {
    run.param("tol", tol);
    if let Some(path) = basis {
        let file = LagrangianFile::from_json(&std::fs::read_to_string(path)?)?;
        let name = model.unwrap_or(&file.model);
        run.param("model", name);
        run.param("basis", &file.basis);
        let m = load_model(name)?.with_tol(tol);
        run.model(m.name());
        let l = make_lagrangian(&m, &file.basis)?;
        run.report(lagrangian_report(&m, &l, m.name()));
        return Ok(());
    }
    let (Some(name), Some(count)) = (model, random) else {
        return Err(Error::Parse(
            "give a model with --random N, or --basis FILE".into(),
        ));
    };
    run.param("model", name);
    run.param("random", count);
    let m = load_model(name)?.with_tol(tol);
    run.model(m.name());
    let mut reports = Vec::with_capacity(count);
    let mut dim_l_k: BTreeMap<usize, usize> = BTreeMap::new();
    for s in seed..seed + count as u64 {
        match random_lagrangian(&m, s) {
            Ok(l) => {
                let r = lagrangian_report(&m, &l, m.name());
                if let Some(d) = r.details.get("dim_l_k").and_then(Value::as_u64) {
                    *dim_l_k.entry(d as usize).or_default() += 1;
                }
                reports.push(r);
            }
            Err(e) => {
                let mut r = CheckReport::new(m.name());
                r.push(
                    Check::condition("admissible_lagrangian_found", "ω|L = 0 and ψ|L = 0", false)
                        .with_note(format!("seed {s}: {e}")),
                );
                reports.push(r);
            }
        }
    }
    let mut agg = CheckReport::aggregate(m.name(), &reports);
    agg.detail("dim_l_k_counts", &dim_l_k);
    run.report(agg);
    Ok(())
}

fn twistor_spectrum_report(tw: &TwistorModel) -> Result<CheckReport> {
    let r = r_operator(&tw.model)?;
    let (n, k2) = (tw.n, tw.kappa * tw.kappa);
    let expected: Vec<(f64, usize)> = if n == 1 {
        vec![(4.0 * k2, 6)]
    } else {
        vec![(4.0 * k2, 4 * n), (4.0 * n as f64 * k2, 2)]
    };
    let found: Vec<(f64, usize)> = r
        .spectrum
        .iter()
        .map(|g| (g.value, g.multiplicity))
        .collect();
    let matches = found.len() == expected.len()
        && found
            .iter()
            .zip(&expected)
            .all(|(f, e)| f.1 == e.1 && (f.0 - e.0).abs() <= 1e-7);
    let mut rep = CheckReport::new(tw.model.name());
    rep.push(Check::condition(
        "r_spectrum",
        "r has eigenvalues 4κ² on H and 4nκ² on V",
        matches,
    ));
    rep.detail("r_spectrum", r.spectrum_summary());
    let tol = tw.model.tol();
    for (name, w) in [("phi_u_square", tw.u()), ("phi_v_square", tw.v())] {
        let p = phi_maps(tw, &w)?;
        rep.push(Check::measured(
            name,
            "(Φ^W)² = −κ² Id on H",
            p.square_residual,
            tol,
        ));
    }
    Ok(rep)
}

fn cmd_twistor(
    run: &mut Run,
    n: usize,
    kappa: f64,
    random: usize,
    tol: f64,
    seed: u64,
) -> Result<()> {
    run.param("n", n);
    run.param("kappa", kappa);
    run.param("random", random);
    run.param("tol", tol);
    let mut tw = build_twistor_model(n, kappa)?;
    tw.model = tw.model.with_tol(tol);
    let name = tw.model.name().to_string();
    run.model(&name);
    run.report(identity_suite(&tw.model));
    let mut axioms = check_torsion_axioms(&tw);
    axioms.subject = format!("{name} torsion");
    run.report(axioms);
    let mut spectrum = twistor_spectrum_report(&tw)?;
    spectrum.subject = format!("{name} spectrum");
    run.report(spectrum);
    let anchor = "Lagrangians in twistor spaces are minimal";
    if n < 2 {
        let mut r = CheckReport::new(format!("{name} lagrangian"));
        r.push(Check::skipped(
            "twistor_minimality",
            anchor,
            "requires n > 1: the eigenvalues of r coincide",
        ));
        r.absorb("", vertical_geodesic_note(&tw, &tw.standard_lagrangian()?)?);
        run.report(r);
        return Ok(());
    }
    let l = tw.standard_lagrangian()?;
    let mut r = twistor_minimality_check(&tw, &l)?;
    r.subject = format!("{name} standard lagrangian");
    r.absorb("", vertical_geodesic_note(&tw, &l)?);
    run.report(r);
    let mut reports = Vec::new();
    for s in seed..seed + random as u64 {
        let mut r = match random_lagrangian(&tw.model, s) {
            Ok(l) => twistor_minimality_check(&tw, &l)?,
            Err(e) => {
                let mut r = CheckReport::new(&name);
                r.push(
                    Check::condition("admissible_lagrangian_found", "ω|L = 0 and ψ|L = 0", false)
                        .with_note(e.to_string()),
                );
                r
            }
        };
        r.details.clear();
        reports.push(r);
    }
    if !reports.is_empty() {
        run.report(CheckReport::aggregate(
            format!("{name} random lagrangians"),
            &reports,
        ));
    }
    Ok(())
}

fn cmd_classify(run: &mut Run, samples: usize, tol: f64, seed: u64) -> Result<()> {
    run.param("samples", samples);
    run.param("tol", tol);
    run.model("s3s3");
    let res = enumerate_solutions(samples, seed, tol)?;
    let mut nr = CheckReport::new("su(2)³ three-symmetric structure");
    let t = su2_cubed(1.0)?;
    nr.push(Check::measured(
        "naturally_reductive",
        "B([X,Y]_𝔪, Z) = B(X, [Y,Z]_𝔪)",
        check_naturally_reductive(&t).residual,
        1e-12,
    ));
    run.report(nr);
    let mut en = CheckReport::new("graph enumeration");
    let all_solutions = res
        .classes
        .iter()
        .flat_map(|c| c.examples.iter().chain(std::iter::once(&c.diagonal)));
    let mut worst: f64 = 0.0;
    for g in all_solutions.filter(|g| g.both) {
        worst = worst.max(g.square_residual);
    }
    en.push(Check::measured(
        "solutions_square_to_identity",
        "symmetric automorphisms satisfy A² = Id",
        worst,
        tol,
    ));
    en.push(Check::condition(
        "factors_lagrangian",
        "S³ in either factor is Lagrangian",
        res.factors.iter().all(|f| f.lagrangian),
    ));
    run.report(en);
    run.report(verify_totally_geodesic(&res)?);
    run.result("classification", &res);
    Ok(())
}

fn homogeneous_lagrangian(model: &str, which: &str) -> Result<Option<HomogeneousLagrangian>> {
    let scale = match model.split_once(':') {
        None if model == "s3s3" => 1.0,
        Some(("s3s3", s)) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad scale in `{model}`")))?,
        _ => return Ok(None),
    };
    if !(scale > 0.0) {
        return Err(Error::Parse(format!("scale must be positive in `{model}`")));
    }
    let hl = match which {
        "diag" => s3s3_diagonal(scale)?,
        "factor1" => s3s3_factor(0, scale)?,
        "factor2" => s3s3_factor(1, scale)?,
        _ => {
            let d = which
                .strip_prefix("graph:")
                .map(|r| {
                    r.split(',')
                        .map(str::parse::<f64>)
                        .collect::<std::result::Result<Vec<_>, _>>()
                })
                .and_then(|r| r.ok())
                .filter(|d| d.len() == 3)
                .ok_or_else(|| Error::Parse(format!("unknown Lagrangian `{which}`")))?;
            s3s3_graph(&Matrix::from_diagonal(&d), scale)?
        }
    };
    Ok(Some(hl))
}

fn cmd_deform(run: &mut Run, model: &str, which: &str, tol: f64, seed: u64) -> Result<()> {
    run.param("model", model);
    run.param("lagrangian", which);
    run.param("tol", tol);
    if let Some(mut hl) = homogeneous_lagrangian(model, which)? {
        hl.model = hl.model.with_tol(tol);
        run.model(model);
        let sp = deformation_spectrum(&hl)?;
        let star = build_star(&hl.model, &hl.lagrangian)?;
        let mut r = sp.report.clone();
        r.subject = format!("{model} {which}");
        run.report(r);
        let mut chain = eigenvalue_chain_check(&star);
        chain.subject = format!("{model} {which} operator identities");
        run.report(chain);
        run.result("deformation", &sp);
        return Ok(());
    }
    let m = load_model(model)?.with_tol(tol);
    run.model(m.name());
    let l = random_lagrangian(&m, seed)?;
    let star = build_star(&m, &l)?;
    let mut r = eigenvalue_chain_check(&star);
    r.subject = format!("{} random lagrangian", m.name());
    let anchor = "the naturally defined *-operator";
    r.push(Check::measured(
        "star_square",
        anchor,
        star.square_residual(),
        1e-12,
    ));
    r.push(Check::measured(
        "star_from_torsion",
        anchor,
        star.one_form_residual(),
        tol,
    ));
    r.push(Check::skipped(
        "invariant_spectrum",
        "coclosed eigenform of the Hodge Laplacian",
        "needs a homogeneous Lagrangian (s3s3 models)",
    ));
    run.report(r);
    run.result("alpha_type", star.alpha);
    run.result("lambda", 9.0 * star.alpha);
    run.result("ratio", 9.0 / 30.0);
    Ok(())
}

fn cmd_export(run: &mut Run, model: &str) -> Result<()> {
    let m = load_model(model)?;
    run.raw = Some(serde_json::to_string_pretty(&ModelFile::from_model(&m))?);
    Ok(())
}

fn print_table(m: &RunManifest) {
    for r in &m.reports {
        eprintln!("{}", r.subject);
        for c in &r.checks {
            let status = match c.status {
                nearly_kahler::report::Status::Pass => "PASS",
                nearly_kahler::report::Status::Fail => "FAIL",
                nearly_kahler::report::Status::Skipped => "SKIP",
            };
            let note = c
                .note
                .as_deref()
                .map(|n| format!("  [{n}]"))
                .unwrap_or_default();
            let cmp = if status == "FAIL" { ">" } else { "≤" };
            eprintln!(
                "  {status}  {:<44} {:>10.3e} {cmp} {:<8.1e} {}{note}",
                c.name, c.residual, c.tolerance, c.anchor
            );
        }
    }
    if let Some(Value::Object(c)) = m.results.get("classification") {
        if let Some(Value::Array(rows)) = c.get("stated_classes") {
            eprintln!("diagonal classes: lagrangian / subalgebra / |ψ| on graph");
            for row in rows {
                eprintln!(
                    "  {:<18} {:<5} {:<5} {:.3e}  {}",
                    row["class"].as_str().unwrap_or(""),
                    row["lagrangian"],
                    row["subalgebra"],
                    row["psi_residual"].as_f64().unwrap_or(f64::NAN),
                    if row["agrees"] == json!(true) {
                        "solution"
                    } else {
                        "NOT a solution"
                    }
                );
            }
        }
        if let Some(Value::Array(d)) = c.get("discrepancies") {
            for x in d {
                eprintln!("  discrepancy: {}", x.as_str().unwrap_or(""));
            }
        }
    }
    if let Some(e) = &m.error {
        eprintln!("error ({}): {}", e.kind, e.message);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Verify { .. } => "verify",
        Command::Lagrangian { .. } => "lagrangian",
        Command::Twistor { .. } => "twistor",
        Command::ClassifySu2 => "classify-su2",
        Command::Deform { .. } => "deform",
        Command::Export { .. } => "export",
    };
    let mut run = Run::new(name, cli.seed);
    let outcome = if !(cli.tol > 0.0) {
        Err(Error::Parse(format!(
            "--tol must be positive, got {}",
            cli.tol
        )))
    } else {
        match &cli.command {
            Command::Verify { model } => cmd_verify(&mut run, model, cli.tol),
            Command::Lagrangian {
                model,
                basis,
                random,
            } => cmd_lagrangian(
                &mut run,
                model.as_deref(),
                basis.as_ref(),
                *random,
                cli.tol,
                cli.seed,
            ),
            Command::Twistor { n, kappa, random } => {
                cmd_twistor(&mut run, *n, *kappa, *random, cli.tol, cli.seed)
            }
            Command::ClassifySu2 => cmd_classify(&mut run, cli.samples, cli.tol, cli.seed),
            Command::Deform { model, lagrangian } => {
                cmd_deform(&mut run, model, lagrangian, cli.tol, cli.seed)
            }
            Command::Export { model } => cmd_export(&mut run, model),
        }
    };
    let mut code = 0u8;
    if let Err(e) = outcome {
        code = if e.is_input_error() { 2 } else { 1 };
        run.manifest.error = Some(ErrorInfo {
            kind: e.kind(),
            message: e.to_string(),
        });
        run.raw = None;
    }
    for r in &run.manifest.reports {
        if let Err(msg) = r.validate() {
            run.manifest.error.get_or_insert(ErrorInfo {
                kind: "InvalidReport",
                message: msg,
            });
            code = code.max(1);
        }
    }
    run.manifest.passed = code == 0 && run.manifest.reports.iter().all(CheckReport::passed);
    if code == 0 && !run.manifest.passed {
        code = 1;
    }
    let text = match run.raw.take() {
        Some(raw) => raw,
        None => {
            print_table(&run.manifest);
            serde_json::to_string_pretty(&run.manifest).expect("manifest serializes")
        }
    };
    if let Some(path) = &cli.json_out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    // A closed pipe (e.g. `| head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}
