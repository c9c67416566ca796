//! Command-line front end.
//!
//! Exit codes: 0 success, 1 linearizability conditions not verified,
//! 2 input error, 3 algorithmic failure.

pub mod file;
pub mod reference;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{parse_poly, Poly, VarContext};
use crate::geometry::{compose, jacobian_determinant, VecField};
use crate::linearizer::{
    algorithm_i, algorithm_ii, classical_check, iteration_context, output_chain, output_map_determinant,
    seed_from_env, verify_relative_degree, ControlSystem, LinearizationTrace, LinearizerError, Options,
};

pub use file::{FileError, SystemFile};
pub use report::Report;
use report::{ClassicalReport, Comparison, DriftReport, ErrorReport, InversionReport, RunReport, WarningReport};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_CONDITIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ALGORITHM: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Algebroid1,
    Algebroid2,
    Both,
}

#[derive(Debug, Parser)]
#[command(name = "algebroid", version, about = "Exact linearizing outputs of single-input polynomial systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Accessibility rank and involutivity of the controllability chain.
    Check { file: PathBuf },
    /// Compute a linearizing output.
    Linearize {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, default_value_t = 4)]
        max_ansatz_degree: u32,
        /// Write the machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Run the algorithms even if the classical conditions fail.
        #[arg(long)]
        no_precheck: bool,
    },
    /// Invert the polynomial map in a `map:` file.
    InvertMap { file: PathBuf },
    /// Run the bundled three-state example and compare with known values.
    Example {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn base(command: &str, sf: Option<&SystemFile>) -> Report {
    Report {
        command: command.into(),
        vars: sf.map(|s| s.vars.names().to_vec()).unwrap_or_default(),
        ..Report::default()
    }
}

fn fail(mut r: Report, code: i32, err: ErrorReport) -> Report {
    r.error = Some(err);
    r.exit_code = code;
    r
}

fn error_code(e: &LinearizerError) -> i32 {
    match e {
        LinearizerError::Precondition(_) => EXIT_INPUT,
        _ => EXIT_ALGORITHM,
    }
}

fn parse(command: &str, src: &str) -> Result<SystemFile, Report> {
    SystemFile::parse(src).map_err(|e| fail(base(command, None), EXIT_INPUT, ErrorReport::input(e.to_string())))
}

fn system(command: &str, sf: &SystemFile) -> Result<ControlSystem, Report> {
    sf.system()
        .map_err(|e| fail(base(command, Some(sf)), EXIT_INPUT, ErrorReport::input(e.to_string())))
}

/// `check`: the classical conditions only.
pub fn check(src: &str, seed: u64) -> Report {
    let sf = match parse("check", src) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let sys = match system("check", &sf) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let mut r = base("check", Some(&sf));
    let d = classical_check(&sys, seed);
    r.warnings.extend(d.warnings.iter().map(WarningReport::from));
    r.classical = Some(ClassicalReport::new(&d));
    r.exit_code = if d.linearizable() { EXIT_SUCCESS } else { EXIT_CONDITIONS };
    r
}

fn finish_run(t: &LinearizationTrace, sys: &ControlSystem, r: &mut Report) -> Result<RunReport, LinearizerError> {
    let mut run = RunReport::new(t);
    r.warnings.extend(t.warnings.iter().map(WarningReport::from));
    let y = t.y.as_ref().ok_or(LinearizerError::AmbiguousOutput)?;
    let rd = verify_relative_degree(&y.clone().into(), sys)?;
    run.relative_degree = Some(rd);
    if let Some(det) = output_map_determinant(y, sys)? {
        if !det.is_constant() {
            r.warnings.push(WarningReport {
                message: "output map has a non-constant Jacobian determinant".into(),
                locus: format!("{det} = 0"),
            });
        }
        run.output_map_determinant = Some(det.to_string());
    }
    if rd != sys.dim() {
        return Err(LinearizerError::InvariantViolated(format!(
            "output {y} has relative degree {rd}, expected {}",
            sys.dim()
        )));
    }
    Ok(run)
}

fn compare_drift(sf: &SystemFile, y: Option<&Poly>, r: &mut Report) {
    let (Some(f), Some(alt)) = (&sf.f, &sf.f_alt) else {
        return;
    };
    let differing: Vec<usize> = (0..f.len()).filter(|&k| f[k] != alt[k]).collect();
    let alternative_relative_degree = match (y, sf.alternative_system()) {
        (Some(y), Ok(Some(sys))) => verify_relative_degree(&y.clone().into(), &sys).ok(),
        _ => None,
    };
    if !differing.is_empty() {
        let comps: Vec<String> = differing.iter().map(|k| format!("f{}", k + 1)).collect();
        r.warnings.push(WarningReport {
            message: "alternative drift diverges from the drift used".into(),
            locus: comps.join(", "),
        });
    }
    r.drift_comparison = Some(DriftReport {
        identical: differing.is_empty(),
        differing_components: differing,
        alternative_relative_degree,
    });
}

/// `linearize`: classical check, then the requested algorithms.
pub fn linearize(src: &str, method: MethodArg, opts: &Options, precheck: bool) -> (Report, Vec<LinearizationTrace>) {
    let sf = match parse("linearize", src) {
        Ok(s) => s,
        Err(r) => return (r, Vec::new()),
    };
    linearize_file(&sf, method, opts, precheck, "linearize")
}

fn linearize_file(
    sf: &SystemFile,
    method: MethodArg,
    opts: &Options,
    precheck: bool,
    command: &str,
) -> (Report, Vec<LinearizationTrace>) {
    let sys = match system(command, sf) {
        Ok(s) => s,
        Err(r) => return (r, Vec::new()),
    };
    let mut r = base(command, Some(sf));
    let d = classical_check(&sys, opts.seed);
    r.warnings.extend(d.warnings.iter().map(WarningReport::from));
    r.classical = Some(ClassicalReport::new(&d));
    if precheck && !d.linearizable() {
        let msg = "linearizability conditions not verified (use --no-precheck to run anyway)";
        let err = ErrorReport {
            kind: "conditions".into(),
            message: msg.into(),
            iteration: None,
        };
        return (fail(r, EXIT_CONDITIONS, err), Vec::new());
    }

    let methods = match method {
        MethodArg::Both => vec![MethodArg::Algebroid2, MethodArg::Algebroid1],
        m => vec![m],
    };
    let mut traces = Vec::new();
    for m in methods {
        let result = match m {
            MethodArg::Algebroid1 => algorithm_i(&sys, &sf.map_hints(), &sf.omega_hints(), opts),
            _ => algorithm_ii(&sys, &sf.omega_hints(), opts),
        }
        .and_then(|t| finish_run(&t, &sys, &mut r).map(|run| (t, run)));
        match result {
            Ok((t, run)) => {
                r.runs.push(run);
                traces.push(t);
            }
            Err(e) => {
                let code = error_code(&e);
                return (fail(r, code, ErrorReport::new(&e)), traces);
            }
        }
    }
    if traces.len() == 2 {
        let agree = traces[0].y == traces[1].y;
        r.outputs_agree = Some(agree);
        if !agree {
            let e = LinearizerError::InvariantViolated("the two algorithms return different outputs".into());
            return (fail(r, EXIT_ALGORITHM, ErrorReport::new(&e)), traces);
        }
    }
    compare_drift(sf, traces.first().and_then(|t| t.y.as_ref()), &mut r);
    r.exit_code = EXIT_SUCCESS;
    (r, traces)
}

/// `invert-map`: inverse, Jacobian determinant and round trip.
pub fn invert_map(src: &str) -> Report {
    let sf = match parse("invert-map", src) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let mut r = base("invert-map", Some(&sf));
    let map = match sf.poly_map() {
        Ok(m) => m,
        Err(e) => return fail(r, EXIT_INPUT, ErrorReport::input(e.to_string())),
    };
    let det = jacobian_determinant(&map);
    let mut inv = InversionReport {
        map: report::map_strings(&map),
        codomain: map.codomain().names().to_vec(),
        inverse: None,
        jacobian_determinant: det.to_string(),
        round_trip: false,
    };
    if !det.is_constant() || det.is_zero() {
        r.warnings.push(WarningReport {
            message: "Jacobian determinant is not a nonzero constant".into(),
            locus: format!("{det} = 0"),
        });
    }
    match map.ensure_inverse() {
        Ok(m) => {
            let back = m.inverse().expect("ensured").forget_inverse();
            let fwd = map.forget_inverse();
            inv.round_trip = compose(&back, &fwd).is_ok_and(|c| c.is_identity())
                && compose(&fwd, &back).is_ok_and(|c| c.is_identity());
            inv.inverse = Some(report::map_strings(&back));
            r.inversion = Some(inv);
            r.exit_code = if r.inversion.as_ref().is_some_and(|i| i.round_trip) { EXIT_SUCCESS } else { EXIT_ALGORITHM };
            r
        }
        Err(e) => {
            r.inversion = Some(inv);
            fail(
                r,
                EXIT_ALGORITHM,
                ErrorReport {
                    kind: "inversion_failed".into(),
                    message: e.to_string(),
                    iteration: None,
                },
            )
        }
    }
}

fn canonical(exprs: &[&str], ctx: &VarContext) -> Vec<String> {
    exprs
        .iter()
        .map(|s| parse_poly(s, ctx).expect("reference values parse").to_string())
        .collect()
}

fn compare(out: &mut Vec<Comparison>, quantity: &str, expected: Vec<String>, computed: Option<Vec<String>>) {
    let computed = computed.unwrap_or_default();
    out.push(Comparison {
        quantity: quantity.into(),
        matches: expected == computed,
        expected: format!("({})", expected.join(", ")),
        computed: format!("({})", computed.join(", ")),
    });
}

/// `example`: both algorithms on the bundled system, compared against the
/// known intermediate values.
pub fn example(seed: u64) -> Report {
    let sf = SystemFile::parse(reference::WORKED_EXAMPLE).expect("bundled example parses");
    let opts = Options {
        seed,
        ..Options::default()
    };
    let (mut r, traces) = linearize_file(&sf, MethodArg::Both, &opts, true, "example");
    let x = sf.vars.clone();
    let z = iteration_context(&x, 1);
    let ii = traces.iter().find(|t| t.method == crate::linearizer::Method::AlgebroidII);
    let i = traces.iter().find(|t| t.method == crate::linearizer::Method::AlgebroidI);
    let field = |v: &VecField| report::field_strings(v);
    let mut cmp = Vec::new();
    compare(&mut cmp, "algebroid2 g1", canonical(&reference::G1, &x), ii.map(|t| field(&t.iterations[1].g)));
    compare(&mut cmp, "algebroid2 g2", canonical(&reference::G2, &x), ii.map(|t| field(&t.iterations[2].g)));
    for (k, nu) in [reference::NU0, reference::NU1, reference::NU2].iter().enumerate() {
        compare(
            &mut cmp,
            &format!("algebroid2 nu{k}"),
            canonical(nu, &x),
            ii.and_then(|t| t.nu.get(k)).map(report::form_strings),
        );
    }
    let y = vec![parse_poly(reference::Y, &x).expect("parses").to_string()];
    compare(&mut cmp, "algebroid2 y", y.clone(), ii.and_then(|t| t.y.as_ref()).map(|p| vec![p.to_string()]));
    let projected = |v: &VecField, k: usize| -> Vec<String> {
        v.components()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, c)| c.to_string())
            .collect()
    };
    let step = i.and_then(|t| t.iterations.get(1).map(|r1| (r1, t.iterations[0].straightened.unwrap_or(0))));
    compare(&mut cmp, "algebroid1 f1", canonical(&reference::F1_Z, &z), step.map(|(s, k)| projected(&s.f, k)));
    compare(&mut cmp, "algebroid1 g1", canonical(&reference::G1_Z, &z), step.map(|(s, k)| projected(&s.g, k)));
    compare(&mut cmp, "algebroid1 y", y, i.and_then(|t| t.y.as_ref()).map(|p| vec![p.to_string()]));
    if let (Some(t), Ok(sys)) = (ii, sf.system()) {
        if let Some(y) = &t.y {
            let chain = output_chain(&y.clone().into(), &sys)
                .map(|c| c[1..].iter().map(|p| p.to_string()).collect())
                .ok();
            compare(&mut cmp, "L_f y, L_f^2 y", canonical(&reference::LIE_CHAIN, &x), chain);
            let rd = verify_relative_degree(&y.clone().into(), &sys).ok();
            compare(
                &mut cmp,
                "relative degree",
                vec![reference::RELATIVE_DEGREE.to_string()],
                rd.map(|d| vec![d.to_string()]),
            );
        }
    }
    if r.exit_code == EXIT_SUCCESS && cmp.iter().any(|c| !c.matches) {
        r.exit_code = EXIT_ALGORITHM;
    }
    r.comparisons = cmp;
    r
}

fn read(path: &Path, command: &str) -> Result<String, Report> {
    std::fs::read_to_string(path).map_err(|e| {
        fail(
            base(command, None),
            EXIT_INPUT,
            ErrorReport::input(format!("cannot read {}: {e}", path.display())),
        )
    })
}

fn emit(r: &Report, json: Option<&Path>, started: Instant) -> i32 {
    // a closed pipe (`| head`) is not worth a panic
    let mut out = std::io::stdout().lock();
    let _ = write!(out, "{}", r.to_text()).and_then(|_| writeln!(out, "elapsed {:.3} s", started.elapsed().as_secs_f64()));
    drop(out);
    if let Some(p) = json {
        if let Err(e) = std::fs::write(p, r.to_json() + "\n") {
            eprintln!("cannot write {}: {e}", p.display());
            return EXIT_INPUT;
        }
    }
    if let Some(e) = &r.error {
        eprintln!("error: {}", e.message);
    }
    r.exit_code
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let started = Instant::now();
    let seed = seed_from_env();
    match cli.command {
        Command::Check { file } => {
            let r = read(&file, "check").map_or_else(|r| r, |src| check(&src, seed));
            emit(&r, None, started)
        }
        Command::Linearize {
            file,
            method,
            max_ansatz_degree,
            json,
            no_precheck,
        } => {
            let opts = Options {
                max_ansatz_degree,
                seed,
            };
            let r = read(&file, "linearize").map_or_else(|r| r, |src| linearize(&src, method, &opts, !no_precheck).0);
            emit(&r, json.as_deref(), started)
        }
        Command::InvertMap { file } => {
            let r = read(&file, "invert-map").map_or_else(|r| r, |src| invert_map(&src));
            emit(&r, None, started)
        }
        Command::Example { json } => emit(&example(seed), json.as_deref(), started),
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(Cli::parse())
}
