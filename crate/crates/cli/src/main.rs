//! Command-line front end: analyze one polynomial, list minimal vectors,
//! sweep coefficient grids, and run the built-in verification suite.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 unsupported structure,
//! 3 verification failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use wrlat::poly::IntPolynomial;
use wrlat::sweep::{self, SweepSpec};
use wrlat::{ConstructionFamily, Error, criteria, svp};

#[derive(Parser)]
#[command(
    name = "wrlat",
    version,
    about = "well-rounded lattices from monic integer polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one polynomial: family, Gram matrix, minimum, densities
    Analyze {
        /// Coefficients `a,b[,c[,d]]` of a monic polynomial (leading 1 implicit)
        coeffs: String,
        /// Emit a JSON object instead of the table
        #[arg(long)]
        json: bool,
        /// Write the report to a file instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// List the minimal vectors of the lattice built from a polynomial
    Minvec {
        /// Coefficients `a,b[,c[,d]]` of a monic polynomial (leading 1 implicit)
        coeffs: String,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Sweep a coefficient grid, comparing the closed-form criterion with the
    /// enumeration engine on every valid point
    Sweep(SweepArgs),
    /// Run the default verification grids and golden-value checks
    Verify {
        /// Emit a JSON summary instead of the table
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Construction family: f2r, f2c, f3r, or f4s
    #[arg(long)]
    family: String,
    /// Inclusive range for a (0 is always skipped)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    a: Vec<i64>,
    /// Inclusive range for b (f2r, f2c, f3r)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    b: Option<Vec<i64>>,
    /// Inclusive range for the cubic constant term (f3r)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    c: Option<Vec<i64>>,
    /// Inclusive range for the quartic cofactor constant (f4s)
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    p: Option<Vec<i64>>,
    /// Comma-separated gamma^2 values (f4s)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    gamma_sq: Option<Vec<i64>>,
    /// Extra margin for the naive-box cross-check
    #[arg(long, default_value_t = 2)]
    box_margin: u32,
    /// Report file; stdout when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Emit the report as JSON
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit the report as CSV (the default)
    #[arg(long)]
    csv: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Analyze { coeffs, json, out } => cmd_analyze(&coeffs, json, out.as_deref()),
        Command::Minvec { coeffs, json, out } => cmd_minvec(&coeffs, json, out.as_deref()),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Verify { json } => cmd_verify(json),
    };
    ExitCode::from(code)
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidFamily
        | Error::UnsupportedStructure
        | Error::NotPositiveDefinite
        | Error::NotApplicable(_) => 2,
        Error::Internal(_) => 3,
        _ => 1,
    }
}

fn fail(e: &Error) -> u8 {
    eprintln!("error: {e}");
    exit_code_for(e)
}

/// Formats a float with six significant digits.
fn fmt_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let decimals = (5 - x.abs().log10().floor() as i32).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

fn write_out(out: Option<&std::path::Path>, content: &str) -> Result<(), u8> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => fs::write(path, content).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            1u8
        }),
    }
}

struct Analysis {
    poly: IntPolynomial,
    instance: wrlat::LatticeInstance,
    min: wrlat::MinResult,
    verdict: wrlat::CriterionVerdict,
    density: wrlat::CenterDensitySq,
}

fn analyze(text: &str) -> Result<Analysis, u8> {
    let poly = IntPolynomial::parse(text).map_err(|e| fail(&e))?;
    let instance = wrlat::build(&poly).map_err(|e| fail(&e))?;
    let min = svp::shortest_vectors(&instance.gram);
    let verdict =
        criteria::wr_predicate(instance.family, poly.a(), poly.b()).map_err(|e| fail(&e))?;
    let density = svp::center_density_sq(&instance.gram, &min);
    Ok(Analysis {
        poly,
        instance,
        min,
        verdict,
        density,
    })
}

fn gram_text(g: &wrlat::ExactGram) -> String {
    let n = g.dim();
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let cells: Vec<String> = (0..n).map(|j| g.entry(i, j).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn cmd_analyze(coeffs: &str, as_json: bool, out: Option<&std::path::Path>) -> u8 {
    let a = match analyze(coeffs) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let agree = a.verdict.well_rounded == a.min.well_rounded;
    let content = if as_json {
        let doc = json!({
            "polynomial": a.poly.to_string(),
            "family": a.instance.family.code(),
            "dimension": a.instance.family.dimension(),
            "valid": true,
            "gram": gram_text(&a.instance.gram),
            "det_closed_form": a.instance.det_closed_form.to_string(),
            "det_exact": a.instance.gram.det_exact().to_string(),
            "lambda": a.min.lambda.to_string(),
            "kissing": a.min.kissing,
            "wr_theorem": a.verdict.well_rounded,
            "wr_oracle": a.min.well_rounded,
            "agree": agree,
            "delta_sq": a.density.value.to_string(),
            "delta": a.density.numeric,
            "optimal": a.verdict.optimal_density,
            "enlarged_kissing": a.verdict.enlarged_kissing,
            "branch": a.verdict.branch.code(),
        });
        format!("{doc}\n")
    } else {
        format!(
            "polynomial:      {}\n\
             family:          {} (dimension {})\n\
             valid:           true\n\
             gram:            {}\n\
             det (closed):    {}\n\
             det (exact):     {}\n\
             lambda:          {}\n\
             kissing:         {}\n\
             wr (theorem):    {}\n\
             wr (oracle):     {}\n\
             agree:           {}\n\
             delta^2:         {}\n\
             delta:           {}\n\
             optimal:         {}\n\
             enlarged:        {}\n\
             branch:          {}\n",
            a.poly,
            a.instance.family.code(),
            a.instance.family.dimension(),
            gram_text(&a.instance.gram),
            a.instance.det_closed_form,
            a.instance.gram.det_exact(),
            a.min.lambda,
            a.min.kissing,
            a.verdict.well_rounded,
            a.min.well_rounded,
            agree,
            a.density.value,
            fmt_sig6(a.density.numeric),
            a.verdict.optimal_density,
            a.verdict.enlarged_kissing,
            a.verdict.branch.code(),
        )
    };
    match write_out(out, &content) {
        Ok(()) => 0,
        Err(code) => code,
    }
}

fn cmd_minvec(coeffs: &str, as_json: bool, out: Option<&std::path::Path>) -> u8 {
    let a = match analyze(coeffs) {
        Ok(a) => a,
        Err(code) => return code,
    };
    let content = if as_json {
        let vectors: Vec<serde_json::Value> = a
            .min
            .minimal_vectors
            .iter()
            .map(|v| {
                json!({
                    "coords": v.coords(),
                    "norm": a.min.lambda.to_string(),
                    "embedding": a.instance.embed(v.coords()),
                })
            })
            .collect();
        let doc = json!({
            "polynomial": a.poly.to_string(),
            "family": a.instance.family.code(),
            "lambda": a.min.lambda.to_string(),
            "kissing": a.min.kissing,
            "vectors": vectors,
        });
        format!("{doc}\n")
    } else {
        let mut text = format!(
            "polynomial: {} ({}), lambda = {}, {} minimal vectors\n",
            a.poly,
            a.instance.family.code(),
            a.min.lambda,
            a.min.kissing
        );
        for v in &a.min.minimal_vectors {
            let embedding: Vec<String> = a
                .instance
                .embed(v.coords())
                .into_iter()
                .map(fmt_sig6)
                .collect();
            text.push_str(&format!(
                "{v}  norm {}  embedding ({})\n",
                a.min.lambda,
                embedding.join(", ")
            ));
        }
        text
    };
    match write_out(out, &content) {
        Ok(()) => 0,
        Err(code) => code,
    }
}

fn spec_from_args(args: &SweepArgs) -> Result<SweepSpec, Error> {
    let family: ConstructionFamily = args.family.parse()?;
    let pair = |v: &Option<Vec<i64>>| v.as_ref().map(|r| (r[0], r[1]));
    let a_range = (args.a[0], args.a[1]);
    let unexpected = |flag: &str| {
        Err(Error::InvalidSpec(format!(
            "--{flag} does not apply to {family}"
        )))
    };
    match family {
        ConstructionFamily::F2R | ConstructionFamily::F2C => {
            if args.c.is_some() {
                return unexpected("c");
            }
            if args.p.is_some() {
                return unexpected("p");
            }
            if args.gamma_sq.is_some() {
                return unexpected("gamma-sq");
            }
            let b = pair(&args.b)
                .ok_or_else(|| Error::InvalidSpec(format!("--b required for {family}")))?;
            let mut spec = if family == ConstructionFamily::F2R {
                SweepSpec::f2r(a_range, b)
            } else {
                SweepSpec::f2c(a_range, b)
            };
            spec.box_margin = args.box_margin;
            Ok(spec)
        }
        ConstructionFamily::F3R => {
            if args.p.is_some() {
                return unexpected("p");
            }
            if args.gamma_sq.is_some() {
                return unexpected("gamma-sq");
            }
            let b = pair(&args.b)
                .ok_or_else(|| Error::InvalidSpec("--b required for f3r".into()))?;
            let c = pair(&args.c)
                .ok_or_else(|| Error::InvalidSpec("--c required for f3r".into()))?;
            let mut spec = SweepSpec::f3r(a_range, b, c);
            spec.box_margin = args.box_margin;
            Ok(spec)
        }
        ConstructionFamily::F4S => {
            if args.b.is_some() {
                return unexpected("b");
            }
            if args.c.is_some() {
                return unexpected("c");
            }
            let p = pair(&args.p)
                .ok_or_else(|| Error::InvalidSpec("--p required for f4s".into()))?;
            let gammas = args
                .gamma_sq
                .clone()
                .ok_or_else(|| Error::InvalidSpec("--gamma-sq required for f4s".into()))?;
            let mut spec = SweepSpec::f4s(a_range, p, gammas);
            spec.box_margin = args.box_margin;
            Ok(spec)
        }
    }
}

fn cmd_sweep(args: &SweepArgs) -> u8 {
    let spec = match spec_from_args(args) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let report = match sweep::run_sweep(&spec) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let rendered = if args.json {
        sweep::report_to_json(&report)
    } else {
        sweep::report_to_csv(&report)
    };
    let content = match rendered {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let summary = format!(
        "swept {} points ({} valid), mismatches: {} ({} ms)\n",
        report.total_points,
        report.valid_points,
        report.mismatches.len(),
        report.wall_time_millis
    );
    match args.out.as_deref() {
        Some(path) => {
            if let Err(code) = write_out(Some(path), &content) {
                return code;
            }
            print!("{summary}");
        }
        None => {
            print!("{content}");
            eprint!("{summary}");
        }
    }
    if report.mismatches.is_empty() { 0 } else { 3 }
}

fn cmd_verify(as_json: bool) -> u8 {
    let outcome = match sweep::run_default_verification() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let golden_passed = outcome.golden.iter().filter(|g| g.pass).count();
    if as_json {
        let families: Vec<serde_json::Value> = outcome
            .reports
            .iter()
            .map(|r| {
                json!({
                    "family": r.spec.family.code(),
                    "total_points": r.total_points,
                    "valid_points": r.valid_points,
                    "mismatches": r.mismatches.len(),
                })
            })
            .collect();
        let doc = json!({
            "families": families,
            "golden": outcome.golden.iter().map(|g| json!({
                "name": g.name,
                "pass": g.pass,
                "detail": g.detail,
            })).collect::<Vec<_>>(),
            "instances": outcome.valid_instances,
            "mismatch_total": outcome.mismatch_total,
            "pass": outcome.pass,
        });
        println!("{doc}");
    } else {
        for r in &outcome.reports {
            println!(
                "family {}: {} valid / {} points, mismatches: {}",
                r.spec.family.code(),
                r.valid_points,
                r.total_points,
                r.mismatches.len()
            );
            for m in &r.mismatches {
                println!(
                    "  MISMATCH a={} b={} c={:?} d={:?}: theorem={:?} oracle={:?}",
                    m.record.a, m.record.b, m.record.c, m.record.d,
                    m.record.theorem_wr, m.record.oracle_wr
                );
            }
        }
        for g in &outcome.golden {
            let tag = if g.pass { "ok" } else { "FAIL" };
            println!("golden [{tag}] {} ({})", g.name, g.detail);
        }
        println!(
            "{} families, {} instances, {} mismatches, {}/{} golden values",
            outcome.reports.len(),
            outcome.valid_instances,
            outcome.mismatch_total,
            golden_passed,
            outcome.golden.len()
        );
    }
    if outcome.pass { 0 } else { 3 }
}
