//! `sltiling`: JSON in, JSON out for tilings, paths and friezes.
//!
//! Exit codes: 0 success, 1 validation or domain failure, 2 usage or
//! malformed input. Data goes to stdout, diagnostics to stderr.

use std::io::{self, Read, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sltiling::duality::{derived_tiling, gale_dual};
use sltiling::friezes::{is_positive_quiddity, plucker_frieze_eval, quiddity_sequence};
use sltiling::json::{self as sj, int_to_json};
use sltiling::paths::join_paths;
use sltiling::positivity::{search_friezes, Completeness, Search};
use sltiling::tilings::{check_tame, phi, psi, ValidationReport};
use sltiling::{Error, IntMatrix};

#[derive(Parser)]
#[command(name = "sltiling", version, about = "Exact computations with SL_k-tilings, paths and friezes")]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tiling Φ(γ, δ) of two paths.
    Phi {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        delta: PathBuf,
        /// Materialize the window with upper-left (I0, J0).
        #[arg(long, num_args = 4, value_names = ["I0", "J0", "ROWS", "COLS"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
        /// Print the window as a grid instead of JSON.
        #[arg(long, requires = "window")]
        render: bool,
    },
    /// Canonical pair of paths of a tiling.
    Psi {
        #[arg(long)]
        tiling: PathBuf,
    },
    /// Check a tiling, path or frieze and report every failed condition.
    Validate {
        #[command(flatten)]
        input: ValidateInput,
        /// Side of the checked tiling window.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Tiling of adjacent p×p minors (default p = k-1, the dual).
    Dual {
        #[arg(long)]
        tiling: PathBuf,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Gale dual of a frieze of type (k, n).
    Gale {
        #[arg(long)]
        frieze: PathBuf,
    },
    /// Quiddity sequence of a frieze.
    Quiddity {
        #[arg(long)]
        frieze: PathBuf,
    },
    /// A single tiling entry m_{i,j}.
    Entry {
        #[arg(long)]
        tiling: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
    },
    /// Skew-periodic path through γ_1..γ_m and δ_1..δ_n.
    Join {
        #[arg(long)]
        gamma: PathBuf,
        #[arg(long)]
        delta: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Friezes of type (k, n) by quiddity search; one JSON line each, then a summary.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Largest quiddity entry searched.
        #[arg(long, default_value_t = 6)]
        bound: i64,
        /// Smallest quiddity entry searched.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        lower: i64,
        /// Keep friezes with positive quiddity instead of positive entries.
        #[arg(long)]
        by_quiddity: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Plücker frieze of a k×n matrix given as JSON rows.
    Pluecker {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Draw a frieze in its offset layout.
    Render {
        #[arg(long)]
        frieze: PathBuf,
    },
    /// Reproduce the worked examples.
    Selftest,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ValidateInput {
    /// Presented tiling, or a window `{"k", "top", "left", "entries"}`.
    #[arg(long)]
    tiling: Option<PathBuf>,
    #[arg(long)]
    path: Option<PathBuf>,
    #[arg(long)]
    frieze: Option<PathBuf>,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::Parse(_)) | None => 2,
            Some(_) => 1,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn read_json(path: &FsPath) -> anyhow::Result<Value> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    sj::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load<T>(path: &FsPath, f: impl FnOnce(&Value) -> sltiling::Result<T>) -> Result<T, Failure> {
    let v = read_json(path)?;
    f(&v).map_err(|e| Failure::from(anyhow::Error::new(e).context(path.display().to_string())))
}

fn report_json(r: &ValidationReport) -> Value {
    json!({
        "valid": r.is_valid(),
        "k": r.k,
        "window": { "top": r.top, "left": r.left, "rows": r.rows, "cols": r.cols },
        "violations": r.violations.iter().map(|v| json!({
            "size": v.size, "row": v.row, "col": v.col, "det": int_to_json(&v.det),
        })).collect::<Vec<_>>(),
    })
}

/// Validation result: the JSON report and whether it passed.
type Checked = (Value, bool);

fn finish_report(r: &ValidationReport) -> Checked {
    for v in &r.violations {
        eprintln!("violation: {v}");
    }
    (report_json(r), r.is_valid())
}

fn invalid(e: Error) -> Result<Checked, Failure> {
    match e {
        Error::Parse(_) => Err(e.into()),
        other => {
            eprintln!("invalid: {other}");
            Ok((json!({ "valid": false, "error": other.to_string() }), false))
        }
    }
}

fn validate_tiling(v: &Value, window: Option<usize>) -> Result<Checked, Failure> {
    if let Some(entries) = v.get("entries") {
        let m = sj::matrix_from_json(entries)?;
        let k = match v.get("k").and_then(Value::as_u64) {
            Some(k) => k as usize,
            None => return Err(anyhow!("a window needs an integer field \"k\"").into()),
        };
        let at = |key: &str| v.get(key).and_then(Value::as_i64).unwrap_or(1);
        return Ok(finish_report(&check_tame(&m, k, at("top"), at("left"))));
    }
    let t = match sj::tiling_from_json(v) {
        Ok(t) => t,
        Err(e) => return invalid(e),
    };
    let report = match window {
        Some(n) => t.validate_window(1, 1, n),
        None => t.validate(),
    };
    match report {
        Ok(r) => Ok(finish_report(&r)),
        Err(e) => invalid(e),
    }
}

fn validate(input: &ValidateInput, window: Option<usize>) -> Result<Checked, Failure> {
    if let Some(p) = &input.tiling {
        return validate_tiling(&read_json(p)?, window);
    }
    if let Some(p) = &input.path {
        let path = load(p, sj::path_from_json_unchecked)?;
        return match path.validate() {
            Ok(()) => Ok((json!({ "valid": true, "k": path.k() }), true)),
            Err(e) => invalid(e),
        };
    }
    let p = input.frieze.as_ref().expect("clap requires one input");
    let f = load(p, sj::frieze_from_json_unchecked)?;
    match f.validate() {
        Ok(r) => Ok(finish_report(&r)),
        Err(e) => invalid(e),
    }
}

fn emit(out: &mut impl Write, v: &Value, pretty: bool) -> anyhow::Result<()> {
    let text = if pretty { sj::to_string_pretty(v) } else { sj::to_string(v) };
    out.write_all(text.as_bytes()).context("writing output")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let pretty = cli.pretty;
    match cli.cmd {
        Cmd::Phi { gamma, delta, window, render } => {
            let g = load(&gamma, sj::path_from_json)?;
            let d = load(&delta, sj::path_from_json)?;
            let t = phi(&g, &d)?;
            let mut v = sj::tiling_to_json(&t);
            if let Some(w) = window {
                let (rows, cols) = (usize::try_from(w[2]), usize::try_from(w[3]));
                let (Ok(rows), Ok(cols)) = (rows, cols) else {
                    return Err(Failure { code: 2, err: anyhow!("window sizes must be non-negative") });
                };
                let m = t.window(w[0], w[1], rows, cols)?;
                if render {
                    write!(out, "{}", m.render()).context("writing output")?;
                    return Ok(());
                }
                v["window"] = json!({ "top": w[0], "left": w[1], "entries": sj::matrix_to_json(&m) });
            }
            emit(&mut out, &v, pretty)?;
        }
        Cmd::Psi { tiling } => {
            let t = load(&tiling, sj::tiling_from_json)?;
            let (g, d) = psi(&t)?;
            emit(&mut out, &json!({ "gamma": sj::path_to_json(&g), "delta": sj::path_to_json(&d) }), pretty)?;
        }
        Cmd::Validate { input, window } => {
            let (report, ok) = validate(&input, window)?;
            emit(&mut out, &report, pretty)?;
            if !ok {
                return Err(Failure { code: 1, err: anyhow!("validation failed") });
            }
        }
        Cmd::Dual { tiling, p } => {
            let t = load(&tiling, sj::tiling_from_json)?;
            let p = p.unwrap_or(t.k() - 1);
            emit(&mut out, &sj::tiling_to_json(&derived_tiling(&t, p)?), pretty)?;
        }
        Cmd::Gale { frieze } => {
            let f = load(&frieze, sj::frieze_from_json)?;
            emit(&mut out, &sj::frieze_to_json(&gale_dual(&f)?), pretty)?;
        }
        Cmd::Quiddity { frieze } => {
            let f = load(&frieze, sj::frieze_from_json)?;
            let q = quiddity_sequence(&f)?;
            emit(&mut out, &json!({
                "k": f.k(),
                "positive": is_positive_quiddity(&q),
                "quiddity": q.iter().map(|v| sj::vec_to_json(v)).collect::<Vec<_>>(),
            }), pretty)?;
        }
        Cmd::Entry { tiling, i, j } => {
            let t = load(&tiling, sj::tiling_from_json)?;
            emit(&mut out, &json!({ "i": i, "j": j, "value": int_to_json(&t.entry(i, j)?) }), pretty)?;
        }
        Cmd::Join { gamma, delta, m, n } => {
            let g = load(&gamma, sj::path_from_json)?;
            let d = load(&delta, sj::path_from_json)?;
            emit(&mut out, &sj::path_to_json(&join_paths(&g, &d, m, n)?), pretty)?;
        }
        Cmd::Enumerate { k, n, bound, lower, by_quiddity, jobs } => {
            let search = Search {
                lower,
                jobs,
                positive_frieze: !by_quiddity,
                positive_quiddity: by_quiddity,
                ..Search::positive(k, n, bound)
            };
            let e = search_friezes(search)?;
            for f in &e.friezes {
                emit(&mut out, &sj::frieze_to_json(f), pretty)?;
            }
            let completeness = match e.completeness {
                Completeness::Exact => "exact",
                Completeness::Bounded => "bounded",
            };
            emit(&mut out, &json!({ "summary": {
                "k": k, "n": n, "lower": lower, "bound": bound,
                "filter": if by_quiddity { "positive_quiddity" } else { "positive_frieze" },
                "count": e.friezes.len(),
                "completeness": completeness,
            }}), pretty)?;
        }
        Cmd::Pluecker { matrix } => {
            let a: IntMatrix = load(&matrix, sj::matrix_from_json)?;
            emit(&mut out, &sj::frieze_to_json(&plucker_frieze_eval(&a)?), pretty)?;
        }
        Cmd::Render { frieze } => {
            let f = load(&frieze, sj::frieze_from_json_unchecked)?;
            write!(out, "{}", f.render()).context("writing output")?;
        }
        Cmd::Selftest => {
            let checks = sltiling::selftest::run();
            let mut failed = 0;
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => writeln!(out, "{tag} {}: {d}", c.name),
                    None => writeln!(out, "{tag} {}", c.name),
                }
                .context("writing output")?;
                failed += usize::from(!c.passed);
            }
            writeln!(out, "{} of {} examples reproduced", checks.len() - failed, checks.len()).context("writing output")?;
            if failed > 0 {
                return Err(Failure { code: 1, err: anyhow!("{failed} examples failed") });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
