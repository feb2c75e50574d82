//! Command-line surface.
//!
//! Exit codes: `0` success, `2` malformed input or usage, `3` the solver
//! rejected the data (a zero where a regular value is required).

pub mod csv;
pub mod document;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approx::{fit_polynomial, fit_rational, DegreeVector, FitReport, Model, SampleSet};
use crate::datasets;
use crate::error::{Error, Result};
use crate::search::{random_search, SearchConfig};
use crate::semifield::{Scalar, Semifield};
use crate::solvers::DEFAULT_MAX_ITER;

pub use csv::{format_samples, parse_samples, parse_samples_str};
pub use document::{ConfigEcho, ModelDocument, PolynomialPart, Provenance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tropfit",
    version,
    about = "Tropical polynomial and rational approximation"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit a tropical polynomial or rational function to sample data.
    Fit(FitArgs),
    /// Evaluate a fitted model on a grid, a list of points, or the samples.
    Eval(EvalArgs),
    /// Write the reference sample sets f.csv and g.csv.
    Datasets(DatasetsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Polynomial,
    Rational,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long, default_value = "max-plus")]
    semifield: Semifield,
    #[arg(long, value_enum, default_value = "polynomial")]
    kind: Kind,
    /// Polynomial exponents, e.g. -14,-1,1,2,3 (fractions like 1/3 allowed).
    #[arg(long, allow_hyphen_values = true)]
    degrees: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    num_degrees: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    den_degrees: Option<String>,
    /// Number of polynomial terms for a random search.
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long)]
    num_terms: Option<usize>,
    #[arg(long)]
    den_terms: Option<usize>,
    /// Integer degree range for a random search, as min:max.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Number of degree classes drawn in a random search.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Worker threads for a random search (default: available processors).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    model: PathBuf,
    /// Evaluation grid a:b:step, inclusive of both ends.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["x_file", "input"])]
    grid: Option<String>,
    /// File with one abscissa per line.
    #[arg(long, conflicts_with = "input")]
    x_file: Option<PathBuf>,
    /// Sample CSV; adds y and residual columns.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DatasetsArgs {
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonRegularInput(_)
        | Error::ZeroAbscissa(_)
        | Error::InversionOfZero
        | Error::ZeroVector
        | Error::NoSuccessfulFit
        | Error::ResidualMismatch { .. } => EXIT_SOLVER,
        _ => EXIT_MALFORMED,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_MALFORMED
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Fit(a) => cmd_fit(&a, stdout, stderr),
        Command::Eval(a) => cmd_eval(&a, stdout),
        Command::Datasets(a) => cmd_datasets(&a, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn usage(msg: &str) -> Error {
    Error::InvalidConfig(msg.to_string())
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || usage("--range expects min:max with integer bounds");
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    }
}

enum FitPlan {
    Fixed {
        num: DegreeVector,
        den: Option<DegreeVector>,
    },
    Search(SearchConfig),
}

fn plan(a: &FitArgs) -> Result<FitPlan> {
    let search = |n_num: usize, n_den: Option<usize>| -> Result<FitPlan> {
        let range = a
            .range
            .as_deref()
            .ok_or_else(|| usage("a search needs --range"))?;
        let (lo, hi) = parse_range(range)?;
        let samples = a.samples.ok_or_else(|| usage("a search needs --samples"))?;
        let config = SearchConfig {
            n_terms_numerator: n_num,
            n_terms_denominator: n_den,
            degree_min: lo,
            degree_max: hi,
            n_samples: samples,
            rng_seed: a.seed,
            max_iter_two_sided: a.max_iter,
            record_trace: false,
        };
        config.validate()?;
        Ok(FitPlan::Search(config))
    };
    match a.kind {
        Kind::Polynomial => {
            if a.den_degrees.is_some() || a.den_terms.is_some() {
                return Err(usage("polynomial fits take no denominator options"));
            }
            let degrees = a.degrees.as_ref().or(a.num_degrees.as_ref());
            let terms = a.terms.or(a.num_terms);
            match (degrees, terms) {
                (Some(d), None) => Ok(FitPlan::Fixed {
                    num: DegreeVector::parse_list(d)?,
                    den: None,
                }),
                (None, Some(n)) => search(n, None),
                _ => Err(usage("give exactly one of --degrees or --terms")),
            }
        }
        Kind::Rational => {
            if a.degrees.is_some() || a.terms.is_some() {
                return Err(usage("rational fits use --num-*/--den-* options"));
            }
            match (&a.num_degrees, &a.den_degrees, a.num_terms, a.den_terms) {
                (Some(p), Some(q), None, None) => Ok(FitPlan::Fixed {
                    num: DegreeVector::parse_list(p)?,
                    den: Some(DegreeVector::parse_list(q)?),
                }),
                (None, None, Some(n), Some(l)) => search(n, Some(l)),
                _ => Err(usage(
                    "give --num-degrees with --den-degrees, or --num-terms with --den-terms",
                )),
            }
        }
    }
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| usage(&e.to_string()))
}

fn cmd_fit(a: &FitArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let plan = plan(a)?;
    let samples = parse_samples(&a.input, a.semifield)?;

    let (fit, echo, seed): (FitReport, ConfigEcho, Option<u64>) = match plan {
        FitPlan::Fixed { num, den } => {
            let (fit, max_iter) = match &den {
                None => (fit_polynomial(&samples, &num)?, None),
                Some(den) => (
                    fit_rational(&samples, &num, den, a.max_iter)?,
                    Some(a.max_iter),
                ),
            };
            let echo = ConfigEcho {
                mode: "degrees".into(),
                max_iter,
                ..Default::default()
            };
            (fit, echo, None)
        }
        FitPlan::Search(config) => {
            let report = thread_pool(a.threads)?.install(|| random_search(&samples, &config))?;
            for (i, e) in &report.failures {
                writeln!(stderr, "draw {i} skipped: {e}")?;
            }
            let echo = ConfigEcho {
                mode: "search".into(),
                terms: Some(config.n_terms_numerator),
                den_terms: config.n_terms_denominator,
                range: Some(format!("{}:{}", config.degree_min, config.degree_max)),
                samples: Some(config.n_samples),
                max_iter: config
                    .n_terms_denominator
                    .map(|_| config.max_iter_two_sided),
                best_draw: Some(report.best_index),
                ..Default::default()
            };
            (report.best, echo, Some(config.rng_seed))
        }
    };

    let echo = ConfigEcho {
        iterations: fit.iterations,
        termination: fit.termination.name().to_string(),
        ..echo
    };
    let provenance = Provenance {
        seed,
        config: echo,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let doc = ModelDocument::from_fit(&fit, provenance);
    writeln!(stderr, "delta_star = {:.4}", doc.delta_star)?;
    writeln!(stderr, "error      = {:.4}", doc.error)?;
    write_output(a.output.as_deref(), &doc.to_json(), stdout)
}

/// Grid points `a, a + step, …` up to `b` inclusive, within `step / 2`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || usage("--grid expects a:b:step with step > 0 and a <= b");
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [a, b, step] = parts[..] else {
        return Err(bad());
    };
    if !(a.is_finite() && b.is_finite() && step.is_finite() && step > 0.0 && a <= b) {
        return Err(bad());
    }
    let n = ((b - a) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|k| a + k as f64 * step).collect())
}

fn fmt_real(sf: Semifield, s: Scalar) -> String {
    format!("{}", sf.to_real(s))
}

fn cmd_eval(a: &EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&a.model)
        .map_err(|e| Error::Io(format!("{}: {e}", a.model.display())))?;
    let doc = ModelDocument::from_json(&text)?;
    let model: Model = doc.to_model()?;
    let sf = model.semifield();

    let mut out = String::new();
    if let Some(path) = &a.input {
        let samples: SampleSet = parse_samples(path, sf)?;
        out.push_str("x\tmodel\ty\tresidual\n");
        for &(x, y) in samples.points() {
            let v = model.eval(x)?;
            let r = sf.div(v, y)?;
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                fmt_real(sf, x),
                fmt_real(sf, v),
                fmt_real(sf, y),
                fmt_real(sf, r)
            ));
        }
    } else {
        let xs: Vec<f64> = match (&a.grid, &a.x_file) {
            (Some(g), None) => parse_grid(g)?,
            (None, Some(p)) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                text.lines()
                    .enumerate()
                    .filter(|(_, l)| !l.trim().is_empty())
                    .map(|(i, l)| {
                        l.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::MalformedRow(i + 1))
                    })
                    .collect::<Result<_>>()?
            }
            _ => return Err(usage("give one of --grid, --x-file or --input")),
        };
        out.push_str("x\tmodel\n");
        for x in xs {
            let v = model.eval(sf.scalar(x)?)?;
            out.push_str(&format!("{}\t{}\n", x, fmt_real(sf, v)));
        }
    }
    write_output(a.output.as_deref(), &out, stdout)
}

fn cmd_datasets(a: &DatasetsArgs, stderr: &mut dyn Write) -> Result<()> {
    fs::create_dir_all(&a.out_dir)?;
    for (name, samples) in [
        ("f.csv", datasets::convex_samples()),
        ("g.csv", datasets::nonconvex_samples()),
    ] {
        let path = a.out_dir.join(name);
        fs::write(&path, format_samples(&samples))
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        writeln!(stderr, "wrote {}", path.display())?;
    }
    Ok(())
}
