//! Command-line front end. Exit codes: 0 success, 1 other failure, 2 parse
//! or usage error, 3 crosscheck inconsistency, 4 budget exhausted under
//! `--require-finite`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{
    format, nakayama, radical_square_truncation, tensor_product, triangular_matrix, truncated_polynomial,
    BoundPresentation,
};
use crate::classify::{classify_silting_discreteness, classify_tn_tau_finiteness, crosscheck, read_corpus, CrosscheckOptions};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::quiver::{component_types, separated_quiver};
use crate::repmod::oracle::brute_force_stau_count;
use crate::tautilt::{explore_presentation, ExploreOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tautri", version, about = "Support τ-tilting finiteness of triangular matrix algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Tau,
    Silting,
}

#[derive(Debug, clap::Args)]
pub struct BudgetArgs {
    /// Maximal number of support τ-tilting pairs.
    #[arg(long, default_value_t = 50_000)]
    pub budget: usize,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 600.0)]
    pub seconds: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Largest module handled in a single mutation.
    #[arg(long, default_value_t = 256)]
    pub max_module_dim: usize,
}

impl BudgetArgs {
    fn options(&self) -> Result<ExploreOptions> {
        if self.budget == 0 {
            return Err(Error::Budget("--budget must be positive".into()));
        }
        Ok(ExploreOptions {
            budget: self.budget,
            seconds: self.seconds,
            seed: self.seed,
            workers: self.workers,
            max_module_dim: self.max_module_dim,
            ..ExploreOptions::default()
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an algebra file: tn:<n>, tensor:<file>, rad2,
    /// nakayama:<r>,<linear|cyclic>,<cap> or local:<m>.
    Build {
        /// Input algebra file, or `-` for constructions without input.
        input: String,
        construction: String,
        /// Output path; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Separated quiver components and their diagram types.
    Separated {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Rule-based verdict for T_n of the algebra.
    Classify {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Tau)]
        mode: Mode,
    },
    /// Explore the support τ-tilting pairs of the algebra (or of T_n).
    Explore {
        file: PathBuf,
        /// Explore T_n of the algebra instead of the algebra itself.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Override the field of the algebra file.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        require_finite: bool,
    },
    /// Number of support τ-tilting pairs.
    StauCount {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        /// Count by exhaustive enumeration over F2 instead of exploration.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        require_finite: bool,
    },
    /// Hasse quiver of the support τ-tilting pairs as JSON, or DOT.
    Hasse {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        require_finite: bool,
    },
    /// Check classifier verdicts on a corpus against exploration.
    Crosscheck {
        corpus: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } => EXIT_PARSE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn load(path: &Path, n: Option<usize>) -> Result<BoundPresentation> {
    let p = format::read_file(path)?;
    match n {
        None | Some(1) => Ok(p),
        Some(0) => Err(Error::InvalidSize("--n must be positive".into())),
        Some(n) => triangular_matrix(&p, n),
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn build(input: &str, construction: &str) -> Result<BoundPresentation> {
    let (kind, arg) = construction.split_once(':').unwrap_or((construction, ""));
    let base = || -> Result<BoundPresentation> {
        if input == "-" {
            return Err(Error::InvalidSize(format!("`{kind}` needs an input algebra")));
        }
        format::read_file(Path::new(input))
    };
    let number = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| Error::InvalidSize(format!("`{s}` is not a nonnegative integer")))
    };
    match kind {
        "tn" => triangular_matrix(&base()?, number(arg)?),
        "tensor" => tensor_product(&base()?, &format::read_file(Path::new(arg))?),
        "rad2" => Ok(radical_square_truncation(&base()?)),
        "nakayama" => {
            let parts: Vec<&str> = arg.split(',').collect();
            let [r, shape, cap] = parts.as_slice() else {
                return Err(Error::InvalidSize("expected nakayama:<r>,<linear|cyclic>,<cap>".into()));
            };
            let cyclic = match *shape {
                "linear" => false,
                "cyclic" => true,
                other => return Err(Error::InvalidSize(format!("unknown Nakayama shape `{other}`"))),
            };
            nakayama(number(r)?, cyclic, number(cap)?)
        }
        "local" => truncated_polynomial(number(arg)?),
        other => Err(Error::InvalidSize(format!("unknown construction `{other}`"))),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Build {
            input,
            construction,
            output,
        } => {
            let p = build(&input, &construction)?;
            let text = format::to_text(&p);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Separated { file, dot } => {
            let p = format::read_file(&file)?;
            let sep = separated_quiver(&p.quiver);
            let comps: Vec<Value> = component_types(&sep.quiver)
                .into_iter()
                .map(|(vs, ty)| {
                    let names: Vec<&str> = vs.iter().map(|&v| sep.quiver.vertex_id(v)).collect();
                    json!({"vertices": names, "type": ty.to_string()})
                })
                .collect();
            if let Some(path) = dot {
                std::fs::write(path, sep.quiver.to_dot("separated"))?;
            }
            emit(out, &json!({ "components": comps }))?;
            Ok(EXIT_OK)
        }
        Command::Classify { file, n, mode } => {
            let p = format::read_file(&file)?;
            let v = match mode {
                Mode::Tau => classify_tn_tau_finiteness(&p, n)?,
                Mode::Silting => classify_silting_discreteness(&p, n)?,
            };
            emit(out, &serde_json::to_value(v)?)?;
            Ok(EXIT_OK)
        }
        Command::Explore {
            file,
            n,
            budget,
            field,
            require_finite,
        } => {
            let mut p = load(&file, n)?;
            if let Some(f) = field {
                p = p.with_field(f);
            }
            let (report, _) = explore_presentation(&p, &budget.options()?)?;
            emit(out, &report.to_json())?;
            Ok(finite_code(report.is_finite(), require_finite))
        }
        Command::StauCount {
            file,
            n,
            oracle,
            budget,
            require_finite,
        } => {
            let p = load(&file, n)?;
            if oracle {
                let count = brute_force_stau_count(&p)?;
                emit(out, &json!({"method": "oracle", "field": "fp:2", "count": count}))?;
                return Ok(EXIT_OK);
            }
            let (report, _) = explore_presentation(&p, &budget.options()?)?;
            emit(
                out,
                &json!({"method": "explore", "status": report.status, "count": report.count, "field": report.field}),
            )?;
            Ok(finite_code(report.is_finite(), require_finite))
        }
        Command::Hasse {
            file,
            n,
            dot,
            budget,
            require_finite,
        } => {
            let p = load(&file, n)?;
            let (report, hasse) = explore_presentation(&p, &budget.options()?)?;
            match dot {
                Some(path) => {
                    std::fs::write(path, hasse.to_dot())?;
                    emit(out, &report.to_json())?;
                }
                None => emit(out, &hasse.to_json())?,
            }
            Ok(finite_code(report.is_finite(), require_finite))
        }
        Command::Crosscheck { corpus, budget } => {
            let items = read_corpus(&corpus)?;
            let opts = CrosscheckOptions {
                explore: budget.options()?,
                workers: budget.workers,
                ..CrosscheckOptions::default()
            };
            let report = crosscheck(&items, &opts)?;
            emit(out, &serde_json::to_value(&report)?)?;
            Ok(if report.consistent { EXIT_OK } else { EXIT_INCONSISTENT })
        }
    }
}

fn finite_code(finite: bool, require_finite: bool) -> i32 {
    if require_finite && !finite {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}
