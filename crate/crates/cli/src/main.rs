use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kaluza_core::io::{parse_table_json, to_json_pretty, TableContent, TableJson};
use kaluza_core::kaluza::check_word_condition;
use kaluza_core::moments::{atomic_coeffs, product_measure_coeffs, AtomicMeasureD, MeasureFile};
use kaluza_core::rational::pow;
use num_complex::Complex64;
use kaluza_core::series::multinomial_table;
use kaluza_core::symmetrize::{lift, solve_via_words_guarded, DEFAULT_LIFT_GUARD};
use kaluza_core::{
    besov_norm_table, c_from_b, c_from_r, certify, check_kaluza_1d, check_theorem1,
    check_theorem2, coeffs_from_norm_table, evaluate, solve_renewal, AnyTable, CoeffTable,
    EvalPoint, GradedMonoid, MultiIndexMonoid, MultiTable, RatioTable, Verdict,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Renewal equations on graded monoids and CNP kernel certification in exact
/// rational arithmetic. Tables are read and written as JSON.
#[derive(Debug, Parser)]
#[command(name = "kaluza", version)]
struct Cli {
    /// Worker threads for level-parallel solving; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve c = δ + c∗q for q.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Truncate the input to this degree first.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run one positivity check; exit 1 if it fails.
    Check {
        #[arg(long, value_enum)]
        thm: Thm,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Certify a kernel from coefficients or squared norms; exit 1 on a negativity witness.
    Certify {
        #[arg(long = "in", conflicts_with = "norms", required_unless_present = "norms")]
        input: Option<PathBuf>,
        #[arg(long)]
        norms: Option<PathBuf>,
    },
    /// Generate a coefficient table.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Evaluate the truncated series at a point of the open l1 ball.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated coordinates, each real or complex such as 0.1+0.2i.
        #[arg(long)]
        point: String,
    },
    /// Compare the direct solver with the word-lift route; exit 1 if they differ.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        /// Maximal number of words per level in the lifted table.
        #[arg(long, default_value_t = DEFAULT_LIFT_GUARD)]
        guard: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Thm {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "1d")]
    OneD,
    #[value(name = "word")]
    Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Multinomial,
    Geometric,
    FromR,
    FromB,
    ProductMeasure,
    AtomicMeasure,
    BesovNorms,
}

#[derive(Debug, Deserialize)]
struct GeometricParams {
    #[serde(with = "kaluza_core::rational::serde_str_vec")]
    t: Vec<kaluza_core::Rational>,
}

#[derive(Serialize)]
struct EvalOut {
    re: f64,
    im: f64,
}

struct Outcome {
    json: String,
    code: u8,
}

impl Outcome {
    fn new<T: Serialize + ?Sized>(value: &T, pass: bool) -> Result<Self> {
        Ok(Outcome {
            json: to_json_pretty(value)?,
            code: if pass { 0 } else { 1 },
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_table(path: &Path) -> Result<TableJson> {
    parse_table_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_multi(path: &Path) -> Result<MultiTable> {
    let j = read_table(path)?;
    if j.content() != TableContent::Coefficients {
        bail!("{} holds squared norms; use certify --norms", path.display());
    }
    Ok(j.into_table()?)
}

fn truncated<M: GradedMonoid>(t: CoeffTable<M>, degree: Option<usize>) -> Result<CoeffTable<M>> {
    match degree {
        None => Ok(t),
        Some(n) if n <= t.max_degree() => Ok(t.truncate(n)?),
        Some(n) => bail!("requested degree {n} exceeds the table degree {}", t.max_degree()),
    }
}

fn require_dim(flag: Option<usize>, actual: usize) -> Result<()> {
    match flag {
        Some(d) if d != actual => bail!("--dim {d} does not match the parameters (dimension {actual})"),
        _ => Ok(()),
    }
}

fn need<T>(v: Option<T>, name: &str, family: Family) -> Result<T> {
    v.with_context(|| format!("--{name} is required for family {family:?}"))
}

fn generate(
    family: Family,
    params: Option<&Path>,
    dim: Option<usize>,
    degree: Option<usize>,
) -> Result<Outcome> {
    let params = params.map(read).transpose()?;
    let table = match family {
        Family::Multinomial => multinomial_table(need(dim, "dim", family)?, need(degree, "degree", family)?)?,
        Family::Geometric => {
            let p: GeometricParams = serde_json::from_str(&need(params, "params", family)?)?;
            require_dim(dim, p.t.len())?;
            if p.t.is_empty() {
                bail!("geometric family needs at least one ratio");
            }
            let n = need(degree, "degree", family)?;
            CoeffTable::from_fn(MultiIndexMonoid::new(p.t.len()), n, |a| {
                a.components()
                    .iter()
                    .zip(&p.t)
                    .map(|(&k, t)| pow(t, k))
                    .product()
            })?
        }
        Family::FromR | Family::FromB => {
            let t: MultiTable = parse_table_json(&need(params, "params", family)?)?.into_table()?;
            require_dim(dim, t.monoid().dim())?;
            let t = truncated(t, degree)?;
            if family == Family::FromR {
                c_from_r(&RatioTable::new(t)?)?
            } else {
                c_from_b(&t)?
            }
        }
        Family::ProductMeasure | Family::AtomicMeasure => {
            let m: MeasureFile = serde_json::from_str(&need(params, "params", family)?)
                .context("measure parameters")?;
            let n = need(degree, "degree", family)?;
            match (family, m) {
                (Family::ProductMeasure, MeasureFile::Product { axes }) => {
                    require_dim(dim, axes.len())?;
                    product_measure_coeffs(&axes, n)?
                }
                (Family::AtomicMeasure, MeasureFile::Atomic { atoms_d }) => {
                    let m = AtomicMeasureD { atoms: atoms_d };
                    require_dim(dim, m.dim())?;
                    atomic_coeffs(&m, n)?
                }
                (Family::ProductMeasure, _) => bail!("product-measure expects {{\"axes\": [...]}}"),
                _ => bail!("atomic-measure expects {{\"atomsD\": [...]}}"),
            }
        }
        Family::BesovNorms => {
            require_dim(dim, 2)?;
            let t = besov_norm_table(need(degree, "degree", family)?)?;
            let j = TableJson::from_table(&t).with_content(TableContent::SquaredNorms);
            return Outcome::new(&j, true);
        }
    };
    Outcome::new(&table, true)
}

fn parse_point(s: &str) -> Result<EvalPoint> {
    let coords = s
        .split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<Complex64>()
                .map_err(|_| anyhow::anyhow!("cannot parse coordinate {p:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvalPoint(coords))
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Solve { input, degree } => match read_table(&input)?.into_any()? {
            AnyTable::Multi(c) => Outcome::new(&solve_renewal(&truncated(c, degree)?)?, true),
            AnyTable::Word(c) => Outcome::new(&solve_renewal(&truncated(c, degree)?)?, true),
        },
        Command::Check { thm, input } => {
            let report = match (thm, read_table(&input)?.into_any()?) {
                (Thm::One, AnyTable::Multi(c)) => check_theorem1(&c)?,
                (Thm::Two, AnyTable::Multi(c)) => check_theorem2(&c)?,
                (Thm::OneD, AnyTable::Multi(c)) => {
                    if c.monoid().dim() != 1 {
                        bail!("--thm 1d needs a one-dimensional multiindex table");
                    }
                    check_kaluza_1d(c.values())?
                }
                (Thm::Word, AnyTable::Word(f)) => check_word_condition(&f)?,
                (Thm::Word, AnyTable::Multi(c)) => check_word_condition(lift(&c)?.words())?,
                (_, AnyTable::Word(_)) => bail!("this check needs a multiindex table"),
            };
            let pass = report.passed;
            Outcome::new(&report, pass)
        }
        Command::Certify { input, norms } => {
            let (path, default) = match (input, norms) {
                (Some(p), _) => (p, TableContent::Coefficients),
                (None, Some(p)) => (p, TableContent::SquaredNorms),
                (None, None) => bail!("one of --in or --norms is required"),
            };
            let j = read_table(&path)?;
            let content = j.content.unwrap_or(default);
            let t: MultiTable = j.into_table()?;
            let c = match content {
                TableContent::Coefficients => t,
                TableContent::SquaredNorms => coeffs_from_norm_table(&t)?,
            };
            let report = certify(&c)?;
            log::info!("verdict {:?} up to degree {}", report.verdict, report.checked_degree);
            Outcome::new(&report, report.verdict != Verdict::NotCnp)
        }
        Command::Gen { family, params, dim, degree } => {
            generate(family, params.as_deref(), dim, degree)
        }
        Command::Eval { input, point } => {
            let c = read_multi(&input)?;
            let v = evaluate(&c, &parse_point(&point)?)?;
            Outcome::new(&EvalOut { re: v.re, im: v.im }, true)
        }
        Command::Oracle { input, guard } => {
            let c = read_multi(&input)?;
            let equal = solve_renewal(&c)? == solve_via_words_guarded(&c, guard)?;
            Outcome::new(&json!({ "equal": equal }), equal)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(cli.command));
    match result {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &outcome.json)
                    .with_context(|| format!("cannot write {}", path.display())),
                None => {
                    print!("{}", outcome.json);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
