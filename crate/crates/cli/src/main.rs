use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde_json::{json, Value};
use thiserror::Error;

use tanalg::bundles::{build_diff_bundle, json as bundle_json, roundtrip, verify_diff_bundle, LAlgebra};
use tanalg::catalog::{self, laws};
use tanalg::congruence::generate_congruence;
use tanalg::reflect::json as reflect_json;
use tanalg::suite::{run_suite, SuiteConfig};
use tanalg::tangent::{default_homs, verify_tangent, Budget, Context, TangentSizes, TangentSpace};
use tanalg::{AssignmentEngine, AxiomReport, FiniteAlgebra, Mode, Status};

#[derive(Parser, Debug)]
#[command(
    name = "tanalg",
    version,
    about = "Reflections, tangent structures and differential bundles on finite algebras"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Log progress to stderr; repeat for more detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an algebra and check the laws of its variety.
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// Variety to check; guessed from operation names when absent.
        #[arg(long, value_enum)]
        variety: Option<VarietyArg>,
        /// Report a broken unit law as a warning instead of an error.
        #[arg(long)]
        lenient: bool,
    },
    /// Compute L(X) with its witness.
    Reflect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the unit η as a value table.
        #[arg(long)]
        emit_unit: bool,
    },
    /// The least congruence containing the given pairs.
    Congruence {
        #[arg(long)]
        input: PathBuf,
        /// Seed pairs as `a:b`.
        #[arg(value_name = "A:B")]
        pairs: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build T(X) and optionally verify the tangent axioms.
    Tangent {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        depth: u8,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The product bundle X × A over X for an L-algebra A.
    Bundle {
        #[arg(long)]
        base: PathBuf,
        /// The fibre; the terminal L-algebra when absent.
        #[arg(long)]
        fiber: Option<PathBuf>,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        /// Also pass back through L-algebras and compare.
        #[arg(long)]
        roundtrip: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The full battery over the built-in catalog.
    Suite {
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        depth: u8,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Largest carrier to materialize.
    #[arg(long, env = "TANALG_BUDGET")]
    budget: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self) -> Budget {
        match self.budget {
            Some(carrier) => Budget::with_carrier(carrier),
            None => Budget::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VarietyArg {
    Group,
    Monoid,
    PointedMagma,
    Loop,
    Ring,
}

impl From<VarietyArg> for laws::Variety {
    fn from(v: VarietyArg) -> Self {
        match v {
            VarietyArg::Group => laws::Variety::Group,
            VarietyArg::Monoid => laws::Variety::Monoid,
            VarietyArg::PointedMagma => laws::Variety::PointedMagma,
            VarietyArg::Loop => laws::Variety::Loop,
            VarietyArg::Ring => laws::Variety::Ring,
        }
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

#[derive(Debug, Error)]
enum CliError {
    /// Unreadable or malformed input, or an unwritable output.
    #[error("{0}")]
    Input(String),
    /// A mathematical failure outside an axiom report.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<catalog::CatalogError> for CliError {
    fn from(e: catalog::CatalogError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// What a subcommand produced: the document and whether any check failed.
struct Outcome {
    document: Value,
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    match run(&cli) {
        Ok(failed) => ExitCode::from(u8::from(failed)),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let (outcome, dest) = match &cli.command {
        Command::Validate {
            input,
            variety,
            lenient,
        } => (validate(input, *variety, *lenient)?, None),
        Command::Reflect {
            input,
            mode,
            out,
            emit_unit,
        } => (reflect(input, *mode, *emit_unit)?, out.as_deref()),
        Command::Congruence { input, pairs, out } => (congruence(input, pairs)?, out.as_deref()),
        Command::Tangent {
            input,
            mode,
            verify,
            depth,
            budget,
            report,
        } => (
            tangent(input, *mode, *verify, *depth as usize, budget.resolve())?,
            report.as_deref(),
        ),
        Command::Bundle {
            base,
            fiber,
            mode,
            roundtrip,
            budget,
            report,
        } => (
            bundle(base, fiber.as_deref(), *mode, *roundtrip, budget.resolve())?,
            report.as_deref(),
        ),
        Command::Suite { report, depth, budget } => (suite(*depth as usize, budget.resolve()), report.as_deref()),
    };
    emit(&outcome.document, dest, cli.pretty)?;
    Ok(outcome.failed)
}

fn emit(document: &Value, dest: Option<&Path>, pretty: bool) -> Result<(), CliError> {
    let mut text = if pretty {
        serde_json::to_string_pretty(document)
    } else {
        serde_json::to_string(document)
    }
    .expect("values always serialize");
    text.push('\n');
    match dest {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            info!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn load(path: &Path) -> Result<Arc<FiniteAlgebra>, CliError> {
    let x = catalog::parse_file(path)?;
    info!("read {} ({} elements) from {}", x.name(), x.size(), path.display());
    Ok(Arc::new(x))
}

fn check_budget(x: &FiniteAlgebra, budget: &Budget) -> Result<(), CliError> {
    if budget.carrier < x.size() {
        return Err(CliError::Input(format!(
            "budget {} is below the input size {}",
            budget.carrier,
            x.size()
        )));
    }
    Ok(())
}

fn failed(report: &AxiomReport) -> bool {
    report.has_failures()
}

fn validate(input: &Path, variety: Option<VarietyArg>, lenient: bool) -> Result<Outcome, CliError> {
    let text = catalog::json::read_text(input)?;
    let (x, warnings) = if lenient {
        catalog::parse_lenient(&text)?
    } else {
        (catalog::parse(&text)?, Vec::new())
    };
    for w in &warnings {
        warn!("{w}");
    }
    let variety = variety.map(laws::Variety::from).or_else(|| laws::detect(&x));
    let violation = variety.and_then(|v| laws::check_variety(&x, v).err());
    let document = json!({
        "name": x.name(),
        "size": x.size(),
        "variety": variety,
        "violation": violation,
        "warnings": warnings,
    });
    Ok(Outcome {
        failed: violation.is_some(),
        document,
    })
}

fn reflect(input: &Path, mode: Mode, emit_unit: bool) -> Result<Outcome, CliError> {
    let x = load(input)?;
    let engine = AssignmentEngine::new(mode);
    let r = engine
        .reflect_unchecked(&x)
        .map_err(|e| CliError::Failed(format!("reflecting {}: {e}", x.name())))?;
    if let Err(e) = r.validation() {
        return Err(CliError::Failed(format!("{} in {mode} mode: {e}", x.name())));
    }
    info!("L({}) has {} elements", x.name(), r.size());
    Ok(Outcome {
        document: reflect_json::to_value(&r, emit_unit),
        failed: false,
    })
}

fn parse_pair(token: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("pair `{token}` is not of the form a:b"));
    let (a, b) = token.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn congruence(input: &Path, pairs: &[String]) -> Result<Outcome, CliError> {
    let x = load(input)?;
    let seeds = pairs.iter().map(|p| parse_pair(p)).collect::<Result<Vec<_>, _>>()?;
    let c = generate_congruence(&x, &seeds).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Outcome {
        document: json!({
            "algebra": x.name(),
            "seeds": seeds,
            "num_classes": c.num_classes(),
            "classes": c.classes(),
            "labels": c.labels(),
        }),
        failed: false,
    })
}

fn tangent(input: &Path, mode: Mode, verify: bool, depth: usize, budget: Budget) -> Result<Outcome, CliError> {
    let x = load(input)?;
    check_budget(&x, &budget)?;
    let ctx = Context::with_mode(mode, budget);
    let ts = TangentSpace::build(&ctx, &x).map_err(|e| CliError::Failed(format!("building T({}): {e}", x.name())))?;
    info!("T({}) has {} elements", x.name(), ts.size());
    if !verify {
        let sizes = TangentSizes {
            t: Some(ts.size()),
            ..TangentSizes::default()
        };
        let mut document = catalog::to_value(ts.algebra());
        let obj = document.as_object_mut().expect("algebra json is an object");
        obj.insert("p".into(), json!(ts.p().map().values()));
        obj.insert("z".into(), json!(ts.z().map().values()));
        obj.insert("sizes".into(), json!(sizes));
        return Ok(Outcome {
            document,
            failed: false,
        });
    }
    let report = verify_tangent(&ts, &default_homs(&ctx, &x), depth);
    for e in &report.axioms {
        info!("{:<28} {:?}", e.id, e.status);
    }
    Ok(Outcome {
        failed: report.has_failures(),
        document: json!(report),
    })
}

fn bundle(
    base: &Path,
    fiber: Option<&Path>,
    mode: Mode,
    with_roundtrip: bool,
    budget: Budget,
) -> Result<Outcome, CliError> {
    let x = load(base)?;
    check_budget(&x, &budget)?;
    let ctx = Context::with_mode(mode, budget);
    let alg = match fiber {
        Some(path) => {
            let a = load(path)?;
            LAlgebra::canonical(&ctx, &a)
                .map_err(|e| CliError::Failed(format!("{} is not an L-algebra: {e}", a.name())))?
        }
        None => LAlgebra::terminal(&ctx, &x).map_err(|e| CliError::Failed(e.to_string()))?,
    };
    let d = build_diff_bundle(&ctx, &x, &alg).map_err(|e| CliError::Failed(format!("building the bundle: {e}")))?;
    info!("bundle of size {} over {}", d.total().size(), x.name());
    let mut document = json!({ "bundle": bundle_json::to_value(&d) });
    let failed = if with_roundtrip {
        let r = roundtrip(&ctx, &x, &alg);
        let report = r.bundle.unwrap_or_else(|| verify_diff_bundle(&ctx, &d));
        let failed = failed(&report) || failed(&r.report);
        document["report"] = json!(report);
        document["roundtrip"] = json!(r.report);
        failed
    } else {
        let report = verify_diff_bundle(&ctx, &d);
        document["report"] = json!(report);
        failed(&report)
    };
    Ok(Outcome { document, failed })
}

fn suite(depth: usize, budget: Budget) -> Outcome {
    let config = SuiteConfig {
        depth,
        ..SuiteConfig::from_budget(budget)
    };
    let report = run_suite(&config);
    for s in report.failed_sections() {
        warn!("{} {} ({}) failed", s.registry, s.subject, s.mode);
    }
    for c in report.coverage.iter().filter(|c| c.status != Status::Pass) {
        warn!("{} never passed", c.id);
    }
    info!(
        "{} sections, {} entries passed, {} skipped, {} detections",
        report.summary.sections, report.summary.passed, report.summary.skipped, report.summary.detections
    );
    Outcome {
        failed: !report.ok,
        document: json!(report),
    }
}
