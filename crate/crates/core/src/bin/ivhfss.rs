use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use ivhfss::document::{self, format_number};
use ivhfss::element::{AlignmentPolicy, CombineMode, Semantics};
use ivhfss::interval::{
    interval_add, interval_scale, rank_compare, OperatorKind, RealInterval, UnitInterval,
};
use ivhfss::laws::{self, CheckConfig, LawReport};
use ivhfss::soft::{self, IvhfSoftSet};
use ivhfss::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_FALSE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ivhfss",
    version,
    about = "Operations on interval-valued hesitant fuzzy soft sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Aligned,
    Pairwise,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlignArg {
    Optimistic,
    Pessimistic,
}

impl From<AlignArg> for AlignmentPolicy {
    fn from(a: AlignArg) -> Self {
        match a {
            AlignArg::Optimistic => AlignmentPolicy::Optimistic,
            AlignArg::Pessimistic => AlignmentPolicy::Pessimistic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    O1,
    O2,
    O3,
    O4,
}

impl From<KindArg> for OperatorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::O1 => OperatorKind::O1,
            KindArg::O2 => OperatorKind::O2,
            KindArg::O3 => OperatorKind::O3,
            KindArg::O4 => OperatorKind::O4,
        }
    }
}

#[derive(Args)]
struct CombineArgs {
    /// How intervals are paired up.
    #[arg(long, value_enum, default_value = "aligned")]
    mode: ModeArg,
    /// How shorter elements are padded in aligned mode.
    #[arg(long = "align", value_enum, default_value = "optimistic")]
    policy: AlignArg,
}

impl CombineArgs {
    fn semantics(&self) -> Semantics {
        Semantics {
            mode: match self.mode {
                ModeArg::Aligned => CombineMode::Aligned,
                ModeArg::Pairwise => CombineMode::Pairwise,
            },
            policy: self.policy.into(),
        }
    }
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of standard output.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Soft union of two soft sets.
    Union {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        combine: CombineArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Soft intersection over the shared parameters.
    Intersect {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        combine: CombineArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Cellwise complement.
    Complement {
        a: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Cellwise ring sum; both sets need the same parameters.
    Ringsum {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Cellwise ring product; both sets need the same parameters.
    Ringprod {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Exit 0 if A is a soft subset of B, 3 otherwise.
    Subset {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "align", value_enum, default_value = "optimistic")]
        policy: AlignArg,
    },
    /// Apply a difference operator cell by cell on the shared parameters.
    ElemOp {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        out: Output,
    },
    /// Score interval of every cell.
    Score { a: PathBuf },
    /// Objects ordered by their mean score across parameters, best first.
    Rank { a: PathBuf },
    /// Run the law checker over every registered law.
    CheckLaws {
        #[arg(long, default_value_t = 0.25)]
        grid_step: f64,
        /// Random trials per law and reading.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Check only these laws (repeatable).
        #[arg(long = "law")]
        laws: Vec<String>,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Union of a family of soft sets, folded left to right.
    FamilyUnion {
        #[arg(required = true, num_args = 1..)]
        sets: Vec<PathBuf>,
        #[command(flatten)]
        combine: CombineArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Intersection of a family of soft sets, folded left to right.
    FamilyIntersect {
        #[arg(required = true, num_args = 1..)]
        sets: Vec<PathBuf>,
        #[command(flatten)]
        combine: CombineArgs,
        #[command(flatten)]
        out: Output,
    },
}

enum Failure {
    Data(String),
    False,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn load(path: &Path) -> Result<IvhfSoftSet, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    let parsed =
        document::parse(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.soft_set)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Data(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_set(f: &IvhfSoftSet, out: &Output) -> Result<(), Failure> {
    emit(&document::to_canonical_json(f), out.path.as_deref())
}

fn rounded(x: f64) -> Value {
    json!(format_number(x)
        .parse::<f64>()
        .expect("formatted number parses"))
}

fn interval_value(a: &UnitInterval) -> Value {
    json!([rounded(a.lower()), rounded(a.upper())])
}

fn scores(f: &IvhfSoftSet) -> Value {
    let mut out = Map::new();
    for (p, row) in f.rows() {
        let cells: Map<String, Value> = f
            .universe()
            .iter()
            .zip(row)
            .map(|(o, cell)| (o.to_string(), interval_value(&cell.score())))
            .collect();
        out.insert(p.to_string(), Value::Object(cells));
    }
    Value::Object(out)
}

fn mean_scores(f: &IvhfSoftSet) -> Result<Vec<UnitInterval>, Failure> {
    let k = 1.0 / f.parameters().len() as f64;
    (0..f.universe().len())
        .map(|o| {
            let total = (0..f.parameters().len())
                .map(|p| RealInterval::from(f.row(p)[o].score()))
                .reduce(interval_add)
                .expect("at least one parameter");
            let mean = interval_scale(k, total)?;
            let l = mean.lower.clamp(0.0, 1.0);
            let u = mean.upper.clamp(l, 1.0);
            Ok(UnitInterval::new(l, u)?)
        })
        .collect()
}

fn ranking(f: &IvhfSoftSet) -> Result<Value, Failure> {
    let means = mean_scores(f)?;
    let mut order: Vec<usize> = (0..means.len()).collect();
    // stable insertion sort, best first
    for i in 1..order.len() {
        let mut j = i;
        while j > 0 && rank_compare(&means[order[j - 1]], &means[order[j]]) == Ordering::Less {
            order.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for o in order {
        match groups.last_mut() {
            Some(g) if rank_compare(&means[g[0]], &means[o]) == Ordering::Equal => g.push(o),
            _ => groups.push(vec![o]),
        }
    }
    let name = |o: usize| f.universe()[o].to_string();
    let scores: Map<String, Value> = (0..means.len())
        .map(|o| (name(o), interval_value(&means[o])))
        .collect();
    let ranking: Vec<Vec<String>> = groups
        .iter()
        .map(|g| g.iter().map(|&o| name(o)).collect())
        .collect();
    Ok(json!({ "ranking": ranking, "mean_scores": scores }))
}

fn summary_line(r: &LawReport) -> String {
    format!(
        "{:<10} {:<16} {:<9} {:<10} {:>9} trials",
        r.law_id,
        r.status.as_str(),
        serde_json::to_value(r.reading)
            .expect("serializes")
            .as_str()
            .unwrap_or_default(),
        serde_json::to_value(r.equality_used)
            .expect("serializes")
            .as_str()
            .unwrap_or_default(),
        r.trials_run
    )
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Union { a, b, combine, out } => emit_set(
            &soft::soft_union(&load(&a)?, &load(&b)?, combine.semantics())?,
            &out,
        ),
        Command::Intersect { a, b, combine, out } => emit_set(
            &soft::soft_intersection(&load(&a)?, &load(&b)?, combine.semantics())?,
            &out,
        ),
        Command::Complement { a, out } => emit_set(&soft::soft_complement(&load(&a)?), &out),
        Command::Ringsum { a, b, out } => {
            emit_set(&soft::soft_ring_sum(&load(&a)?, &load(&b)?)?, &out)
        }
        Command::Ringprod { a, b, out } => {
            emit_set(&soft::soft_ring_product(&load(&a)?, &load(&b)?)?, &out)
        }
        Command::Subset { a, b, policy } => {
            if soft::is_subset(&load(&a)?, &load(&b)?, policy.into())? {
                println!("true");
                Ok(())
            } else {
                println!("false");
                Err(Failure::False)
            }
        }
        Command::ElemOp { a, b, kind, out } => emit_set(
            &soft::soft_apply_operator(kind.into(), &load(&a)?, &load(&b)?)?,
            &out,
        ),
        Command::Score { a } => emit(&format!("{:#}\n", scores(&load(&a)?)), None),
        Command::Rank { a } => emit(&format!("{:#}\n", ranking(&load(&a)?)?), None),
        Command::CheckLaws {
            grid_step,
            trials,
            seed,
            report,
            laws: ids,
            sequential,
        } => {
            let defaults = CheckConfig::default();
            let config = CheckConfig {
                grid_step,
                random_trials: trials,
                seed: seed.unwrap_or(defaults.seed),
                parallel: !sequential,
                ..defaults
            };
            let reports = if ids.is_empty() {
                laws::run_suite(&config)?
            } else {
                ids.iter()
                    .map(|id| {
                        let law = laws::find(id).ok_or_else(|| Error::UnknownLaw(id.clone()))?;
                        laws::check_law(&law, &config)
                    })
                    .collect::<Result<Vec<_>, Error>>()?
            };
            for r in &reports {
                eprintln!("{}", summary_line(r));
            }
            let text = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
            emit(&text, report.as_deref())
        }
        Command::FamilyUnion { sets, combine, out } => {
            let members = sets
                .iter()
                .map(|p| load(p))
                .collect::<Result<Vec<_>, _>>()?;
            emit_set(&soft::family_union(&members, combine.semantics())?, &out)
        }
        Command::FamilyIntersect { sets, combine, out } => {
            let members = sets
                .iter()
                .map(|p| load(p))
                .collect::<Result<Vec<_>, _>>()?;
            emit_set(
                &soft::family_intersection(&members, combine.semantics())?,
                &out,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::False) => ExitCode::from(EXIT_FALSE),
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
