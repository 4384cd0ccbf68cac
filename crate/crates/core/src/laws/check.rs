//! Searching for counterexamples: grid enumeration, random trials, shrinking.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::registry::{registry, Law, Level, ParameterMode, Relation};
use super::space::{random_operands, snap, GridSpace, OperandRefs, Operands, RandomShape};
use crate::document;
use crate::element::AlignmentPolicy;
use crate::element::{Ivhfe, Semantics};
use crate::error::{Error, Result};
use crate::interval::UnitInterval;
use crate::par;
use crate::soft::{self, Ident, IvhfSoftSet};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckConfig {
    pub grid_step: f64,
    pub max_element_size: usize,
    pub max_parameters: usize,
    pub max_objects: usize,
    pub random_trials: u64,
    pub seed: u64,
    pub tolerance: f64,
    /// Largest grid enumeration attempted. Bigger spaces fall back to random
    /// trials alone and can at best report `holds-on-trials`.
    pub enumeration_budget: u64,
    /// Use the data-parallel search when the crate is built with it.
    pub parallel: bool,
    pub max_shrink_steps: u32,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            grid_step: 0.25,
            max_element_size: 2,
            max_parameters: 2,
            max_objects: 2,
            random_trials: 10_000,
            seed: 0x1F5E_ED00,
            tolerance: 1e-12,
            enumeration_budget: 5_000_000,
            parallel: true,
            max_shrink_steps: 1_000,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if !(self.grid_step > 0.0 && self.grid_step <= 1.0) {
            return bad("grid_step must lie in (0, 1]");
        }
        if self.max_element_size == 0 || self.max_parameters == 0 || self.max_objects == 0 {
            return bad("element size, parameter and object bounds must be positive");
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return bad("tolerance must be nonnegative");
        }
        Ok(())
    }

    fn shape(&self) -> RandomShape {
        RandomShape {
            grid_step: self.grid_step,
            max_element_size: self.max_element_size,
            max_parameters: self.max_parameters,
            max_objects: self.max_objects,
        }
    }
}

/// Which semantics the operations in a law are given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// Each side is evaluated once per choice of one interval from every
    /// operand; the distinct results form the side's element.
    Lifted,
    /// Operations compose, with all-pairs union and intersection.
    Pairwise,
    /// Operations compose, with aligned k-th-wise union and intersection.
    Aligned,
}

impl Reading {
    /// Readings tried for a level, most faithful to the worked examples first.
    pub fn order(level: Level) -> &'static [Reading] {
        match level {
            Level::Element => &[Reading::Lifted, Reading::Pairwise, Reading::Aligned],
            Level::Soft => &[Reading::Aligned, Reading::Pairwise],
        }
    }

    fn semantics(self) -> Semantics {
        match self {
            Reading::Aligned => Semantics::ALIGNED,
            Reading::Pairwise | Reading::Lifted => Semantics::PAIRWISE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    /// Multiset equality.
    Strict,
    /// Equality after removing duplicates.
    Equivalent,
    /// Soft-subset inclusion.
    Subset,
}

impl Predicate {
    fn ladder(relation: Relation) -> &'static [Predicate] {
        match relation {
            Relation::Equal => &[Predicate::Strict, Predicate::Equivalent],
            Relation::Subset => &[Predicate::Subset],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    /// No violation, but the grid was too large to enumerate.
    HoldsOnTrials,
    Violated,
}

impl Status {
    pub fn is_holding(self) -> bool {
        self != Status::Violated
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::HoldsOnTrials => "holds-on-trials",
            Status::Violated => "violated",
        }
    }
}

/// The value of one side of a law.
#[derive(Clone, Debug)]
pub enum Side {
    Element(Ivhfe),
    Soft(IvhfSoftSet),
}

impl Side {
    fn to_value(&self) -> serde_json::Value {
        match self {
            Side::Element(e) => document::element_to_exact_value(e),
            Side::Soft(f) => document::to_exact_value(f),
        }
    }
}

/// Both sides of `law` under `reading`, or `None` when either is undefined.
pub fn evaluate(law: &Law, reading: Reading, operands: OperandRefs<'_>) -> Option<(Side, Side)> {
    match operands {
        OperandRefs::Elements(es) => {
            let eval = |e: &super::expr::Expr| match reading {
                Reading::Lifted => e.eval_lifted(es),
                _ => e.eval_element(es, reading.semantics()),
            };
            Some((Side::Element(eval(&law.lhs)), Side::Element(eval(&law.rhs))))
        }
        OperandRefs::SoftSets(fs) => {
            let sem = reading.semantics();
            let lhs = law.lhs.eval_soft(fs, sem).ok()?;
            let rhs = law.rhs.eval_soft(fs, sem).ok()?;
            Some((Side::Soft(lhs), Side::Soft(rhs)))
        }
    }
}

/// Whether `predicate` relates the two sides.
pub fn relates(lhs: &Side, rhs: &Side, predicate: Predicate, tol: f64) -> bool {
    match (lhs, rhs) {
        (Side::Element(a), Side::Element(b)) => match predicate {
            Predicate::Strict => a.strict_eq_within(b, tol),
            Predicate::Equivalent => a.equivalent_within(b, tol),
            Predicate::Subset => {
                let (pa, pb) = crate::element::align(a, b, AlignmentPolicy::Optimistic);
                pa.iter().zip(&pb).all(|(x, y)| x.le_within(y, tol))
            }
        },
        (Side::Soft(f), Side::Soft(g)) => match predicate {
            Predicate::Strict => f.strict_eq_within(g, tol).unwrap_or(false),
            Predicate::Equivalent => f.equivalent_within(g, tol).unwrap_or(false),
            Predicate::Subset => {
                soft::is_subset_within(f, g, AlignmentPolicy::Optimistic, tol).unwrap_or(false)
            }
        },
        _ => false,
    }
}

/// `Some(true)` when the operands violate the law, `None` when a side is
/// undefined for them.
pub fn violates(
    law: &Law,
    reading: Reading,
    predicate: Predicate,
    operands: OperandRefs<'_>,
    tol: f64,
) -> Option<bool> {
    let (lhs, rhs) = evaluate(law, reading, operands)?;
    Some(!relates(&lhs, &rhs, predicate, tol))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub reading: Reading,
    pub predicate: Predicate,
    /// Elements as interval lists, soft sets as documents.
    pub operands: Vec<serde_json::Value>,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

impl Counterexample {
    fn build(law: &Law, reading: Reading, predicate: Predicate, operands: &Operands) -> Self {
        let (lhs, rhs) = operands
            .with_refs(|refs| evaluate(law, reading, refs))
            .expect("counterexamples have defined sides");
        let operands = match operands {
            Operands::Elements(es) => es.iter().map(document::element_to_exact_value).collect(),
            Operands::SoftSets(fs) => fs.iter().map(document::to_exact_value).collect(),
        };
        Counterexample {
            reading,
            predicate,
            operands,
            lhs: lhs.to_value(),
            rhs: rhs.to_value(),
        }
    }

    /// Rebuilds the operand tuple for a law of the given level.
    pub fn operands(&self, level: Level) -> Result<Operands> {
        match level {
            Level::Element => self
                .operands
                .iter()
                .map(|v| serde_json::from_value::<Ivhfe>(v.clone()).map_err(Error::from))
                .collect::<Result<Vec<_>>>()
                .map(Operands::Elements),
            Level::Soft => self
                .operands
                .iter()
                .map(|v| document::parse_value(v.clone()).map(|p| p.soft_set))
                .collect::<Result<Vec<_>>>()
                .map(Operands::SoftSets),
        }
    }
}

/// Re-evaluates a stored counterexample; true when it still violates the law.
pub fn replay(law: &Law, cx: &Counterexample, tol: f64) -> Result<bool> {
    let ops = cx.operands(law.level)?;
    Ok(ops.with_refs(|refs| violates(law, cx.reading, cx.predicate, refs, tol)) == Some(true))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReadingReport {
    pub reading: Reading,
    pub status: Status,
    /// The strongest predicate that held, or the one that failed last.
    pub equality_used: Predicate,
    pub trials_run: u64,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub shrink_steps: u32,
    /// When the law holds only up to duplicates, the tuple that broke
    /// multiset equality.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: String,
    pub statement: String,
    pub level: Level,
    pub parameter_mode: ParameterMode,
    pub status: Status,
    /// The reading the status refers to.
    pub reading: Reading,
    pub equality_used: Predicate,
    pub trials_run: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub shrink_steps: u32,
    /// Every reading tried, in order.
    pub readings: Vec<ReadingReport>,
}

fn law_hash(id: &str) -> u64 {
    // FNV-1a, stable across runs and platforms
    id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// The operands of random trial `t`; independent of reading and thread count.
pub fn random_trial(law: &Law, config: &CheckConfig, t: u64) -> Operands {
    let seed = splitmix(config.seed ^ splitmix(law_hash(&law.id) ^ splitmix(t)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_operands(&mut rng, law, &config.shape())
}

enum Source<'a> {
    Grid(&'a GridSpace),
    Random,
}

struct Found {
    operands: Operands,
    predicate: Predicate,
}

fn check_reading(
    law: &Law,
    reading: Reading,
    config: &CheckConfig,
    grid: Option<&GridSpace>,
) -> ReadingReport {
    let ladder = Predicate::ladder(law.relation);
    let tol = config.tolerance;
    let mut rung = 0;
    let mut trials_run = 0u64;
    let mut failures: Vec<Found> = Vec::new();

    let mut sources = Vec::new();
    if let Some(g) = grid {
        sources.push((Source::Grid(g), g.len() as u64));
    }
    sources.push((Source::Random, config.random_trials));

    'sources: for (source, len) in &sources {
        let mut start = 0;
        loop {
            let predicate = ladder[rung];
            let bad = |i: u64| -> bool {
                let hit = match source {
                    Source::Grid(g) => {
                        g.with_operands(i, |ops| violates(law, reading, predicate, ops, tol))
                    }
                    Source::Random => random_trial(law, config, i)
                        .with_refs(|ops| violates(law, reading, predicate, ops, tol)),
                };
                hit == Some(true)
            };
            match par::find_first(start..*len, config.parallel, bad) {
                None => {
                    trials_run += len - start;
                    continue 'sources;
                }
                Some(i) => {
                    trials_run += i - start;
                    let operands = match source {
                        Source::Grid(g) => g.operands(i),
                        Source::Random => random_trial(law, config, i),
                    };
                    failures.push(Found {
                        operands,
                        predicate,
                    });
                    if rung + 1 == ladder.len() {
                        trials_run += 1;
                        break 'sources;
                    }
                    // earlier tuples satisfied the stronger predicate, hence this one too
                    rung += 1;
                    start = i;
                }
            }
        }
    }

    let exhaustive = grid.is_some();
    let violated = failures.len() == ladder.len();
    let mut shrink_steps = 0;
    let mut shrunk = |found: &Found| {
        let (ops, steps) = shrink(
            law,
            reading,
            found.predicate,
            found.operands.clone(),
            config,
        );
        shrink_steps += steps;
        Counterexample::build(law, reading, found.predicate, &ops)
    };
    if violated {
        let last = failures.last().expect("violation recorded");
        let counterexample = Some(shrunk(last));
        ReadingReport {
            reading,
            status: Status::Violated,
            equality_used: last.predicate,
            trials_run,
            exhaustive,
            counterexample,
            shrink_steps,
            strict_counterexample: None,
        }
    } else {
        let strict_counterexample = failures.first().map(&mut shrunk);
        ReadingReport {
            reading,
            status: if exhaustive {
                Status::Holds
            } else {
                Status::HoldsOnTrials
            },
            equality_used: ladder[rung],
            trials_run,
            exhaustive,
            counterexample: None,
            shrink_steps,
            strict_counterexample,
        }
    }
}

/// Checks one law under each reading in turn, stopping at the first reading
/// under which it holds.
pub fn check_law(law: &Law, config: &CheckConfig) -> Result<LawReport> {
    config.validate()?;
    let space = GridSpace::new(
        law,
        config.grid_step,
        config.max_element_size,
        config.max_parameters,
    );
    let grid = (space.len() <= config.enumeration_budget as u128).then_some(&space);
    let mut readings = Vec::new();
    for &reading in Reading::order(law.level) {
        let report = check_reading(law, reading, config, grid);
        let holds = report.status.is_holding();
        readings.push(report);
        if holds {
            break;
        }
    }
    let chosen = readings
        .iter()
        .find(|r| r.status.is_holding())
        .unwrap_or(&readings[0])
        .clone();
    Ok(LawReport {
        law_id: law.id.clone(),
        statement: law.statement(),
        level: law.level,
        parameter_mode: law.parameter_mode,
        status: chosen.status,
        reading: chosen.reading,
        equality_used: chosen.equality_used,
        trials_run: readings.iter().map(|r| r.trials_run).sum(),
        counterexample: chosen.counterexample,
        shrink_steps: chosen.shrink_steps,
        readings,
    })
}

/// Same as [`check_law`] but fails with `BudgetExceeded` instead of falling
/// back to random trials when the grid is too large.
pub fn check_law_exhaustive(law: &Law, config: &CheckConfig) -> Result<LawReport> {
    let space = GridSpace::new(
        law,
        config.grid_step,
        config.max_element_size,
        config.max_parameters,
    );
    if space.len() > config.enumeration_budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: space.len(),
            budget: config.enumeration_budget,
        });
    }
    check_law(law, config)
}

/// Every registered law, in registry order.
pub fn run_suite(config: &CheckConfig) -> Result<Vec<LawReport>> {
    config.validate()?;
    let laws = registry();
    par::map(&laws, config.parallel, |law| check_law(law, config))
        .into_iter()
        .collect()
}

fn still_violates(
    law: &Law,
    reading: Reading,
    predicate: Predicate,
    ops: &Operands,
    tol: f64,
) -> bool {
    ops.with_refs(|refs| violates(law, reading, predicate, refs, tol)) == Some(true)
}

/// Greedy shrinking: repeatedly take the first simpler tuple that still
/// violates the law under the same reading and predicate.
pub fn shrink(
    law: &Law,
    reading: Reading,
    predicate: Predicate,
    mut ops: Operands,
    config: &CheckConfig,
) -> (Operands, u32) {
    let mut steps = 0;
    'outer: while steps < config.max_shrink_steps {
        for candidate in shrink_candidates(&ops, law.parameter_mode, config.grid_step) {
            if still_violates(law, reading, predicate, &candidate, config.tolerance) {
                ops = candidate;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    (ops, steps)
}

fn without(e: &Ivhfe, j: usize) -> Ivhfe {
    Ivhfe::new(
        e.intervals()
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, a)| *a),
    )
    .expect("only shrinks elements with two or more intervals")
}

fn snapped(e: &Ivhfe, step: f64) -> Option<Ivhfe> {
    let items: Vec<UnitInterval> = e
        .intervals()
        .iter()
        .map(|a| {
            let (l, u) = (snap(a.lower(), step), snap(a.upper(), step));
            UnitInterval::new(l.min(u), l.max(u)).expect("snapped endpoints stay in range")
        })
        .collect();
    let s = Ivhfe::new(items).expect("nonempty");
    (s != *e).then_some(s)
}

fn rebuild(
    f: &IvhfSoftSet,
    keep_param: impl Fn(&str) -> bool,
    keep_object: impl Fn(&str) -> bool,
    cell: impl Fn(&str, &str, &Ivhfe) -> Ivhfe,
) -> Option<IvhfSoftSet> {
    let universe: Vec<Ident> = f
        .universe()
        .iter()
        .filter(|o| keep_object(o))
        .cloned()
        .collect();
    let params: Vec<Ident> = f
        .parameters()
        .iter()
        .filter(|p| keep_param(p))
        .cloned()
        .collect();
    let rows = params
        .iter()
        .map(|p| {
            universe
                .iter()
                .map(|o| cell(p, o, f.get(p, o).expect("kept names exist")))
                .collect()
        })
        .collect();
    IvhfSoftSet::new(universe, params, rows).ok()
}

fn shrink_candidates(ops: &Operands, mode: ParameterMode, step: f64) -> Vec<Operands> {
    let mut out = Vec::new();
    match ops {
        Operands::Elements(es) => {
            for (i, e) in es.iter().enumerate() {
                for j in 0..e.len() {
                    if e.len() > 1 {
                        let mut next = es.clone();
                        next[i] = without(e, j);
                        out.push(Operands::Elements(next));
                    }
                }
            }
            let snapped_all: Vec<Ivhfe> = es
                .iter()
                .map(|e| snapped(e, step).unwrap_or_else(|| e.clone()))
                .collect();
            if snapped_all != *es {
                out.push(Operands::Elements(snapped_all));
            }
        }
        Operands::SoftSets(fs) => {
            let universe = fs[0].universe().to_vec();
            if universe.len() > 1 {
                for drop in &universe {
                    let next: Option<Vec<_>> = fs
                        .iter()
                        .map(|f| rebuild(f, |_| true, |o| o != &**drop, |_, _, c| c.clone()))
                        .collect();
                    out.extend(next.map(Operands::SoftSets));
                }
            }
            match mode {
                ParameterMode::Shared => {
                    if fs[0].parameters().len() > 1 {
                        for drop in fs[0].parameters() {
                            let next: Option<Vec<_>> = fs
                                .iter()
                                .map(|f| {
                                    rebuild(f, |p| p != &**drop, |_| true, |_, _, c| c.clone())
                                })
                                .collect();
                            out.extend(next.map(Operands::SoftSets));
                        }
                    }
                }
                ParameterMode::Mixed => {
                    for (i, f) in fs.iter().enumerate() {
                        if f.parameters().len() > 1 {
                            for drop in f.parameters() {
                                if let Some(g) =
                                    rebuild(f, |p| p != &**drop, |_| true, |_, _, c| c.clone())
                                {
                                    let mut next = fs.clone();
                                    next[i] = g;
                                    out.push(Operands::SoftSets(next));
                                }
                            }
                        }
                    }
                }
            }
            for (i, f) in fs.iter().enumerate() {
                for (p, row) in f.rows() {
                    for (o, cell) in f.universe().iter().zip(row) {
                        for j in 0..cell.len() {
                            if cell.len() > 1 {
                                let g = rebuild(
                                    f,
                                    |_| true,
                                    |_| true,
                                    |pp, oo, c| {
                                        if pp == &**p && oo == &**o {
                                            without(c, j)
                                        } else {
                                            c.clone()
                                        }
                                    },
                                );
                                if let Some(g) = g {
                                    let mut next = fs.clone();
                                    next[i] = g;
                                    out.push(Operands::SoftSets(next));
                                }
                            }
                        }
                    }
                }
            }
            let snapped_all: Option<Vec<_>> = fs
                .iter()
                .map(|f| {
                    rebuild(
                        f,
                        |_| true,
                        |_| true,
                        |_, _, c| snapped(c, step).unwrap_or_else(|| c.clone()),
                    )
                })
                .collect();
            if let Some(s) = snapped_all {
                let changed = s
                    .iter()
                    .zip(fs)
                    .any(|(a, b)| !a.strict_eq_within(b, 0.0).unwrap_or(false));
                if changed {
                    out.push(Operands::SoftSets(s));
                }
            }
        }
    }
    out
}
