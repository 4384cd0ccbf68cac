//! Operand tuples: exhaustive grid enumeration and seeded random draws.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use smallvec::SmallVec;

use super::registry::{Law, Level, ParameterMode};
use crate::element::{Intervals, Ivhfe};
use crate::interval::UnitInterval;
use crate::soft::{Ident, IvhfSoftSet};

/// Points `0, step, 2 step, ..., 1`. When `1 / step` is (nearly) an integer
/// `n` the points are computed as `k / n` so that decimal grids land on the
/// nearest doubles.
pub fn grid_values(step: f64) -> Vec<f64> {
    let n = (1.0 / step).round();
    if n >= 1.0 && (n * step - 1.0).abs() < 1e-9 {
        let n = n as u32;
        return (0..=n).map(|k| k as f64 / n as f64).collect();
    }
    let mut out: Vec<f64> = (0..)
        .map(|k| k as f64 * step)
        .take_while(|&x| x < 1.0)
        .collect();
    out.push(1.0);
    out
}

pub fn grid_intervals(step: f64) -> Vec<UnitInterval> {
    let vals = grid_values(step);
    let mut out = Vec::new();
    for (i, &l) in vals.iter().enumerate() {
        for &u in &vals[i..] {
            out.push(UnitInterval::new(l, u).expect("grid points lie in [0, 1]"));
        }
    }
    out
}

/// Every multiset of grid intervals with 1 to `max_size` members, smaller
/// sizes first.
pub fn grid_elements(step: f64, max_size: usize) -> Vec<Ivhfe> {
    let ivs = grid_intervals(step);
    let mut out = Vec::new();
    for size in 1..=max_size {
        let mut idx = vec![0usize; size];
        loop {
            out.push(Ivhfe::new(idx.iter().map(|&i| ivs[i])).expect("nonempty"));
            // next nondecreasing index tuple
            match (0..size).rev().find(|&k| idx[k] + 1 < ivs.len()) {
                Some(k) => {
                    let v = idx[k] + 1;
                    idx[k..].fill(v);
                }
                None => break,
            }
        }
    }
    out
}

pub fn snap(x: f64, step: f64) -> f64 {
    ((x / step).round() * step).clamp(0.0, 1.0)
}

pub fn param_names(n: usize) -> Vec<Ident> {
    (1..=n).map(|i| Ident::from(format!("e{i}"))).collect()
}

pub fn object_names(n: usize) -> Vec<Ident> {
    (1..=n).map(|i| Ident::from(format!("h{i}"))).collect()
}

/// A concrete operand tuple.
#[derive(Clone, Debug)]
pub enum Operands {
    Elements(Vec<Ivhfe>),
    SoftSets(Vec<IvhfSoftSet>),
}

/// Borrowed view of an operand tuple.
#[derive(Clone, Copy)]
pub enum OperandRefs<'a> {
    Elements(&'a [&'a Ivhfe]),
    SoftSets(&'a [&'a IvhfSoftSet]),
}

/// The exhaustive grid space for one law.
///
/// Element laws range over all tuples of grid elements. Soft laws use one
/// object and, per operand, a cell for parameter `e1`. Soft operations act
/// cell by cell, so a single cell suffices for shared-parameter laws. For
/// mixed-parameter laws each nonempty subset of operands takes turns holding
/// `e1`; every operand also holds `e2` with the filler value `{[0.5, 0.5]}`
/// so that intersections stay defined.
pub struct GridSpace {
    elements: Vec<Ivhfe>,
    arity: usize,
    kind: GridKind,
}

enum GridKind {
    Element,
    Shared {
        sets: Vec<IvhfSoftSet>,
    },
    Mixed {
        with_e1: Vec<IvhfSoftSet>,
        without_e1: Option<IvhfSoftSet>,
        blocks: Vec<(u32, u64)>,
    },
}

impl GridSpace {
    pub fn new(law: &Law, step: f64, max_size: usize, max_parameters: usize) -> Self {
        let elements = grid_elements(step, max_size);
        let arity = law.arity;
        let universe: Arc<[Ident]> = object_names(1).into();
        let kind = match (law.level, law.parameter_mode) {
            (Level::Element, _) => GridKind::Element,
            (Level::Soft, ParameterMode::Shared) => GridKind::Shared {
                sets: elements
                    .iter()
                    .map(|e| single_cell_set(&universe, &["e1"], std::slice::from_ref(e)))
                    .collect(),
            },
            (Level::Soft, ParameterMode::Mixed) => {
                let filler = Ivhfe::singleton(UnitInterval::point(0.5).expect("in range"));
                let two = max_parameters >= 2;
                let with_e1 = elements
                    .iter()
                    .map(|e| {
                        if two {
                            single_cell_set(&universe, &["e1", "e2"], &[e.clone(), filler.clone()])
                        } else {
                            single_cell_set(&universe, &["e1"], std::slice::from_ref(e))
                        }
                    })
                    .collect();
                let without_e1 =
                    two.then(|| single_cell_set(&universe, &["e2"], std::slice::from_ref(&filler)));
                let n = elements.len() as u64;
                let full: u32 = (1u32 << arity) - 1;
                let blocks = (1..=full)
                    .filter(|&mask| two || mask == full)
                    .map(|mask| (mask, n.pow(mask.count_ones())))
                    .collect();
                GridKind::Mixed {
                    with_e1,
                    without_e1,
                    blocks,
                }
            }
        };
        GridSpace {
            elements,
            arity,
            kind,
        }
    }

    pub fn len(&self) -> u128 {
        let n = self.elements.len() as u128;
        match &self.kind {
            GridKind::Element | GridKind::Shared { .. } => n.pow(self.arity as u32),
            GridKind::Mixed { blocks, .. } => blocks.iter().map(|&(_, b)| b as u128).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn digits(&self, mut index: u64, count: usize) -> SmallVec<[usize; 3]> {
        let n = self.elements.len() as u64;
        let mut out = SmallVec::new();
        for _ in 0..count {
            out.push((index % n) as usize);
            index /= n;
        }
        out
    }

    /// Calls `f` with the operand tuple at `index`.
    pub fn with_operands<R>(&self, index: u64, f: impl FnOnce(OperandRefs<'_>) -> R) -> R {
        match &self.kind {
            GridKind::Element => {
                let refs: SmallVec<[&Ivhfe; 3]> = self
                    .digits(index, self.arity)
                    .into_iter()
                    .map(|d| &self.elements[d])
                    .collect();
                f(OperandRefs::Elements(&refs))
            }
            GridKind::Shared { sets } => {
                let refs: SmallVec<[&IvhfSoftSet; 3]> = self
                    .digits(index, self.arity)
                    .into_iter()
                    .map(|d| &sets[d])
                    .collect();
                f(OperandRefs::SoftSets(&refs))
            }
            GridKind::Mixed {
                with_e1,
                without_e1,
                blocks,
            } => {
                let mut rest = index;
                let &(mask, _) = blocks
                    .iter()
                    .find(|&&(_, size)| {
                        if rest < size {
                            true
                        } else {
                            rest -= size;
                            false
                        }
                    })
                    .expect("index within the space");
                let digits = self.digits(rest, mask.count_ones() as usize);
                let mut next = digits.into_iter();
                let refs: SmallVec<[&IvhfSoftSet; 3]> = (0..self.arity)
                    .map(|k| {
                        if mask & (1 << k) != 0 {
                            &with_e1[next.next().expect("one digit per member")]
                        } else {
                            without_e1
                                .as_ref()
                                .expect("present whenever a mask omits an operand")
                        }
                    })
                    .collect();
                f(OperandRefs::SoftSets(&refs))
            }
        }
    }

    pub fn operands(&self, index: u64) -> Operands {
        self.with_operands(index, |refs| refs.to_owned())
    }
}

impl OperandRefs<'_> {
    pub fn to_owned(self) -> Operands {
        match self {
            OperandRefs::Elements(es) => {
                Operands::Elements(es.iter().map(|&e| e.clone()).collect())
            }
            OperandRefs::SoftSets(fs) => {
                Operands::SoftSets(fs.iter().map(|&f| f.clone()).collect())
            }
        }
    }
}

impl Operands {
    pub fn with_refs<R>(&self, f: impl FnOnce(OperandRefs<'_>) -> R) -> R {
        match self {
            Operands::Elements(es) => {
                let refs: SmallVec<[&Ivhfe; 3]> = es.iter().collect();
                f(OperandRefs::Elements(&refs))
            }
            Operands::SoftSets(fs) => {
                let refs: SmallVec<[&IvhfSoftSet; 3]> = fs.iter().collect();
                f(OperandRefs::SoftSets(&refs))
            }
        }
    }
}

fn single_cell_set(universe: &Arc<[Ident]>, params: &[&str], cells: &[Ivhfe]) -> IvhfSoftSet {
    let rows = cells.iter().map(|c| vec![c.clone()]).collect();
    IvhfSoftSet::with_shared_universe(
        universe.clone(),
        params.iter().map(|&p| Ident::from(p)).collect(),
        rows,
    )
    .expect("well-formed single-object set")
}

/// Bounds for random operand draws.
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub grid_step: f64,
    pub max_element_size: usize,
    pub max_parameters: usize,
    pub max_objects: usize,
}

/// A random element. Half the draws use grid endpoints so that rank ties
/// keep turning up; the rest are continuous.
pub fn random_element<R: Rng>(rng: &mut R, shape: &RandomShape) -> Ivhfe {
    let size = rng.gen_range(1..=shape.max_element_size.max(1));
    let on_grid = rng.gen_bool(0.5);
    let grid = grid_values(shape.grid_step);
    let draw = |rng: &mut R| {
        if on_grid {
            *grid.choose(rng).expect("grid is nonempty")
        } else {
            rng.gen::<f64>()
        }
    };
    let items: Intervals = (0..size)
        .map(|_| {
            let (a, b) = (draw(rng), draw(rng));
            UnitInterval::new(a.min(b), a.max(b)).expect("draws lie in [0, 1]")
        })
        .collect();
    Ivhfe::new(items).expect("nonempty")
}

fn random_subset<R: Rng>(rng: &mut R, pool: &[Ident]) -> Vec<Ident> {
    loop {
        let picked: Vec<Ident> = pool.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !picked.is_empty() {
            return picked;
        }
    }
}

pub fn random_operands<R: Rng>(rng: &mut R, law: &Law, shape: &RandomShape) -> Operands {
    match law.level {
        Level::Element => {
            Operands::Elements((0..law.arity).map(|_| random_element(rng, shape)).collect())
        }
        Level::Soft => {
            let pool = param_names(shape.max_parameters.max(1));
            let universe = object_names(rng.gen_range(1..=shape.max_objects.max(1)));
            let shared = random_subset(rng, &pool);
            let sets = (0..law.arity)
                .map(|_| {
                    let params = match law.parameter_mode {
                        ParameterMode::Shared => shared.clone(),
                        ParameterMode::Mixed => random_subset(rng, &pool),
                    };
                    IvhfSoftSet::from_fn(universe.clone(), params, |_, _| {
                        random_element(rng, shape)
                    })
                    .expect("nonempty names")
                })
                .collect();
            Operands::SoftSets(sets)
        }
    }
}
