//! Soft sets whose values are hesitant elements: a table from parameters and
//! objects to [`Ivhfe`].

use std::fmt;
use std::sync::Arc;

use crate::element::{self, align, AlignmentPolicy, Ivhfe, Semantics, SetOp, DEDUP_TOL};
use crate::error::{Error, Result};
use crate::interval::OperatorKind;

pub type Ident = Arc<str>;

/// An interval-valued hesitant fuzzy soft set.
///
/// Parameters and objects keep their declared order. Cells are stored row
/// by row, one row per parameter.
#[derive(Clone)]
pub struct IvhfSoftSet {
    universe: Arc<[Ident]>,
    parameters: Vec<Ident>,
    cells: Vec<Ivhfe>,
}

fn check_unique(ids: &[Ident]) -> Result<()> {
    for (i, a) in ids.iter().enumerate() {
        if ids[..i].iter().any(|b| b == a) {
            return Err(Error::DuplicateIdentifier(a.to_string()));
        }
    }
    Ok(())
}

pub fn idents<S: AsRef<str>>(names: &[S]) -> Vec<Ident> {
    names.iter().map(|s| Ident::from(s.as_ref())).collect()
}

impl IvhfSoftSet {
    /// `rows[p][o]` is the value of parameter `p` at object `o`.
    pub fn new(
        universe: Vec<Ident>,
        parameters: Vec<Ident>,
        rows: Vec<Vec<Ivhfe>>,
    ) -> Result<Self> {
        Self::with_shared_universe(universe.into(), parameters, rows)
    }

    /// Like [`IvhfSoftSet::new`], reusing an existing universe allocation.
    /// Sets built over the same allocation skip the universe comparison.
    pub fn with_shared_universe(
        universe: Arc<[Ident]>,
        parameters: Vec<Ident>,
        rows: Vec<Vec<Ivhfe>>,
    ) -> Result<Self> {
        if rows.len() != parameters.len() {
            return Err(Error::TableShape {
                expected: parameters.len(),
                found: rows.len(),
            });
        }
        let n = universe.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::TableShape {
                expected: n,
                found: bad.len(),
            });
        }
        Self::from_cells(universe, parameters, rows.into_iter().flatten().collect())
    }

    pub fn from_fn<F>(universe: Vec<Ident>, parameters: Vec<Ident>, mut f: F) -> Result<Self>
    where
        F: FnMut(&str, &str) -> Ivhfe,
    {
        let mut cells = Vec::with_capacity(universe.len() * parameters.len());
        for p in &parameters {
            for o in &universe {
                cells.push(f(p, o));
            }
        }
        Self::from_cells(universe.into(), parameters, cells)
    }

    fn from_cells(
        universe: Arc<[Ident]>,
        parameters: Vec<Ident>,
        cells: Vec<Ivhfe>,
    ) -> Result<Self> {
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if parameters.is_empty() {
            return Err(Error::EmptyParameters);
        }
        check_unique(&universe)?;
        check_unique(&parameters)?;
        debug_assert_eq!(cells.len(), universe.len() * parameters.len());
        Ok(IvhfSoftSet {
            universe,
            parameters,
            cells,
        })
    }

    /// Internal constructor for results of operations on valid inputs.
    fn assemble(universe: Arc<[Ident]>, parameters: Vec<Ident>, cells: Vec<Ivhfe>) -> Self {
        IvhfSoftSet {
            universe,
            parameters,
            cells,
        }
    }

    pub fn universe(&self) -> &[Ident] {
        &self.universe
    }

    pub fn parameters(&self) -> &[Ident] {
        &self.parameters
    }

    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|p| &**p == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|o| &**o == name)
    }

    pub fn has_parameter(&self, name: &str) -> bool {
        self.parameter_index(name).is_some()
    }

    /// The values of one parameter, in universe order.
    pub fn row(&self, param: usize) -> &[Ivhfe] {
        let n = self.universe.len();
        &self.cells[param * n..(param + 1) * n]
    }

    pub fn get(&self, param: &str, object: &str) -> Option<&Ivhfe> {
        let p = self.parameter_index(param)?;
        let o = self.object_index(object)?;
        Some(&self.row(p)[o])
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Ident, &[Ivhfe])> {
        self.parameters
            .iter()
            .enumerate()
            .map(move |(i, p)| (p, self.row(i)))
    }

    fn map_cells(&self, f: impl Fn(&Ivhfe) -> Ivhfe) -> Self {
        Self::assemble(
            self.universe.clone(),
            self.parameters.clone(),
            self.cells.iter().map(f).collect(),
        )
    }

    /// Same parameter set (order ignored) and cellwise `cell_eq`.
    pub fn eq_with<F>(&self, other: &Self, cell_eq: F) -> Result<bool>
    where
        F: Fn(&Ivhfe, &Ivhfe) -> bool,
    {
        let map = ObjectMap::between(self, other)?;
        if self.parameters.len() != other.parameters.len() {
            return Ok(false);
        }
        for (p, row) in self.rows() {
            let Some(q) = other.parameter_index(p) else {
                return Ok(false);
            };
            let other_row = other.row(q);
            if !row
                .iter()
                .enumerate()
                .all(|(o, a)| cell_eq(a, &other_row[map.get(o)]))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn strict_eq_within(&self, other: &Self, tol: f64) -> Result<bool> {
        self.eq_with(other, |a, b| a.strict_eq_within(b, tol))
    }

    pub fn equivalent_within(&self, other: &Self, tol: f64) -> Result<bool> {
        self.eq_with(other, |a, b| a.equivalent_within(b, tol))
    }

    pub fn strict_eq(&self, other: &Self) -> Result<bool> {
        self.strict_eq_within(other, DEDUP_TOL)
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        self.equivalent_within(other, DEDUP_TOL)
    }
}

impl fmt::Debug for IvhfSoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (p, row) in self.rows() {
            for (o, cell) in self.universe.iter().zip(row) {
                m.entry(&format_args!("{p}/{o}"), cell);
            }
        }
        m.finish()
    }
}

/// Maps object positions of one soft set to positions in another over the
/// same universe.
enum ObjectMap {
    Identity,
    Permuted(Vec<usize>),
}

impl ObjectMap {
    fn between(f: &IvhfSoftSet, g: &IvhfSoftSet) -> Result<Self> {
        if Arc::ptr_eq(&f.universe, &g.universe) || f.universe == g.universe {
            return Ok(ObjectMap::Identity);
        }
        if f.universe.len() != g.universe.len() {
            return Err(Error::UniverseMismatch);
        }
        f.universe
            .iter()
            .map(|o| g.object_index(o).ok_or(Error::UniverseMismatch))
            .collect::<Result<Vec<_>>>()
            .map(ObjectMap::Permuted)
    }

    #[inline]
    fn get(&self, o: usize) -> usize {
        match self {
            ObjectMap::Identity => o,
            ObjectMap::Permuted(v) => v[o],
        }
    }
}

/// Builds a table over `f`'s universe with one cell per (parameter, object).
/// `cell(k, o)` receives the position of the parameter in `parameters`.
fn tabulate<F>(f: &IvhfSoftSet, parameters: Vec<Ident>, mut cell: F) -> IvhfSoftSet
where
    F: FnMut(usize, usize) -> Ivhfe,
{
    let n = f.universe.len();
    let mut cells = Vec::with_capacity(parameters.len() * n);
    for k in 0..parameters.len() {
        for o in 0..n {
            cells.push(cell(k, o));
        }
    }
    IvhfSoftSet::assemble(f.universe.clone(), parameters, cells)
}

fn combine_sets(
    f: &IvhfSoftSet,
    g: &IvhfSoftSet,
    op: SetOp,
    sem: Semantics,
) -> Result<IvhfSoftSet> {
    let map = ObjectMap::between(f, g)?;
    let parameters: Vec<Ident> = match op {
        SetOp::Union => f
            .parameters
            .iter()
            .chain(g.parameters.iter().filter(|p| !f.has_parameter(p)))
            .cloned()
            .collect(),
        SetOp::Intersection => {
            let shared: Vec<Ident> = f
                .parameters
                .iter()
                .filter(|p| g.has_parameter(p))
                .cloned()
                .collect();
            if shared.is_empty() {
                return Err(Error::EmptyParameterIntersection);
            }
            shared
        }
    };
    let sources: Vec<(Option<usize>, Option<usize>)> = parameters
        .iter()
        .map(|p| (f.parameter_index(p), g.parameter_index(p)))
        .collect();
    Ok(tabulate(f, parameters, |k, o| match sources[k] {
        (Some(i), Some(j)) => element::combine(&f.row(i)[o], &g.row(j)[map.get(o)], op, sem),
        (Some(i), None) => f.row(i)[o].clone(),
        (None, Some(j)) => g.row(j)[map.get(o)].clone(),
        (None, None) => unreachable!("result parameters come from the operands"),
    }))
}

/// Union over the union of the parameter sets. A parameter held by only one
/// operand keeps that operand's values.
pub fn soft_union(f: &IvhfSoftSet, g: &IvhfSoftSet, sem: Semantics) -> Result<IvhfSoftSet> {
    combine_sets(f, g, SetOp::Union, sem)
}

/// Intersection over the shared parameters.
pub fn soft_intersection(f: &IvhfSoftSet, g: &IvhfSoftSet, sem: Semantics) -> Result<IvhfSoftSet> {
    combine_sets(f, g, SetOp::Intersection, sem)
}

pub fn soft_complement(f: &IvhfSoftSet) -> IvhfSoftSet {
    f.map_cells(Ivhfe::complement)
}

pub fn empty_of(parameters: Vec<Ident>, universe: Vec<Ident>) -> Result<IvhfSoftSet> {
    IvhfSoftSet::from_fn(universe, parameters, |_, _| Ivhfe::empty())
}

pub fn full_of(parameters: Vec<Ident>, universe: Vec<Ident>) -> Result<IvhfSoftSet> {
    IvhfSoftSet::from_fn(universe, parameters, |_, _| Ivhfe::full())
}

/// The empty soft set with the parameters and universe of `f`.
pub fn empty_like(f: &IvhfSoftSet) -> IvhfSoftSet {
    f.map_cells(|_| Ivhfe::empty())
}

/// The full soft set with the parameters and universe of `f`.
pub fn full_like(f: &IvhfSoftSet) -> IvhfSoftSet {
    f.map_cells(|_| Ivhfe::full())
}

/// Slack allowed on endpoint comparisons in [`is_subset`].
pub const SUBSET_TOL: f64 = 1e-12;

/// `F` is a soft subset of `G`: every parameter of `F` belongs to `G`, and
/// after alignment each interval of `F`'s cell lies componentwise below the
/// interval at the same position in `G`'s cell.
pub fn is_subset(f: &IvhfSoftSet, g: &IvhfSoftSet, policy: AlignmentPolicy) -> Result<bool> {
    is_subset_within(f, g, policy, SUBSET_TOL)
}

/// [`is_subset`] with an explicit endpoint slack.
pub fn is_subset_within(
    f: &IvhfSoftSet,
    g: &IvhfSoftSet,
    policy: AlignmentPolicy,
    tol: f64,
) -> Result<bool> {
    let map = ObjectMap::between(f, g)?;
    for (p, row) in f.rows() {
        let Some(j) = g.parameter_index(p) else {
            return Ok(false);
        };
        let g_row = g.row(j);
        for (o, a) in row.iter().enumerate() {
            let (pa, pb) = align(a, &g_row[map.get(o)], policy);
            if !pa.iter().zip(&pb).all(|(x, y)| x.le_within(y, tol)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn same_parameters(f: &IvhfSoftSet, g: &IvhfSoftSet) -> bool {
    f.parameters.len() == g.parameters.len() && f.parameters.iter().all(|p| g.has_parameter(p))
}

fn cellwise<K>(f: &IvhfSoftSet, g: &IvhfSoftSet, kernel: K) -> Result<IvhfSoftSet>
where
    K: Fn(&Ivhfe, &Ivhfe) -> Ivhfe,
{
    let map = ObjectMap::between(f, g)?;
    let in_g: Vec<usize> = f
        .parameters
        .iter()
        .map(|p| g.parameter_index(p).expect("checked by caller"))
        .collect();
    Ok(tabulate(f, f.parameters.clone(), |k, o| {
        kernel(&f.row(k)[o], &g.row(in_g[k])[map.get(o)])
    }))
}

pub fn soft_ring_sum(f: &IvhfSoftSet, g: &IvhfSoftSet) -> Result<IvhfSoftSet> {
    if !same_parameters(f, g) {
        return Err(Error::ParameterMismatch);
    }
    cellwise(f, g, element::ring_sum)
}

pub fn soft_ring_product(f: &IvhfSoftSet, g: &IvhfSoftSet) -> Result<IvhfSoftSet> {
    if !same_parameters(f, g) {
        return Err(Error::ParameterMismatch);
    }
    cellwise(f, g, element::ring_product)
}

/// Applies an element operator cell by cell over the shared parameters.
pub fn soft_apply_operator(
    kind: OperatorKind,
    f: &IvhfSoftSet,
    g: &IvhfSoftSet,
) -> Result<IvhfSoftSet> {
    let map = ObjectMap::between(f, g)?;
    let shared: Vec<Ident> = f
        .parameters
        .iter()
        .filter(|p| g.has_parameter(p))
        .cloned()
        .collect();
    if shared.is_empty() {
        return Err(Error::EmptyParameterIntersection);
    }
    let rows: Vec<(usize, usize)> = shared
        .iter()
        .map(|p| {
            (
                f.parameter_index(p).expect("own parameter"),
                g.parameter_index(p).expect("shared"),
            )
        })
        .collect();
    Ok(tabulate(f, shared, |k, o| {
        let (i, j) = rows[k];
        element::apply_operator(kind, &f.row(i)[o], &g.row(j)[map.get(o)])
    }))
}

fn fold_family<'a, I>(
    family: I,
    step: impl Fn(&IvhfSoftSet, &IvhfSoftSet) -> Result<IvhfSoftSet>,
) -> Result<IvhfSoftSet>
where
    I: IntoIterator<Item = &'a IvhfSoftSet>,
{
    let mut it = family.into_iter();
    let first = it.next().ok_or(Error::EmptyFamily)?;
    it.try_fold(first.clone(), |acc, next| step(&acc, next))
}

/// Left fold of [`soft_union`] over a nonempty family.
pub fn family_union<'a, I>(family: I, sem: Semantics) -> Result<IvhfSoftSet>
where
    I: IntoIterator<Item = &'a IvhfSoftSet>,
{
    fold_family(family, |a, b| soft_union(a, b, sem))
}

/// Left fold of [`soft_intersection`] over a nonempty family.
pub fn family_intersection<'a, I>(family: I, sem: Semantics) -> Result<IvhfSoftSet>
where
    I: IntoIterator<Item = &'a IvhfSoftSet>,
{
    fold_family(family, |a, b| soft_intersection(a, b, sem))
}
