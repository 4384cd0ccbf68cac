//! Soft-set properties on random tables over a fixed universe.

mod common;

use common::load;
use ivhfss::soft::{
    empty_like, family_intersection, family_union, full_like, idents, is_subset,
    soft_apply_operator, soft_complement, soft_intersection, soft_ring_product, soft_ring_sum,
    soft_union,
};
use ivhfss::{AlignmentPolicy, Error, IvhfSoftSet, Ivhfe, OperatorKind, Semantics, UnitInterval};
use proptest::prelude::*;

const TOL: f64 = 1e-9;
const OBJECTS: [&str; 2] = ["h1", "h2"];
const PARAMS: [&str; 3] = ["e1", "e2", "e3"];

fn element() -> impl Strategy<Value = Ivhfe> {
    prop::collection::vec((0.0..=1.0f64, 0.0..=1.0f64), 1..=3).prop_map(|v| {
        Ivhfe::new(
            v.into_iter()
                .map(|(x, y)| UnitInterval::new(x.min(y), x.max(y)).unwrap()),
        )
        .unwrap()
    })
}

/// A soft set over `h1, h2` with a nonempty subset of `e1..e3`.
fn soft_set() -> impl Strategy<Value = IvhfSoftSet> {
    (1u8..8, prop::collection::vec(element(), 6)).prop_map(|(mask, cells)| {
        let params: Vec<&str> = PARAMS
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .collect();
        let rows = (0..params.len())
            .map(|k| cells[2 * k..2 * k + 2].to_vec())
            .collect();
        IvhfSoftSet::new(idents(&OBJECTS), idents(&params), rows).unwrap()
    })
}

/// Same parameters as `f`, fresh cells.
fn sibling(f: &IvhfSoftSet, cells: &[Ivhfe]) -> IvhfSoftSet {
    let rows = (0..f.parameters().len())
        .map(|k| cells[2 * k..2 * k + 2].to_vec())
        .collect();
    IvhfSoftSet::new(f.universe().to_vec(), f.parameters().to_vec(), rows).unwrap()
}

fn rename(f: &IvhfSoftSet, suffix: &str) -> IvhfSoftSet {
    let params = f
        .parameters()
        .iter()
        .map(|p| format!("{p}{suffix}"))
        .collect::<Vec<_>>();
    IvhfSoftSet::new(
        f.universe().to_vec(),
        idents(&params),
        f.rows().map(|(_, r)| r.to_vec()).collect(),
    )
    .unwrap()
}

#[test]
fn operations_report_structural_errors() {
    let f = load("f_a");
    let g = load("g_b");
    assert!(matches!(
        soft_ring_sum(&f, &g),
        Err(Error::ParameterMismatch)
    ));
    assert!(matches!(
        soft_ring_product(&f, &g),
        Err(Error::ParameterMismatch)
    ));
    let disjoint = rename(&f, "x");
    assert!(matches!(
        soft_intersection(&f, &disjoint, Semantics::ALIGNED),
        Err(Error::EmptyParameterIntersection)
    ));
    assert!(matches!(
        soft_apply_operator(OperatorKind::O1, &f, &disjoint),
        Err(Error::EmptyParameterIntersection)
    ));
    let other = IvhfSoftSet::new(
        idents(&["h1", "h3"]),
        f.parameters().to_vec(),
        f.rows().map(|(_, r)| r.to_vec()).collect(),
    )
    .unwrap();
    assert!(matches!(
        soft_union(&f, &other, Semantics::ALIGNED),
        Err(Error::UniverseMismatch)
    ));
    let none: [IvhfSoftSet; 0] = [];
    assert!(matches!(
        family_union(&none, Semantics::ALIGNED),
        Err(Error::EmptyFamily)
    ));
}

#[test]
fn re_sorting_breaks_intersection_below_union() {
    // meet and join are componentwise ordered pair by pair, but each result
    // is re-sorted by rank, which can pair them up differently
    let f = common::el(&[(0.0, 0.8), (0.44, 0.47)]);
    let g = common::el(&[(0.15, 0.25), (0.2, 0.5)]);
    let one = |e: Ivhfe| IvhfSoftSet::new(idents(&["h1"]), idents(&["e1"]), vec![vec![e]]).unwrap();
    let s = Semantics::ALIGNED;
    let i = soft_intersection(&one(f.clone()), &one(g.clone()), s).unwrap();
    let u = soft_union(&one(f), &one(g), s).unwrap();
    assert!(!is_subset(&i, &u, AlignmentPolicy::Optimistic).unwrap());
}

#[test]
fn operator_keeps_only_shared_parameters() {
    let f = load("f_a");
    let g = load("g_b");
    let h = soft_apply_operator(OperatorKind::O3, &f, &g).unwrap();
    assert_eq!(h.parameters().len(), 2);
    assert_eq!(h.get("e1", "h1").unwrap().len(), 2);
}

proptest! {
    #[test]
    fn union_and_intersection_commute(f in soft_set(), g in soft_set()) {
        for s in [Semantics::ALIGNED, Semantics::PAIRWISE] {
            let (a, b) = (soft_union(&f, &g, s).unwrap(), soft_union(&g, &f, s).unwrap());
            prop_assert!(a.strict_eq_within(&b, TOL).unwrap());
            match (soft_intersection(&f, &g, s), soft_intersection(&g, &f, s)) {
                (Ok(a), Ok(b)) => prop_assert!(a.strict_eq_within(&b, TOL).unwrap()),
                (Err(Error::EmptyParameterIntersection), Err(Error::EmptyParameterIntersection)) => {}
                other => prop_assert!(false, "{other:?}"),
            }
        }
    }

    #[test]
    fn complement_is_an_involution(f in soft_set()) {
        prop_assert!(soft_complement(&soft_complement(&f)).strict_eq_within(&f, 1e-12).unwrap());
    }

    #[test]
    fn bounds_and_inclusions(f in soft_set(), cells in prop::collection::vec(element(), 6)) {
        let p = AlignmentPolicy::Optimistic;
        prop_assert!(is_subset(&f, &f, p).unwrap());
        prop_assert!(is_subset(&empty_like(&f), &f, p).unwrap());
        prop_assert!(is_subset(&f, &full_like(&f), p).unwrap());
        let g = sibling(&f, &cells);
        let s = Semantics::ALIGNED;
        let (i, u) = (soft_intersection(&f, &g, s).unwrap(), soft_union(&f, &g, s).unwrap());
        for (pname, row) in i.rows() {
            for (o, cell) in i.universe().iter().zip(row) {
                let top = u.get(pname, o).unwrap();
                prop_assert!(cell.score().midpoint() <= top.score().midpoint() + 1e-12);
            }
        }
        prop_assert!(soft_union(&f, &empty_like(&f), s).unwrap().strict_eq_within(&f, TOL).unwrap());
        prop_assert!(soft_intersection(&f, &full_like(&f), s).unwrap().strict_eq_within(&f, TOL).unwrap());
    }

    #[test]
    fn pairwise_de_morgan(f in soft_set(), cells in prop::collection::vec(element(), 6)) {
        let g = sibling(&f, &cells);
        let s = Semantics::PAIRWISE;
        let lhs = soft_complement(&soft_union(&f, &g, s).unwrap());
        let rhs = soft_intersection(&soft_complement(&f), &soft_complement(&g), s).unwrap();
        prop_assert!(lhs.strict_eq_within(&rhs, 1e-12).unwrap());
    }

    #[test]
    fn family_folds_agree_with_pairwise_steps(f in soft_set(), g in soft_set(), h in soft_set()) {
        let s = Semantics::ALIGNED;
        let folded = family_union([&f, &g, &h], s).unwrap();
        let stepwise = soft_union(&soft_union(&f, &g, s).unwrap(), &h, s).unwrap();
        prop_assert!(folded.strict_eq(&stepwise).unwrap());
        if let Ok(i) = family_intersection([&f, &g, &h], s) {
            for p in i.parameters() {
                prop_assert!(f.has_parameter(p) && g.has_parameter(p) && h.has_parameter(p));
            }
        }
    }

    #[test]
    fn ring_operations_commute(f in soft_set(), cells in prop::collection::vec(element(), 6)) {
        let g = sibling(&f, &cells);
        prop_assert!(soft_ring_sum(&f, &g).unwrap().strict_eq_within(&soft_ring_sum(&g, &f).unwrap(), TOL).unwrap());
        prop_assert!(soft_ring_product(&f, &g).unwrap().strict_eq_within(&soft_ring_product(&g, &f).unwrap(), TOL).unwrap());
    }
}
