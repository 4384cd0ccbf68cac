//! Properties of hesitant elements and their operations.

mod common;

use common::{el, iv};
use ivhfss::element::{
    align, apply_operator, compare_by_score, intersection, is_rank_sorted, ring_product, ring_sum,
    union,
};
use ivhfss::interval::ring_sum_kernel;
use ivhfss::laws::space::grid_elements;
use ivhfss::{AlignmentPolicy, CombineMode, Ivhfe, OperatorKind, Semantics, UnitInterval};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

const ALL_SEMANTICS: [Semantics; 4] = [
    Semantics::ALIGNED,
    Semantics::PAIRWISE,
    Semantics {
        mode: CombineMode::Aligned,
        policy: AlignmentPolicy::Pessimistic,
    },
    Semantics {
        mode: CombineMode::Pairwise,
        policy: AlignmentPolicy::Pessimistic,
    },
];

fn unit_interval() -> impl Strategy<Value = UnitInterval> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(x, y)| iv(x.min(y), x.max(y)))
}

fn element() -> impl Strategy<Value = Ivhfe> {
    prop::collection::vec(unit_interval(), 1..=4).prop_map(|v| Ivhfe::new(v).unwrap())
}

/// Elements whose intervals are points on the eighths grid.
fn point_element() -> impl Strategy<Value = Ivhfe> {
    prop::collection::vec(0..=8u32, 1..=4).prop_map(|v| {
        Ivhfe::new(v.into_iter().map(|k| iv(k as f64 / 8.0, k as f64 / 8.0))).unwrap()
    })
}

#[test]
fn aligned_union_is_not_associative_on_intervals() {
    let a = el(&[(0.0, 0.5)]);
    let b = el(&[(0.25, 0.25), (0.0, 0.75)]);
    let c = el(&[(0.0, 0.0), (0.0, 0.75)]);
    let s = Semantics::ALIGNED;
    let left = union(&a, &union(&b, &c, s), s);
    let right = union(&union(&a, &b, s), &c, s);
    assert!(left.strict_eq_within(&el(&[(0.0, 0.75), (0.25, 0.5)]), TOL));
    assert!(right.strict_eq_within(&el(&[(0.0, 0.75), (0.25, 0.75)]), TOL));
    assert!(!left.equivalent(&right));
}

#[test]
fn aligned_de_morgan_fails_at_rank_ties() {
    // [0, 0.5] and [0.25, 0.25] tie on midpoint, and so do their complements,
    // so complement keeps their order instead of reversing it
    let a = el(&[(0.0, 0.5), (0.25, 0.25)]);
    let b = el(&[(0.0, 0.0), (1.0, 1.0)]);
    let s = Semantics::ALIGNED;
    let lhs = union(&a, &b, s).complement();
    let rhs = intersection(&a.complement(), &b.complement(), s);
    assert!(!lhs.equivalent(&rhs), "{lhs:?} vs {rhs:?}");
    // the pairwise reading has no such problem
    let p = Semantics::PAIRWISE;
    assert!(union(&a, &b, p)
        .complement()
        .strict_eq_within(&intersection(&a.complement(), &b.complement(), p), TOL));
}

#[test]
fn pairwise_de_morgan_on_the_grid() {
    let grid = grid_elements(0.25, 2);
    let p = Semantics::PAIRWISE;
    for a in &grid {
        for b in &grid {
            let lhs = union(a, b, p).complement();
            let rhs = intersection(&a.complement(), &b.complement(), p);
            assert!(lhs.strict_eq_within(&rhs, 1e-12), "{a:?} {b:?}");
        }
    }
}

#[test]
fn padding_policies() {
    let short = el(&[(0.1, 0.2), (0.5, 0.9)]);
    let long = el(&[(0.0, 0.1), (0.2, 0.3), (0.4, 0.5), (0.6, 0.7)]);
    let (ps, pl) = align(&short, &long, AlignmentPolicy::Optimistic);
    assert_eq!(pl.as_slice(), long.intervals());
    assert_eq!(
        ps.as_slice(),
        &[iv(0.1, 0.2), iv(0.5, 0.9), iv(0.5, 0.9), iv(0.5, 0.9)]
    );
    let (ps, _) = align(&short, &long, AlignmentPolicy::Pessimistic);
    assert_eq!(
        ps.as_slice(),
        &[iv(0.1, 0.2), iv(0.1, 0.2), iv(0.1, 0.2), iv(0.5, 0.9)]
    );
}

#[test]
fn scores_order_elements() {
    let low = el(&[(0.1, 0.2), (0.2, 0.4)]);
    let high = el(&[(0.5, 0.9)]);
    assert!(low.score().approx_eq(&iv(0.15, 0.3), 1e-15));
    assert_eq!(compare_by_score(&low, &high), std::cmp::Ordering::Less);
}

proptest! {
    #[test]
    fn construction_sorts_and_is_idempotent(v in prop::collection::vec(unit_interval(), 1..=5)) {
        let e = Ivhfe::new(v.clone()).unwrap();
        prop_assert!(is_rank_sorted(e.intervals()));
        prop_assert_eq!(e.len(), v.len());
        let again = Ivhfe::new(e.intervals().to_vec()).unwrap();
        prop_assert_eq!(again, e);
    }

    #[test]
    fn union_and_intersection_commute(a in element(), b in element()) {
        for s in ALL_SEMANTICS {
            prop_assert!(union(&a, &b, s).strict_eq_within(&union(&b, &a, s), TOL));
            prop_assert!(intersection(&a, &b, s).strict_eq_within(&intersection(&b, &a, s), TOL));
        }
    }

    #[test]
    fn union_does_not_lower_the_score(a in element(), b in element()) {
        let s = Semantics::ALIGNED;
        let u = union(&a, &b, s);
        prop_assert!(u.score().midpoint() + 1e-12 >= a.score().midpoint());
        let i = intersection(&a, &b, Semantics { mode: CombineMode::Aligned, policy: AlignmentPolicy::Pessimistic });
        prop_assert!(i.score().midpoint() <= a.score().midpoint() + 1e-12);
    }

    #[test]
    fn ring_operations_commute(a in element(), b in element()) {
        prop_assert!(ring_sum(&a, &b).strict_eq_within(&ring_sum(&b, &a), TOL));
        prop_assert!(ring_product(&a, &b).strict_eq_within(&ring_product(&b, &a), TOL));
        for kind in OperatorKind::ALL {
            prop_assert!(apply_operator(kind, &a, &b).strict_eq_within(&apply_operator(kind, &b, &a), TOL));
        }
    }

    #[test]
    fn operator_results_stay_below_ring_sum(a in element(), b in element()) {
        // every generated interval is dominated by the ring sum of the pair behind it
        let top = ring_sum(&a, &b).largest();
        let bound = a.intervals().iter()
            .flat_map(|x| b.intervals().iter().map(move |y| ring_sum_kernel(x, y)))
            .fold(UnitInterval::ZERO, |acc, k| acc.join(&k));
        prop_assert!(top.le_within(&bound, 0.0));
        for kind in OperatorKind::ALL {
            for r in apply_operator(kind, &a, &b).intervals() {
                prop_assert!(r.le_within(&bound, 1e-15));
            }
        }
    }

    #[test]
    fn complement_is_an_involution(a in element()) {
        prop_assert!(a.complement().complement().strict_eq_within(&a, 1e-12));
    }

    #[test]
    fn strict_equality_implies_equivalence(a in element(), b in element()) {
        let u = union(&a, &b, Semantics::ALIGNED);
        let v = union(&b, &a, Semantics::ALIGNED);
        prop_assert!(!u.strict_eq(&v) || u.equivalent(&v));
        prop_assert!(a.dedup().equivalent(&a));
    }

    #[test]
    fn aligned_operations_associate_on_points(a in point_element(), b in point_element(), c in point_element()) {
        let s = Semantics::ALIGNED;
        prop_assert!(union(&a, &union(&b, &c, s), s).strict_eq_within(&union(&union(&a, &b, s), &c, s), TOL));
        prop_assert!(intersection(&a, &intersection(&b, &c, s), s)
            .strict_eq_within(&intersection(&intersection(&a, &b, s), &c, s), TOL));
    }

    #[test]
    fn pairwise_operations_associate(a in element(), b in element(), c in element()) {
        let s = Semantics::PAIRWISE;
        prop_assert!(union(&a, &union(&b, &c, s), s).equivalent_within(&union(&union(&a, &b, s), &c, s), TOL));
        prop_assert!(intersection(&a, &intersection(&b, &c, s), s)
            .equivalent_within(&intersection(&intersection(&a, &b, s), &c, s), TOL));
    }
}
