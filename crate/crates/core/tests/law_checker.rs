//! The law registry and the counterexample search.

use ivhfss::laws::check::random_trial;
use ivhfss::laws::space::Operands;
use ivhfss::laws::{
    check_law, check_law_exhaustive, find, registry, replay, run_suite, CheckConfig,
    Counterexample, Level, ParameterMode, Predicate, Reading, Relation, Status,
};
use ivhfss::Error;

fn quick() -> CheckConfig {
    CheckConfig {
        grid_step: 0.5,
        random_trials: 200,
        ..CheckConfig::default()
    }
}

#[test]
fn registry_counts_per_group() {
    let laws = registry();
    assert_eq!(laws.len(), 54);
    let count = |prefix: &str| {
        laws.iter()
            .filter(|l| l.id.starts_with(&format!("{prefix}.")))
            .count()
    };
    let expected = [
        ("P2.12", 2),
        ("P3.5", 6),
        ("P3.6", 2),
        ("P3.7", 4),
        ("P3.8", 4),
        ("P3.9", 4),
        ("P3.10", 2),
        ("P3.11", 2),
        ("P3.16", 2),
        ("P3.17", 2),
        ("P4.2", 6),
        ("P4.3", 6),
        ("P4.4", 6),
        ("P4.5", 6),
    ];
    for (prefix, n) in expected {
        assert_eq!(count(prefix), n, "{prefix}");
    }
    let mut ids: Vec<_> = laws.iter().map(|l| l.id.clone()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 54);
}

#[test]
fn registry_metadata() {
    let p36 = find("P3.6.i").unwrap();
    assert_eq!(
        (p36.level, p36.parameter_mode, p36.relation),
        (Level::Soft, ParameterMode::Shared, Relation::Equal)
    );
    assert_eq!(find("P3.7.i").unwrap().relation, Relation::Subset);
    assert_eq!(
        find("P3.11.i").unwrap().parameter_mode,
        ParameterMode::Mixed
    );
    assert_eq!(find("P4.2.iii").unwrap().level, Level::Element);
    assert_eq!(find("P4.5.v").unwrap().arity, 3);
    assert!(find("P5.1.i").is_none());
}

#[test]
fn grid_counterexample_for_the_ring_product_identity() {
    let law = find("P4.2.iii").unwrap();
    let cx: Counterexample = serde_json::from_value(serde_json::json!({
        "reading": "lifted",
        "predicate": "equivalent",
        "operands": [[[0.5, 0.5]], [[0.0, 0.0]]],
        "lhs": null,
        "rhs": null,
    }))
    .unwrap();
    assert!(replay(&law, &cx, 1e-12).unwrap());
    let report = check_law(&law, &CheckConfig::default()).unwrap();
    assert_eq!(report.status, Status::Violated);
    assert!(replay(&law, report.counterexample.as_ref().unwrap(), 1e-12).unwrap());
}

#[test]
fn violated_reports_replay_under_every_reading() {
    for id in ["P3.11.i", "P3.7.iii", "P4.3.v", "P2.12.i"] {
        let law = find(id).unwrap();
        let report = check_law(&law, &quick()).unwrap();
        for r in &report.readings {
            if let Some(cx) = &r.counterexample {
                assert_eq!(r.status, Status::Violated, "{id}");
                assert!(replay(&law, cx, 1e-12).unwrap(), "{id} {:?}", r.reading);
            }
            if let Some(cx) = &r.strict_counterexample {
                assert_eq!(cx.predicate, Predicate::Strict);
                assert!(replay(&law, cx, 1e-12).unwrap(), "{id} strict");
            }
        }
    }
}

#[test]
fn shrinking_reaches_small_operands() {
    let law = find("P3.11.i").unwrap();
    let report = check_law(&law, &CheckConfig::default()).unwrap();
    let cx = report.counterexample.unwrap();
    let Operands::SoftSets(fs) = cx.operands(Level::Soft).unwrap() else {
        panic!("soft law")
    };
    for f in &fs {
        assert_eq!(f.universe().len(), 1);
        for (_, row) in f.rows() {
            assert!(row.iter().all(|e| e.len() <= 2));
        }
    }
}

#[test]
fn a_violation_under_equivalence_is_also_a_strict_violation() {
    let law = find("P3.11.i").unwrap();
    let report = check_law(&law, &CheckConfig::default()).unwrap();
    let mut cx = report.counterexample.unwrap();
    cx.predicate = Predicate::Strict;
    assert!(replay(&law, &cx, 1e-12).unwrap());
}

#[test]
fn readings_are_tried_in_order() {
    assert_eq!(
        Reading::order(Level::Soft),
        &[Reading::Aligned, Reading::Pairwise]
    );
    let report = check_law(&find("P3.6.i").unwrap(), &quick()).unwrap();
    assert_eq!(report.readings[0].reading, Reading::Aligned);
    assert_eq!(report.reading, Reading::Pairwise);
    assert_eq!(report.status, Status::Holds);
}

#[test]
fn parallel_and_sequential_suites_agree() {
    let par = run_suite(&CheckConfig {
        parallel: true,
        ..quick()
    })
    .unwrap();
    let seq = run_suite(&CheckConfig {
        parallel: false,
        ..quick()
    })
    .unwrap();
    assert_eq!(par.len(), 54);
    assert_eq!(
        serde_json::to_string(&par).unwrap(),
        serde_json::to_string(&seq).unwrap()
    );
    let again = run_suite(&CheckConfig {
        parallel: true,
        ..quick()
    })
    .unwrap();
    assert_eq!(
        serde_json::to_string(&par).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
}

#[test]
fn random_trials_depend_only_on_seed_law_and_index() {
    let law = find("P3.9.iii").unwrap();
    let config = CheckConfig::default();
    let a = random_trial(&law, &config, 17);
    let b = random_trial(&law, &config, 17);
    let other = random_trial(
        &law,
        &CheckConfig {
            seed: 1,
            ..config.clone()
        },
        17,
    );
    let json = |o: &Operands| match o {
        Operands::SoftSets(fs) => fs
            .iter()
            .map(ivhfss::document::to_exact_value)
            .collect::<Vec<_>>(),
        Operands::Elements(es) => es
            .iter()
            .map(ivhfss::document::element_to_exact_value)
            .collect(),
    };
    assert_eq!(json(&a), json(&b));
    assert_ne!(json(&a), json(&other));
}

#[test]
fn oversized_grids_fall_back_to_trials() {
    let law = find("P3.9.iii").unwrap();
    let tight = CheckConfig {
        enumeration_budget: 10,
        random_trials: 300,
        ..CheckConfig::default()
    };
    assert!(matches!(
        check_law_exhaustive(&law, &tight),
        Err(Error::BudgetExceeded { .. })
    ));
    let report = check_law(&law, &tight).unwrap();
    assert_eq!(report.status, Status::HoldsOnTrials);
    assert!(report.readings.iter().all(|r| !r.exhaustive));
}

#[test]
fn invalid_configs_are_rejected() {
    let law = find("P3.5.i").unwrap();
    for bad in [
        CheckConfig {
            grid_step: 0.0,
            ..CheckConfig::default()
        },
        CheckConfig {
            grid_step: 1.5,
            ..CheckConfig::default()
        },
        CheckConfig {
            max_element_size: 0,
            ..CheckConfig::default()
        },
        CheckConfig {
            tolerance: -1.0,
            ..CheckConfig::default()
        },
    ] {
        assert!(matches!(
            check_law(&law, &bad),
            Err(Error::InvalidConfig(_))
        ));
    }
}

#[test]
fn reports_round_trip_through_json() {
    let report = check_law(&find("P4.4.iii").unwrap(), &quick()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: ivhfss::laws::LawReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in [
        "law_id",
        "status",
        "trials_run",
        "equality_used",
        "counterexample",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
}
