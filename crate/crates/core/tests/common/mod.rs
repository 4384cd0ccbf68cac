//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use ivhfss::document;
use ivhfss::element::Ivhfe;
use ivhfss::soft::IvhfSoftSet;
use ivhfss::UnitInterval;

/// Golden comparisons allow this much endpoint drift.
pub const GOLDEN_TOL: f64 = 1e-9;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(format!("{name}.json"))
}

pub fn read_text(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

pub fn load(name: &str) -> IvhfSoftSet {
    document::parse(&read_text(name))
        .unwrap_or_else(|e| panic!("parsing {name}: {e}"))
        .soft_set
}

pub fn iv(l: f64, u: f64) -> UnitInterval {
    UnitInterval::new(l, u).unwrap()
}

pub fn el(pairs: &[(f64, f64)]) -> Ivhfe {
    Ivhfe::from_pairs(pairs).unwrap()
}

/// Cells of `actual` and `expected` that differ as interval multisets,
/// as `param/object` labels. Parameter or universe differences count as a
/// single `shape` entry.
pub fn cell_diff(actual: &IvhfSoftSet, expected: &IvhfSoftSet, tol: f64) -> Vec<String> {
    let same_params = {
        let mut a: Vec<_> = actual.parameters().to_vec();
        let mut b: Vec<_> = expected.parameters().to_vec();
        a.sort();
        b.sort();
        a == b
    };
    let same_objects = {
        let mut a: Vec<_> = actual.universe().to_vec();
        let mut b: Vec<_> = expected.universe().to_vec();
        a.sort();
        b.sort();
        a == b
    };
    if !same_params || !same_objects {
        return vec!["shape".to_string()];
    }
    let mut out = Vec::new();
    for p in expected.parameters() {
        for o in expected.universe() {
            let (a, b) = (actual.get(p, o).unwrap(), expected.get(p, o).unwrap());
            if !a.strict_eq_within(b, tol) {
                out.push(format!("{p}/{o}"));
            }
        }
    }
    out
}

pub fn matches_golden(actual: &IvhfSoftSet, name: &str) -> bool {
    cell_diff(actual, &load(name), GOLDEN_TOL).is_empty()
}

/// Every golden document shipped with the tests.
pub fn golden_names() -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| {
            let path = e.ok()?.path();
            if path.extension()? != "json" {
                return None;
            }
            Some(path.file_stem()?.to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}
