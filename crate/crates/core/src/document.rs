//! JSON interchange format for soft sets.
//!
//! ```json
//! {
//!   "universe": ["h1", "h2"],
//!   "parameters": ["e1"],
//!   "values": { "e1": { "h1": [[0.3, 0.8]], "h2": [[0.2, 0.4], [0.5, 0.6]] } }
//! }
//! ```
//!
//! Output is canonical: declared order for parameters and objects, rank
//! order inside each cell, and numbers rounded to 12 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::error::Category;

use crate::element::{is_rank_sorted, Ivhfe};
use crate::error::{Error, Result};
use crate::interval::UnitInterval;
use crate::soft::{idents, Ident, IvhfSoftSet};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    universe: Vec<String>,
    parameters: Vec<String>,
    values: BTreeMap<String, BTreeMap<String, Vec<[f64; 2]>>>,
}

/// A parsed document plus anything worth telling the user about it.
#[derive(Debug)]
pub struct Parsed {
    pub soft_set: IvhfSoftSet,
    pub warnings: Vec<String>,
}

fn classify(e: serde_json::Error) -> Error {
    match e.classify() {
        Category::Data => Error::Schema(e.to_string()),
        _ => Error::Parse(e),
    }
}

pub fn parse(text: &str) -> Result<Parsed> {
    let raw: RawDocument = serde_json::from_str(text).map_err(classify)?;
    from_raw(raw)
}

pub fn parse_value(value: serde_json::Value) -> Result<Parsed> {
    let raw: RawDocument = serde_json::from_value(value).map_err(classify)?;
    from_raw(raw)
}

fn from_raw(raw: RawDocument) -> Result<Parsed> {
    let schema = |msg: String| Error::Schema(msg);
    if raw.universe.is_empty() {
        return Err(schema("`universe` is empty".into()));
    }
    if raw.parameters.is_empty() {
        return Err(schema("`parameters` is empty".into()));
    }
    if let Some(extra) = raw.values.keys().find(|k| !raw.parameters.contains(k)) {
        return Err(schema(format!(
            "`values` has undeclared parameter `{extra}`"
        )));
    }
    let mut warnings = Vec::new();
    let mut rows = Vec::with_capacity(raw.parameters.len());
    for p in &raw.parameters {
        let row = raw
            .values
            .get(p)
            .ok_or_else(|| schema(format!("no values for parameter `{p}`")))?;
        if let Some(extra) = row.keys().find(|k| !raw.universe.contains(k)) {
            return Err(schema(format!(
                "parameter `{p}` has undeclared object `{extra}`"
            )));
        }
        let mut cells = Vec::with_capacity(raw.universe.len());
        for o in &raw.universe {
            let pairs = row
                .get(o)
                .ok_or_else(|| schema(format!("no value for parameter `{p}`, object `{o}`")))?;
            if pairs.is_empty() {
                return Err(schema(format!("empty interval list at `{p}`/`{o}`")));
            }
            let intervals = pairs
                .iter()
                .map(|&[l, u]| {
                    UnitInterval::new(l, u).map_err(|e| schema(format!("at `{p}`/`{o}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !is_rank_sorted(&intervals) {
                warnings.push(format!(
                    "intervals at `{p}`/`{o}` were not in rank order; sorted"
                ));
            }
            cells.push(Ivhfe::new(intervals)?);
        }
        rows.push(cells);
    }
    let soft_set = IvhfSoftSet::new(idents(&raw.universe), idents(&raw.parameters), rows).map_err(
        |e| match e {
            Error::DuplicateIdentifier(id) => schema(format!("duplicate identifier `{id}`")),
            other => other,
        },
    )?;
    Ok(Parsed { soft_set, warnings })
}

/// Rounds to 12 significant digits and prints the shortest decimal that
/// reads back as the rounded value.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

fn write_str(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("string serializes"));
}

fn write_list(out: &mut String, items: &[Ident]) {
    out.push('[');
    for (i, s) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_str(out, s);
    }
    out.push(']');
}

pub fn write_element(out: &mut String, e: &Ivhfe) {
    out.push('[');
    for (i, a) in e.intervals().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(
            out,
            "[{}, {}]",
            format_number(a.lower()),
            format_number(a.upper())
        );
    }
    out.push(']');
}

/// Canonical JSON text for a soft set, ending in a newline.
pub fn to_canonical_json(f: &IvhfSoftSet) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"universe\": ");
    write_list(&mut out, f.universe());
    out.push_str(",\n  \"parameters\": ");
    write_list(&mut out, f.parameters());
    out.push_str(",\n  \"values\": {");
    for (pi, (p, row)) in f.rows().enumerate() {
        out.push_str(if pi > 0 { ",\n    " } else { "\n    " });
        write_str(&mut out, p);
        out.push_str(": {");
        for (oi, (o, cell)) in f.universe().iter().zip(row).enumerate() {
            out.push_str(if oi > 0 { ",\n      " } else { "\n      " });
            write_str(&mut out, o);
            out.push_str(": ");
            write_element(&mut out, cell);
        }
        out.push_str("\n    }");
    }
    out.push_str("\n  }\n}\n");
    out
}

/// The document as a JSON value with full-precision numbers, for embedding
/// in reports that must replay exactly.
pub fn to_exact_value(f: &IvhfSoftSet) -> serde_json::Value {
    use serde_json::{json, Map, Value};
    let mut values = Map::new();
    for (p, row) in f.rows() {
        let mut cells = Map::new();
        for (o, cell) in f.universe().iter().zip(row) {
            cells.insert(o.to_string(), element_to_exact_value(cell));
        }
        values.insert(p.to_string(), Value::Object(cells));
    }
    let names = |ids: &[Ident]| ids.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    json!({
        "universe": names(f.universe()),
        "parameters": names(f.parameters()),
        "values": values,
    })
}

pub fn element_to_exact_value(e: &Ivhfe) -> serde_json::Value {
    serde_json::to_value(e).expect("elements serialize")
}
