//! CSV and JSON emitters.
//!
//! CSV renders rationals in display form (bare integer when integral,
//! `num/den` otherwise); JSON renders them with an explicit denominator
//! (`"3/1"`), except the plurigenera map which keeps display form. No
//! floating point is ever produced.

use plurivol::catalog::{CatalogEntry, TableDiff};
use plurivol::filters::FilterVerdict;
use plurivol::rational::{explicit_ratio_string, Rational};
use plurivol::search::SolutionRecord;
use serde_json::{json, Map, Value};

pub fn rational_csv(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(explicit_ratio_string(r))
}

pub const SOLUTION_CSV_HEADER: &str = "case_label,p12,basket,k3,l2,survives,failed_filters";

pub fn solution_csv_row(record: &SolutionRecord) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        record.case.label,
        record.case.p12,
        record.basket,
        rational_csv(&record.k3),
        rational_csv(&record.l2),
        record.survives,
        record.failed_filters().join(";")
    )
}

fn basket_json(record_basket: &plurivol::Basket) -> Value {
    Value::Array(
        record_basket
            .entries()
            .iter()
            .map(|(q, mult)| {
                json!({
                    "r": q.index(),
                    "a": q.weight(),
                    "mult": mult,
                })
            })
            .collect(),
    )
}

fn plurigenera_json(plurigenera: &[(u32, Rational)]) -> Value {
    let mut map = Map::new();
    for (m, p) in plurigenera {
        map.insert(m.to_string(), Value::String(p.to_string()));
    }
    Value::Object(map)
}

pub fn verdicts_json(verdicts: &[FilterVerdict]) -> Value {
    let mut map = Map::new();
    for v in verdicts {
        let mut entry = Map::new();
        entry.insert("passed".into(), Value::Bool(v.passed));
        entry.insert("witness".into(), rational_json(&v.witness));
        entry.insert("bound".into(), rational_json(&v.bound));
        entry.insert("relation".into(), Value::String(v.relation.to_string()));
        if let Some(detail) = &v.detail {
            entry.insert("detail".into(), Value::String(detail.clone()));
        }
        map.insert(v.name.clone(), Value::Object(entry));
    }
    Value::Object(map)
}

pub fn solution_json(record: &SolutionRecord) -> Value {
    json!({
        "case": {
            "label": record.case.label.to_string(),
            "chi": record.case.chi,
            "p2": record.case.p2,
            "p3": record.case.p3,
            "p4": record.case.p4,
            "p6": record.case.p6,
            "p12": record.case.p12,
        },
        "plurigenera": plurigenera_json(&record.plurigenera),
        "basket": basket_json(&record.basket),
        "k3": rational_json(&record.k3),
        "l2": rational_json(&record.l2),
        "survives": record.survives,
        "filter_verdicts": verdicts_json(&record.filter_verdicts),
    })
}

pub const TABLE_CSV_HEADER: &str =
    "row,r,a,nabla1,nabla2,nabla3,nabla4,rnabla1,rnabla2,rnabla3,rnabla4";

pub fn table_csv_row(entry: &CatalogEntry) -> String {
    let n = entry
        .nabla
        .integer_components()
        .expect("catalog nabla components are integers");
    let p = entry
        .reduced
        .integer_components()
        .expect("catalog reduced components are integers");
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        entry.index_in_table,
        entry.singularity.index(),
        entry.singularity.weight(),
        n[0],
        n[1],
        n[2],
        n[3],
        p[0],
        p[1],
        p[2],
        p[3]
    )
}

pub fn table_json_row(entry: &CatalogEntry) -> Value {
    let n = entry.nabla.integer_components().expect("integer nabla");
    let p = entry.reduced.integer_components().expect("integer rnabla");
    json!({
        "row": entry.index_in_table,
        "r": entry.singularity.index(),
        "a": entry.singularity.weight(),
        "nabla": n.to_vec(),
        "rnabla": p.to_vec(),
    })
}

pub const DIFF_CSV_HEADER: &str = "row,column,paper_value,computed_value,known_typo";

pub fn diff_csv_row(diff: &TableDiff) -> String {
    format!(
        "{},{},{},{},{}",
        diff.row,
        diff.column,
        rational_csv(&diff.paper_value),
        rational_csv(&diff.computed_value),
        diff.known_typo
    )
}

pub fn diff_json_row(diff: &TableDiff) -> Value {
    json!({
        "row": diff.row,
        "column": diff.column,
        "paper_value": rational_json(&diff.paper_value),
        "computed_value": rational_json(&diff.computed_value),
        "known_typo": diff.known_typo,
    })
}
