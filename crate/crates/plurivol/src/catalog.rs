//! The catalog of singularity classes with index at most a bound, and the
//! comparison of its regenerated invariants against the published table.
//!
//! An index bound of 42 is the one that matters for the search: any class
//! with `r >= 43` already forces `l(Q, 12) >= 27` and therefore
//! `P_12 >= 5`, which is out of the searched range. The catalog at
//! `r <= 42` has exactly 271 classes.
//!
//! The reference values live in `data/reference_table.csv`, transcribed
//! verbatim from the published table, misprints included; the misprints we
//! know about are recorded in `data/known_typos.csv` so the diff can flag
//! them instead of silently correcting anything.

use std::fmt;

use crate::rational::{integer, Rational};
use crate::reid::{nabla_vector, reduce_nabla, NablaVector, ReducedNablaVector};
use crate::singularity::QuotientSingularity;
use crate::Error;

const REFERENCE_TABLE_CSV: &str = include_str!("../data/reference_table.csv");
const KNOWN_TYPOS_CSV: &str = include_str!("../data/known_typos.csv");

/// Canonical class representative for `1/r(a,-a,1)`; see
/// [`QuotientSingularity::new`].
pub fn normalize(r: u32, a: u32) -> Result<QuotientSingularity, Error> {
    QuotientSingularity::new(r, a)
}

/// All classes with `2 <= r <= r_max`, one per `{a, r-a}` pair, ordered by
/// index ascending and then weight descending (the published row order).
pub fn enumerate_classes(r_max: u32) -> Vec<QuotientSingularity> {
    let mut out = Vec::new();
    for r in 2..=r_max {
        for a in (1..r).rev() {
            if 2 * a > r || r == 2 {
                if let Ok(q) = QuotientSingularity::new(r, a) {
                    out.push(q);
                }
            }
        }
    }
    out
}

/// One catalog row: a class with its computed `nabla` and reduced `nabla`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub index_in_table: u32,
    pub singularity: QuotientSingularity,
    pub nabla: NablaVector,
    pub reduced: ReducedNablaVector,
}

/// The full invariant table up to `r_max`, computed from scratch (never
/// copied from the reference data). Row numbers start at 1.
pub fn nabla_table(r_max: u32) -> Vec<CatalogEntry> {
    enumerate_classes(r_max)
        .into_iter()
        .enumerate()
        .map(|(i, singularity)| {
            let nabla = nabla_vector(&singularity);
            let reduced = reduce_nabla(&nabla);
            CatalogEntry {
                index_in_table: i as u32 + 1,
                singularity,
                nabla,
                reduced,
            }
        })
        .collect()
}

/// A transcribed reference row: `row, r, a` plus the eight printed values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub row: u32,
    pub r: u32,
    pub a: u32,
    pub values: [i64; 8],
}

/// Column names for the eight value cells, in file order.
pub const VALUE_COLUMNS: [&str; 8] = [
    "nabla1", "nabla2", "nabla3", "nabla4", "rnabla1", "rnabla2", "rnabla3", "rnabla4",
];

/// A non-fatal problem with one line of a reference file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowIssue {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Parses a reference table. Malformed lines become [`RowIssue`]s rather
/// than killing the whole parse.
pub fn parse_reference(text: &str) -> (Vec<ReferenceRow>, Vec<RowIssue>) {
    let mut rows = Vec::new();
    let mut issues = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("row,") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 11 {
            issues.push(RowIssue {
                line: line_no,
                message: format!("expected 11 fields, got {}", fields.len()),
            });
            continue;
        }
        let parsed: Result<Vec<i64>, _> = fields.iter().map(|f| f.parse::<i64>()).collect();
        match parsed {
            Ok(v) if v[0] > 0 && v[1] >= 2 && v[2] >= 1 => rows.push(ReferenceRow {
                row: v[0] as u32,
                r: v[1] as u32,
                a: v[2] as u32,
                values: v[3..11].try_into().expect("eight value fields"),
            }),
            Ok(_) => issues.push(RowIssue {
                line: line_no,
                message: "row, r, a must be positive (r >= 2)".into(),
            }),
            Err(e) => issues.push(RowIssue {
                line: line_no,
                message: format!("integer parse failure: {e}"),
            }),
        }
    }
    (rows, issues)
}

/// The reference table shipped with the crate.
pub fn embedded_reference() -> Vec<ReferenceRow> {
    let (rows, issues) = parse_reference(REFERENCE_TABLE_CSV);
    debug_assert!(issues.is_empty(), "embedded reference is clean: {issues:?}");
    rows
}

/// A recorded misprint in the published table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownTypo {
    pub row: u32,
    pub column: String,
    pub paper_value: i64,
    pub corrected_value: i64,
    pub note: String,
}

/// Parses a known-typos file (same non-fatal policy as [`parse_reference`]).
pub fn parse_known_typos(text: &str) -> (Vec<KnownTypo>, Vec<RowIssue>) {
    let mut typos = Vec::new();
    let mut issues = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("row,") {
            continue;
        }
        let fields: Vec<&str> = line.splitn(5, ',').map(str::trim).collect();
        if fields.len() != 5 {
            issues.push(RowIssue {
                line: line_no,
                message: format!("expected 5 fields, got {}", fields.len()),
            });
            continue;
        }
        match (
            fields[0].parse::<u32>(),
            fields[2].parse::<i64>(),
            fields[3].parse::<i64>(),
        ) {
            (Ok(row), Ok(paper_value), Ok(corrected_value)) => typos.push(KnownTypo {
                row,
                column: fields[1].to_string(),
                paper_value,
                corrected_value,
                note: fields[4].to_string(),
            }),
            _ => issues.push(RowIssue {
                line: line_no,
                message: "row and both values must be integers".into(),
            }),
        }
    }
    (typos, issues)
}

/// The known-typos list shipped with the crate.
pub fn embedded_known_typos() -> Vec<KnownTypo> {
    let (typos, issues) = parse_known_typos(KNOWN_TYPOS_CSV);
    debug_assert!(issues.is_empty(), "embedded typo list is clean: {issues:?}");
    typos
}

/// One cell-level mismatch between the computed table and a reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDiff {
    pub row: u32,
    pub column: String,
    pub paper_value: Rational,
    pub computed_value: Rational,
    /// True when the mismatch is recorded in the known-typos list.
    pub known_typo: bool,
}

/// Cell-by-cell comparison of a computed table against reference rows,
/// keyed by row number. Every mismatch is reported; the ones matching the
/// known-typos list are flagged, not dropped.
pub fn compare_table(
    computed: &[CatalogEntry],
    reference: &[ReferenceRow],
    known_typos: &[KnownTypo],
) -> Vec<TableDiff> {
    let mut diffs = Vec::new();
    let mut push = |row: u32, column: &str, paper: i64, ours: i64| {
        if paper == ours {
            return;
        }
        let known_typo = known_typos
            .iter()
            .any(|t| t.row == row && t.column == column && t.paper_value == paper);
        diffs.push(TableDiff {
            row,
            column: column.to_string(),
            paper_value: integer(paper),
            computed_value: integer(ours),
            known_typo,
        });
    };

    for entry in computed {
        let row = entry.index_in_table;
        let Some(reference_row) = reference.iter().find(|p| p.row == row) else {
            push(row, "missing_in_reference", -1, row as i64);
            continue;
        };
        push(
            row,
            "r",
            reference_row.r as i64,
            entry.singularity.index() as i64,
        );
        push(
            row,
            "a",
            reference_row.a as i64,
            entry.singularity.weight() as i64,
        );
        let nabla = entry
            .nabla
            .integer_components()
            .expect("catalog nabla components are integers");
        let reduced = entry
            .reduced
            .integer_components()
            .expect("catalog reduced components are integers");
        for (k, column) in VALUE_COLUMNS.iter().enumerate() {
            let ours = if k < 4 { nabla[k] } else { reduced[k - 4] };
            push(row, column, reference_row.values[k], ours);
        }
    }
    for reference_row in reference {
        if !computed
            .iter()
            .any(|e| e.index_in_table == reference_row.row)
        {
            push(
                reference_row.row,
                "missing_in_computed",
                reference_row.row as i64,
                -1,
            );
        }
    }
    diffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_small_bounds() {
        let names = |r_max| {
            enumerate_classes(r_max)
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(3), ["1/2(1)", "1/3(2)"]);
        assert_eq!(names(5), ["1/2(1)", "1/3(2)", "1/4(3)", "1/5(4)", "1/5(3)"]);
    }

    #[test]
    fn class_count_is_half_totient() {
        // phi(r)/2 classes per index (phi(2)/2 rounds up to 1).
        fn phi(r: u32) -> u32 {
            (1..=r).filter(|k| num_integer_gcd(*k, r) == 1).count() as u32
        }
        fn num_integer_gcd(mut x: u32, mut y: u32) -> u32 {
            while y != 0 {
                (x, y) = (y, x % y);
            }
            x
        }
        let mut expected = 0;
        for r in 2..=42 {
            expected += phi(r).div_ceil(2);
        }
        assert_eq!(expected, 271);
        assert_eq!(enumerate_classes(42).len(), 271);
    }

    #[test]
    fn table_rows_match_published_values() {
        let table = nabla_table(42);
        let by_class = |r, a| {
            table
                .iter()
                .find(|e| e.singularity.index() == r && e.singularity.weight() == a)
                .unwrap()
        };
        let row = by_class(4, 3);
        assert_eq!(row.nabla.integer_components(), Some([1, 3, 15, 167]));
        assert_eq!(row.reduced.integer_components(), Some([0, 1, 2, 4]));
        let row = by_class(6, 5);
        assert_eq!(row.nabla.integer_components(), Some([1, 3, 16, 185]));
        assert_eq!(row.reduced.integer_components(), Some([0, 1, 3, 15]));
        // Row 50 carries the known nabla2 misprint (8 for 18).
        let row = by_class(18, 13);
        assert_eq!(row.index_in_table, 50);
        assert_eq!(row.nabla.integer_components(), Some([7, 18, 85, 955]));
        assert_eq!(row.reduced.integer_components(), Some([3, 4, 3, 2]));
    }

    #[test]
    fn embedded_reference_parses_cleanly() {
        let (rows, issues) = parse_reference(REFERENCE_TABLE_CSV);
        assert!(issues.is_empty(), "{issues:?}");
        assert_eq!(rows.len(), 271);
        assert_eq!(rows.first().unwrap().row, 1);
        assert_eq!(rows.last().unwrap().row, 271);
    }

    #[test]
    fn comparison_flags_exactly_the_known_typos() {
        let diffs = compare_table(
            &nabla_table(42),
            &embedded_reference(),
            &embedded_known_typos(),
        );
        let summary: Vec<(u32, &str, bool)> = diffs
            .iter()
            .map(|d| (d.row, d.column.as_str(), d.known_typo))
            .collect();
        assert_eq!(
            summary,
            [(50, "nabla2", true), (268, "rnabla1", true)],
            "full diff: {diffs:?}"
        );
        assert_eq!(diffs[0].paper_value, integer(8));
        assert_eq!(diffs[0].computed_value, integer(18));
        assert_eq!(diffs[1].paper_value, integer(5));
        assert_eq!(diffs[1].computed_value, integer(15));
    }

    #[test]
    fn comparison_of_table_with_itself_is_empty() {
        let table = nabla_table(20);
        let as_reference: Vec<ReferenceRow> = table
            .iter()
            .map(|e| {
                let n = e.nabla.integer_components().unwrap();
                let p = e.reduced.integer_components().unwrap();
                ReferenceRow {
                    row: e.index_in_table,
                    r: e.singularity.index(),
                    a: e.singularity.weight(),
                    values: [n[0], n[1], n[2], n[3], p[0], p[1], p[2], p[3]],
                }
            })
            .collect();
        assert!(compare_table(&table, &as_reference, &[]).is_empty());
    }

    #[test]
    fn comparison_catches_an_injected_fault() {
        let table = nabla_table(10);
        let mut reference: Vec<ReferenceRow> = table
            .iter()
            .map(|e| {
                let n = e.nabla.integer_components().unwrap();
                let p = e.reduced.integer_components().unwrap();
                ReferenceRow {
                    row: e.index_in_table,
                    r: e.singularity.index(),
                    a: e.singularity.weight(),
                    values: [n[0], n[1], n[2], n[3], p[0], p[1], p[2], p[3]],
                }
            })
            .collect();
        reference[4].values[2] += 1;
        let diffs = compare_table(&table, &reference, &embedded_known_typos());
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].row, 5);
        assert_eq!(diffs[0].column, "nabla3");
        assert!(!diffs[0].known_typo);
    }

    #[test]
    fn parse_issues_are_reported_per_row() {
        let text = "row,r,a,nabla1,nabla2,nabla3,nabla4,rnabla1,rnabla2,rnabla3,rnabla4\n\
                    1,2,1,1,2,10,112,1,0,0,0\n\
                    2,3,2,1,3,13,oops,0,1,0,0\n\
                    3,4\n\
                    4,5,4,1,3,16,178,0,1,3,8\n";
        let (rows, issues) = parse_reference(text);
        assert_eq!(rows.len(), 2);
        assert_eq!(issues.len(), 2);
        assert_eq!(issues[0].line, 3);
        assert_eq!(issues[1].line, 4);
    }

    #[test]
    fn known_typos_file_contents() {
        let typos = embedded_known_typos();
        let has = |row: u32, column: &str| typos.iter().any(|t| t.row == row && t.column == column);
        assert!(has(50, "nabla2"));
        assert!(has(268, "rnabla1"));
        assert!(has(127, "second_weight"));
        assert!(has(227, "second_weight"));
        assert!(has(233, "second_weight"));
    }
}
