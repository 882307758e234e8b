//! Admissible plurigenus profiles and the exhaustive basket search.
//!
//! With `chi = 1` and `P_2 = 0`, the volume-free identities
//! `sum Delta_n = (3n^2 - 2) chi + n^2 P_2 + P_n - P_{n+1}` pin the basket's
//! `nabla` sums to a four-component integer target determined by
//! `(P_3, P_4, P_6, P_12)`; after the unimodular reduction the targets are
//! small nonnegative integers, and enumerating all baskets over the catalog
//! becomes a finite depth-first search.
//!
//! Admissible profiles: `P_2 = 0`, the five `(P_3, P_4, P_6)` patterns
//! `000, 001, 011, 101, 111`, and `P_12` in `1..=4` (larger `P_12` is
//! already handled by the pluricanonical volume bounds).

use std::fmt;

use crate::catalog::CatalogEntry;
use crate::filters::{FilterSet, FilterVerdict};
use crate::rational::Rational;
use crate::reid::{
    basket_correction, plurigenus, reduce_nabla, volume_from_plurigenus, NablaVector,
    ReducedNablaVector,
};
use crate::singularity::Basket;
use crate::Error;

/// Case tags `(i)` through `(v)` for the five `(P_3, P_4, P_6)` patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 5] = [
        CaseLabel::I,
        CaseLabel::II,
        CaseLabel::III,
        CaseLabel::IV,
        CaseLabel::V,
    ];

    /// The `(P_3, P_4, P_6)` pattern of this case.
    pub fn pattern(self) -> (i64, i64, i64) {
        match self {
            CaseLabel::I => (0, 0, 0),
            CaseLabel::II => (0, 0, 1),
            CaseLabel::III => (0, 1, 1),
            CaseLabel::IV => (1, 0, 1),
            CaseLabel::V => (1, 1, 1),
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            CaseLabel::I => "i",
            CaseLabel::II => "ii",
            CaseLabel::III => "iii",
            CaseLabel::IV => "iv",
            CaseLabel::V => "v",
        };
        f.write_str(tag)
    }
}

/// An assumed plurigenus profile defining one search target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseSpec {
    pub label: CaseLabel,
    pub chi: i64,
    pub p2: i64,
    pub p3: i64,
    pub p4: i64,
    pub p6: i64,
    pub p12: i64,
}

impl CaseSpec {
    pub fn new(label: CaseLabel, chi: i64, p12: i64) -> Result<Self, Error> {
        if !(1..=4).contains(&p12) {
            return Err(Error::InvalidP12 { p12 });
        }
        let (p3, p4, p6) = label.pattern();
        Ok(Self {
            label,
            chi,
            p2: 0,
            p3,
            p4,
            p6,
            p12,
        })
    }
}

/// The cross product of the five case patterns with the requested `P_12`
/// values, ordered by `P_12` ascending then case label. Rejects any
/// requested value outside `1..=4`.
pub fn admissible_cases(chi: i64, p12_values: &[i64]) -> Result<Vec<CaseSpec>, Error> {
    let mut p12s = p12_values.to_vec();
    p12s.sort_unstable();
    p12s.dedup();
    let mut cases = Vec::with_capacity(5 * p12s.len());
    for &p12 in &p12s {
        for label in CaseLabel::ALL {
            cases.push(CaseSpec::new(label, chi, p12)?);
        }
    }
    Ok(cases)
}

/// The exact `nabla` sums a basket must realize for a case, plus their
/// reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetVector {
    pub delta_targets: NablaVector,
    pub reduced_targets: ReducedNablaVector,
}

/// Builds the target vector of a case from the telescoped identities,
/// grouped as `(Delta_2 | Delta_3 | Delta_4..5 | Delta_6..11)`:
///
/// ```text
/// (10 chi + 5 p2 - p3,
///  25 chi + 9 p2 + p3 - p4,
///  119 chi + 41 p2 + p4 - p6,
///  1341 chi + 451 p2 + p6 - p12)
/// ```
pub fn delta_targets(case: &CaseSpec) -> TargetVector {
    let delta_targets = NablaVector::from_integers([
        10 * case.chi + 5 * case.p2 - case.p3,
        25 * case.chi + 9 * case.p2 + case.p3 - case.p4,
        119 * case.chi + 41 * case.p2 + case.p4 - case.p6,
        1341 * case.chi + 451 * case.p2 + case.p6 - case.p12,
    ]);
    let reduced_targets = reduce_nabla(&delta_targets);
    TargetVector {
        delta_targets,
        reduced_targets,
    }
}

/// Catalog entries usable against an integer target: reduced components all
/// within the target, componentwise.
fn eligible_entries(
    catalog: &[CatalogEntry],
    target: [i64; 4],
) -> Result<Vec<(usize, [i64; 4])>, Error> {
    let mut eligible = Vec::new();
    for (i, entry) in catalog.iter().enumerate() {
        let v = entry.reduced.integer_components().ok_or_else(|| {
            Error::Internal(format!(
                "catalog entry {} has non-integer reduced invariants",
                entry.singularity
            ))
        })?;
        if v.iter().any(|&c| c < 0) {
            return Err(Error::Internal(format!(
                "catalog entry {} has a negative reduced invariant",
                entry.singularity
            )));
        }
        if (0..4).all(|k| v[k] <= target[k]) {
            eligible.push((i, v));
        }
    }
    Ok(eligible)
}

fn target_components(targets: &ReducedNablaVector) -> Result<[i64; 4], Error> {
    let components = targets.integer_components().ok_or_else(|| {
        let slot = targets
            .0
            .iter()
            .position(|c| !c.is_integer())
            .unwrap_or_default();
        Error::InvalidTarget {
            slot,
            value: targets.0[slot].to_string(),
        }
    })?;
    if let Some(slot) = components.iter().position(|&c| c < 0) {
        return Err(Error::InvalidTarget {
            slot,
            value: components[slot].to_string(),
        });
    }
    Ok(components)
}

/// Enumerates every basket over `catalog` whose reduced `nabla` sum equals
/// `targets` exactly. Complete and duplicate-free: baskets are realized as
/// non-decreasing catalog-index sequences, with a branch pruned as soon as
/// a residual component goes negative or some positive residual component
/// is not supported by any remaining entry. The result is sorted in the
/// canonical basket order.
pub fn enumerate_baskets(
    targets: &ReducedNablaVector,
    catalog: &[CatalogEntry],
) -> Result<Vec<Basket>, Error> {
    let target = target_components(targets)?;
    let eligible = eligible_entries(catalog, target)?;

    // suffix_support[j][k]: some entry at position >= j touches component k.
    let mut suffix_support = vec![[false; 4]; eligible.len() + 1];
    for j in (0..eligible.len()).rev() {
        let mut row = suffix_support[j + 1];
        for (k, cell) in row.iter_mut().enumerate() {
            *cell |= eligible[j].1[k] > 0;
        }
        suffix_support[j] = row;
    }

    let mut found = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    dfs(
        &eligible,
        &suffix_support,
        catalog,
        0,
        target,
        &mut stack,
        &mut found,
    );
    found.sort_unstable();
    Ok(found)
}

fn dfs(
    eligible: &[(usize, [i64; 4])],
    suffix_support: &[[bool; 4]],
    catalog: &[CatalogEntry],
    from: usize,
    residual: [i64; 4],
    stack: &mut Vec<usize>,
    found: &mut Vec<Basket>,
) {
    if residual == [0; 4] {
        found.push(basket_from_stack(eligible, catalog, stack));
        return;
    }
    if (0..4).any(|k| residual[k] > 0 && !suffix_support[from][k]) {
        return;
    }
    for j in from..eligible.len() {
        let v = eligible[j].1;
        if (0..4).all(|k| v[k] <= residual[k]) {
            stack.push(j);
            let next: [i64; 4] = std::array::from_fn(|k| residual[k] - v[k]);
            dfs(eligible, suffix_support, catalog, j, next, stack, found);
            stack.pop();
        }
    }
}

fn basket_from_stack(
    eligible: &[(usize, [i64; 4])],
    catalog: &[CatalogEntry],
    stack: &[usize],
) -> Basket {
    let mut entries: Vec<(crate::QuotientSingularity, u32)> = Vec::new();
    for &j in stack {
        let q = catalog[eligible[j].0].singularity;
        match entries.last_mut() {
            Some((last, mult)) if *last == q => *mult += 1,
            _ => entries.push((q, 1)),
        }
    }
    Basket::new(entries)
}

/// A fully evaluated basket for one case.
#[derive(Clone, Debug)]
pub struct SolutionRecord {
    pub case: CaseSpec,
    pub basket: Basket,
    /// Canonical volume, solved from `P_2 = p2`.
    pub k3: Rational,
    pub l2: Rational,
    /// `(m, P_m)` for `2 <= m <= 24`.
    pub plurigenera: Vec<(u32, Rational)>,
    pub filter_verdicts: Vec<FilterVerdict>,
    /// True when every enabled filter passed.
    pub survives: bool,
}

impl SolutionRecord {
    /// `P_m` from the stored table.
    pub fn plurigenus_at(&self, m: u32) -> Option<&Rational> {
        self.plurigenera
            .iter()
            .find(|&&(mm, _)| mm == m)
            .map(|(_, p)| p)
    }

    pub fn failed_filters(&self) -> Vec<&str> {
        self.filter_verdicts
            .iter()
            .filter(|v| !v.passed)
            .map(|v| v.name.as_str())
            .collect()
    }
}

/// Highest plurigenus order stored on a [`SolutionRecord`].
pub const PLURIGENUS_TABLE_MAX_M: u32 = 24;

/// Enumerates a case's baskets and evaluates each one: exact volume from
/// `P_2`, the full plurigenus table, and every enabled filter verdict.
/// Records are sorted by volume ascending, then canonical basket order.
///
/// The volume is solved independently at `m = 2` and `m = 12`; the two
/// valuations agree identically for any basket hitting the target, so a
/// disagreement is reported as an internal error.
pub fn solve_case(
    case: &CaseSpec,
    catalog: &[CatalogEntry],
    filters: &FilterSet,
) -> Result<Vec<SolutionRecord>, Error> {
    let targets = delta_targets(case);
    let baskets = enumerate_baskets(&targets.reduced_targets, catalog)?;
    let mut records = Vec::with_capacity(baskets.len());
    for basket in baskets {
        records.push(evaluate_basket(case, basket, filters)?);
    }
    records.sort_by(|x, y| x.k3.cmp(&y.k3).then_with(|| x.basket.cmp(&y.basket)));
    Ok(records)
}

fn evaluate_basket(
    case: &CaseSpec,
    basket: Basket,
    filters: &FilterSet,
) -> Result<SolutionRecord, Error> {
    let k3 = volume_from_plurigenus(case.chi, &basket, 2, case.p2);
    let k3_from_p12 = volume_from_plurigenus(case.chi, &basket, 12, case.p12);
    if k3 != k3_from_p12 {
        return Err(Error::Internal(format!(
            "volume mismatch for {{{basket}}}: {k3} from m=2 vs {k3_from_p12} from m=12"
        )));
    }
    let l2 = basket_correction(&basket, 2);
    let plurigenera: Vec<(u32, Rational)> = (2..=PLURIGENUS_TABLE_MAX_M)
        .map(|m| (m, plurigenus(case.chi, &k3, &basket, m)))
        .collect();
    let filter_verdicts = filters.evaluate(case.chi, &basket, &k3, &plurigenera);
    let survives = filter_verdicts.iter().all(|v| v.passed);
    Ok(SolutionRecord {
        case: *case,
        basket,
        k3,
        l2,
        plurigenera,
        filter_verdicts,
        survives,
    })
}

/// Solves a list of cases, optionally on multiple worker threads. The
/// output is identical to solving the cases sequentially in input order:
/// workers own disjoint case indices and the merge is positional.
pub fn solve_cases(
    cases: &[CaseSpec],
    catalog: &[CatalogEntry],
    filters: &FilterSet,
    threads: usize,
) -> Result<Vec<SolutionRecord>, Error> {
    let per_case: Vec<Result<Vec<SolutionRecord>, Error>> = if threads <= 1 || cases.len() <= 1 {
        cases
            .iter()
            .map(|c| solve_case(c, catalog, filters))
            .collect()
    } else {
        let workers = threads.min(cases.len());
        let mut slots: Vec<Option<Result<Vec<SolutionRecord>, Error>>> = vec![None; cases.len()];
        std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(workers);
            for w in 0..workers {
                handles.push(scope.spawn(move || {
                    cases
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, c)| (i, solve_case(c, catalog, filters)))
                        .collect::<Vec<_>>()
                }));
            }
            for handle in handles {
                for (i, result) in handle.join().expect("search worker panicked") {
                    slots[i] = Some(result);
                }
            }
        });
        slots
            .into_iter()
            .map(|s| s.expect("every case solved"))
            .collect()
    };

    let mut merged = Vec::new();
    for case_records in per_case {
        merged.extend(case_records?);
    }
    Ok(merged)
}
