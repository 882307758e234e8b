//! Feasibility predicates on enumerated baskets.
//!
//! The raw search only enforces the four target equations; these filters
//! apply the remaining necessary conditions for a basket to come from an
//! actual minimal 3-fold of general type:
//!
//! * `positivity` — the canonical volume is positive;
//! * `miyaoka` — the Miyaoka–Reid inequality
//!   `sum (r^2 - 1)/r >= 24 chi` over the basket;
//! * `bounds` — pluricanonical volume bounds: `P_m = 2` forces
//!   `K^3 >= 1/(m(m+1)^2)`, and `P_12 >= 5` forces `K^3 >= 1/360`;
//! * `integrality` — every `P_m` in range is a nonnegative integer
//!   (off by default; the searched profiles satisfy it by construction).
//!
//! Each verdict records the computed witness and the bound it was compared
//! against, so a report can show why a basket was excluded.

use std::fmt;

use num_traits::Zero;

use crate::rational::{integer, is_nonnegative_integer, ratio, Rational};
use crate::singularity::Basket;

/// How a witness is compared against its bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    GreaterThan,
    AtLeast,
    AtMost,
}

impl Relation {
    fn holds(self, witness: &Rational, bound: &Rational) -> bool {
        match self {
            Relation::GreaterThan => witness > bound,
            Relation::AtLeast => witness >= bound,
            Relation::AtMost => witness <= bound,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::GreaterThan => ">",
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
        })
    }
}

/// Outcome of one filter on one basket: `passed` holds exactly when
/// `witness <relation> bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterVerdict {
    pub name: String,
    pub passed: bool,
    pub witness: Rational,
    pub bound: Rational,
    pub relation: Relation,
    /// Extra context, e.g. which `P_m` triggered a volume bound.
    pub detail: Option<String>,
}

impl FilterVerdict {
    fn new(name: &str, witness: Rational, relation: Relation, bound: Rational) -> Self {
        let passed = relation.holds(&witness, &bound);
        Self {
            name: name.to_string(),
            passed,
            witness,
            bound,
            relation,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// `K^3 > 0`.
pub fn positivity(k3: &Rational) -> FilterVerdict {
    FilterVerdict::new(
        "positivity",
        k3.clone(),
        Relation::GreaterThan,
        Rational::zero(),
    )
}

/// Miyaoka–Reid: `sum over the basket of (r^2 - 1)/r >= 24 chi`.
pub fn miyaoka_reid(basket: &Basket, chi: i64) -> FilterVerdict {
    let mut witness = Rational::zero();
    for (q, mult) in basket.entries() {
        let r = q.index() as u128;
        witness += Rational::new(
            num_bigint::BigInt::from((r * r - 1) * *mult as u128),
            num_bigint::BigInt::from(r),
        );
    }
    FilterVerdict::new("miyaoka", witness, Relation::AtLeast, integer(24 * chi))
}

/// Pluricanonical volume bounds over `m_max >= m >= 2`: among the
/// applicable constraints (`P_m = 2` gives `1/(m(m+1)^2)`, `P_12 >= 5`
/// gives `1/360`) the volume must meet the largest; with no applicable
/// constraint the verdict passes vacuously against a zero bound.
pub fn pluricanonical_bounds(
    plurigenera: &[(u32, Rational)],
    k3: &Rational,
    m_max: u32,
) -> FilterVerdict {
    let mut bound = Rational::zero();
    let mut detail: Option<String> = None;
    for (m, p_m) in plurigenera
        .iter()
        .filter(|&&(m, _)| (2..=m_max).contains(&m))
    {
        let m = *m;
        let candidate = if *p_m == integer(2) {
            let denominator = m as u128 * (m as u128 + 1) * (m as u128 + 1);
            Rational::new(1.into(), num_bigint::BigInt::from(denominator))
        } else if m == 12 && *p_m >= integer(5) {
            ratio(1, 360)
        } else {
            continue;
        };
        if candidate > bound {
            bound = candidate;
            detail = Some(format!("P_{m} = {p_m}"));
        }
    }
    let verdict = FilterVerdict::new("bounds", k3.clone(), Relation::AtLeast, bound);
    match detail {
        Some(d) => verdict.with_detail(d),
        None => verdict,
    }
}

/// Every `P_m` for `2 <= m <= m_max` is a nonnegative integer. The witness
/// counts violations, compared against a zero bound.
pub fn integrality(plurigenera: &[(u32, Rational)], m_max: u32) -> FilterVerdict {
    let mut violations = 0i64;
    let mut detail: Option<String> = None;
    for (m, p_m) in plurigenera
        .iter()
        .filter(|&&(m, _)| (2..=m_max).contains(&m))
    {
        if !is_nonnegative_integer(p_m) {
            violations += 1;
            detail.get_or_insert_with(|| format!("P_{m} = {p_m}"));
        }
    }
    let verdict = FilterVerdict::new(
        "integrality",
        integer(violations),
        Relation::AtMost,
        Rational::zero(),
    );
    match detail {
        Some(d) => verdict.with_detail(d),
        None => verdict,
    }
}

/// The individual filters, in canonical evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FilterKind {
    Positivity,
    MiyaokaReid,
    PluricanonicalBounds,
    Integrality,
}

impl FilterKind {
    pub const ALL: [FilterKind; 4] = [
        FilterKind::Positivity,
        FilterKind::MiyaokaReid,
        FilterKind::PluricanonicalBounds,
        FilterKind::Integrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FilterKind::Positivity => "positivity",
            FilterKind::MiyaokaReid => "miyaoka",
            FilterKind::PluricanonicalBounds => "bounds",
            FilterKind::Integrality => "integrality",
        }
    }

    pub fn parse(name: &str) -> Result<Self, crate::Error> {
        match name.trim() {
            "positivity" => Ok(FilterKind::Positivity),
            "miyaoka" | "miyaoka-reid" | "miyaoka_reid" => Ok(FilterKind::MiyaokaReid),
            "bounds" | "pluricanonical-bounds" | "pluricanonical_bounds" => {
                Ok(FilterKind::PluricanonicalBounds)
            }
            "integrality" => Ok(FilterKind::Integrality),
            other => Err(crate::Error::UnknownFilter(other.to_string())),
        }
    }
}

/// A selection of filters plus the order ranges the bounded ones scan.
///
/// Evaluation is pure and order-independent; the canonical order here only
/// fixes how verdicts are listed in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterSet {
    kinds: Vec<FilterKind>,
    /// Highest `m` scanned by the pluricanonical bounds.
    pub bounds_m_max: u32,
    /// Highest `m` scanned by the integrality check.
    pub integrality_m_max: u32,
}

impl FilterSet {
    /// The default set: positivity, Miyaoka–Reid, and pluricanonical
    /// bounds on `m <= 12`. Integrality stays off.
    pub fn default_set() -> Self {
        Self::from_kinds([
            FilterKind::Positivity,
            FilterKind::MiyaokaReid,
            FilterKind::PluricanonicalBounds,
        ])
    }

    /// No filters: every basket survives.
    pub fn none() -> Self {
        Self::from_kinds([])
    }

    pub fn from_kinds(kinds: impl IntoIterator<Item = FilterKind>) -> Self {
        let mut kinds: Vec<FilterKind> = kinds.into_iter().collect();
        kinds.sort_unstable();
        kinds.dedup();
        Self {
            kinds,
            bounds_m_max: 12,
            integrality_m_max: 24,
        }
    }

    /// Parses a comma-separated name list; `none` selects the empty set.
    pub fn from_names(names: &str) -> Result<Self, crate::Error> {
        let names = names.trim();
        if names.is_empty() || names == "none" {
            return Ok(Self::none());
        }
        let kinds: Result<Vec<FilterKind>, _> = names.split(',').map(FilterKind::parse).collect();
        Ok(Self::from_kinds(kinds?))
    }

    pub fn kinds(&self) -> &[FilterKind] {
        &self.kinds
    }

    /// Evaluates every enabled filter on one basket.
    pub fn evaluate(
        &self,
        chi: i64,
        basket: &Basket,
        k3: &Rational,
        plurigenera: &[(u32, Rational)],
    ) -> Vec<FilterVerdict> {
        self.kinds
            .iter()
            .map(|kind| match kind {
                FilterKind::Positivity => positivity(k3),
                FilterKind::MiyaokaReid => miyaoka_reid(basket, chi),
                FilterKind::PluricanonicalBounds => {
                    pluricanonical_bounds(plurigenera, k3, self.bounds_m_max)
                }
                FilterKind::Integrality => integrality(plurigenera, self.integrality_m_max),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reid::{plurigenus, volume_from_plurigenus};
    use crate::singularity::QuotientSingularity;

    fn basket(entries: &[(u32, u32, u32)]) -> Basket {
        Basket::new(
            entries
                .iter()
                .map(|&(r, a, m)| (QuotientSingularity::new(r, a).unwrap(), m)),
        )
    }

    fn table(chi: i64, k3: &Rational, b: &Basket) -> Vec<(u32, Rational)> {
        (2..=24).map(|m| (m, plurigenus(chi, k3, b, m))).collect()
    }

    #[test]
    fn positivity_verdicts() {
        assert!(positivity(&ratio(1, 420)).passed);
        assert!(!positivity(&integer(0)).passed);
        assert!(!positivity(&ratio(-1, 60)).passed);
    }

    #[test]
    fn miyaoka_examples() {
        // 15/4 + 24/5 + 48/7 + 2*(3/2) + 2*(8/3) = 9971/420 < 24.
        let failing = basket(&[(4, 3, 1), (5, 3, 1), (7, 5, 1), (2, 1, 2), (3, 2, 2)]);
        let verdict = miyaoka_reid(&failing, 1);
        assert!(!verdict.passed);
        assert_eq!(verdict.witness, ratio(9971, 420));
        assert_eq!(verdict.bound, integer(24));

        // 3*(3/2) + 15/4 + 24/5 + 35/6 + 48/7 = 10811/420 >= 24.
        let winner = basket(&[(2, 1, 3), (4, 3, 1), (5, 3, 1), (6, 5, 1), (7, 5, 1)]);
        let verdict = miyaoka_reid(&winner, 1);
        assert!(verdict.passed);
        assert_eq!(verdict.witness, ratio(10811, 420));

        assert!(!miyaoka_reid(&Basket::empty(), 1).passed);
    }

    #[test]
    fn bounds_examples() {
        // The 1/660 basket has P_7 = 2 and 1/660 < 1/448.
        let excluded = basket(&[(4, 3, 1), (5, 3, 2), (11, 7, 1), (3, 2, 1)]);
        let k3 = volume_from_plurigenus(1, &excluded, 2, 0);
        assert_eq!(k3, ratio(1, 660));
        let verdict = pluricanonical_bounds(&table(1, &k3, &excluded), &k3, 12);
        assert!(!verdict.passed);
        assert_eq!(verdict.bound, ratio(1, 448));
        assert_eq!(verdict.witness, ratio(1, 660));
        assert_eq!(verdict.detail.as_deref(), Some("P_7 = 2"));

        let winner = basket(&[(2, 1, 3), (4, 3, 1), (5, 3, 1), (6, 5, 1), (7, 5, 1)]);
        let k3 = volume_from_plurigenus(1, &winner, 2, 0);
        let verdict = pluricanonical_bounds(&table(1, &k3, &winner), &k3, 12);
        assert!(verdict.passed);

        // The empty basket with volume 6 has a huge P_12, so the P_12 >= 5
        // rule applies; 6 clears 1/360 easily.
        let empty = Basket::empty();
        let k3 = integer(6);
        let verdict = pluricanonical_bounds(&table(1, &k3, &empty), &k3, 12);
        assert!(verdict.passed);
        assert_eq!(verdict.bound, ratio(1, 360));

        // No applicable constraint at all: vacuous pass against a zero bound.
        let all_ones: Vec<(u32, Rational)> = (2..=12).map(|m| (m, integer(1))).collect();
        let verdict = pluricanonical_bounds(&all_ones, &ratio(1, 1000), 12);
        assert!(verdict.passed);
        assert_eq!(verdict.bound, integer(0));
        assert_eq!(verdict.detail, None);
    }

    #[test]
    fn bounds_uses_the_tightest_applicable_constraint() {
        // P_m = 2 at both m = 7 and m = 8: the binding bound is 1/448.
        let excluded = basket(&[(4, 3, 1), (5, 3, 2), (11, 7, 1), (3, 2, 1)]);
        let k3 = ratio(1, 660);
        let plurigenera = table(1, &k3, &excluded);
        assert_eq!(plurigenera[5], (7, integer(2)));
        assert_eq!(plurigenera[6], (8, integer(2)));
        let verdict = pluricanonical_bounds(&plurigenera, &k3, 12);
        assert_eq!(verdict.bound, ratio(1, 448));
    }

    #[test]
    fn bounds_p12_rule() {
        // Synthetic table: P_12 = 5 and a tiny volume.
        let plurigenera: Vec<(u32, Rational)> = (2..=12)
            .map(|m| (m, if m == 12 { integer(5) } else { integer(1) }))
            .collect();
        let k3 = ratio(1, 1000);
        let verdict = pluricanonical_bounds(&plurigenera, &k3, 12);
        assert!(!verdict.passed);
        assert_eq!(verdict.bound, ratio(1, 360));
        assert_eq!(verdict.detail.as_deref(), Some("P_12 = 5"));
    }

    #[test]
    fn integrality_examples() {
        let winner = basket(&[(2, 1, 3), (4, 3, 1), (5, 3, 1), (6, 5, 1), (7, 5, 1)]);
        let k3 = volume_from_plurigenus(1, &winner, 2, 0);
        assert!(integrality(&table(1, &k3, &winner), 24).passed);

        let empty = Basket::empty();
        assert!(integrality(&table(1, &integer(6), &empty), 24).passed);

        // One singularity with the volume forced by P_2 = 0: integer Delta_n
        // values telescope into integer plurigenera all the way up.
        let lone = basket(&[(2, 1, 1)]);
        let k3 = volume_from_plurigenus(1, &lone, 2, 0);
        assert_eq!(k3, ratio(11, 2));
        let verdict = integrality(&table(1, &k3, &lone), 24);
        assert!(verdict.passed);
        assert_eq!(verdict.witness, integer(0));

        // A genuinely fractional table is reported with its first offender.
        let broken: Vec<(u32, Rational)> =
            vec![(2, integer(0)), (3, ratio(5, 2)), (4, ratio(-1, 3))];
        let verdict = integrality(&broken, 24);
        assert!(!verdict.passed);
        assert_eq!(verdict.witness, integer(2));
        assert_eq!(verdict.detail.as_deref(), Some("P_3 = 5/2"));
    }

    #[test]
    fn filter_set_parsing() {
        let set = FilterSet::from_names("positivity,miyaoka,bounds").unwrap();
        assert_eq!(set, FilterSet::default_set());
        let set = FilterSet::from_names("miyaoka_reid, pluricanonical_bounds").unwrap();
        assert_eq!(
            set.kinds(),
            &[FilterKind::MiyaokaReid, FilterKind::PluricanonicalBounds]
        );
        assert_eq!(FilterSet::from_names("none").unwrap(), FilterSet::none());
        assert!(FilterSet::from_names("positivity,bogus").is_err());
    }

    #[test]
    fn verdict_count_matches_enabled_filters() {
        let winner = basket(&[(2, 1, 3), (4, 3, 1), (5, 3, 1), (6, 5, 1), (7, 5, 1)]);
        let k3 = volume_from_plurigenus(1, &winner, 2, 0);
        let plurigenera = table(1, &k3, &winner);
        let all = FilterSet::from_kinds(FilterKind::ALL);
        let verdicts = all.evaluate(1, &winner, &k3, &plurigenera);
        assert_eq!(verdicts.len(), 4);
        assert!(verdicts.iter().all(|v| v.passed));
        assert!(FilterSet::none()
            .evaluate(1, &winner, &k3, &plurigenera)
            .is_empty());
    }
}
