//! Terminal quotient singularity classes and baskets.
//!
//! A class `1/r(a,-a,1)` is determined by its index `r >= 2` and a weight
//! `a` coprime to `r`; the weights `a` and `r - a` give the same class, so
//! the canonical representative carries the larger of the two (for `r = 2`
//! both are 1). The inverse `b` of `a` mod `r` is precomputed because every
//! correction term is a sum over residues of `b*j` mod `r`.

use std::cmp::Ordering;
use std::fmt;

use crate::Error;

fn gcd(mut x: u32, mut y: u32) -> u32 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// The unique `b` with `0 < b < r` and `a*b = 1 (mod r)`.
///
/// Rejects `r < 2`, weights outside `0 < a < r`, and non-coprime pairs.
pub fn mod_inverse(a: u32, r: u32) -> Result<u32, Error> {
    if r < 2 {
        return Err(Error::IndexOutOfRange { r });
    }
    if a == 0 || a >= r {
        return Err(Error::WeightOutOfRange { r, a });
    }
    // Extended Euclid on (a, r); gcd != 1 falls out of the same loop.
    let (mut old_r, mut cur_r) = (a as i64, r as i64);
    let (mut old_s, mut cur_s) = (1i64, 0i64);
    while cur_r != 0 {
        let q = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - q * cur_r);
        (old_s, cur_s) = (cur_s, old_s - q * cur_s);
    }
    if old_r != 1 {
        return Err(Error::NotCoprime { r, a });
    }
    Ok(old_s.rem_euclid(r as i64) as u32)
}

/// A class of terminal quotient singularity `1/r(a,-a,1)`.
///
/// Always stored with the canonical weight (`r/2 < a < r`, except the
/// self-symmetric `1/2(1,-1,1)`), so two values compare equal exactly when
/// they are the same class.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotientSingularity {
    r: u32,
    a: u32,
    b: u32,
}

impl QuotientSingularity {
    /// Builds the canonical representative of the class of `1/r(a,-a,1)`,
    /// replacing `a` by `r - a` when that is the larger weight.
    pub fn new(r: u32, a: u32) -> Result<Self, Error> {
        if r < 2 {
            return Err(Error::IndexOutOfRange { r });
        }
        if a == 0 || a >= r {
            return Err(Error::WeightOutOfRange { r, a });
        }
        if gcd(a, r) != 1 {
            return Err(Error::NotCoprime { r, a });
        }
        let a = a.max(r - a);
        let b = mod_inverse(a, r)?;
        Ok(Self { r, a, b })
    }

    pub fn index(&self) -> u32 {
        self.r
    }

    pub fn weight(&self) -> u32 {
        self.a
    }

    /// The modular inverse of the weight: `weight * inverse = 1 (mod r)`.
    pub fn inverse_weight(&self) -> u32 {
        self.b
    }
}

impl fmt::Display for QuotientSingularity {
    /// Short form used by the basket grammar: `1/7(5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}({})", self.r, self.a)
    }
}

impl fmt::Debug for QuotientSingularity {
    /// Full form: `1/7(5,-5,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}({},-{},1)", self.r, self.a, self.a)
    }
}

impl Ord for QuotientSingularity {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.r, self.a).cmp(&(other.r, other.a))
    }
}

impl PartialOrd for QuotientSingularity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite multiset of quotient singularity classes.
///
/// Entries are kept sorted by `(r, a)` with positive multiplicities and no
/// duplicate classes, so equal baskets are structurally equal and the
/// derived ordering is a canonical total order on baskets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Basket {
    entries: Vec<(QuotientSingularity, u32)>,
}

impl Basket {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Canonicalizes: merges duplicate classes, drops zero multiplicities,
    /// sorts by `(r, a)`.
    pub fn new(entries: impl IntoIterator<Item = (QuotientSingularity, u32)>) -> Self {
        let mut entries: Vec<(QuotientSingularity, u32)> =
            entries.into_iter().filter(|&(_, m)| m > 0).collect();
        entries.sort_by_key(|&(q, _)| q);
        entries.dedup_by(|later, first| {
            if first.0 == later.0 {
                first.1 += later.1;
                true
            } else {
                false
            }
        });
        Self { entries }
    }

    pub fn entries(&self) -> &[(QuotientSingularity, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of singularities counted with multiplicity.
    pub fn total_multiplicity(&self) -> u32 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }
}

impl fmt::Display for Basket {
    /// Grammar form: `3*1/2(1)+1/4(3)+1/5(3)`. The empty basket prints as
    /// the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, mult)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if *mult > 1 {
                write!(f, "{mult}*")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}
