//! Reid's plurigenera formula and the derived basket invariants.
//!
//! For a minimal 3-fold of general type with basket `B`,
//!
//! ```text
//! P_m = (1 - 2m) chi + m(m-1)(2m-1)/12 * K^3 + l(m),      m >= 2
//! l(m) = sum over B of l(Q, m),
//! l(Q, m) = sum_{j=1}^{m-1} bj(r - bj)/(2r)    (bj taken mod r),
//! ```
//!
//! and the volume-free combinations `Delta_n = n^2 l(2) + l(n) - l(n+1)`
//! packaged as `nabla = (Delta_2, Delta_3, Delta_4+Delta_5,
//! Delta_6+...+Delta_11)`. Reducing `nabla` by the unimodular matrix
//! [`REDUCTION_MATRIX`] turns the search equations into small nonnegative
//! integer targets.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::{integer, Rational};
use crate::singularity::{Basket, QuotientSingularity};

/// The unimodular reduction matrix `E`; rows act on `nabla` as `nabla * E`.
pub const REDUCTION_MATRIX: [[i64; 4]; 4] = [
    [3, -2, -4, -10],
    [-1, 1, -3, -16],
    [0, 0, 1, -7],
    [0, 0, 0, 1],
];

/// Exact inverse of [`REDUCTION_MATRIX`] (det E = 1, so it is integral).
pub const REDUCTION_MATRIX_INV: [[i64; 4]; 4] =
    [[1, 2, 10, 112], [1, 3, 13, 149], [0, 0, 1, 7], [0, 0, 0, 1]];

/// The local correction term `l(Q, m)`, an exact rational with denominator
/// dividing `2r`. Empty sum (zero) for `m <= 1`.
pub fn local_correction(q: &QuotientSingularity, m: u32) -> Rational {
    let r = q.index() as u64;
    let b = q.inverse_weight() as u64;
    let mut numerator: u128 = 0;
    for j in 1..m as u64 {
        let bj = b * j % r;
        numerator += (bj * (r - bj)) as u128;
    }
    Rational::new(BigInt::from(numerator), BigInt::from(2 * r))
}

/// The basket-level correction term `l(m)`: multiplicity-weighted sum of
/// [`local_correction`] over the entries.
pub fn basket_correction(basket: &Basket, m: u32) -> Rational {
    let mut total = Rational::zero();
    for (q, mult) in basket.entries() {
        total += local_correction(q, m) * integer(*mult as i64);
    }
    total
}

fn volume_coefficient(m: u32) -> Rational {
    let m = m as u128;
    Rational::new(BigInt::from(m * (m - 1) * (2 * m - 1)), BigInt::from(12))
}

/// Reid's formula `P_m = (1-2m) chi + m(m-1)(2m-1)/12 K^3 + l(m)`.
///
/// The result is returned as an exact rational even when it is not an
/// integer; deciding whether a non-integer plurigenus invalidates a basket
/// is a filter concern.
pub fn plurigenus(chi: i64, k3: &Rational, basket: &Basket, m: u32) -> Rational {
    assert!(m >= 2, "plurigenus needs m >= 2, got {m}");
    let euler_term = Rational::from_integer(BigInt::from(1 - 2 * m as i64) * BigInt::from(chi));
    euler_term + volume_coefficient(m) * k3 + basket_correction(basket, m)
}

/// Solves Reid's formula for the volume:
/// `K^3 = (P_m - (1-2m) chi - l(m)) * 12 / (m(m-1)(2m-1))`.
///
/// Zero or negative results are returned as-is; positivity is a filter.
pub fn volume_from_plurigenus(chi: i64, basket: &Basket, m: u32, p_m: i64) -> Rational {
    assert!(m >= 2, "volume_from_plurigenus needs m >= 2, got {m}");
    let euler_term = Rational::from_integer(BigInt::from(1 - 2 * m as i64) * BigInt::from(chi));
    (integer(p_m) - euler_term - basket_correction(basket, m)) / volume_coefficient(m)
}

/// `Delta_n(Q) = n^2 l(Q,2) + l(Q,n) - l(Q,n+1)`; the volume cancels out of
/// this combination, which is what makes the search targets finite.
pub fn delta(q: &QuotientSingularity, n: u32) -> Rational {
    assert!(n >= 2, "delta needs n >= 2, got {n}");
    let n_squared = Rational::from_integer(BigInt::from(n as u64 * n as u64));
    n_squared * local_correction(q, 2) + local_correction(q, n) - local_correction(q, n + 1)
}

/// The four-component invariant
/// `(Delta_2, Delta_3, Delta_4 + Delta_5, Delta_6 + ... + Delta_11)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NablaVector(pub [Rational; 4]);

/// `nabla * E`, the reduced invariant used as the search target space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedNablaVector(pub [Rational; 4]);

fn row_times_matrix(v: &[Rational; 4], m: &[[i64; 4]; 4]) -> [Rational; 4] {
    std::array::from_fn(|j| {
        let mut acc = Rational::zero();
        for i in 0..4 {
            acc += &v[i] * integer(m[i][j]);
        }
        acc
    })
}

fn integer_components(v: &[Rational; 4]) -> Option<[i64; 4]> {
    let mut out = [0i64; 4];
    for (slot, c) in out.iter_mut().zip(v) {
        *slot = crate::rational::to_integer(c)?;
    }
    Some(out)
}

impl NablaVector {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn from_integers(v: [i64; 4]) -> Self {
        Self(v.map(integer))
    }

    /// The components as plain integers, if they all are integers.
    pub fn integer_components(&self) -> Option<[i64; 4]> {
        integer_components(&self.0)
    }
}

impl ReducedNablaVector {
    pub fn from_integers(v: [i64; 4]) -> Self {
        Self(v.map(integer))
    }

    pub fn integer_components(&self) -> Option<[i64; 4]> {
        integer_components(&self.0)
    }
}

/// `nabla` of a single singularity class.
pub fn nabla_vector(q: &QuotientSingularity) -> NablaVector {
    let d: Vec<Rational> = (2..=11).map(|n| delta(q, n)).collect();
    NablaVector([
        d[0].clone(),
        d[1].clone(),
        &d[2] + &d[3],
        d[4..].iter().sum(),
    ])
}

/// `nabla * E`. Exact, and invertible over the integers via [`unreduce_nabla`].
pub fn reduce_nabla(v: &NablaVector) -> ReducedNablaVector {
    ReducedNablaVector(row_times_matrix(&v.0, &REDUCTION_MATRIX))
}

/// Inverse of [`reduce_nabla`]: `reduced * E^(-1)`.
pub fn unreduce_nabla(v: &ReducedNablaVector) -> NablaVector {
    NablaVector(row_times_matrix(&v.0, &REDUCTION_MATRIX_INV))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn q(r: u32, a: u32) -> QuotientSingularity {
        QuotientSingularity::new(r, a).unwrap()
    }

    fn basket(entries: &[(u32, u32, u32)]) -> Basket {
        Basket::new(entries.iter().map(|&(r, a, m)| (q(r, a), m)))
    }

    #[test]
    fn local_correction_examples() {
        assert_eq!(local_correction(&q(2, 1), 1), integer(0));
        // Hand summation j = 1..3: 1/4 + 0 + 1/4.
        assert_eq!(local_correction(&q(2, 1), 4), ratio(1, 2));
        // sum_{j=1}^{11} j(43-j)/86 = (43*66 - 506)/86.
        assert_eq!(local_correction(&q(43, 1), 12), ratio(1166, 43));
    }

    #[test]
    fn basket_correction_examples() {
        assert_eq!(basket_correction(&Basket::empty(), 7), integer(0));
        let case_i = basket(&[(5, 3, 2), (2, 1, 3), (3, 2, 2), (4, 3, 1)]);
        assert_eq!(basket_correction(&case_i, 2), ratio(359, 120));
        // Term by term: 3*(1/4) + 3/8 + 3/5 + 5/12 + 6/7.
        let winner = basket(&[(2, 1, 3), (4, 3, 1), (5, 3, 1), (6, 5, 1), (7, 5, 1)]);
        assert_eq!(basket_correction(&winner, 2), ratio(2519, 840));
    }

    #[test]
    fn plurigenus_examples() {
        let case_i = basket(&[(5, 3, 2), (2, 1, 3), (3, 2, 2), (4, 3, 1)]);
        assert_eq!(plurigenus(1, &ratio(1, 60), &case_i, 2), integer(0));

        let winner = basket(&[(2, 1, 3), (4, 3, 1), (5, 3, 1), (6, 5, 1), (7, 5, 1)]);
        assert_eq!(plurigenus(1, &ratio(1, 420), &winner, 12), integer(3));

        let excluded = basket(&[(4, 3, 1), (5, 3, 2), (11, 7, 1), (3, 2, 1)]);
        assert_eq!(plurigenus(1, &ratio(1, 660), &excluded, 7), integer(2));
    }

    #[test]
    fn volume_examples() {
        let case_i = basket(&[(5, 3, 2), (2, 1, 3), (3, 2, 2), (4, 3, 1)]);
        assert_eq!(volume_from_plurigenus(1, &case_i, 2, 0), ratio(1, 60));

        let winner = basket(&[(2, 1, 3), (4, 3, 1), (5, 3, 1), (6, 5, 1), (7, 5, 1)]);
        assert_eq!(volume_from_plurigenus(1, &winner, 2, 0), ratio(1, 420));
        // Independent route: 2*(3 - 2519/840) = 2/840.
        assert_eq!((integer(3) - ratio(2519, 840)) * integer(2), ratio(1, 420));

        assert_eq!(
            volume_from_plurigenus(1, &Basket::empty(), 2, 0),
            integer(6)
        );
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&q(2, 1), 2), integer(1));
        assert_eq!(delta(&q(5, 3), 3), integer(5));
        // The published row for 1/18(13,-13,1) misprints this value as 8.
        assert_eq!(delta(&q(18, 13), 3), integer(18));
    }

    #[test]
    fn nabla_vector_examples() {
        assert_eq!(
            nabla_vector(&q(2, 1)).integer_components(),
            Some([1, 2, 10, 112])
        );
        assert_eq!(
            nabla_vector(&q(5, 3)).integer_components(),
            Some([2, 5, 24, 268])
        );
        assert_eq!(
            nabla_vector(&q(9, 7)).integer_components(),
            Some([4, 9, 44, 497])
        );
    }

    #[test]
    fn reduction_examples() {
        // Orientation regression: row 1 of the published table pins nabla * E.
        let reduced = reduce_nabla(&NablaVector::from_integers([1, 2, 10, 112]));
        assert_eq!(reduced.integer_components(), Some([1, 0, 0, 0]));

        let reduced = reduce_nabla(&NablaVector::from_integers([10, 25, 119, 1337]));
        assert_eq!(reduced.integer_components(), Some([5, 5, 4, 4]));

        let zero = ReducedNablaVector::from_integers([0, 0, 0, 0]);
        assert_eq!(reduce_nabla(&unreduce_nabla(&zero)), zero);
    }

    #[test]
    fn reduction_matrix_is_unimodular() {
        // Independent oracle: cofactor expansion for the determinant.
        fn det(m: &[Vec<i64>]) -> i64 {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            let mut acc = 0;
            for (j, lead) in m[0].iter().enumerate() {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                acc += lead * det(&minor) * if j % 2 == 0 { 1 } else { -1 };
            }
            acc
        }
        let e: Vec<Vec<i64>> = REDUCTION_MATRIX.iter().map(|r| r.to_vec()).collect();
        assert_eq!(det(&e), 1);

        // The hard-coded inverse really is E^(-1), on both sides.
        for i in 0..4 {
            for j in 0..4 {
                let forward: i64 = (0..4)
                    .map(|k| REDUCTION_MATRIX[i][k] * REDUCTION_MATRIX_INV[k][j])
                    .sum();
                let backward: i64 = (0..4)
                    .map(|k| REDUCTION_MATRIX_INV[i][k] * REDUCTION_MATRIX[k][j])
                    .sum();
                let expected = i64::from(i == j);
                assert_eq!(forward, expected);
                assert_eq!(backward, expected);
            }
        }
    }

    #[test]
    fn correction_denominator_divides_2r() {
        for r in 2..=42u32 {
            for a in 1..r {
                let Ok(q) = QuotientSingularity::new(r, a) else {
                    continue;
                };
                for m in 1..=24 {
                    let l = local_correction(&q, m);
                    let two_r = BigInt::from(2 * r);
                    assert!(
                        (&two_r % l.denom()).is_zero(),
                        "denominator of l({q}, {m}) does not divide 2r"
                    );
                }
            }
        }
    }
}
