//! Shared generators and independent oracles for the unit and property
//! tests. Compiled only under `cfg(test)`; the acceptance suite carries its
//! own copies so the two stay independent.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use crate::intlinalg::IntMatrix;

pub fn arb_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |vals| {
            IntMatrix::from_rows(
                vals.chunks(c)
                    .map(|ch| ch.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

pub fn arb_square(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |vals| {
            IntMatrix::from_rows(
                vals.chunks(n)
                    .map(|ch| ch.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

pub fn arb_symmetric(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |vals| {
            let mut m = IntMatrix::zeros(n, n);
            for r in 0..n {
                for c in r..n {
                    let v = BigInt::from(vals[r * n + c]);
                    m.set(r, c, v.clone());
                    m.set(c, r, v);
                }
            }
            m
        })
    })
}

/// Elementary-operation words; applied to the identity they yield random
/// unimodular matrices.
pub type ElemOps = Vec<(u8, usize, usize, i64)>;

pub fn arb_ops(len: usize) -> impl Strategy<Value = ElemOps> {
    proptest::collection::vec((any::<u8>(), 0usize..16, 0usize..16, -4i64..=4), 0..=len)
}

pub fn unimodular_from_ops(n: usize, ops: &[(u8, usize, usize, i64)]) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    if n == 0 {
        return p;
    }
    for &(kind, a, b, c) in ops {
        let (i, j) = (a % n, b % n);
        match kind % 3 {
            0 if i != j => p.row_sub_mul(i, j, &BigInt::from(c % 4)),
            1 => p.swap_rows(i, j),
            _ => p.negate_row(i),
        }
    }
    p
}

/// Same word, but accumulating the inverse matrix alongside: inverse
/// elementary operations applied in reverse order.
pub fn unimodular_pair_from_ops(n: usize, ops: &[(u8, usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let p = unimodular_from_ops(n, ops);
    let mut inv = IntMatrix::identity(n);
    if n == 0 {
        return (p, inv);
    }
    for &(kind, a, b, c) in ops.iter().rev() {
        let (i, j) = (a % n, b % n);
        match kind % 3 {
            0 if i != j => inv.row_sub_mul(i, j, &BigInt::from(-(c % 4))),
            1 => inv.swap_rows(i, j),
            _ => inv.negate_row(i),
        }
    }
    (p, inv)
}

/// Naive cofactor-expansion determinant, independent of the Bareiss path it
/// cross-checks.
pub fn cofactor_determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert!(m.is_square());
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut det = BigInt::zero();
    for c in 0..n {
        if m.at(0, c).is_zero() {
            continue;
        }
        let mut minor = IntMatrix::zeros(n - 1, n - 1);
        for r in 1..n {
            let mut cc = 0;
            for k in 0..n {
                if k == c {
                    continue;
                }
                minor.set(r - 1, cc, m.at(r, k).clone());
                cc += 1;
            }
        }
        let term = m.at(0, c) * cofactor_determinant(&minor);
        if c % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::determinant;
    use num_traits::Signed;

    #[test]
    fn inverse_pair_multiplies_to_identity() {
        let ops = vec![(0u8, 1usize, 2usize, 3i64), (1, 0, 3, 0), (2, 2, 2, 0), (0, 3, 0, -2)];
        let (p, inv) = unimodular_pair_from_ops(4, &ops);
        assert!(p.mul(&inv).is_identity());
        assert!(determinant(&p).unwrap().abs().is_one());
    }
}
