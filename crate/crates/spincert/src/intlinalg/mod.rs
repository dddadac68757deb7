//! Exact integer and rational matrix kernels shared by every other module:
//! arbitrary-precision matrices, Smith normal form with transforms,
//! fraction-free determinants, and rational inertia. No floating point
//! anywhere.

mod inertia;
mod matrix;
mod snf;

pub use inertia::{inertia, signature, Inertia};
pub use matrix::{determinant, is_unimodular, IntMatrix};
pub use snf::{kernel_basis, rank, smith_normal_form, solve_exact, SnfResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        got: usize,
        expected: usize,
    },
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::testutil::{
        arb_matrix, arb_ops, arb_square, arb_symmetric, cofactor_determinant,
        unimodular_from_ops,
    };
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snf_reconstructs(m in arb_matrix(8)) {
            let snf = smith_normal_form(&m);
            prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
            prop_assert!(determinant(&snf.u).unwrap().abs().is_one());
            prop_assert!(determinant(&snf.v).unwrap().abs().is_one());
            let diag = snf.diagonal();
            for i in 0..diag.len() {
                prop_assert!(!diag[i].is_negative());
                if i + 1 < diag.len() && !diag[i].is_zero() {
                    prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
                }
            }
        }

        #[test]
        fn inertia_is_congruence_invariant(m in arb_symmetric(6), ops in arb_ops(12)) {
            let p = unimodular_from_ops(m.rows(), &ops);
            let conj = p.transpose().mul(&m).mul(&p);
            prop_assert_eq!(inertia(&m).unwrap(), inertia(&conj).unwrap());
        }

        #[test]
        fn determinant_matches_cofactor_oracle(m in arb_square(6)) {
            prop_assert_eq!(determinant(&m).unwrap(), cofactor_determinant(&m));
        }

        #[test]
        fn signature_additive_under_block_sum(a in arb_symmetric(4), b in arb_symmetric(4)) {
            let sum = IntMatrix::block_diag(&[&a, &b]);
            let ia = inertia(&a).unwrap();
            let ib = inertia(&b).unwrap();
            let isum = inertia(&sum).unwrap();
            prop_assert_eq!(isum.signature(), ia.signature() + ib.signature());
            prop_assert_eq!(isum.positive, ia.positive + ib.positive);
            prop_assert_eq!(isum.negative, ia.negative + ib.negative);
        }

        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix(7)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.cols(), m.cols() - rank(&m));
            if k.cols() > 0 {
                prop_assert!(m.mul(&k).is_zero());
            }
        }
    }
}
