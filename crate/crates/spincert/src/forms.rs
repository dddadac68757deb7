//! Integral symmetric bilinear forms: standard constructors (E8, the
//! hyperbolic plane, the zero/two linking form), exact invariants, and the
//! classification of indefinite even unimodular forms by rank and signature.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intlinalg::{determinant, inertia, Inertia, IntMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("form is not even (a diagonal Gram entry is odd)")]
    NotEven,
    #[error("form is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("form is not indefinite (definite or degenerate input)")]
    NotIndefinite,
    #[error("signature {0} of an even unimodular form must be a multiple of 8")]
    SignatureNotMultipleOf8(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// An integral symmetric bilinear form, owned by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSymForm {
    gram: IntMatrix,
}

impl IntSymForm {
    /// Wraps a Gram matrix, rejecting non-square and non-symmetric input.
    pub fn new(gram: IntMatrix) -> Result<Self, FormError> {
        if !gram.is_square() {
            return Err(MatrixError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            }
            .into());
        }
        if !gram.is_symmetric() {
            return Err(MatrixError::NotSymmetric.into());
        }
        Ok(IntSymForm { gram })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Entrywise negation; sends E8 to -E8.
    pub fn negate(&self) -> IntSymForm {
        IntSymForm {
            gram: self.gram.neg(),
        }
    }

    /// All self-pairings even, i.e. every diagonal Gram entry even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (self.gram.at(i, i) % 2u8).is_zero())
    }

    pub fn invariants(&self) -> FormInvariants {
        let inertia = inertia(&self.gram).expect("gram is symmetric by construction");
        let det = determinant(&self.gram).expect("gram is square by construction");
        FormInvariants {
            rank: self.rank(),
            signature: inertia.signature(),
            parity: if self.is_even() {
                Parity::Even
            } else {
                Parity::Odd
            },
            definiteness: Definiteness::from_inertia(self.rank(), &inertia),
            inertia,
            det,
        }
    }
}

/// Rank-8 E8 form in the Cartan-matrix basis: diagonal 2, entry -1 exactly
/// for adjacent Dynkin nodes (Bourbaki numbering: chain 1-3-4-5-6-7-8 with
/// node 2 attached to node 4). Positive definite; negate for -E8.
pub fn e8() -> IntSymForm {
    const EDGES: [(usize, usize); 7] = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut gram = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        gram.set(i, i, BigInt::from(2));
    }
    for (a, b) in EDGES {
        gram.set(a, b, BigInt::from(-1));
        gram.set(b, a, BigInt::from(-1));
    }
    IntSymForm { gram }
}

/// The hyperbolic plane H with Gram [[0, 1], [1, 0]].
pub fn hyperbolic() -> IntSymForm {
    IntSymForm {
        gram: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
    }
}

/// Block-diagonal direct sum in the given order; the empty sum is the rank-0
/// form.
pub fn direct_sum(parts: &[IntSymForm]) -> IntSymForm {
    let grams: Vec<&IntMatrix> = parts.iter().map(IntSymForm::gram).collect();
    IntSymForm {
        gram: IntMatrix::block_diag(&grams),
    }
}

/// The 2r x 2r linking form of the construction's framed link: the first r
/// diagonal entries are 0, the last r are 2, and every off-diagonal entry
/// is 1. Even, unimodular of determinant (-1)^r, and isomorphic to rH.
pub fn linking_form(r: usize) -> Result<IntSymForm, FormError> {
    if r < 1 {
        return Err(FormError::InvalidParameter(format!(
            "linking form needs r >= 1, got {r}"
        )));
    }
    let n = 2 * r;
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j {
                if i < r {
                    0
                } else {
                    2
                }
            } else {
                1
            };
            if v != 0 {
                gram.set(i, j, BigInt::from(v));
            }
        }
    }
    Ok(IntSymForm { gram })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Degenerate,
    /// The rank-0 form: neither definite, indefinite, nor degenerate.
    ZeroRank,
}

impl Definiteness {
    fn from_inertia(rank: usize, inertia: &Inertia) -> Definiteness {
        if rank == 0 {
            Definiteness::ZeroRank
        } else if inertia.zero > 0 {
            Definiteness::Degenerate
        } else if inertia.negative == 0 {
            Definiteness::PositiveDefinite
        } else if inertia.positive == 0 {
            Definiteness::NegativeDefinite
        } else {
            Definiteness::Indefinite
        }
    }
}

/// Exact invariants of an integral symmetric form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    pub inertia: Inertia,
    pub signature: i64,
    pub parity: Parity,
    pub det: BigInt,
    pub definiteness: Definiteness,
}

impl FormInvariants {
    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum E8Sign {
    Plus,
    Minus,
}

impl E8Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            E8Sign::Plus => 1,
            E8Sign::Minus => -1,
        }
    }
}

/// Canonical label e8_count * (sign E8) + h_count * H for an indefinite even
/// unimodular form. Mixed-sign E8 summands never occur: indefinite even
/// unimodular forms are classified by rank and signature alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalEvenForm {
    pub e8_count: usize,
    pub e8_sign: E8Sign,
    pub h_count: usize,
}

impl CanonicalEvenForm {
    pub fn rank(&self) -> usize {
        8 * self.e8_count + 2 * self.h_count
    }

    pub fn signature(&self) -> i64 {
        self.e8_sign.as_i64() * 8 * self.e8_count as i64
    }

    /// Materializes the canonical Gram matrix: e8_count copies of (sign E8)
    /// followed by h_count copies of H.
    pub fn form(&self) -> IntSymForm {
        let e8_block = match self.e8_sign {
            E8Sign::Plus => e8(),
            E8Sign::Minus => e8().negate(),
        };
        let mut parts = vec![e8_block; self.e8_count];
        parts.extend(std::iter::repeat(hyperbolic()).take(self.h_count));
        direct_sum(&parts)
    }
}

impl fmt::Display for CanonicalEvenForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.e8_count, self.h_count) {
            (0, h) => write!(f, "{h}H"),
            (e, 0) => write!(f, "{e}({}E8)", sign_str(self.e8_sign)),
            (e, h) => write!(f, "{e}({}E8) + {h}H", sign_str(self.e8_sign)),
        }
    }
}

fn sign_str(s: E8Sign) -> &'static str {
    match s {
        E8Sign::Plus => "+",
        E8Sign::Minus => "-",
    }
}

/// Classifies an indefinite even unimodular form by rank and signature.
///
/// For such forms the isomorphism class is e(±E8) + hH with signature ±8e
/// and rank 8e + 2h; the signature of an even unimodular form is a multiple
/// of 8, so the final error is unreachable for valid input.
pub fn classify_indefinite_even_unimodular(
    f: &IntSymForm,
) -> Result<CanonicalEvenForm, FormError> {
    let inv = f.invariants();
    if inv.parity != Parity::Even {
        return Err(FormError::NotEven);
    }
    if inv.definiteness != Definiteness::Indefinite {
        return Err(FormError::NotIndefinite);
    }
    if !inv.is_unimodular() {
        return Err(FormError::NotUnimodular(inv.det));
    }
    if inv.signature.rem_euclid(8) != 0 {
        return Err(FormError::SignatureNotMultipleOf8(inv.signature));
    }
    let e8_count = (inv.signature.unsigned_abs() / 8) as usize;
    let e8_sign = if inv.signature >= 0 {
        E8Sign::Plus
    } else {
        E8Sign::Minus
    };
    debug_assert!(inv.rank >= 8 * e8_count + 2 && (inv.rank - 8 * e8_count) % 2 == 0);
    Ok(CanonicalEvenForm {
        e8_count,
        e8_sign,
        h_count: (inv.rank - 8 * e8_count) / 2,
    })
}

/// Isomorphism test, restricted to indefinite even unimodular forms where
/// rank and signature decide the class.
pub fn isomorphic(f1: &IntSymForm, f2: &IntSymForm) -> Result<bool, FormError> {
    let c1 = classify_indefinite_even_unimodular(f1)?;
    let c2 = classify_indefinite_even_unimodular(f2)?;
    Ok(c1 == c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_invariants() {
        let f = e8();
        let inv = f.invariants();
        assert_eq!(inv.rank, 8);
        assert_eq!(inv.parity, Parity::Even);
        assert_eq!(inv.det, BigInt::one());
        assert_eq!(
            inv.inertia,
            Inertia { positive: 8, negative: 0, zero: 0 }
        );
        assert_eq!(inv.definiteness, Definiteness::PositiveDefinite);
    }

    #[test]
    fn hyperbolic_invariants() {
        let inv = hyperbolic().invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.signature, 0);
        assert_eq!(inv.parity, Parity::Even);
        assert_eq!(inv.det, BigInt::from(-1));
        assert_eq!(inv.definiteness, Definiteness::Indefinite);
        assert_eq!(
            inv.inertia,
            Inertia { positive: 1, negative: 1, zero: 0 }
        );
    }

    #[test]
    fn direct_sums() {
        let hh = direct_sum(&[hyperbolic(), hyperbolic()]);
        assert_eq!(hh.rank(), 4);
        assert_eq!(
            hh.invariants().inertia,
            Inertia { positive: 2, negative: 2, zero: 0 }
        );

        let me8 = e8().negate();
        let k3ish = direct_sum(&[me8.clone(), me8, hyperbolic(), hyperbolic(), hyperbolic()]);
        assert_eq!(k3ish.invariants().signature, -16);

        let empty = direct_sum(&[]);
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.invariants().det, BigInt::one());
        assert_eq!(empty.invariants().definiteness, Definiteness::ZeroRank);
    }

    #[test]
    fn odd_definite_rank_one() {
        let f = IntSymForm::new(IntMatrix::from_i64(&[&[1]])).unwrap();
        let inv = f.invariants();
        assert_eq!(inv.parity, Parity::Odd);
        assert_eq!(inv.definiteness, Definiteness::PositiveDefinite);
    }

    #[test]
    fn linking_form_small_cases() {
        assert_eq!(
            linking_form(1).unwrap().gram(),
            &IntMatrix::from_i64(&[&[0, 1], &[1, 2]])
        );
        assert_eq!(
            linking_form(2).unwrap().gram(),
            &IntMatrix::from_i64(&[
                &[0, 1, 1, 1],
                &[1, 0, 1, 1],
                &[1, 1, 2, 1],
                &[1, 1, 1, 2]
            ])
        );
        assert_eq!(
            determinant(linking_form(3).unwrap().gram()).unwrap(),
            BigInt::from(-1)
        );
        assert!(matches!(
            linking_form(0),
            Err(FormError::InvalidParameter(_))
        ));
    }

    #[test]
    fn linking_form_matches_a1_invariants() {
        let inv = linking_form(1).unwrap().invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.signature, 0);
        assert_eq!(inv.parity, Parity::Even);
        assert_eq!(inv.det, BigInt::from(-1));
        assert_eq!(inv.definiteness, Definiteness::Indefinite);
    }

    #[test]
    fn classify_linking_forms() {
        for r in 1..=12 {
            let c = classify_indefinite_even_unimodular(&linking_form(r).unwrap()).unwrap();
            assert_eq!((c.e8_count, c.h_count), (0, r), "r = {r}");
        }
    }

    #[test]
    fn classify_mixed_sum() {
        let me8 = e8().negate();
        let f = direct_sum(&[me8.clone(), me8, hyperbolic(), hyperbolic(), hyperbolic()]);
        let c = classify_indefinite_even_unimodular(&f).unwrap();
        assert_eq!(c.e8_count, 2);
        assert_eq!(c.e8_sign, E8Sign::Minus);
        assert_eq!(c.h_count, 3);
        assert_eq!(c.rank(), 22);
        assert_eq!(c.signature(), -16);
    }

    #[test]
    fn classify_rejects_definite_and_odd() {
        assert!(matches!(
            classify_indefinite_even_unimodular(&e8()),
            Err(FormError::NotIndefinite)
        ));
        let odd = IntSymForm::new(IntMatrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap();
        assert!(matches!(
            classify_indefinite_even_unimodular(&odd),
            Err(FormError::NotEven)
        ));
        let degenerate = IntSymForm::new(IntMatrix::from_i64(&[&[0, 0], &[0, 0]])).unwrap();
        assert!(matches!(
            classify_indefinite_even_unimodular(&degenerate),
            Err(FormError::NotIndefinite)
        ));
        let not_unimodular =
            IntSymForm::new(IntMatrix::from_i64(&[&[0, 2], &[2, 0]])).unwrap();
        assert!(matches!(
            classify_indefinite_even_unimodular(&not_unimodular),
            Err(FormError::NotUnimodular(_))
        ));
    }

    #[test]
    fn isomorphism_by_invariants() {
        let hh = direct_sum(&[hyperbolic(), hyperbolic()]);
        assert!(isomorphic(&linking_form(2).unwrap(), &hh).unwrap());
        let me8 = e8().negate();
        let big = direct_sum(&[me8, hyperbolic(), hyperbolic()]);
        assert!(!isomorphic(&hyperbolic(), &big).unwrap());
        assert!(matches!(
            isomorphic(&e8(), &e8()),
            Err(FormError::NotIndefinite)
        ));
    }

    #[test]
    fn non_symmetric_gram_rejected() {
        let err = IntSymForm::new(IntMatrix::from_i64(&[&[0, 1], &[2, 0]]));
        assert!(matches!(
            err,
            Err(FormError::Matrix(MatrixError::NotSymmetric))
        ));
    }

    mod properties {
        use super::*;
        use crate::testutil::{arb_ops, arb_symmetric, unimodular_from_ops};
        use proptest::prelude::*;

        fn arb_canonical() -> impl Strategy<Value = CanonicalEvenForm> {
            (0usize..=2, prop::bool::ANY, 1usize..=4).prop_map(|(e, plus, h)| {
                CanonicalEvenForm {
                    e8_count: e,
                    e8_sign: if plus { E8Sign::Plus } else { E8Sign::Minus },
                    h_count: h,
                }
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn signature_additive(a in arb_symmetric(5), b in arb_symmetric(5)) {
                let fa = IntSymForm::new(a).unwrap();
                let fb = IntSymForm::new(b).unwrap();
                let sum = direct_sum(&[fa.clone(), fb.clone()]);
                prop_assert_eq!(
                    sum.invariants().signature,
                    fa.invariants().signature + fb.invariants().signature
                );
            }

            #[test]
            fn invariants_congruence_invariant(m in arb_symmetric(5), ops in arb_ops(10)) {
                let f = IntSymForm::new(m.clone()).unwrap();
                let p = unimodular_from_ops(m.rows(), &ops);
                let conj = IntSymForm::new(p.transpose().mul(&m).mul(&p)).unwrap();
                let (a, b) = (f.invariants(), conj.invariants());
                prop_assert_eq!(a.rank, b.rank);
                prop_assert_eq!(a.inertia, b.inertia);
                prop_assert_eq!(a.signature, b.signature);
                prop_assert_eq!(a.parity, b.parity);
                prop_assert_eq!(a.definiteness, b.definiteness);
                // dets agree up to the square of det(p) = (+-1)^2
                prop_assert_eq!(a.det, b.det);
            }

            #[test]
            fn classify_inverts_canonical_sum(c in arb_canonical()) {
                let f = c.form();
                let got = classify_indefinite_even_unimodular(&f).unwrap();
                // sign is irrelevant when no E8 summands are present
                prop_assert_eq!(got.e8_count, c.e8_count);
                prop_assert_eq!(got.h_count, c.h_count);
                if c.e8_count > 0 {
                    prop_assert_eq!(got.e8_sign, c.e8_sign);
                }
            }
        }
    }
}
