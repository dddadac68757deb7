use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `u * input * v = d` with unimodular `u`, `v` and a
/// nonnegative diagonal `d` whose entries form a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let t = self.d.rows().min(self.d.cols());
        (0..t).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// Number of nonzero invariant factors = rank of the input.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|e| !e.is_zero()).count()
    }
}

/// Locates the entry of smallest nonzero absolute value in the trailing
/// submatrix starting at `(k, k)`, ties broken by lowest (row, col). The
/// fixed rule keeps the reduction deterministic, which certificate replay
/// depends on.
fn find_pivot(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in k..d.rows() {
        for c in k..d.cols() {
            let e = d.at(r, c);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((cur, _, _)) if *cur <= a => {}
                _ => best = Some((a, r, c)),
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// Smith normal form over the integers.
///
/// Pivoting rule: smallest nonzero absolute value, ties by lowest (row, col).
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    let mut k = 0;
    while k < steps {
        let Some((pr, pc)) = find_pivot(&d, k) else {
            break; // trailing submatrix is zero
        };
        d.swap_rows(k, pr);
        u.swap_rows(k, pr);
        d.swap_cols(k, pc);
        v.swap_cols(k, pc);

        // Clear row and column k. Truncated quotients leave remainders
        // strictly smaller than the pivot, so re-picking the pivot makes
        // progress and the loop terminates.
        loop {
            let mut dirty = false;
            for r in k + 1..rows {
                if d.at(r, k).is_zero() {
                    continue;
                }
                let q = d.at(r, k) / d.at(k, k);
                d.row_sub_mul(r, k, &q);
                u.row_sub_mul(r, k, &q);
                if !d.at(r, k).is_zero() {
                    dirty = true;
                }
            }
            for c in k + 1..cols {
                if d.at(k, c).is_zero() {
                    continue;
                }
                let q = d.at(k, c) / d.at(k, k);
                d.col_sub_mul(c, k, &q);
                v.col_sub_mul(c, k, &q);
                if !d.at(k, c).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            let (pr, pc) = find_pivot(&d, k).expect("nonzero residue implies a pivot");
            d.swap_rows(k, pr);
            u.swap_rows(k, pr);
            d.swap_cols(k, pc);
            v.swap_cols(k, pc);
        }

        // Divisibility fix-up: the pivot must divide every remaining entry,
        // otherwise folding the offending row in and re-reducing shrinks it.
        let violation = (k + 1..rows)
            .flat_map(|r| (k + 1..cols).map(move |c| (r, c)))
            .find(|&(r, c)| !(d.at(r, c) % d.at(k, k)).is_zero());
        if let Some((r, _)) = violation {
            d.row_add(k, r);
            u.row_add(k, r);
            continue; // redo pivot k
        }

        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }

    SnfResult { u, d, v }
}

/// Rank of an integer matrix (number of nonzero invariant factors).
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Basis of the integer kernel `{x : m·x = 0}`, returned as the columns of
/// an `m.cols() × nullity` matrix. The basis consists of columns of the
/// unimodular SNF transform, so the kernel it spans is saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    snf.v.submatrix(0..m.cols(), rank..m.cols())
}

/// Solves `a · x = b` exactly over the integers, if a solution exists.
/// When `a` has full column rank the solution is unique.
pub fn solve_exact(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "dimension mismatch in linear solve");
    let snf = smith_normal_form(a);
    let c = snf.u.mul(b);
    let k = a.cols();
    let p = b.cols();
    let mut y = IntMatrix::zeros(k, p);
    for i in 0..a.rows() {
        let di = if i < k { snf.d.at(i, i).clone() } else { BigInt::zero() };
        for j in 0..p {
            let ci = c.at(i, j);
            if di.is_zero() {
                if !ci.is_zero() {
                    return None;
                }
            } else {
                if !(ci % &di).is_zero() {
                    return None;
                }
                y.set(i, j, ci / &di);
            }
        }
    }
    Some(snf.v.mul(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::determinant;
    use num_traits::One;

    fn check_snf(m: &IntMatrix, snf: &SnfResult) {
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d);
        assert!(determinant(&snf.u).unwrap().abs().is_one());
        assert!(determinant(&snf.v).unwrap().abs().is_one());
        let diag = snf.diagonal();
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() && !diag[i].is_zero() {
                assert!(
                    (&diag[i + 1] % &diag[i]).is_zero(),
                    "divisibility chain broken at {i}: {:?}",
                    diag
                );
            }
            if diag[i].is_zero() && i + 1 < diag.len() {
                assert!(diag[i + 1].is_zero());
            }
        }
        // off-diagonal of d is zero
        for r in 0..snf.d.rows() {
            for c in 0..snf.d.cols() {
                if r != c {
                    assert!(snf.d.at(r, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntMatrix::identity(3);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.d, IntMatrix::identity(3));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.d, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::from_i64(&[&[0]]);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.d, IntMatrix::from_i64(&[&[0]]));
    }

    #[test]
    fn rectangular_input() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12]]);
        let snf = smith_normal_form(&m);
        check_snf(&m, &snf);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn kernel_of_singular_matrix() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        // saturated: the only primitive kernel vectors are ±(2, -1)
        let plus = IntMatrix::from_i64(&[&[2], &[-1]]);
        assert!(k == plus || k == plus.neg());
    }

    #[test]
    fn solve_roundtrip() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[1, -1], &[0, 2]]);
        let x = IntMatrix::from_i64(&[&[3], &[5]]);
        let b = a.mul(&x);
        let got = solve_exact(&a, &b).unwrap();
        assert_eq!(got, x);
        let unsolvable = IntMatrix::from_i64(&[&[1], &[1], &[1]]);
        assert!(solve_exact(&a, &unsolvable).is_none());
    }
}
