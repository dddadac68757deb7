use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::MatrixError;

/// Sign counts of a rational congruence diagonalization of a symmetric
/// matrix. Well defined by Sylvester's law of inertia.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

/// Exact inertia of a symmetric integer matrix via Lagrange reduction over
/// the rationals.
///
/// Two-phase pivoting: a nonzero diagonal entry is split off as a rank-one
/// summand; when the active diagonal is entirely zero, a nonzero off-diagonal
/// entry spans a hyperbolic 2x2 block contributing (+1, -1). Hyperbolic forms
/// have all-zero diagonals, so the second phase is not optional.
pub fn inertia(m: &IntMatrix) -> Result<Inertia, MatrixError> {
    if !m.is_symmetric() {
        return Err(MatrixError::NotSymmetric);
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| BigRational::from(m.at(r, c).clone()))
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut positive = 0;
    let mut negative = 0;

    while !active.is_empty() {
        // Phase 1: first nonzero diagonal entry among the active indices.
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let i = active.remove(pos);
            let pivot = a[i][i].clone();
            if pivot.is_positive() {
                positive += 1;
            } else {
                negative += 1;
            }
            // Schur complement of the 1x1 block; only indices coupled to the
            // pivot row need work.
            let coupled: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&j| !a[j][i].is_zero())
                .collect();
            for (jpos, &j) in coupled.iter().enumerate() {
                let cj = &a[j][i] / &pivot;
                for &k in &coupled[jpos..] {
                    let delta = &cj * &a[i][k];
                    a[j][k] -= &delta;
                    if j != k {
                        let v = a[j][k].clone();
                        a[k][j] = v;
                    }
                }
            }
            for &j in &active {
                a[j][i] = BigRational::zero();
                a[i][j] = BigRational::zero();
            }
            continue;
        }

        // Phase 2: all active diagonal entries vanish; find an off-diagonal
        // pivot. The 2x2 block [[0, b], [b, 0]] contributes (+1, -1).
        let mut pair = None;
        'scan: for (pi, &i) in active.iter().enumerate() {
            for (pj, &j) in active.iter().enumerate().skip(pi + 1) {
                if !a[i][j].is_zero() {
                    pair = Some((pi, pj, i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj, i, j)) = pair else {
            break; // remaining block is identically zero
        };
        positive += 1;
        negative += 1;
        active.remove(pj); // larger position first
        active.remove(pi);
        let b = a[i][j].clone();
        // Split off the hyperbolic plane: v_k -= (a[k][j]/b) v_i + (a[k][i]/b) v_j.
        let rest: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&k| !a[k][i].is_zero() || !a[k][j].is_zero())
            .collect();
        for &k in &rest {
            for &l in &rest {
                if l < k {
                    continue;
                }
                let delta = (&a[k][i] * &a[j][l] + &a[k][j] * &a[i][l]) / &b;
                a[k][l] -= &delta;
                if k != l {
                    let v = a[k][l].clone();
                    a[l][k] = v;
                }
            }
        }
        for &k in &active {
            a[k][i] = BigRational::zero();
            a[i][k] = BigRational::zero();
            a[k][j] = BigRational::zero();
            a[j][k] = BigRational::zero();
        }
    }

    Ok(Inertia {
        positive,
        negative,
        zero: n - positive - negative,
    })
}

/// Signature (positive count minus negative count) of a symmetric matrix.
pub fn signature(m: &IntMatrix) -> Result<i64, MatrixError> {
    Ok(inertia(m)?.signature())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_block() {
        let h = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            inertia(&h).unwrap(),
            Inertia { positive: 1, negative: 1, zero: 0 }
        );
    }

    #[test]
    fn zero_diagonal_with_two() {
        // diagonalizes over the rationals via e1, e2 - e1
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 2]]);
        assert_eq!(
            inertia(&m).unwrap(),
            Inertia { positive: 1, negative: 1, zero: 0 }
        );
    }

    #[test]
    fn degenerate_single_zero() {
        let z = IntMatrix::from_i64(&[&[0]]);
        assert_eq!(
            inertia(&z).unwrap(),
            Inertia { positive: 0, negative: 0, zero: 1 }
        );
    }

    #[test]
    fn not_symmetric_rejected() {
        let m = IntMatrix::from_i64(&[&[0, 1], &[2, 0]]);
        assert!(matches!(inertia(&m), Err(MatrixError::NotSymmetric)));
    }

    #[test]
    fn mixed_block() {
        let m = IntMatrix::from_i64(&[&[2, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
        assert_eq!(
            inertia(&m).unwrap(),
            Inertia { positive: 1, negative: 1, zero: 1 }
        );
    }

    #[test]
    fn empty_matrix() {
        let m = IntMatrix::zeros(0, 0);
        assert_eq!(
            inertia(&m).unwrap(),
            Inertia { positive: 0, negative: 0, zero: 0 }
        );
    }
}
