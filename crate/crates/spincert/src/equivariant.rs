//! Involutions acting on integral forms.
//!
//! The lattice of a form with involution g splits as a module over the group
//! ring of the order-2 group into trivial, sign, and free (regular) summands
//! with multiplicities (a, b, c). The two Tate cohomology groups
//! ker(g-1)/im(g+1) and ker(g+1)/im(g-1) are elementary abelian 2-groups of
//! dimensions a and b, which we read off from Smith normal forms; c follows
//! from the rank of the fixed sublattice.
//!
//! A locally linear involution with isolated fixed points realizing an even
//! unimodular form exists when the sign part vanishes (the module is trivial
//! + free), all pairings of a vector with its image are even, and the
//! G-signature vanishes; the action then has (rank of trivial part) + 2
//! fixed points.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::forms::{IntSymForm, Parity};
use crate::intlinalg::{inertia, kernel_basis, smith_normal_form, solve_exact, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error("matrix does not square to the identity")]
    NotInvolution,
    #[error("involution does not preserve the form (gᵀΨg ≠ Ψ)")]
    NotIsometry,
    #[error("dimension mismatch: form has rank {form_rank}, g is {g_rows}x{g_cols}")]
    DimensionMismatch {
        form_rank: usize,
        g_rows: usize,
        g_cols: usize,
    },
}

/// A lattice automorphism of order dividing 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    matrix: IntMatrix,
}

impl Involution {
    pub fn new(matrix: IntMatrix) -> Result<Self, EquivariantError> {
        if !matrix.is_square() || !matrix.mul(&matrix).is_identity() {
            return Err(EquivariantError::NotInvolution);
        }
        Ok(Involution { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// A form together with an involutive isometry of its lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantForm {
    form: IntSymForm,
    g: Involution,
}

/// Multiplicities of the trivial, sign, and free summands of the lattice as
/// a module over the group ring of the order-2 group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleDecomposition {
    pub trivial_rank: usize,
    pub sign_rank: usize,
    pub free_rank: usize,
}

impl ModuleDecomposition {
    pub fn total_rank(&self) -> usize {
        self.trivial_rank + self.sign_rank + 2 * self.free_rank
    }
}

/// Outcome of the three realization conditions for a locally linear
/// involution with isolated fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    pub form_even: bool,
    pub form_unimodular: bool,
    pub decomposition: ModuleDecomposition,
    /// Condition 1: the module splits as trivial + free (no sign summands).
    pub condition1: bool,
    /// Condition 2: the pairing of every vector with its image is even.
    pub condition2: bool,
    /// Condition 3: the G-signature vanishes.
    pub condition3: bool,
    pub g_signature: i64,
    pub trivial_rank: usize,
    /// Populated only when the form is admissible and all three conditions
    /// hold; equals trivial_rank + 2.
    pub fixed_point_count: Option<usize>,
}

impl RealizationReport {
    pub fn all_pass(&self) -> bool {
        self.form_even
            && self.form_unimodular
            && self.condition1
            && self.condition2
            && self.condition3
    }
}

impl EquivariantForm {
    /// Validates that `g` is an involutive isometry of `form`.
    pub fn new(form: IntSymForm, g: IntMatrix) -> Result<Self, EquivariantError> {
        if g.rows() != form.rank() || g.cols() != form.rank() {
            return Err(EquivariantError::DimensionMismatch {
                form_rank: form.rank(),
                g_rows: g.rows(),
                g_cols: g.cols(),
            });
        }
        let g = Involution::new(g)?;
        let conj = g.matrix().transpose().mul(form.gram()).mul(g.matrix());
        if &conj != form.gram() {
            return Err(EquivariantError::NotIsometry);
        }
        Ok(EquivariantForm { form, g })
    }

    pub fn form(&self) -> &IntSymForm {
        &self.form
    }

    pub fn g(&self) -> &IntMatrix {
        self.g.matrix()
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    /// Multiplicities (a, b, c) of the trivial, sign, and free summands.
    ///
    /// a and b are the 2-ranks of ker(g-1)/im(g+1) and ker(g+1)/im(g-1);
    /// both quotients are killed by 2, so they are counted by the non-unit
    /// invariant factors once the image generators are rewritten in a kernel
    /// basis. Integer kernels of integer matrices are saturated, so no
    /// extra saturation step is needed.
    pub fn decompose_module(&self) -> ModuleDecomposition {
        let n = self.rank();
        let id = IntMatrix::identity(n);
        let g_minus = self.g().sub(&id);
        let g_plus = self.g().add(&id);

        let fixed = kernel_basis(&g_minus); // rank a + c
        let anti = kernel_basis(&g_plus); // rank b + c

        let a = tate_two_rank(&fixed, &g_plus);
        let b = tate_two_rank(&anti, &g_minus);
        let c = fixed.cols() - a;

        let dec = ModuleDecomposition {
            trivial_rank: a,
            sign_rank: b,
            free_rank: c,
        };
        debug_assert_eq!(dec.total_rank(), n);
        debug_assert_eq!(anti.cols(), b + c);
        dec
    }

    /// Condition 2: the self-pairing of every vector with its image is even.
    /// Cross terms pair up, so checking the basis vectors suffices.
    pub fn check_even_pairing(&self) -> bool {
        let paired = self.form.gram().mul(self.g());
        (0..self.rank()).all(|i| (paired.at(i, i) % 2i32).is_zero())
    }

    /// Signature of the form restricted to the +1 eigenspace minus the
    /// signature on the -1 eigenspace, computed exactly.
    pub fn g_signature(&self) -> i64 {
        let n = self.rank();
        let id = IntMatrix::identity(n);
        let plus_basis = kernel_basis(&self.g().sub(&id));
        let minus_basis = kernel_basis(&self.g().add(&id));
        restricted_signature(self.form.gram(), &plus_basis)
            - restricted_signature(self.form.gram(), &minus_basis)
    }

    /// Runs the three realization conditions and reports the fixed-point
    /// count when everything passes.
    pub fn check_edmonds_ewing(&self) -> RealizationReport {
        let inv = self.form.invariants();
        let form_even = inv.parity == Parity::Even;
        let form_unimodular = inv.is_unimodular();
        let decomposition = self.decompose_module();
        let condition1 = decomposition.sign_rank == 0;
        let condition2 = self.check_even_pairing();
        let g_signature = self.g_signature();
        let condition3 = g_signature == 0;
        let trivial_rank = decomposition.trivial_rank;
        let all = form_even && form_unimodular && condition1 && condition2 && condition3;
        RealizationReport {
            form_even,
            form_unimodular,
            decomposition,
            condition1,
            condition2,
            condition3,
            g_signature,
            trivial_rank,
            fixed_point_count: all.then_some(trivial_rank + 2),
        }
    }
}

/// 2-rank of kernel/im(generators): rewrites the columns of `generators` in
/// the kernel basis and counts non-unit invariant factors of the resulting
/// coefficient matrix.
fn tate_two_rank(kernel: &IntMatrix, generators: &IntMatrix) -> usize {
    if kernel.cols() == 0 {
        return 0;
    }
    let coeffs = solve_exact(kernel, generators)
        .expect("image of g±1 lies in the kernel of g∓1 since g² = 1");
    let snf = smith_normal_form(&coeffs);
    // SNF diagonals are nonnegative, so units are exactly the ones
    let units = snf.diagonal().iter().filter(|d| d.is_one()).count();
    kernel.cols() - units
}

fn restricted_signature(gram: &IntMatrix, basis: &IntMatrix) -> i64 {
    if basis.cols() == 0 {
        return 0;
    }
    let restricted = basis.transpose().mul(gram).mul(basis);
    inertia(&restricted)
        .expect("restriction of a symmetric form is symmetric")
        .signature()
}
