//! Builds the standard locally linear involution on the form n(-E8) + mH
//! for parameters (n, m, r): the involution swaps two copies of (n/2)(-E8),
//! swaps two copies of ((m-r)/2)H, and fixes a rank-2r block carrying the
//! zero/two linking form, which is realized by a framed link of 2r Hopf
//! fibers. The action has 2r + 2 isolated fixed points.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivariant::EquivariantForm;
use crate::forms::{direct_sum, e8, hyperbolic, linking_form, IntSymForm};
use crate::intlinalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("n = {n} must be a positive even integer (the construction swaps two halves)")]
    OddN { n: usize },
    #[error("m = {m} violates the smooth existence bound m >= n+1 for n = {n}")]
    FurutaViolation { n: usize, m: usize },
    #[error("r = {r} is invalid for m = {m}: need 1 <= r < m and r ≡ m mod 2")]
    BadR { r: usize, m: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Parameters of the standard action: `n` copies of -E8, `m` hyperbolic
/// summands, and the rank parameter `r` of the fixed block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionParams {
    pub n: usize,
    pub m: usize,
    pub r: usize,
}

impl ActionParams {
    pub fn new(n: usize, m: usize, r: usize) -> Result<Self, ConstructionError> {
        let params = ActionParams { n, m, r };
        params.validate()?;
        Ok(params)
    }

    /// Defaults r to m - 2, the largest admissible choice. The verdict does
    /// not depend on r; only the reported fixed-point count does.
    pub fn with_default_r(n: usize, m: usize) -> Self {
        ActionParams {
            n,
            m,
            r: m.saturating_sub(2),
        }
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        if self.n == 0 || self.n % 2 != 0 {
            return Err(ConstructionError::OddN { n: self.n });
        }
        if !furuta_bound(self.n, self.m) {
            return Err(ConstructionError::FurutaViolation {
                n: self.n,
                m: self.m,
            });
        }
        if self.r < 1 || self.r >= self.m || self.r % 2 != self.m % 2 {
            return Err(ConstructionError::BadR {
                r: self.r,
                m: self.m,
            });
        }
        Ok(())
    }

    /// Rank of the underlying form, 8n + 2m.
    pub fn rank(&self) -> usize {
        8 * self.n + 2 * self.m
    }
}

/// Smooth existence bound: a smooth spin manifold with this form needs
/// m >= n + 1.
pub fn furuta_bound(n: usize, m: usize) -> bool {
    m >= n + 1
}

/// Preset for the relatively minimal elliptic surface over a rational base:
/// form k(-E8) + (2k-1)H, with the default (maximal) r.
pub fn elliptic_preset(k: usize) -> Result<ActionParams, ConstructionError> {
    if k < 1 {
        return Err(ConstructionError::InvalidParameter(format!(
            "elliptic preset needs k >= 1, got {k}"
        )));
    }
    Ok(ActionParams::with_default_r(k, 2 * k - 1))
}

/// Framed-link data realizing the fixed block: 2r components, pairwise
/// linking number 1, framings r zeros followed by r twos. Equivariant handle
/// attachment needs every framing even and all off-diagonal linking numbers
/// odd; both hold by construction and are re-validated here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    linking: IntMatrix,
    framings: Vec<i64>,
}

impl FramedLink {
    pub fn new(r: usize) -> Result<Self, ConstructionError> {
        if r < 1 {
            return Err(ConstructionError::InvalidParameter(format!(
                "framed link needs r >= 1, got {r}"
            )));
        }
        let linking = linking_form(r)
            .expect("r >= 1 checked above")
            .gram()
            .clone();
        let framings: Vec<i64> = std::iter::repeat(0)
            .take(r)
            .chain(std::iter::repeat(2).take(r))
            .collect();
        let link = FramedLink { linking, framings };
        link.validate()?;
        Ok(link)
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let n = self.component_count();
        for (i, f) in self.framings.iter().enumerate() {
            if f % 2 != 0 {
                return Err(ConstructionError::InvalidParameter(format!(
                    "framing of component {i} is odd ({f})"
                )));
            }
            if self.linking.at(i, i) != &(*f).into() {
                return Err(ConstructionError::InvalidParameter(format!(
                    "framing of component {i} disagrees with the linking diagonal"
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && (self.linking.at(i, j) % 2i32).is_zero() {
                    return Err(ConstructionError::InvalidParameter(format!(
                        "linking number ({i},{j}) must be odd"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn linking(&self) -> &IntMatrix {
        &self.linking
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn component_count(&self) -> usize {
        self.framings.len()
    }
}

/// One isolated fixed point of the constructed action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPoint {
    /// The fixed point of the central ball, labelled "P".
    Base,
    /// The fixed point of the i-th equivariant 2-handle (1-based), with its
    /// framing.
    Handle { index: usize, framing: i64 },
    /// The fixed point of the contractible cap, labelled "P'".
    Cap,
}

impl FixedPoint {
    pub fn label(&self) -> String {
        match self {
            FixedPoint::Base => "P".to_string(),
            FixedPoint::Handle { index, .. } => format!("Q{index}"),
            FixedPoint::Cap => "P'".to_string(),
        }
    }

    pub fn framing(&self) -> Option<i64> {
        match self {
            FixedPoint::Handle { framing, .. } => Some(*framing),
            _ => None,
        }
    }
}

/// Ordered roster [P, Q1, ..., Q2r, P'] of the action's fixed points. The
/// i-th handle point carries the framing of the i-th link component; only
/// the framing multiset matters downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointRoster {
    points: Vec<FixedPoint>,
}

impl FixedPointRoster {
    fn from_link(link: &FramedLink) -> Self {
        let mut points = Vec::with_capacity(link.component_count() + 2);
        points.push(FixedPoint::Base);
        for (i, &framing) in link.framings().iter().enumerate() {
            points.push(FixedPoint::Handle {
                index: i + 1,
                framing,
            });
        }
        points.push(FixedPoint::Cap);
        FixedPointRoster { points }
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The constructed action: parameters, the validated equivariant form, the
/// framed link of the fixed block, and the fixed-point roster.
///
/// Basis order of the form: n/2 copies of -E8, then n/2 more, then (m-r)/2
/// hyperbolic planes twice, then the rank-2r fixed block. The involution
/// swaps the paired halves and fixes the final block. The construction
/// always satisfies the realization conditions (trivial + free module, even
/// pairings, zero G-signature); the test suites verify this across the
/// parameter sweep.
#[derive(Debug, Clone)]
pub struct StandardAction {
    pub params: ActionParams,
    pub equivariant: EquivariantForm,
    pub link: FramedLink,
    pub roster: FixedPointRoster,
}

impl StandardAction {
    /// Rank where the fixed (trivial) block starts.
    pub fn trivial_offset(&self) -> usize {
        8 * self.params.n + 2 * (self.params.m - self.params.r)
    }

    /// Gram matrix of the form restricted to the fixed block; equals the
    /// zero/two linking form of rank 2r.
    pub fn trivial_block(&self) -> IntMatrix {
        let lo = self.trivial_offset();
        let hi = lo + 2 * self.params.r;
        self.equivariant.form().gram().submatrix(lo..hi, lo..hi)
    }
}

/// Builds the standard action for validated parameters.
pub fn build_action(params: &ActionParams) -> Result<StandardAction, ConstructionError> {
    params.validate()?;
    let (n, m, r) = (params.n, params.m, params.r);

    let minus_e8 = e8().negate();
    let mut parts: Vec<IntSymForm> = vec![minus_e8; n];
    parts.extend(std::iter::repeat(hyperbolic()).take(m - r));
    parts.push(linking_form(r).expect("r >= 1 after validation"));
    let form = direct_sum(&parts);

    let rank = form.rank();
    debug_assert_eq!(rank, params.rank());
    let mut g = IntMatrix::zeros(rank, rank);
    let e8_half = 4 * n; // rank of (n/2)(-E8)
    for i in 0..e8_half {
        g.set(i, e8_half + i, 1.into());
        g.set(e8_half + i, i, 1.into());
    }
    let h_off = 8 * n;
    let h_half = m - r; // rank of ((m-r)/2)H
    for i in 0..h_half {
        g.set(h_off + i, h_off + h_half + i, 1.into());
        g.set(h_off + h_half + i, h_off + i, 1.into());
    }
    let t_off = h_off + 2 * h_half;
    for i in t_off..rank {
        g.set(i, i, 1.into());
    }

    let equivariant = EquivariantForm::new(form, g)
        .expect("swapping identical blocks is an involutive isometry");
    let link = FramedLink::new(r)?;
    let roster = FixedPointRoster::from_link(&link);
    Ok(StandardAction {
        params: *params,
        equivariant,
        link,
        roster,
    })
}
