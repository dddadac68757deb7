//! The smooth-case obstruction calculus and the verdict engine.
//!
//! For a smooth pseudofree involution on a spin 4-manifold, each fixed point
//! carries a sign (from the lift of the involution to the spin structure)
//! and a spin type (from the quotient's cone singularities). Only relative
//! data is computable: an equivariant 2-handle with framing f relates the
//! signs and spin types of its fixed point and the base point by f mod 4,
//! and the two relations agree. Two global constraints then pin the smooth
//! case down:
//!
//! * the total sign sum is a multiple of 8 (an index-theoretic fact), and
//! * the spin-type counts (n+, n-) satisfy sigma/2 ≡ n+ - n- mod 16
//!   (the signature congruence for smooth spin 4-manifolds applied to a
//!   desingularized quotient).
//!
//! For the constructed action the handle relations cancel, the sign sum is
//! forced to 0, the cap point gets the spin type opposite to the base, and
//! the deduced partition is (r+1, r+1). The verdict is `Nonsmoothable`
//! exactly when that partition violates the congruence, i.e. when
//! -4n ≢ 0 mod 16.
//!
//! Everything is replayable: a certificate is a pure function of (n, m, r),
//! and `verify_certificate` recomputes every field.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::{build_action, ActionParams, ConstructionError, StandardAction};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("framing {0} is odd; equivariant handles require even framings")]
    OddFraming(i64),
    #[error("sigma = {0} is not a multiple of 8 (not the signature of a spin form)")]
    SigmaNotSpin(i64),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("no sign sum consistent with the handle relations is a multiple of 8")]
    NoConsistentEpsilonSum,
    #[error("sign sum is nonzero, so its sign cannot be deduced from relative data")]
    AmbiguousEpsilonSum,
    #[error("constructed action failed the realization conditions")]
    RealizationFailed,
}

/// Relation between the signs (or spin types) of two fixed points. Absolute
/// values are never needed; the relations form the group of order 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelativeSign {
    Same,
    Opposite,
}

impl RelativeSign {
    pub fn compose(self, other: RelativeSign) -> RelativeSign {
        if self == other {
            RelativeSign::Same
        } else {
            RelativeSign::Opposite
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            RelativeSign::Same => 1,
            RelativeSign::Opposite => -1,
        }
    }
}

impl fmt::Display for RelativeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeSign::Same => write!(f, "same"),
            RelativeSign::Opposite => write!(f, "opposite"),
        }
    }
}

/// Counts of fixed points with the two spin types. Ordered when produced by
/// the congruence enumerator; unordered (labels undetermined) when deduced
/// from relative data only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinPartition {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl SpinPartition {
    pub fn total(&self) -> usize {
        self.n_plus + self.n_minus
    }

    pub fn difference(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    /// Canonical unordered representation.
    pub fn sorted(&self) -> [usize; 2] {
        let mut p = [self.n_plus, self.n_minus];
        p.sort_unstable();
        p
    }
}

/// Sign relation induced by an equivariant handle with the given framing:
/// framing ≡ 2 mod 4 forces equal signs, framing ≡ 0 mod 4 opposite signs.
pub fn epsilon_relation(framing: i64) -> Result<RelativeSign, ObstructionError> {
    match framing.rem_euclid(4) {
        2 => Ok(RelativeSign::Same),
        0 => Ok(RelativeSign::Opposite),
        _ => Err(ObstructionError::OddFraming(framing)),
    }
}

/// Translation between sign relations and spin-type relations: equal signs
/// correspond exactly to equal spin types.
pub fn epsilon_spin_bridge(rel: RelativeSign) -> RelativeSign {
    rel
}

/// Spin-type relation induced by a handle framing: same type iff the
/// framing is 2 mod 4. Factors through the sign relation and the bridge.
pub fn spin_type_relation(framing: i64) -> Result<RelativeSign, ObstructionError> {
    Ok(epsilon_spin_bridge(epsilon_relation(framing)?))
}

/// All values the total sign sum can take for a smooth action on a spin
/// form of signature `sigma` with `fixed_count` fixed points.
///
/// The index pair (k+, k-) satisfies k+ + k- = -sigma/8 and
/// 4(k+ - k-) = sum; both coefficients are even (a quaternionic constraint),
/// which makes every admissible sum a multiple of 8. The sum is also bounded
/// by the fixed-point count and has its parity.
pub fn admissible_epsilon_sums(
    sigma: i64,
    fixed_count: usize,
) -> Result<Vec<i64>, ObstructionError> {
    if sigma.rem_euclid(8) != 0 {
        return Err(ObstructionError::SigmaNotSpin(sigma));
    }
    let t = -sigma / 8; // k+ + k-
    let k = fixed_count as i64;
    let mut sums = Vec::new();
    for s in -k..=k {
        if (s - k).rem_euclid(2) != 0 || s.rem_euclid(4) != 0 {
            continue;
        }
        let d = s / 4; // k+ - k-
        if (t + d).rem_euclid(2) != 0 {
            continue;
        }
        let k_plus = (t + d) / 2;
        let k_minus = (t - d) / 2;
        if k_plus.rem_euclid(2) == 0 && k_minus.rem_euclid(2) == 0 {
            sums.push(s);
        }
    }
    Ok(sums)
}

/// All ordered pairs (n+, n-) with n+ + n- = fixed_count satisfying the
/// smooth-spin congruence sigma/2 ≡ n+ - n- mod 16, sorted by n+.
///
/// Evaluated as 2(n+ - n-) ≡ sigma mod 32, which needs no division and is
/// unsatisfiable for odd sigma.
pub fn rohlin_admissible_pairs(sigma: i64, fixed_count: usize) -> Vec<SpinPartition> {
    (0..=fixed_count)
        .map(|n_plus| SpinPartition {
            n_plus,
            n_minus: fixed_count - n_plus,
        })
        .filter(|p| (2 * p.difference() - sigma).rem_euclid(32) == 0)
        .collect()
}

/// Everything the smooth hypothesis forces about the constructed action's
/// fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothDeduction {
    /// Values of the total sign sum compatible with the handle relations
    /// and the multiple-of-8 constraint. Always exactly [0] for the
    /// constructed rosters, whose relations cancel.
    pub epsilon_sum_candidates: Vec<i64>,
    /// The surviving sign sum.
    pub epsilon_sum: i64,
    /// Relation of the cap point P' to the base point P.
    pub cap_relation: RelativeSign,
    /// Spin-type partition of all fixed points (unordered).
    pub partition: SpinPartition,
}

/// Runs the sign-sum deduction on the action's roster.
///
/// With base sign e(P), the handles contribute e(P) * (sum of relations) and
/// the cap contributes e(P') = ±e(P); the total must be a multiple of 8.
/// The handle relations of the constructed link cancel (r zeros against r
/// twos), which forces the sum to 0 and the cap sign opposite to the base.
pub fn smooth_deduction(action: &StandardAction) -> Result<SmoothDeduction, ObstructionError> {
    let relations: Vec<RelativeSign> = action
        .link
        .framings()
        .iter()
        .map(|&f| epsilon_relation(f))
        .collect::<Result<_, _>>()?;
    let relation_sum: i64 = relations.iter().map(|r| r.as_i64()).sum();

    // sum = e(P) * (1 + relation_sum + t), t = ±1 the cap relation
    let mut survivors = Vec::new();
    for cap in [RelativeSign::Same, RelativeSign::Opposite] {
        let magnitude = 1 + relation_sum + cap.as_i64();
        if magnitude.rem_euclid(8) == 0 {
            survivors.push((cap, magnitude));
        }
    }
    // magnitudes for the two cap choices differ by 2, so at most one survives
    let (cap_relation, magnitude) = match survivors.as_slice() {
        [] => return Err(ObstructionError::NoConsistentEpsilonSum),
        [one] => *one,
        _ => unreachable!("magnitudes differing by 2 cannot both be multiples of 8"),
    };
    if magnitude != 0 {
        return Err(ObstructionError::AmbiguousEpsilonSum);
    }
    let epsilon_sum_candidates = vec![magnitude];

    // count the spin class of P: P itself, handles related Same, and the cap
    // through the sign/spin bridge
    let mut with_base = 1usize;
    for &f in action.link.framings() {
        if spin_type_relation(f)? == RelativeSign::Same {
            with_base += 1;
        }
    }
    if epsilon_spin_bridge(cap_relation) == RelativeSign::Same {
        with_base += 1;
    }
    let total = action.roster.len();
    let partition = SpinPartition {
        n_plus: with_base,
        n_minus: total - with_base,
    };

    Ok(SmoothDeduction {
        epsilon_sum_candidates,
        epsilon_sum: magnitude,
        cap_relation,
        partition,
    })
}

/// Spec'd projection of the deduction: the cap relation and the partition.
pub fn derive_smooth_fixdata(
    action: &StandardAction,
) -> Result<(RelativeSign, SpinPartition), ObstructionError> {
    let d = smooth_deduction(action)?;
    Ok((d.cap_relation, d.partition))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Nonsmoothable,
    Inconclusive,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictKind::Nonsmoothable => write!(f, "nonsmoothable"),
            VerdictKind::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Replayable record of the full deduction. Every field is a pure function
/// of `params`; `verify_certificate` recomputes and compares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub version: u32,
    pub params: ActionParams,
    /// Signature of the underlying form, -8n.
    pub sigma: i64,
    /// Number of isolated fixed points, 2r + 2.
    pub fixed_count: usize,
    /// Framings of the equivariant handles (also their residues mod 4).
    pub framings: Vec<i64>,
    /// The deduced total sign sum (always 0 here).
    pub epsilon_sum: i64,
    /// Deduced relation between the cap point and the base point.
    pub p_pprime: RelativeSign,
    /// Deduced spin-type partition, unordered, sorted ascending.
    pub partition: [usize; 2],
    /// sigma/2 - (n+ - n-) reduced to the representative range [-8, 8);
    /// nonzero exactly when the verdict is nonsmoothable.
    pub rohlin_residue: i64,
    pub verdict: VerdictKind,
    /// Orderings of the deduced partition that satisfy the congruence;
    /// nonempty exactly when the verdict is inconclusive.
    pub admissible_partitions: Vec<[usize; 2]>,
}

impl Certificate {
    /// Canonical JSON: sorted keys, two-space indent, LF endings, integers
    /// only, trailing newline. Byte-stable under parse/re-serialize.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificate has no non-serializable field");
        let mut out = serde_json::to_string_pretty(&value).expect("serde_json::Value prints");
        out.push('\n');
        out
    }

    pub fn from_json(s: &str) -> Result<Certificate, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// The verdict plus its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Certificate,
    /// Same as the certificate's list, as typed partitions.
    pub admissible_partitions: Vec<SpinPartition>,
}

/// Reduces x to the representative range [-8, 8) mod 16.
fn rohlin_residue(x: i64) -> i64 {
    let r = x.rem_euclid(16);
    if r >= 8 {
        r - 16
    } else {
        r
    }
}

/// Builds the action for `params`, plays the smooth-hypothesis deduction,
/// and tests the deduced partition against the signature congruence.
pub fn certify(params: &ActionParams) -> Result<Verdict, ObstructionError> {
    let action = build_action(params)?;
    let report = action.equivariant.check_edmonds_ewing();
    if !report.all_pass() {
        return Err(ObstructionError::RealizationFailed);
    }
    let fixed_count = report
        .fixed_point_count
        .expect("all realization conditions hold");
    debug_assert_eq!(fixed_count, action.roster.len());

    let deduction = smooth_deduction(&action)?;
    let sigma = action.equivariant.form().invariants().signature;
    debug_assert_eq!(sigma, -8 * params.n as i64);

    // the deduced partition is unordered; admit an ordering if it satisfies
    // 2(n+ - n-) ≡ sigma mod 32
    let p = deduction.partition;
    let mut orderings = vec![p];
    if p.n_plus != p.n_minus {
        orderings.push(SpinPartition {
            n_plus: p.n_minus,
            n_minus: p.n_plus,
        });
        orderings.sort_by_key(|q| q.n_plus);
    }
    let admissible: Vec<SpinPartition> = orderings
        .into_iter()
        .filter(|q| (2 * q.difference() - sigma).rem_euclid(32) == 0)
        .collect();

    let residue = rohlin_residue(sigma / 2 - p.difference());
    let kind = if admissible.is_empty() {
        VerdictKind::Nonsmoothable
    } else {
        VerdictKind::Inconclusive
    };

    let certificate = Certificate {
        version: CERTIFICATE_VERSION,
        params: *params,
        sigma,
        fixed_count,
        framings: action.link.framings().to_vec(),
        epsilon_sum: deduction.epsilon_sum,
        p_pprime: deduction.cap_relation,
        partition: p.sorted(),
        rohlin_residue: residue,
        verdict: kind,
        admissible_partitions: admissible.iter().map(|q| [q.n_plus, q.n_minus]).collect(),
    };
    Ok(Verdict {
        kind,
        certificate,
        admissible_partitions: admissible,
    })
}

/// First point where a certificate disagrees with its replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub field: &'static str,
    pub detail: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field '{}' diverges: {}", self.field, self.detail)
    }
}

/// Recomputes the certificate from its parameters and compares every field.
pub fn verify_certificate(cert: &Certificate) -> Result<(), Divergence> {
    fn diverge<T: fmt::Debug>(
        field: &'static str,
        expected: &T,
        found: &T,
    ) -> Result<(), Divergence> {
        Err(Divergence {
            field,
            detail: format!("replay computed {expected:?}, certificate says {found:?}"),
        })
    }

    if cert.version != CERTIFICATE_VERSION {
        return diverge("version", &CERTIFICATE_VERSION, &cert.version);
    }
    let replay = match certify(&cert.params) {
        Ok(v) => v.certificate,
        Err(e) => {
            return Err(Divergence {
                field: "params",
                detail: format!("replay failed: {e}"),
            })
        }
    };
    if replay.sigma != cert.sigma {
        return diverge("sigma", &replay.sigma, &cert.sigma);
    }
    if replay.fixed_count != cert.fixed_count {
        return diverge("fixed_count", &replay.fixed_count, &cert.fixed_count);
    }
    if replay.framings != cert.framings {
        return diverge("framings", &replay.framings, &cert.framings);
    }
    if replay.epsilon_sum != cert.epsilon_sum {
        return diverge("epsilon_sum", &replay.epsilon_sum, &cert.epsilon_sum);
    }
    if replay.p_pprime != cert.p_pprime {
        return diverge("p_pprime", &replay.p_pprime, &cert.p_pprime);
    }
    if replay.partition != cert.partition {
        return diverge("partition", &replay.partition, &cert.partition);
    }
    if replay.rohlin_residue != cert.rohlin_residue {
        return diverge("rohlin_residue", &replay.rohlin_residue, &cert.rohlin_residue);
    }
    if replay.verdict != cert.verdict {
        return diverge("verdict", &replay.verdict, &cert.verdict);
    }
    if replay.admissible_partitions != cert.admissible_partitions {
        return diverge(
            "admissible_partitions",
            &replay.admissible_partitions,
            &cert.admissible_partitions,
        );
    }
    Ok(())
}
