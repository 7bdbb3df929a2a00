//! Completion decisions for partial upper-triangular operator matrices.
//!
//! For each target class the sufficient condition (i) and the necessary
//! condition (iii) are evaluated on the diagonal invariants, yielding a
//! three-way verdict: `Exists` when (i) holds, `NotExists` when (iii)
//! fails, and `Indeterminate` in the gap between them.
//!
//! Convention used throughout: membership clauses (`Φ₊`, `Φ₋`) are decided
//! through [`FredholmData::classify`], while explicit `α(D) = ∞` /
//! `β(D) < ∞` value clauses read the raw `alpha` / `beta_star` fields.
//! Under this reading, taking adjoints and reversing the diagonal order is
//! an exact involution, so lower targets delegate to the upper ones.

use crate::extmath::{ext_leq, ExtNat};
use crate::fredholm::FredholmData;
use serde::{Deserialize, Serialize};

/// The five completion target classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    UpperWeyl,
    LowerWeyl,
    UpperFredholm,
    LowerFredholm,
    Fredholm,
}

impl Target {
    pub fn is_lower(self) -> bool {
        matches!(self, Target::LowerWeyl | Target::LowerFredholm)
    }

    fn upper_dual(self) -> Target {
        match self {
            Target::LowerWeyl => Target::UpperWeyl,
            Target::LowerFredholm => Target::UpperFredholm,
            other => other,
        }
    }
}

/// How a completion realizing condition (i) is built.
///
/// Indices are 1-based. For lower targets the strategy refers to the dual
/// problem (adjoint diagonals in reversed order), matching how the
/// construction is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Strategy {
    /// All unknown entries zero.
    ZeroCompletion,
    /// Basis maps placed in row `row`, targeting the cokernel of that
    /// diagonal block.
    RowConstruction { row: usize },
    /// One map from the infinite kernel of block `k` onto the infinite
    /// cokernel of block `j`.
    FredholmPair { j: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "strategy", rename_all = "snake_case")]
pub enum Verdict {
    Exists(Strategy),
    NotExists,
    Indeterminate,
}

/// Verdict together with both evaluated conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub condition_i: bool,
    pub condition_iii: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("need at least 2 diagonal blocks, got {0}")]
    BadArity(usize),
}

fn check_arity(d: &[FredholmData]) -> Result<(), DecideError> {
    if d.len() < 2 {
        Err(DecideError::BadArity(d.len()))
    } else {
        Ok(())
    }
}

fn sum_alpha(d: &[FredholmData]) -> ExtNat {
    d.iter().map(|x| x.alpha).sum()
}

fn sum_beta_star(d: &[FredholmData]) -> ExtNat {
    d.iter().map(|x| x.beta_star).sum()
}

/// Branch (b), first alternative, of the upper theorems: all later blocks
/// upper semi-Fredholm, plus the Weyl sum inequality when required.
fn upper_branch_all(d: &[FredholmData], weyl_sum: bool) -> bool {
    d[1..].iter().all(|x| x.classify().in_phi_plus)
        && (!weyl_sum || ext_leq(sum_alpha(d), sum_beta_star(d)))
}

/// Branch (b), second alternative: the smallest row index `j` (1-based,
/// `1 ≤ j ≤ n−1`) with infinite deficiency at block `j`, finite nullities
/// for blocks `2..=j` (vacuous for `j = 1`), and, when `require_closed`,
/// closed ranges for blocks `2..=n`.
fn upper_branch_row(d: &[FredholmData], require_closed: bool) -> Option<usize> {
    let n = d.len();
    (1..=n - 1).find(|&j| {
        d[j - 1].beta_star.is_infinite()
            && (2..=j).all(|s| d[s - 1].alpha.is_finite())
            && (!require_closed || (2..=n).all(|s| d[s - 1].range_closed))
    })
}

fn upper_condition(d: &[FredholmData], weyl_sum: bool, strong: bool) -> (bool, Option<Strategy>) {
    if !d[0].classify().in_phi_plus {
        return (false, None);
    }
    if upper_branch_all(d, weyl_sum) {
        return (true, Some(Strategy::ZeroCompletion));
    }
    match upper_branch_row(d, strong) {
        Some(j) => (true, Some(Strategy::RowConstruction { row: j })),
        None => (false, None),
    }
}

/// Lexicographically smallest pair `(j, k)` satisfying the Fredholm
/// sufficient branch: infinite deficiency at `j`, infinite nullity at `k > j`,
/// finite invariants outside `[j, k]`, closed middle ranges.
fn fredholm_pair_strong(d: &[FredholmData]) -> Option<(usize, usize)> {
    let n = d.len();
    for j in 1..=n - 1 {
        for k in j + 1..=n {
            let ok = d[j - 1].beta_star.is_infinite()
                && d[j - 1].alpha.is_finite()
                && d[k - 1].alpha.is_infinite()
                && d[k - 1].beta_star.is_finite()
                && (1..=j.saturating_sub(1))
                    .all(|s| d[s - 1].alpha.is_finite() && d[s - 1].beta_star.is_finite())
                && (k + 1..=n)
                    .all(|s| d[s - 1].alpha.is_finite() && d[s - 1].beta_star.is_finite())
                && (n == 2 || (2..=n - 1).all(|s| d[s - 1].range_closed));
            if ok {
                return Some((j, k));
            }
        }
    }
    None
}

/// The Fredholm necessary branch: a row `j` with infinite deficiency and
/// finite nullities up to it, and a later column `k` with infinite nullity
/// and finite deficiencies from it on.
fn fredholm_pair_weak(d: &[FredholmData]) -> bool {
    let n = d.len();
    (1..=n - 1).any(|j| {
        d[j - 1].beta_star.is_infinite()
            && (2..=j).all(|s| d[s - 1].alpha.is_finite())
            && (j + 1..=n).any(|k| {
                d[k - 1].alpha.is_infinite()
                    && (k..=n - 1).all(|s| d[s - 1].beta_star.is_finite())
            })
    })
}

fn fredholm_branch_all(d: &[FredholmData]) -> bool {
    let n = d.len();
    (2..=n).all(|s| d[s - 1].classify().in_phi_plus)
        && (1..=n - 1).all(|s| d[s - 1].classify().in_phi_minus)
}

fn fredholm_condition(d: &[FredholmData], strong: bool) -> (bool, Option<Strategy>) {
    let n = d.len();
    let anchors =
        d[0].classify().in_phi_plus && d[n - 1].classify().in_phi_minus;
    if !anchors {
        return (false, None);
    }
    if fredholm_branch_all(d) {
        return (true, Some(Strategy::ZeroCompletion));
    }
    if strong {
        match fredholm_pair_strong(d) {
            Some((j, k)) => (true, Some(Strategy::FredholmPair { j, k })),
            None => (false, None),
        }
    } else {
        (fredholm_pair_weak(d), None)
    }
}

fn condition_with_strategy(
    target: Target,
    d: &[FredholmData],
    strong: bool,
) -> (bool, Option<Strategy>) {
    match target {
        Target::UpperWeyl => upper_condition(d, true, strong),
        Target::UpperFredholm => upper_condition(d, false, strong),
        Target::Fredholm => fredholm_condition(d, strong),
        Target::LowerWeyl | Target::LowerFredholm => {
            let dual: Vec<FredholmData> =
                d.iter().rev().map(FredholmData::adjoint_data).collect();
            condition_with_strategy(target.upper_dual(), &dual, strong)
        }
    }
}

/// The sufficient condition (i) for the given target.
pub fn condition_i(target: Target, d: &[FredholmData]) -> Result<bool, DecideError> {
    check_arity(d)?;
    Ok(condition_with_strategy(target, d, true).0)
}

/// The necessary condition (iii) for the given target.
pub fn condition_iii(target: Target, d: &[FredholmData]) -> Result<bool, DecideError> {
    check_arity(d)?;
    Ok(condition_with_strategy(target, d, false).0)
}

/// Three-way completion decision.
pub fn decide(target: Target, d: &[FredholmData]) -> Result<Decision, DecideError> {
    check_arity(d)?;
    let (cond_i, strategy) = condition_with_strategy(target, d, true);
    let cond_iii = condition_with_strategy(target, d, false).0;
    let verdict = if cond_i {
        Verdict::Exists(strategy.expect("condition (i) always yields a strategy"))
    } else if !cond_iii {
        Verdict::NotExists
    } else {
        Verdict::Indeterminate
    };
    Ok(Decision {
        verdict,
        condition_i: cond_i,
        condition_iii: cond_iii,
    })
}

/// Independent transcriptions of the lower-target theorem statements,
/// written directly from their own index ranges rather than through the
/// duality delegation. Used to cross-check `decide`.
pub mod direct {
    use super::*;

    fn lower_branch_all(d: &[FredholmData], weyl_sum: bool) -> bool {
        let n = d.len();
        (1..=n - 1).all(|s| d[s - 1].classify().in_phi_minus)
            && (!weyl_sum || ext_leq(sum_beta_star(d), sum_alpha(d)))
    }

    /// `α(D_j) = ∞` for some `j ∈ {2..n}` with finite `β(D_s)` for
    /// `j ≤ s ≤ n−1` (vacuous for `j = n`) and, when required, closed
    /// ranges for `1 ≤ s ≤ n−1`.
    fn lower_branch_col(d: &[FredholmData], require_closed: bool) -> bool {
        let n = d.len();
        (2..=n).any(|j| {
            d[j - 1].alpha.is_infinite()
                && (j..=n - 1).all(|s| d[s - 1].beta_star.is_finite())
                && (!require_closed || (1..=n - 1).all(|s| d[s - 1].range_closed))
        })
    }

    fn lower_condition(d: &[FredholmData], weyl_sum: bool, strong: bool) -> bool {
        d[d.len() - 1].classify().in_phi_minus
            && (lower_branch_all(d, weyl_sum) || lower_branch_col(d, strong))
    }

    pub fn lower_weyl_condition_i(d: &[FredholmData]) -> bool {
        lower_condition(d, true, true)
    }

    pub fn lower_weyl_condition_iii(d: &[FredholmData]) -> bool {
        lower_condition(d, true, false)
    }

    pub fn lower_fredholm_condition_i(d: &[FredholmData]) -> bool {
        lower_condition(d, false, true)
    }

    pub fn lower_fredholm_condition_iii(d: &[FredholmData]) -> bool {
        lower_condition(d, false, false)
    }
}
