//! The invariant triple of a single bounded operator and the membership
//! classifications derived from it.
//!
//! An operator is summarized by its nullity `α = dim N(T)`, the kernel
//! dimension of its adjoint `β* = dim N(T*)`, and whether its range is
//! closed. The deficiency (codimension of the range) equals `β*` when the
//! range is closed and is infinite otherwise: a bounded operator whose range
//! has finite codimension automatically has closed range.

use crate::extmath::{ext_sub, ExtInt, ExtNat};
use serde::{Deserialize, Serialize};

/// Invariant triple `(α, β*, range closed)` of one operator at one point.
///
/// `beta_star` is stored raw (not the deficiency) so that taking adjoint
/// data is an exact involution even for operators with non-closed range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FredholmData {
    pub alpha: ExtNat,
    pub beta_star: ExtNat,
    pub range_closed: bool,
}

/// Memberships in the five operator classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSet {
    /// Upper semi-Fredholm: finite nullity and closed range.
    pub in_phi_plus: bool,
    /// Lower semi-Fredholm: finite deficiency.
    pub in_phi_minus: bool,
    /// Fredholm: both.
    pub in_phi: bool,
    /// Upper semi-Weyl: upper semi-Fredholm with index ≤ 0.
    pub in_upper_weyl: bool,
    /// Lower semi-Weyl: lower semi-Fredholm with index ≥ 0.
    pub in_lower_weyl: bool,
}

impl FredholmData {
    pub fn new(alpha: ExtNat, beta_star: ExtNat, range_closed: bool) -> Self {
        FredholmData {
            alpha,
            beta_star,
            range_closed,
        }
    }

    /// Data of an everywhere-invertible operator.
    pub fn invertible() -> Self {
        FredholmData::new(ExtNat::Fin(0), ExtNat::Fin(0), true)
    }

    /// Codimension of the range: `β*` for closed range, `∞` otherwise.
    pub fn deficiency(&self) -> ExtNat {
        if self.range_closed {
            self.beta_star
        } else {
            ExtNat::Inf
        }
    }

    /// Invariants of the adjoint operator: `α` and `β*` swap, closedness of
    /// the range carries over.
    pub fn adjoint_data(&self) -> FredholmData {
        FredholmData {
            alpha: self.beta_star,
            beta_star: self.alpha,
            range_closed: self.range_closed,
        }
    }

    /// `ind = α − β`, or `None` when both are infinite.
    pub fn index(&self) -> Option<ExtInt> {
        ext_sub(self.alpha, self.deficiency()).ok()
    }

    pub fn classify(&self) -> ClassSet {
        let in_phi_plus = self.alpha.is_finite() && self.range_closed;
        let in_phi_minus = self.deficiency().is_finite();
        let in_phi = in_phi_plus && in_phi_minus;
        let index = self.index();
        let in_upper_weyl = in_phi_plus && index.map_or(false, |i| i <= ExtInt::Fin(0));
        let in_lower_weyl = in_phi_minus && index.map_or(false, |i| i >= ExtInt::Fin(0));
        ClassSet {
            in_phi_plus,
            in_phi_minus,
            in_phi,
            in_upper_weyl,
            in_lower_weyl,
        }
    }
}

/// Componentwise invariants of a finite direct sum: nullities and adjoint
/// nullities add, the range is closed iff every summand's range is closed.
pub fn direct_sum_data(parts: &[FredholmData]) -> FredholmData {
    FredholmData {
        alpha: parts.iter().map(|d| d.alpha).sum(),
        beta_star: parts.iter().map(|d| d.beta_star).sum(),
        range_closed: parts.iter().all(|d| d.range_closed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmath::ExtNat::{Fin, Inf};
    use proptest::prelude::*;

    fn fd(alpha: ExtNat, beta_star: ExtNat, closed: bool) -> FredholmData {
        FredholmData::new(alpha, beta_star, closed)
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(fd(Fin(0), Fin(1), true).deficiency(), Fin(1));
        // Dense non-closed range: codimension is infinite even with a trivial
        // adjoint kernel (contrapositive of Kato's closed-range criterion).
        assert_eq!(fd(Fin(0), Fin(0), false).deficiency(), Inf);
        assert_eq!(fd(Inf, Inf, true).deficiency(), Inf);
    }

    #[test]
    fn classify_unilateral_shift() {
        // Forward shift at the origin: alpha 0, cokernel one-dimensional.
        let c = fd(Fin(0), Fin(1), true).classify();
        assert!(c.in_phi_plus);
        assert!(c.in_phi_minus);
        assert!(c.in_phi);
        assert!(c.in_upper_weyl); // ind = -1
        assert!(!c.in_lower_weyl);
    }

    #[test]
    fn classify_invertible() {
        let c = FredholmData::invertible().classify();
        assert!(
            c.in_phi_plus && c.in_phi_minus && c.in_phi && c.in_upper_weyl && c.in_lower_weyl
        );
    }

    #[test]
    fn classify_backward_shift_infinite_multiplicity() {
        let c = fd(Inf, Fin(0), true).classify();
        assert!(!c.in_phi_plus);
        assert!(c.in_phi_minus);
        assert!(c.in_lower_weyl); // ind = +inf >= 0
    }

    #[test]
    fn adjoint_swaps() {
        let d = fd(Fin(2), Fin(5), true);
        assert_eq!(d.adjoint_data(), fd(Fin(5), Fin(2), true));
        let nc = fd(Fin(0), Fin(0), false);
        assert_eq!(nc.adjoint_data(), nc);
    }

    #[test]
    fn index_examples() {
        assert_eq!(fd(Fin(1), Fin(0), true).index(), Some(ExtInt::Fin(1)));
        assert_eq!(fd(Fin(0), Inf, true).index(), Some(ExtInt::NegInf));
        assert_eq!(fd(Inf, Inf, true).index(), None);
    }

    fn arb_extnat() -> impl Strategy<Value = ExtNat> {
        prop_oneof![(0u64..6).prop_map(ExtNat::Fin), Just(ExtNat::Inf)]
    }

    fn arb_data() -> impl Strategy<Value = FredholmData> {
        (arb_extnat(), arb_extnat(), any::<bool>())
            .prop_map(|(a, b, c)| FredholmData::new(a, b, c))
    }

    proptest! {
        #[test]
        fn kato_normalization(d in arb_data()) {
            if d.deficiency().is_finite() {
                prop_assert!(d.range_closed);
            }
        }

        #[test]
        fn weyl_implies_semifredholm(d in arb_data()) {
            let c = d.classify();
            prop_assert!(!c.in_upper_weyl || c.in_phi_plus);
            prop_assert!(!c.in_lower_weyl || c.in_phi_minus);
            prop_assert_eq!(c.in_phi, c.in_phi_plus && c.in_phi_minus);
        }

        #[test]
        fn adjoint_involution(d in arb_data()) {
            prop_assert_eq!(d.adjoint_data().adjoint_data(), d);
        }

        #[test]
        fn class_duality(d in arb_data()) {
            if d.range_closed {
                let c = d.classify();
                let ca = d.adjoint_data().classify();
                prop_assert_eq!(ca.in_phi_plus, c.in_phi_minus);
                prop_assert_eq!(ca.in_phi_minus, c.in_phi_plus);
            }
        }

        #[test]
        fn index_negates_under_adjoint(d in arb_data()) {
            if d.range_closed {
                if let (Some(i), Some(j)) = (d.index(), d.adjoint_data().index()) {
                    let neg = match i {
                        ExtInt::Fin(v) => ExtInt::Fin(-v),
                        ExtInt::PosInf => ExtInt::NegInf,
                        ExtInt::NegInf => ExtInt::PosInf,
                    };
                    prop_assert_eq!(j, neg);
                }
            }
        }

        #[test]
        fn index_sign_vs_order(d in arb_data()) {
            if let Some(i) = d.index() {
                prop_assert_eq!(i <= ExtInt::Fin(0), d.alpha <= d.deficiency());
            }
        }
    }
}
