//! Arithmetic on the extended natural numbers and extended integers.
//!
//! Nullities and deficiencies of operators on separable Hilbert spaces live in
//! `ℕ ∪ {∞}`; indices live in `ℤ ∪ {±∞}` and are defined only when at least
//! one of the two operands is finite.

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Add;

/// A value in `ℕ ∪ {∞}`. The derived `Ord` places every finite value below
/// `Inf`, and `Inf ≤ Inf` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

/// A value in `ℤ ∪ {−∞, +∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

/// Subtraction of two infinite extended naturals: the difference (an index)
/// is undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("difference of two infinite quantities is undefined")]
pub struct BothInfinite;

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtNat::Inf)
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(v) => Some(v),
            ExtNat::Inf => None,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    /// Total addition: `∞` absorbs.
    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }
}

impl std::iter::Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(ExtNat::Fin(0), Add::add)
    }
}

/// Saturating addition on `ℕ ∪ {∞}`.
pub fn ext_add(a: ExtNat, b: ExtNat) -> ExtNat {
    a + b
}

/// Total-order comparison; `∞ ≤ ∞` is true.
pub fn ext_leq(a: ExtNat, b: ExtNat) -> bool {
    a <= b
}

/// `a − b`, defined when at least one operand is finite.
pub fn ext_sub(a: ExtNat, b: ExtNat) -> Result<ExtInt, BothInfinite> {
    match (a, b) {
        (ExtNat::Fin(x), ExtNat::Fin(y)) => Ok(ExtInt::Fin(x as i64 - y as i64)),
        (ExtNat::Fin(_), ExtNat::Inf) => Ok(ExtInt::NegInf),
        (ExtNat::Inf, ExtNat::Fin(_)) => Ok(ExtInt::PosInf),
        (ExtNat::Inf, ExtNat::Inf) => Err(BothInfinite),
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "+inf"),
        }
    }
}

// JSON: a nonnegative integer or the string "inf".
impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(v) => s.serialize_u64(*v),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExtNat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a nonnegative integer or the string \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtNat, E> {
                Ok(ExtNat::Fin(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtNat, E> {
                if v < 0 {
                    Err(E::custom("extended natural must be nonnegative"))
                } else {
                    Ok(ExtNat::Fin(v as u64))
                }
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtNat, E> {
                match v {
                    "inf" => Ok(ExtNat::Inf),
                    other => other
                        .parse::<u64>()
                        .map(ExtNat::Fin)
                        .map_err(|_| E::custom("expected integer or \"inf\"")),
                }
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => s.serialize_i64(*v),
            ExtInt::PosInf => s.serialize_str("+inf"),
            ExtInt::NegInf => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExtInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer, \"+inf\" or \"-inf\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtInt, E> {
                Ok(ExtInt::Fin(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtInt, E> {
                Ok(ExtInt::Fin(v as i64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtInt, E> {
                match v {
                    "+inf" | "inf" => Ok(ExtInt::PosInf),
                    "-inf" => Ok(ExtInt::NegInf),
                    other => other
                        .parse::<i64>()
                        .map(ExtInt::Fin)
                        .map_err(|_| E::custom("expected integer or signed inf")),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INF: ExtNat = ExtNat::Inf;

    fn fin(v: u64) -> ExtNat {
        ExtNat::Fin(v)
    }

    #[test]
    fn add_examples() {
        assert_eq!(ext_add(fin(2), fin(3)), fin(5));
        assert_eq!(ext_add(INF, fin(3)), INF);
        assert_eq!(ext_add(fin(3), INF), INF);
        assert_eq!(ext_add(fin(0), fin(0)), fin(0));
    }

    #[test]
    fn leq_examples() {
        assert!(ext_leq(fin(5), INF));
        assert!(!ext_leq(INF, fin(5)));
        assert!(ext_leq(INF, INF));
    }

    #[test]
    fn sub_examples() {
        assert_eq!(ext_sub(fin(3), fin(1)), Ok(ExtInt::Fin(2)));
        assert_eq!(ext_sub(fin(2), INF), Ok(ExtInt::NegInf));
        assert_eq!(ext_sub(INF, fin(7)), Ok(ExtInt::PosInf));
        assert_eq!(ext_sub(INF, INF), Err(BothInfinite));
    }

    #[test]
    fn json_round_trip() {
        let vals = [fin(0), fin(42), INF];
        for v in vals {
            let s = serde_json::to_string(&v).unwrap();
            let back: ExtNat = serde_json::from_str(&s).unwrap();
            assert_eq!(v, back);
        }
        assert_eq!(serde_json::to_string(&INF).unwrap(), "\"inf\"");
    }

    fn arb_extnat() -> impl Strategy<Value = ExtNat> {
        prop_oneof![(0u64..1000).prop_map(ExtNat::Fin), Just(ExtNat::Inf)]
    }

    proptest! {
        #[test]
        fn add_commutative_associative(a in arb_extnat(), b in arb_extnat(), c in arb_extnat()) {
            prop_assert_eq!(ext_add(a, b), ext_add(b, a));
            prop_assert_eq!(ext_add(ext_add(a, b), c), ext_add(a, ext_add(b, c)));
        }

        #[test]
        fn add_monotone(a in arb_extnat(), b in arb_extnat(), c in arb_extnat()) {
            if ext_leq(a, b) {
                prop_assert!(ext_leq(ext_add(a, c), ext_add(b, c)));
            }
        }

        #[test]
        fn sub_sign_matches_order(a in arb_extnat(), b in arb_extnat()) {
            if let Ok(d) = ext_sub(a, b) {
                prop_assert_eq!(d >= ExtInt::Fin(0), ext_leq(b, a));
            }
        }
    }
}
