//! Finitely described model operators on ℓ² with exactly computable
//! pointwise invariants, canonical basis actions, and finite truncations.
//!
//! Every operator here acts on a separable ℓ² space whose canonical
//! orthonormal basis is indexed `0, 1, 2, …` by a fixed enumeration:
//! a direct sum interleaves its parts round-robin, and a shift of infinite
//! multiplicity enumerates its (copy, position) grid along anti-diagonals
//! since round-robin over infinitely many copies is not well defined.

use crate::extmath::ExtNat;
use crate::fredholm::{direct_sum_data, FredholmData};
use crate::scalar::{rat_recip_of, CRat};
use nalgebra::{Complex, DMatrix, RealField};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

/// An exactly described bounded diagonal-entry sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeqSpec {
    /// Finitely many explicit entries followed by a constant tail.
    FiniteThenConstant { prefix: Vec<CRat>, tail: CRat },
    /// `d_k = center + 1/k`, accumulating only at the center.
    Harmonic { center: CRat },
    /// A repeating nonempty block; the value set is finite.
    Periodic { block: Vec<CRat> },
}

/// A finitely described bounded operator on ℓ².
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelOp {
    #[serde(rename = "diag")]
    Diagonal { seq: SeqSpec },
    /// Unilateral forward shift of the given multiplicity (≥ 1).
    FwdShift { mult: ExtNat },
    /// Its adjoint: the backward shift of the given multiplicity.
    BwdShift { mult: ExtNat },
    DirectSum { parts: Vec<ModelOp> },
    Scaled { op: Box<ModelOp>, factor: CRat },
    Shifted { op: Box<ModelOp>, offset: CRat },
}

/// Requested basis vectors are unavailable: the range is not closed, the
/// count exceeds the relevant dimension, or the subspace is not spanned by
/// canonical coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("basis not available: {0}")]
pub struct NotAvailable(pub String);

fn tri(d: u64) -> u64 {
    d * (d + 1) / 2
}

/// Inverse of the anti-diagonal pairing: linear index -> (copy, position).
fn diag_decode(i: u64) -> (u64, u64) {
    let mut d = (((8.0 * i as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    while tri(d + 1) <= i {
        d += 1;
    }
    while tri(d) > i {
        d -= 1;
    }
    let t = i - tri(d);
    (t, d - t)
}

fn diag_encode(t: u64, c: u64) -> u64 {
    tri(t + c) + t
}

impl SeqSpec {
    /// The `i`-th entry (0-based).
    pub fn entry(&self, i: usize) -> CRat {
        match self {
            SeqSpec::FiniteThenConstant { prefix, tail } => {
                prefix.get(i).cloned().unwrap_or_else(|| tail.clone())
            }
            SeqSpec::Harmonic { center } => {
                &CRat::new(rat_recip_of(i + 1), BigRational::zero()) + center
            }
            SeqSpec::Periodic { block } => block[i % block.len()].clone(),
        }
    }

    fn conj(&self) -> SeqSpec {
        match self {
            SeqSpec::FiniteThenConstant { prefix, tail } => SeqSpec::FiniteThenConstant {
                prefix: prefix.iter().map(CRat::conj).collect(),
                tail: tail.conj(),
            },
            SeqSpec::Harmonic { center } => SeqSpec::Harmonic { center: center.conj() },
            SeqSpec::Periodic { block } => SeqSpec::Periodic {
                block: block.iter().map(CRat::conj).collect(),
            },
        }
    }

    /// Number of entries equal to `lambda`.
    fn eq_count(&self, lambda: &CRat) -> ExtNat {
        match self {
            SeqSpec::FiniteThenConstant { prefix, tail } => {
                if tail == lambda {
                    ExtNat::Inf
                } else {
                    ExtNat::Fin(prefix.iter().filter(|e| *e == lambda).count() as u64)
                }
            }
            SeqSpec::Harmonic { center } => {
                ExtNat::Fin(if harmonic_hit(center, lambda).is_some() { 1 } else { 0 })
            }
            SeqSpec::Periodic { block } => {
                if block.contains(lambda) {
                    ExtNat::Inf
                } else {
                    ExtNat::Fin(0)
                }
            }
        }
    }

    /// First `count` 0-based indices whose entry equals `lambda`.
    fn eq_indices(&self, lambda: &CRat, count: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(count);
        match self {
            SeqSpec::FiniteThenConstant { prefix, tail } => {
                for (i, e) in prefix.iter().enumerate() {
                    if out.len() == count {
                        return out;
                    }
                    if e == lambda {
                        out.push(i);
                    }
                }
                if tail == lambda {
                    let mut i = prefix.len();
                    while out.len() < count {
                        out.push(i);
                        i += 1;
                    }
                }
            }
            SeqSpec::Harmonic { center } => {
                if count > 0 {
                    if let Some(k) = harmonic_hit(center, lambda) {
                        out.push(k - 1);
                    }
                }
            }
            SeqSpec::Periodic { block } => {
                let hits: Vec<usize> = block
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| *e == lambda)
                    .map(|(i, _)| i)
                    .collect();
                if !hits.is_empty() {
                    let mut period = 0;
                    while out.len() < count {
                        for &h in &hits {
                            if out.len() == count {
                                break;
                            }
                            out.push(period * block.len() + h);
                        }
                        period += 1;
                    }
                }
            }
        }
        out
    }

    /// Whether the sequence accumulates at `lambda` through values other
    /// than `lambda` itself. This is what decides closedness of the range
    /// of the shifted diagonal.
    fn accumulates_at(&self, lambda: &CRat) -> bool {
        match self {
            // The only accumulation value is the tail, reached by entries
            // equal to it.
            SeqSpec::FiniteThenConstant { .. } => false,
            SeqSpec::Harmonic { center } => center == lambda,
            // Finite value set: no accumulation through distinct values.
            SeqSpec::Periodic { .. } => false,
        }
    }

    fn norm_bound(&self) -> f64 {
        match self {
            SeqSpec::FiniteThenConstant { prefix, tail } => prefix
                .iter()
                .chain(std::iter::once(tail))
                .map(CRat::abs_upper)
                .fold(0.0, f64::max),
            SeqSpec::Harmonic { center } => center.abs_upper() + 1.0,
            SeqSpec::Periodic { block } => {
                block.iter().map(CRat::abs_upper).fold(0.0, f64::max)
            }
        }
    }
}

/// `k ≥ 1` with `center + 1/k == lambda`, if one exists.
fn harmonic_hit(center: &CRat, lambda: &CRat) -> Option<usize> {
    let diff = lambda - center;
    if !diff.im.is_zero() || !diff.re.is_positive() {
        return None;
    }
    if !diff.re.numer().is_one() {
        return None;
    }
    diff.re.denom().to_usize()
}

/// Where a shift point sits relative to the unit circle, decided exactly.
fn unit_circle_cmp(lambda: &CRat) -> std::cmp::Ordering {
    lambda.abs_sq().cmp(&BigRational::one())
}

fn shift_point_data(mult: ExtNat, lambda: &CRat) -> FredholmData {
    use std::cmp::Ordering::*;
    match unit_circle_cmp(lambda) {
        Less => FredholmData::new(ExtNat::Fin(0), mult, true),
        Equal => FredholmData::new(ExtNat::Fin(0), ExtNat::Fin(0), false),
        Greater => FredholmData::invertible(),
    }
}

impl ModelOp {
    pub fn diagonal(seq: SeqSpec) -> ModelOp {
        ModelOp::Diagonal { seq }
    }

    pub fn fwd_shift(mult: ExtNat) -> ModelOp {
        ModelOp::FwdShift { mult }
    }

    pub fn bwd_shift(mult: ExtNat) -> ModelOp {
        ModelOp::BwdShift { mult }
    }

    /// A constant diagonal; `constant(1)` is the identity.
    pub fn constant(value: i64) -> ModelOp {
        ModelOp::Diagonal {
            seq: SeqSpec::FiniteThenConstant {
                prefix: vec![],
                tail: CRat::from_int(value),
            },
        }
    }

    /// Exact invariants of `self − λ·I`.
    pub fn point_data(&self, lambda: &CRat) -> FredholmData {
        match self {
            ModelOp::Diagonal { seq } => {
                let alpha = seq.eq_count(lambda);
                FredholmData::new(alpha, alpha, !seq.accumulates_at(lambda))
            }
            ModelOp::FwdShift { mult } => shift_point_data(*mult, lambda),
            ModelOp::BwdShift { mult } => {
                shift_point_data(*mult, &lambda.conj()).adjoint_data()
            }
            ModelOp::DirectSum { parts } => {
                let data: Vec<FredholmData> =
                    parts.iter().map(|p| p.point_data(lambda)).collect();
                direct_sum_data(&data)
            }
            ModelOp::Scaled { op, factor } => {
                if factor.is_zero() {
                    if lambda.is_zero() {
                        // The zero operator: full kernel, closed trivial range.
                        FredholmData::new(ExtNat::Inf, ExtNat::Inf, true)
                    } else {
                        FredholmData::invertible()
                    }
                } else {
                    op.point_data(&lambda.div(factor).expect("nonzero factor"))
                }
            }
            ModelOp::Shifted { op, offset } => op.point_data(&(lambda - offset)),
        }
    }

    /// The adjoint model: shifts swap direction, diagonal entries conjugate.
    pub fn adjoint(&self) -> ModelOp {
        match self {
            ModelOp::Diagonal { seq } => ModelOp::Diagonal { seq: seq.conj() },
            ModelOp::FwdShift { mult } => ModelOp::BwdShift { mult: *mult },
            ModelOp::BwdShift { mult } => ModelOp::FwdShift { mult: *mult },
            ModelOp::DirectSum { parts } => ModelOp::DirectSum {
                parts: parts.iter().map(ModelOp::adjoint).collect(),
            },
            ModelOp::Scaled { op, factor } => ModelOp::Scaled {
                op: Box::new(op.adjoint()),
                factor: factor.conj(),
            },
            ModelOp::Shifted { op, offset } => ModelOp::Shifted {
                op: Box::new(op.adjoint()),
                offset: offset.conj(),
            },
        }
    }

    /// Image of the canonical basis vector `e_i` under the operator itself
    /// (not shifted by λ), as a sparse coordinate list.
    pub fn apply_basis(&self, i: usize) -> Vec<(usize, CRat)> {
        match self {
            ModelOp::Diagonal { seq } => vec![(i, seq.entry(i))],
            ModelOp::FwdShift { mult } => match mult {
                ExtNat::Fin(m) => vec![(i + *m as usize, CRat::from_int(1))],
                ExtNat::Inf => {
                    let (t, c) = diag_decode(i as u64);
                    vec![(diag_encode(t, c + 1) as usize, CRat::from_int(1))]
                }
            },
            ModelOp::BwdShift { mult } => match mult {
                ExtNat::Fin(m) => {
                    let m = *m as usize;
                    if i >= m {
                        vec![(i - m, CRat::from_int(1))]
                    } else {
                        vec![]
                    }
                }
                ExtNat::Inf => {
                    let (t, c) = diag_decode(i as u64);
                    if c >= 1 {
                        vec![(diag_encode(t, c - 1) as usize, CRat::from_int(1))]
                    } else {
                        vec![]
                    }
                }
            },
            ModelOp::DirectSum { parts } => {
                let p = i % parts.len();
                let inner = i / parts.len();
                parts[p]
                    .apply_basis(inner)
                    .into_iter()
                    .map(|(j, v)| (j * parts.len() + p, v))
                    .collect()
            }
            ModelOp::Scaled { op, factor } => {
                if factor.is_zero() {
                    vec![]
                } else {
                    op.apply_basis(i)
                        .into_iter()
                        .map(|(j, v)| (j, &v * factor))
                        .collect()
                }
            }
            ModelOp::Shifted { op, offset } => {
                let mut out = op.apply_basis(i);
                if let Some(slot) = out.iter_mut().find(|(j, _)| *j == i) {
                    slot.1 = &slot.1 + offset;
                } else {
                    out.push((i, offset.clone()));
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            }
        }
    }

    /// First `count` canonical coordinate indices spanning `N(self − λ)`,
    /// ordered by summand and then by coordinate.
    pub fn kernel_basis(
        &self,
        lambda: &CRat,
        count: usize,
    ) -> Result<Vec<usize>, NotAvailable> {
        let alpha = self.point_data(lambda).alpha;
        if ExtNat::Fin(count as u64) > alpha {
            return Err(NotAvailable(format!(
                "requested {count} kernel vectors but nullity is {alpha}"
            )));
        }
        if count == 0 {
            return Ok(vec![]);
        }
        self.kernel_indices(lambda, count)
    }

    /// First `count` canonical coordinate indices spanning `R(self − λ)^⊥`.
    pub fn cokernel_basis(
        &self,
        lambda: &CRat,
        count: usize,
    ) -> Result<Vec<usize>, NotAvailable> {
        let data = self.point_data(lambda);
        if !data.range_closed {
            return Err(NotAvailable("range is not closed".into()));
        }
        if ExtNat::Fin(count as u64) > data.beta_star {
            return Err(NotAvailable(format!(
                "requested {count} cokernel vectors but deficiency is {}",
                data.beta_star
            )));
        }
        if count == 0 {
            return Ok(vec![]);
        }
        // R(T−λ)^⊥ = N(T*−λ̄), and the adjoint model shares the enumeration.
        self.adjoint().kernel_indices(&lambda.conj(), count)
    }

    fn kernel_indices(
        &self,
        lambda: &CRat,
        count: usize,
    ) -> Result<Vec<usize>, NotAvailable> {
        match self {
            ModelOp::Diagonal { seq } => Ok(seq.eq_indices(lambda, count)),
            ModelOp::FwdShift { .. } => Ok(vec![]),
            ModelOp::BwdShift { mult } => {
                if lambda.is_zero() {
                    Ok(match mult {
                        ExtNat::Fin(m) => (0..count.min(*m as usize)).collect(),
                        ExtNat::Inf => {
                            (0..count).map(|t| diag_encode(t as u64, 0) as usize).collect()
                        }
                    })
                } else if unit_circle_cmp(lambda) == std::cmp::Ordering::Less {
                    Err(NotAvailable(
                        "shift eigenvectors inside the disc are not canonical coordinates"
                            .into(),
                    ))
                } else {
                    Ok(vec![])
                }
            }
            ModelOp::DirectSum { parts } => {
                let mut out = Vec::with_capacity(count);
                for (p, part) in parts.iter().enumerate() {
                    if out.len() == count {
                        break;
                    }
                    let remaining = count - out.len();
                    let avail = match part.point_data(lambda).alpha {
                        ExtNat::Fin(a) => remaining.min(a as usize),
                        ExtNat::Inf => remaining,
                    };
                    let inner = part.kernel_indices(lambda, avail)?;
                    out.extend(inner.into_iter().map(|j| j * parts.len() + p));
                }
                Ok(out)
            }
            ModelOp::Scaled { op, factor } => {
                if factor.is_zero() {
                    if lambda.is_zero() {
                        Ok((0..count).collect())
                    } else {
                        Ok(vec![])
                    }
                } else {
                    op.kernel_indices(&lambda.div(factor).expect("nonzero factor"), count)
                }
            }
            ModelOp::Shifted { op, offset } => {
                op.kernel_indices(&(lambda - offset), count)
            }
        }
    }

    /// Compression of the operator to the span of the first `n` canonical
    /// basis vectors (square; images falling outside the window are cut).
    pub fn truncate<R: RealField + FromPrimitive>(&self, n: usize) -> DMatrix<Complex<R>> {
        let mut m = DMatrix::zeros(n, n);
        for col in 0..n {
            for (row, v) in self.apply_basis(col) {
                if row < n {
                    m[(row, col)] = v.to_complex::<R>();
                }
            }
        }
        m
    }

    /// Upper bound on the operator norm.
    pub fn norm_bound(&self) -> f64 {
        match self {
            ModelOp::Diagonal { seq } => seq.norm_bound(),
            ModelOp::FwdShift { .. } | ModelOp::BwdShift { .. } => 1.0,
            ModelOp::DirectSum { parts } => {
                parts.iter().map(ModelOp::norm_bound).fold(0.0, f64::max)
            }
            ModelOp::Scaled { op, factor } => factor.abs_upper() * op.norm_bound(),
            ModelOp::Shifted { op, offset } => op.norm_bound() + offset.abs_upper(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmath::ExtNat::{Fin, Inf};
    use proptest::prelude::*;

    fn zero() -> CRat {
        CRat::zero()
    }

    fn harmonic0() -> ModelOp {
        ModelOp::diagonal(SeqSpec::Harmonic { center: CRat::zero() })
    }

    #[test]
    fn point_data_forward_shift() {
        let s = ModelOp::fwd_shift(Fin(1));
        assert_eq!(
            s.point_data(&zero()),
            FredholmData::new(Fin(0), Fin(1), true)
        );
        // On the unit circle the range fails to be closed.
        assert_eq!(
            s.point_data(&CRat::from_int(1)),
            FredholmData::new(Fin(0), Fin(0), false)
        );
        assert_eq!(s.point_data(&CRat::from_int(2)), FredholmData::invertible());
        // |3/5 + 4/5 i| = 1 exactly.
        assert_eq!(
            s.point_data(&CRat::from_ratio(3, 5, 4, 5)),
            FredholmData::new(Fin(0), Fin(0), false)
        );
    }

    #[test]
    fn point_data_harmonic() {
        let d = harmonic0();
        assert_eq!(
            d.point_data(&zero()),
            FredholmData::new(Fin(0), Fin(0), false)
        );
        // λ = 1/3 hits d_3 exactly.
        assert_eq!(
            d.point_data(&CRat::from_ratio(1, 3, 0, 1)),
            FredholmData::new(Fin(1), Fin(1), true)
        );
        // λ = 2/3 is no entry and no accumulation value.
        assert_eq!(
            d.point_data(&CRat::from_ratio(2, 3, 0, 1)),
            FredholmData::invertible()
        );
    }

    #[test]
    fn point_data_finite_then_constant() {
        let d = ModelOp::diagonal(SeqSpec::FiniteThenConstant {
            prefix: vec![zero(), zero(), zero()],
            tail: CRat::from_int(1),
        });
        assert_eq!(d.point_data(&zero()), FredholmData::new(Fin(3), Fin(3), true));
    }

    #[test]
    fn point_data_backward_and_scaled() {
        let b = ModelOp::bwd_shift(Inf);
        assert_eq!(b.point_data(&zero()), FredholmData::new(Inf, Fin(0), true));
        let z = ModelOp::Scaled {
            op: Box::new(ModelOp::constant(1)),
            factor: CRat::zero(),
        };
        assert_eq!(z.point_data(&zero()), FredholmData::new(Inf, Inf, true));
        assert_eq!(z.point_data(&CRat::from_int(1)), FredholmData::invertible());
    }

    #[test]
    fn direct_sum_additivity() {
        let op = ModelOp::DirectSum {
            parts: vec![ModelOp::fwd_shift(Fin(2)), harmonic0()],
        };
        let d = op.point_data(&zero());
        assert_eq!(d, FredholmData::new(Fin(0), Fin(2), false));
    }

    #[test]
    fn cokernel_of_shifts() {
        let s1 = ModelOp::fwd_shift(Fin(1));
        assert_eq!(s1.cokernel_basis(&zero(), 1).unwrap(), vec![0]);
        let si = ModelOp::fwd_shift(Inf);
        // First coordinates of copies 1, 2, 3 under the anti-diagonal
        // enumeration.
        assert_eq!(si.cokernel_basis(&zero(), 3).unwrap(), vec![0, 2, 5]);
        assert!(harmonic0().cokernel_basis(&zero(), 1).is_err());
        assert!(s1.cokernel_basis(&zero(), 2).is_err());
    }

    #[test]
    fn kernel_of_periodic_diagonal() {
        let d = ModelOp::diagonal(SeqSpec::Periodic {
            block: vec![CRat::from_int(1), CRat::from_int(2)],
        });
        assert_eq!(d.kernel_basis(&CRat::from_int(2), 3).unwrap(), vec![1, 3, 5]);
    }

    #[test]
    fn truncate_shift_and_periodic() {
        let m = ModelOp::fwd_shift(Fin(1)).truncate::<f64>(3);
        for r in 0..3 {
            for c in 0..3 {
                let expect = if r == c + 1 { 1.0 } else { 0.0 };
                assert_eq!(m[(r, c)].re, expect);
                assert_eq!(m[(r, c)].im, 0.0);
            }
        }
        let d = ModelOp::diagonal(SeqSpec::Periodic {
            block: vec![CRat::from_int(1), CRat::from_int(2)],
        })
        .truncate::<f64>(4);
        let diag: Vec<f64> = (0..4).map(|i| d[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 2.0, 1.0, 2.0]);
    }

    #[test]
    fn direct_sum_truncation_is_interleaved() {
        // Round-robin: even columns belong to the first part, odd to the
        // second. Check against blockwise truncations through the explicit
        // permutation at n = 8.
        let a = ModelOp::fwd_shift(Fin(1));
        let b = ModelOp::diagonal(SeqSpec::Periodic {
            block: vec![CRat::from_int(3)],
        });
        let sum = ModelOp::DirectSum {
            parts: vec![a.clone(), b.clone()],
        };
        let m = sum.truncate::<f64>(8);
        let ma = a.truncate::<f64>(4);
        let mb = b.truncate::<f64>(4);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m[(2 * r, 2 * c)], ma[(r, c)]);
                assert_eq!(m[(2 * r + 1, 2 * c + 1)], mb[(r, c)]);
                assert_eq!(m[(2 * r, 2 * c + 1)], Complex::new(0.0, 0.0));
                assert_eq!(m[(2 * r + 1, 2 * c)], Complex::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn json_descriptor_round_trip() {
        let op = ModelOp::DirectSum {
            parts: vec![
                ModelOp::fwd_shift(Inf),
                ModelOp::diagonal(SeqSpec::Harmonic { center: CRat::zero() }),
            ],
        };
        let s = serde_json::to_string(&op).unwrap();
        assert!(s.contains("\"fwd_shift\""));
        assert!(s.contains("\"harmonic\""));
        let back: ModelOp = serde_json::from_str(&s).unwrap();
        assert_eq!(op, back);
        let lit: ModelOp =
            serde_json::from_str(r#"{"kind":"fwd_shift","mult":"inf"}"#).unwrap();
        assert_eq!(lit, ModelOp::fwd_shift(Inf));
    }

    fn arb_lambda() -> impl Strategy<Value = CRat> {
        ((-3i64..=3), (1i64..=3), (-3i64..=3), (1i64..=3))
            .prop_map(|(a, b, c, d)| CRat::from_ratio(a, b, c, d))
    }

    fn arb_op() -> impl Strategy<Value = ModelOp> {
        let leaf = prop_oneof![
            (0u64..4).prop_map(|m| ModelOp::fwd_shift(ExtNat::Fin(m + 1))),
            (0u64..4).prop_map(|m| ModelOp::bwd_shift(ExtNat::Fin(m + 1))),
            Just(ModelOp::fwd_shift(ExtNat::Inf)),
            Just(ModelOp::bwd_shift(ExtNat::Inf)),
            arb_lambda().prop_map(|c| ModelOp::diagonal(SeqSpec::Harmonic { center: c })),
            proptest::collection::vec(arb_lambda(), 1..4)
                .prop_map(|block| ModelOp::diagonal(SeqSpec::Periodic { block })),
            (proptest::collection::vec(arb_lambda(), 0..3), arb_lambda()).prop_map(
                |(prefix, tail)| ModelOp::diagonal(SeqSpec::FiniteThenConstant {
                    prefix,
                    tail
                })
            ),
        ];
        leaf.prop_recursive(2, 8, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 1..3)
                    .prop_map(|parts| ModelOp::DirectSum { parts }),
                (inner.clone(), arb_lambda()).prop_map(|(op, factor)| ModelOp::Scaled {
                    op: Box::new(op),
                    factor
                }),
                (inner, arb_lambda()).prop_map(|(op, offset)| ModelOp::Shifted {
                    op: Box::new(op),
                    offset
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn adjoint_duality_of_point_data(op in arb_op(), lambda in arb_lambda()) {
            let direct = op.point_data(&lambda).adjoint_data();
            let via_adjoint = op.adjoint().point_data(&lambda.conj());
            prop_assert_eq!(direct, via_adjoint);
        }

        #[test]
        fn direct_sum_data_is_componentwise(
            parts in proptest::collection::vec(arb_op(), 1..4),
            lambda in arb_lambda(),
        ) {
            let whole = ModelOp::DirectSum { parts: parts.clone() }.point_data(&lambda);
            let comp = direct_sum_data(
                &parts.iter().map(|p| p.point_data(&lambda)).collect::<Vec<_>>(),
            );
            prop_assert_eq!(whole, comp);
        }
    }
}
