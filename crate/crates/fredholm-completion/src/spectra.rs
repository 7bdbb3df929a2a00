//! Sandwich sets for the intersection spectra over complex-plane grids.
//!
//! Each corollary brackets `⋂_A σ_*(T_n^d(A))` between a lower formula
//! (base spectrum of the corner block plus Δ sets) and an upper formula
//! adding the Δ' non-closed-range sets. The engine never claims the middle
//! set pointwise; it reports both sides and checks that they are consistent
//! with the decision conditions: a lower-bound point must falsify the
//! necessary condition, and a point outside the upper bound must satisfy
//! the sufficient one.
//!
//! Value clauses `α(D) = ∞` / `β(D) < ∞` read the raw invariant fields;
//! base-spectrum membership goes through [`FredholmData::classify`]. This
//! matches the conventions of the decision module.

use crate::decide::{condition_i, condition_iii, Target};
use crate::extmath::ExtNat;
use crate::fredholm::FredholmData;
use crate::model::ModelOp;
use crate::scalar::CRat;
use num::rational::BigRational;
use num::Signed;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::io::Write;

/// Rectangular rational grid; sample points are `re_min + p·step` by
/// `im_min + q·step`, exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub re_min: BigRational,
    pub re_max: BigRational,
    pub im_min: BigRational,
    pub im_max: BigRational,
    pub step: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("grid spec must be re0:re1:im0:im1:step with exact rationals, got {0:?}")]
    BadFormat(String),
    #[error("grid step must be positive")]
    BadStep,
    #[error("grid bounds must satisfy re0 ≤ re1 and im0 ≤ im1")]
    BadBounds,
}

impl Grid {
    pub fn new(
        re_min: BigRational,
        re_max: BigRational,
        im_min: BigRational,
        im_max: BigRational,
        step: BigRational,
    ) -> Result<Grid, GridError> {
        if !step.is_positive() {
            return Err(GridError::BadStep);
        }
        if re_min > re_max || im_min > im_max {
            return Err(GridError::BadBounds);
        }
        Ok(Grid {
            re_min,
            re_max,
            im_min,
            im_max,
            step,
        })
    }

    /// Parses `re0:re1:im0:im1:step`.
    pub fn parse(s: &str) -> Result<Grid, GridError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 5 {
            return Err(GridError::BadFormat(s.to_string()));
        }
        let mut vals = Vec::with_capacity(5);
        for p in &parts {
            vals.push(
                crate::scalar::parse_rational(p)
                    .ok_or_else(|| GridError::BadFormat(s.to_string()))?,
            );
        }
        let step = vals.pop().unwrap();
        let im_max = vals.pop().unwrap();
        let im_min = vals.pop().unwrap();
        let re_max = vals.pop().unwrap();
        let re_min = vals.pop().unwrap();
        Grid::new(re_min, re_max, im_min, im_max, step)
    }

    /// Sample points in row-major order: imaginary part outer (ascending),
    /// real part inner (ascending).
    pub fn points(&self) -> Vec<CRat> {
        let mut out = Vec::new();
        let mut im = self.im_min.clone();
        while im <= self.im_max {
            let mut re = self.re_min.clone();
            while re <= self.re_max {
                out.push(CRat::new(re.clone(), im.clone()));
                re += &self.step;
            }
            im += &self.step;
        }
        out
    }
}

/// The six spectral-inclusion corollaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corollary {
    /// Upper semi-Weyl spectrum, general `n`.
    Aw,
    /// Lower semi-Weyl spectrum, general `n`.
    Sw,
    /// Upper semi-Fredholm spectrum, general `n`.
    SfPlus,
    /// Lower semi-Fredholm spectrum, general `n`.
    SfMinus,
    /// Essential (Fredholm) spectrum, general `n`.
    E,
    /// Essential spectrum at `n = 2`, where both bounds coincide.
    E2,
}

impl Corollary {
    pub fn parse(s: &str) -> Option<Corollary> {
        Some(match s {
            "aw" => Corollary::Aw,
            "sw" => Corollary::Sw,
            "sf+" => Corollary::SfPlus,
            "sf-" => Corollary::SfMinus,
            "e" => Corollary::E,
            "e2" => Corollary::E2,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Corollary::Aw => "aw",
            Corollary::Sw => "sw",
            Corollary::SfPlus => "sf+",
            Corollary::SfMinus => "sf-",
            Corollary::E => "e",
            Corollary::E2 => "e2",
        }
    }

    /// Completion target whose conditions bracket this corollary.
    pub fn target(&self) -> Target {
        match self {
            Corollary::Aw => Target::UpperWeyl,
            Corollary::Sw => Target::LowerWeyl,
            Corollary::SfPlus => Target::UpperFredholm,
            Corollary::SfMinus => Target::LowerFredholm,
            Corollary::E | Corollary::E2 => Target::Fredholm,
        }
    }
}

/// Named set memberships at one point, plus both bound formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetEval {
    /// `(name, member, on_lhs)` in stable order; `on_lhs` is false for the
    /// Δ' sets that appear only in the upper bound.
    pub flags: Vec<(String, bool, bool)>,
    pub in_lhs: bool,
    pub in_rhs: bool,
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum SpectraError {
    #[error("corollary {corollary} needs {expected} diagonal blocks, got {got}")]
    ArityMismatch {
        corollary: &'static str,
        expected: String,
        got: usize,
    },
    #[error("sandwich assertion failed at λ = {lambda}: {detail}")]
    ConsistencyViolation {
        lambda: String,
        detail: String,
        report: Box<PointReport>,
    },
    #[error(transparent)]
    Grid(#[from] GridError),
}

fn check_arity(c: Corollary, n: usize) -> Result<(), SpectraError> {
    let ok = match c {
        Corollary::E2 => n == 2,
        _ => n >= 2,
    };
    if ok {
        Ok(())
    } else {
        Err(SpectraError::ArityMismatch {
            corollary: c.name(),
            expected: if c == Corollary::E2 { "exactly 2".into() } else { "at least 2".into() },
            got: n,
        })
    }
}

fn sum_alpha(d: &[FredholmData]) -> ExtNat {
    d.iter().map(|x| x.alpha).sum()
}

fn sum_beta(d: &[FredholmData]) -> ExtNat {
    d.iter().map(|x| x.beta_star).sum()
}

/// Evaluates every named set of the corollary from pointwise invariants.
pub fn delta_sets(c: Corollary, d: &[FredholmData]) -> Result<SetEval, SpectraError> {
    let n = d.len();
    check_arity(c, n)?;
    let mut flags: Vec<(String, bool, bool)> = Vec::new();
    match c {
        Corollary::Aw | Corollary::SfPlus => {
            flags.push(("sf_plus_1".into(), !d[0].classify().in_phi_plus, true));
            for k in 2..=n {
                let member = d[k - 1].alpha.is_infinite()
                    && sum_beta(&d[..k - 1]).is_finite();
                flags.push((format!("delta_{k}"), member, true));
            }
            if c == Corollary::Aw {
                flags.push((format!("delta_{}", n + 1), sum_beta(d) < sum_alpha(d), true));
            }
            for k in 2..=n {
                flags.push((format!("delta_prime_{k}"), !d[k - 1].range_closed, false));
            }
        }
        Corollary::Sw | Corollary::SfMinus => {
            flags.push((format!("sf_minus_{n}"), !d[n - 1].classify().in_phi_minus, true));
            for k in 1..=n - 1 {
                let member = d[k - 1].beta_star.is_infinite()
                    && sum_alpha(&d[k..]).is_finite();
                flags.push((format!("delta_{k}"), member, true));
            }
            if c == Corollary::Sw {
                flags.push((format!("delta_{}", n + 1), sum_alpha(d) < sum_beta(d), true));
            }
            for k in 1..=n - 1 {
                flags.push((format!("delta_prime_{k}"), !d[k - 1].range_closed, false));
            }
        }
        Corollary::E => {
            flags.push(("sf_plus_1".into(), !d[0].classify().in_phi_plus, true));
            flags.push((format!("sf_minus_{n}"), !d[n - 1].classify().in_phi_minus, true));
            for k in 2..=n - 1 {
                let up = d[k - 1].alpha.is_infinite() && sum_beta(&d[..k - 1]).is_finite();
                let low = d[k - 1].beta_star.is_infinite() && sum_alpha(&d[k..]).is_finite();
                flags.push((format!("delta_{k}"), up || low, true));
            }
            let up = d[n - 1].alpha.is_infinite() && sum_beta(&d[..n - 1]).is_finite();
            let low = d[0].beta_star.is_infinite() && sum_alpha(&d[1..]).is_finite();
            flags.push((format!("delta_{n}"), up || low, true));
            for k in 2..=n - 1 {
                flags.push((format!("delta_prime_{k}"), !d[k - 1].range_closed, false));
            }
        }
        Corollary::E2 => {
            flags.push(("sf_plus_1".into(), !d[0].classify().in_phi_plus, true));
            flags.push(("sf_minus_2".into(), !d[1].classify().in_phi_minus, true));
            let member = (d[1].alpha.is_infinite() && d[0].beta_star.is_finite())
                || (d[0].beta_star.is_infinite() && d[1].alpha.is_finite());
            flags.push(("delta".into(), member, true));
        }
    }
    let in_lhs = flags.iter().any(|(_, m, on_lhs)| *m && *on_lhs);
    let in_rhs = flags.iter().any(|(_, m, _)| *m);
    Ok(SetEval {
        flags,
        in_lhs,
        in_rhs,
    })
}

/// Everything measured at one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    pub lambda: CRat,
    pub data: Vec<FredholmData>,
    pub flags: Vec<(String, bool, bool)>,
    pub in_lhs: bool,
    pub in_rhs: bool,
    pub cond_i: bool,
    pub cond_iii: bool,
}

fn eval_point(
    c: Corollary,
    target: Target,
    diagonals: &[ModelOp],
    lambda: &CRat,
) -> Result<PointReport, SpectraError> {
    let data: Vec<FredholmData> = diagonals.iter().map(|op| op.point_data(lambda)).collect();
    let sets = delta_sets(c, &data)?;
    let cond_i = condition_i(target, &data).expect("arity checked");
    let cond_iii = condition_iii(target, &data).expect("arity checked");
    let report = PointReport {
        lambda: lambda.clone(),
        data,
        flags: sets.flags,
        in_lhs: sets.in_lhs,
        in_rhs: sets.in_rhs,
        cond_i,
        cond_iii,
    };
    let violation = if report.in_lhs && !report.in_rhs {
        Some("nesting: in_lhs without in_rhs")
    } else if report.in_lhs && report.cond_iii {
        Some("lower bound: point in lhs but necessary condition holds")
    } else if !report.in_rhs && !report.cond_i {
        Some("upper bound: point outside rhs but sufficient condition fails")
    } else if c == Corollary::E2 && report.in_lhs == report.cond_i {
        Some("exactness: e2 membership must equal failure of the condition")
    } else {
        None
    };
    if let Some(detail) = violation {
        return Err(SpectraError::ConsistencyViolation {
            lambda: lambda.to_string(),
            detail: detail.to_string(),
            report: Box::new(report),
        });
    }
    Ok(report)
}

/// Worker cap: `FREDHOLM_THREADS` when set and positive, else rayon's
/// default.
fn thread_cap() -> Option<usize> {
    std::env::var("FREDHOLM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n > 0)
}

/// Evaluates the corollary over the whole grid, in deterministic row-major
/// order, checking the sandwich assertions at every point.
pub fn sandwich_report(
    c: Corollary,
    diagonals: &[ModelOp],
    grid: &Grid,
) -> Result<Vec<PointReport>, SpectraError> {
    check_arity(c, diagonals.len())?;
    let target = c.target();
    let points = grid.points();
    let work = |points: &[CRat]| -> Result<Vec<PointReport>, SpectraError> {
        points
            .par_iter()
            .map(|lambda| eval_point(c, target, diagonals, lambda))
            .collect()
    };
    match thread_cap() {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| work(&points)),
        None => work(&points),
    }
}

fn ext_str(v: ExtNat) -> String {
    match v {
        ExtNat::Fin(k) => k.to_string(),
        ExtNat::Inf => "inf".to_string(),
    }
}

/// Writes one row per grid point: exact coordinates, per-diagonal
/// invariants, then all flags in stable order. Starts with a `#` version
/// header so the schema is self-identifying.
pub fn write_csv<W: Write>(
    c: Corollary,
    reports: &[PointReport],
    mut out: W,
) -> std::io::Result<()> {
    writeln!(out, "# fredholm-completion spectra csv v1 corollary={}", c.name())?;
    let n = reports.first().map_or(0, |r| r.data.len());
    let mut header = String::from("re,im");
    for i in 1..=n {
        write!(header, ",alpha{i},beta{i},closed{i}").unwrap();
    }
    if let Some(r) = reports.first() {
        for (name, _, _) in &r.flags {
            write!(header, ",{name}").unwrap();
        }
    }
    header.push_str(",in_lhs,in_rhs,cond_i,cond_iii");
    writeln!(out, "{header}")?;
    for r in reports {
        let mut line = format!("{},{}", r.lambda.re, r.lambda.im);
        for d in &r.data {
            write!(
                line,
                ",{},{},{}",
                ext_str(d.alpha),
                ext_str(d.beta_star),
                u8::from(d.range_closed)
            )
            .unwrap();
        }
        for (_, m, _) in &r.flags {
            write!(line, ",{}", u8::from(*m)).unwrap();
        }
        write!(
            line,
            ",{},{},{},{}",
            u8::from(r.in_lhs),
            u8::from(r.in_rhs),
            u8::from(r.cond_i),
            u8::from(r.cond_iii)
        )
        .unwrap();
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Whether the compressions at the two sizes look upper semi-Fredholm:
/// stable kernel count and non-decaying deflated `σ_min`.
fn certifies_phi_plus(
    cert: &crate::construct::CompletionCertificate,
    diagonals: &[ModelOp],
    lambda: &CRat,
    sizes: (usize, usize),
    tol: f64,
) -> bool {
    let r1 = match crate::verify::completion_size_report::<f64>(cert, diagonals, lambda, sizes.0, tol) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let r2 = match crate::verify::completion_size_report::<f64>(cert, diagonals, lambda, sizes.1, tol) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let kernel_grows = r1.kernel_dim >= 1 && r2.kernel_dim >= 2 * r1.kernel_dim;
    let sigma_decays = match (r1.sigma_min_deflated, r2.sigma_min_deflated) {
        (Some(s1), Some(s2)) => s2 * 1.5 < s1,
        _ => true,
    };
    !kernel_grows && !sigma_decays
}

/// Corner-block inclusion check: at every sampled point where the first
/// diagonal block is not upper semi-Fredholm, the compressions of the
/// completed matrix must not look upper semi-Fredholm either (the kernel
/// must keep growing or the deflated `σ_min` must keep decaying between the
/// two sizes). The lower corner is checked dually on the adjoint problem
/// when the certificate has no off-diagonal entries. Returns the first
/// falsifying point, `None` when the lemma holds on the whole sample.
///
/// Certificates with entries are only meaningful at their own point, so
/// sample other points with a zero certificate.
pub fn diagonal_corner_check(
    diagonals: &[ModelOp],
    cert: &crate::construct::CompletionCertificate,
    sample: &[CRat],
    sizes: (usize, usize),
    tol: f64,
) -> Option<CRat> {
    for lambda in sample {
        let d: Vec<FredholmData> = diagonals.iter().map(|op| op.point_data(lambda)).collect();
        if !d[0].classify().in_phi_plus
            && certifies_phi_plus(cert, diagonals, lambda, sizes, tol)
        {
            return Some(lambda.clone());
        }
        if !d[d.len() - 1].classify().in_phi_minus && cert.entries.is_empty() {
            let (dual_diags, dual_lambda) = crate::construct::dual_problem(diagonals, lambda);
            let dual_cert =
                crate::construct::zero_certificate(cert.target, &dual_diags, &dual_lambda);
            if certifies_phi_plus(&dual_cert, &dual_diags, &dual_lambda, sizes, tol) {
                return Some(lambda.clone());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extmath::ExtNat::{Fin, Inf};
    use crate::model::SeqSpec;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn unit_grid(step_num: i64, step_den: i64) -> Grid {
        Grid::new(rat(-1, 1), rat(1, 1), rat(-1, 1), rat(1, 1), rat(step_num, step_den)).unwrap()
    }

    #[test]
    fn grid_parse_and_points() {
        let g = Grid::parse("-1:1:-1:1:1").unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], CRat::from_ints(-1, -1));
        assert_eq!(pts[1], CRat::from_ints(0, -1));
        assert_eq!(pts[3], CRat::from_ints(-1, 0));
        assert!(Grid::parse("-1:1:-1:1:0").is_err());
        assert!(Grid::parse("1:-1:-1:1:1").is_err());
        assert!(Grid::parse("1:2:3").is_err());
        let fine = Grid::parse("0:1:0:0:1/4").unwrap();
        assert_eq!(fine.points().len(), 5);
    }

    fn fd(a: ExtNat, b: ExtNat, c: bool) -> FredholmData {
        FredholmData::new(a, b, c)
    }

    #[test]
    fn aw_shift_pair_all_false() {
        // Forward/backward shifts of multiplicity one at the origin.
        let d = vec![fd(Fin(0), Fin(1), true), fd(Fin(1), Fin(0), true)];
        let s = delta_sets(Corollary::Aw, &d).unwrap();
        assert!(!s.in_lhs && !s.in_rhs);
        assert!(s.flags.iter().all(|(_, m, _)| !m));
    }

    #[test]
    fn e2_both_infinite_delta_false() {
        let d = vec![fd(Fin(0), Inf, true), fd(Inf, Fin(0), true)];
        let s = delta_sets(Corollary::E2, &d).unwrap();
        let delta = s.flags.iter().find(|(n, _, _)| n == "delta").unwrap();
        assert!(!delta.1);
        assert!(!s.in_lhs);
    }

    #[test]
    fn e2_requires_two_blocks() {
        let d = vec![FredholmData::invertible(); 3];
        assert!(matches!(
            delta_sets(Corollary::E2, &d),
            Err(SpectraError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn invertible_diagonals_nothing_flagged() {
        let diags = vec![ModelOp::constant(3), ModelOp::constant(3)];
        // 3 is outside the grid, so every point is a resolvent point.
        for c in [
            Corollary::Aw,
            Corollary::Sw,
            Corollary::SfPlus,
            Corollary::SfMinus,
            Corollary::E,
            Corollary::E2,
        ] {
            let reports = sandwich_report(c, &diags, &unit_grid(1, 2)).unwrap();
            assert!(reports
                .iter()
                .all(|r| !r.in_rhs && r.cond_i && r.cond_iii));
        }
    }

    #[test]
    fn e2_shift_pair_exact_everywhere() {
        let diags = vec![ModelOp::fwd_shift(Inf), ModelOp::bwd_shift(Inf)];
        let g = Grid::new(rat(-2, 1), rat(2, 1), rat(-2, 1), rat(2, 1), rat(1, 4)).unwrap();
        let reports = sandwich_report(Corollary::E2, &diags, &g).unwrap();
        let origin = reports
            .iter()
            .find(|r| r.lambda == CRat::zero())
            .unwrap();
        // Pairing the infinite kernel with the infinite cokernel yields a
        // Fredholm completion, so the origin is outside the intersection.
        assert!(origin.cond_i && !origin.in_lhs);
        for r in &reports {
            assert_eq!(r.in_lhs, r.in_rhs);
        }
    }

    #[test]
    fn aw_harmonic_second_block_indeterminate_band() {
        let diags = vec![
            ModelOp::fwd_shift(Fin(1)),
            ModelOp::diagonal(SeqSpec::Harmonic { center: CRat::zero() }),
        ];
        let g = Grid::new(rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)).unwrap();
        let reports = sandwich_report(Corollary::Aw, &diags, &g).unwrap();
        let r = &reports[0];
        assert!(r.in_rhs && !r.in_lhs);
        assert!(!r.cond_i);
        let dpp = r.flags.iter().find(|(n, _, _)| n == "delta_prime_2").unwrap();
        assert!(dpp.1);
    }

    #[test]
    fn all_corollaries_nest_on_mixed_tuple() {
        let diags = vec![
            ModelOp::fwd_shift(Inf),
            ModelOp::diagonal(SeqSpec::Harmonic { center: CRat::from_int(1) }),
            ModelOp::bwd_shift(Inf),
        ];
        let g = unit_grid(1, 2);
        for c in [
            Corollary::Aw,
            Corollary::Sw,
            Corollary::SfPlus,
            Corollary::SfMinus,
            Corollary::E,
        ] {
            let reports = sandwich_report(c, &diags, &g).unwrap();
            for r in reports {
                assert!(!r.in_lhs || r.in_rhs);
            }
        }
    }

    #[test]
    fn csv_deterministic_and_headed() {
        let diags = vec![ModelOp::fwd_shift(Inf), ModelOp::bwd_shift(Inf)];
        let g = unit_grid(1, 1);
        let reports = sandwich_report(Corollary::Aw, &diags, &g).unwrap();
        let mut a = Vec::new();
        write_csv(Corollary::Aw, &reports, &mut a).unwrap();
        let mut b = Vec::new();
        write_csv(Corollary::Aw, &reports, &mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with('#'));
        let header = lines.next().unwrap();
        assert!(header.starts_with("re,im,alpha1,beta1,closed1,alpha2,beta2,closed2,"));
        assert!(header.ends_with("in_lhs,in_rhs,cond_i,cond_iii"));
        assert_eq!(text.lines().count(), 2 + 9);
    }

    #[test]
    fn corner_check_passes_on_shift_pair_certificate() {
        let diags = vec![ModelOp::fwd_shift(Inf), ModelOp::bwd_shift(Inf)];
        let cert =
            crate::construct::construct(Target::Fredholm, &diags, &CRat::zero()).unwrap();
        let sample = vec![CRat::zero()];
        assert_eq!(
            diagonal_corner_check(&diags, &cert, &sample, (16, 32), 1e-10),
            None
        );
    }

    #[test]
    fn corner_check_sees_unbounded_kernel_growth() {
        // First block is the identity, so at λ = 1 its nullity is infinite
        // and no completion can be upper semi-Fredholm there.
        let diags = vec![
            ModelOp::diagonal(SeqSpec::Periodic { block: vec![CRat::from_int(1)] }),
            ModelOp::constant(2),
        ];
        let lambda = CRat::from_int(1);
        let cert = crate::construct::zero_certificate(Target::Fredholm, &diags, &lambda);
        assert_eq!(
            diagonal_corner_check(&diags, &cert, &[lambda.clone()], (25, 100), 1e-10),
            None
        );
        // Vacuous at a resolvent point.
        assert_eq!(
            diagonal_corner_check(&diags, &cert, &[CRat::from_int(5)], (16, 32), 1e-10),
            None
        );
    }

    #[test]
    fn thread_cap_respects_env_format() {
        // Only exercises the parser; the pool itself is rayon's.
        std::env::set_var("FREDHOLM_THREADS", "2");
        assert_eq!(thread_cap(), Some(2));
        std::env::set_var("FREDHOLM_THREADS", "0");
        assert_eq!(thread_cap(), None);
        std::env::remove_var("FREDHOLM_THREADS");
        assert_eq!(thread_cap(), None);
    }
}
