//! Completion problems for partial upper-triangular operator matrices with
//! prescribed diagonals: decide whether a completion in a given operator
//! class exists, construct an explicit one, verify it numerically, and scan
//! spectral inclusions over grids in the complex plane.

pub mod construct;
pub mod decide;
pub mod extmath;
pub mod fredholm;
pub mod model;
pub mod problem;
pub mod scalar;
pub mod spectra;
pub mod verify;

pub use construct::{construct, CompletionCertificate};
pub use decide::{condition_i, condition_iii, decide, Decision, Strategy, Target, Verdict};
pub use extmath::{ExtInt, ExtNat};
pub use fredholm::{direct_sum_data, ClassSet, FredholmData};
pub use model::{ModelOp, SeqSpec};
pub use problem::ProblemFile;
pub use scalar::CRat;
pub use spectra::{Corollary, Grid, PointReport};

/// Numerics are generic over the real field; these are the
/// default-precision aliases.
pub type SizeReportF64 = verify::SizeReport<f64>;
pub type TruncationReportF64 = verify::TruncationReport<f64>;
