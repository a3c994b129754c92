//! Exact knot-invariant computations and slice-genus obstructions for
//! twisted Whitehead doubles.
//!
//! The crate is organised bottom-up: [`laurent`] and [`exact`] provide exact
//! arithmetic, [`seifert`] computes classical invariants from a Seifert
//! matrix, [`plfunc`] handles Upsilon functions and the bounds derived from
//! them, [`whitehead`] specialises to Whitehead doubles, [`knotdb`] stores
//! knot records, and [`obstruct`] combines everything into a report.

pub mod exact;
pub mod knotdb;
pub mod laurent;
pub mod obstruct;
pub mod plfunc;
pub mod seifert;
pub mod whitehead;

pub use exact::Rational;
pub use knotdb::{seed_table, KnotRecord, Source, Store};
pub use laurent::{fox_milnor, FoxMilnor, LaurentPoly};
pub use obstruct::{aggregate, GenusBounds, Interval, ObstructionReport, Tri, Verdict};
pub use plfunc::{OssConvention, PLFunction};
pub use seifert::SeifertMatrix;
pub use whitehead::{Clasp, CompanionInvariants, WhiteheadParams};
