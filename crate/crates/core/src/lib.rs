//! Exact arithmetic for rational Diophantine tuples and the elliptic curves
//! they induce.
//!
//! A rational Diophantine m-tuple is a list of m distinct nonzero rationals
//! such that the product of any two of them plus one is a perfect rational
//! square. Every quadruple {a, b, c, d} induces the curve
//! y² = x (x + (b−a)(d−c)) (x + (c−a)(d−b)), and the shape of its rational
//! torsion subgroup — always Z/2 × Z/2k with k ∈ {1, 2, 3, 4} — is decided
//! here with exact arithmetic only: square testing for the 2-descent
//! criterion, rational point halving, and the 3-division polynomial.
//!
//! The crate also carries four parametric quadruple families that force each
//! torsion shape, plus sieve heuristics (Mestre–Nagao sums, factor-count
//! rank bounds, naive point search) for hunting high-rank curves over a
//! parameter grid.

pub mod curve;
pub mod diophantine;
pub mod families;
pub mod fixtures;
pub mod numeric;
pub mod poly;
pub mod rank;
pub mod sweep;
pub mod torsion;

pub use curve::{Curve, CurveError, Point, PointOrder};
pub use diophantine::{DioError, DioTuple, InducedCurveBundle};
pub use families::{CMode, FamilyError, FamilyName, FamilyOutput, FamilyParams};
pub use numeric::Rat;
pub use rank::{IntegerModel, MestreNagaoScore};
pub use sweep::{SieveScore, SweepConfig, SweepReport};
pub use torsion::TorsionClass;
