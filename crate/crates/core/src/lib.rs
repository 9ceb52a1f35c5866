//! Exact engine for the quantum linear programming bound on `((n,K,d))`
//! qubit codes.
//!
//! - [`ratpoly`]: canonical rationals and homogeneous bivariate polynomials.
//! - [`enumerator`]: MacWilliams/shadow transforms, the averaged-subcode
//!   operator, the `C`/`D` change of variables and membership checks.
//! - [`lp`]: exact phase-I simplex producing feasibility points or Farkas
//!   certificates, plus an independent certificate checker.
//! - [`bound`]: constraint assembly in both formulations, maximal-`K` search,
//!   monotonicity audits and bound tables.
//! - [`stabilizer`]: dense brute-force enumerators of small stabilizer codes.

pub mod bound;
pub mod enumerator;
pub mod error;
pub mod lp;
pub mod ratpoly;
pub mod stabilizer;

pub use bound::{BoundResult, Formulation, SearchStrategy, Witness};
pub use enumerator::{CodeParams, EnumeratorAbs, EnumeratorCd, MembershipReport};
pub use error::{Error, Result};
pub use lp::{Certificate, LinearProgram, Relation, Row};
pub use ratpoly::{HomPoly, LinearMap2, Rational};
pub use stabilizer::{PauliString, StabilizerCode};
