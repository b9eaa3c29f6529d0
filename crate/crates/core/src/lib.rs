//! Exact symbolic calculus of complex differential forms on coordinate
//! patches: Dolbeault operators, contractions by vector-valued forms,
//! deformation jets, blow-up expansions, and checkers for the pluriclosed,
//! astheno-Kähler, balanced, Gauduchon and special conditions on Hermitian
//! metrics.
//!
//! All arithmetic is over the Gaussian rationals, so every identity is
//! checked by exact equality of canonical representations.

pub mod blowup;
pub mod deformation;
pub mod error;
pub mod form;
pub mod hermitian;
pub mod identities;
pub mod holomap;
pub mod metrics;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod vecform;

pub use error::{Error, Result};
pub use form::{Basis, BiForm, Factor};
pub use hermitian::Point;
pub use holomap::HoloMap;
pub use poly::{Monomial, Poly, Var};
pub use scalar::Scalar;
pub use vecform::{ConjVecForm, CoframeSubstitution, EndoField, Side, VecForm};
