//! Exact intersection-matrix families for Thurston–Veech pseudo-Anosov maps,
//! their characteristic polynomials, and checkable degree certificates.

pub mod certificates;
pub mod error;
pub mod exec;
pub mod families;
pub mod matrices;
pub mod modular;
pub mod polynomials;
pub mod report;
mod serde_big;
pub mod suites;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use families::FamilySpec;
pub use matrices::{IntMatrix, IntersectionGrid};
pub use polynomials::IntPoly;
