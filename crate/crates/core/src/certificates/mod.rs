//! The irreducibility lemmas and degree theorems as checkable certificates.
//!
//! Each operation returns an [`Outcome`]: an issued certificate carrying its
//! witnesses, a refutation naming the failed hypothesis, or an inconclusive
//! result (budget exhausted). Malformed inputs are errors.

mod bipartite;
mod bordered;
mod degree;
mod ll;

pub use bipartite::{bipartite_degree, bipartite_degree_with, BipartiteCertificate};
pub use bordered::{check_bordered_multi, check_bordered_single, BlockWitness, BorderedCertificate};
pub use degree::{
    mu_prime_poly, nonsplitting_certificate, nonsplitting_with, norm_polynomial,
    norm_via_resultants, stretch_branch, stretch_min_poly, trace_field_degree,
    trace_field_degree_with, DegreeCertificate, StructuralFactor, TraceFieldCertificate,
    DEFAULT_N_MAX,
};
pub use ll::{ll_criterion, LLReport};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome<T> {
    Issued(T),
    Refuted { reason: String },
    Unknown { reason: String },
}

impl<T> Outcome<T> {
    pub fn issued(&self) -> Option<&T> {
        match self {
            Outcome::Issued(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_issued(&self) -> bool {
        matches!(self, Outcome::Issued(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Outcome::Refuted { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Issued(_) => "issued",
            Outcome::Refuted { .. } => "refuted",
            Outcome::Unknown { .. } => "unknown",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Outcome::Issued(_) => None,
            Outcome::Refuted { reason } | Outcome::Unknown { reason } => Some(reason),
        }
    }

    pub(crate) fn refuted(reason: impl Into<String>) -> Self {
        Outcome::Refuted { reason: reason.into() }
    }

    pub(crate) fn unknown(reason: impl Into<String>) -> Self {
        Outcome::Unknown { reason: reason.into() }
    }
}
