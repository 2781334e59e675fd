//! Bipartite degree: the degree of `sqrt(mu)`, certified through
//! irreducibility of `chi_G(t^2)`.

use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrices::{char_poly_with, IntMatrix};
use crate::polynomials::{
    certify_irreducible_with, substitute_power, IntPoly, IrreducibilityVerdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCertificate {
    pub d: usize,
    pub bipartite_degree: usize,
    pub char_poly: IntPoly,
    pub substituted: IntPoly,
    pub verdict: IrreducibilityVerdict,
}

pub fn bipartite_degree(g: &IntMatrix, prime_budget: usize) -> Result<Outcome<BipartiteCertificate>> {
    bipartite_degree_with(g, prime_budget, Execution::default())
}

pub fn bipartite_degree_with(
    g: &IntMatrix,
    prime_budget: usize,
    exec: Execution,
) -> Result<Outcome<BipartiteCertificate>> {
    g.require_symmetric()?;
    let chi = char_poly_with(g, exec)?;
    if !certify_irreducible_with(&chi, prime_budget, exec)?.is_irreducible() {
        return Err(Error::InvalidArgument(
            "characteristic polynomial is not certified irreducible".into(),
        ));
    }
    let d = chi.nonconstant_degree()?;
    let substituted = substitute_power(&chi, 2)?;
    let verdict = certify_irreducible_with(&substituted, prime_budget, exec)?;
    Ok(match &verdict {
        IrreducibilityVerdict::Irreducible { .. } => Outcome::Issued(BipartiteCertificate {
            d,
            bipartite_degree: 2 * d,
            char_poly: chi,
            substituted,
            verdict,
        }),
        IrreducibilityVerdict::Reducible { factor, .. } => Outcome::unknown(format!(
            "chi(t^2) reducible (factor {}); bipartite degree not certified",
            factor.to_text()
        )),
        IrreducibilityVerdict::Unknown { .. } => {
            Outcome::unknown("chi(t^2) not certified within the prime budget")
        }
    })
}
