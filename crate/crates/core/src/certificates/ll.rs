//! The signature criterion: for `Omega` the bipartite double of `X`, if
//! `dim(Omega) > sigma(Omega + 2I) + null(Omega + 2I) > dim(Omega) - 2d`
//! then `T_alpha T_beta` has a stretch factor of degree `2d`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::{bipartite_double, signature_nullity, IntersectionGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LLReport {
    pub dim: usize,
    pub sigma: i64,
    pub nullity: usize,
    pub d: usize,
    pub holds: bool,
}

impl LLReport {
    /// The double inequality evaluated on the stored numbers.
    pub fn evaluate(dim: usize, sigma: i64, nullity: usize, d: usize) -> bool {
        let (dim, mid, d) = (dim as i64, sigma + nullity as i64, d as i64);
        dim > mid && mid > dim - 2 * d
    }

    pub fn is_consistent(&self) -> bool {
        self.holds == LLReport::evaluate(self.dim, self.sigma, self.nullity, self.d)
    }
}

pub fn ll_criterion(x: &IntersectionGrid, d: usize) -> Result<LLReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("the criterion needs d >= 1".into()));
    }
    let omega = bipartite_double(x).add_identity(&BigInt::from(2))?;
    let s = signature_nullity(&omega)?;
    Ok(LLReport {
        dim: s.dim,
        sigma: s.sigma,
        nullity: s.nullity,
        d,
        holds: LLReport::evaluate(s.dim, s.sigma, s.nullity, d),
    })
}
