//! Explicit specialization search standing in for Hilbert irreducibility:
//! the smallest `y` in a range whose specialization has a certified
//! irreducible characteristic polynomial.

use serde::{Deserialize, Serialize};

use super::{BorderedGram, FamilySpec};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::matrices::{char_poly_with, IntMatrix};
use crate::polynomials::{certify_irreducible_with, IrreducibilityVerdict};

/// Anything that turns an integer parameter into a matrix.
pub trait Specialize: Sync {
    /// Smallest admissible parameter.
    fn lower_bound(&self) -> Result<i64>;
    fn specialize_at(&self, y: i64) -> Result<IntMatrix>;
}

impl Specialize for BorderedGram {
    fn lower_bound(&self) -> Result<i64> {
        Ok(self.y_min)
    }

    fn specialize_at(&self, y: i64) -> Result<IntMatrix> {
        self.specialize(y)
    }
}

/// A spec specializes through its primary `y`.
impl Specialize for FamilySpec {
    fn lower_bound(&self) -> Result<i64> {
        self.min_primary_y()
    }

    fn specialize_at(&self, y: i64) -> Result<IntMatrix> {
        self.with_primary_y(y)?.build_gram()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum HilbertOutcome {
    Found { y: i64, verdict: IrreducibilityVerdict },
    Exhausted { y_min: i64, y_max: i64 },
}

impl HilbertOutcome {
    pub fn y(&self) -> Option<i64> {
        match self {
            HilbertOutcome::Found { y, .. } => Some(*y),
            HilbertOutcome::Exhausted { .. } => None,
        }
    }
}

pub fn hilbert_search<S: Specialize>(
    family: &S,
    y_min: i64,
    y_max: i64,
    prime_budget: usize,
) -> Result<HilbertOutcome> {
    hilbert_search_with(family, y_min, y_max, prime_budget, Execution::default())
}

/// Candidates are examined in batches; within a batch the smallest certified
/// `y` wins, so the result does not depend on the execution mode.
pub fn hilbert_search_with<S: Specialize>(
    family: &S,
    y_min: i64,
    y_max: i64,
    prime_budget: usize,
    exec: Execution,
) -> Result<HilbertOutcome> {
    if y_min > y_max {
        return Err(Error::EmptyInterval);
    }
    let bound = family.lower_bound()?;
    if y_min < bound {
        return Err(Error::Validation(format!(
            "y_min = {y_min} is below the lower bound {bound}"
        )));
    }
    let width = exec::batch_width(exec) as i64;
    let mut start = y_min;
    while start <= y_max {
        let end = (start + width - 1).min(y_max);
        let ys: Vec<i64> = (start..=end).collect();
        let hit = exec::find_first(exec, &ys, |&y| {
            let verdict = family
                .specialize_at(y)
                .and_then(|m| char_poly_with(&m, Execution::Sequential))
                .and_then(|p| certify_irreducible_with(&p, prime_budget, Execution::Sequential));
            match verdict {
                Ok(v) if v.is_irreducible() => Some(Ok((y, v))),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            }
        });
        if let Some(r) = hit {
            let (y, verdict) = r?;
            return Ok(HilbertOutcome::Found { y, verdict });
        }
        start = end + 1;
    }
    Ok(HilbertOutcome::Exhausted { y_min, y_max })
}
