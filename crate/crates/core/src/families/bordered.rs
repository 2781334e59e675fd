//! Bordered forms `core + c y^p E_11` of the families.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::FamilySpec;
use crate::error::{Error, Result};
use crate::matrices::IntMatrix;

/// A symmetric core with vanishing top-left entry, specialized by writing
/// `c * y^p` into that entry. `blocks` lists the diagonal blocks below the
/// border (index ranges into the core).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderedGram {
    pub core: IntMatrix,
    #[serde(with = "crate::serde_big")]
    pub c: BigInt,
    pub p: u32,
    pub y_min: i64,
    pub blocks: Vec<Range<usize>>,
}

impl BorderedGram {
    pub fn new(
        core: IntMatrix,
        c: BigInt,
        p: u32,
        y_min: i64,
        blocks: Vec<Range<usize>>,
    ) -> Result<Self> {
        let n = core.dim()?;
        core.require_symmetric()?;
        if n == 0 || !core.get(0, 0).is_zero() {
            return Err(Error::InvalidArgument(
                "bordered core needs a vanishing top-left entry".into(),
            ));
        }
        if c.is_zero() || p == 0 {
            return Err(Error::InvalidArgument("bordered form needs c != 0 and p >= 1".into()));
        }
        let mut next = 1;
        for r in &blocks {
            if r.start != next || r.end <= r.start || r.end > n {
                return Err(Error::InvalidArgument(format!(
                    "block ranges must tile 1..{n} in order (got {r:?})"
                )));
            }
            next = r.end;
        }
        if next != n {
            return Err(Error::InvalidArgument(format!(
                "block ranges must tile 1..{n} (stopped at {next})"
            )));
        }
        Ok(BorderedGram { core, c, p, y_min, blocks })
    }

    pub fn dim(&self) -> usize {
        self.core.rows()
    }

    /// The top-left entry `c * y^p`.
    pub fn top_left(&self, y: i64) -> BigInt {
        &self.c * BigInt::from(y).pow(self.p)
    }

    /// The core with the top-left entry set to `c * y^p`.
    pub fn specialize(&self, y: i64) -> Result<IntMatrix> {
        if y < self.y_min {
            return Err(Error::Validation(format!(
                "y = {y} is below the lower bound {} of this family",
                self.y_min
            )));
        }
        let mut m = self.core.clone();
        m.set(0, 0, self.top_left(y));
        if !m.is_nonnegative() {
            return Err(Error::Validation(format!(
                "specialization at y = {y} has a negative entry"
            )));
        }
        Ok(m)
    }

    /// The single-block view, used when `blocks` has length one.
    pub fn single_block(&self) -> Option<IntMatrix> {
        match self.blocks.as_slice() {
            [r] => Some(self.block(r)),
            _ => None,
        }
    }

    pub fn block(&self, r: &Range<usize>) -> IntMatrix {
        let idx: Vec<usize> = r.clone().collect();
        self.core
            .principal_submatrix(&idx)
            .expect("block ranges are validated")
    }
}

/// Bordered form of a family whose primary `y` sits in the top-left entry.
///
/// `G1Block` carries `y` on its last diagonal entry; its bordered analog is
/// the reordering `[[y, 2], [2, 4]]` (same characteristic polynomial).
pub fn build_bordered(spec: &FamilySpec) -> Result<BorderedGram> {
    if let FamilySpec::G1Block { .. } = spec {
        return Ok(g1_reordered());
    }
    let (c, p, blocks) = shape(spec)?;
    let y_min = spec.min_primary_y()?;
    let mut core = spec.with_primary_y(y_min)?.build_gram()?;
    let expect = &c * BigInt::from(y_min).pow(p);
    if core.get(0, 0) != &expect {
        return Err(Error::Unsupported(format!(
            "{} does not carry c y^p in its top-left entry",
            spec.name()
        )));
    }
    core.set(0, 0, BigInt::zero());
    if core.row(0).iter().any(|v| v.is_negative()) {
        return Err(Error::Validation("border entries must be nonnegative".into()));
    }
    let n = core.rows();
    let blocks = blocks.unwrap_or_else(|| vec![1..n]);
    BorderedGram::new(core, c, p, y_min, blocks)
}

type Shape = (BigInt, u32, Option<Vec<Range<usize>>>);

/// `(c, p, blocks)` per variant; `None` blocks means a single block.
fn shape(spec: &FamilySpec) -> Result<Shape> {
    let four = BigInt::from(4);
    let one = BigInt::from(1);
    let unsupported = || {
        Err(Error::Unsupported(format!(
            "{} has no bordered form",
            spec.name()
        )))
    };
    // Inner block then glued handle of size two.
    let step_blocks = |inner: usize| Some(vec![1..1 + inner, 1 + inner..3 + inner]);
    match spec {
        FamilySpec::ThurstonInductive { base_b, steps } => {
            if steps.is_empty() {
                return unsupported();
            }
            let inner = FamilySpec::ThurstonInductive {
                base_b: *base_b,
                steps: steps[..steps.len() - 1].to_vec(),
            };
            Ok((four, 2, step_blocks(inner.build_gram()?.rows())))
        }
        FamilySpec::TorelliTower { g, base_y, steps } => {
            if steps.is_empty() {
                return unsupported();
            }
            let inner = FamilySpec::TorelliTower {
                g: g - 1,
                base_y: *base_y,
                steps: steps[..steps.len() - 1].to_vec(),
            };
            Ok((four, 2, step_blocks(inner.build_gram()?.rows())))
        }
        FamilySpec::MgNg { g, closed, .. } => {
            if *closed {
                Ok((one, 2, None))
            } else {
                Ok((four, 2, step_blocks(3 * g - 4)))
            }
        }
        FamilySpec::ThurstonClosed { .. } | FamilySpec::KBlockClosed { .. } => Ok((one, 2, None)),
        FamilySpec::KBlock { ys, dropped, .. } | FamilySpec::Block3 { ys, dropped, .. } => {
            let mut ranges = Vec::new();
            let mut at = 1;
            for i in 0..ys.len() {
                let w = if dropped.contains(&(i + 1)) { 1 } else { 2 };
                ranges.push(at..at + w);
                at += w;
            }
            Ok((four, 2, Some(ranges)))
        }
        FamilySpec::SmallDegree { z, .. } => {
            Ok((BigInt::from(64), 2, Some((1..=z.len()).map(|i| i..i + 1).collect())))
        }
        _ => unsupported(),
    }
}

/// `G1Block` reordered so that `y` sits in the top-left entry:
/// `[[y, 2], [2, 4]] = [[0, 2], [2, 4]] + y E_11`.
pub fn g1_reordered() -> BorderedGram {
    BorderedGram::new(
        IntMatrix::from_i64_rows(&[&[0, 2], &[2, 4]]),
        BigInt::from(1),
        1,
        1,
        vec![1..2],
    )
    .expect("valid bordered form")
}
