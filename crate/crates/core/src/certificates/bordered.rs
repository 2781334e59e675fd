//! Bivariate irreducibility of `det(t I - (M + c y^p E_11))` from the shape
//! of a bordered matrix: the core is nonnegative irreducible, every diagonal
//! block below the border has an irreducible characteristic polynomial, the
//! blocks are pairwise distinct, and the border over each block is a
//! rational multiple of that block's first row.

use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::error::{Error, Result};
use crate::families::BorderedGram;
use crate::matrices::{char_poly, is_irreducible_nonnegative, IntMatrix};
use crate::polynomials::{certify_irreducible, IntPoly, IrreducibilityVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockWitness {
    pub range: Range<usize>,
    /// Border over the block divided by the block's first row, as `"p/q"`.
    pub alpha: String,
    pub char_poly: IntPoly,
    pub verdict: IrreducibilityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderedCertificate {
    pub dim: usize,
    #[serde(with = "crate::serde_big")]
    pub c: BigInt,
    pub p: u32,
    pub core_irreducible: bool,
    pub blocks: Vec<BlockWitness>,
}

/// Single block below the border.
pub fn check_bordered_single(
    b: &BorderedGram,
    prime_budget: usize,
) -> Result<Outcome<BorderedCertificate>> {
    let n = b.dim();
    if n < 2 {
        return Err(Error::InvalidArgument("bordered matrix needs a block below the border".into()));
    }
    check(b, &[1..n], prime_budget, "chi_N")
}

/// Several blocks; a single range is delegated to [`check_bordered_single`].
pub fn check_bordered_multi(
    b: &BorderedGram,
    blocks: &[Range<usize>],
    prime_budget: usize,
) -> Result<Outcome<BorderedCertificate>> {
    match blocks {
        [] => Err(Error::InvalidArgument("no blocks given".into())),
        [r] if *r == (1..b.dim()) => check_bordered_single(b, prime_budget),
        _ => check(b, blocks, prime_budget, "chi_A"),
    }
}

fn check(
    b: &BorderedGram,
    blocks: &[Range<usize>],
    prime_budget: usize,
    name: &str,
) -> Result<Outcome<BorderedCertificate>> {
    let core = &b.core;
    let n = b.dim();
    check_block_structure(core, blocks, n)?;

    // Hypotheses on each block.
    let mut witnesses = Vec::with_capacity(blocks.len());
    let mut unknown = None;
    for (i, r) in blocks.iter().enumerate() {
        let block = b.block(r);
        let a1 = block.get(0, 0).clone();
        let alpha = border_scale(core, r)?;
        let chi = char_poly(&block)?;
        let verdict = certify_irreducible(&chi, prime_budget)?;
        let label = if blocks.len() == 1 { name.to_string() } else { format!("{name}_{}", i + 1) };
        match &verdict {
            IrreducibilityVerdict::Reducible { factor, .. } => {
                return Ok(Outcome::refuted(format!(
                    "{label} reducible (factor {})",
                    factor.to_text()
                )))
            }
            IrreducibilityVerdict::Unknown { .. } if unknown.is_none() => {
                unknown = Some(format!("{label} not certified within the prime budget"));
            }
            _ => {}
        }
        if a1 < BigInt::one() {
            return Ok(Outcome::refuted(format!(
                "block {} has a_1 = {a1} < 1",
                i + 1
            )));
        }
        witnesses.push(BlockWitness {
            range: r.clone(),
            alpha: alpha.to_string(),
            char_poly: chi,
            verdict,
        });
    }
    for i in 0..witnesses.len() {
        for j in i + 1..witnesses.len() {
            if witnesses[i].char_poly == witnesses[j].char_poly {
                return Ok(Outcome::refuted(format!(
                    "blocks not distinct ({} and {} share a characteristic polynomial)",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if !core.is_nonnegative() || !is_irreducible_nonnegative(core)? {
        return Ok(Outcome::refuted(
            "specialization at y = 0 is not a nonnegative irreducible matrix",
        ));
    }
    if let Some(reason) = unknown {
        return Ok(Outcome::unknown(reason));
    }
    Ok(Outcome::Issued(BorderedCertificate {
        dim: n,
        c: b.c.clone(),
        p: b.p,
        core_irreducible: true,
        blocks: witnesses,
    }))
}

/// Blocks tile `1..n` and do not couple to each other.
fn check_block_structure(core: &IntMatrix, blocks: &[Range<usize>], n: usize) -> Result<()> {
    let mut owner = vec![usize::MAX; n];
    let mut next = 1;
    for (k, r) in blocks.iter().enumerate() {
        if r.start != next || r.end <= r.start || r.end > n {
            return Err(Error::InvalidArgument(format!(
                "block ranges must tile 1..{n} in order (got {r:?})"
            )));
        }
        owner[r.clone()].fill(k);
        next = r.end;
    }
    if next != n {
        return Err(Error::InvalidArgument(format!("block ranges stop at {next}, not {n}")));
    }
    for i in 1..n {
        for j in 1..n {
            if owner[i] != owner[j] && !core.get(i, j).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "blocks couple outside the border at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// The common ratio `border / first row` over one block.
fn border_scale(core: &IntMatrix, r: &Range<usize>) -> Result<BigRational> {
    let first = r.start;
    let mut alpha: Option<BigRational> = None;
    for j in r.clone() {
        let border = core.get(0, j);
        let row = core.get(first, j);
        if row.is_zero() {
            if !border.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "border not proportional to the block's first row at column {j}"
                )));
            }
            continue;
        }
        let ratio = BigRational::new(border.clone(), row.clone());
        match &alpha {
            None => alpha = Some(ratio),
            Some(a) if *a != ratio => {
                return Err(Error::InvalidArgument(format!(
                    "border not proportional to the block's first row at column {j}"
                )))
            }
            _ => {}
        }
    }
    let alpha = alpha.ok_or_else(|| Error::InvalidArgument("block has a zero first row".into()))?;
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("border vanishes over a block".into()));
    }
    Ok(alpha)
}
