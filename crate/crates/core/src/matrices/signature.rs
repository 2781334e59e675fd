//! Signature and nullity of symmetric integer matrices by exact congruence
//! diagonalization over the rationals (Sylvester's law of inertia).

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::Result;

/// Inertia of a symmetric matrix: `sigma` = #positive − #negative
/// eigenvalues, `nullity` = #zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureReport {
    pub dim: usize,
    pub sigma: i64,
    pub nullity: usize,
}

impl SignatureReport {
    pub fn positive(&self) -> usize {
        ((self.dim - self.nullity) as i64 + self.sigma) as usize / 2
    }

    pub fn negative(&self) -> usize {
        ((self.dim - self.nullity) as i64 - self.sigma) as usize / 2
    }

    /// The arithmetic invariants every report must satisfy.
    pub fn is_consistent(&self) -> bool {
        let rank = self.dim as i64 - self.nullity as i64;
        self.nullity <= self.dim
            && self.sigma.abs() + self.nullity as i64 <= self.dim as i64
            && (rank - self.sigma) % 2 == 0
            && rank - self.sigma >= 0
            && rank + self.sigma >= 0
    }
}

/// Signature and nullity of a symmetric matrix.
///
/// Pivots on a nonzero diagonal entry when one exists; when the remaining
/// diagonal vanishes but some off-diagonal entry does not, the 2x2 block
/// `[[0, a], [a, 0]]` (one positive and one negative eigenvalue) is split
/// off instead. Whatever remains when everything vanishes is the kernel.
pub fn signature_nullity(s: &IntMatrix) -> Result<SignatureReport> {
    s.require_symmetric()?;
    let n = s.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            s.row(i)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);

    loop {
        if let Some(k) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let i = active.remove(k);
            let piv = a[i][i].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let col: Vec<BigRational> = active.iter().map(|&r| &a[r][i] / &piv).collect();
            for (x, &r) in active.iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                for &c in &active {
                    if !a[i][c].is_zero() {
                        let delta = &col[x] * &a[i][c];
                        a[r][c] -= delta;
                    }
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else { break };
        pos += 1;
        neg += 1;
        active.retain(|&r| r != i && r != j);
        let piv = a[i][j].clone();
        // Schur complement of [[0, a], [a, 0]]:
        // S'[k][l] = S[k][l] - (S[k][i] S[j][l] + S[k][j] S[i][l]) / a
        let ki: Vec<BigRational> = active.iter().map(|&r| &a[r][i] / &piv).collect();
        let kj: Vec<BigRational> = active.iter().map(|&r| &a[r][j] / &piv).collect();
        for (x, &r) in active.iter().enumerate() {
            for &c in &active {
                let mut delta = BigRational::zero();
                if !ki[x].is_zero() && !a[j][c].is_zero() {
                    delta += &ki[x] * &a[j][c];
                }
                if !kj[x].is_zero() && !a[i][c].is_zero() {
                    delta += &kj[x] * &a[i][c];
                }
                if !delta.is_zero() {
                    a[r][c] -= delta;
                }
            }
        }
    }
    let nullity = active.len();
    Ok(SignatureReport {
        dim: n,
        sigma: pos as i64 - neg as i64,
        nullity,
    })
}
