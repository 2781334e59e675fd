//! Characteristic polynomials by modular Hessenberg reduction and Chinese
//! remaindering.
//!
//! For each word-size prime the matrix is reduced to upper Hessenberg form
//! by similarity transforms over `F_p`, and the characteristic polynomial of
//! the Hessenberg matrix is read off by the standard O(n^3) recurrence. The
//! residues are lifted with enough primes that the product exceeds twice the
//! coefficient bound `max_k C(n,k) (n * maxabs)^k`.

use num_bigint::BigInt;
use num_traits::One;

use super::IntMatrix;
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::modular::{self, CrtAccumulator, Zp};
use crate::polynomials::IntPoly;

/// `det(t I - M)` for a square integer matrix.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly> {
    char_poly_with(m, Execution::default())
}

pub fn char_poly_with(m: &IntMatrix, exec: Execution) -> Result<IntPoly> {
    let n = m.dim()?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let primes = modular::first_crt_primes(crt_prime_count(m)?);
    let residues = exec::map(exec, &primes, |&p| char_poly_mod(m, p));
    let mut acc = CrtAccumulator::new(n + 1);
    for (&p, r) in primes.iter().zip(&residues) {
        acc.push(p, r);
    }
    Ok(IntPoly::new(acc.symmetric()))
}

/// `max_k C(n,k) (n * maxabs)^k`, a bound on every coefficient of the
/// characteristic polynomial (the k-th coefficient is a signed sum of
/// `C(n,k)` principal k-minors, each at most `k! maxabs^k <= (n maxabs)^k`).
pub fn coefficient_bound(m: &IntMatrix) -> Result<BigInt> {
    let n = m.dim()?;
    let base = BigInt::from(n) * m.max_abs();
    let mut best = BigInt::one();
    let mut binom = BigInt::one();
    let mut power = BigInt::one();
    for k in 1..=n {
        binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
        power *= &base;
        let term = &binom * &power;
        if term > best {
            best = term;
        }
    }
    Ok(best)
}

/// Number of CRT primes needed so that their product exceeds twice the
/// coefficient bound.
pub fn crt_prime_count(m: &IntMatrix) -> Result<usize> {
    let target = coefficient_bound(m)? * 2u32;
    let mut product = BigInt::one();
    let mut count = 0;
    for p in modular::crt_primes() {
        if product > target {
            break;
        }
        product *= BigInt::from(p);
        count += 1;
    }
    Ok(count)
}

/// Characteristic polynomial of `m` modulo the prime `p`, ascending
/// coefficients of length `dim + 1`.
pub fn char_poly_mod(m: &IntMatrix, p: u64) -> Vec<u64> {
    let z = Zp::new(p);
    let n = m.rows();
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| m.row(i).iter().map(|v| z.from_bigint(v)).collect())
        .collect();
    hessenberg(z, &mut h);
    hessenberg_char_poly(z, &h)
}

/// In-place reduction to upper Hessenberg form by elementary similarities.
fn hessenberg(z: Zp, h: &mut [Vec<u64>]) {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = z.inv(h[j + 1][j]);
        for i in j + 2..n {
            if h[i][j] == 0 {
                continue;
            }
            let u = z.mul(h[i][j], inv);
            // row_i -= u * row_{j+1}
            let (upper, lower) = h.split_at_mut(i);
            let src = &upper[j + 1];
            let dst = &mut lower[0];
            for k in 0..n {
                if src[k] != 0 {
                    dst[k] = z.sub(dst[k], z.mul(u, src[k]));
                }
            }
            // col_{j+1} += u * col_i
            for row in h.iter_mut() {
                if row[i] != 0 {
                    row[j + 1] = z.add(row[j + 1], z.mul(u, row[i]));
                }
            }
        }
    }
}

/// Characteristic polynomial of an upper Hessenberg matrix:
/// `p_m = (t - h[m-1][m-1]) p_{m-1} - sum_i (prod of subdiagonal) h[m-i-1][m-1] p_{m-i-1}`.
fn hessenberg_char_poly(z: Zp, h: &[Vec<u64>]) -> Vec<u64> {
    let n = h.len();
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        let d = h[m - 1][m - 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = z.add(next[k + 1], c);
            next[k] = z.sub(next[k], z.mul(d, c));
        }
        let mut prod = 1u64;
        for i in 1..m {
            prod = z.mul(prod, h[m - i][m - i - 1]);
            if prod == 0 {
                break;
            }
            let coef = z.mul(prod, h[m - i - 1][m - 1]);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                next[k] = z.sub(next[k], z.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}
