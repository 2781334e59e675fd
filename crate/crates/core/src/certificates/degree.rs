//! Trace-field degree, stretch-factor minimal polynomials and the
//! nonsplitting certificate.
//!
//! For the word `T_alpha^a T_beta^b` the stretch factor satisfies
//! `lambda + 1/lambda = |2 - a b mu|` where `mu` is the Perron root of
//! `X X^T`. With `a = 2n`, `b = 2n eps` the discriminant of
//! `lambda^2 - s lambda + 1` is `16 n^2 ((n mu')^2 - mu')` with `mu' = eps mu`;
//! when its norm `Q(n^2)` is not an integer square, the discriminant is not
//! a square in the trace field and `lambda` has degree `2d`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::matrices::{char_poly_with, is_primitive, IntMatrix};
use crate::polynomials::{
    certify_irreducible_with, inverse_trace_transform, is_perfect_square, resultant,
    has_root_above, sturm_count_above, IntPoly, IrreducibilityVerdict, PrimePattern, DEFAULT_PRIME_BUDGET,
};

/// Default upper end of the witness search.
pub const DEFAULT_N_MAX: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralFactor {
    #[serde(with = "crate::serde_big")]
    pub root: BigInt,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFieldCertificate {
    pub dim: usize,
    pub d: usize,
    pub char_poly: IntPoly,
    pub structural_factors: Vec<StructuralFactor>,
    pub min_poly_mu: IntPoly,
    pub verdict: IrreducibilityVerdict,
    /// Number of roots of `min_poly_mu` above the largest structural root
    /// (present only when structural factors were divided out).
    pub roots_above_structural: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCertificate {
    pub trace_field_degree: usize,
    pub stretch_degree: usize,
    pub epsilon: i8,
    /// Twist exponents `(a, b)` on `(T_alpha, T_beta)`.
    pub word: (i64, i64),
    pub witness_n: u64,
    #[serde(with = "crate::serde_big")]
    pub norm_value: BigInt,
    /// `Res(P', t)` and `Res(P', n^2 t - 1)`; their product is `norm_value`.
    #[serde(with = "crate::serde_big::vec")]
    pub resultant_factors: Vec<BigInt>,
    pub min_poly_mu: IntPoly,
    pub min_poly_mu_prime: IntPoly,
    pub mu_patterns: Vec<PrimePattern>,
    /// Sign of the branch: `lambda + 1/lambda = branch * (2 - a b mu)`.
    pub branch: i8,
    pub min_poly_lambda: IntPoly,
}

/// Degree of the trace field `Q(mu)` of a primitive Gram matrix.
pub fn trace_field_degree(
    g: &IntMatrix,
    structural: &[(BigInt, usize)],
    prime_budget: usize,
) -> Result<Outcome<TraceFieldCertificate>> {
    trace_field_degree_with(g, structural, prime_budget, Execution::default())
}

pub fn trace_field_degree_with(
    g: &IntMatrix,
    structural: &[(BigInt, usize)],
    prime_budget: usize,
    exec: Execution,
) -> Result<Outcome<TraceFieldCertificate>> {
    g.require_symmetric()?;
    g.require_nonnegative()?;
    if !is_primitive(g)? {
        return Err(Error::InvalidArgument("Gram matrix is not primitive".into()));
    }
    let chi = char_poly_with(g, exec)?;
    let dim = g.rows();
    let mut quotient = chi.clone();
    let mut factors = Vec::new();
    for (c, f) in structural.iter().filter(|(_, f)| *f > 0) {
        let lin = IntPoly::linear_power(c, *f);
        match quotient.div_exact(&lin) {
            Some(q) => quotient = q,
            None => {
                return Ok(Outcome::refuted(format!(
                    "(t - {c})^{f} does not divide the characteristic polynomial"
                )))
            }
        }
        factors.push(StructuralFactor { root: c.clone(), multiplicity: *f });
    }
    let verdict = certify_irreducible_with(&quotient, prime_budget, exec)?;
    match &verdict {
        IrreducibilityVerdict::Irreducible { .. } => {}
        IrreducibilityVerdict::Reducible { factor, .. } => {
            return Ok(Outcome::refuted(format!(
                "{} reducible (factor {})",
                if factors.is_empty() { "characteristic polynomial" } else { "quotient" },
                factor.to_text()
            )))
        }
        IrreducibilityVerdict::Unknown { primes_examined, .. } => {
            return Ok(Outcome::unknown(format!(
                "irreducibility not certified after {primes_examined} primes"
            )))
        }
    }
    let roots_above = match factors.iter().map(|f| &f.root).max() {
        None => None,
        Some(c) => {
            let above = sturm_count_above(&quotient, &BigRational::from_integer(c.clone()))?;
            if above == 0 {
                return Err(Error::Validation(format!(
                    "Perron-location check failed: quotient has no root above {c}"
                )));
            }
            Some(above)
        }
    };
    Ok(Outcome::Issued(TraceFieldCertificate {
        dim,
        d: quotient.degree().unwrap_or(0),
        char_poly: chi,
        structural_factors: factors,
        min_poly_mu: quotient,
        verdict,
        roots_above_structural: roots_above,
    }))
}

/// Monic minimal polynomial of `eps * mu` given that of `mu`.
pub fn mu_prime_poly(mu: &IntPoly, epsilon: i8) -> Result<IntPoly> {
    check_epsilon(epsilon)?;
    if epsilon == 1 {
        return Ok(mu.clone());
    }
    let r = mu.reflect();
    Ok(if r.leading().is_some_and(|c| c.is_negative()) { -&r } else { r })
}

fn check_epsilon(epsilon: i8) -> Result<()> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::InvalidArgument(format!("epsilon must be 1 or -1 (got {epsilon})")));
    }
    Ok(())
}

/// `Q(t) = a_0 * sum_k a_k t^(d-k)` for `P' = sum_k a_k t^k`.
pub fn norm_polynomial(mu_prime: &IntPoly) -> IntPoly {
    let a0 = mu_prime.coeff(0);
    mu_prime.reversed().scale(&a0)
}

/// `Res(P', t)` and `Res(P', n^2 t - 1)`.
pub fn norm_via_resultants(mu_prime: &IntPoly, n: u64) -> Result<(BigInt, BigInt)> {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let r1 = resultant(mu_prime, &IntPoly::t())?;
    let r2 = resultant(mu_prime, &IntPoly::new(vec![-BigInt::one(), n2]))?;
    Ok((r1, r2))
}

/// Stretch-degree certificate for `T_alpha^(2n) T_beta^(2n eps)`.
///
/// The minimal polynomial is certified irreducible first (with the default
/// prime budget); use [`nonsplitting_with`] to pass an existing verdict.
pub fn nonsplitting_certificate(
    min_poly_mu: &IntPoly,
    epsilon: i8,
    n_max: usize,
) -> Result<Outcome<DegreeCertificate>> {
    let verdict = certify_irreducible_with(min_poly_mu, DEFAULT_PRIME_BUDGET, Execution::default())?;
    nonsplitting_with(min_poly_mu, &verdict, epsilon, n_max, Execution::default())
}

pub fn nonsplitting_with(
    min_poly_mu: &IntPoly,
    verdict: &IrreducibilityVerdict,
    epsilon: i8,
    n_max: usize,
    exec: Execution,
) -> Result<Outcome<DegreeCertificate>> {
    check_epsilon(epsilon)?;
    let d = min_poly_mu.nonconstant_degree()?;
    if !min_poly_mu.is_monic() {
        return Err(Error::NotMonic);
    }
    let patterns = match verdict {
        IrreducibilityVerdict::Irreducible { degree, patterns, .. } if *degree == d => {
            patterns.clone()
        }
        _ => {
            return Err(Error::InvalidArgument(
                "minimal polynomial of mu is not certified irreducible".into(),
            ))
        }
    };
    if !has_root_above(min_poly_mu, &BigRational::zero())? {
        return Err(Error::InvalidArgument("minimal polynomial of mu has no positive root".into()));
    }
    let mu_prime = mu_prime_poly(min_poly_mu, epsilon)?;
    let q = norm_polynomial(&mu_prime);
    let width = exec::batch_width(exec).max(64) as u64;
    let mut start = 1u64;
    while start <= n_max as u64 {
        let end = (start + width - 1).min(n_max as u64);
        let ns: Vec<u64> = (start..=end).collect();
        let hit = exec::find_first(exec, &ns, |&n| {
            let v = q.eval(&(BigInt::from(n) * BigInt::from(n)));
            (!is_perfect_square(&v)).then_some((n, v))
        });
        if let Some((n, norm)) = hit {
            let (r1, r2) = norm_via_resultants(&mu_prime, n)?;
            if &r1 * &r2 != norm {
                return Err(Error::Validation(format!(
                    "norm routes disagree at n = {n}: {norm} vs {}",
                    &r1 * &r2
                )));
            }
            let a = 2 * n as i64;
            let b = a * epsilon as i64;
            let (lambda, branch) = stretch_branch(min_poly_mu, &BigInt::from(a), &BigInt::from(b))?;
            return Ok(Outcome::Issued(DegreeCertificate {
                trace_field_degree: d,
                stretch_degree: 2 * d,
                epsilon,
                word: (a, b),
                witness_n: n,
                norm_value: norm,
                resultant_factors: vec![r1, r2],
                min_poly_mu: min_poly_mu.clone(),
                min_poly_mu_prime: mu_prime,
                mu_patterns: patterns,
                branch,
                min_poly_lambda: lambda,
            }));
        }
        start = end + 1;
    }
    Ok(Outcome::unknown(format!("no witness n <= {n_max}")))
}

/// Monic reciprocal polynomial of degree `2d` vanishing at the stretch factor
/// of `T_alpha^a T_beta^b`.
pub fn stretch_min_poly(min_poly_mu: &IntPoly, a: &BigInt, b: &BigInt) -> Result<IntPoly> {
    stretch_branch(min_poly_mu, a, b).map(|(p, _)| p)
}

/// [`stretch_min_poly`] together with the chosen sign branch.
pub fn stretch_branch(min_poly_mu: &IntPoly, a: &BigInt, b: &BigInt) -> Result<(IntPoly, i8)> {
    let ab = a * b;
    if ab.is_zero() {
        return Err(Error::InvalidArgument("a * b must be nonzero".into()));
    }
    let d = min_poly_mu.nonconstant_degree()?;
    if !min_poly_mu.is_monic() {
        return Err(Error::NotMonic);
    }
    // R(s) = (-1)^d sum_k p_k (ab)^(d-k) (2 - s)^k has root s = 2 - ab mu.
    let two_minus_s = IntPoly::from_i64s(&[2, -1]);
    let mut power = IntPoly::one();
    let mut r = IntPoly::zero();
    for k in 0..=d {
        let scale = min_poly_mu.coeff(k) * ab.pow((d - k) as u32);
        r = &r + &power.scale(&scale);
        power = &power * &two_minus_s;
    }
    if d % 2 == 1 {
        r = -&r;
    }
    debug_assert!(r.is_monic());
    let mut neg = r.reflect();
    if d % 2 == 1 {
        neg = -&neg;
    }
    // When both branches have a root above 2 the Perron root mu > 0 decides:
    // s = 2 - ab mu exceeds 2 exactly when ab < 0. Trying that branch first
    // gives the same choice while usually sparing the second root check.
    let two = BigRational::from_integer(BigInt::from(2));
    let (first, second) = if ab.is_negative() { ((1, r), (-1, neg)) } else { ((-1, neg), (1, r)) };
    let (branch, poly) = if has_root_above(&first.1, &two)? {
        first
    } else if has_root_above(&second.1, &two)? {
        second
    } else {
        return Err(Error::InvalidArgument(
            "neither sign branch has a root above 2 (word not hyperbolic)".into(),
        ));
    };
    Ok((inverse_trace_transform(&poly)?, branch))
}
