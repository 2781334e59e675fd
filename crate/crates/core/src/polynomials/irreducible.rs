//! Irreducibility certification by factor-degree patterns modulo primes.
//!
//! If `f` factors over Z as `g * h` with `0 < deg g < deg f`, then for every
//! prime not dividing the leading coefficient, `deg g` is a sum of degrees of
//! irreducible factors of `f mod p`. Intersecting the sets of achievable
//! subset sums over several primes therefore bounds the possible factor
//! degrees; once the intersection is `{0, deg f}` no proper factor exists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{gcd, IntPoly};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::modular::{self, Zp};

/// Odd primes examined by default before giving up.
pub const DEFAULT_PRIME_BUDGET: usize = 500;

/// Good primes examined before an early rational-root attempt.
const EARLY_ROOT_ATTEMPT: usize = 16;

/// Consecutive unusable primes tolerated before squarefreeness over Z is
/// checked directly.
const SKIP_PROBE: usize = 48;

/// Factor degrees of the input reduced modulo one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePattern {
    pub prime: u64,
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum IrreducibilityVerdict {
    /// Proof of irreducibility: the intersection of the subset-sum sets of
    /// the recorded patterns is `{0, degree}`.
    Irreducible {
        degree: usize,
        patterns: Vec<PrimePattern>,
        degree_set: Vec<usize>,
    },
    /// An explicit nontrivial factor of the input.
    Reducible { factor: IntPoly, reason: String },
    Unknown {
        degree: usize,
        primes_examined: usize,
        degree_set: Vec<usize>,
    },
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible { .. })
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Reducible { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            IrreducibilityVerdict::Irreducible { .. } => "irreducible",
            IrreducibilityVerdict::Reducible { .. } => "reducible",
            IrreducibilityVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// Subset sums reachable from `degrees`, as a membership vector of length n+1.
pub(crate) fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

pub(crate) fn set_to_vec(set: &[bool]) -> Vec<usize> {
    set.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect()
}

fn is_trivial(set: &[bool]) -> bool {
    let n = set.len() - 1;
    set.iter().enumerate().all(|(i, &b)| b == (i == 0 || i == n))
}

/// Factor degrees of `f mod p`, or `None` when `p` divides the leading
/// coefficient or the reduction is not squarefree.
pub(crate) fn pattern_mod(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let z = Zp::new(p);
    let lead = z.from_bigint(f.leading()?);
    if lead == 0 {
        return None;
    }
    let fp = modular::make_monic(z, &modular::reduce_bigints(z, f.coeffs()));
    let g = modular::poly_gcd(z, &fp, &modular::derivative(z, &fp));
    if g.len() != 1 {
        return None;
    }
    let mut degs = modular::distinct_degree_pattern(z, &fp);
    degs.sort_unstable();
    Some(degs)
}

pub fn certify_irreducible(p: &IntPoly, prime_budget: usize) -> Result<IrreducibilityVerdict> {
    certify_irreducible_with(p, prime_budget, Execution::default())
}

/// Certifies irreducibility over Q of `p` (content is ignored).
///
/// Primes are scanned from 3 upward; primes dividing the leading coefficient
/// or giving a non-squarefree reduction are skipped without counting against
/// `prime_budget`. The verdict does not depend on `exec`.
pub fn certify_irreducible_with(
    p: &IntPoly,
    prime_budget: usize,
    exec: Execution,
) -> Result<IrreducibilityVerdict> {
    let n = p.nonconstant_degree()?;
    if prime_budget == 0 {
        return Err(Error::InvalidArgument("prime budget must be positive".into()));
    }
    let f = p.primitive_part();
    if n == 1 {
        return Ok(IrreducibilityVerdict::Irreducible {
            degree: 1,
            patterns: Vec::new(),
            degree_set: vec![0, 1],
        });
    }
    if f.coeff(0).is_zero() {
        return Ok(IrreducibilityVerdict::Reducible {
            factor: IntPoly::t(),
            reason: "rational root 0".into(),
        });
    }

    let mut set = vec![true; n + 1];
    let mut patterns: Vec<PrimePattern> = Vec::new();
    let mut examined = 0usize;
    let mut skipped_run = 0usize;
    let mut any_good = false;
    let mut tried_roots = false;
    let hard_cap = prime_budget * 4 + 1000;
    let width = exec::batch_width(exec);
    let mut primes = modular::odd_primes();
    let mut scanned = 0usize;

    while examined < prime_budget && scanned < hard_cap {
        let batch: Vec<u64> = primes.by_ref().take(width).collect();
        scanned += batch.len();
        let results = exec::map(exec, &batch, |&q| pattern_mod(&f, q));
        for (q, res) in batch.into_iter().zip(results) {
            let Some(degrees) = res else {
                skipped_run += 1;
                if !any_good && skipped_run == SKIP_PROBE {
                    let g = gcd(&f, &f.derivative());
                    if g.degree().unwrap_or(0) > 0 {
                        return Ok(IrreducibilityVerdict::Reducible {
                            factor: g.primitive_part(),
                            reason: "repeated factor gcd(p, p')".into(),
                        });
                    }
                }
                continue;
            };
            any_good = true;
            skipped_run = 0;
            examined += 1;
            let sums = subset_sums(&degrees, n);
            for (s, r) in set.iter_mut().zip(&sums) {
                *s &= *r;
            }
            patterns.push(PrimePattern { prime: q, degrees });
            if is_trivial(&set) {
                return Ok(IrreducibilityVerdict::Irreducible {
                    degree: n,
                    patterns,
                    degree_set: set_to_vec(&set),
                });
            }
            if examined == EARLY_ROOT_ATTEMPT && set[1] {
                tried_roots = true;
                if let Some((_, factor)) = rational_root_factor(&f) {
                    return Ok(reducible_from_root(factor));
                }
            }
            if examined >= prime_budget {
                break;
            }
        }
    }

    if !any_good {
        let g = gcd(&f, &f.derivative());
        if g.degree().unwrap_or(0) > 0 {
            return Ok(IrreducibilityVerdict::Reducible {
                factor: g.primitive_part(),
                reason: "repeated factor gcd(p, p')".into(),
            });
        }
    }
    if set[1] && !tried_roots {
        if let Some((_, factor)) = rational_root_factor(&f) {
            return Ok(reducible_from_root(factor));
        }
    }
    Ok(IrreducibilityVerdict::Unknown {
        degree: n,
        primes_examined: examined,
        degree_set: set_to_vec(&set),
    })
}

fn reducible_from_root(factor: IntPoly) -> IrreducibilityVerdict {
    IrreducibilityVerdict::Reducible {
        reason: format!("rational root of {factor}"),
        factor,
    }
}

/// A rational root of `p`, if one exists (complete search).
pub fn find_rational_root(p: &IntPoly) -> Result<Option<BigRational>> {
    p.nonconstant_degree()?;
    let f = p.primitive_part();
    if f.coeff(0).is_zero() {
        return Ok(Some(BigRational::zero()));
    }
    Ok(rational_root_factor(&f).map(|(r, _)| r))
}

/// p-adic rational root search for primitive `f` with `f(0) != 0`.
///
/// With `L = lc(f)`, every rational root `a/b` gives the integer root
/// `L*a/b` of the monic `g(x) = L^(n-1) f(x/L)`, which divides `g(0)`. Roots
/// of `g` modulo a good prime are Hensel-lifted past `2|g(0)|` and tested.
fn rational_root_factor(f: &IntPoly) -> Option<(BigRational, IntPoly)> {
    let n = f.degree()?;
    let lead = f.leading()?.clone();
    let g: Vec<BigInt> = (0..=n)
        .map(|i| {
            if i == n {
                BigInt::one()
            } else {
                f.coeff(i) * lead.pow((n - 1 - i) as u32)
            }
        })
        .collect();
    let g = IntPoly::new(g);
    let bound = g.coeff(0).abs() * 2;

    // Pick the good prime (among the first few) with the fewest roots of g.
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut good = 0;
    for q in modular::odd_primes().take(400) {
        if q > 20_000 {
            break;
        }
        let z = Zp::new(q);
        if z.from_bigint(&lead) == 0 {
            continue;
        }
        let gp = modular::reduce_bigints(z, g.coeffs());
        if modular::poly_gcd(z, &gp, &modular::derivative(z, &gp)).len() != 1 {
            continue;
        }
        let roots: Vec<u64> = (0..q).filter(|&x| modular::eval(z, &gp, x) == 0).collect();
        if roots.is_empty() {
            return None;
        }
        if best.as_ref().is_none_or(|(_, r)| roots.len() < r.len()) {
            best = Some((q, roots));
        }
        good += 1;
        if good >= 8 {
            break;
        }
    }
    let (q, roots) = best?;
    let gd = g.derivative();
    for r0 in roots {
        let mut m = BigInt::from(q);
        let mut r = BigInt::from(r0);
        while m <= bound {
            let m2 = &m * &m;
            let val = g.eval(&r).mod_floor(&m2);
            let der = gd.eval(&r).mod_floor(&m2);
            let inv = mod_inverse(&der, &m2)?;
            r = (&r - val * inv).mod_floor(&m2);
            m = m2;
        }
        let x = modular::symmetric_mod(&r, &m);
        if g.eval(&x).is_zero() {
            let root = BigRational::new(x.clone(), lead.clone());
            let factor = IntPoly::new(vec![-root.numer().clone(), root.denom().clone()]);
            debug_assert!(f.divisible_by(&factor));
            return Some((root, factor));
        }
    }
    None
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Re-derives the factor-degree patterns of `p` at the recorded primes and
/// checks that they reproduce the claimed degree set.
pub fn recheck_patterns(p: &IntPoly, patterns: &[PrimePattern], claimed: &[usize]) -> bool {
    let Some(n) = p.degree() else { return false };
    let f = p.primitive_part();
    let mut set = vec![true; n + 1];
    for pat in patterns {
        match pattern_mod(&f, pat.prime) {
            Some(d) if d == pat.degrees => {
                let sums = subset_sums(&d, n);
                for (s, r) in set.iter_mut().zip(&sums) {
                    *s &= *r;
                }
            }
            _ => return false,
        }
    }
    set_to_vec(&set) == claimed
}
