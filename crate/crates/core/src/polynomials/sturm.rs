use num_rational::BigRational;
use num_traits::Zero;

use super::{pseudo_div_rem, IntPoly};
use crate::error::{Error, Result};

/// End of a counting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl From<BigRational> for Endpoint {
    fn from(x: BigRational) -> Self {
        Endpoint::Finite(x)
    }
}

impl Endpoint {
    fn rank(&self) -> u8 {
        match self {
            Endpoint::NegInfinity => 0,
            Endpoint::Finite(_) => 1,
            Endpoint::PosInfinity => 2,
        }
    }

    fn below(&self, other: &Endpoint) -> bool {
        match (self, other) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a < b,
            _ => self.rank() < other.rank(),
        }
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...` over Z, each term rescaled by a
/// positive constant. For squarefree `p` the last term is a nonzero constant.
pub fn sturm_sequence(p: &IntPoly) -> Result<Vec<IntPoly>> {
    p.checked_degree()?;
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(seq);
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        let (_, r) = pseudo_div_rem(a, b);
        if r.is_zero() {
            break;
        }
        // prem = lc(b)^(delta+1) * a - q b; the multiplier's sign decides
        // whether prem is a positive or negative multiple of rem(a, b).
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let lead_negative = b.leading().unwrap() < &num_bigint::BigInt::from(0);
        let multiplier_negative = lead_negative && (delta + 1) % 2 == 1;
        let next = if multiplier_negative { r } else { -&r };
        let c = next.content();
        seq.push(next.div_scalar_exact(&c));
    }
    Ok(seq)
}

fn variations(seq: &[IntPoly], at: &Endpoint) -> usize {
    let mut last = 0;
    let mut count = 0;
    for q in seq {
        let s = match at {
            Endpoint::NegInfinity => q.sign_at_infinity(false),
            Endpoint::PosInfinity => q.sign_at_infinity(true),
            Endpoint::Finite(x) => q.sign_at(x),
        };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm sequence of the squarefree part of `p`.
fn squarefree_sequence(p: &IntPoly) -> Result<Vec<IntPoly>> {
    let seq = sturm_sequence(p)?;
    match seq.last().and_then(|g| g.degree()) {
        Some(d) if d > 0 => {
            let g = seq.last().unwrap().primitive_part();
            let reduced = p.primitive_part().div_exact(&g).ok_or_else(|| {
                Error::InvalidArgument("Sturm gcd does not divide input".into())
            })?;
            sturm_sequence(&reduced)
        }
        _ => Ok(seq),
    }
}

fn count_between(p: &IntPoly, lo: &Endpoint, hi: &Endpoint) -> Result<usize> {
    if !lo.below(hi) {
        return Err(Error::EmptyInterval);
    }
    let seq = squarefree_sequence(p)?;
    let vl = variations(&seq, lo);
    let vh = variations(&seq, hi);
    Ok(vl.saturating_sub(vh))
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    count_between(
        p,
        &Endpoint::Finite(lo.clone()),
        &Endpoint::Finite(hi.clone()),
    )
}

/// Number of distinct real roots of `p` strictly greater than `lo`.
pub fn sturm_count_above(p: &IntPoly, lo: &BigRational) -> Result<usize> {
    count_between(p, &Endpoint::Finite(lo.clone()), &Endpoint::PosInfinity)
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &IntPoly) -> Result<usize> {
    count_between(p, &Endpoint::NegInfinity, &Endpoint::PosInfinity)
}

/// Whether `p` has a real root strictly greater than `c`.
///
/// Exact throughout. Two cheap certificates are tried before the Sturm
/// count: Descartes' rule on `p(t + c)` (no sign variation: no root; an odd
/// number: some root), then a descending scan for a point `x > c` at which
/// `p` vanishes or has the sign opposite to its sign at `+inf`, which places
/// a root in `[x, inf)` by the intermediate value theorem. The scan points
/// are guided by a floating-point root bound, but only exact signs are used.
pub fn has_root_above(p: &IntPoly, c: &BigRational) -> Result<bool> {
    let d = p.checked_degree()?;
    if d == 0 {
        return Ok(false);
    }
    match descartes_above(p, c) {
        0 => return Ok(false),
        v if v % 2 == 1 => return Ok(true),
        _ => {}
    }
    if sign_witness_above(p, c).is_some() {
        return Ok(true);
    }
    Ok(sturm_count_above(p, c)? > 0)
}

/// Sign variations of the coefficients of `den^d p((u + num) / den)`, whose
/// positive roots are the roots of `p` above `c = num / den`.
fn descartes_above(p: &IntPoly, c: &BigRational) -> usize {
    let d = p.degree().unwrap_or(0);
    let den = c.denom();
    let mut den_pow = num_bigint::BigInt::from(1);
    let mut homog = vec![num_bigint::BigInt::from(0); d + 1];
    for k in (0..=d).rev() {
        homog[k] = p.coeff(k) * &den_pow;
        den_pow *= den;
    }
    let shifted = IntPoly::new(homog).compose_affine(&num_bigint::BigInt::from(1), c.numer());
    let mut last = 0;
    let mut count = 0;
    for a in shifted.coeffs() {
        let s = super::sign_of(a);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Scan points `c + D (31/32)^j` from a Fujiwara-style root bound `D`.
fn sign_witness_above(p: &IntPoly, c: &BigRational) -> Option<BigRational> {
    const STEPS: usize = 1500;
    let d = p.degree()?;
    let lead_bits = p.leading()?.bits() as f64;
    // log2 of max_k |a_(d-k) / a_d|^(1/k), plus one for the factor 2
    let log_bound = (1..=d)
        .filter(|&k| !p.coeff(d - k).is_zero())
        .map(|k| (p.coeff(d - k).bits() as f64 - lead_bits + 1.0) / k as f64)
        .fold(f64::NEG_INFINITY, f64::max)
        + 1.0;
    if !log_bound.is_finite() {
        return None;
    }
    let c_f = c_to_f64(c)?;
    let top = c_f.abs().max(2f64.powf(log_bound.max(0.0))) * 2.0 + 1.0;
    if !top.is_finite() {
        return None;
    }
    let at_inf = p.sign_at_infinity(true);
    let mut delta = top;
    for _ in 0..STEPS {
        let x = c + BigRational::from_float(delta)?;
        if &x <= c {
            return None;
        }
        let s = p.sign_at(&x);
        if s != at_inf {
            return Some(x);
        }
        delta *= 31.0 / 32.0;
    }
    None
}

fn c_to_f64(c: &BigRational) -> Option<f64> {
    use num_traits::ToPrimitive;
    c.to_f64().filter(|v| v.is_finite())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn examples() {
        assert_eq!(sturm_count(&p(&[-2, 0, 1]), &q(0), &q(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[44, -16, 1]), &q(0), &q(16)).unwrap(), 2);
        let cubic = &p(&[-4, 1]) * &p(&[44, -16, 1]);
        assert_eq!(sturm_count_above(&cubic, &q(4)).unwrap(), 1);
        assert_eq!(count_real_roots(&cubic).unwrap(), 3);
    }

    #[test]
    fn root_above_agrees_with_sturm() {
        let cubic = &p(&[-4, 1]) * &p(&[44, -16, 1]);
        for c in -2..20 {
            let expect = sturm_count_above(&cubic, &q(c)).unwrap() > 0;
            assert_eq!(has_root_above(&cubic, &q(c)).unwrap(), expect, "c = {c}");
        }
        // two close roots above 0, none detectable by parity alone
        let close = &p(&[-100, 1]) * &p(&[-101, 1]);
        assert!(has_root_above(&close, &q(0)).unwrap());
        assert!(!has_root_above(&close, &q(101)).unwrap());
        assert!(!has_root_above(&p(&[1, 0, 1]), &q(-5)).unwrap());
    }

    #[test]
    fn half_open_interval() {
        // root at 4 is counted in (3, 4] but not in (4, 5]
        let f = p(&[-4, 1]);
        assert_eq!(sturm_count(&f, &q(3), &q(4)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &q(4), &q(5)).unwrap(), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = &p(&[-1, 1]) * &p(&[-1, 1]);
        assert_eq!(count_real_roots(&f).unwrap(), 1);
        assert_eq!(count_real_roots(&p(&[1, 0, 1])).unwrap(), 0);
    }

    #[test]
    fn empty_interval_rejected() {
        assert_eq!(
            sturm_count(&p(&[-2, 0, 1]), &q(2), &q(2)),
            Err(Error::EmptyInterval)
        );
    }
}
