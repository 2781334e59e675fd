use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// True iff the coefficient list is a palindrome. The zero polynomial is
/// not reciprocal.
pub fn is_reciprocal(p: &IntPoly) -> bool {
    let c = p.coeffs();
    !c.is_empty() && c.iter().eq(c.iter().rev())
}

/// `t^j + t^-j` written as a polynomial in `s = t + 1/t`, for j = 0..=d.
fn lucas_polys(d: usize) -> Vec<IntPoly> {
    let s = IntPoly::t();
    let mut out = vec![IntPoly::from_i64s(&[2])];
    if d >= 1 {
        out.push(s.clone());
    }
    for j in 2..=d {
        let next = &(&s * &out[j - 1]) - &out[j - 2];
        out.push(next);
    }
    out
}

/// For monic reciprocal `p` of degree `2d`, the monic `q` of degree `d`
/// with `p(t) = t^d q(t + 1/t)`.
pub fn trace_transform(p: &IntPoly) -> Result<IntPoly> {
    let n = p.checked_degree()?;
    if n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_reciprocal(p) {
        return Err(Error::NotReciprocal);
    }
    let d = n / 2;
    let lucas = lucas_polys(d);
    // p(t)/t^d = p_d + sum_{j>=1} p_{d+j} (t^j + t^-j)
    let mut q = IntPoly::constant(p.coeff(d));
    for j in 1..=d {
        q = &q + &lucas[j].scale(&p.coeff(d + j));
    }
    Ok(q)
}

/// For monic `q` of degree `d`, the reciprocal `t^d q(t + 1/t)` of degree `2d`.
pub fn inverse_trace_transform(q: &IntPoly) -> Result<IntPoly> {
    let d = q.checked_degree()?;
    if !q.is_monic() {
        return Err(Error::NotMonic);
    }
    // t^d (t + 1/t)^k = t^(d-k) (t^2 + 1)^k
    let t2p1 = IntPoly::from_i64s(&[1, 0, 1]);
    let mut power = IntPoly::one();
    let mut out = IntPoly::zero();
    for k in 0..=d {
        let term = IntPoly::monomial(q.coeff(k), d - k);
        out = &out + &(&term * &power);
        power = &power * &t2p1;
    }
    Ok(out)
}

/// `p(t^n)`.
pub fn substitute_power(p: &IntPoly, n: usize) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("power substitution needs n >= 1".into()));
    }
    let deg = match p.degree() {
        None => return Ok(IntPoly::zero()),
        Some(d) => d,
    };
    let mut coeffs = vec![BigInt::zero(); deg * n + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        coeffs[i * n] = c.clone();
    }
    Ok(IntPoly::new(coeffs))
}

/// True iff `z >= 0` and `z` is the square of an integer.
pub fn is_perfect_square(z: &BigInt) -> bool {
    if z.is_negative() {
        return false;
    }
    let r = z.sqrt();
    &r * &r == *z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trace_transform_examples() {
        assert_eq!(trace_transform(&p(&[1, -66, 1])).unwrap(), p(&[-66, 1]));
        assert_eq!(
            trace_transform(&p(&[1, -72, 110, -72, 1])).unwrap(),
            p(&[108, -72, 1])
        );
        assert_eq!(trace_transform(&p(&[1, 0, 1])).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn trace_transform_errors() {
        assert_eq!(trace_transform(&p(&[44, -16, 1])), Err(Error::NotReciprocal));
        assert_eq!(trace_transform(&p(&[1, 2, 2, 1])), Err(Error::OddDegree(3)));
        assert_eq!(trace_transform(&p(&[2, 1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_trace_transform(&p(&[-66, 1])).unwrap(), p(&[1, -66, 1]));
        assert_eq!(inverse_trace_transform(&p(&[-7, 1])).unwrap(), p(&[1, -7, 1]));
        assert_eq!(
            inverse_trace_transform(&p(&[108, -72, 1])).unwrap(),
            p(&[1, -72, 110, -72, 1])
        );
        assert_eq!(inverse_trace_transform(&p(&[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn reciprocal_examples() {
        assert!(is_reciprocal(&p(&[1, -66, 1])));
        assert!(!is_reciprocal(&p(&[44, -16, 1])));
        assert!(is_reciprocal(&p(&[1, -266, 143, -204, 143, -266, 1])));
    }

    #[test]
    fn power_substitution() {
        assert_eq!(substitute_power(&p(&[-4, 1]), 2).unwrap(), p(&[-4, 0, 1]));
        assert_eq!(
            substitute_power(&p(&[44, -16, 1]), 2).unwrap(),
            p(&[44, 0, -16, 0, 1])
        );
        assert!(substitute_power(&p(&[-4, 1]), 0).is_err());
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigInt::from(0)));
        assert!(!is_perfect_square(&BigInt::from(1276)));
        assert!(is_perfect_square(&BigInt::from(4356)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
    }
}
