use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{pseudo_div_rem, IntPoly};
use crate::error::{Error, Result};
use crate::modular::{self, Zp};

/// Gcd over Z[t] by the primitive remainder sequence. The result is
/// primitive with positive leading coefficient (times the gcd of contents).
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let content = num_integer::Integer::gcd(&a.content(), &b.content());
    let (mut x, mut y) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !y.is_zero() {
        let (_, r) = pseudo_div_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { r.primitive_part() };
    }
    x.primitive_part().scale(&content)
}

/// True iff `gcd(p, p')` is constant.
///
/// A prime not dividing the leading coefficient for which `p mod q` is
/// squarefree settles the question; only when a handful of such primes
/// all fail is the exact gcd computed.
pub fn is_squarefree(p: &IntPoly) -> Result<bool> {
    let n = p.checked_degree()?;
    if n == 0 {
        return Ok(true);
    }
    let lead = p.leading().unwrap();
    for q in modular::odd_primes().take(32) {
        let z = Zp::new(q);
        if z.from_bigint(lead) == 0 {
            continue;
        }
        let f = modular::reduce_bigints(z, p.coeffs());
        let g = modular::poly_gcd(z, &f, &modular::derivative(z, &f));
        if g.len() == 1 {
            return Ok(true);
        }
    }
    Ok(gcd(p, &p.derivative()).degree() == Some(0))
}

/// `p / gcd(p, p')`, primitive.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    p.checked_degree()?;
    let g = gcd(p, &p.derivative());
    let pp = p.primitive_part();
    Ok(pp
        .div_exact(&g.primitive_part())
        .expect("gcd divides p")
        .primitive_part())
}

/// Yun's squarefree decomposition: returns `(factor, multiplicity)` pairs
/// of primitive, pairwise coprime squarefree factors whose product (with
/// multiplicities) equals the primitive part of `p` up to sign.
pub fn yun_decomposition(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    let n = p.checked_degree()?;
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let f = p.primitive_part();
    let fp = f.derivative();
    let mut a = gcd(&f, &fp).primitive_part();
    let mut b = f.div_exact(&a).expect("gcd divides");
    let mut c = fp_div(&fp, &a);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        if b.degree() == Some(0) {
            break;
        }
        a = gcd(&b, &d).primitive_part();
        if a.degree() != Some(0) {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        c = fp_div(&d, &a);
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// `num / den` for primitive `den` dividing `num` over Q; by Gauss's lemma
/// the quotient is integral.
fn fp_div(num: &IntPoly, den: &IntPoly) -> IntPoly {
    num.div_exact(den).expect("exact division over Z")
}

/// Resultant `Res(a, b) = lc(a)^deg(b) * prod_{a(r)=0} b(r)` by the
/// subresultant remainder sequence over Z.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
    }
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    if db == 0 {
        return Ok(sign * b.leading().unwrap().pow(da as u32));
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let t = ca.pow(db as u32) * cb.pow(da as u32);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let (_, r) = pseudo_div_rem(&a, &b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &g * h.pow(delta as u32);
        b = r.div_scalar_exact(&divisor);
        g = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32) / h.pow((delta - 1) as u32),
        };
        if b.degree() == Some(0) {
            let dega = a.degree().unwrap();
            let lb = b.leading().unwrap();
            let hh = lb.pow(dega as u32) / h.pow((dega - 1) as u32);
            return Ok(sign * t * hh);
        }
    }
}
