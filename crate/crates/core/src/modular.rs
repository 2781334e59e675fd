//! Word-size modular arithmetic: prime sources, `Z/p` operations and dense
//! polynomials over `F_p` used by the CRT and distinct-degree kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arithmetic modulo a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 63));
        Zp { p }
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let z = Zp { p: n };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = z.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = z.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Odd primes 3, 5, 7, ... in increasing order.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime_u64(n))
}

/// Primes below 2^62 in decreasing order, used as CRT moduli.
pub fn crt_primes() -> impl Iterator<Item = u64> {
    let top = (1u64 << 62) - 1;
    (0u64..).map(move |i| top - 2 * i).filter(|&n| is_prime_u64(n))
}

/// The first `count` CRT primes.
pub fn first_crt_primes(count: usize) -> Vec<u64> {
    crt_primes().take(count).collect()
}

/// Incremental Chinese remaindering of a vector of residues into symmetric
/// integer representatives.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtAccumulator {
    pub fn new(len: usize) -> Self {
        CrtAccumulator {
            modulus: BigInt::from(1),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Folds in the residues of every value modulo `p` (coprime to the
    /// current modulus).
    pub fn push(&mut self, p: u64, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let z = Zp::new(p);
        let m_mod_p = z.from_bigint(&self.modulus);
        let m_inv = z.inv(m_mod_p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v' = v + m * ((r - v) * m^{-1} mod p)
            let v_mod_p = z.from_bigint(v);
            let k = z.mul(z.sub(r, v_mod_p), m_inv);
            if k != 0 {
                *v += &self.modulus * BigInt::from(k);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    /// Values mapped into `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1u32;
        self.values
            .iter()
            .map(|v| {
                let r = v.mod_floor(&self.modulus);
                if r > half {
                    r - &self.modulus
                } else {
                    r
                }
            })
            .collect()
    }
}

/// Dense polynomial over `F_p`, ascending coefficients, no trailing zeros.
pub type PolyP = Vec<u64>;

pub fn trim(a: &mut PolyP) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &PolyP) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn reduce_bigints(z: Zp, coeffs: &[BigInt]) -> PolyP {
    let mut out: PolyP = coeffs.iter().map(|c| z.from_bigint(c)).collect();
    trim(&mut out);
    out
}

pub fn poly_sub(z: Zp, a: &PolyP, b: &PolyP) -> PolyP {
    let n = a.len().max(b.len());
    let mut out: PolyP = (0..n)
        .map(|i| {
            z.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(&mut out);
    out
}

pub fn poly_mul(z: Zp, a: &PolyP, b: &PolyP) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = z.add(out[i + j], z.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo nonzero `b`.
pub fn poly_rem(z: Zp, a: &PolyP, b: &PolyP) -> PolyP {
    poly_divrem(z, a, b).1
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn poly_divrem(z: Zp, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = z.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = z.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = z.sub(r[shift + j], z.mul(c, bj));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn make_monic(z: Zp, a: &PolyP) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = z.inv(l);
            a.iter().map(|&c| z.mul(c, inv)).collect()
        }
    }
}

pub fn poly_gcd(z: Zp, a: &PolyP, b: &PolyP) -> PolyP {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(z, &x, &y);
        x = y;
        y = r;
    }
    make_monic(z, &x)
}

pub fn derivative(z: Zp, a: &PolyP) -> PolyP {
    let mut out: PolyP = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| z.mul(c, (i as u64) % z.modulus()))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(z: Zp, a: &PolyP, x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| z.add(z.mul(acc, x), c))
}

/// Factor degrees (with multiplicity) of a monic squarefree `f` over `F_p`,
/// by distinct-degree factorization with a precomputed Frobenius matrix.
pub fn distinct_degree_pattern(z: Zp, f: &PolyP) -> Vec<usize> {
    let n = f.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![1];
    }
    let frob = frobenius_matrix(z, f);
    let x: PolyP = vec![0, 1];
    let mut h = x.clone();
    let mut rest = f.clone();
    let mut degrees = Vec::new();
    let mut i = 1usize;
    while rest.len() - 1 >= 2 * i {
        h = apply_frobenius(z, &frob, &h, n);
        let hx = poly_sub(z, &h, &x);
        let hx_mod = poly_rem(z, &hx, &rest);
        let g = poly_gcd(z, &rest, &hx_mod);
        let dg = g.len() - 1;
        if dg > 0 {
            degrees.extend(std::iter::repeat(i).take(dg / i));
            rest = poly_divrem(z, &rest, &g).0;
        }
        i += 1;
    }
    if rest.len() > 1 {
        degrees.push(rest.len() - 1);
    }
    degrees
}

/// Rows `x^{ip} mod f` for `i < deg f`; `h^p mod f = sum h_i * row_i`.
fn frobenius_matrix(z: Zp, f: &PolyP) -> Vec<PolyP> {
    let n = f.len() - 1;
    let xp = powmod_x(z, z.modulus(), f);
    let mut rows = Vec::with_capacity(n);
    let mut cur: PolyP = vec![1];
    for _ in 0..n {
        rows.push(cur.clone());
        cur = poly_rem(z, &poly_mul(z, &cur, &xp), f);
    }
    rows
}

fn apply_frobenius(z: Zp, rows: &[PolyP], h: &PolyP, n: usize) -> PolyP {
    let mut out = vec![0u64; n];
    for (i, &hi) in h.iter().enumerate() {
        if hi == 0 {
            continue;
        }
        for (j, &r) in rows[i].iter().enumerate() {
            out[j] = z.add(out[j], z.mul(hi, r));
        }
    }
    trim(&mut out);
    out
}

/// `x^e mod f`.
fn powmod_x(z: Zp, mut e: u64, f: &PolyP) -> PolyP {
    let mut acc: PolyP = vec![1];
    let mut base = poly_rem(z, &vec![0, 1], f);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(z, &poly_mul(z, &acc, &base), f);
        }
        base = poly_rem(z, &poly_mul(z, &base, &base), f);
        e >>= 1;
    }
    acc
}

/// Symmetric residue of `v` modulo `m` as a BigInt in `(-m/2, m/2]`.
pub fn symmetric_mod(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if (&r << 1u32) > *m {
        r - m
    } else {
        r
    }
}

/// Convenience: is |v| small enough for an `i64`.
pub fn fits_i64(v: &BigInt) -> bool {
    v.abs() < BigInt::from(i64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = odd_primes().take(5).collect();
        assert_eq!(small, vec![3, 5, 7, 11, 13]);
        assert!(is_prime_u64(4611686018427387847));
        assert!(!is_prime_u64(4611686018427387849));
        for p in first_crt_primes(3) {
            assert!(p < 1 << 62 && is_prime_u64(p));
        }
    }

    #[test]
    fn crt_roundtrip() {
        let vals = [
            BigInt::from(-123456789012345678i64) * BigInt::from(1000000007u64),
            BigInt::from(42),
            BigInt::from(-1),
        ];
        let mut acc = CrtAccumulator::new(3);
        for p in first_crt_primes(3) {
            let z = Zp::new(p);
            let res: Vec<u64> = vals.iter().map(|v| z.from_bigint(v)).collect();
            acc.push(p, &res);
        }
        assert_eq!(acc.symmetric(), vals.to_vec());
    }

    #[test]
    fn ddf_patterns() {
        let z = Zp::new(7);
        // x^2 + 1 is irreducible mod 7
        assert_eq!(distinct_degree_pattern(z, &vec![1, 0, 1]), vec![2]);
        // (x-1)(x-2)(x^2+1) = x^4 - 3x^3 + 3x^2 - 3x + 2
        let f = vec![2, z.neg(3), 3, z.neg(3), 1];
        let mut d = distinct_degree_pattern(z, &f);
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
    }
}
