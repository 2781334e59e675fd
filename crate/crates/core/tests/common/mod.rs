//! Independent oracles for the integration suites. Nothing here calls the
//! crate's own algorithms: characteristic polynomials come from
//! Faddeev–LeVerrier, determinants from Bareiss elimination, resultants from
//! the Sylvester matrix, eigenvalue sign counts from a rational Sturm chain,
//! and irreducibility from an exhaustive Mignotte-bounded factor search.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pa_degree_forge::{IntMatrix, IntPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = rng.gen_range(lo..=hi);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    IntMatrix::from_rows(&rows).unwrap()
}

fn rows_of(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// det(tI - A) by Faddeev–LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k) / k,
/// M_{k+1} = A M_k + c_{n-k} I. Every division is exact over Z.
pub fn faddeev_leverrier(m: &IntMatrix) -> IntPoly {
    let a = rows_of(m);
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am = mat_mul(&a, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (c, r) = (-trace).div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    IntPoly::new(coeffs)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Res(p, q) as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let m = p.degree().expect("nonzero p");
    let n = q.degree().expect("nonzero q");
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    // rows 0..n: shifted copies of p (descending coefficients)
    for r in 0..n {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            rows[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            rows[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(rows)
}

// ---------------------------------------------------------------------------
// Rational polynomials and Sturm chains for eigenvalue sign counting.

type QPoly = Vec<BigRational>;

fn qtrim(mut p: QPoly) -> QPoly {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    p
}

fn qfrom(p: &IntPoly) -> QPoly {
    qtrim(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

fn qderiv(p: &QPoly) -> QPoly {
    qtrim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

fn qrem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / &lead;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        r.pop();
        r = qtrim(r);
    }
    r
}

fn qgcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = qrem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn qsign_at(p: &QPoly, x: &BigRational) -> i32 {
    let v = p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c);
    sign(&v)
}

fn sign(v: &BigRational) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn qsign_inf(p: &QPoly, positive: bool) -> i32 {
    let s = sign(p.last().unwrap());
    if positive || (p.len() - 1) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Distinct roots of `p` (with `p(0) != 0`) in (0, inf) and (-inf, 0).
fn sturm_split(p: &QPoly) -> (usize, usize) {
    if p.len() <= 1 {
        return (0, 0);
    }
    let mut seq = vec![p.clone(), qderiv(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r = qrem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let var = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let zero = BigRational::zero();
    let v0 = var(seq.iter().map(|q| qsign_at(q, &zero)).collect());
    let vp = var(seq.iter().map(|q| qsign_inf(q, true)).collect());
    let vn = var(seq.iter().map(|q| qsign_inf(q, false)).collect());
    (v0 - vp, vn - v0)
}

/// (positive, negative, zero) eigenvalue counts with multiplicity of a
/// symmetric matrix, from Sturm chains of det(tI - S) and its repeated gcds
/// with derivatives: roots of g_k = gcd(g_(k-1), g_(k-1)') are the roots of
/// multiplicity > k, so summing distinct counts over the chain gives counts
/// with multiplicity.
pub fn eigen_sign_counts(s: &IntMatrix) -> (usize, usize, usize) {
    let chi = faddeev_leverrier(s);
    let mut p = qfrom(&chi);
    let zero_mult = p.iter().take_while(|c| c.is_zero()).count();
    p.drain(..zero_mult);
    let (mut pos, mut neg) = (0, 0);
    while p.len() > 1 {
        let (a, b) = sturm_split(&p);
        pos += a;
        neg += b;
        p = qgcd(&p, &qderiv(&p));
    }
    (pos, neg, zero_mult)
}

// ---------------------------------------------------------------------------
// Exhaustive factor search.

fn i128_coeffs(p: &IntPoly) -> Vec<i128> {
    p.coeffs().iter().map(|c| c.to_i128().expect("oracle inputs are small")).collect()
}

fn eval_i128(p: &[i128], x: i128) -> i128 {
    p.iter().rev().fold(0, |acc, c| acc * x + c)
}

/// Exact division of `a` by monic `b` over Z, if it leaves no remainder.
fn divides_monic(a: &[i128], b: &[i128]) -> bool {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let f = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= f * c;
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out.iter().flat_map(|&d| [d, -d]).collect()
}

fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Mignotte bound |b_j| <= C(k, j) * ceil(||p||_2) on the coefficients of a
/// monic degree-k factor of monic `p`.
pub fn mignotte_bounds(p: &IntPoly, k: usize) -> Vec<i128> {
    let norm2: i128 = i128_coeffs(p).iter().map(|c| c * c).sum();
    let mut root = (norm2 as f64).sqrt() as i128;
    while root * root < norm2 {
        root += 1;
    }
    (0..=k).map(|j| binomial(k, j) * root).collect()
}

/// A nontrivial monic factor of the monic polynomial `p` (degree <= 6), by
/// enumerating every candidate allowed by the Mignotte bound.
pub fn exhaustive_factor(p: &IntPoly) -> Option<IntPoly> {
    let n = p.degree().expect("nonzero");
    assert!(n <= 6 && p.is_monic(), "oracle handles monic inputs of degree <= 6");
    let a = i128_coeffs(p);
    if n == 1 {
        return None;
    }
    if a[0] == 0 {
        return Some(IntPoly::from_i64s(&[0, 1]));
    }
    let probes: Vec<(i128, i128)> = [1i128, -1, 2, -2, 3].iter().map(|&x| (x, eval_i128(&a, x))).collect();
    for k in 1..=n / 2 {
        let bounds = mignotte_bounds(p, k);
        for b0 in divisors(a[0]) {
            if b0.abs() > bounds[0] {
                continue;
            }
            let mut cand = vec![0i128; k + 1];
            cand[0] = b0;
            cand[k] = 1;
            if let Some(f) = search(&a, &mut cand, 1, k, &bounds, &probes) {
                return Some(f);
            }
        }
    }
    None
}

fn search(
    a: &[i128],
    cand: &mut Vec<i128>,
    j: usize,
    k: usize,
    bounds: &[i128],
    probes: &[(i128, i128)],
) -> Option<IntPoly> {
    if j == k {
        // f(x) divides p(x) for every integer x
        let ok = probes.iter().all(|&(x, px)| {
            let fx = eval_i128(cand, x);
            if fx == 0 {
                px == 0
            } else {
                px % fx == 0
            }
        });
        if ok && divides_monic(a, cand) {
            let c: Vec<i64> = cand.iter().map(|&c| c as i64).collect();
            return Some(IntPoly::from_i64s(&c));
        }
        return None;
    }
    for v in -bounds[j]..=bounds[j] {
        cand[j] = v;
        if let Some(f) = search(a, cand, j + 1, k, bounds, probes) {
            return Some(f);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Closed forms.

/// (t - 64 y^2) prod (t - z_i) - sum 64 z_i^2 prod_(j != i) (t - z_j), the
/// characteristic polynomial of the small-degree arrow matrix, expanded
/// directly from the product form.
pub fn small_degree_closed_form(y: i64, z: &[i64]) -> IntPoly {
    let lin = |c: i64| IntPoly::from_i64s(&[-c, 1]);
    let prod = |skip: Option<usize>| {
        z.iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .fold(IntPoly::one(), |acc, (_, &zi)| &acc * &lin(zi))
    };
    let y2 = bi(y) * bi(y) * bi(64);
    let head = &IntPoly::new(vec![-y2, BigInt::one()]) * &prod(None);
    z.iter().enumerate().fold(head, |acc, (i, &zi)| {
        let term = prod(Some(i)).scale(&(bi(64) * bi(zi) * bi(zi)));
        &acc - &term
    })
}

/// Integer square root test, independent of the crate's.
pub fn is_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &r * &r == *v
}
