//! Dense univariate polynomials over the integers and the algebra built on
//! them: gcds and resultants, Sturm root counting, irreducibility
//! certification, and the reciprocal/trace transforms.

mod gcd;
mod irreducible;
mod sturm;
mod transform;

pub use gcd::{gcd, is_squarefree, resultant, squarefree_part, yun_decomposition};
pub use irreducible::{
    certify_irreducible, certify_irreducible_with, find_rational_root, IrreducibilityVerdict,
    recheck_patterns, PrimePattern, DEFAULT_PRIME_BUDGET,
};
pub use sturm::{count_real_roots, has_root_above, sturm_count, sturm_count_above, sturm_sequence, Endpoint};
pub use transform::{
    inverse_trace_transform, is_perfect_square, is_reciprocal, substitute_power, trace_transform,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial with coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `t - c`.
    pub fn linear_root(c: BigInt) -> Self {
        Self::new(vec![-c, BigInt::one()])
    }

    /// `(t - c)^k`.
    pub fn linear_power(c: &BigInt, k: usize) -> Self {
        let base = Self::linear_root(c.clone());
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, rejecting the zero polynomial.
    pub fn checked_degree(&self) -> Result<usize> {
        self.degree().ok_or(Error::ZeroPolynomial)
    }

    /// Degree, rejecting zero and constant polynomials.
    pub fn nonconstant_degree(&self) -> Result<usize> {
        match self.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::ConstantPolynomial),
            Some(d) => Ok(d),
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Divides every coefficient by `d`; `d` must divide each exactly.
    pub fn div_scalar_exact(&self, d: &BigInt) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of `self(x)` for rational `x`, computed without fractions.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        // den > 0 for normalized BigRational; sum c_i num^i den^(n-i)
        let n = match self.degree() {
            None => return 0,
            Some(n) => n,
        };
        let num = x.numer();
        let den = x.denom();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner on the homogenized form: acc = acc * num + c_i * den^(n-i)
        let mut den_powers = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            den_powers.push(den_pow.clone());
            den_pow *= den;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * num + c * &den_powers[n - i];
        }
        sign_of(&acc)
    }

    /// Sign of the leading coefficient times `(+1)^n` or `(-1)^n`: the sign
    /// at `+inf` (`positive = true`) or `-inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        match (self.leading(), self.degree()) {
            (None, _) => 0,
            (Some(l), Some(n)) => {
                let s = sign_of(l);
                if positive || n % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => unreachable!(),
        }
    }

    /// `self(-t)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Coefficient list reversed: `t^n * self(1/t)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// `self(a*t + b)`.
    pub fn compose_affine(&self, a: &BigInt, b: &BigInt) -> IntPoly {
        let lin = IntPoly::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| {
            &(&acc * &lin) + &IntPoly::constant(c.clone())
        })
    }

    /// Euclidean division by a divisor whose leading coefficient divides
    /// every intermediate leading term. Returns `None` when some step would
    /// leave the integers.
    pub fn div_rem(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let db = divisor.degree()?;
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for shift in (0..rem.len() - db).rev() {
            let top = &rem[shift + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * b;
            }
            quot[shift] = q;
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Whether `divisor` divides `self` over Q (content-insensitive).
    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        if divisor.is_zero() {
            return false;
        }
        let (_, r) = pseudo_div_rem(self, divisor);
        r.is_zero()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Space-separated ascending coefficients.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses space-separated ascending coefficients.
    pub fn from_text(s: &str) -> Result<IntPoly> {
        let coeffs = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(IntPoly::new(coeffs))
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Pseudo-division: `lc(b)^(deg a - deg b + 1) * a = q*b + r`.
pub fn pseudo_div_rem(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly) {
    let db = b.degree().expect("pseudo-division by zero polynomial");
    let da = match a.degree() {
        None => return (IntPoly::zero(), IntPoly::zero()),
        Some(d) => d,
    };
    if da < db {
        return (IntPoly::zero(), a.clone());
    }
    let lead = b.leading().unwrap().clone();
    let mut rem = a.coeffs.clone();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for shift in (0..=da - db).rev() {
        let top = rem[shift + db].clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        for q in quot.iter_mut() {
            *q *= &lead;
        }
        if !top.is_zero() {
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[shift + j] -= &top * bj;
            }
            quot[shift] += &top;
        }
    }
    (IntPoly::new(quot), IntPoly::new(rem))
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs: Vec<crate::serde_big::BigIntRepr> = Vec::deserialize(d)?;
        Ok(IntPoly::new(strs.into_iter().map(|r| r.0).collect()))
    }
}
