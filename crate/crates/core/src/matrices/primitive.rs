//! Irreducibility and primitivity of nonnegative matrices from their
//! zero/nonzero pattern, using boolean matrix powers on bit rows.

use num_traits::Zero;

use super::IntMatrix;
use crate::error::Result;

/// Square boolean matrix with rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
struct BoolMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    fn from_pattern(m: &IntMatrix, add_identity: bool) -> Self {
        let n = m.rows();
        let words = n.div_ceil(64).max(1);
        let mut b = BoolMatrix {
            n,
            words,
            bits: vec![0; n * words],
        };
        for i in 0..n {
            for j in 0..n {
                if !m.get(i, j).is_zero() || (add_identity && i == j) {
                    b.bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        b
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        let mut out = BoolMatrix {
            n: self.n,
            words: self.words,
            bits: vec![0; self.bits.len()],
        };
        for i in 0..self.n {
            let dst = i * self.words;
            for k in 0..self.n {
                if self.get(i, k) {
                    for w in 0..self.words {
                        out.bits[dst + w] |= other.bits[k * self.words + w];
                    }
                }
            }
        }
        out
    }

    fn all_set(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j)))
    }

    fn pow(&self, mut e: u64) -> BoolMatrix {
        let mut base = self.clone();
        let mut acc: Option<BoolMatrix> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("positive exponent")
    }
}

/// True iff the nonnegative square matrix is irreducible, i.e.
/// `(I + M)^(n-1)` has no zero entry.
pub fn is_irreducible_nonnegative(m: &IntMatrix) -> Result<bool> {
    let n = m.dim()?;
    m.require_nonnegative()?;
    if n <= 1 {
        return Ok(n == 1);
    }
    let b = BoolMatrix::from_pattern(m, true);
    // I + M has a positive diagonal, so its powers only gain entries and
    // squaring past n - 1 is harmless.
    let mut p = b;
    let mut reach = 1usize;
    while reach < n - 1 {
        p = p.mul(&p);
        reach *= 2;
    }
    Ok(p.all_set())
}

/// True iff the nonnegative square matrix is irreducible and primitive:
/// `M^((n-1)^2 + 1)` has no zero entry (Wielandt's bound).
pub fn is_primitive(m: &IntMatrix) -> Result<bool> {
    let n = m.dim()?;
    m.require_nonnegative()?;
    if !is_irreducible_nonnegative(m)? {
        return Ok(false);
    }
    let exponent = ((n - 1) * (n - 1) + 1) as u64;
    Ok(BoolMatrix::from_pattern(m, false).pow(exponent).all_set())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn examples() {
        let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(!is_primitive(&swap).unwrap());
        assert!(is_irreducible_nonnegative(&swap).unwrap());
        let fib = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        assert!(is_primitive(&fib).unwrap());
        let g1 = IntMatrix::from_i64_rows(&[&[4, 2], &[2, 12]]);
        assert!(is_primitive(&g1).unwrap());
    }

    #[test]
    fn reducible_pattern() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(!is_irreducible_nonnegative(&m).unwrap());
        assert!(!is_primitive(&m).unwrap());
    }

    #[test]
    fn wielandt_extremal_matrix_is_primitive() {
        // the cycle 0->1->...->n-1->0 plus the chord n-1 -> 1 attains the
        // exponent (n-1)^2 + 1 exactly
        let n = 70;
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, (i + 1) % n, 1.into());
        }
        m.set(n - 1, 1, 1.into());
        assert!(is_primitive(&m).unwrap());
        let b = BoolMatrix::from_pattern(&m, false);
        let e = ((n - 1) * (n - 1)) as u64;
        assert!(!b.pow(e).all_set());
    }

    #[test]
    fn negative_rejected() {
        let m = IntMatrix::from_i64_rows(&[&[1, -1], &[1, 1]]);
        assert_eq!(is_primitive(&m), Err(Error::NegativeEntry { row: 0, col: 1 }));
    }
}
