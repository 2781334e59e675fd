//! Dense integer matrices: Gram construction, bipartite doubles, principal
//! submatrices, and the exact kernels (characteristic polynomial, signature,
//! primitivity).

mod charpoly;
mod primitive;
mod signature;

pub use charpoly::{char_poly, char_poly_mod, char_poly_with, coefficient_bound, crt_prime_count};
pub use primitive::{is_irreducible_nonnegative, is_primitive};
pub use signature::{signature_nullity, SignatureReport};

pub use crate::polynomials::resultant;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::serde_big::vec")]
    entries: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::serde_big::vec")]
    entries: Vec<BigInt>,
}

impl TryFrom<RawMatrix> for IntMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self> {
        IntMatrix::new(raw.rows, raw.cols, raw.entries)
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch {
                    rows: r,
                    cols: c,
                    len: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix::new(r, c, entries)
    }

    /// Convenience constructor for literal matrices; panics on ragged rows.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&owned).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> Result<usize> {
        self.require_square()?;
        Ok(self.rows)
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub(crate) fn require_symmetric(&self) -> Result<()> {
        self.require_square()?;
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::NotSymmetric)
        }
    }

    pub(crate) fn require_nonnegative(&self) -> Result<()> {
        match self.first_negative() {
            Some((row, col)) => Err(Error::NegativeEntry { row, col }),
            None => Ok(()),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn first_negative(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|v| v.is_negative())
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self + c * I` for a square matrix.
    pub fn add_identity(&self, c: &BigInt) -> Result<IntMatrix> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            out.entries[i * self.cols + i] += c;
        }
        Ok(out)
    }

    /// Principal submatrix on the given (sorted, distinct) indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<IntMatrix> {
        self.require_square()?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.rows,
            });
        }
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix::new(k, k, entries)
    }

    /// Matrix text format: a "rows cols" line followed by one line of
    /// space-separated decimal integers per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<IntMatrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing \"rows cols\" header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad dimension {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse("header must be \"rows cols\"".into()));
        };
        let mut entries = Vec::with_capacity(rows * cols);
        let mut seen_rows = 0;
        for line in lines {
            let row: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    seen_rows + 1,
                    row.len()
                )));
            }
            entries.extend(row);
            seen_rows += 1;
        }
        if seen_rows != rows {
            return Err(Error::Parse(format!(
                "expected {rows} rows, found {seen_rows}"
            )));
        }
        IntMatrix::new(rows, cols, entries)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Intersection numbers between the components of two multicurves: row i is
/// alpha_i, column j is beta_j, parallel copies are separate columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct IntersectionGrid {
    grid: IntMatrix,
}

impl IntersectionGrid {
    pub fn new(grid: IntMatrix) -> Result<Self> {
        grid.require_nonnegative()?;
        if grid.rows == 0 || grid.cols == 0 {
            return Err(Error::InvalidArgument("intersection grid is empty".into()));
        }
        if let Some(i) = (0..grid.rows).find(|&i| grid.row(i).iter().all(Zero::is_zero)) {
            return Err(Error::DisjointComponent(format!("row {i}")));
        }
        if let Some(j) = (0..grid.cols).find(|&j| (0..grid.rows).all(|i| grid.get(i, j).is_zero()))
        {
            return Err(Error::DisjointComponent(format!("column {j}")));
        }
        Ok(IntersectionGrid { grid })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        IntersectionGrid::new(IntMatrix::from_i64_rows(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.grid
    }

    pub fn rows(&self) -> usize {
        self.grid.rows
    }

    pub fn cols(&self) -> usize {
        self.grid.cols
    }
}

impl TryFrom<IntMatrix> for IntersectionGrid {
    type Error = Error;
    fn try_from(m: IntMatrix) -> Result<Self> {
        IntersectionGrid::new(m)
    }
}

impl From<IntersectionGrid> for IntMatrix {
    fn from(g: IntersectionGrid) -> IntMatrix {
        g.grid
    }
}

/// `X X^T`.
pub fn gram(x: &IntersectionGrid) -> IntMatrix {
    let m = &x.grid;
    let n = m.rows;
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v: BigInt = m
                .row(i)
                .iter()
                .zip(m.row(j))
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum();
            out.set(j, i, v.clone());
            out.set(i, j, v);
        }
    }
    out
}

/// `Omega = [[0, X], [X^T, 0]]`, the adjacency matrix of the bipartite
/// intersection graph.
pub fn bipartite_double(x: &IntersectionGrid) -> IntMatrix {
    let (n, m) = (x.rows(), x.cols());
    let mut out = IntMatrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..m {
            let v = x.grid.get(i, j);
            if !v.is_zero() {
                out.set(i, n + j, v.clone());
                out.set(n + j, i, v.clone());
            }
        }
    }
    out
}

/// Deletes row and column `i` of a square matrix.
pub fn delete_index(m: &IntMatrix, i: usize) -> Result<IntMatrix> {
    let n = m.dim()?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
    m.principal_submatrix(&keep)
}
