//! Intersection grids `X` reconstructed from the gluing pattern.
//!
//! Parallel copies are separate columns. The encircling curve alpha_0 meets
//! each copy of beta_0 twice and each handle's first beta-component twice;
//! inside a handle the separating alpha meets the first beta-component twice
//! and the nonseparating alpha meets every beta-component once.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{close_step, g1_matrix, inductive_copies, FamilySpec, InductiveStep};
use crate::error::{Error, Result};
use crate::matrices::{IntMatrix, IntersectionGrid};

type Rows = Vec<Vec<i64>>;

fn count(v: BigInt, what: &str) -> Result<usize> {
    v.to_usize()
        .ok_or_else(|| Error::Validation(format!("{what} does not fit in memory")))
}

/// `[[2, 0, ..., 0], [1, ..., 1]]`, the genus-one handle with `y` copies.
fn g1_rows(y: i64) -> Rows {
    let y = y as usize;
    let mut first = vec![0; y];
    first[0] = 2;
    vec![first, vec![1; y]]
}

fn g1_grid(y: i64) -> Result<Rows> {
    if y < 1 {
        return Err(Error::Validation(format!("y must be at least 1 (got {y})")));
    }
    Ok(g1_rows(y))
}

/// Places `rows` at column offset `at` in rows of width `width`.
fn shifted(rows: &Rows, at: usize, width: usize) -> Rows {
    rows.iter()
        .map(|r| {
            let mut out = vec![0; width];
            out[at..at + r.len()].copy_from_slice(r);
            out
        })
        .collect()
}

fn inductive_grid(inner: Rows, inner_gram: &IntMatrix, step: InductiveStep) -> Result<Rows> {
    let handle = g1_matrix(step.b);
    let copies = count(inductive_copies(inner_gram, &handle, step.y)?, "copy count")?;
    if copies == 0 {
        return Err(Error::Validation(format!(
            "inductive step at y = {} leaves no copies of beta_0",
            step.y
        )));
    }
    let c_in = inner[0].len();
    let b = step.b as usize;
    let width = copies + c_in + b;
    let mut alpha0 = vec![2; copies];
    alpha0.extend_from_slice(&inner[0]);
    alpha0.push(2);
    alpha0.extend(std::iter::repeat(0).take(b - 1));
    let mut rows = vec![alpha0];
    rows.extend(shifted(&inner, copies, width));
    rows.extend(shifted(&g1_rows(step.b), copies + c_in, width));
    Ok(rows)
}

fn closed_grid(inner: Rows, inner_gram: &IntMatrix, y: i64) -> Result<Rows> {
    close_step(inner_gram, y)?;
    let a = inner_gram.get(0, 0) / 4u32;
    let copies = count(BigInt::from(y) * BigInt::from(y) - a, "copy count")?;
    let width = copies + inner[0].len();
    let mut alpha0 = vec![1; copies];
    alpha0.extend(inner[0].iter().map(|v| v / 2));
    let mut rows = vec![alpha0];
    rows.extend(shifted(&inner, copies, width));
    Ok(rows)
}

fn kblock_grid(k: usize, ys: &[i64], y: i64, dropped: &[usize]) -> Result<Rows> {
    let copies = count(
        BigInt::from(y) * BigInt::from(y) - BigInt::from(k),
        "copy count",
    )?;
    let width = copies + ys.iter().map(|&v| v as usize).sum::<usize>();
    let mut alpha1 = vec![0; width];
    alpha1[..copies].fill(2);
    let mut rows = Vec::new();
    let mut at = copies;
    for (i, &yi) in ys.iter().enumerate() {
        let yi = yi as usize;
        alpha1[at] = 2;
        if !dropped.contains(&(i + 1)) {
            let mut sep = vec![0; width];
            sep[at] = 2;
            rows.push(sep);
        }
        let mut nonsep = vec![0; width];
        nonsep[at..at + yi].fill(1);
        rows.push(nonsep);
        at += yi;
    }
    rows.insert(0, alpha1);
    Ok(rows)
}

fn rows_of(spec: &FamilySpec) -> Result<Rows> {
    match spec {
        FamilySpec::G1Block { y } => g1_grid(*y),
        FamilySpec::ThurstonInductive { base_b, steps } => {
            let mut rows = g1_grid(*base_b)?;
            let mut gram = g1_matrix(*base_b);
            for s in steps {
                rows = inductive_grid(rows, &gram, *s)?;
                gram = super::inductive_step(&gram, &g1_matrix(s.b), s.y)?;
            }
            Ok(rows)
        }
        FamilySpec::MgNg { g, ys, y, closed } => {
            let tower = FamilySpec::ThurstonInductive {
                base_b: super::MG_BASE_B,
                steps: FamilySpec::mg_ys(*g, ys)
                    .into_iter()
                    .map(|y| InductiveStep { b: super::MG_STEP_B, y })
                    .collect(),
            };
            let rows = rows_of(&tower)?;
            if *closed {
                let yc = y.unwrap_or(*g as i64 + 1);
                closed_grid(rows, &tower.build_gram()?, yc)
            } else {
                Ok(rows)
            }
        }
        FamilySpec::ThurstonClosed { inner, y } | FamilySpec::KBlockClosed { inner, y } => {
            closed_grid(rows_of(inner)?, &inner.build_gram()?, *y)
        }
        FamilySpec::KBlock { k, ys, y, dropped } => kblock_grid(*k, ys, *y, dropped),
        other => Err(Error::Unsupported(format!(
            "grid not determined for {}",
            other.name()
        ))),
    }
}

/// The intersection grid `X` of a grid-bearing family, with
/// `gram(X) == build_gram(spec)`.
pub fn intersection_grid(spec: &FamilySpec) -> Result<IntersectionGrid> {
    if !spec.has_grid() {
        return Err(Error::Unsupported(format!(
            "grid not determined for {}",
            spec.name()
        )));
    }
    spec.validate()?;
    let rows = rows_of(spec)?;
    IntersectionGrid::new(IntMatrix::from_rows(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::gram;

    #[test]
    fn g1_grid_shape() {
        let x = intersection_grid(&FamilySpec::G1Block { y: 5 }).unwrap();
        assert_eq!((x.rows(), x.cols()), (2, 5));
        assert_eq!(gram(&x), IntMatrix::from_i64_rows(&[&[4, 2], &[2, 5]]));
    }

    #[test]
    fn kblock_single_handle() {
        let (y1, y) = (12, 4);
        let x = intersection_grid(&FamilySpec::KBlock { k: 1, ys: vec![y1], y, dropped: vec![] })
            .unwrap();
        assert_eq!((x.rows(), x.cols()), (3, (y * y - 1 + y1) as usize));
        assert_eq!(
            gram(&x),
            IntMatrix::from_i64_rows(&[&[4 * y * y, 4, 2], &[4, 4, 2], &[2, 2, y1]])
        );
    }

    #[test]
    fn grids_reproduce_grams() {
        let kb = FamilySpec::KBlock { k: 3, ys: vec![12, 13, 14], y: 3, dropped: vec![2] };
        let specs = [
            FamilySpec::mg(2),
            FamilySpec::mg(4),
            FamilySpec::ng(3),
            kb.clone(),
            FamilySpec::KBlockClosed { inner: Box::new(kb), y: 6 },
            FamilySpec::ThurstonClosed { inner: Box::new(FamilySpec::G1Block { y: 12 }), y: 2 },
        ];
        for s in specs {
            let x = intersection_grid(&s).unwrap();
            assert_eq!(gram(&x), s.build_gram().unwrap(), "{s:?}");
        }
    }

    #[test]
    fn torelli_has_no_grid() {
        let e = intersection_grid(&FamilySpec::TorelliG2Block { y: 2 }).unwrap_err();
        assert!(e.to_string().contains("grid not determined"), "{e}");
    }
}
