//! The multicurve families as exact Gram-matrix constructors.
//!
//! Every family is transcribed at the matrix level: a [`FamilySpec`] names a
//! variant with its integer parameters, [`FamilySpec::build_gram`] produces
//! the specialized `X X^T`, [`build_bordered`] exposes the bordered form
//! `core + c y^p E_11` used by the irreducibility lemmas, and
//! [`intersection_grid`] reconstructs `X` itself where the figures force it.

mod bordered;
mod grid;
mod search;

pub use bordered::{build_bordered, BorderedGram};
pub use grid::intersection_grid;
pub use search::{hilbert_search, hilbert_search_with, HilbertOutcome, Specialize};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::{delete_index, IntMatrix};

/// One inductive step of the genus tower: glue a genus-one handle with
/// `b - 1` parallel copies (gram `[[4, 2], [2, b]]`) and add the encircling
/// curve with border parameter `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductiveStep {
    pub b: i64,
    pub y: i64,
}

/// One step of the Torelli tower: glue the genus-one block `C_{block_y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    pub block_y: i64,
    pub y: i64,
}

/// A family of multicurve pairs with its integer parameters.
///
/// JSON form: `{"variant": "KBlock", "params": {"k": 2, ...}}`. Handle
/// indices in `dropped` are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum FamilySpec {
    /// Genus one, two boundary components: `[[4, 2], [2, y]]`.
    G1Block { y: i64 },
    /// Inductive tower starting from `G1Block(base_b)`.
    ThurstonInductive {
        base_b: i64,
        #[serde(default)]
        steps: Vec<InductiveStep>,
    },
    /// Closing a two-boundary example by gluing its boundary components.
    ThurstonClosed { inner: Box<FamilySpec>, y: i64 },
    /// Genus two, one boundary component (4x4 Torelli display).
    TorelliG2Block { y: i64 },
    /// Torelli genus-one block `C_y = [[16y + 4, 8y], [8y, 4y]]`.
    TorelliG1Block { y: i64 },
    /// Torelli tower of genus `g` over `TorelliG2Block(base_y)`.
    TorelliTower {
        g: usize,
        base_y: i64,
        #[serde(default)]
        steps: Vec<TowerStep>,
    },
    /// The closed genus-three Torelli example, optionally with alpha_1 and
    /// alpha_3 dropped.
    Genus3Closed {
        #[serde(default)]
        drop_alpha1: bool,
        #[serde(default)]
        drop_alpha3: bool,
    },
    /// `TorelliG2Block(y)` with alpha_3 dropped.
    Block1 { y: i64 },
    /// A pair of separating filling curves: 1x1 gram `[entry]`.
    Block2 { entry: i64 },
    /// Torelli k-handle block over `C_{y_i}`.
    Block3 {
        k: usize,
        ys: Vec<i64>,
        y: i64,
        #[serde(default)]
        dropped: Vec<usize>,
    },
    /// k-handle block over `B_{y_i} = [[4, 2], [2, y_i]]`.
    KBlock {
        k: usize,
        ys: Vec<i64>,
        y: i64,
        #[serde(default)]
        dropped: Vec<usize>,
    },
    /// A closed-up k-block.
    KBlockClosed { inner: Box<FamilySpec>, y: i64 },
    /// Small-degree Torelli family with gram `[[64y^2, 8z], [8z, diag z]]`.
    SmallDegree { g: usize, f: usize, z: Vec<i64>, y: i64 },
    /// The explicit matrices `M_g` (and `N_g` when `closed`), by default with
    /// `y^(i) = i + 1` and closing parameter `g + 1`.
    MgNg {
        g: usize,
        #[serde(default)]
        ys: Option<Vec<i64>>,
        #[serde(default)]
        y: Option<i64>,
        #[serde(default)]
        closed: bool,
    },
}

/// Base handle of the `M_g` tower.
pub const MG_BASE_B: i64 = 13;
/// Handle glued at every step of the `M_g` tower.
pub const MG_STEP_B: i64 = 12;

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}

pub(crate) fn g1_matrix(y: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[4, 2], &[2, y]])
}

pub(crate) fn torelli_c(y: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[16 * y + 4, 8 * y], &[8 * y, 4 * y]])
}

pub(crate) fn torelli_g2(y: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        &[84 + 16 * y, 40 + 8 * y, 40, 16],
        &[40 + 8 * y, 20 + 4 * y, 20, 8],
        &[40, 20, 20, 8],
        &[16, 8, 8, 4],
    ])
}

/// The genus-three display, ordered alpha_6, alpha_5, alpha_1, alpha_2,
/// alpha_3, alpha_4.
pub(crate) fn genus3_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        &[500, 248, 232, 112, 80, 32],
        &[248, 124, 116, 56, 40, 16],
        &[232, 116, 116, 56, 40, 16],
        &[112, 56, 56, 28, 20, 8],
        &[80, 40, 40, 20, 20, 8],
        &[32, 16, 16, 8, 8, 4],
    ])
}

/// Row/column of alpha_1 and alpha_3 in [`genus3_matrix`].
const GENUS3_ALPHA1: usize = 2;
const GENUS3_ALPHA3: usize = 4;

/// `top_left / 4` for a block whose encircling curve is separating.
fn quarter_top_left(m: &IntMatrix, what: &str) -> Result<BigInt> {
    let a1 = m.get(0, 0);
    if (a1 % 4u32) != BigInt::zero() {
        return invalid(format!("{what}: top-left entry {a1} is not divisible by 4"));
    }
    Ok(a1 / 4u32)
}

/// Number of parallel copies of the new curve beta_0 in an inductive step:
/// `y^2 - a_inner - a_handle` where `a = top_left / 4`.
pub(crate) fn inductive_copies(inner: &IntMatrix, handle: &IntMatrix, y: i64) -> Result<BigInt> {
    let a = quarter_top_left(inner, "inner block")?;
    let h = quarter_top_left(handle, "glued handle")?;
    Ok(bi(y) * bi(y) - a - h)
}

/// `[[4y^2, r_inner, r_handle], [r_inner^T, inner, 0], [r_handle^T, 0, handle]]`
/// where `r` is the first row of each block.
pub(crate) fn inductive_step(inner: &IntMatrix, handle: &IntMatrix, y: i64) -> Result<IntMatrix> {
    let copies = inductive_copies(inner, handle, y)?;
    if copies < BigInt::from(1) {
        return invalid(format!(
            "inductive step needs y^2 - a_inner - a_handle >= 1 (got {copies} copies of beta_0 at y = {y})"
        ));
    }
    let top = bi(4) * bi(y) * bi(y);
    Ok(bordered_matrix(top, &[(inner, BorderScale::Same), (handle, BorderScale::Same)]))
}

/// Closing step: `[[y^2, r/2], [r^T/2, inner]]` with `y^2 - a >= 1` copies
/// of the new curve.
pub(crate) fn close_step(inner: &IntMatrix, y: i64) -> Result<IntMatrix> {
    let a = quarter_top_left(inner, "closed-up block")?;
    let copies = bi(y) * bi(y) - &a;
    if copies < BigInt::from(1) {
        return invalid(format!(
            "closing needs y^2 - a >= 1 with a = {a} (got y = {y})"
        ));
    }
    if inner.row(0).iter().any(|v| (v % 2u32) != BigInt::zero()) {
        return invalid("closing needs an even first row in the inner block");
    }
    Ok(bordered_matrix(bi(y) * bi(y), &[(inner, BorderScale::Half)]))
}

#[derive(Clone, Copy)]
pub(crate) enum BorderScale {
    Same,
    Half,
}

/// Top-left entry `top`, then block-diagonal `blocks` whose border is the
/// (scaled) first row of each block.
pub(crate) fn bordered_matrix(top: BigInt, blocks: &[(&IntMatrix, BorderScale)]) -> IntMatrix {
    let n = 1 + blocks.iter().map(|(b, _)| b.rows()).sum::<usize>();
    let mut m = IntMatrix::zeros(n, n);
    m.set(0, 0, top);
    let mut off = 1;
    for (b, scale) in blocks {
        let k = b.rows();
        for j in 0..k {
            let v = match scale {
                BorderScale::Same => b.get(0, j).clone(),
                BorderScale::Half => b.get(0, j) / 2u32,
            };
            m.set(0, off + j, v.clone());
            m.set(off + j, 0, v);
            for i in 0..k {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += k;
    }
    m
}

/// Border entries and block for one handle of a k-block: `(border, block)`.
pub(crate) type Handle = (Vec<BigInt>, IntMatrix);

fn assemble(top: BigInt, handles: &[Handle]) -> IntMatrix {
    let n = 1 + handles.iter().map(|(_, b)| b.rows()).sum::<usize>();
    let mut m = IntMatrix::zeros(n, n);
    m.set(0, 0, top);
    let mut off = 1;
    for (border, b) in handles {
        let k = b.rows();
        for j in 0..k {
            m.set(0, off + j, border[j].clone());
            m.set(off + j, 0, border[j].clone());
            for i in 0..k {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += k;
    }
    m
}

fn check_dropped(k: usize, dropped: &[usize]) -> Result<()> {
    let mut seen = vec![false; k + 1];
    for &h in dropped {
        if h == 0 || h > k {
            return invalid(format!("dropped handle {h} out of range 1..={k}"));
        }
        if seen[h] {
            return invalid(format!("handle {h} dropped twice"));
        }
        seen[h] = true;
    }
    Ok(())
}

fn positive(name: &str, v: i64) -> Result<()> {
    if v < 1 {
        return invalid(format!("{name} must be at least 1 (got {v})"));
    }
    Ok(())
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::G1Block { .. } => "G1Block",
            FamilySpec::ThurstonInductive { .. } => "ThurstonInductive",
            FamilySpec::ThurstonClosed { .. } => "ThurstonClosed",
            FamilySpec::TorelliG2Block { .. } => "TorelliG2Block",
            FamilySpec::TorelliG1Block { .. } => "TorelliG1Block",
            FamilySpec::TorelliTower { .. } => "TorelliTower",
            FamilySpec::Genus3Closed { .. } => "Genus3Closed",
            FamilySpec::Block1 { .. } => "Block1",
            FamilySpec::Block2 { .. } => "Block2",
            FamilySpec::Block3 { .. } => "Block3",
            FamilySpec::KBlock { .. } => "KBlock",
            FamilySpec::KBlockClosed { .. } => "KBlockClosed",
            FamilySpec::SmallDegree { .. } => "SmallDegree",
            FamilySpec::MgNg { .. } => "MgNg",
        }
    }

    /// `M_g` (or `N_g`) with the default parameters `y^(i) = i + 1`, `y = g + 1`.
    pub fn mg(g: usize) -> FamilySpec {
        FamilySpec::MgNg {
            g,
            ys: None,
            y: None,
            closed: false,
        }
    }

    pub fn ng(g: usize) -> FamilySpec {
        FamilySpec::MgNg {
            g,
            ys: None,
            y: None,
            closed: true,
        }
    }

    /// The `M_g` tower parameters `y^(1), ..., y^(g-1)`.
    pub fn mg_ys(g: usize, ys: &Option<Vec<i64>>) -> Vec<i64> {
        ys.clone()
            .unwrap_or_else(|| (1..g).map(|i| i as i64 + 1).collect())
    }

    /// The equivalent inductive tower of an open `MgNg` spec.
    fn mg_tower(g: usize, ys: &Option<Vec<i64>>) -> FamilySpec {
        FamilySpec::ThurstonInductive {
            base_b: MG_BASE_B,
            steps: FamilySpec::mg_ys(g, ys)
                .into_iter()
                .map(|y| InductiveStep { b: MG_STEP_B, y })
                .collect(),
        }
    }

    /// Checks every parameter constraint; the error names the violated one.
    pub fn validate(&self) -> Result<()> {
        self.build_gram().map(|_| ())
    }

    /// The fully specialized Gram matrix `X X^T`.
    pub fn build_gram(&self) -> Result<IntMatrix> {
        match self {
            FamilySpec::G1Block { y } => {
                positive("y", *y)?;
                Ok(g1_matrix(*y))
            }
            FamilySpec::ThurstonInductive { base_b, steps } => {
                positive("base_b", *base_b)?;
                let mut m = g1_matrix(*base_b);
                for (i, s) in steps.iter().enumerate() {
                    positive(&format!("steps[{i}].b"), s.b)?;
                    m = inductive_step(&m, &g1_matrix(s.b), s.y).map_err(|e| {
                        Error::Validation(format!("step {}: {}", i + 1, strip(&e)))
                    })?;
                }
                Ok(m)
            }
            FamilySpec::ThurstonClosed { inner, y } => {
                match inner.as_ref() {
                    FamilySpec::G1Block { .. }
                    | FamilySpec::ThurstonInductive { .. }
                    | FamilySpec::MgNg { closed: false, .. } => {}
                    other => {
                        return invalid(format!(
                            "ThurstonClosed needs a two-boundary inner family, got {}",
                            other.name()
                        ))
                    }
                }
                close_step(&inner.build_gram()?, *y)
            }
            FamilySpec::TorelliG2Block { y } => {
                positive("y", *y)?;
                Ok(torelli_g2(*y))
            }
            FamilySpec::TorelliG1Block { y } => {
                positive("y", *y)?;
                Ok(torelli_c(*y))
            }
            FamilySpec::TorelliTower { g, base_y, steps } => {
                if *g != steps.len() + 2 {
                    return invalid(format!(
                        "TorelliTower of genus {g} needs {} steps, got {}",
                        g.saturating_sub(2),
                        steps.len()
                    ));
                }
                positive("base_y", *base_y)?;
                let mut m = torelli_g2(*base_y);
                for (i, s) in steps.iter().enumerate() {
                    positive(&format!("steps[{i}].block_y"), s.block_y)?;
                    m = inductive_step(&m, &torelli_c(s.block_y), s.y).map_err(|e| {
                        Error::Validation(format!("step {}: {}", i + 1, strip(&e)))
                    })?;
                }
                Ok(m)
            }
            FamilySpec::Genus3Closed {
                drop_alpha1,
                drop_alpha3,
            } => {
                let keep: Vec<usize> = (0..6)
                    .filter(|&i| {
                        !(*drop_alpha1 && i == GENUS3_ALPHA1 || *drop_alpha3 && i == GENUS3_ALPHA3)
                    })
                    .collect();
                genus3_matrix().principal_submatrix(&keep)
            }
            FamilySpec::Block1 { y } => {
                positive("y", *y)?;
                delete_index(&torelli_g2(*y), 2)
            }
            FamilySpec::Block2 { entry } => {
                positive("entry", *entry)?;
                Ok(IntMatrix::from_i64_rows(&[&[*entry]]))
            }
            FamilySpec::Block3 { k, ys, y, dropped } => {
                let handles = block3_handles(*k, ys, *y, dropped)?;
                Ok(assemble(bi(4) * bi(*y) * bi(*y), &handles))
            }
            FamilySpec::KBlock { k, ys, y, dropped } => {
                let handles = kblock_handles(*k, ys, *y, dropped)?;
                Ok(assemble(bi(4) * bi(*y) * bi(*y), &handles))
            }
            FamilySpec::KBlockClosed { inner, y } => {
                if !matches!(inner.as_ref(), FamilySpec::KBlock { .. }) {
                    return invalid(format!(
                        "KBlockClosed needs a KBlock inner family, got {}",
                        inner.name()
                    ));
                }
                close_step(&inner.build_gram()?, *y)
            }
            FamilySpec::SmallDegree { g, f, z, y } => {
                let handles = small_degree_handles(*g, *f, z, *y)?;
                Ok(assemble(bi(64) * bi(*y) * bi(*y), &handles))
            }
            FamilySpec::MgNg { g, ys, y, closed } => {
                if *g < 2 {
                    return invalid(format!("MgNg needs g >= 2 (got {g})"));
                }
                let list = FamilySpec::mg_ys(*g, ys);
                if list.len() != g - 1 {
                    return invalid(format!(
                        "MgNg of genus {g} needs {} values y^(i), got {}",
                        g - 1,
                        list.len()
                    ));
                }
                let mut prev = 1i64;
                for (i, &yi) in list.iter().enumerate() {
                    if yi < 1 || yi * yi <= prev * prev + 1 {
                        return invalid(format!(
                            "MgNg needs (y^(i))^2 > (y^(i-1))^2 + 1, fails at i = {} (y^(i) = {yi}, y^(i-1) = {prev})",
                            i + 1
                        ));
                    }
                    prev = yi;
                }
                let m = FamilySpec::mg_tower(*g, ys).build_gram()?;
                if !closed {
                    return Ok(m);
                }
                let yc = y.unwrap_or(*g as i64 + 1);
                if yc < 1 || yc * yc <= prev * prev {
                    return invalid(format!(
                        "N_g needs y^2 > (y^(g-1))^2 (got y = {yc}, y^(g-1) = {prev})"
                    ));
                }
                close_step(&m, yc)
            }
        }
    }

    /// The parameter `y` on the top-left border entry, when the variant has one.
    pub fn primary_y(&self) -> Option<i64> {
        match self {
            FamilySpec::G1Block { y }
            | FamilySpec::ThurstonClosed { y, .. }
            | FamilySpec::TorelliG2Block { y }
            | FamilySpec::TorelliG1Block { y }
            | FamilySpec::Block1 { y }
            | FamilySpec::Block3 { y, .. }
            | FamilySpec::KBlock { y, .. }
            | FamilySpec::KBlockClosed { y, .. }
            | FamilySpec::SmallDegree { y, .. } => Some(*y),
            FamilySpec::ThurstonInductive { steps, .. } => steps.last().map(|s| s.y),
            FamilySpec::TorelliTower { steps, .. } => steps.last().map(|s| s.y),
            FamilySpec::MgNg { g, ys, y, closed } => {
                if *closed {
                    Some(y.unwrap_or(*g as i64 + 1))
                } else {
                    FamilySpec::mg_ys(*g, ys).last().copied()
                }
            }
            FamilySpec::Genus3Closed { .. } | FamilySpec::Block2 { .. } => None,
        }
    }

    /// Copy of the spec with the primary `y` replaced.
    pub fn with_primary_y(&self, new_y: i64) -> Result<FamilySpec> {
        let mut s = self.clone();
        match &mut s {
            FamilySpec::G1Block { y }
            | FamilySpec::ThurstonClosed { y, .. }
            | FamilySpec::TorelliG2Block { y }
            | FamilySpec::TorelliG1Block { y }
            | FamilySpec::Block1 { y }
            | FamilySpec::Block3 { y, .. }
            | FamilySpec::KBlock { y, .. }
            | FamilySpec::KBlockClosed { y, .. }
            | FamilySpec::SmallDegree { y, .. } => *y = new_y,
            FamilySpec::ThurstonInductive { steps, .. } if !steps.is_empty() => {
                steps.last_mut().unwrap().y = new_y
            }
            FamilySpec::TorelliTower { steps, .. } if !steps.is_empty() => {
                steps.last_mut().unwrap().y = new_y
            }
            FamilySpec::MgNg { g, ys, y, closed } => {
                if *closed {
                    *y = Some(new_y);
                } else {
                    let mut list = FamilySpec::mg_ys(*g, ys);
                    if let Some(last) = list.last_mut() {
                        *last = new_y;
                    }
                    *ys = Some(list);
                }
            }
            other => {
                return Err(Error::Unsupported(format!(
                    "{} has no free parameter y",
                    other.name()
                )))
            }
        }
        Ok(s)
    }

    /// Smallest positive `y` for which the spec with that primary `y` is valid.
    pub fn min_primary_y(&self) -> Result<i64> {
        // Every bound on y has the form y^2 > (other parameters); a failure
        // at a huge y is therefore unrelated to y and is reported as is.
        const FAR: i64 = 1_000_000;
        self.with_primary_y(FAR)?.validate()?;
        (1..=FAR)
            .find(|&y| self.with_primary_y(y).and_then(|s| s.validate()).is_ok())
            .ok_or_else(|| Error::Validation("no valid y below 10^6".into()))
    }

    /// Whether [`intersection_grid`] reconstructs `X` for this variant.
    pub fn has_grid(&self) -> bool {
        match self {
            FamilySpec::G1Block { .. }
            | FamilySpec::ThurstonInductive { .. }
            | FamilySpec::KBlock { .. }
            | FamilySpec::KBlockClosed { .. }
            | FamilySpec::MgNg { .. } => true,
            FamilySpec::ThurstonClosed { inner, .. } => inner.has_grid(),
            _ => false,
        }
    }

    /// Linear factors `(t - c)^f` the construction forces into the
    /// characteristic polynomial.
    pub fn structural_factors(&self) -> Vec<(BigInt, usize)> {
        match self {
            FamilySpec::SmallDegree { f, .. } if *f > 0 => vec![(BigInt::from(4), *f)],
            _ => Vec::new(),
        }
    }
}

/// Error text without the enum's prefix, for nesting messages.
fn strip(e: &Error) -> String {
    match e {
        Error::Validation(m) => m.clone(),
        other => other.to_string(),
    }
}

fn block3_handles(k: usize, ys: &[i64], y: i64, dropped: &[usize]) -> Result<Vec<Handle>> {
    if k == 0 {
        return invalid("Block3 needs k >= 1");
    }
    if ys.len() != k {
        return invalid(format!("Block3 needs {k} values y_i, got {}", ys.len()));
    }
    check_dropped(k, dropped)?;
    for (i, &yi) in ys.iter().enumerate() {
        positive(&format!("y_{}", i + 1), yi)?;
    }
    let sum: i64 = ys.iter().sum();
    let copies = bi(y) * bi(y) - bi(k as i64) - bi(4) * bi(sum);
    if copies < BigInt::from(1) {
        return invalid(format!(
            "y^2 - k - 4(y_1 + ... + y_k) must be at least 1 (got {copies})"
        ));
    }
    Ok(ys
        .iter()
        .enumerate()
        .map(|(i, &yi)| {
            if dropped.contains(&(i + 1)) {
                (vec![bi(8 * yi)], IntMatrix::from_i64_rows(&[&[4 * yi]]))
            } else {
                let c = torelli_c(yi);
                (c.row(0).to_vec(), c)
            }
        })
        .collect())
}

fn kblock_handles(k: usize, ys: &[i64], y: i64, dropped: &[usize]) -> Result<Vec<Handle>> {
    if k == 0 {
        return invalid("KBlock needs k >= 1");
    }
    if ys.len() != k {
        return invalid(format!("KBlock needs {k} values y_i, got {}", ys.len()));
    }
    check_dropped(k, dropped)?;
    if bi(y) * bi(y) - bi(k as i64) <= BigInt::zero() {
        return invalid(format!("y^2 - k must be positive (y = {y}, k = {k})"));
    }
    for (i, &yi) in ys.iter().enumerate() {
        positive(&format!("y_{}", i + 1), yi)?;
    }
    Ok(ys
        .iter()
        .enumerate()
        .map(|(i, &yi)| {
            if dropped.contains(&(i + 1)) {
                (vec![bi(2)], IntMatrix::from_i64_rows(&[&[yi]]))
            } else {
                (vec![bi(4), bi(2)], g1_matrix(yi))
            }
        })
        .collect())
}

fn small_degree_handles(g: usize, f: usize, z: &[i64], y: i64) -> Result<Vec<Handle>> {
    if g < 3 {
        return invalid(format!("SmallDegree needs g >= 3 (got {g})"));
    }
    if z.len() != g - 2 {
        return invalid(format!("SmallDegree needs g - 2 = {} values z_i, got {}", g - 2, z.len()));
    }
    if f + 1 > g - 2 {
        return invalid(format!("SmallDegree needs f + 1 <= g - 2 (f = {f}, g = {g})"));
    }
    for (i, &zi) in z.iter().enumerate() {
        if zi < 4 || zi % 4 != 0 {
            return invalid(format!("z_{} = {zi} must be a positive multiple of 4", i + 1));
        }
        if i <= f && zi != 4 {
            return invalid(format!("the first f + 1 = {} values z_i must equal 4", f + 1));
        }
        if i > f && (zi == 4 || z[f + 1..i].contains(&zi)) {
            return invalid("the z_i after the first f + 1 must differ from 4 and be pairwise distinct");
        }
    }
    let delta: i64 = z.iter().map(|zi| zi / 4).sum();
    let rho = bi(y) * bi(y) + bi(g as i64 - 2) - bi(4) * bi(delta);
    if rho < BigInt::from(1) {
        return invalid(format!("rho = y^2 + g - 2 - 4 delta must be at least 1 (got {rho})"));
    }
    Ok(z
        .iter()
        .map(|&zi| (vec![bi(8 * zi)], IntMatrix::from_i64_rows(&[&[zi]])))
        .collect())
}

/// Parses the shorthand `Variant key=value ...` (lists comma-separated,
/// e.g. `KBlock k=2 ys=12,13 y=5 dropped=1`).
pub fn parse_shorthand(text: &str) -> Result<FamilySpec> {
    let mut parts = text.split_whitespace();
    let variant = parts
        .next()
        .ok_or_else(|| Error::Parse("empty family description".into()))?;
    let mut params = serde_json::Map::new();
    let mut inner: Option<serde_json::Value> = None;
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
        let value = match k {
            "ys" | "z" | "dropped" => serde_json::Value::Array(
                v.split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_number(s))
                    .collect::<Result<_>>()?,
            ),
            "closed" | "drop_alpha1" | "drop_alpha3" => serde_json::Value::Bool(
                v.parse()
                    .map_err(|_| Error::Parse(format!("{k} expects true or false")))?,
            ),
            "inner" => {
                // inner=KBlock:k=1:ys=12:y=2  (colon-separated shorthand)
                let nested = v.replace(':', " ");
                inner = Some(
                    serde_json::to_value(parse_shorthand(&nested)?)
                        .map_err(|e| Error::Parse(e.to_string()))?,
                );
                continue;
            }
            "steps" => {
                // steps=b:y,b:y   or, for TorelliTower, block_y:y
                let keys = if variant == "TorelliTower" {
                    ("block_y", "y")
                } else {
                    ("b", "y")
                };
                serde_json::Value::Array(
                    v.split(',')
                        .filter(|s| !s.is_empty())
                        .map(|pair| {
                            let (a, b) = pair.split_once(':').ok_or_else(|| {
                                Error::Parse(format!("step {pair:?} must look like b:y"))
                            })?;
                            let mut o = serde_json::Map::new();
                            o.insert(keys.0.into(), parse_number(a)?);
                            o.insert(keys.1.into(), parse_number(b)?);
                            Ok(serde_json::Value::Object(o))
                        })
                        .collect::<Result<_>>()?,
                )
            }
            _ => parse_number(v)?,
        };
        params.insert(k.to_string(), value);
    }
    if let Some(i) = inner {
        params.insert("inner".into(), i);
    }
    let value = serde_json::json!({ "variant": variant, "params": params });
    serde_json::from_value(value).map_err(|e| Error::Parse(format!("{variant}: {e}")))
}

fn parse_number(s: &str) -> Result<serde_json::Value> {
    s.parse::<i64>()
        .map(serde_json::Value::from)
        .map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}
