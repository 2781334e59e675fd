//! Reproduction suites: fixed reference computations, each item
//! reporting its checks and the witnesses behind them.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::certificates::{check_bordered_multi, check_bordered_single, Outcome};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::families::{
    build_bordered, hilbert_search_with, FamilySpec, HilbertOutcome, InductiveStep,
};
use crate::matrices::{char_poly_with, IntMatrix};
use crate::polynomials::{
    certify_irreducible_with, is_reciprocal, trace_transform, IntPoly, IrreducibilityVerdict,
    DEFAULT_PRIME_BUDGET,
};
use crate::report::SCHEMA;

pub const SUITES: [&str; 4] = ["genus2-table", "thurston-claim", "torelli-small", "prop62"];

/// Default genus range of `prop62`.
pub const PROP62_DEFAULT_G_MAX: usize = 25;
/// Upper genus of the full (opt-in) `prop62` range.
pub const PROP62_FULL_G_MAX: usize = 200;
/// Default genus range of `thurston-claim`.
pub const THURSTON_DEFAULT_G_MAX: usize = 5;

/// Width of the Hilbert-search window above a family's lower bound.
const HILBERT_WINDOW: i64 = 200;

/// The three stretch-factor minimal polynomials of the genus-two table
/// (ascending coefficients), with the word that produced each.
pub const GENUS2_TABLE: [(&str, &[i64]); 3] = [
    ("T_gamma T_1 T_2^-1", &[1, -66, 1]),
    ("T_gamma T_1 T_2", &[1, -72, 110, -72, 1]),
    ("T_gamma T_1 T_2 T_3", &[1, -266, 143, -204, 143, -266, 1]),
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub g_max: Option<usize>,
    pub prime_budget: usize,
    pub exec: Execution,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { g_max: None, prime_budget: DEFAULT_PRIME_BUDGET, exec: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteItem {
    pub index: usize,
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub witness: Value,
}

impl SuiteItem {
    fn new(index: usize, name: impl Into<String>, checks: Vec<(&str, bool)>, witness: Value) -> Self {
        let checks: Vec<Check> =
            checks.into_iter().map(|(n, ok)| Check { name: n.to_string(), ok }).collect();
        SuiteItem {
            index,
            name: name.into(),
            passed: checks.iter().all(|c| c.ok),
            checks,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub suite: String,
    pub passed: bool,
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn summary(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for it in &self.items {
            let checks: Vec<String> = it
                .checks
                .iter()
                .map(|c| format!("{} {}", c.name, if c.ok { "ok" } else { "FAILED" }))
                .collect();
            out.push_str(&format!(
                "{:>3}. {:<40} {}  [{}]\n",
                it.index + 1,
                it.name,
                if it.passed { "pass" } else { "FAIL" },
                checks.join(", ")
            ));
        }
        out.push_str(&format!("{}\n", if self.passed { "all items passed" } else { "some items failed" }));
        out
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    if opts.prime_budget == 0 {
        return Err(Error::InvalidArgument("prime budget must be positive".into()));
    }
    let items = match name {
        "genus2-table" => genus2_table(opts)?,
        "thurston-claim" => thurston_claim(opts)?,
        "torelli-small" => torelli_small(opts)?,
        "prop62" => prop62(opts)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?} (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        schema: SCHEMA.to_string(),
        suite: name.to_string(),
        passed: items.iter().all(|i| i.passed),
        items,
    })
}

fn verdict_json(v: &IrreducibilityVerdict) -> Value {
    serde_json::to_value(v).expect("verdicts serialize")
}

fn genus2_table(opts: &SuiteOptions) -> Result<Vec<SuiteItem>> {
    GENUS2_TABLE
        .iter()
        .enumerate()
        .map(|(i, (word, coeffs))| {
            let p = IntPoly::from_i64s(coeffs);
            let v = certify_irreducible_with(&p, opts.prime_budget, opts.exec)?;
            let q = trace_transform(&p).ok();
            let d = i + 1;
            Ok(SuiteItem::new(
                i,
                format!("{word}: {}", p.to_text()),
                vec![
                    ("irreducible", v.is_irreducible()),
                    ("reciprocal", is_reciprocal(&p)),
                    ("trace degree", q.as_ref().and_then(|q| q.degree()) == Some(d)),
                ],
                json!({ "verdict": verdict_json(&v), "trace_poly": q, "d": d }),
            ))
        })
        .collect()
}

/// Certifies the characteristic polynomial of `m`.
fn certify_gram(m: &IntMatrix, opts: &SuiteOptions) -> Result<(IntPoly, IrreducibilityVerdict)> {
    let chi = char_poly_with(m, opts.exec)?;
    let v = certify_irreducible_with(&chi, opts.prime_budget, opts.exec)?;
    Ok((chi, v))
}

fn search(spec: &FamilySpec, opts: &SuiteOptions) -> Result<Option<FamilySpec>> {
    let lo = spec.min_primary_y()?;
    match hilbert_search_with(spec, lo, lo + HILBERT_WINDOW, opts.prime_budget, opts.exec)? {
        HilbertOutcome::Found { y, .. } => Ok(Some(spec.with_primary_y(y)?)),
        HilbertOutcome::Exhausted { .. } => Ok(None),
    }
}

/// Two-boundary tower of genus `h` with handles `b = 12, 13, ...` and each
/// encircling parameter the smallest Hilbert-certified one.
pub fn thurston_tower(h: usize, opts: &SuiteOptions) -> Result<Option<FamilySpec>> {
    let mut spec = FamilySpec::ThurstonInductive { base_b: 12, steps: Vec::new() };
    for i in 1..h {
        let mut steps = match &spec {
            FamilySpec::ThurstonInductive { steps, .. } => steps.clone(),
            _ => unreachable!(),
        };
        steps.push(InductiveStep { b: 12 + i as i64, y: 1 });
        let next = FamilySpec::ThurstonInductive { base_b: 12, steps };
        match search(&next, opts)? {
            Some(s) => spec = s,
            None => return Ok(None),
        }
    }
    Ok(Some(spec))
}

fn thurston_claim(opts: &SuiteOptions) -> Result<Vec<SuiteItem>> {
    let g_max = opts.g_max.unwrap_or(THURSTON_DEFAULT_G_MAX);
    let gs: Vec<usize> = (2..=g_max).collect();
    let items = exec::map(opts.exec, &gs, |&g| -> Result<SuiteItem> {
        let inner_opts = SuiteOptions { exec: Execution::Sequential, ..opts.clone() };
        let name = format!("closed genus {g}: degree 3g - 3 = {}", 3 * g - 3);
        let Some(inner) = thurston_tower(g - 1, &inner_opts)? else {
            return Ok(SuiteItem::new(g - 2, name, vec![("inner tower found", false)], Value::Null));
        };
        let closed = FamilySpec::ThurstonClosed { inner: Box::new(inner), y: 1 };
        let Some(closed) = search(&closed, &inner_opts)? else {
            return Ok(SuiteItem::new(g - 2, name, vec![("closing y found", false)], Value::Null));
        };
        let m = closed.build_gram()?;
        let (_, v) = certify_gram(&m, &inner_opts)?;
        let bordered = build_bordered(&closed)?;
        let lemma = check_bordered_single(&bordered, opts.prime_budget)?;
        Ok(SuiteItem::new(
            g - 2,
            name,
            vec![
                ("dimension 3g - 3", m.rows() == 3 * g - 3),
                ("irreducible", v.is_irreducible()),
                ("bordered lemma", lemma.is_issued()),
            ],
            json!({ "spec": closed, "verdict": verdict_json(&v), "lemma": lemma.label() }),
        ))
    });
    items.into_iter().collect()
}

fn torelli_small(opts: &SuiteOptions) -> Result<Vec<SuiteItem>> {
    let g2 = |y: i64| FamilySpec::TorelliG2Block { y };
    let display2 = |y: i64| -> IntMatrix {
        IntMatrix::from_i64_rows(&[
            &[84 + 16 * y, 40 + 8 * y, 40, 16],
            &[40 + 8 * y, 20 + 4 * y, 20, 8],
            &[40, 20, 20, 8],
            &[16, 8, 8, 4],
        ])
    };
    let display6 = IntMatrix::from_i64_rows(&[
        &[500, 248, 232, 112, 80, 32],
        &[248, 124, 116, 56, 40, 16],
        &[232, 116, 116, 56, 40, 16],
        &[112, 56, 56, 28, 20, 8],
        &[80, 40, 40, 20, 20, 8],
        &[32, 16, 16, 8, 8, 4],
    ]);
    let cases: Vec<(String, FamilySpec, Option<IntMatrix>, usize)> = vec![
        ("genus-two block y = 2".into(), g2(2), Some(display2(2)), 4),
        ("genus-two block y = 3".into(), g2(3), Some(display2(3)), 4),
        (
            "closed genus three".into(),
            FamilySpec::Genus3Closed { drop_alpha1: false, drop_alpha3: false },
            Some(display6),
            6,
        ),
        (
            "closed genus three without alpha_1".into(),
            FamilySpec::Genus3Closed { drop_alpha1: true, drop_alpha3: false },
            None,
            5,
        ),
        (
            "closed genus three without alpha_1, alpha_3".into(),
            FamilySpec::Genus3Closed { drop_alpha1: true, drop_alpha3: true },
            None,
            4,
        ),
        ("block 1 at y = 1".into(), FamilySpec::Block1 { y: 1 }, None, 3),
        ("block 1 at y = 2".into(), FamilySpec::Block1 { y: 2 }, None, 3),
        (
            "genus-one block C_1".into(),
            FamilySpec::TorelliG1Block { y: 1 },
            Some(IntMatrix::from_i64_rows(&[&[20, 8], &[8, 4]])),
            2,
        ),
    ];
    cases
        .into_iter()
        .enumerate()
        .map(|(i, (name, spec, display, deg))| {
            let m = spec.build_gram()?;
            let (chi, v) = certify_gram(&m, opts)?;
            let mut checks = vec![("irreducible", v.is_irreducible()), ("degree", chi.degree() == Some(deg))];
            if let Some(d) = &display {
                checks.insert(0, ("matches display", *d == m));
            }
            Ok(SuiteItem::new(
                i,
                name,
                checks,
                json!({ "spec": spec, "char_poly": chi, "verdict": verdict_json(&v) }),
            ))
        })
        .collect()
}

fn prop62(opts: &SuiteOptions) -> Result<Vec<SuiteItem>> {
    let g_max = opts.g_max.unwrap_or(PROP62_DEFAULT_G_MAX);
    let mut cases = Vec::new();
    for g in 2..=g_max {
        cases.push((g, false));
        cases.push((g, true));
    }
    let items = exec::map(opts.exec, &cases, |&(g, closed)| -> Result<SuiteItem> {
        let inner_opts = SuiteOptions { exec: Execution::Sequential, ..opts.clone() };
        let spec = if closed { FamilySpec::ng(g) } else { FamilySpec::mg(g) };
        let m = spec.build_gram()?;
        let (chi, v) = certify_gram(&m, &inner_opts)?;
        let want = if closed { 3 * g } else { 3 * g - 1 };
        let name = format!("{}_{g} (degree {want})", if closed { "N" } else { "M" });
        let primes = match &v {
            IrreducibilityVerdict::Irreducible { patterns, .. } => patterns.len(),
            _ => 0,
        };
        Ok(SuiteItem::new(
            0,
            name,
            vec![("dimension", m.rows() == want), ("irreducible", v.is_irreducible())],
            json!({ "spec": spec, "degree": chi.degree(), "primes_used": primes, "verdict": verdict_json(&v) }),
        ))
    });
    items
        .into_iter()
        .enumerate()
        .map(|(i, it)| it.map(|mut it| {
            it.index = i;
            it
        }))
        .collect()
}

/// Bordered-lemma audit used by the KBlock suites and tests: certificate for
/// the multi-block form of a k-block.
pub fn kblock_lemma(spec: &FamilySpec, prime_budget: usize) -> Result<Outcome<crate::certificates::BorderedCertificate>> {
    let b = build_bordered(spec)?;
    let blocks = b.blocks.clone();
    check_bordered_multi(&b, &blocks, prime_budget)
}
