//! Acceptance run: one PASS/FAIL line per criterion, with the runtime limit
//! each criterion carries. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;

use common::{
    bi, eigen_sign_counts, exhaustive_factor, faddeev_leverrier, random_matrix, random_symmetric,
    rng, sylvester_resultant,
};
use pa_degree_forge::certificates::{
    bipartite_degree, ll_criterion, mu_prime_poly, nonsplitting_with, norm_polynomial,
    norm_via_resultants, trace_field_degree, DEFAULT_N_MAX,
};
use pa_degree_forge::exec;
use pa_degree_forge::families::{
    build_bordered, hilbert_search, intersection_grid, HilbertOutcome, InductiveStep,
};
use pa_degree_forge::matrices::{char_poly, gram, signature_nullity};
use pa_degree_forge::polynomials::{
    certify_irreducible, is_perfect_square, is_reciprocal, trace_transform, IrreducibilityVerdict,
    DEFAULT_PRIME_BUDGET,
};
use pa_degree_forge::suites::GENUS2_TABLE;
use pa_degree_forge::{Execution, FamilySpec, IntMatrix, IntPoly};

const BUDGET: usize = DEFAULT_PRIME_BUDGET;

/// Runtime limits per criterion (criterion 5 to 8 carry none).
const LIMIT_GENUS2: Duration = Duration::from_secs(1);
const LIMIT_GENUS1: Duration = Duration::from_secs(1);
const LIMIT_TORELLI: Duration = Duration::from_secs(5);
const LIMIT_PROP62: Duration = Duration::from_secs(600);

const PROP62_G_MAX: usize = 25;
const NONSPLIT_G_MAX: usize = 10;
const HILBERT_WINDOW: i64 = 200;

type Outcome = Result<String, String>;

fn irreducible(p: &IntPoly) -> bool {
    certify_irreducible(p, BUDGET).map(|v| v.is_irreducible()).unwrap_or(false)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn genus2_table() -> Outcome {
    for (i, (word, coeffs)) in GENUS2_TABLE.iter().enumerate() {
        let p = IntPoly::from_i64s(coeffs);
        check(irreducible(&p), || format!("{word}: not certified irreducible"))?;
        check(is_reciprocal(&p), || format!("{word}: not reciprocal"))?;
        let q = trace_transform(&p).map_err(|e| format!("{word}: {e}"))?;
        check(q.degree() == Some(i + 1), || format!("{word}: trace transform of degree {:?}", q.degree()))?;
    }
    Ok("3 polynomials irreducible, reciprocal, trace degrees 1, 2, 3".into())
}

fn genus1_block() -> Outcome {
    for y in 1..=100i64 {
        let chi = char_poly(&IntMatrix::from_i64_rows(&[&[4, 2], &[2, y]])).map_err(|e| e.to_string())?;
        let expected = IntPoly::from_i64s(&[4 * (y - 1), -(4 + y), 1]);
        check(chi == expected, || format!("y = {y}: {chi}"))?;
    }
    for y in 12..=200i64 {
        let disc = bi(y * y - 8 * y + 32);
        check(!is_perfect_square(&disc), || format!("y = {y}: discriminant {disc} is a square"))?;
    }
    Ok("char poly identity for y = 1..100, discriminant non-square for y = 12..200".into())
}

fn torelli_display(y: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&[
        &[84 + 16 * y, 40 + 8 * y, 40, 16],
        &[40 + 8 * y, 20 + 4 * y, 20, 8],
        &[40, 20, 20, 8],
        &[16, 8, 8, 4],
    ])
}

fn torelli_explicit() -> Outcome {
    for y in [2, 3] {
        let m = FamilySpec::TorelliG2Block { y }.build_gram().map_err(|e| e.to_string())?;
        check(m == torelli_display(y), || format!("4x4 display differs at y = {y}"))?;
        check(irreducible(&char_poly(&m).unwrap()), || format!("4x4 at y = {y} not certified"))?;
    }
    let display = IntMatrix::from_i64_rows(&[
        &[500, 248, 232, 112, 80, 32],
        &[248, 124, 116, 56, 40, 16],
        &[232, 116, 116, 56, 40, 16],
        &[112, 56, 56, 28, 20, 8],
        &[80, 40, 40, 20, 20, 8],
        &[32, 16, 16, 8, 8, 4],
    ]);
    let g3 = FamilySpec::Genus3Closed { drop_alpha1: false, drop_alpha3: false };
    check(g3.build_gram().unwrap() == display, || "6x6 display differs".into())?;
    for (a1, a3) in [(false, false), (true, false), (true, true)] {
        let m = FamilySpec::Genus3Closed { drop_alpha1: a1, drop_alpha3: a3 }.build_gram().unwrap();
        check(irreducible(&char_poly(&m).unwrap()), || format!("genus 3 (drop a1 {a1}, a3 {a3}) not certified"))?;
    }
    Ok("4x4 at y = 2, 3 and 6x6 match the displays; all five matrices certified".into())
}

fn prop62() -> Outcome {
    let gs: Vec<usize> = (2..=PROP62_G_MAX).collect();
    let results = exec::map(Execution::Parallel, &gs, |&g| {
        let mut out = Vec::new();
        for (spec, dim) in [(FamilySpec::mg(g), 3 * g - 1), (FamilySpec::ng(g), 3 * g)] {
            let chi = char_poly(&spec.build_gram().unwrap()).unwrap();
            let ok = chi.degree() == Some(dim) && irreducible(&chi);
            out.push((spec.name(), g, ok));
        }
        out
    });
    let failed: Vec<String> = results
        .into_iter()
        .flatten()
        .filter(|(_, _, ok)| !ok)
        .map(|(n, g, _)| format!("{n} g = {g}"))
        .collect();
    check(failed.is_empty(), || format!("not certified: {}", failed.join(", ")))?;
    Ok(format!("M_g (degree 3g-1) and N_g (degree 3g) certified for g = 2..{PROP62_G_MAX}"))
}

/// Trace field plus both nonsplitting certificates; the norm value is
/// recomputed through the formula, the resultant identity and an
/// independent Sylvester determinant.
fn nonsplitting_instance(name: &str, gram: &IntMatrix) -> Result<(), String> {
    let dim = gram.rows();
    let trace = trace_field_degree(gram, &[], BUDGET).map_err(|e| format!("{name}: {e}"))?;
    let t = trace.issued().ok_or_else(|| format!("{name}: trace field {}", trace.label()))?;
    check(t.d == dim, || format!("{name}: d = {} != dim {dim}", t.d))?;
    for eps in [1i8, -1] {
        let o = nonsplitting_with(&t.min_poly_mu, &t.verdict, eps, DEFAULT_N_MAX, Execution::Parallel)
            .map_err(|e| format!("{name} eps {eps}: {e}"))?;
        let c = o.issued().ok_or_else(|| format!("{name} eps {eps}: {}", o.label()))?;
        check(c.witness_n <= DEFAULT_N_MAX as u64, || format!("{name}: witness {}", c.witness_n))?;
        check(c.stretch_degree == 2 * dim, || format!("{name}: stretch degree {}", c.stretch_degree))?;
        check(!is_perfect_square(&c.norm_value), || format!("{name}: norm is a square"))?;
        let mu_prime = mu_prime_poly(&t.min_poly_mu, eps).unwrap();
        let n = c.witness_n;
        let n2 = BigInt::from(n) * BigInt::from(n);
        let formula = norm_polynomial(&mu_prime).eval(&n2);
        let (r1, r2) = norm_via_resultants(&mu_prime, n).unwrap();
        let sylvester = sylvester_resultant(&mu_prime, &IntPoly::from_i64s(&[0, 1]))
            * sylvester_resultant(&mu_prime, &IntPoly::new(vec![bi(-1), n2.clone()]));
        check(formula == c.norm_value && &r1 * &r2 == formula && sylvester == formula, || {
            format!("{name} eps {eps}: norm routes disagree")
        })?;
    }
    Ok(())
}

fn nonsplitting() -> Outcome {
    let mut instances: Vec<(String, IntMatrix)> = Vec::new();
    for y in 12..=200 {
        instances.push((format!("G1Block y = {y}"), FamilySpec::G1Block { y }.build_gram().unwrap()));
    }
    for y in [2, 3] {
        instances.push((format!("TorelliG2Block y = {y}"), FamilySpec::TorelliG2Block { y }.build_gram().unwrap()));
    }
    for (a1, a3) in [(false, false), (true, false), (true, true)] {
        let s = FamilySpec::Genus3Closed { drop_alpha1: a1, drop_alpha3: a3 };
        instances.push((format!("Genus3Closed drop ({a1}, {a3})"), s.build_gram().unwrap()));
    }
    for g in 2..=NONSPLIT_G_MAX {
        instances.push((format!("M_{g}"), FamilySpec::mg(g).build_gram().unwrap()));
        instances.push((format!("N_{g}"), FamilySpec::ng(g).build_gram().unwrap()));
    }
    let count = instances.len();
    let failures: Vec<String> = exec::map(Execution::Parallel, &instances, |(name, g)| nonsplitting_instance(name, g))
        .into_iter()
        .filter_map(|r| r.err())
        .collect();
    check(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{count} instances, both signs, stretch degree 2 dim, norm routes agree"))
}

fn ll_criterion_check() -> Outcome {
    let mut notes = Vec::new();
    for k in 1..=4usize {
        let ys: Vec<i64> = (0..k as i64).map(|i| 12 + i).collect();
        let base = FamilySpec::KBlock { k, ys, y: 2, dropped: vec![] };
        let bordered = build_bordered(&base).map_err(|e| e.to_string())?;
        let lo = bordered.y_min.max(1);
        let y = match hilbert_search(&bordered, lo, lo + HILBERT_WINDOW, BUDGET).map_err(|e| e.to_string())? {
            HilbertOutcome::Found { y, .. } => y,
            HilbertOutcome::Exhausted { .. } => return Err(format!("k = {k}: Hilbert search exhausted")),
        };
        let spec = base.with_primary_y(y).unwrap();
        let d = spec.build_gram().unwrap().rows();
        let report = ll_criterion(&intersection_grid(&spec).unwrap(), d).map_err(|e| e.to_string())?;
        let (dim, s) = (report.dim as i64, report.sigma + report.nullity as i64);
        check(report.holds && dim > s && s > dim - 2 * d as i64, || {
            format!("k = {k}, y = {y}: dim {dim}, sigma + null {s}, d {d}")
        })?;
        notes.push(format!("k={k} y={y}"));
    }
    for y in 5..=40 {
        let x = intersection_grid(&FamilySpec::G1Block { y }).unwrap();
        let r = ll_criterion(&x, 2).unwrap();
        check(r.nullity == 0 && r.sigma == r.dim as i64 - 2, || {
            format!("genus-one block y = {y}: sigma {}, nullity {}", r.sigma, r.nullity)
        })?;
    }
    Ok(format!("{}; genus-one block facts for y = 5..40", notes.join(", ")))
}

fn bipartite() -> Outcome {
    let cases = [
        ("TorelliG2Block y = 2", FamilySpec::TorelliG2Block { y: 2 }.build_gram().unwrap(), Some(8)),
        ("[[2]]", IntMatrix::from_i64_rows(&[&[2]]), Some(2)),
        ("[[4]]", IntMatrix::from_i64_rows(&[&[4]]), None),
    ];
    for (name, g, expected) in cases {
        let o = bipartite_degree(&g, BUDGET).map_err(|e| format!("{name}: {e}"))?;
        let got = o.issued().map(|c| c.bipartite_degree);
        check(got == expected, || format!("{name}: {got:?}, expected {expected:?}"))?;
    }
    Ok("bipartite degrees 8 and 2; [[4]] not certified".into())
}

fn oracles() -> Outcome {
    let mut r = rng(0xacce_9700);
    for i in 0..200 {
        let n = r.gen_range(1..=8usize);
        let m = random_matrix(&mut r, n, -50, 50);
        check(char_poly(&m).unwrap() == faddeev_leverrier(&m), || format!("char poly differs on matrix {i}"))?;
    }
    for i in 0..100 {
        let n = r.gen_range(1..=8usize);
        let s = random_symmetric(&mut r, n, -4, 4);
        let rep = signature_nullity(&s).unwrap();
        check((rep.positive(), rep.negative(), rep.nullity) == eigen_sign_counts(&s), || {
            format!("signature differs on matrix {i}")
        })?;
    }
    let mut confirmed = 0;
    for _ in 0..300 {
        let d = r.gen_range(1..=6usize);
        let mut c: Vec<i64> = (0..d).map(|_| r.gen_range(-6..=6)).collect();
        c.push(1);
        let p = IntPoly::from_i64s(&c);
        if let IrreducibilityVerdict::Irreducible { .. } = certify_irreducible(&p, BUDGET).unwrap() {
            check(exhaustive_factor(&p).is_none(), || format!("{p} has a factor"))?;
            confirmed += 1;
        }
    }
    let grids = grid_bearing_up_to_twenty();
    for spec in &grids {
        let x = intersection_grid(spec).map_err(|e| format!("{spec:?}: {e}"))?;
        check(gram(&x) == spec.build_gram().unwrap(), || format!("grid differs for {spec:?}"))?;
    }
    Ok(format!(
        "200 char polys, 100 signatures, {confirmed} irreducible verdicts confirmed, {} grids",
        grids.len()
    ))
}

/// Every grid-bearing variant with parameters at most 20.
fn grid_bearing_up_to_twenty() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for y in 1..=20 {
        out.push(FamilySpec::G1Block { y });
    }
    for base_b in 1..=20 {
        for b in [1, 12, 20] {
            for y in 1..=20 {
                let s = FamilySpec::ThurstonInductive { base_b, steps: vec![InductiveStep { b, y }] };
                if s.validate().is_ok() {
                    out.push(s);
                }
            }
        }
    }
    for b in 1..=20 {
        for y in 1..=20 {
            let s = FamilySpec::ThurstonClosed { inner: Box::new(FamilySpec::G1Block { y: b }), y };
            if s.validate().is_ok() {
                out.push(s);
            }
        }
    }
    for k in 1..=2usize {
        for y in 1..=20 {
            for y1 in [1, 7, 12, 20] {
                for dropped in [vec![], vec![1], (1..=k).collect()] {
                    let ys = vec![y1; k].iter().enumerate().map(|(i, v)| v + i as i64 % 20).collect();
                    let s = FamilySpec::KBlock { k, ys, y, dropped };
                    if s.validate().is_ok() {
                        out.push(s.clone());
                        let c = FamilySpec::KBlockClosed { inner: Box::new(s), y: 2 * y + 1 };
                        if c.validate().is_ok() {
                            out.push(c);
                        }
                    }
                }
            }
        }
    }
    for g in 2..=6 {
        out.push(FamilySpec::mg(g));
        out.push(FamilySpec::ng(g));
    }
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        ("genus-2 table", genus2_table, Some(LIMIT_GENUS2)),
        ("genus-1 block", genus1_block, Some(LIMIT_GENUS1)),
        ("Torelli explicit matrices", torelli_explicit, Some(LIMIT_TORELLI)),
        ("M_g / N_g irreducible, g <= 25", prop62, Some(LIMIT_PROP62)),
        ("nonsplitting certificates", nonsplitting, None),
        ("LL criterion", ll_criterion_check, None),
        ("bipartite degree", bipartite, None),
        ("oracle equivalences", oracles, None),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let within = limit.map_or(true, |l| elapsed < l);
        let pass = result.is_ok() && within;
        all &= pass;
        let timing = match limit {
            Some(l) => format!("{:.3} s, limit {} s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.3} s", elapsed.as_secs_f64()),
        };
        let detail = match &result {
            Ok(s) if within => s.clone(),
            Ok(s) => format!("{s}; over the time limit"),
            Err(e) => e.clone(),
        };
        println!("{} criterion {}: {name} — {detail} ({timing})", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
