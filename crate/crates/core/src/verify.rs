//! Independent re-verification of a [`RunReport`]: every embedded witness is
//! rechecked (pattern degree sets, exact divisions, square tests, resultant
//! identities, signature arithmetic) without rerunning any search.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::certificates::{
    mu_prime_poly, norm_polynomial, norm_via_resultants, stretch_branch, DegreeCertificate,
    LLReport, Outcome, TraceFieldCertificate,
};
use crate::matrices::char_poly;
use crate::polynomials::{
    has_root_above, is_perfect_square, is_reciprocal, recheck_patterns, substitute_power,
    trace_transform, IntPoly, IrreducibilityVerdict, PrimePattern,
};
use crate::report::{RunReport, SCHEMA};

/// The first check that failed, by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub check: String,
    pub detail: String,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

impl std::error::Error for VerifyFailure {}

type Checked = std::result::Result<(), VerifyFailure>;

fn ensure(ok: bool, check: &str, detail: impl FnOnce() -> String) -> Checked {
    if ok {
        Ok(())
    } else {
        Err(VerifyFailure { check: check.to_string(), detail: detail() })
    }
}

/// Parses and verifies a report; the count is the number of checks passed.
pub fn verify_json(text: &str) -> std::result::Result<usize, VerifyFailure> {
    let report = RunReport::from_json(text).map_err(|e| VerifyFailure {
        check: "well-formed report".into(),
        detail: e.to_string(),
    })?;
    verify_report(&report)
}

pub fn verify_report(r: &RunReport) -> std::result::Result<usize, VerifyFailure> {
    let mut n = 0usize;
    let mut step = |res: Checked| -> Checked {
        n += 1;
        res
    };
    step(ensure(r.schema == SCHEMA, "schema", || format!("expected {SCHEMA}, got {}", r.schema)))?;
    step(ensure(r.dim == r.gram.rows() && r.gram.is_square(), "dimension", || {
        format!("dim {} vs gram {}x{}", r.dim, r.gram.rows(), r.gram.cols())
    }))?;
    if let Some(spec) = &r.spec {
        let built = spec.build_gram().map_err(|e| VerifyFailure {
            check: "spec rebuilds".into(),
            detail: e.to_string(),
        })?;
        step(ensure(built == r.gram, "spec rebuilds", || "gram differs from the spec".into()))?;
    }
    let chi = char_poly(&r.gram).map_err(|e| VerifyFailure {
        check: "char_poly matches gram".into(),
        detail: e.to_string(),
    })?;
    step(ensure(chi == r.char_poly, "char_poly matches gram", || "recomputed polynomial differs".into()))?;

    let trace = match &r.trace_field {
        Outcome::Issued(t) => {
            verify_trace_field(t, &r.char_poly, r.dim, &mut step)?;
            Some(t)
        }
        _ => None,
    };
    for o in &r.nonsplitting {
        if let Outcome::Issued(c) = o {
            verify_degree(c, trace, &mut step)?;
        }
    }
    if let Some(ll) = &r.ll {
        verify_ll(ll, &mut step)?;
    }
    if let Some(Outcome::Issued(b)) = &r.bipartite {
        step(ensure(b.char_poly == r.char_poly, "bipartite char_poly", || "differs from report".into()))?;
        let sub = substitute_power(&b.char_poly, 2).map_err(|e| VerifyFailure {
            check: "bipartite substitution".into(),
            detail: e.to_string(),
        })?;
        step(ensure(sub == b.substituted, "bipartite substitution", || "chi(t^2) differs".into()))?;
        let deg = b.char_poly.degree().unwrap_or(0);
        step(ensure(b.d == deg && b.bipartite_degree == 2 * deg, "bipartite degree", || {
            format!("d = {}, degree = {}, chi degree {deg}", b.d, b.bipartite_degree)
        }))?;
        verify_irreducible(&b.substituted, &b.verdict, "bipartite irreducibility", &mut step)?;
    }
    Ok(n)
}

fn verify_irreducible(
    p: &IntPoly,
    verdict: &IrreducibilityVerdict,
    check: &str,
    step: &mut impl FnMut(Checked) -> Checked,
) -> Checked {
    match verdict {
        IrreducibilityVerdict::Irreducible { degree, patterns, degree_set } => {
            step(ensure(Some(*degree) == p.degree(), check, || "verdict degree differs".into()))?;
            step(ensure(
                recheck_patterns(p, patterns, degree_set) && degree_set == &vec![0, *degree],
                check,
                || "prime patterns do not exclude every proper factor degree".into(),
            ))
        }
        _ => step(ensure(false, check, || "verdict is not Irreducible".into())),
    }
}

fn verify_trace_field(
    t: &TraceFieldCertificate,
    chi: &IntPoly,
    dim: usize,
    step: &mut impl FnMut(Checked) -> Checked,
) -> Checked {
    step(ensure(t.char_poly == *chi, "trace char_poly", || "differs from report".into()))?;
    step(ensure(t.dim == dim, "trace dimension", || format!("{} vs {dim}", t.dim)))?;
    step(ensure(
        t.min_poly_mu.degree() == Some(t.d),
        "d matches min_poly_mu degree",
        || format!("d = {}, degree {:?}", t.d, t.min_poly_mu.degree()),
    ))?;
    let removed: usize = t.structural_factors.iter().map(|f| f.multiplicity).sum();
    step(ensure(t.d + removed == dim, "d matches structural factors", || {
        format!("d = {} + {removed} removed != {dim}", t.d)
    }))?;
    let mut product = t.min_poly_mu.clone();
    for f in &t.structural_factors {
        product = &product * &IntPoly::linear_power(&f.root, f.multiplicity);
    }
    step(ensure(product == *chi, "structural factors divide", || {
        "product of factors differs from the characteristic polynomial".into()
    }))?;
    if let Some(c) = t.structural_factors.iter().map(|f| &f.root).max() {
        let above = has_root_above(&t.min_poly_mu, &BigRational::from_integer(c.clone()))
            .unwrap_or(false);
        step(ensure(above, "Perron location", || format!("no root above {c}")))?;
    }
    verify_irreducible(&t.min_poly_mu, &t.verdict, "min_poly_mu irreducible", step)
}

fn verify_degree(
    c: &DegreeCertificate,
    trace: Option<&TraceFieldCertificate>,
    step: &mut impl FnMut(Checked) -> Checked,
) -> Checked {
    let d = c.trace_field_degree;
    step(ensure(c.min_poly_mu.degree() == Some(d), "d matches min_poly_mu degree", || {
        format!("d = {d}, degree {:?}", c.min_poly_mu.degree())
    }))?;
    if let Some(t) = trace {
        step(ensure(t.min_poly_mu == c.min_poly_mu, "min_poly_mu matches trace field", || {
            "nonsplitting certificate names a different polynomial".into()
        }))?;
    }
    step(ensure(c.stretch_degree == 2 * d, "stretch degree is 2d", || {
        format!("{} vs 2 * {d}", c.stretch_degree)
    }))?;
    step(ensure(!is_perfect_square(&c.norm_value), "norm_value is a square", || {
        format!("{} is a perfect square", c.norm_value)
    }))?;
    let n = c.witness_n as i64;
    step(ensure(
        c.word == (2 * n, 2 * n * c.epsilon as i64) && n >= 1,
        "word matches witness",
        || format!("word {:?} for n = {n}, eps = {}", c.word, c.epsilon),
    ))?;
    let mu_prime = mu_prime_poly(&c.min_poly_mu, c.epsilon).map_err(|e| VerifyFailure {
        check: "mu' polynomial".into(),
        detail: e.to_string(),
    })?;
    step(ensure(mu_prime == c.min_poly_mu_prime, "mu' polynomial", || "reflection differs".into()))?;
    let n2 = BigInt::from(n) * BigInt::from(n);
    let q = norm_polynomial(&mu_prime).eval(&n2);
    step(ensure(q == c.norm_value, "norm_value equals Q(n^2)", || {
        format!("recomputed {q}, stored {}", c.norm_value)
    }))?;
    let (r1, r2) = norm_via_resultants(&mu_prime, c.witness_n).map_err(|e| VerifyFailure {
        check: "resultant route".into(),
        detail: e.to_string(),
    })?;
    step(ensure(
        c.resultant_factors == vec![r1.clone(), r2.clone()] && &r1 * &r2 == c.norm_value,
        "resultant route",
        || "Res(P', t) Res(P', n^2 t - 1) differs from norm_value".into(),
    ))?;
    let (lambda, branch) = stretch_branch(
        &c.min_poly_mu,
        &BigInt::from(c.word.0),
        &BigInt::from(c.word.1),
    )
    .map_err(|e| VerifyFailure { check: "min_poly_lambda".into(), detail: e.to_string() })?;
    step(ensure(lambda == c.min_poly_lambda && branch == c.branch, "min_poly_lambda", || {
        "stretch polynomial differs".into()
    }))?;
    step(ensure(
        is_reciprocal(&c.min_poly_lambda)
            && c.min_poly_lambda.degree() == Some(2 * d)
            && trace_transform(&c.min_poly_lambda).map(|q| q.degree() == Some(d)).unwrap_or(false),
        "min_poly_lambda reciprocal of degree 2d",
        || "shape check failed".into(),
    ))?;
    let degree_set = vec![0, d];
    verify_patterns(&c.min_poly_mu, &c.mu_patterns, &degree_set, step)
}

fn verify_patterns(
    p: &IntPoly,
    patterns: &[PrimePattern],
    degree_set: &[usize],
    step: &mut impl FnMut(Checked) -> Checked,
) -> Checked {
    let ok = p.degree() == Some(1) || recheck_patterns(p, patterns, degree_set);
    step(ensure(ok, "mu patterns", || "prime patterns do not certify min_poly_mu".into()))
}

fn verify_ll(ll: &LLReport, step: &mut impl FnMut(Checked) -> Checked) -> Checked {
    let s = crate::matrices::SignatureReport { dim: ll.dim, sigma: ll.sigma, nullity: ll.nullity };
    step(ensure(s.is_consistent(), "signature arithmetic", || {
        format!("sigma {} nullity {} impossible in dimension {}", ll.sigma, ll.nullity, ll.dim)
    }))?;
    step(ensure(ll.is_consistent(), "LL inequality", || "stored flag disagrees with the numbers".into()))
}
