//! The certification pipeline behind `certify`: one Gram matrix in, one
//! versioned JSON report out.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::certificates::{
    bipartite_degree_with, ll_criterion, nonsplitting_with, trace_field_degree_with,
    BipartiteCertificate, DegreeCertificate, LLReport, Outcome, TraceFieldCertificate,
    DEFAULT_N_MAX,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::families::{intersection_grid, FamilySpec};
use crate::matrices::{char_poly_with, IntMatrix};
use crate::polynomials::{IntPoly, DEFAULT_PRIME_BUDGET};

/// Value of the `schema` field of every report.
pub const SCHEMA: &str = "pa-degree-forge/1";

/// Polynomials above this degree are elided from human-readable output.
pub const ELIDE_DEGREE: usize = 64;

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub epsilons: Vec<i8>,
    pub n_max: usize,
    pub prime_budget: usize,
    /// Run the signature criterion with this `d` (`Some(None)`: use the
    /// certified trace-field degree).
    pub ll: Option<Option<usize>>,
    pub bipartite: bool,
    pub exec: Execution,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            epsilons: vec![1, -1],
            n_max: DEFAULT_N_MAX,
            prime_budget: DEFAULT_PRIME_BUDGET,
            ll: None,
            bipartite: false,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Issued,
    Refuted,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Issued => 0,
            Status::Refuted => 1,
            Status::Unknown => 2,
        }
    }

    /// Refutations dominate inconclusive results.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Refuted, _) | (_, Status::Refuted) => Status::Refuted,
            (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
            _ => Status::Issued,
        }
    }

    fn of<T>(o: &Outcome<T>) -> Status {
        match o {
            Outcome::Issued(_) => Status::Issued,
            Outcome::Refuted { .. } => Status::Refuted,
            Outcome::Unknown { .. } => Status::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub spec: Option<FamilySpec>,
    pub dim: usize,
    pub gram: IntMatrix,
    pub char_poly: IntPoly,
    pub trace_field: Outcome<TraceFieldCertificate>,
    #[serde(default)]
    pub nonsplitting: Vec<Outcome<DegreeCertificate>>,
    #[serde(default)]
    pub ll: Option<LLReport>,
    #[serde(default)]
    pub bipartite: Option<Outcome<BipartiteCertificate>>,
    pub status: Status,
    #[serde(default)]
    pub timing_ms: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<RunReport> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report JSON: {e}")))
    }

    /// Human-readable summary; polynomials above [`ELIDE_DEGREE`] are elided.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        if let Some(s) = &self.spec {
            out.push_str(&format!("family      {}\n", serde_json::to_string(s).unwrap()));
        }
        out.push_str(&format!("dimension   {}\n", self.dim));
        out.push_str(&format!("char poly   {}\n", elide(&self.char_poly)));
        match &self.trace_field {
            Outcome::Issued(c) => {
                out.push_str(&format!("trace field degree d = {}  (certified, {} primes)\n", c.d, pattern_count(c)));
                if !c.structural_factors.is_empty() {
                    out.push_str(&format!("min poly mu {}\n", elide(&c.min_poly_mu)));
                }
            }
            other => out.push_str(&format!("trace field {}: {}\n", other.label(), other.reason().unwrap_or(""))),
        }
        for o in &self.nonsplitting {
            match o {
                Outcome::Issued(c) => out.push_str(&format!(
                    "stretch degree {} for eps = {:+}: witness n = {}, word (a, b) = ({}, {}), Q(n^2) = {}\n",
                    c.stretch_degree, c.epsilon, c.witness_n, c.word.0, c.word.1, c.norm_value
                )),
                other => out.push_str(&format!("nonsplitting {}: {}\n", other.label(), other.reason().unwrap_or(""))),
            }
        }
        if let Some(ll) = &self.ll {
            out.push_str(&format!(
                "LL criterion dim = {}, sigma = {}, nullity = {}, d = {}: {}\n",
                ll.dim,
                ll.sigma,
                ll.nullity,
                ll.d,
                if ll.holds { "holds" } else { "fails" }
            ));
        }
        if let Some(b) = &self.bipartite {
            match b {
                Outcome::Issued(c) => out.push_str(&format!("bipartite degree {}\n", c.bipartite_degree)),
                other => out.push_str(&format!("bipartite {}: {}\n", other.label(), other.reason().unwrap_or(""))),
            }
        }
        out.push_str(&format!("status      {:?}\n", self.status).to_lowercase());
        out
    }
}

fn pattern_count(c: &TraceFieldCertificate) -> usize {
    match &c.verdict {
        crate::polynomials::IrreducibilityVerdict::Irreducible { patterns, .. } => patterns.len(),
        _ => 0,
    }
}

/// The polynomial's text form, or a degree note above [`ELIDE_DEGREE`].
pub fn elide(p: &IntPoly) -> String {
    match p.degree() {
        Some(d) if d > ELIDE_DEGREE => format!("<degree {d}, elided; see JSON>"),
        _ => p.to_text(),
    }
}

/// Certifies a family instance.
pub fn certify_spec(spec: &FamilySpec, opts: &CertifyOptions) -> Result<RunReport> {
    let gram = spec.build_gram()?;
    certify(&gram, Some(spec), &spec.structural_factors(), opts)
}

/// Certifies a bare Gram matrix.
pub fn certify_matrix(gram: &IntMatrix, opts: &CertifyOptions) -> Result<RunReport> {
    certify(gram, None, &[], opts)
}

fn certify(
    gram: &IntMatrix,
    spec: Option<&FamilySpec>,
    structural: &[(num_bigint::BigInt, usize)],
    opts: &CertifyOptions,
) -> Result<RunReport> {
    if opts.prime_budget == 0 {
        return Err(Error::InvalidArgument("prime budget must be positive".into()));
    }
    if opts.epsilons.iter().any(|&e| e != 1 && e != -1) {
        return Err(Error::InvalidArgument("epsilon must be 1 or -1".into()));
    }
    let grid = match (opts.ll, spec) {
        (None, _) => None,
        (Some(_), Some(s)) => Some(intersection_grid(s)?),
        (Some(_), None) => {
            return Err(Error::Unsupported(
                "the signature criterion needs a grid-bearing family".into(),
            ))
        }
    };
    let mut timing = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timing: &mut BTreeMap<String, f64>| {
        timing.insert(name.to_string(), clock.elapsed().as_secs_f64() * 1e3);
        clock = Instant::now();
    };

    let chi = char_poly_with(gram, opts.exec)?;
    lap("char_poly", &mut timing);
    let trace = trace_field_degree_with(gram, structural, opts.prime_budget, opts.exec)?;
    lap("trace_field", &mut timing);
    let mut status = Status::of(&trace);

    let mut nonsplitting = Vec::new();
    if let Outcome::Issued(t) = &trace {
        for &eps in &opts.epsilons {
            let o = nonsplitting_with(&t.min_poly_mu, &t.verdict, eps, opts.n_max, opts.exec)?;
            status = status.combine(Status::of(&o));
            nonsplitting.push(o);
        }
        lap("nonsplitting", &mut timing);
    }

    let mut ll = None;
    if let (Some(d), Some(x)) = (opts.ll, &grid) {
        let d = match (d, trace.issued()) {
            (Some(d), _) => d,
            (None, Some(t)) => t.d,
            (None, None) => gram.rows(),
        };
        let r = ll_criterion(x, d)?;
        if !r.holds {
            status = status.combine(Status::Refuted);
        }
        ll = Some(r);
        lap("ll_criterion", &mut timing);
    }

    let mut bipartite = None;
    if opts.bipartite {
        let o = match bipartite_degree_with(gram, opts.prime_budget, opts.exec) {
            Ok(o) => o,
            Err(Error::InvalidArgument(reason)) => Outcome::Refuted { reason },
            Err(e) => return Err(e),
        };
        status = status.combine(Status::of(&o));
        bipartite = Some(o);
        lap("bipartite", &mut timing);
    }

    Ok(RunReport {
        schema: SCHEMA.to_string(),
        spec: spec.cloned(),
        dim: gram.rows(),
        gram: gram.clone(),
        char_poly: chi,
        trace_field: trace,
        nonsplitting,
        ll,
        bipartite,
        status,
        timing_ms: timing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torelli_block_pipeline() {
        let r = certify_spec(&FamilySpec::TorelliG2Block { y: 2 }, &CertifyOptions::default()).unwrap();
        assert_eq!(r.status, Status::Issued);
        assert_eq!(r.trace_field.issued().unwrap().d, 4);
        for o in &r.nonsplitting {
            assert_eq!(o.issued().unwrap().stretch_degree, 8);
        }
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"schema\": \"pa-degree-forge/1\""));
    }

    #[test]
    fn ll_on_g1_block() {
        let opts = CertifyOptions { ll: Some(Some(2)), ..Default::default() };
        let r = certify_spec(&FamilySpec::G1Block { y: 12 }, &opts).unwrap();
        assert!(r.ll.unwrap().holds);
        assert_eq!(r.exit_code(), 0);
        let torelli = certify_spec(&FamilySpec::TorelliG2Block { y: 2 }, &opts);
        assert!(torelli.is_err());
    }

    #[test]
    fn status_codes() {
        let opts = CertifyOptions { bipartite: true, ..Default::default() };
        let r = certify_matrix(&IntMatrix::from_i64_rows(&[&[4]]), &opts).unwrap();
        assert_eq!(r.exit_code(), 2);
        let r = certify_matrix(&IntMatrix::from_i64_rows(&[&[2, 2], &[2, 2]]), &opts).unwrap();
        assert_eq!(r.exit_code(), 1);
        let bad = CertifyOptions { prime_budget: 0, ..Default::default() };
        assert!(certify_matrix(&IntMatrix::from_i64_rows(&[&[2]]), &bad).is_err());
    }
}
