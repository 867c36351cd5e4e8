//! Multilinear identities: a small expression language, a validator that
//! enforces multilinearity, and an exhaustive basis-tuple checker.
//!
//! Because every accepted identity is multilinear, checking it on all tuples
//! of basis vectors decides it on the whole algebra. With symbolic
//! parameters in the structure constants, a pass means the residual is the
//! zero polynomial, i.e. the identity holds for every parameter value.

mod ast;
mod check;
mod parse;
mod suites;

use std::fmt;

use thiserror::Error;

pub use ast::{Expr, Identity};
pub use check::{check_identity, CompiledIdentity, Verdict};
pub use parse::{parse_identity, validate_multilinear, CYCLIC_SYMBOL, TWIST_SYMBOL};
pub use suites::{builtin, builtin_names};

use crate::algebra::HomAlgebra;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("syntax error at {0}")]
    Syntax(#[from] ParseError),
    #[error("identity `{identity}` is not multilinear: term `{term}` contains `{variable}` {count} times")]
    NotMultilinear { identity: String, term: String, variable: String, count: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("duplicate identity name `{0}`")]
    DuplicateName(String),
}

/// A named list of identities checked together.
#[derive(Clone, Debug)]
pub struct IdentitySuite {
    pub name: String,
    pub identities: Vec<Identity>,
    /// Read `A` in this suite as the ambient twist raised to this power.
    pub twist_exponent: Option<u32>,
}

impl IdentitySuite {
    pub fn new(name: &str, identities: Vec<Identity>) -> Self {
        IdentitySuite { name: name.to_string(), identities, twist_exponent: None }
    }

    /// Parse a suite file: one `name : identity` per line, `#` comments.
    pub fn parse(name: &str, text: &str) -> Result<Self, IdentityError> {
        let mut identities: Vec<Identity> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (id_name, body) = line.split_once(':').ok_or_else(|| {
                IdentityError::Syntax(ParseError::new(1, "expected `name : identity`").at_line(lineno + 1))
            })?;
            let id_name = id_name.trim();
            if id_name.is_empty() || id_name.contains(char::is_whitespace) {
                return Err(IdentityError::Syntax(
                    ParseError::new(1, "identity name must be a single word").at_line(lineno + 1),
                ));
            }
            if identities.iter().any(|i| i.name == id_name) {
                return Err(IdentityError::DuplicateName(id_name.to_string()));
            }
            let offset = raw.find(':').map_or(0, |p| p + 1) + (body.len() - body.trim_start().len());
            let id = parse_identity(id_name, body.trim()).map_err(|e| match e {
                IdentityError::Syntax(mut pe) => {
                    pe.col += offset;
                    IdentityError::Syntax(pe.at_line(lineno + 1))
                }
                other => other,
            })?;
            identities.push(id);
        }
        Ok(IdentitySuite::new(name, identities))
    }

    pub fn check(&self, alg: &HomAlgebra, twist_exponent: Option<u32>) -> SuiteReport {
        check_suite(alg, self, twist_exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: String,
    pub verdict: Verdict,
}

/// Per-identity outcome of a suite check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub twist_exponent: u32,
    pub basis: Vec<String>,
    pub results: Vec<IdentityResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.verdict.is_pass())
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.results.iter().filter(|r| !r.verdict.is_pass())
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.results.iter().find(|r| r.name == name).map(|r| &r.verdict)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (twist exponent {})", self.suite, self.twist_exponent)?;
        for r in &self.results {
            match &r.verdict {
                Verdict::Pass => writeln!(f, "PASS {}", r.name)?,
                Verdict::Counterexample { assignment, residual } => {
                    write!(f, "FAIL {} ", r.name)?;
                    check::format_counterexample(f, &self.basis, assignment, residual)?;
                    writeln!(f)?;
                }
            }
        }
        write!(f, "{}", if self.passed() { "result: PASS" } else { "result: FAIL" })
    }
}

/// Check every identity of `suite`; `twist_exponent` overrides the suite's own.
pub fn check_suite(alg: &HomAlgebra, suite: &IdentitySuite, twist_exponent: Option<u32>) -> SuiteReport {
    let e = twist_exponent.or(suite.twist_exponent).unwrap_or(1);
    let results = suite
        .identities
        .iter()
        .map(|id| IdentityResult { name: id.name.clone(), verdict: check_identity(alg, id, e) })
        .collect();
    SuiteReport { suite: suite.name.clone(), twist_exponent: e, basis: alg.basis().to_vec(), results }
}
