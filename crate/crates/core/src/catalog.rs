//! The 2-dimensional Bol algebras `A1`, `A2`, `A3`, their twisted Hom-Bol
//! versions `HB_A2`, `HB_A3`, and the published closed forms for them.
//!
//! Twisted entries are built by the twisting constructor from the untwisted
//! algebra and the published morphism; the published structure constants are
//! kept separately as text and only used by [`cross_check`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{weak_morphism_failure, BasisTuple, HomAlgebra, LinearMap, Vector};
use crate::coeff::{Rational, Scalar};
use crate::constructions::{nth_derived, yau_twist_unchecked, ConstructionError};

pub const LAMBDA: &str = "lambda";
pub const A: &str = "a";
pub const B: &str = "b";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("`{0}` needs a sign (+ or -)")]
    MissingSign(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Values for the catalog parameters; `None` leaves a parameter symbolic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogParams {
    pub lambda: Option<Rational>,
    pub a: Option<Rational>,
    pub b: Option<Rational>,
    pub sign: Option<Sign>,
}

impl CatalogParams {
    fn bindings(&self) -> BTreeMap<String, Scalar> {
        let mut m = BTreeMap::new();
        for (name, v) in [(LAMBDA, &self.lambda), (A, &self.a), (B, &self.b)] {
            if let Some(r) = v {
                m.insert(name.to_string(), Scalar::from_rational(r.clone()));
            }
        }
        m
    }
}

/// Name, parameters and description of a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub needs_sign: bool,
    pub description: &'static str,
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "A1",
        params: &[],
        needs_sign: false,
        description: "e1*e2 = -e2, [e1,e2,e1] = e1, [e1,e2,e2] = -e2",
    },
    CatalogEntry {
        name: "A2",
        params: &[LAMBDA],
        needs_sign: false,
        description: "e1*e2 = -e2, [e1,e2,e1] = lambda*e2, [e1,e2,e2] = 0",
    },
    CatalogEntry {
        name: "A3",
        params: &[LAMBDA],
        needs_sign: true,
        description: "e1*e2 = -e2, [e1,e2,e1] = lambda*e2, [e1,e2,e2] = +-e1",
    },
    CatalogEntry {
        name: "HB_A2",
        params: &[LAMBDA, A, B],
        needs_sign: false,
        description: "A2 twisted along e1 -> e1 + a*e2, e2 -> b*e2",
    },
    CatalogEntry {
        name: "HB_A3",
        params: &[LAMBDA, B],
        needs_sign: true,
        description: "A3 twisted along e1 -> e1, e2 -> b*e2",
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

fn e(i: usize) -> Vector {
    Vector::basis(2, i)
}

fn sym(name: &str, p: &CatalogParams) -> Scalar {
    let bound = match name {
        LAMBDA => &p.lambda,
        A => &p.a,
        _ => &p.b,
    };
    bound.clone().map_or_else(|| Scalar::param(name), Scalar::from_rational)
}

fn sign_of(name: &str, p: &CatalogParams) -> Result<Sign, CatalogError> {
    p.sign.ok_or_else(|| CatalogError::MissingSign(name.to_string()))
}

/// Skew-completed 2-dimensional algebra from `e1*e2`, `[e1,e2,e1]`, `[e1,e2,e2]`.
fn two_dim(binary12: Vector, t121: Vector, t122: Vector) -> HomAlgebra {
    let mut h = HomAlgebra::new(2);
    h.set_binary(1, 0, binary12.neg()).expect("dim 2");
    h.set_binary(0, 1, binary12).expect("dim 2");
    h.set_ternary(1, 0, 0, t121.neg()).expect("dim 2");
    h.set_ternary(0, 1, 0, t121).expect("dim 2");
    h.set_ternary(1, 0, 1, t122.neg()).expect("dim 2");
    h.set_ternary(0, 1, 1, t122).expect("dim 2");
    h
}

/// One of the untwisted Bol algebras `A1`, `A2`, `A3`.
pub fn get(name: &str, params: &CatalogParams) -> Result<HomAlgebra, CatalogError> {
    match name {
        "A1" => Ok(two_dim(e(1).neg(), e(0), e(1).neg())),
        "A2" => Ok(two_dim(e(1).neg(), e(1).scale(&sym(LAMBDA, params)), Vector::zero(2))),
        "A3" => {
            let s = sign_of(name, params)?;
            let t122 = e(0).scale(&Scalar::from_int(s.as_int()));
            Ok(two_dim(e(1).neg(), e(1).scale(&sym(LAMBDA, params)), t122))
        }
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

/// The published morphism used to twist `A2` (or `A3`).
pub fn twisting_map(name: &str, params: &CatalogParams) -> Result<LinearMap, CatalogError> {
    let (a, b) = (sym(A, params), sym(B, params));
    match name {
        "HB_A2" => Ok(LinearMap::from_rows(vec![vec![Scalar::one(), Scalar::zero()], vec![a, b]]).expect("2x2")),
        "HB_A3" => Ok(LinearMap::diagonal(vec![Scalar::one(), b])),
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

fn base_of(name: &str) -> Option<&'static str> {
    match name {
        "HB_A2" => Some("A2"),
        "HB_A3" => Some("A3"),
        _ => None,
    }
}

/// `HB_A2` or `HB_A3`: the twisting formula applied to the base algebra and
/// its published morphism.
///
/// The map is applied as given. For `HB_A3` it is an endomorphism of `A3`
/// only when `b^2 = 1`, so for other `b` the result is not Hom-Bol.
pub fn get_twisted(name: &str, params: &CatalogParams) -> Result<HomAlgebra, CatalogError> {
    let base = base_of(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let alg = get(base, params)?;
    Ok(yau_twist_unchecked(&alg, &twisting_map(name, params)?))
}

/// Any catalog entry by name.
pub fn build(name: &str, params: &CatalogParams) -> Result<HomAlgebra, CatalogError> {
    if base_of(name).is_some() {
        get_twisted(name, params)
    } else {
        get(name, params)
    }
}

/// A published structure constant: coordinate `coord` of the value at `tuple`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedConstant {
    pub source: String,
    pub tuple: BasisTuple,
    pub coord: usize,
    pub text: String,
}

impl PrintedConstant {
    pub fn value(&self) -> Scalar {
        let declared: BTreeSet<String> = [LAMBDA, A, B].iter().map(|s| s.to_string()).collect();
        Scalar::parse(&self.text, &declared).expect("published forms use the scalar grammar")
    }
}

fn printed_vector(out: &mut Vec<PrintedConstant>, source: &str, tuple: BasisTuple, coords: [String; 2]) {
    for (coord, text) in coords.into_iter().enumerate() {
        out.push(PrintedConstant { source: source.to_string(), tuple: tuple.clone(), coord, text });
    }
}

fn geometric_text(terms: u64) -> String {
    let mut parts = vec!["1".to_string()];
    for k in 1..terms {
        parts.push(if k == 1 { B.to_string() } else { format!("{B}^{k}") });
    }
    parts.join(" + ")
}

/// Published constants of `name` at derived index `n`. For the twisted
/// entries, index 0 also includes the published twisted algebra itself.
pub fn printed_forms(name: &str, n: u32, sign: Option<Sign>) -> Result<Vec<PrintedConstant>, CatalogError> {
    let mut out = Vec::new();
    let z = || "0".to_string();
    let s = |v: i64| v.to_string();
    let sign_int = || sign.map(Sign::as_int).ok_or_else(|| CatalogError::MissingSign(name.to_string()));
    let bin = BasisTuple::Binary(0, 1);
    let t121 = BasisTuple::Ternary(0, 1, 0);
    let t122 = BasisTuple::Ternary(0, 1, 1);
    match name {
        "A1" | "A2" | "A3" => {
            let src = "listing";
            printed_vector(&mut out, src, bin, [z(), s(-1)]);
            let (t1, t2) = match name {
                "A1" => ([s(1), z()], [z(), s(-1)]),
                "A2" => ([z(), LAMBDA.to_string()], [z(), z()]),
                _ => ([z(), LAMBDA.to_string()], [s(sign_int()?), z()]),
            };
            printed_vector(&mut out, src, t121, t1);
            printed_vector(&mut out, src, t122, t2);
            printed_vector(&mut out, src, BasisTuple::Twist(0), [s(1), z()]);
            printed_vector(&mut out, src, BasisTuple::Twist(1), [z(), s(1)]);
        }
        "HB_A2" | "HB_A3" => {
            let hb3 = name == "HB_A3";
            // published {e1,e2,e2}: 0, or the opposite of the base sign
            let t122_val = || -> Result<[String; 2], CatalogError> {
                Ok(if hb3 { [s(-sign_int()?), z()] } else { [z(), z()] })
            };
            if n == 0 {
                let src = "twisted";
                printed_vector(&mut out, src, bin.clone(), [z(), format!("-{B}")]);
                printed_vector(&mut out, src, t121.clone(), [z(), format!("{LAMBDA}*{B}")]);
                printed_vector(&mut out, src, t122.clone(), t122_val()?);
                let e1 = if hb3 { z() } else { A.to_string() };
                printed_vector(&mut out, src, BasisTuple::Twist(0), [s(1), e1]);
                printed_vector(&mut out, src, BasisTuple::Twist(1), [z(), B.to_string()]);
            }
            let src = "derived";
            let p = 1u64 << n;
            printed_vector(&mut out, src, bin, [z(), format!("-{B}^{}", p - 1)]);
            printed_vector(&mut out, src, t121, [z(), format!("{LAMBDA}*{B}^{}", 2 * p - 1)]);
            printed_vector(&mut out, src, t122, t122_val()?);
            let e1 = if hb3 { z() } else { format!("{A}*({})", geometric_text(p)) };
            printed_vector(&mut out, src, BasisTuple::Twist(0), [s(1), e1]);
            printed_vector(&mut out, src, BasisTuple::Twist(1), [z(), format!("{B}^{p}")]);
        }
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    }
    Ok(out)
}

fn constant_of(h: &HomAlgebra, tuple: &BasisTuple, coord: usize) -> Scalar {
    match *tuple {
        BasisTuple::Binary(i, j) => h.binary(i, j).coord(coord).clone(),
        BasisTuple::Ternary(i, j, k) => h.ternary(i, j, k).coord(coord).clone(),
        BasisTuple::Twist(j) => h.twist().entry(coord, j).clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyRow {
    pub source: String,
    pub tuple: BasisTuple,
    pub coord: usize,
    pub printed: Scalar,
    pub constructed: Scalar,
}

impl DiscrepancyRow {
    pub fn is_match(&self) -> bool {
        self.printed == self.constructed
    }
}

/// Constant-by-constant comparison of a constructed algebra with its
/// published closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub name: String,
    pub n: u32,
    pub sign: Option<Sign>,
    pub rows: Vec<DiscrepancyRow>,
    pub notes: Vec<String>,
}

impl DiscrepancyReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &DiscrepancyRow> {
        self.rows.iter().filter(|r| !r.is_match())
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(DiscrepancyRow::is_match)
    }

    /// The row for a given source, tuple and coordinate.
    pub fn row(&self, source: &str, tuple: &BasisTuple, coord: usize) -> Option<&DiscrepancyRow> {
        self.rows.iter().find(|r| r.source == source && r.tuple == *tuple && r.coord == coord)
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cross-check {} n={}", self.name, self.n)?;
        if let Some(s) = self.sign {
            write!(f, " sign={s}")?;
        }
        writeln!(f)?;
        for r in &self.rows {
            let label = match r.tuple {
                BasisTuple::Twist(j) => format!("twist e{}", j + 1),
                ref t => t.to_string(),
            };
            writeln!(
                f,
                "{:<8} {:<8} {} [e{}] printed: {} constructed: {}",
                if r.is_match() { "MATCH" } else { "MISMATCH" },
                r.source,
                label,
                r.coord + 1,
                r.printed,
                r.constructed
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "summary: {} of {} constants mismatch", self.mismatches().count(), self.rows.len())
    }
}

/// Compare the `n`th derived algebra of a catalog entry (as constructed)
/// with the published closed forms. Unbound parameters stay symbolic.
pub fn cross_check(name: &str, n: u32, params: &CatalogParams) -> Result<DiscrepancyReport, CatalogError> {
    let printed = printed_forms(name, n, params.sign)?;
    let h = build(name, params)?;
    let derived = nth_derived(&h, n)?;
    let bindings = params.bindings();
    let mut rows: Vec<DiscrepancyRow> = Vec::new();
    for p in &printed {
        let source_alg = if p.source == "twisted" { &h } else { &derived };
        rows.push(DiscrepancyRow {
            source: p.source.clone(),
            tuple: p.tuple.clone(),
            coord: p.coord,
            printed: p.value().substitute(&bindings),
            constructed: constant_of(source_alg, &p.tuple, p.coord),
        });
    }
    let mut notes = Vec::new();
    if let Some(base) = base_of(name) {
        let alg = get(base, params)?;
        let beta = twisting_map(name, params)?;
        if let Some(fail) = weak_morphism_failure(&beta, &alg, &alg).map_err(ConstructionError::from)? {
            notes.push(format!(
                "the twisting map is not an endomorphism of {base} for these parameters (fails at {}); \
                 the constructed algebra is the twisting formula applied regardless",
                fail.tuple
            ));
        }
    }
    Ok(DiscrepancyReport { name: name.to_string(), n, sign: params.sign, rows, notes })
}
