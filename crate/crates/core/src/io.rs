//! Line-oriented text formats.
//!
//! An algebra document:
//!
//! ```text
//! # comments run to end of line
//! dim 2
//! basis e1 e2
//! params lambda
//! complete skew-binary
//! complete skew-ternary
//! binary e1 e2 = -e2
//! ternary e1 e2 e1 = lambda*e2
//! alpha e1 = e1
//! ```
//!
//! `basis` defaults to `e1 .. en` and `params` to none. Right-hand sides are
//! linear combinations of basis labels with coefficients in the scalar
//! grammar. Unassigned constants are zero; unassigned `alpha` columns are
//! the identity. A map document has the same header and only `alpha` lines.
//!
//! A constraint document has an `unknowns` line, an optional `params` line,
//! then one polynomial per line, each read as `p = 0`.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{HomAlgebra, LinearMap, Vector};
use crate::coeff::{parse_poly, Scalar};
use crate::error::ParseError;
use crate::lex::{tokenize, Cursor, Spanned, Tok};
use crate::morphism::MorphismConstraintSystem;

/// Render `Σ c_i e_i` with basis labels; `0` for the zero vector.
pub fn format_vector(v: &Vector, labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.coords().iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let term = if c.is_one() {
            label.clone()
        } else if (-c).is_one() {
            format!("-{label}")
        } else if c.is_compound() {
            format!("({c})*{label}")
        } else {
            format!("{c}*{label}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// `e1 -> ..., e2 -> ...` on one line.
pub fn format_map_inline(m: &LinearMap, labels: &[String]) -> String {
    labels
        .iter()
        .zip(m.columns())
        .map(|(l, c)| format!("{l} -> {}", format_vector(c, labels)))
        .collect::<Vec<_>>()
        .join(", ")
}

struct Header {
    dim: usize,
    basis: Vec<String>,
    params: BTreeSet<String>,
    skew_binary: bool,
    skew_ternary: bool,
}

/// Comment-stripped, tokenized lines with their 1-based line numbers.
fn lines(text: &str) -> Result<Vec<(usize, String, Vec<Spanned>)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokenize(line).map_err(|e| e.at_line(i + 1))?;
        if !toks.is_empty() {
            out.push((i + 1, line.to_string(), toks));
        }
    }
    Ok(out)
}

fn keyword(toks: &[Spanned]) -> Option<&str> {
    match toks.first().map(|s| &s.tok) {
        Some(Tok::Ident(k)) => Some(k.as_str()),
        _ => None,
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(col, msg).at_line(line)
}

fn ident_list(cur: &mut Cursor<'_>) -> Result<Vec<(String, usize)>, ParseError> {
    let mut out = Vec::new();
    while !cur.at_end() {
        let col = cur.col();
        out.push((cur.expect_ident()?, col));
    }
    Ok(out)
}

/// Read header lines up to the first stanza; returns the header and the rest.
fn parse_header<'a>(
    ls: &'a [(usize, String, Vec<Spanned>)],
    allow_directives: bool,
) -> Result<(Header, &'a [(usize, String, Vec<Spanned>)]), ParseError> {
    let mut dim = None;
    let mut basis: Option<Vec<String>> = None;
    let mut params = BTreeSet::new();
    let (mut skew_binary, mut skew_ternary) = (false, false);
    let mut idx = 0;
    while idx < ls.len() {
        let (ln, src, toks) = &ls[idx];
        let mut cur = Cursor::new(toks, src.chars().count());
        match keyword(toks) {
            Some("dim") => {
                cur.next();
                if dim.is_some() {
                    return Err(err(*ln, toks[0].col, "duplicate `dim` line"));
                }
                let col = cur.col();
                let n = cur.expect_int().map_err(|e| e.at_line(*ln))?;
                cur.expect_end().map_err(|e| e.at_line(*ln))?;
                let n: usize = n.try_into().map_err(|_| err(*ln, col, "dimension out of range"))?;
                if n == 0 {
                    return Err(err(*ln, col, "dimension must be positive"));
                }
                dim = Some(n);
            }
            Some("basis") => {
                cur.next();
                let labels = ident_list(&mut cur).map_err(|e| e.at_line(*ln))?;
                let mut seen = BTreeSet::new();
                for (l, col) in &labels {
                    if !seen.insert(l.clone()) {
                        return Err(err(*ln, *col, format!("duplicate basis label `{l}`")));
                    }
                }
                basis = Some(labels.into_iter().map(|(l, _)| l).collect());
            }
            Some("params") => {
                cur.next();
                for (p, col) in ident_list(&mut cur).map_err(|e| e.at_line(*ln))? {
                    if !params.insert(p.clone()) {
                        return Err(err(*ln, col, format!("duplicate parameter `{p}`")));
                    }
                }
            }
            Some("complete") if allow_directives => {
                cur.next();
                let col = cur.col();
                let a = cur.expect_ident().map_err(|e| e.at_line(*ln))?;
                cur.expect(&Tok::Minus).map_err(|e| e.at_line(*ln))?;
                let b = cur.expect_ident().map_err(|e| e.at_line(*ln))?;
                cur.expect_end().map_err(|e| e.at_line(*ln))?;
                match (a.as_str(), b.as_str()) {
                    ("skew", "binary") => skew_binary = true,
                    ("skew", "ternary") => skew_ternary = true,
                    _ => return Err(err(*ln, col, format!("unknown directive `{a}-{b}`"))),
                }
            }
            _ => break,
        }
        idx += 1;
    }
    let first_line = ls.first().map_or(1, |l| l.0);
    let dim = dim.ok_or_else(|| err(first_line, 1, "missing `dim` line"))?;
    let basis = basis.unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
    if basis.len() != dim {
        return Err(err(first_line, 1, format!("basis has {} labels, dim is {dim}", basis.len())));
    }
    if let Some(p) = params.iter().find(|p| basis.contains(p)) {
        return Err(err(first_line, 1, format!("`{p}` is both a basis label and a parameter")));
    }
    Ok((Header { dim, basis, params, skew_binary, skew_ternary }, &ls[idx..]))
}

fn label_index(h: &Header, cur: &mut Cursor<'_>, ln: usize) -> Result<usize, ParseError> {
    let col = cur.col();
    let l = cur.expect_ident().map_err(|e| e.at_line(ln))?;
    h.basis
        .iter()
        .position(|b| *b == l)
        .ok_or_else(|| err(ln, col, format!("undeclared basis label `{l}`")))
}

/// Parse `= <linear combination>` to the end of the line.
fn parse_rhs(h: &Header, cur: &mut Cursor<'_>, ln: usize) -> Result<Vector, ParseError> {
    cur.expect(&Tok::Eq).map_err(|e| e.at_line(ln))?;
    let col = cur.col();
    let known = |n: &str| h.basis.iter().any(|b| b == n) || h.params.contains(n);
    let poly = parse_poly(cur, &known).map_err(|e| e.at_line(ln))?;
    cur.expect_end().map_err(|e| e.at_line(ln))?;
    let mut coords = vec![Scalar::zero(); h.dim];
    for (mono, c) in poly.terms() {
        let mut slot = None;
        let mut coeff = Scalar::from_rational(c.clone());
        for (name, e) in mono.factors() {
            match h.basis.iter().position(|b| b == name) {
                Some(i) if *e == 1 && slot.is_none() => slot = Some(i),
                Some(_) => return Err(err(ln, col, "right-hand side is not linear in the basis labels")),
                None => coeff = &coeff * &Scalar::param(name).pow(u64::from(*e)),
            }
        }
        let i = slot.ok_or_else(|| err(ln, col, "right-hand side has a term without a basis label"))?;
        coords[i] += coeff;
    }
    Ok(Vector::from_coords(coords))
}

fn fmt_tuple(h: &Header, idx: &[usize]) -> String {
    idx.iter().map(|&i| h.basis[i].as_str()).collect::<Vec<_>>().join(" ")
}

type Assigned = BTreeMap<Vec<usize>, (Vector, usize, usize)>;

fn assign(map: &mut Assigned, h: &Header, key: Vec<usize>, v: Vector, ln: usize, col: usize) -> Result<(), ParseError> {
    if let Some((_, prev, _)) = map.get(&key) {
        return Err(err(ln, col, format!("duplicate assignment for `{}` (first on line {prev})", fmt_tuple(h, &key))));
    }
    map.insert(key, (v, ln, col));
    Ok(())
}

/// Fill `(j, i, ..)` with `−(i, j, ..)` and force `(i, i, ..)` to zero.
fn skew_complete(map: &mut Assigned, h: &Header, what: &str) -> Result<(), ParseError> {
    let keys: Vec<Vec<usize>> = map.keys().cloned().collect();
    for key in keys {
        let (v, ln, col) = map[&key].clone();
        if key[0] == key[1] {
            if !v.is_zero() {
                return Err(err(
                    ln,
                    col,
                    format!("conflicting assignment: `{} {}` must be 0 under skew completion", what, fmt_tuple(h, &key)),
                ));
            }
            continue;
        }
        let mut swapped = key.clone();
        swapped.swap(0, 1);
        match map.get(&swapped) {
            Some((w, wl, wc)) => {
                if *w != v.neg() {
                    let (l, c) = if *wl > ln || (*wl == ln && *wc > col) { (*wl, *wc) } else { (ln, col) };
                    return Err(err(
                        l,
                        c,
                        format!(
                            "conflicting assignment: `{what} {}` and `{what} {}` are not opposite",
                            fmt_tuple(h, &key),
                            fmt_tuple(h, &swapped)
                        ),
                    ));
                }
            }
            None => {
                map.insert(swapped, (v.neg(), ln, col));
            }
        }
    }
    Ok(())
}

fn build_twist(h: &Header, alphas: &Assigned) -> LinearMap {
    let cols = (0..h.dim)
        .map(|j| alphas.get(&vec![j]).map_or_else(|| Vector::basis(h.dim, j), |(v, _, _)| v.clone()))
        .collect();
    LinearMap::from_columns(cols).expect("square")
}

pub fn parse_algebra(text: &str) -> Result<HomAlgebra, ParseError> {
    let ls = lines(text)?;
    let (h, body) = parse_header(&ls, true)?;
    let mut bin = Assigned::new();
    let mut ter = Assigned::new();
    let mut alp = Assigned::new();
    for (ln, src, toks) in body {
        let ln = *ln;
        let mut cur = Cursor::new(toks, src.chars().count());
        let col = toks[0].col;
        match keyword(toks) {
            Some("binary") => {
                cur.next();
                let key = vec![label_index(&h, &mut cur, ln)?, label_index(&h, &mut cur, ln)?];
                let v = parse_rhs(&h, &mut cur, ln)?;
                assign(&mut bin, &h, key, v, ln, col)?;
            }
            Some("ternary") => {
                cur.next();
                let key = vec![
                    label_index(&h, &mut cur, ln)?,
                    label_index(&h, &mut cur, ln)?,
                    label_index(&h, &mut cur, ln)?,
                ];
                let v = parse_rhs(&h, &mut cur, ln)?;
                assign(&mut ter, &h, key, v, ln, col)?;
            }
            Some("alpha") => {
                cur.next();
                let key = vec![label_index(&h, &mut cur, ln)?];
                let v = parse_rhs(&h, &mut cur, ln)?;
                assign(&mut alp, &h, key, v, ln, col)?;
            }
            Some(k @ ("dim" | "basis" | "params" | "complete")) => {
                return Err(err(ln, col, format!("`{k}` must come before the first assignment")));
            }
            _ => return Err(err(ln, col, "expected `binary`, `ternary` or `alpha`")),
        }
    }
    if h.skew_binary {
        skew_complete(&mut bin, &h, "binary")?;
    }
    if h.skew_ternary {
        skew_complete(&mut ter, &h, "ternary")?;
    }
    let mut a = HomAlgebra::new(h.dim).with_basis(h.basis.clone()).expect("length checked");
    a.declare_params(h.params.iter().cloned());
    for (k, (v, _, _)) in bin {
        a.set_binary(k[0], k[1], v).expect("dimension");
    }
    for (k, (v, _, _)) in ter {
        a.set_ternary(k[0], k[1], k[2], v).expect("dimension");
    }
    a.set_twist(build_twist(&h, &alp)).expect("dimension");
    Ok(a)
}

fn emit_header(out: &mut String, basis: &[String], params: &BTreeSet<String>) {
    out.push_str(&format!("dim {}\n", basis.len()));
    out.push_str(&format!("basis {}\n", basis.join(" ")));
    if !params.is_empty() {
        out.push_str(&format!("params {}\n", params.iter().cloned().collect::<Vec<_>>().join(" ")));
    }
}

fn emit_alpha(out: &mut String, m: &LinearMap, basis: &[String]) {
    for (l, c) in basis.iter().zip(m.columns()) {
        out.push_str(&format!("alpha {l} = {}\n", format_vector(c, basis)));
    }
}

/// Canonical text: every nonzero constant listed explicitly in index order;
/// `alpha` lines only when the twist is not the identity.
pub fn emit_algebra(a: &HomAlgebra) -> String {
    let basis = a.basis();
    let d = a.dim();
    let mut params = a.params().clone();
    params.extend(a.variables());
    let mut out = String::new();
    emit_header(&mut out, basis, &params);
    for i in 0..d {
        for j in 0..d {
            let v = a.binary(i, j);
            if !v.is_zero() {
                out.push_str(&format!("binary {} {} = {}\n", basis[i], basis[j], format_vector(v, basis)));
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = a.ternary(i, j, k);
                if !v.is_zero() {
                    out.push_str(&format!(
                        "ternary {} {} {} = {}\n",
                        basis[i],
                        basis[j],
                        basis[k],
                        format_vector(v, basis)
                    ));
                }
            }
        }
    }
    if !a.twist().is_identity() {
        emit_alpha(&mut out, a.twist(), basis);
    }
    out
}

/// A linear map with its basis labels and declared parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub basis: Vec<String>,
    pub params: BTreeSet<String>,
    pub map: LinearMap,
}

pub fn parse_map(text: &str) -> Result<MapDocument, ParseError> {
    let ls = lines(text)?;
    let (h, body) = parse_header(&ls, false)?;
    let mut alp = Assigned::new();
    for (ln, src, toks) in body {
        let ln = *ln;
        let mut cur = Cursor::new(toks, src.chars().count());
        let col = toks[0].col;
        if keyword(toks) != Some("alpha") {
            return Err(err(ln, col, "expected `alpha`"));
        }
        cur.next();
        let key = vec![label_index(&h, &mut cur, ln)?];
        let v = parse_rhs(&h, &mut cur, ln)?;
        assign(&mut alp, &h, key, v, ln, col)?;
    }
    let map = build_twist(&h, &alp);
    Ok(MapDocument { basis: h.basis, params: h.params, map })
}

/// Every column is written out, identity columns included.
pub fn emit_map(m: &LinearMap, basis: &[String]) -> String {
    let mut out = String::new();
    emit_header(&mut out, basis, &m.variables());
    emit_alpha(&mut out, m, basis);
    out
}

pub fn emit_constraints(sys: &MorphismConstraintSystem) -> String {
    let mut out = format!("unknowns {}\n", sys.unknowns.join(" "));
    if !sys.params.is_empty() {
        out.push_str(&format!("params {}\n", sys.params.iter().cloned().collect::<Vec<_>>().join(" ")));
    }
    for eq in &sys.equations {
        out.push_str(&format!("{eq}\n"));
    }
    out
}

pub fn parse_constraints(text: &str) -> Result<MorphismConstraintSystem, ParseError> {
    let ls = lines(text)?;
    let mut it = ls.iter().peekable();
    let (ln, src, toks) = it.next().ok_or_else(|| err(1, 1, "missing `unknowns` line"))?;
    if keyword(toks) != Some("unknowns") {
        return Err(err(*ln, toks[0].col, "expected `unknowns`"));
    }
    let mut cur = Cursor::new(toks, src.chars().count());
    cur.next();
    let unknowns: Vec<String> =
        ident_list(&mut cur).map_err(|e| e.at_line(*ln))?.into_iter().map(|(u, _)| u).collect();
    let dim = (0..=unknowns.len()).find(|d| d * d == unknowns.len()).filter(|d| *d > 0).ok_or_else(|| {
        err(*ln, 1, format!("{} unknowns do not form a square matrix", unknowns.len()))
    })?;
    let mut params = BTreeSet::new();
    if let Some((pl, psrc, ptoks)) = it.peek() {
        if keyword(ptoks) == Some("params") {
            let mut c = Cursor::new(ptoks, psrc.chars().count());
            c.next();
            params = ident_list(&mut c).map_err(|e| e.at_line(*pl))?.into_iter().map(|(p, _)| p).collect();
            it.next();
        }
    }
    let mut equations = Vec::new();
    for (ln, src, toks) in it {
        let mut c = Cursor::new(toks, src.chars().count());
        let known = |n: &str| unknowns.iter().any(|u| u == n) || params.contains(n);
        let p = parse_poly(&mut c, &known).map_err(|e| e.at_line(*ln))?;
        c.expect_end().map_err(|e| e.at_line(*ln))?;
        equations.push(p);
    }
    Ok(MorphismConstraintSystem { dim, unknowns, params, equations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogParams, Sign};
    use crate::morphism::generate_constraints;

    const A1_DOC: &str = "\
# the algebra A1
dim 2
complete skew-binary
complete skew-ternary
binary e1 e2 = -e2
ternary e1 e2 e1 = e1
ternary e1 e2 e2 = -e2
";

    #[test]
    fn a1_document_matches_catalog() {
        let a = parse_algebra(A1_DOC).unwrap();
        assert_eq!(a, catalog::get("A1", &CatalogParams::default()).unwrap());
    }

    #[test]
    fn skew_diagonal_conflict() {
        let e = parse_algebra("dim 2\ncomplete skew-binary\nbinary e1 e1 = e2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("conflicting"), "{e}");
    }

    #[test]
    fn skew_pair_conflict_reports_later_line() {
        let e = parse_algebra("dim 2\ncomplete skew-binary\nbinary e1 e2 = e2\nbinary e2 e1 = e2\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("not opposite"));
        assert!(parse_algebra("dim 2\ncomplete skew-binary\nbinary e1 e2 = e2\nbinary e2 e1 = -e2\n").is_ok());
    }

    #[test]
    fn empty_dim_one_is_zero_algebra() {
        let a = parse_algebra("dim 1\n").unwrap();
        assert!(a.is_zero_algebra());
        assert!(a.twist().is_identity());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_algebra("dim 2\nbinary e1 e3 = e1\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 11));
        let e = parse_algebra("dim 2\nbinary e1 e2 = mu*e1\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 16));
        assert!(e.message.contains("undeclared symbol `mu`"));
        let e = parse_algebra("dim 2\nbinary e1 e2 = e1\nbinary e1 e2 = e2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("duplicate"));
        let e = parse_algebra("dim 2\nbinary e1 e2 = e1*e2\n").unwrap_err();
        assert!(e.message.contains("not linear"));
        let e = parse_algebra("dim 2\nbinary e1 e2 = 1 + e2\n").unwrap_err();
        assert!(e.message.contains("without a basis label"));
        assert!(parse_algebra("basis x y\n").is_err());
        assert!(parse_algebra("dim 2\nbasis x\n").is_err());
        let e = parse_algebra("dim 2\nbinary e1 e2 = e1\ndim 3\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn custom_basis_and_params() {
        let doc = "dim 2\nbasis x y\nparams t\nbinary x y = t^2*x - 1/2*y\nalpha y = (t + 1)*y\n";
        let a = parse_algebra(doc).unwrap();
        assert_eq!(a.basis(), &["x".to_string(), "y".to_string()]);
        let text = emit_algebra(&a);
        assert_eq!(
            text,
            "dim 2\nbasis x y\nparams t\nbinary x y = t^2*x - 1/2*y\nalpha x = x\nalpha y = (t + 1)*y\n"
        );
        assert_eq!(parse_algebra(&text).unwrap(), a);
    }

    #[test]
    fn map_emission() {
        let m = catalog::twisting_map("HB_A2", &CatalogParams::default()).unwrap();
        let basis = ["e1".to_string(), "e2".to_string()];
        let text = emit_map(&m, &basis);
        assert_eq!(text, "dim 2\nbasis e1 e2\nparams a b\nalpha e1 = e1 + a*e2\nalpha e2 = b*e2\n");
        let doc = parse_map(&text).unwrap();
        assert_eq!(doc.map, m);
        assert!(parse_map("dim 2\nbinary e1 e2 = e1\n").is_err());
    }

    #[test]
    fn round_trips_on_catalog() {
        let signs = CatalogParams { sign: Some(Sign::Minus), ..Default::default() };
        for name in ["A1", "A2", "A3", "HB_A2", "HB_A3"] {
            let a = catalog::build(name, &signs).unwrap();
            let text = emit_algebra(&a);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, a, "{name}");
            assert_eq!(emit_algebra(&back), text, "{name}");
        }
    }

    #[test]
    fn constraint_round_trip() {
        let sys = generate_constraints(&catalog::get("A2", &CatalogParams::default()).unwrap(), false);
        let text = emit_constraints(&sys);
        assert!(text.starts_with("unknowns a1 a2 b1 b2\nparams lambda\n"));
        assert_eq!(parse_constraints(&text).unwrap(), sys);
        assert!(parse_constraints("unknowns a b c\n").is_err());
    }

    #[test]
    fn vector_formatting() {
        let labels = ["e1".to_string(), "e2".to_string()];
        let declared: BTreeSet<String> = ["a".to_string()].into();
        let v = Vector::from_coords(vec![Scalar::parse("-a", &declared).unwrap(), Scalar::parse("a - 1", &declared).unwrap()]);
        assert_eq!(format_vector(&v, &labels), "-a*e1 + (a - 1)*e2");
        assert_eq!(format_vector(&Vector::zero(2), &labels), "0");
    }
}
