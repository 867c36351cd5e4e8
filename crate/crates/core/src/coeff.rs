//! Exact scalars: polynomials in named parameters with rational coefficients.
//!
//! A [`Scalar`] is stored in canonical form (no zero coefficients, reduced
//! rationals, monomials sorted), so structural equality is ring equality and
//! "is zero" means "identically zero as a polynomial".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;
use crate::lex::{tokenize, Cursor, Tok};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A product of parameters with positive exponents, sorted by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0.iter().find(|(n, _)| n == name).map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut merged: BTreeMap<&str, u32> = BTreeMap::new();
        for (n, e) in self.0.iter().chain(other.0.iter()) {
            let slot = merged.entry(n.as_str()).or_insert(0);
            *slot = slot.checked_add(*e).expect("monomial exponent overflow");
        }
        Monomial(merged.into_iter().map(|(n, e)| (n.to_string(), e)).collect())
    }

    fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|(n, e)| (n.clone(), e.checked_mul(k).expect("monomial exponent overflow")))
                .collect(),
        )
    }

    /// Print order: higher total degree first, then by factor list.
    fn print_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        other.degree().cmp(&self.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (n, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of ℚ[parameters] in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::term(Monomial::one(), r)
    }

    pub fn param(name: &str) -> Self {
        Scalar::term(Monomial::var(name), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value when the scalar has no parameter dependence.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of monomial `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(n, _)| n.clone())).collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn pow(&self, k: u64) -> Scalar {
        if k == 0 {
            return Scalar::one();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let k32 = u32::try_from(k).expect("scalar power exponent too large");
            let c = num_traits::pow::Pow::pow(c, k32 as usize);
            return Scalar::term(m.pow(k32), c);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of parameters; unbound parameters stay symbolic.
    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> Scalar {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut value = Scalar::from_rational(c.clone());
            for (n, e) in &m.0 {
                match bindings.get(n) {
                    Some(s) => value = &value * &s.pow(u64::from(*e)),
                    None => kept = kept.mul(&Monomial(vec![(n.clone(), *e)])),
                }
            }
            for (vm, vc) in value.terms {
                out.add_term(vm.mul(&kept), vc);
            }
        }
        out
    }

    /// Leading term in print order (highest degree first).
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().min_by(|a, b| a.0.print_cmp(b.0))
    }

    /// Rescaled so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Scalar {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Scalar::zero(),
        }
    }

    fn print_order(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.print_cmp(b.0));
        v
    }

    /// True when printing needs parentheses to act as a product factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }

    /// Parse under the scalar grammar; every identifier must be in `declared`.
    pub fn parse(text: &str, declared: &BTreeSet<String>) -> Result<Scalar, ParseError> {
        let toks = tokenize(text)?;
        let mut cur = Cursor::new(&toks, text.chars().count());
        let s = parse_poly(&mut cur, &|name: &str| declared.contains(name))?;
        cur.expect_end()?;
        Ok(s)
    }

    /// Parse a parameter-free rational literal such as `-3/4`.
    pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
        let s = Scalar::parse(text, &BTreeSet::new())?;
        s.as_rational().ok_or_else(|| ParseError::new(1, "expected a rational constant"))
    }
}

/// Recursive-descent parser for the scalar grammar. Identifiers accepted by
/// `known` become polynomial variables; others are rejected as undeclared.
pub(crate) fn parse_poly(
    cur: &mut Cursor<'_>,
    known: &dyn Fn(&str) -> bool,
) -> Result<Scalar, ParseError> {
    let mut acc = Scalar::zero();
    let mut sign = if cur.eat(&Tok::Minus) {
        -1
    } else {
        cur.eat(&Tok::Plus);
        1
    };
    loop {
        let t = parse_product(cur, known)?;
        if sign < 0 {
            acc -= t;
        } else {
            acc += t;
        }
        if cur.eat(&Tok::Plus) {
            sign = 1;
        } else if cur.eat(&Tok::Minus) {
            sign = -1;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(cur: &mut Cursor<'_>, known: &dyn Fn(&str) -> bool) -> Result<Scalar, ParseError> {
    let mut acc = parse_power(cur, known)?;
    loop {
        if cur.eat(&Tok::Star) {
            let f = parse_power(cur, known)?;
            acc = &acc * &f;
        } else if cur.peek() == Some(&Tok::Slash) {
            let col = cur.col();
            cur.next();
            let d = cur.expect_int()?;
            if d.is_zero() {
                return Err(ParseError::new(col, "division by zero"));
            }
            acc = acc.scale(&BigRational::new(BigInt::one(), d));
        } else {
            return Ok(acc);
        }
    }
}

fn parse_power(cur: &mut Cursor<'_>, known: &dyn Fn(&str) -> bool) -> Result<Scalar, ParseError> {
    let base = parse_atom(cur, known)?;
    if cur.eat(&Tok::Caret) {
        let col = cur.col();
        let e = cur.expect_int()?;
        let e = e
            .to_u32()
            .ok_or_else(|| ParseError::new(col, "exponent out of range"))?;
        Ok(base.pow(u64::from(e)))
    } else {
        Ok(base)
    }
}

fn parse_atom(cur: &mut Cursor<'_>, known: &dyn Fn(&str) -> bool) -> Result<Scalar, ParseError> {
    let col = cur.col();
    match cur.peek().cloned() {
        Some(Tok::Int(n)) => {
            cur.next();
            Ok(Scalar::from_rational(BigRational::from_integer(n)))
        }
        Some(Tok::Ident(name)) => {
            if !known(&name) {
                return Err(ParseError::new(col, format!("undeclared symbol `{name}`")));
            }
            cur.next();
            Ok(Scalar::param(&name))
        }
        Some(Tok::LParen) => {
            cur.next();
            let inner = parse_poly(cur, known)?;
            cur.expect(&Tok::RParen)?;
            Ok(inner)
        }
        Some(Tok::Minus) => {
            cur.next();
            Ok(-parse_power(cur, known)?)
        }
        _ => Err(cur.unexpected("number, parameter or `(`")),
    }
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, m: &Monomial, c: &Rational, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    if m.is_one() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{mag}*{m}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.print_order().into_iter().enumerate() {
            fmt_coeff_term(f, m, c, i == 0)?;
        }
        Ok(())
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= rhs;
        self
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}
