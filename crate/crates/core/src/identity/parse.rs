//! Parser for the identity language.
//!
//! ```text
//! identity := sum '=' sum
//! sum      := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational ['*']] product | '0'
//! product  := atom ('*' atom)*                  left-associative
//! atom     := ident | '(' sum ')' | '{' sum ',' sum ',' sum '}'
//!           | 'A' ['^' int] '(' sum ')' | 'cyc' '(' ident ',' ident ',' ident ';' sum ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ast::{Expr, Identity};
use super::IdentityError;
use crate::error::ParseError;
use crate::lex::{tokenize, Cursor, Tok};

pub const TWIST_SYMBOL: &str = "A";
pub const CYCLIC_SYMBOL: &str = "cyc";

pub fn parse_identity(name: &str, text: &str) -> Result<Identity, IdentityError> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks, text.chars().count());
    let lhs = parse_sum(&mut cur)?;
    cur.expect(&Tok::Eq)?;
    let rhs = parse_sum(&mut cur)?;
    cur.expect_end()?;
    let mut variables = Vec::new();
    lhs.collect_vars(&mut variables);
    rhs.collect_vars(&mut variables);
    let id = Identity { name: name.to_string(), lhs, rhs, variables };
    validate_multilinear(&id)?;
    Ok(id)
}

/// Every product term on either side must contain each free variable exactly once.
pub fn validate_multilinear(id: &Identity) -> Result<(), IdentityError> {
    for side in [&id.lhs, &id.rhs] {
        for (_, term) in side.expand() {
            let mut occ = Vec::new();
            term.occurrences(&mut occ);
            for v in &id.variables {
                let count = occ.iter().filter(|o| *o == v).count();
                if count != 1 {
                    return Err(IdentityError::NotMultilinear {
                        identity: id.name.clone(),
                        term: term.to_string(),
                        variable: v.clone(),
                        count,
                    });
                }
            }
        }
    }
    Ok(())
}

fn parse_sum(cur: &mut Cursor<'_>) -> Result<Expr, ParseError> {
    let mut terms = Vec::new();
    let mut negate = if cur.eat(&Tok::Minus) {
        true
    } else {
        cur.eat(&Tok::Plus);
        false
    };
    loop {
        let t = parse_term(cur)?;
        terms.push(if negate { negated(t) } else { t });
        if cur.eat(&Tok::Plus) {
            negate = false;
        } else if cur.eat(&Tok::Minus) {
            negate = true;
        } else {
            break;
        }
    }
    Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
}

fn negated(e: Expr) -> Expr {
    match e {
        Expr::Scaled(r, inner) => Expr::Scaled(-r, inner),
        Expr::Zero => Expr::Zero,
        other => Expr::Scaled(BigRational::from_integer(BigInt::from(-1)), Box::new(other)),
    }
}

fn starts_atom(tok: Option<&Tok>) -> bool {
    matches!(tok, Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::LBrace))
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<Expr, ParseError> {
    if let Some(Tok::Int(_)) = cur.peek() {
        let col = cur.col();
        let num = cur.expect_int()?;
        let coeff = if cur.eat(&Tok::Slash) {
            let den = cur.expect_int()?;
            if den.is_zero() {
                return Err(ParseError::new(col, "division by zero"));
            }
            BigRational::new(num, den)
        } else {
            BigRational::from_integer(num)
        };
        let had_star = cur.eat(&Tok::Star);
        if !had_star && !starts_atom(cur.peek()) {
            if coeff.is_zero() {
                return Ok(Expr::Zero);
            }
            return Err(ParseError::new(col, "a nonzero scalar must multiply an expression"));
        }
        let inner = parse_product(cur)?;
        return Ok(if coeff.is_zero() { Expr::Zero } else { Expr::Scaled(coeff, Box::new(inner)) });
    }
    parse_product(cur)
}

fn parse_product(cur: &mut Cursor<'_>) -> Result<Expr, ParseError> {
    let mut acc = parse_atom(cur)?;
    while cur.eat(&Tok::Star) {
        let rhs = parse_atom(cur)?;
        acc = Expr::Binary(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn parse_atom(cur: &mut Cursor<'_>) -> Result<Expr, ParseError> {
    let col = cur.col();
    match cur.peek().cloned() {
        Some(Tok::LParen) => {
            cur.next();
            let e = parse_sum(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(e)
        }
        Some(Tok::LBrace) => {
            cur.next();
            let a = parse_sum(cur)?;
            cur.expect(&Tok::Comma)?;
            let b = parse_sum(cur)?;
            cur.expect(&Tok::Comma)?;
            let c = parse_sum(cur)?;
            cur.expect(&Tok::RBrace)?;
            Ok(Expr::Ternary(Box::new(a), Box::new(b), Box::new(c)))
        }
        Some(Tok::Ident(name)) if name == TWIST_SYMBOL => {
            cur.next();
            let power = if cur.eat(&Tok::Caret) {
                let pcol = cur.col();
                cur.expect_int()?
                    .to_u32()
                    .ok_or_else(|| ParseError::new(pcol, "twist power out of range"))?
            } else {
                1
            };
            cur.expect(&Tok::LParen)?;
            let arg = parse_sum(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(if power == 0 { arg } else { Expr::Twist { power, arg: Box::new(arg) } })
        }
        Some(Tok::Ident(name)) if name == CYCLIC_SYMBOL => {
            cur.next();
            cur.expect(&Tok::LParen)?;
            let v1 = parse_var_name(cur)?;
            cur.expect(&Tok::Comma)?;
            let v2 = parse_var_name(cur)?;
            cur.expect(&Tok::Comma)?;
            let v3 = parse_var_name(cur)?;
            if v1 == v2 || v2 == v3 || v1 == v3 {
                return Err(ParseError::new(col, "cyc must bind three distinct variables"));
            }
            cur.expect(&Tok::Semi)?;
            let body = parse_sum(cur)?;
            cur.expect(&Tok::RParen)?;
            Ok(Expr::Cyclic { vars: [v1, v2, v3], body: Box::new(body) })
        }
        Some(Tok::Ident(_)) => Ok(Expr::Var(parse_var_name(cur)?)),
        _ => Err(cur.unexpected("variable, `(`, `{`, `A(` or `cyc(`")),
    }
}

fn parse_var_name(cur: &mut Cursor<'_>) -> Result<String, ParseError> {
    let col = cur.col();
    let name = cur.expect_ident()?;
    if name == TWIST_SYMBOL || name == CYCLIC_SYMBOL {
        return Err(ParseError::new(col, format!("`{name}` is reserved and cannot name a variable")));
    }
    Ok(name)
}
