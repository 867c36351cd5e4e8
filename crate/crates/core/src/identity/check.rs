//! Exhaustive basis-tuple checking of multilinear identities.

use std::collections::BTreeMap;
use std::fmt;

use super::ast::{Expr, Identity};
use crate::algebra::{HomAlgebra, LinearMap, Vector};
use crate::coeff::Rational;

#[derive(Clone, Debug)]
enum Node {
    Var(usize),
    Twist(u32, Box<Node>),
    Binary(Box<Node>, Box<Node>),
    Ternary(Box<Node>, Box<Node>, Box<Node>),
    Sum(Vec<Node>),
    Scaled(Rational, Box<Node>),
    Zero,
}

/// An identity with variables resolved to slots and cyclic sums unrolled.
#[derive(Clone, Debug)]
pub struct CompiledIdentity {
    pub name: String,
    pub variables: Vec<String>,
    lhs: Node,
    rhs: Node,
    powers: Vec<u32>,
}

fn lower(e: &Expr, vars: &[String], powers: &mut Vec<u32>) -> Node {
    match e {
        Expr::Var(v) => Node::Var(vars.iter().position(|x| x == v).expect("variable collected")),
        Expr::Twist { power, arg } => {
            if !powers.contains(power) {
                powers.push(*power);
            }
            Node::Twist(*power, Box::new(lower(arg, vars, powers)))
        }
        Expr::Binary(a, b) => Node::Binary(Box::new(lower(a, vars, powers)), Box::new(lower(b, vars, powers))),
        Expr::Ternary(a, b, c) => Node::Ternary(
            Box::new(lower(a, vars, powers)),
            Box::new(lower(b, vars, powers)),
            Box::new(lower(c, vars, powers)),
        ),
        Expr::Sum(ts) => Node::Sum(ts.iter().map(|t| lower(t, vars, powers)).collect()),
        Expr::Scaled(r, inner) => Node::Scaled(r.clone(), Box::new(lower(inner, vars, powers))),
        Expr::Cyclic { vars: cv, body } => Node::Sum(
            Expr::cyclic_terms(cv, body).iter().map(|t| lower(t, vars, powers)).collect(),
        ),
        Expr::Zero => Node::Zero,
    }
}

struct Ctx<'a> {
    alg: &'a HomAlgebra,
    twists: &'a BTreeMap<u32, LinearMap>,
    values: &'a [Vector],
}

impl Ctx<'_> {
    fn eval(&self, n: &Node) -> Vector {
        match n {
            Node::Var(i) => self.values[*i].clone(),
            Node::Twist(p, arg) => self.twists[p].act(&self.eval(arg)),
            Node::Binary(a, b) => self.alg.mul(&self.eval(a), &self.eval(b)),
            Node::Ternary(a, b, c) => self.alg.tri(&self.eval(a), &self.eval(b), &self.eval(c)),
            Node::Sum(ts) => {
                let mut acc = Vector::zero(self.alg.dim());
                for t in ts {
                    acc.add_assign(&self.eval(t));
                }
                acc
            }
            Node::Scaled(r, inner) => self.eval(inner).scale_rational(r),
            Node::Zero => Vector::zero(self.alg.dim()),
        }
    }
}

impl CompiledIdentity {
    pub fn new(id: &Identity) -> Self {
        let mut powers = Vec::new();
        let lhs = lower(&id.lhs, &id.variables, &mut powers);
        let rhs = lower(&id.rhs, &id.variables, &mut powers);
        CompiledIdentity { name: id.name.clone(), variables: id.variables.clone(), lhs, rhs, powers }
    }

    fn twist_table(&self, alg: &HomAlgebra, twist_exponent: u32) -> BTreeMap<u32, LinearMap> {
        self.powers
            .iter()
            .map(|&p| (p, alg.twist().power(u64::from(p) * u64::from(twist_exponent))))
            .collect()
    }

    /// `lhs − rhs` at arbitrary vectors, one per variable.
    pub fn residual(&self, alg: &HomAlgebra, twist_exponent: u32, values: &[Vector]) -> Vector {
        assert_eq!(values.len(), self.variables.len(), "one vector per variable");
        let twists = self.twist_table(alg, twist_exponent);
        let ctx = Ctx { alg, twists: &twists, values };
        ctx.eval(&self.lhs).sub(&ctx.eval(&self.rhs))
    }

    /// Evaluate on every basis tuple in lexicographic order; report the first failure.
    pub fn check(&self, alg: &HomAlgebra, twist_exponent: u32) -> Verdict {
        let dim = alg.dim();
        let nvars = self.variables.len();
        let twists = self.twist_table(alg, twist_exponent);
        let basis: Vec<Vector> = (0..dim).map(|i| Vector::basis(dim, i)).collect();
        let mut idx = vec![0usize; nvars];
        loop {
            let values: Vec<Vector> = idx.iter().map(|&i| basis[i].clone()).collect();
            let ctx = Ctx { alg, twists: &twists, values: &values };
            let residual = ctx.eval(&self.lhs).sub(&ctx.eval(&self.rhs));
            if !residual.is_zero() {
                return Verdict::Counterexample {
                    assignment: self.variables.iter().cloned().zip(idx).collect(),
                    residual,
                };
            }
            // odometer, last variable fastest
            let mut pos = nvars;
            loop {
                if pos == 0 {
                    return Verdict::Pass;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < dim {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// Outcome of checking one identity on one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Basis indices (0-based) assigned to each variable, and the nonzero `lhs − rhs`.
    Counterexample { assignment: Vec<(String, usize)>, residual: Vector },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

pub fn check_identity(alg: &HomAlgebra, id: &Identity, twist_exponent: u32) -> Verdict {
    CompiledIdentity::new(id).check(alg, twist_exponent)
}

pub(crate) fn format_counterexample(
    f: &mut fmt::Formatter<'_>,
    basis: &[String],
    assignment: &[(String, usize)],
    residual: &Vector,
) -> fmt::Result {
    let parts: Vec<String> = assignment.iter().map(|(v, i)| format!("{v}={}", basis[*i])).collect();
    write!(f, "at {}: residual ", parts.join(", "))?;
    let mut first = true;
    for (i, c) in residual.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(", ")?;
        }
        first = false;
        write!(f, "{}: {c}", basis[i])?;
    }
    Ok(())
}
