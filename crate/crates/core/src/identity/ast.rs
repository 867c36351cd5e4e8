use std::fmt;

use num_traits::{One, Signed};

use crate::coeff::Rational;

/// Expression tree of the identity language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    /// `A^power(arg)`: the ambient twist applied `power` times.
    Twist { power: u32, arg: Box<Expr> },
    Binary(Box<Expr>, Box<Expr>),
    Ternary(Box<Expr>, Box<Expr>, Box<Expr>),
    Sum(Vec<Expr>),
    Scaled(Rational, Box<Expr>),
    /// Sum of `body` over the cyclic permutations of three variables.
    Cyclic { vars: [String; 3], body: Box<Expr> },
    Zero,
}

impl Expr {
    /// Variables in order of first appearance.
    pub fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Twist { arg, .. } => arg.collect_vars(out),
            Expr::Binary(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Ternary(a, b, c) => {
                a.collect_vars(out);
                b.collect_vars(out);
                c.collect_vars(out);
            }
            Expr::Sum(ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Expr::Scaled(_, e) => e.collect_vars(out),
            Expr::Cyclic { vars, body } => {
                for v in vars {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                body.collect_vars(out);
            }
            Expr::Zero => {}
        }
    }

    /// Simultaneous renaming of variables.
    pub fn rename(&self, map: &dyn Fn(&str) -> String) -> Expr {
        match self {
            Expr::Var(v) => Expr::Var(map(v)),
            Expr::Twist { power, arg } => Expr::Twist { power: *power, arg: Box::new(arg.rename(map)) },
            Expr::Binary(a, b) => Expr::Binary(Box::new(a.rename(map)), Box::new(b.rename(map))),
            Expr::Ternary(a, b, c) => {
                Expr::Ternary(Box::new(a.rename(map)), Box::new(b.rename(map)), Box::new(c.rename(map)))
            }
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|t| t.rename(map)).collect()),
            Expr::Scaled(r, e) => Expr::Scaled(r.clone(), Box::new(e.rename(map))),
            Expr::Cyclic { vars, body } => Expr::Cyclic {
                vars: [map(&vars[0]), map(&vars[1]), map(&vars[2])],
                body: Box::new(body.rename(map)),
            },
            Expr::Zero => Expr::Zero,
        }
    }

    /// The three cyclic rotations of a `Cyclic` body.
    pub fn cyclic_terms(vars: &[String; 3], body: &Expr) -> [Expr; 3] {
        let rot = |shift: usize| {
            move |v: &str| match vars.iter().position(|x| x == v) {
                Some(i) => vars[(i + shift) % 3].clone(),
                None => v.to_string(),
            }
        };
        [body.clone(), body.rename(&rot(1)), body.rename(&rot(2))]
    }

    /// Distribute sums and scalars down to product terms, expanding cyclic sums.
    pub fn expand(&self) -> Vec<(Rational, Expr)> {
        match self {
            Expr::Var(_) => vec![(Rational::one(), self.clone())],
            Expr::Zero => Vec::new(),
            Expr::Twist { power, arg } => arg
                .expand()
                .into_iter()
                .map(|(c, t)| (c, Expr::Twist { power: *power, arg: Box::new(t) }))
                .collect(),
            Expr::Binary(a, b) => {
                let (ea, eb) = (a.expand(), b.expand());
                let mut out = Vec::new();
                for (ca, ta) in &ea {
                    for (cb, tb) in &eb {
                        out.push((ca * cb, Expr::Binary(Box::new(ta.clone()), Box::new(tb.clone()))));
                    }
                }
                out
            }
            Expr::Ternary(a, b, c) => {
                let (ea, eb, ec) = (a.expand(), b.expand(), c.expand());
                let mut out = Vec::new();
                for (ca, ta) in &ea {
                    for (cb, tb) in &eb {
                        for (cc, tc) in &ec {
                            out.push((
                                ca * cb * cc,
                                Expr::Ternary(Box::new(ta.clone()), Box::new(tb.clone()), Box::new(tc.clone())),
                            ));
                        }
                    }
                }
                out
            }
            Expr::Sum(ts) => ts.iter().flat_map(Expr::expand).collect(),
            Expr::Scaled(r, e) => e.expand().into_iter().map(|(c, t)| (r * c, t)).collect(),
            Expr::Cyclic { vars, body } => {
                Expr::cyclic_terms(vars, body).iter().flat_map(Expr::expand).collect()
            }
        }
    }

    /// Occurrences of each variable in a product term.
    pub fn occurrences(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => out.push(v.clone()),
            Expr::Twist { arg, .. } => arg.occurrences(out),
            Expr::Binary(a, b) => {
                a.occurrences(out);
                b.occurrences(out);
            }
            Expr::Ternary(a, b, c) => {
                a.occurrences(out);
                b.occurrences(out);
                c.occurrences(out);
            }
            Expr::Sum(ts) => ts.iter().for_each(|t| t.occurrences(out)),
            Expr::Scaled(_, e) => e.occurrences(out),
            Expr::Cyclic { body, .. } => body.occurrences(out),
            Expr::Zero => {}
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(self, Expr::Var(_) | Expr::Twist { .. } | Expr::Ternary(..) | Expr::Cyclic { .. } | Expr::Zero)
    }
}

fn fmt_factor(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    if e.is_atomic() {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Twist { power, arg } => {
                if *power == 1 {
                    write!(f, "A({arg})")
                } else {
                    write!(f, "A^{power}({arg})")
                }
            }
            Expr::Binary(a, b) => {
                fmt_factor(f, a)?;
                f.write_str("*")?;
                fmt_factor(f, b)
            }
            Expr::Ternary(a, b, c) => write!(f, "{{{a}, {b}, {c}}}"),
            Expr::Sum(ts) => {
                if ts.is_empty() {
                    return f.write_str("0");
                }
                for (i, t) in ts.iter().enumerate() {
                    match t {
                        Expr::Scaled(r, inner) if r.is_negative() => {
                            f.write_str(if i == 0 { "-" } else { " - " })?;
                            let mag = -r.clone();
                            if mag.is_one() {
                                fmt_factor(f, inner)?;
                            } else {
                                write!(f, "{mag} ")?;
                                fmt_factor(f, inner)?;
                            }
                        }
                        _ => {
                            if i > 0 {
                                f.write_str(" + ")?;
                            }
                            write!(f, "{t}")?;
                        }
                    }
                }
                Ok(())
            }
            Expr::Scaled(r, e) => {
                if r.is_negative() {
                    f.write_str("-")?;
                }
                let mag = r.abs();
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                fmt_factor(f, e)
            }
            Expr::Cyclic { vars, body } => write!(f, "cyc({},{},{}; {body})", vars[0], vars[1], vars[2]),
            Expr::Zero => f.write_str("0"),
        }
    }
}

/// A named multilinear identity `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Free variables in order of first appearance; counterexamples assign
    /// basis indices to them in this order.
    pub variables: Vec<String>,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
