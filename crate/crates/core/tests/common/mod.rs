#![allow(dead_code)]

use std::collections::BTreeMap;

use hombol::catalog::{self, CatalogParams, Sign};
use hombol::coeff::{int, rat};
use hombol::{HomAlgebra, LinearMap, Rational, Scalar, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn sq(n: i64, d: i64) -> Scalar {
    Scalar::from_rational(rat(n, d))
}

pub fn sym(name: &str) -> Scalar {
    Scalar::param(name)
}

pub fn bind(pairs: &[(&str, Scalar)]) -> BTreeMap<String, Scalar> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Numerator in -3..=3, denominator in 1..=3.
pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-3..=3), r.gen_range(1..=3))
}

pub fn nonzero_rational(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = small_rational(r);
        if q != int(0) {
            return q;
        }
    }
}

pub fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::from_rationals((0..dim).map(|_| small_rational(r)).collect::<Vec<_>>())
}

pub fn random_invertible(r: &mut ChaCha8Rng, dim: usize) -> LinearMap {
    loop {
        let cols = (0..dim)
            .map(|_| Vector::from_rationals((0..dim).map(|_| int(r.gen_range(-2..=2))).collect::<Vec<_>>()))
            .collect();
        let m = LinearMap::from_columns(cols).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

pub fn vec_of(coords: &[i64]) -> Vector {
    Vector::from_coords(coords.iter().map(|&c| s(c)).collect())
}

/// Skew binary algebra from `e_i * e_j` for `i < j`, identity twist.
pub fn skew_binary(dim: usize, products: &[((usize, usize), &[i64])]) -> HomAlgebra {
    let mut h = HomAlgebra::new(dim);
    for ((i, j), v) in products {
        let v = vec_of(v);
        h.set_binary(*j, *i, v.neg()).unwrap();
        h.set_binary(*i, *j, v).unwrap();
    }
    h
}

/// e1*e2 = e3, e2*e3 = e1, e3*e1 = e2
pub fn so3() -> HomAlgebra {
    skew_binary(3, &[((0, 1), &[0, 0, 1]), ((1, 2), &[1, 0, 0]), ((0, 2), &[0, -1, 0])])
}

/// A 4-dimensional Malcev algebra that is not Lie.
pub fn sagle() -> HomAlgebra {
    skew_binary(
        4,
        &[((0, 1), &[0, -1, 0, 0]), ((0, 2), &[0, 0, -1, 0]), ((0, 3), &[0, 0, 0, 1]), ((1, 2), &[0, 0, 0, 2])],
    )
}

/// e1*e2 = e3 (Heisenberg), Lie.
pub fn heisenberg() -> HomAlgebra {
    skew_binary(3, &[((0, 1), &[0, 0, 1])])
}

/// Skew but violates the Malcev identity.
pub fn not_malcev() -> HomAlgebra {
    skew_binary(3, &[((0, 1), &[0, 1, 0]), ((1, 2), &[1, 0, 1]), ((0, 2), &[1, 0, 3])])
}

pub fn a(name: &str) -> HomAlgebra {
    catalog::get(name, &CatalogParams::default()).unwrap()
}

pub fn a3(sign: Sign) -> HomAlgebra {
    catalog::get("A3", &CatalogParams { sign: Some(sign), ..Default::default() }).unwrap()
}

pub fn twisted(name: &str, sign: Option<Sign>) -> HomAlgebra {
    catalog::get_twisted(name, &CatalogParams { sign, ..Default::default() }).unwrap()
}

/// Number of scalar structure constants (binary then ternary coordinates).
pub fn constant_count(h: &HomAlgebra) -> usize {
    let d = h.dim();
    d * d * d + d * d * d * d
}

/// Add `delta` to one structure constant, indexed as in [`constant_count`].
pub fn tamper(h: &HomAlgebra, which: usize, delta: &Scalar) -> HomAlgebra {
    let d = h.dim();
    let mut out = h.clone();
    if which < d * d * d {
        let (i, j, l) = (which / (d * d), (which / d) % d, which % d);
        let mut v = h.binary(i, j).clone();
        let mut coords = v.coords().to_vec();
        coords[l] = &coords[l] + delta;
        v = Vector::from_coords(coords);
        out.set_binary(i, j, v).unwrap();
    } else {
        let w = which - d * d * d;
        let (i, j, k, l) = (w / (d * d * d), (w / (d * d)) % d, (w / d) % d, w % d);
        let mut coords = h.ternary(i, j, k).coords().to_vec();
        coords[l] = &coords[l] + delta;
        out.set_ternary(i, j, k, Vector::from_coords(coords)).unwrap();
    }
    out
}

/// Hand-written contractions of the two derivation-type Bol laws, on a
/// parameter-free algebra. Independent of the identity language.
pub mod oracle {
    use hombol::{HomAlgebra, Rational};
    use num_traits::Zero;

    struct Tensors {
        d: usize,
        c: Vec<Rational>,
        t: Vec<Rational>,
    }

    impl Tensors {
        fn new(h: &HomAlgebra) -> Self {
            let d = h.dim();
            let mut c = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    for l in 0..d {
                        c.push(h.binary(i, j).coord(l).as_rational().expect("parameter-free"));
                    }
                }
            }
            let mut t = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        for l in 0..d {
                            t.push(h.ternary(i, j, k).coord(l).as_rational().expect("parameter-free"));
                        }
                    }
                }
            }
            Tensors { d, c, t }
        }

        fn c(&self, i: usize, j: usize, l: usize) -> &Rational {
            &self.c[(i * self.d + j) * self.d + l]
        }

        fn t(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
            &self.t[((i * self.d + j) * self.d + k) * self.d + l]
        }
    }

    /// {x,y,u*v} = {x,y,u}*v + u*{x,y,v} + {u,v,x*y} - (u*v)*(x*y)
    pub fn derivation_law_binary(h: &HomAlgebra) -> bool {
        let m = Tensors::new(h);
        let d = m.d;
        for x in 0..d {
            for y in 0..d {
                for u in 0..d {
                    for v in 0..d {
                        for l in 0..d {
                            let mut r = Rational::zero();
                            for p in 0..d {
                                r += m.c(u, v, p) * m.t(x, y, p, l);
                                r -= m.t(x, y, u, p) * m.c(p, v, l);
                                r -= m.c(u, p, l) * m.t(x, y, v, p);
                                r -= m.t(u, v, p, l) * m.c(x, y, p);
                                for q in 0..d {
                                    r += m.c(u, v, p) * m.c(x, y, q) * m.c(p, q, l);
                                }
                            }
                            if !r.is_zero() {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// {x,y,{u,v,w}} = {{x,y,u},v,w} + {u,{x,y,v},w} + {u,v,{x,y,w}}
    pub fn derivation_law_ternary(h: &HomAlgebra) -> bool {
        let m = Tensors::new(h);
        let d = m.d;
        for x in 0..d {
            for y in 0..d {
                for u in 0..d {
                    for v in 0..d {
                        for w in 0..d {
                            for l in 0..d {
                                let mut r = Rational::zero();
                                for p in 0..d {
                                    r += m.t(u, v, w, p) * m.t(x, y, p, l);
                                    r -= m.t(x, y, u, p) * m.t(p, v, w, l);
                                    r -= m.t(x, y, v, p) * m.t(u, p, w, l);
                                    r -= m.t(x, y, w, p) * m.t(u, v, p, l);
                                }
                                if !r.is_zero() {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }
}
