mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use hombol::catalog::{self, CatalogParams, Sign};
use hombol::coeff::rat;
use hombol::constructions::{hom_jacobian, nth_derived, self_twist, sequence_member};
use hombol::identity::{builtin, check_suite, CompiledIdentity};
use hombol::io::{emit_algebra, parse_algebra};
use hombol::{HomAlgebra, LinearMap, Rational, Scalar, Vector};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != rat(0, 1))
}

fn monomial() -> impl Strategy<Value = Scalar> {
    (rational(), prop::collection::vec(0u32..3, 3)).prop_map(|(c, exps)| {
        let mut s = Scalar::from_rational(c);
        for (v, e) in VARS.iter().zip(exps) {
            s = &s * &Scalar::param(v).pow(u64::from(e));
        }
        s
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(monomial(), 0..4).prop_map(|ts| ts.into_iter().fold(Scalar::zero(), |a, t| a + t))
}

fn declared() -> BTreeSet<String> {
    VARS.iter().map(|s| s.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in scalar(), q in scalar(), r in scalar()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Scalar::one(), p.clone());
        prop_assert_eq!(-(-p.clone()), p);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(p in scalar(), q in scalar(), vx in scalar(), vy in rational()) {
        let b: BTreeMap<String, Scalar> =
            [("x".to_string(), vx), ("y".to_string(), Scalar::from_rational(vy))].into();
        prop_assert_eq!((&p + &q).substitute(&b), &p.substitute(&b) + &q.substitute(&b));
        prop_assert_eq!((&p * &q).substitute(&b), &p.substitute(&b) * &q.substitute(&b));
    }

    #[test]
    fn power_law(p in scalar(), m in 0u64..4, n in 0u64..4) {
        prop_assert_eq!(p.pow(m + n), &p.pow(m) * &p.pow(n));
    }

    #[test]
    fn display_parse_round_trip(p in scalar()) {
        let text = p.to_string();
        let back = Scalar::parse(&text, &declared()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn monic_is_scale_invariant(p in scalar(), c in nonzero_rational()) {
        prop_assert_eq!(p.scale(&c).monic(), p.monic());
        if let Some((_, lead)) = p.monic().leading_term() {
            prop_assert!(*lead > rat(0, 1));
        }
    }

    #[test]
    fn leading_monomial_degree_is_maximal(p in scalar()) {
        if let Some((m, _)) = p.leading_term() {
            let max = p.terms().map(|(m, _)| m.degree()).max().unwrap();
            prop_assert_eq!(m.degree(), max);
        } else {
            prop_assert!(p.is_zero());
        }
    }
}

fn random_algebra(seed: u64, dim: usize) -> HomAlgebra {
    let mut r = rng(seed);
    let mut h = HomAlgebra::new(dim);
    for i in 0..dim {
        for j in 0..dim {
            h.set_binary(i, j, random_vector(&mut r, dim)).unwrap();
            for k in 0..dim {
                h.set_ternary(i, j, k, random_vector(&mut r, dim)).unwrap();
            }
        }
    }
    h.set_twist(random_invertible(&mut r, dim)).unwrap();
    h
}

/// Graded algebra with `α = diag(q^deg)`: skew binary products land in the
/// degree sum, so `α` is multiplicative. The ternary `(1/2)(x*y)*α(z)`
/// satisfies the Hom-Akivis identity.
fn graded_akivis(seed: u64, degrees: &[u32], q: &Rational) -> HomAlgebra {
    use rand::Rng;
    let mut r = rng(seed);
    let d = degrees.len();
    let mut h = HomAlgebra::new(d);
    for i in 0..d {
        for j in (i + 1)..d {
            let mut coords = vec![Scalar::zero(); d];
            for (k, c) in coords.iter_mut().enumerate() {
                if degrees[k] == degrees[i] + degrees[j] && r.gen_bool(0.7) {
                    *c = Scalar::from_rational(small_rational(&mut r));
                }
            }
            let v = Vector::from_coords(coords);
            h.set_binary(j, i, v.neg()).unwrap();
            h.set_binary(i, j, v).unwrap();
        }
    }
    let alpha = LinearMap::diagonal(degrees.iter().map(|&g| Scalar::from_rational(q.clone()).pow(u64::from(g))).collect());
    h.set_twist(alpha.clone()).unwrap();
    let half = rat(1, 2);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let xy = h.eval_binary(&Vector::basis(d, i), &Vector::basis(d, j)).unwrap();
                let az = alpha.apply(&Vector::basis(d, k)).unwrap();
                let t = h.eval_binary(&xy, &az).unwrap().scale_rational(&half);
                h.set_ternary(i, j, k, t).unwrap();
            }
        }
    }
    h
}

fn hb_a2(lambda: Rational, a: Rational, b: Rational) -> HomAlgebra {
    catalog::get_twisted("HB_A2", &CatalogParams { lambda: Some(lambda), a: Some(a), b: Some(b), sign: None }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn identities_are_multilinear(seed in 0u64..1000, dim in 1usize..=3, c1 in rational(), c2 in rational(), slot in 0usize..5) {
        let h = random_algebra(seed, dim);
        let mut r = rng(seed + 1);
        for name in ["HOM_BOL", "MALCEV", "HOM_AKIVIS"] {
            for id in builtin(name).unwrap().identities {
                let c = CompiledIdentity::new(&id);
                let n = c.variables.len();
                let slot = slot % n;
                let base: Vec<Vector> = (0..n).map(|_| random_vector(&mut r, dim)).collect();
                let (u, v) = (random_vector(&mut r, dim), random_vector(&mut r, dim));
                let with = |w: Vector| {
                    let mut vals = base.clone();
                    vals[slot] = w;
                    c.residual(&h, 1, &vals)
                };
                let combined = with(u.scale_rational(&c1).add(&v.scale_rational(&c2)));
                let split = with(u.clone()).scale_rational(&c1).add(&with(v.clone()).scale_rational(&c2));
                prop_assert_eq!(combined, split, "{} in slot {}", id.name, slot);
            }
        }
    }

    #[test]
    fn map_power_law(seed in 0u64..1000, dim in 1usize..=3, m in 0u64..5, n in 0u64..5) {
        let mut r = rng(seed);
        let a = random_invertible(&mut r, dim);
        prop_assert_eq!(a.power(m + n), a.power(m).compose(&a.power(n)).unwrap());
        prop_assert!(a.power(m).commutes_with(&a.power(n)).unwrap());
    }

    #[test]
    fn derived_recursion_and_jacobian(seed in 0u64..1000, dim in 1usize..=3, n in 0u32..3) {
        let h = random_algebra(seed, dim);
        let dn = nth_derived(&h, n).unwrap();
        prop_assert_eq!(nth_derived(&dn, 1).unwrap(), nth_derived(&h, n + 1).unwrap());
        // only the binary part matters, and α must be multiplicative for the law
        let multiplicative = graded_akivis(seed, &[0, 1, 1][..dim], &rat(2, 1));
        let dm = nth_derived(&multiplicative, n).unwrap();
        let pow = multiplicative.twist().power(2 * ((1u64 << n) - 1));
        prop_assert_eq!(hom_jacobian(&dm), hom_jacobian(&multiplicative).map(&pow));
    }

    #[test]
    fn hom_bol_closure(lambda in rational(), a in rational(), b in nonzero_rational(), n in 0u32..3) {
        let h = hb_a2(lambda, a, b);
        let suite = builtin("HOM_BOL").unwrap();
        prop_assert!(check_suite(&nth_derived(&h, n).unwrap(), &suite, None).passed());
        prop_assert!(check_suite(&sequence_member(&h, &h.twist().clone(), n).unwrap(), &suite, None).passed());
        let twist = h.twist().clone();
        prop_assert!(check_suite(&self_twist(&h, &twist, n).unwrap(), &suite, None).passed());
    }

    #[test]
    fn hom_akivis_closure(seed in 0u64..1000, q in nonzero_rational(), n in 0u32..3) {
        let h = graded_akivis(seed, &[1, 1, 2], &q);
        let suite = builtin("HOM_AKIVIS").unwrap();
        prop_assert!(check_suite(&h, &suite, None).passed());
        prop_assert!(check_suite(&nth_derived(&h, n).unwrap(), &suite, None).passed());
    }

    #[test]
    fn flex_and_alt_verdicts_survive_derivation(seed in 0u64..1000, q in nonzero_rational(), n in 0u32..3) {
        let h = graded_akivis(seed, &[1, 1, 2], &q);
        let d = nth_derived(&h, n).unwrap();
        for name in ["HOM_FLEX", "HOM_ALT"] {
            let suite = builtin(name).unwrap();
            prop_assert_eq!(check_suite(&h, &suite, None).passed(), check_suite(&d, &suite, None).passed(), "{}", name);
        }
    }

    #[test]
    fn ternary_reduction_of_hom_bol(lambda in rational(), a in rational(), b in nonzero_rational(), n in 0u32..2) {
        let h = nth_derived(&hb_a2(lambda, a, b), n).unwrap();
        let triple = h.without_binary();
        prop_assert!(check_suite(&triple, &builtin("HOM_LIE_TRIPLE").unwrap(), Some(2)).passed());
    }

    #[test]
    fn bol_verdict_is_basis_independent(seed in 0u64..1000, lambda in nonzero_rational(), which in 0usize..3) {
        let mut r = rng(seed);
        let sign = if seed % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let params = CatalogParams { lambda: Some(lambda), sign: Some(sign), ..Default::default() };
        let base = catalog::get(["A1", "A2", "A3"][which], &params).unwrap();
        let h = base.change_basis(&random_invertible(&mut r, 2)).unwrap();
        prop_assert!(check_suite(&h, &builtin("BOL").unwrap(), None).passed());
    }

    #[test]
    fn emit_parse_round_trip(seed in 0u64..1000, dim in 1usize..=3) {
        let h = random_algebra(seed, dim);
        let text = emit_algebra(&h);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(emit_algebra(&back), text);
    }
}
