//! Constructions producing new Hom-algebras from old ones: twisting along an
//! endomorphism, derived Hom-algebras, the `β^n` sequence, the passage from
//! Malcev to Bol algebras, and the Hom-Jacobian.
//!
//! Every constructor composes structure-constant tensors with a linear map
//! (the map is applied to each output vector of the unfolded tensor), so the
//! results stay exact.

use thiserror::Error;

use crate::algebra::{weak_morphism_failure, HomAlgebra, LinearMap, TupleFailure, Vector};
use crate::coeff::rat;
use crate::error::{check_dim, DimensionMismatch};
use crate::identity;

/// Largest derived index accepted by default; keeps `α^(2^(n+1) − 2)` tractable.
pub const DEFAULT_MAX_DERIVED: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("map is not an endomorphism: fails at {0}")]
    NotEndomorphism(TupleFailure),
    #[error("map does not commute with the twist")]
    DoesNotCommute,
    #[error("algebra is twisted; an identity twist is required")]
    NotUntwisted,
    #[error("algebra has a nonzero ternary operation")]
    TernaryNotZero,
    #[error("not a Malcev algebra: identity {0} fails")]
    NotMalcev(String),
    #[error("derived index {n} exceeds the configured bound {max}")]
    ExponentBound { n: u32, max: u32 },
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

/// Rank-4 tensor of a trilinear map `A⊗A⊗A → A`, same layout as the ternary
/// structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryTensor {
    dim: usize,
    entries: Vec<Vector>,
}

impl TernaryTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Vector {
        &self.entries[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vector::is_zero)
    }

    /// `m` applied to every output vector.
    pub fn map(&self, m: &LinearMap) -> TernaryTensor {
        TernaryTensor { dim: self.dim, entries: self.entries.iter().map(|v| m.act(v)).collect() }
    }
}

/// `(A, f∘∗, g∘{,,}, twist)`; no preconditions are checked.
pub fn compose_operations(h: &HomAlgebra, f: &LinearMap, g: &LinearMap, twist: LinearMap) -> HomAlgebra {
    HomAlgebra::from_parts(
        h.basis().to_vec(),
        h.params().clone(),
        h.map_binary(|v| f.act(v)),
        h.map_ternary(|v| g.act(v)),
        twist,
    )
}

fn require_endomorphism(beta: &LinearMap, h: &HomAlgebra) -> Result<(), ConstructionError> {
    match weak_morphism_failure(beta, h, h)? {
        Some(f) => Err(ConstructionError::NotEndomorphism(f)),
        None => Ok(()),
    }
}

fn pow2(n: u32) -> u64 {
    1u64 << n
}

fn check_bound(n: u32, max: u32) -> Result<(), ConstructionError> {
    if n > max || n >= 62 {
        Err(ConstructionError::ExponentBound { n, max })
    } else {
        Ok(())
    }
}

/// Twist an untwisted algebra along an endomorphism `β`:
/// `(A, β∘∗, β²∘[,,], β)`.
pub fn yau_twist(b: &HomAlgebra, beta: &LinearMap) -> Result<HomAlgebra, ConstructionError> {
    check_dim(b.dim(), beta.dim())?;
    if !b.twist().is_identity() {
        return Err(ConstructionError::NotUntwisted);
    }
    require_endomorphism(beta, b)?;
    Ok(yau_twist_unchecked(b, beta))
}

/// The twisting formula of [`yau_twist`] without the endomorphism check.
pub fn yau_twist_unchecked(b: &HomAlgebra, beta: &LinearMap) -> HomAlgebra {
    compose_operations(b, beta, &beta.power(2), beta.clone())
}

/// `(A, β^n∘∗, β^{2n}∘{,,}, β^n α)` for an endomorphism `β` commuting with `α`.
pub fn self_twist(h: &HomAlgebra, beta: &LinearMap, n: u32) -> Result<HomAlgebra, ConstructionError> {
    check_dim(h.dim(), beta.dim())?;
    require_endomorphism(beta, h)?;
    if !beta.commutes_with(h.twist())? {
        return Err(ConstructionError::DoesNotCommute);
    }
    let bn = beta.power(u64::from(n));
    let twist = bn.compose(h.twist())?;
    Ok(compose_operations(h, &bn, &beta.power(2 * u64::from(n)), twist))
}

/// The `n`th derived Hom-algebra `(A, α^{2^n−1}∘∗, α^{2^{n+1}−2}∘{,,}, α^{2^n})`.
pub fn nth_derived(h: &HomAlgebra, n: u32) -> Result<HomAlgebra, ConstructionError> {
    nth_derived_bounded(h, n, DEFAULT_MAX_DERIVED)
}

pub fn nth_derived_bounded(h: &HomAlgebra, n: u32, max: u32) -> Result<HomAlgebra, ConstructionError> {
    check_bound(n, max)?;
    let alpha = h.twist();
    let bin = alpha.power(pow2(n) - 1);
    let ter = alpha.power(pow2(n + 1) - 2);
    Ok(compose_operations(h, &bin, &ter, alpha.power(pow2(n))))
}

/// Binary-only derived Hom-algebra: `(A, α^{2^n−1}∘∗, 0, α^{2^n})`.
pub fn derived_binary_only(h: &HomAlgebra, n: u32) -> Result<HomAlgebra, ConstructionError> {
    check_bound(n, DEFAULT_MAX_DERIVED)?;
    let alpha = h.twist();
    let bin = alpha.power(pow2(n) - 1);
    Ok(compose_operations(&h.without_ternary(), &bin, &LinearMap::zero(h.dim()), alpha.power(pow2(n))))
}

/// `A_n = (A, β^n∘∗, β^{2n}∘{,,}, β^{n+1})`.
///
/// The Hom-Bol closure property holds for `β` equal to the algebra's own
/// twist; any endomorphism is accepted.
pub fn sequence_member(h: &HomAlgebra, beta: &LinearMap, n: u32) -> Result<HomAlgebra, ConstructionError> {
    check_dim(h.dim(), beta.dim())?;
    require_endomorphism(beta, h)?;
    let n = u64::from(n);
    Ok(compose_operations(h, &beta.power(n), &beta.power(2 * n), beta.power(n + 1)))
}

/// The ternary operation `[x,y,z] = (1/3)(2(x∗y)∗z − (y∗z)∗x − (z∗x)∗y)` on
/// basis triples of an untwisted binary algebra.
pub fn malcev_ternary(m: &HomAlgebra) -> Vec<Vector> {
    let d = m.dim();
    let basis: Vec<Vector> = (0..d).map(|i| Vector::basis(d, i)).collect();
    let third = rat(1, 3);
    let two = rat(2, 1);
    let mut out = Vec::with_capacity(d * d * d);
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let t = m
                    .mul(&m.mul(x, y), z)
                    .scale_rational(&two)
                    .sub(&m.mul(&m.mul(y, z), x))
                    .sub(&m.mul(&m.mul(z, x), y));
                out.push(t.scale_rational(&third));
            }
        }
    }
    out
}

/// Bol algebra of a Malcev algebra, twisted along `β` (identity by default).
pub fn malcev_to_bol(m: &HomAlgebra, beta: Option<&LinearMap>) -> Result<HomAlgebra, ConstructionError> {
    if !m.twist().is_identity() {
        return Err(ConstructionError::NotUntwisted);
    }
    if !m.ternary_is_zero() {
        return Err(ConstructionError::TernaryNotZero);
    }
    let malcev = identity::builtin("MALCEV").expect("built-in suite compiles");
    let report = identity::check_suite(m, &malcev, None);
    if let Some(f) = report.failures().next() {
        return Err(ConstructionError::NotMalcev(f.name.clone()));
    }
    let identity_map = LinearMap::identity(m.dim());
    let beta = beta.unwrap_or(&identity_map);
    check_dim(m.dim(), beta.dim())?;
    require_endomorphism(beta, m)?;
    let bol = HomAlgebra::from_parts(
        m.basis().to_vec(),
        m.params().clone(),
        m.binary_tensor().to_vec(),
        malcev_ternary(m),
        LinearMap::identity(m.dim()),
    );
    yau_twist(&bol, beta)
}

/// Tensor of `J_α(x,y,z) = ↻_{x,y,z} (x∗y)∗α(z)` on basis triples.
pub fn hom_jacobian(h: &HomAlgebra) -> TernaryTensor {
    let d = h.dim();
    let basis: Vec<Vector> = (0..d).map(|i| Vector::basis(d, i)).collect();
    let alpha = h.twist();
    let term = |x: &Vector, y: &Vector, z: &Vector| h.mul(&h.mul(x, y), &alpha.act(z));
    let mut entries = Vec::with_capacity(d * d * d);
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let mut j = term(x, y, z);
                j.add_assign(&term(y, z, x));
                j.add_assign(&term(z, x, y));
                entries.push(j);
            }
        }
    }
    TernaryTensor { dim: d, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogParams, Sign};
    use crate::coeff::Scalar;
    use crate::identity::builtin;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sym(name: &str) -> Scalar {
        Scalar::param(name)
    }

    fn e(i: usize) -> Vector {
        Vector::basis(2, i)
    }

    fn map43() -> LinearMap {
        LinearMap::from_rows(vec![vec![s(1), s(0)], vec![sym("a"), sym("b")]]).unwrap()
    }

    fn map45() -> LinearMap {
        LinearMap::diagonal(vec![s(1), sym("b")])
    }

    fn a2() -> HomAlgebra {
        catalog::get("A2", &CatalogParams::default()).unwrap()
    }

    fn a3(sign: Sign) -> HomAlgebra {
        catalog::get("A3", &CatalogParams { sign: Some(sign), ..Default::default() }).unwrap()
    }

    fn so3() -> HomAlgebra {
        let mut m = HomAlgebra::new(3);
        let v = |c: [i64; 3]| Vector::from_coords(c.iter().map(|&x| s(x)).collect());
        for (i, j, c) in [(0, 1, [0, 0, 1]), (1, 2, [1, 0, 0]), (2, 0, [0, 1, 0])] {
            m.set_binary(i, j, v(c)).unwrap();
            m.set_binary(j, i, v(c).neg()).unwrap();
        }
        m
    }

    #[test]
    fn yau_twist_of_a2() {
        let h = yau_twist(&a2(), &map43()).unwrap();
        assert_eq!(h.binary(0, 1), &e(1).scale(&-sym("b")));
        // β²(λ e2) = λ b² e2
        assert_eq!(h.ternary(0, 1, 0), &e(1).scale(&(sym("lambda") * sym("b").pow(2))));
        assert_eq!(h.twist(), &map43());
    }

    #[test]
    fn yau_twist_along_identity_is_noop() {
        let a = a2();
        assert_eq!(yau_twist(&a, &LinearMap::identity(2)).unwrap(), a);
    }

    #[test]
    fn yau_twist_rejects_non_endomorphism() {
        let err = yau_twist(&a3(Sign::Plus), &map45()).unwrap_err();
        assert!(matches!(err, ConstructionError::NotEndomorphism(_)), "{err}");
        let twisted = yau_twist(&a2(), &map43()).unwrap();
        assert_eq!(yau_twist(&twisted, &map43()).unwrap_err(), ConstructionError::NotUntwisted);
    }

    #[test]
    fn self_twist_cases() {
        let a = a2();
        assert_eq!(self_twist(&a, &map43(), 1).unwrap(), yau_twist(&a, &map43()).unwrap());

        let h = yau_twist(&a2(), &map43()).unwrap();
        let t = self_twist(&h, h.twist(), 1).unwrap();
        assert!(builtin("HOM_BOL").unwrap().check(&t, None).passed());

        let a3p = a3(Sign::Plus);
        let beta = LinearMap::diagonal(vec![s(1), s(-1)]);
        let t2 = self_twist(&a3p, &beta, 2).unwrap();
        // β²(−e2) with β(e2) = b e2 gives −b² e2; here b = −1
        assert_eq!(t2.binary(0, 1), &e(1).scale(&s(-1)));

        // the symbolic diagonal map at n = 2 on the binary part: β²(−e2) = −b² e2
        let binary_only = a3p.without_ternary();
        let t2 = self_twist(&binary_only, &map45(), 2).unwrap();
        assert_eq!(t2.binary(0, 1), &e(1).scale(&-sym("b").pow(2)));
    }

    #[test]
    fn self_twist_requires_commuting_map() {
        let h = yau_twist(&a2(), &map43()).unwrap();
        let mut bind = std::collections::BTreeMap::new();
        bind.insert("a".to_string(), s(1));
        bind.insert("b".to_string(), s(2));
        let h = h.substitute(&bind);
        let theta = LinearMap::diagonal(vec![s(1), s(2)]);
        assert_eq!(self_twist(&h, &theta, 1).unwrap_err(), ConstructionError::DoesNotCommute);
    }

    #[test]
    fn derived_small_cases() {
        let h = yau_twist(&a2(), &map43()).unwrap();
        assert_eq!(nth_derived(&h, 0).unwrap(), h);
        let d1 = nth_derived(&h, 1).unwrap();
        let alpha = h.twist();
        assert_eq!(d1.binary(0, 1), &alpha.act(h.binary(0, 1)));
        assert_eq!(d1.ternary(0, 1, 0), &alpha.power(2).act(h.ternary(0, 1, 0)));
        assert_eq!(d1.twist(), &alpha.power(2));
        // β²(e1) = e1 + a(1 + b) e2
        let expected = Vector::from_coords(vec![s(1), sym("a") * (s(1) + sym("b"))]);
        assert_eq!(d1.twist().column(0), &expected);
    }

    #[test]
    fn derived_bound() {
        let h = a2();
        assert_eq!(
            nth_derived_bounded(&h, 5, 4).unwrap_err(),
            ConstructionError::ExponentBound { n: 5, max: 4 }
        );
        assert!(nth_derived(&h, DEFAULT_MAX_DERIVED + 1).is_err());
    }

    #[test]
    fn derived_binary_only_cases() {
        let h = yau_twist(&a2(), &map43()).unwrap();
        let b0 = derived_binary_only(&h.without_ternary(), 0).unwrap();
        assert_eq!(b0, h.without_ternary());
        for n in 0..4 {
            let d = derived_binary_only(&h, n).unwrap();
            assert!(d.ternary_is_zero());
            assert_eq!(d, nth_derived(&h.without_ternary(), n).unwrap());
        }
    }

    #[test]
    fn sequence_member_cases() {
        let h = yau_twist(&a2(), &map43()).unwrap();
        let beta = h.twist().clone();
        assert_eq!(sequence_member(&h, &beta, 0).unwrap(), h);
        let m2 = sequence_member(&h, &beta, 2).unwrap();
        // β²(−b e2) = −b³ e2
        assert_eq!(m2.binary(0, 1), &e(1).scale(&-sym("b").pow(3)));
        assert_eq!(m2.twist(), &beta.power(3));
    }

    #[test]
    fn malcev_to_bol_on_so3() {
        let m = so3();
        let bol = malcev_to_bol(&m, None).unwrap();
        let d = 3;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let xy_z = m.mul(&m.mul(&Vector::basis(d, i), &Vector::basis(d, j)), &Vector::basis(d, k));
                    assert_eq!(bol.ternary(i, j, k), &xy_z);
                }
            }
        }
        assert!(builtin("BOL").unwrap().check(&bol, None).passed());
    }

    #[test]
    fn malcev_to_bol_on_abelian() {
        let out = malcev_to_bol(&HomAlgebra::new(3), None).unwrap();
        assert!(out.is_zero_algebra());
    }

    #[test]
    fn malcev_to_bol_rejects() {
        assert_eq!(malcev_to_bol(&a2(), None).unwrap_err(), ConstructionError::TernaryNotZero);
        let twisted = yau_twist(&a2().without_ternary(), &map43()).unwrap();
        assert_eq!(malcev_to_bol(&twisted, None).unwrap_err(), ConstructionError::NotUntwisted);
        // a 3-dim skew algebra failing the Malcev identity
        let mut m = HomAlgebra::new(3);
        let v = |c: [i64; 3]| Vector::from_coords(c.iter().map(|&x| s(x)).collect());
        for (i, j, c) in [(0, 1, [1, 2, 0]), (1, 2, [0, 1, 1]), (0, 2, [1, 0, 3])] {
            m.set_binary(i, j, v(c)).unwrap();
            m.set_binary(j, i, v(c).neg()).unwrap();
        }
        assert_eq!(malcev_to_bol(&m, None).unwrap_err(), ConstructionError::NotMalcev("M2".into()));
        let bad_beta = LinearMap::diagonal(vec![s(2), s(1), s(1)]);
        assert!(matches!(malcev_to_bol(&so3(), Some(&bad_beta)), Err(ConstructionError::NotEndomorphism(_))));
    }

    #[test]
    fn hom_jacobian_cases() {
        assert!(hom_jacobian(&HomAlgebra::new(2)).is_zero());
        assert!(hom_jacobian(&so3()).is_zero());
        // (A1) binary, α = Id: J(e1,e2,e1) = [[e1,e2],e1] + [[e2,e1],e1] + [[e1,e1],e2] = 0
        let a1 = catalog::get("A1", &CatalogParams::default()).unwrap();
        assert!(hom_jacobian(&a1).get(0, 1, 0).is_zero());
    }
}
