//! Finite-dimensional binary-ternary Hom-algebras given by structure constants.
//!
//! Tensors are dense and stored in full: no skew-symmetry or other axiom is
//! assumed by the representation. Axioms are checked by [`crate::identity`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{Rational, Scalar};
use crate::error::{check_dim, DimensionMismatch};

/// Coordinates of an element with respect to the ambient basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector { coords: vec![Scalar::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Vector::zero(dim);
        v.coords[i] = Scalar::one();
        v
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        Vector { coords }
    }

    pub fn from_rationals(coords: impl IntoIterator<Item = Rational>) -> Self {
        Vector { coords: coords.into_iter().map(Scalar::from_rational).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn add_assign(&mut self, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Vector {
        Vector { coords: self.coords.iter().map(|c| c.scale(r)).collect() }
    }

    pub fn neg(&self) -> Vector {
        Vector { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// `Σ_i s_i v_i` accumulated into `self`, skipping zero coefficients.
    fn add_scaled(&mut self, s: &Scalar, v: &Vector) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&v.coords) {
            if !b.is_zero() {
                *a += &(s * b);
            }
        }
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> Vector {
        Vector { coords: self.coords.iter().map(|c| c.substitute(bindings)).collect() }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.coords.iter().flat_map(Scalar::variables).collect()
    }
}

/// Square matrix acting on the ambient basis; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    cols: Vec<Vector>,
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        LinearMap { cols: (0..dim).map(|j| Vector::basis(dim, j)).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        LinearMap { cols: vec![Vector::zero(dim); dim] }
    }

    pub fn diagonal(entries: Vec<Scalar>) -> Self {
        let dim = entries.len();
        let cols = entries
            .into_iter()
            .enumerate()
            .map(|(j, s)| Vector::basis(dim, j).scale(&s))
            .collect();
        LinearMap { cols }
    }

    /// Build from images of the basis vectors.
    pub fn from_columns(cols: Vec<Vector>) -> Result<Self, DimensionMismatch> {
        let dim = cols.len();
        for c in &cols {
            check_dim(dim, c.dim())?;
        }
        Ok(LinearMap { cols })
    }

    /// Build from a row-major matrix: `rows[i][j]` is the `e_i` coordinate of the image of `e_j`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, DimensionMismatch> {
        let dim = rows.len();
        for r in &rows {
            check_dim(dim, r.len())?;
        }
        let cols = (0..dim)
            .map(|j| Vector::from_coords(rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        Ok(LinearMap { cols })
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.cols[j].coord(i)
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearMap::identity(self.dim())
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector, DimensionMismatch> {
        check_dim(self.dim(), v.dim())?;
        Ok(self.act(v))
    }

    pub(crate) fn act(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim());
        for (s, col) in v.coords.iter().zip(&self.cols) {
            out.add_scaled(s, col);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, DimensionMismatch> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.then_after(other))
    }

    fn then_after(&self, other: &LinearMap) -> LinearMap {
        LinearMap { cols: other.cols.iter().map(|c| self.act(c)).collect() }
    }

    /// `self^k` by repeated squaring; `power(0)` is the identity.
    pub fn power(&self, k: u64) -> LinearMap {
        let mut acc = LinearMap::identity(self.dim());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = base.then_after(&acc);
            }
            e >>= 1;
            if e > 0 {
                base = base.then_after(&base);
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &LinearMap) -> Result<bool, DimensionMismatch> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> LinearMap {
        LinearMap { cols: self.cols.iter().map(|c| c.substitute(bindings)).collect() }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.cols.iter().flat_map(Vector::variables).collect()
    }

    /// Inverse of a parameter-free matrix; `None` when singular or symbolic.
    pub fn inverse(&self) -> Option<LinearMap> {
        let n = self.dim();
        let mut m: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(2 * n);
            for j in 0..n {
                row.push(self.entry(i, j).as_rational()?);
            }
            for j in 0..n {
                row.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            m.push(row);
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..2 * n {
                        let t = &f * &m[col][c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        let rows = m
            .into_iter()
            .map(|r| r[n..].iter().cloned().map(Scalar::from_rational).collect())
            .collect();
        LinearMap::from_rows(rows).ok()
    }
}

/// A binary-ternary Hom-algebra `(A, ∗, {,,}, α)`.
///
/// `binary[i][j]` holds `e_i ∗ e_j`, `ternary[i][j][k]` holds `{e_i, e_j, e_k}`,
/// both as coordinate vectors; `twist` is `α`.
#[derive(Clone, Debug)]
pub struct HomAlgebra {
    basis: Vec<String>,
    params: BTreeSet<String>,
    binary: Vec<Vector>,
    ternary: Vec<Vector>,
    twist: LinearMap,
}

impl PartialEq for HomAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.binary == other.binary
            && self.ternary == other.ternary
            && self.twist == other.twist
    }
}

impl Eq for HomAlgebra {}

/// Which operation a basis tuple refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisTuple {
    Binary(usize, usize),
    Ternary(usize, usize, usize),
    /// Twist-intertwining column `j`.
    Twist(usize),
}

impl fmt::Display for BasisTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTuple::Binary(i, j) => write!(f, "e{} * e{}", i + 1, j + 1),
            BasisTuple::Ternary(i, j, k) => write!(f, "{{e{}, e{}, e{}}}", i + 1, j + 1, k + 1),
            BasisTuple::Twist(j) => write!(f, "twist on e{}", j + 1),
        }
    }
}

/// First basis tuple where an equation fails, with the nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleFailure {
    pub tuple: BasisTuple,
    pub residual: Vector,
}

impl fmt::Display for TupleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.residual.coords().iter().map(|s| s.to_string()).collect();
        write!(f, "{} (residual ({}))", self.tuple, coords.join(", "))
    }
}

impl HomAlgebra {
    /// The zero algebra of dimension `dim` with basis `e1..en` and identity twist.
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        HomAlgebra {
            basis: (1..=dim).map(|i| format!("e{i}")).collect(),
            params: BTreeSet::new(),
            binary: vec![Vector::zero(dim); dim * dim],
            ternary: vec![Vector::zero(dim); dim * dim * dim],
            twist: LinearMap::identity(dim),
        }
    }

    pub fn with_basis(mut self, labels: Vec<String>) -> Result<Self, DimensionMismatch> {
        check_dim(self.dim(), labels.len())?;
        self.basis = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn params(&self) -> &BTreeSet<String> {
        &self.params
    }

    pub fn declare_param(&mut self, name: &str) {
        self.params.insert(name.to_string());
    }

    pub fn declare_params<I: IntoIterator<Item = String>>(&mut self, names: I) {
        self.params.extend(names);
    }

    pub fn binary(&self, i: usize, j: usize) -> &Vector {
        &self.binary[i * self.dim() + j]
    }

    pub fn ternary(&self, i: usize, j: usize, k: usize) -> &Vector {
        let d = self.dim();
        &self.ternary[(i * d + j) * d + k]
    }

    pub fn twist(&self) -> &LinearMap {
        &self.twist
    }

    pub fn set_binary(&mut self, i: usize, j: usize, v: Vector) -> Result<(), DimensionMismatch> {
        check_dim(self.dim(), v.dim())?;
        self.params.extend(v.variables());
        let d = self.dim();
        self.binary[i * d + j] = v;
        Ok(())
    }

    pub fn set_ternary(&mut self, i: usize, j: usize, k: usize, v: Vector) -> Result<(), DimensionMismatch> {
        check_dim(self.dim(), v.dim())?;
        self.params.extend(v.variables());
        let d = self.dim();
        self.ternary[(i * d + j) * d + k] = v;
        Ok(())
    }

    pub fn set_twist(&mut self, twist: LinearMap) -> Result<(), DimensionMismatch> {
        check_dim(self.dim(), twist.dim())?;
        self.params.extend(twist.variables());
        self.twist = twist;
        Ok(())
    }

    /// Replace the binary tensor by zero.
    pub fn without_binary(&self) -> HomAlgebra {
        let mut out = self.clone();
        let d = self.dim();
        out.binary = vec![Vector::zero(d); d * d];
        out
    }

    pub fn without_ternary(&self) -> HomAlgebra {
        let mut out = self.clone();
        let d = self.dim();
        out.ternary = vec![Vector::zero(d); d * d * d];
        out
    }

    pub fn with_twist(&self, twist: LinearMap) -> Result<HomAlgebra, DimensionMismatch> {
        let mut out = self.clone();
        out.set_twist(twist)?;
        Ok(out)
    }

    pub fn binary_is_zero(&self) -> bool {
        self.binary.iter().all(Vector::is_zero)
    }

    pub fn ternary_is_zero(&self) -> bool {
        self.ternary.iter().all(Vector::is_zero)
    }

    /// Every structure constant, twist entry included, is zero.
    pub fn is_zero_algebra(&self) -> bool {
        self.binary_is_zero() && self.ternary_is_zero()
    }

    pub(crate) fn binary_tensor(&self) -> &[Vector] {
        &self.binary
    }

    /// Apply `f` to every binary constant.
    pub(crate) fn map_binary(&self, f: impl Fn(&Vector) -> Vector) -> Vec<Vector> {
        self.binary.iter().map(f).collect()
    }

    pub(crate) fn map_ternary(&self, f: impl Fn(&Vector) -> Vector) -> Vec<Vector> {
        self.ternary.iter().map(f).collect()
    }

    /// Assemble from raw tensors; params are collected from the scalars.
    pub(crate) fn from_parts(
        basis: Vec<String>,
        mut params: BTreeSet<String>,
        binary: Vec<Vector>,
        ternary: Vec<Vector>,
        twist: LinearMap,
    ) -> HomAlgebra {
        let d = basis.len();
        debug_assert_eq!(binary.len(), d * d);
        debug_assert_eq!(ternary.len(), d * d * d);
        for v in binary.iter().chain(&ternary) {
            params.extend(v.variables());
        }
        params.extend(twist.variables());
        HomAlgebra { basis, params, binary, ternary, twist }
    }

    /// Every parameter occurring in a structure constant or the twist.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> =
            self.binary.iter().chain(&self.ternary).flat_map(Vector::variables).collect();
        out.extend(self.twist.variables());
        out
    }

    pub fn eval_binary(&self, u: &Vector, v: &Vector) -> Result<Vector, DimensionMismatch> {
        check_dim(self.dim(), u.dim())?;
        check_dim(self.dim(), v.dim())?;
        Ok(self.mul(u, v))
    }

    pub fn eval_ternary(&self, u: &Vector, v: &Vector, w: &Vector) -> Result<Vector, DimensionMismatch> {
        check_dim(self.dim(), u.dim())?;
        check_dim(self.dim(), v.dim())?;
        check_dim(self.dim(), w.dim())?;
        Ok(self.tri(u, v, w))
    }

    pub(crate) fn mul(&self, u: &Vector, v: &Vector) -> Vector {
        let d = self.dim();
        let mut out = Vector::zero(d);
        for (i, ui) in u.coords().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coords().iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = &self.binary[i * d + j];
                if c.is_zero() {
                    continue;
                }
                out.add_scaled(&(ui * vj), c);
            }
        }
        out
    }

    pub(crate) fn tri(&self, u: &Vector, v: &Vector, w: &Vector) -> Vector {
        let d = self.dim();
        let mut out = Vector::zero(d);
        for (i, ui) in u.coords().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coords().iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, wk) in w.coords().iter().enumerate() {
                    if wk.is_zero() {
                        continue;
                    }
                    let c = &self.ternary[(i * d + j) * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    out.add_scaled(&(&uv * wk), c);
                }
            }
        }
        out
    }

    /// First basis tuple violating `α(x ∗ y) = α(x) ∗ α(y)` or the ternary analogue.
    pub fn multiplicativity_failure(&self) -> Option<TupleFailure> {
        weak_morphism_failure_unchecked(&self.twist, self, self)
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicativity_failure().is_none()
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> HomAlgebra {
        let params = self.params.iter().filter(|p| !bindings.contains_key(*p)).cloned().collect();
        HomAlgebra::from_parts(
            self.basis.clone(),
            params,
            self.map_binary(|v| v.substitute(bindings)),
            self.map_ternary(|v| v.substitute(bindings)),
            self.twist.substitute(bindings),
        )
    }

    /// The same algebra written in the basis `f_j = p(e_j)`; `p` must be a
    /// parameter-free invertible matrix.
    pub fn change_basis(&self, p: &LinearMap) -> Option<HomAlgebra> {
        if p.dim() != self.dim() {
            return None;
        }
        let p_inv = p.inverse()?;
        let d = self.dim();
        let f: Vec<Vector> = p.columns().to_vec();
        let mut binary = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                binary.push(p_inv.act(&self.mul(&f[i], &f[j])));
            }
        }
        let mut ternary = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    ternary.push(p_inv.act(&self.tri(&f[i], &f[j], &f[k])));
                }
            }
        }
        let twist = p_inv.then_after(&self.twist.then_after(p));
        Some(HomAlgebra::from_parts(self.basis.clone(), self.params.clone(), binary, ternary, twist))
    }
}

pub(crate) fn weak_morphism_failure_unchecked(
    theta: &LinearMap,
    a: &HomAlgebra,
    b: &HomAlgebra,
) -> Option<TupleFailure> {
    let d = a.dim();
    let images: Vec<Vector> = theta.columns().to_vec();
    for i in 0..d {
        for j in 0..d {
            let lhs = theta.act(a.binary(i, j));
            let rhs = b.mul(&images[i], &images[j]);
            let residual = lhs.sub(&rhs);
            if !residual.is_zero() {
                return Some(TupleFailure { tuple: BasisTuple::Binary(i, j), residual });
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = theta.act(a.ternary(i, j, k));
                let rhs = b.tri(&images[i], &images[j], &images[k]);
                let residual = lhs.sub(&rhs);
                if !residual.is_zero() {
                    return Some(TupleFailure { tuple: BasisTuple::Ternary(i, j, k), residual });
                }
            }
        }
    }
    None
}

/// First basis tuple where `θ` fails to preserve the operations from `a` to `b`.
pub fn weak_morphism_failure(
    theta: &LinearMap,
    a: &HomAlgebra,
    b: &HomAlgebra,
) -> Result<Option<TupleFailure>, DimensionMismatch> {
    check_dim(a.dim(), b.dim())?;
    check_dim(a.dim(), theta.dim())?;
    Ok(weak_morphism_failure_unchecked(theta, a, b))
}

pub fn is_weak_morphism(theta: &LinearMap, a: &HomAlgebra, b: &HomAlgebra) -> Result<bool, DimensionMismatch> {
    Ok(weak_morphism_failure(theta, a, b)?.is_none())
}

/// Weak morphism that also satisfies `θ ∘ α_A = α_B ∘ θ`.
pub fn morphism_failure(
    theta: &LinearMap,
    a: &HomAlgebra,
    b: &HomAlgebra,
) -> Result<Option<TupleFailure>, DimensionMismatch> {
    if let Some(f) = weak_morphism_failure(theta, a, b)? {
        return Ok(Some(f));
    }
    let left = theta.then_after(a.twist());
    let right = b.twist().then_after(theta);
    for j in 0..a.dim() {
        let residual = left.column(j).sub(right.column(j));
        if !residual.is_zero() {
            return Ok(Some(TupleFailure { tuple: BasisTuple::Twist(j), residual }));
        }
    }
    Ok(None)
}

pub fn is_morphism(theta: &LinearMap, a: &HomAlgebra, b: &HomAlgebra) -> Result<bool, DimensionMismatch> {
    Ok(morphism_failure(theta, a, b)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogParams, Sign};
    use crate::coeff::int;

    fn e(dim: usize, i: usize) -> Vector {
        Vector::basis(dim, i)
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn a1() -> HomAlgebra {
        catalog::get("A1", &CatalogParams::default()).unwrap()
    }

    #[test]
    fn binary_evaluation_on_a1() {
        let a = a1();
        assert_eq!(a.eval_binary(&e(2, 0), &e(2, 1)).unwrap(), e(2, 1).neg());
        assert!(a.eval_binary(&e(2, 0), &e(2, 0)).unwrap().is_zero());
        assert_eq!(a.eval_binary(&e(2, 1), &e(2, 0)).unwrap(), e(2, 1));
    }

    #[test]
    fn ternary_evaluation_on_catalog() {
        let a = a1();
        assert_eq!(a.eval_ternary(&e(2, 0), &e(2, 1), &e(2, 0)).unwrap(), e(2, 0));
        let a2 = catalog::get("A2", &CatalogParams::default()).unwrap();
        assert!(a2.eval_ternary(&e(2, 0), &e(2, 1), &e(2, 1)).unwrap().is_zero());
        let a3 = catalog::get("A3", &CatalogParams { sign: Some(Sign::Plus), ..Default::default() }).unwrap();
        assert_eq!(
            a3.eval_ternary(&e(2, 0), &e(2, 1), &e(2, 0)).unwrap(),
            e(2, 1).scale(&Scalar::param("lambda"))
        );
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = a1();
        let err = a.eval_binary(&e(3, 0), &e(2, 0)).unwrap_err();
        assert_eq!(err, DimensionMismatch { expected: 2, found: 3 });
        assert!(LinearMap::identity(2).apply(&e(3, 0)).is_err());
        assert!(LinearMap::identity(2).compose(&LinearMap::identity(3)).is_err());
    }

    #[test]
    fn powers_of_maps() {
        let b = Scalar::param("b");
        let a = Scalar::param("a");
        assert!(LinearMap::diagonal(vec![s(1), b.clone()]).power(0).is_identity());

        let beta45 = LinearMap::diagonal(vec![s(1), b.clone()]);
        for n in 0..5u32 {
            let k = 1u64 << n;
            assert_eq!(beta45.power(k).apply(&e(2, 1)).unwrap(), e(2, 1).scale(&b.pow(k)));
        }

        let beta43 = LinearMap::from_rows(vec![vec![s(1), s(0)], vec![a.clone(), b.clone()]]).unwrap();
        let expected = Vector::from_coords(vec![s(1), &a * &(&s(1) + &b)]);
        assert_eq!(beta43.power(2).apply(&e(2, 0)).unwrap(), expected);
    }

    #[test]
    fn identity_twist_is_multiplicative() {
        assert!(a1().is_multiplicative());
        assert!(HomAlgebra::new(3).is_multiplicative());
    }

    #[test]
    fn twist_multiplicativity() {
        // the triangular map is an endomorphism of A2, so attaching it keeps HB1/HB2
        let a2 = catalog::get("A2", &CatalogParams::default()).unwrap();
        let twisted = catalog::get_twisted("HB_A2", &CatalogParams::default()).unwrap();
        assert!(a2.with_twist(twisted.twist().clone()).unwrap().is_multiplicative());
        // diag(1, 2) on A1: [αe1, αe2, αe1] = 2 e1 but α[e1, e2, e1] = e1
        let raw = a1().with_twist(LinearMap::diagonal(vec![s(1), s(2)])).unwrap();
        let fail = raw.multiplicativity_failure().unwrap();
        assert_eq!(fail.tuple, BasisTuple::Ternary(0, 1, 0));
        assert_eq!(fail.residual, Vector::from_coords(vec![s(-1), s(0)]));
    }

    #[test]
    fn weak_morphism_examples() {
        let a = a1();
        assert!(is_weak_morphism(&LinearMap::identity(2), &a, &a).unwrap());

        let a3 = catalog::get("A3", &CatalogParams { sign: Some(Sign::Minus), ..Default::default() }).unwrap();
        // β(e1) = e1, β(e2) = b2 e2 is an endomorphism of (A3) exactly when b2^2 = 1
        for b2 in [1, -1] {
            let beta = LinearMap::diagonal(vec![s(1), s(b2)]);
            assert!(is_weak_morphism(&beta, &a3, &a3).unwrap());
            assert!(is_morphism(&beta, &a3, &a3).unwrap());
        }
        let symbolic = LinearMap::diagonal(vec![s(1), Scalar::param("b2")]);
        assert!(!is_weak_morphism(&symbolic, &a3, &a3).unwrap());

        let theta = LinearMap::from_rows(vec![vec![s(1), s(0)], vec![s(1), s(1)]]).unwrap();
        let fail = weak_morphism_failure(&theta, &a, &a).unwrap().unwrap();
        assert!(!fail.residual.is_zero());
    }

    #[test]
    fn morphism_requires_intertwining() {
        let h = catalog::get_twisted("HB_A2", &CatalogParams::default()).unwrap();
        // the twist of a multiplicative algebra is always a morphism of it
        assert!(is_morphism(h.twist(), &h, &h).unwrap());
        let mut bind = BTreeMap::new();
        bind.insert("a".to_string(), s(1));
        bind.insert("b".to_string(), s(2));
        let h = h.substitute(&bind);
        // diag(1, 2) is a weak endomorphism of HB_A2 at a = 1 but does not commute with its twist
        let theta = LinearMap::diagonal(vec![s(1), s(2)]);
        assert!(is_weak_morphism(&theta, &h, &h).unwrap());
        let f = morphism_failure(&theta, &h, &h).unwrap().unwrap();
        assert_eq!(f.tuple, BasisTuple::Twist(0));
    }

    #[test]
    fn inverse_and_change_of_basis() {
        let p = LinearMap::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]).unwrap();
        let inv = p.inverse().unwrap();
        assert!(p.compose(&inv).unwrap().is_identity());
        assert!(LinearMap::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]).unwrap().inverse().is_none());

        let a = a1();
        let b = a.change_basis(&p).unwrap();
        // p is an isomorphism from b onto a
        assert!(is_morphism(&p, &b, &a).unwrap());
        assert_eq!(b.change_basis(&inv).unwrap(), a);
    }

    #[test]
    fn vector_helpers() {
        let v = Vector::from_rationals([int(1), int(2)]);
        assert_eq!(v.add(&v), v.scale(&s(2)));
        assert!(v.sub(&v).is_zero());
    }
}
