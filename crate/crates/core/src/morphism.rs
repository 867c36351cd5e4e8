//! Polynomial constraint systems for self-morphisms of an algebra.
//!
//! The entries of an unknown map `θ` become polynomial unknowns; every basis
//! pair and triple contributes the coordinates of `θ(e_i ∗ e_j) − θe_i ∗ θe_j`
//! and `θ{e_i,e_j,e_k} − {θe_i,θe_j,θe_k}`. Candidate maps, including
//! parametric families, are verified by exact substitution; finite grids of
//! rational values are searched by backtracking.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{HomAlgebra, LinearMap, Vector};
use crate::coeff::{int, rat, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("candidate has dimension {found}, system expects {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("candidate assignment does not match the unknowns: {0}")]
    UnknownNameMismatch(String),
    #[error("parameter `{0}` is not bound to a rational value")]
    UnboundParameter(String),
    #[error("classification needs a 2-dimensional algebra, got dimension {0}")]
    NotTwoDimensional(usize),
}

/// Polynomial equations `p = 0` in the entries of an unknown map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismConstraintSystem {
    pub dim: usize,
    /// Column-major: the first `dim` names are the coordinates of `θ(e_1)`.
    pub unknowns: Vec<String>,
    pub params: BTreeSet<String>,
    pub equations: Vec<Scalar>,
}

/// Names for the entries of `θ`: `a1, a2, b1, b2` in dimension 2
/// (`θ(e1) = a1 e1 + a2 e2`, `θ(e2) = b1 e1 + b2 e2`), `t<j>_<i>` otherwise.
pub fn unknown_names(dim: usize, avoid: &BTreeSet<String>) -> Vec<String> {
    let base = |j: usize, i: usize| {
        if dim == 2 {
            format!("{}{}", ["a", "b"][j], i + 1)
        } else {
            format!("t{}_{}", j + 1, i + 1)
        }
    };
    let mut names = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        for i in 0..dim {
            let mut n = base(j, i);
            while avoid.contains(&n) {
                n.push('_');
            }
            names.push(n);
        }
    }
    names
}

impl MorphismConstraintSystem {
    /// The unknown map with symbolic entries.
    pub fn unknown_map(&self) -> LinearMap {
        let d = self.dim;
        let cols = (0..d)
            .map(|j| Vector::from_coords((0..d).map(|i| Scalar::param(&self.unknowns[j * d + i])).collect()))
            .collect();
        LinearMap::from_columns(cols).expect("square by construction")
    }

    fn bindings_for(&self, theta: &LinearMap) -> Result<BTreeMap<String, Scalar>, MorphismError> {
        if theta.dim() != self.dim {
            return Err(MorphismError::ShapeMismatch { expected: self.dim, found: theta.dim() });
        }
        let d = self.dim;
        let mut b = BTreeMap::new();
        for j in 0..d {
            for i in 0..d {
                b.insert(self.unknowns[j * d + i].clone(), theta.entry(i, j).clone());
            }
        }
        Ok(b)
    }

    /// Substitute a full assignment of the unknowns; return the nonzero
    /// residual polynomials, normalized and deduplicated.
    pub fn residuals(&self, assignment: &BTreeMap<String, Scalar>) -> Result<Vec<Scalar>, MorphismError> {
        let given: BTreeSet<&String> = assignment.keys().collect();
        let wanted: BTreeSet<&String> = self.unknowns.iter().collect();
        if given != wanted {
            let missing: Vec<_> = wanted.difference(&given).map(|s| s.as_str()).collect();
            let extra: Vec<_> = given.difference(&wanted).map(|s| s.as_str()).collect();
            return Err(MorphismError::UnknownNameMismatch(format!(
                "missing [{}], unexpected [{}]",
                missing.join(", "),
                extra.join(", ")
            )));
        }
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for eq in &self.equations {
            let r = eq.substitute(assignment).monic();
            if !r.is_zero() && seen.insert(r.clone()) {
                out.push(r);
            }
        }
        Ok(out)
    }
}

/// Outcome of substituting a candidate into a constraint system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Pass,
    FailingEquation { index: usize, equation: Scalar, residual: Scalar },
}

impl Verification {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verification::Pass)
    }
}

/// Self-morphism constraints of `a`. With `intertwine`, the twist equation
/// `θα = αθ` is added, giving morphisms rather than weak morphisms.
pub fn generate_constraints(a: &HomAlgebra, intertwine: bool) -> MorphismConstraintSystem {
    let d = a.dim();
    let params = a.params().clone();
    let mut avoid = params.clone();
    avoid.extend(a.variables());
    let unknowns = unknown_names(d, &avoid);
    let mut sys = MorphismConstraintSystem { dim: d, unknowns, params, equations: Vec::new() };
    let theta = sys.unknown_map();
    let images: Vec<Vector> = theta.columns().to_vec();

    let mut seen = HashSet::new();
    let mut push = |v: Vector, eqs: &mut Vec<Scalar>| {
        for c in v.coords() {
            let m = c.monic();
            if !m.is_zero() && seen.insert(m.clone()) {
                eqs.push(m);
            }
        }
    };
    let mut eqs = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let r = theta.act(a.binary(i, j)).sub(&a.mul(&images[i], &images[j]));
            push(r, &mut eqs);
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let r = theta.act(a.ternary(i, j, k)).sub(&a.tri(&images[i], &images[j], &images[k]));
                push(r, &mut eqs);
            }
        }
    }
    if intertwine {
        let left = theta.compose(a.twist()).expect("same dimension");
        let right = a.twist().compose(&theta).expect("same dimension");
        for j in 0..d {
            push(left.column(j).sub(right.column(j)), &mut eqs);
        }
    }
    sys.equations = eqs;
    sys
}

pub fn verify_candidate(sys: &MorphismConstraintSystem, theta: &LinearMap) -> Result<Verification, MorphismError> {
    let b = sys.bindings_for(theta)?;
    verify_assignment(sys, &b)
}

/// Like [`verify_candidate`] with the unknowns given by name.
pub fn verify_assignment(
    sys: &MorphismConstraintSystem,
    assignment: &BTreeMap<String, Scalar>,
) -> Result<Verification, MorphismError> {
    sys.residuals(assignment)?;
    for (index, eq) in sys.equations.iter().enumerate() {
        let r = eq.substitute(assignment);
        if !r.is_zero() {
            return Ok(Verification::FailingEquation { index, equation: eq.clone(), residual: r });
        }
    }
    Ok(Verification::Pass)
}

/// All maps with entries in `values` satisfying every equation, in
/// lexicographic order of the unknowns (values ascending).
pub fn grid_search(
    sys: &MorphismConstraintSystem,
    values: &[Rational],
    bindings: &BTreeMap<String, Scalar>,
) -> Result<Vec<LinearMap>, MorphismError> {
    let mut vals: Vec<Rational> = values.to_vec();
    vals.sort();
    vals.dedup();
    let unknown_index: BTreeMap<&str, usize> =
        sys.unknowns.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();

    // bind parameters, then bucket each equation by its last unknown
    let n = sys.unknowns.len();
    let mut buckets: Vec<Vec<Scalar>> = vec![Vec::new(); n];
    for eq in &sys.equations {
        let e = eq.substitute(bindings);
        let mut last = None;
        for v in e.variables() {
            match unknown_index.get(v.as_str()) {
                Some(&i) => last = Some(last.map_or(i, |l: usize| l.max(i))),
                None => return Err(MorphismError::UnboundParameter(v)),
            }
        }
        match last {
            Some(i) => buckets[i].push(e),
            None if e.is_zero() => {}
            None => return Ok(Vec::new()),
        }
    }
    if n == 0 {
        return Ok(vec![LinearMap::zero(0)]);
    }

    let mut out = Vec::new();
    let mut assign: BTreeMap<String, Scalar> = BTreeMap::new();
    let mut choice = vec![0usize; n];
    search(sys, &vals, &buckets, 0, &mut choice, &mut assign, &mut out);
    Ok(out)
}

fn search(
    sys: &MorphismConstraintSystem,
    vals: &[Rational],
    buckets: &[Vec<Scalar>],
    depth: usize,
    choice: &mut Vec<usize>,
    assign: &mut BTreeMap<String, Scalar>,
    out: &mut Vec<LinearMap>,
) {
    let n = sys.unknowns.len();
    if depth == n {
        let d = sys.dim;
        let cols = (0..d)
            .map(|j| Vector::from_rationals((0..d).map(|i| vals[choice[j * d + i]].clone())))
            .collect();
        out.push(LinearMap::from_columns(cols).expect("square"));
        return;
    }
    for (vi, v) in vals.iter().enumerate() {
        assign.insert(sys.unknowns[depth].clone(), Scalar::from_rational(v.clone()));
        if buckets[depth].iter().all(|e| e.substitute(assign).is_zero()) {
            choice[depth] = vi;
            search(sys, vals, buckets, depth + 1, choice, assign, out);
        }
    }
    assign.remove(&sys.unknowns[depth]);
}

/// One entry of a printed morphism family: fixed value or free parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Fixed(Scalar),
    Free,
}

/// A parametric family of 2×2 maps, entries in unknown order `a1, a2, b1, b2`.
#[derive(Clone, Debug)]
pub struct MorphismFamily {
    pub name: &'static str,
    pub slots: [Slot; 4],
}

impl MorphismFamily {
    fn free_count(&self) -> usize {
        self.slots.iter().filter(|s| matches!(s, Slot::Free)).count()
    }

    /// The family as a symbolic map; free slot `k` becomes the parameter named
    /// after unknown `k`.
    pub fn as_map(&self, unknowns: &[String]) -> LinearMap {
        let entry = |k: usize| match &self.slots[k] {
            Slot::Fixed(s) => s.clone(),
            Slot::Free => Scalar::param(&unknowns[k]),
        };
        let cols = vec![
            Vector::from_coords(vec![entry(0), entry(1)]),
            Vector::from_coords(vec![entry(2), entry(3)]),
        ];
        LinearMap::from_columns(cols).expect("2x2")
    }

    /// Every member of `self` is a member of `other`.
    fn within(&self, other: &MorphismFamily) -> bool {
        self.slots.iter().zip(&other.slots).all(|(a, b)| match (a, b) {
            (_, Slot::Free) => true,
            (Slot::Fixed(x), Slot::Fixed(y)) => x == y,
            (Slot::Free, Slot::Fixed(_)) => false,
        })
    }

    pub fn contains(&self, m: &LinearMap) -> bool {
        let entries = [m.entry(0, 0), m.entry(1, 0), m.entry(0, 1), m.entry(1, 1)];
        self.slots.iter().zip(entries).all(|(s, e)| match s {
            Slot::Fixed(v) => v == e,
            Slot::Free => true,
        })
    }

    fn describe(&self) -> String {
        let names = ["a1", "a2", "b1", "b2"];
        let show = |k: usize| match &self.slots[k] {
            Slot::Fixed(s) => s.clone(),
            Slot::Free => Scalar::param(names[k]),
        };
        let img = |c0: Scalar, c1: Scalar| crate::io::format_vector(&Vector::from_coords(vec![c0, c1]), &["e1".into(), "e2".into()]);
        format!("e1 -> {}, e2 -> {}", img(show(0), show(1)), img(show(2), show(3)))
    }
}

/// Known self-morphism families of the 2-dimensional Bol algebras:
/// `collapse` kills `e2`, `triangular` fixes `e1` modulo `e2`, `diagonal`
/// fixes `e1` and scales `e2`.
pub fn printed_families() -> Vec<MorphismFamily> {
    let one = || Slot::Fixed(Scalar::one());
    let zero = || Slot::Fixed(Scalar::zero());
    vec![
        MorphismFamily { name: "collapse", slots: [Slot::Free, Slot::Free, zero(), zero()] },
        MorphismFamily { name: "triangular", slots: [one(), Slot::Free, zero(), Slot::Free] },
        MorphismFamily { name: "diagonal", slots: [one(), zero(), zero(), Slot::Free] },
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyStatus {
    /// Every equation vanishes identically in the free parameters.
    Identically,
    /// Holds only where these residual polynomials vanish.
    Conditional(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    /// The identity is the only nonzero self-morphism.
    IdOnly,
    /// Families covering all nonzero grid solutions; conditional ones carry their residuals.
    Families(Vec<(String, FamilyStatus)>),
}

pub struct ClassifyOptions {
    pub grid: Vec<Rational>,
    /// Value substituted for every algebra parameter during the grid spot-check.
    pub spot_value: Rational,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            grid: vec![int(-2), int(-1), rat(-1, 2), int(0), rat(1, 2), int(1), int(2)],
            spot_value: int(2),
        }
    }
}

/// Which printed family (if any) describes the self-morphisms of a
/// 2-dimensional algebra, with a grid search as completeness spot-check.
#[derive(Clone, Debug)]
pub struct Classification {
    pub families: Vec<(MorphismFamily, FamilyStatus)>,
    pub spot_bindings: BTreeMap<String, Scalar>,
    pub grid: Vec<Rational>,
    pub grid_hits: Vec<LinearMap>,
    /// Nonzero grid solutions outside every reported family.
    pub uncovered: Vec<LinearMap>,
    pub verdict: ClassVerdict,
}

pub fn classify_2dim(a: &HomAlgebra, opts: &ClassifyOptions) -> Result<Classification, MorphismError> {
    if a.dim() != 2 {
        return Err(MorphismError::NotTwoDimensional(a.dim()));
    }
    let sys = generate_constraints(a, false);
    let mut families = Vec::new();
    for fam in printed_families() {
        let map = fam.as_map(&sys.unknowns);
        let assignment = sys.bindings_for(&map)?;
        let res = sys.residuals(&assignment)?;
        let status = if res.is_empty() { FamilyStatus::Identically } else { FamilyStatus::Conditional(res) };
        families.push((fam, status));
    }

    let mut spot = BTreeMap::new();
    for p in a.variables().into_iter().chain(a.params().iter().cloned()) {
        spot.insert(p, Scalar::from_rational(opts.spot_value.clone()));
    }
    let grid_hits = grid_search(&sys, &opts.grid, &spot)?;
    let nonzero: Vec<&LinearMap> = grid_hits.iter().filter(|m| **m != LinearMap::zero(2)).collect();

    // identically-holding families, minus those inside a larger one
    let holding: Vec<&(MorphismFamily, FamilyStatus)> =
        families.iter().filter(|(_, s)| *s == FamilyStatus::Identically).collect();
    let identical: Vec<&(MorphismFamily, FamilyStatus)> = holding
        .iter()
        .filter(|(f, _)| !holding.iter().any(|(g, _)| g.name != f.name && f.within(g)))
        .copied()
        .collect();
    let mut uncovered = Vec::new();
    let verdict = if identical.is_empty() && nonzero.len() == 1 && nonzero[0].is_identity() {
        ClassVerdict::IdOnly
    } else {
        let mut chosen: Vec<(String, FamilyStatus)> =
            identical.iter().map(|(f, s)| (f.name.to_string(), s.clone())).collect();
        for hit in &nonzero {
            if identical.iter().any(|(f, _)| f.contains(hit)) {
                continue;
            }
            let best = families
                .iter()
                .filter(|(f, _)| f.contains(hit))
                .min_by_key(|(f, _)| f.free_count());
            match best {
                Some((f, s)) => {
                    if !chosen.iter().any(|(n, _)| n == f.name) {
                        chosen.push((f.name.to_string(), s.clone()));
                    }
                }
                None => uncovered.push((*hit).clone()),
            }
        }
        ClassVerdict::Families(chosen)
    };
    Ok(Classification { families, spot_bindings: spot, grid: opts.grid.clone(), grid_hits, uncovered, verdict })
}

fn fmt_conditions(res: &[Scalar]) -> String {
    res.iter().map(|r| format!("{r} = 0")).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = ["e1".to_string(), "e2".to_string()];
        for (fam, status) in &self.families {
            match status {
                FamilyStatus::Identically => writeln!(f, "family {} [{}]: holds identically", fam.name, fam.describe())?,
                FamilyStatus::Conditional(res) => {
                    writeln!(f, "family {} [{}]: requires {}", fam.name, fam.describe(), fmt_conditions(res))?
                }
            }
        }
        let grid: Vec<String> = self.grid.iter().map(|r| r.to_string()).collect();
        let spot: Vec<String> = self.spot_bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(
            f,
            "grid {{{}}}{}: {} solutions",
            grid.join(", "),
            if spot.is_empty() { String::new() } else { format!(" at {}", spot.join(", ")) },
            self.grid_hits.len()
        )?;
        for m in &self.grid_hits {
            if *m == LinearMap::zero(2) {
                writeln!(f, "  zero map")?;
            } else {
                writeln!(f, "  {}", crate::io::format_map_inline(m, &labels))?;
            }
        }
        for m in &self.uncovered {
            writeln!(f, "uncovered: {}", crate::io::format_map_inline(m, &labels))?;
        }
        match &self.verdict {
            ClassVerdict::IdOnly => write!(f, "verdict: Id only"),
            ClassVerdict::Families(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|(n, s)| match s {
                        FamilyStatus::Identically => n.clone(),
                        FamilyStatus::Conditional(res) => format!("{n} (requires {})", fmt_conditions(res)),
                    })
                    .collect();
                write!(f, "verdict: families {}", parts.join(", "))
            }
        }
    }
}

impl Classification {
    pub fn family_status(&self, name: &str) -> Option<&FamilyStatus> {
        self.families.iter().find(|(f, _)| f.name == name).map(|(_, s)| s)
    }
}
