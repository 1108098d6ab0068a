//! Demazure roots of complete fans and reflexive polytopes.
//!
//! A root is a lattice point `m` pairing to `−1` with exactly one ray
//! generator `η_m` and non-negatively with all others. Semisimple roots are
//! those whose negative is again a root.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::lattice::{
    is_primitive, is_saturated_basis, rank, smith_normal_form, solve_in_span, IntMatrix, IntVector,
};
use crate::polytope::{convex_hull, is_reflexive, LatticePolytope, RationalPolytope};

/// Primitive ray generators of a complete fan, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaySet {
    pub dim: usize,
    pub generators: Vec<IntVector>,
}

impl RaySet {
    /// Validates primitivity, distinctness and positive spanning.
    pub fn new(generators: Vec<IntVector>) -> Result<Self> {
        let dim = generators
            .first()
            .map(IntVector::dim)
            .ok_or_else(|| Error::PreconditionFailed("empty ray set".into()))?;
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(dim, g.dim()));
            }
            if !is_primitive(g) {
                return Err(Error::PreconditionFailed(format!("ray generator {g} is not primitive")));
            }
        }
        let distinct: BTreeSet<&IntVector> = generators.iter().collect();
        if distinct.len() != generators.len() {
            return Err(Error::PreconditionFailed("ray generators are not distinct".into()));
        }
        let rays = RaySet { dim, generators };
        rays.root_region()?;
        Ok(rays)
    }

    /// Normal fan of a polytope with the origin in its interior: the
    /// primitive facet normals, in facet order.
    pub fn of_polytope(p: &LatticePolytope) -> Result<Self> {
        if !p.origin_in_interior() {
            return Err(Error::OriginNotInterior);
        }
        RaySet::new(p.facets().iter().map(|f| f.normal.clone()).collect())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self) -> IntVector {
        IntVector::sum(self.dim, &self.generators)
    }

    /// `{m : ⟨v_τ, m⟩ ≥ −1 ∀τ}`, bounded exactly when the rays positively span.
    fn root_region(&self) -> Result<RationalPolytope> {
        let pts: Vec<_> = self.generators.iter().map(IntVector::to_rational).collect();
        let hull = RationalPolytope::from_points(&pts).map_err(|_| Error::RaysNotSpanning)?;
        hull.polar().map_err(|_| Error::RaysNotSpanning)
    }

    /// `(⟨v_τ, m⟩)_τ`.
    pub fn pairings(&self, m: &IntVector) -> Vec<BigInt> {
        self.generators.iter().map(|v| v.dot(m)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RootKind {
    S1,
    S2,
    U1,
    U2,
}

impl RootKind {
    pub fn is_semisimple(self) -> bool {
        matches!(self, RootKind::S1 | RootKind::S2)
    }

    pub const ALL: [RootKind; 4] = [RootKind::S1, RootKind::S2, RootKind::U1, RootKind::U2];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub m: IntVector,
    /// Index of `η_m` in the ray set.
    pub eta: usize,
    pub kind: RootKind,
}

impl Root {
    pub fn is_semisimple(&self) -> bool {
        self.kind.is_semisimple()
    }
}

/// All roots of a fan, sorted by lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub rays: RaySet,
    roots: Vec<Root>,
    index: BTreeMap<IntVector, usize>,
}

impl RootSet {
    fn classify(rays: RaySet, raw: Vec<(IntVector, usize)>) -> Self {
        let points: BTreeSet<&IntVector> = raw.iter().map(|(m, _)| m).collect();
        let semisimple: Vec<bool> = raw.iter().map(|(m, _)| points.contains(&-m)).collect();
        let eta_s: BTreeSet<usize> = raw.iter().zip(&semisimple).filter(|(_, s)| **s).map(|((_, e), _)| *e).collect();
        let eta_u: BTreeSet<usize> = raw.iter().zip(&semisimple).filter(|(_, s)| !**s).map(|((_, e), _)| *e).collect();
        let mut roots: Vec<Root> = raw
            .iter()
            .zip(&semisimple)
            .map(|((m, eta), &s)| {
                let kind = match (s, s && eta_u.contains(eta), !s && eta_s.contains(eta)) {
                    (true, false, _) => RootKind::S1,
                    (true, true, _) => RootKind::S2,
                    (false, _, false) => RootKind::U1,
                    (false, _, true) => RootKind::U2,
                };
                Root {
                    m: m.clone(),
                    eta: *eta,
                    kind,
                }
            })
            .collect();
        roots.sort_by(|a, b| a.m.cmp(&b.m));
        let index = roots.iter().enumerate().map(|(i, r)| (r.m.clone(), i)).collect();
        RootSet { rays, roots, index }
    }

    pub fn dim(&self) -> usize {
        self.rays.dim
    }

    pub fn all(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn get(&self, m: &IntVector) -> Option<&Root> {
        self.index.get(m).map(|&i| &self.roots[i])
    }

    pub fn contains(&self, m: &IntVector) -> bool {
        self.index.contains_key(m)
    }

    fn require(&self, m: &IntVector) -> Result<&Root> {
        self.get(m).ok_or_else(|| Error::NotARoot(m.to_string()))
    }

    pub fn eta(&self, r: &Root) -> &IntVector {
        &self.rays.generators[r.eta]
    }

    pub fn of_kind(&self, kinds: &[RootKind]) -> Vec<&Root> {
        self.roots.iter().filter(|r| kinds.contains(&r.kind)).collect()
    }

    pub fn semisimple(&self) -> Vec<&Root> {
        self.of_kind(&[RootKind::S1, RootKind::S2])
    }

    pub fn unipotent(&self) -> Vec<&Root> {
        self.of_kind(&[RootKind::U1, RootKind::U2])
    }

    pub fn count(&self, kinds: &[RootKind]) -> usize {
        self.of_kind(kinds).len()
    }

    /// `η(A)` for the roots of the given kinds, as ray indices.
    pub fn eta_set(&self, kinds: &[RootKind]) -> BTreeSet<usize> {
        self.of_kind(kinds).iter().map(|r| r.eta).collect()
    }

    /// True iff there are no unipotent roots.
    pub fn is_semisimple(&self) -> bool {
        self.roots.iter().all(Root::is_semisimple)
    }

    pub fn points(&self, roots: &[&Root]) -> Vec<IntVector> {
        roots.iter().map(|r| r.m.clone()).collect()
    }

    /// `⟨η_v, w⟩ = 0 = ⟨η_w, v⟩`.
    pub fn orthogonal(&self, v: &IntVector, w: &IntVector) -> Result<bool> {
        let (rv, rw) = (self.require(v)?, self.require(w)?);
        Ok(self.eta(rv).dot(w).is_zero() && self.eta(rw).dot(v).is_zero())
    }

    /// Distinct semisimple roots with `η_{−v} = η_{−w}`.
    pub fn equivalent(&self, v: &IntVector, w: &IntVector) -> Result<bool> {
        let (rv, rw) = (self.require(v)?, self.require(w)?);
        if v == w || !rv.is_semisimple() || !rw.is_semisimple() {
            return Ok(false);
        }
        Ok(self.require(&-v)?.eta == self.require(&-w)?.eta)
    }

    /// Monomial exponent vector `(⟨v_ρ, m⟩)_ρ` with the `η_m` entry zeroed.
    pub fn monomial(&self, r: &Root) -> Vec<BigInt> {
        let mut e = self.rays.pairings(&r.m);
        e[r.eta] = BigInt::zero();
        e
    }
}

/// Roots of the fan with the given rays, by scanning the lattice points of
/// `{m : ⟨v_τ, m⟩ ≥ −1}`.
pub fn compute_roots(rays: &RaySet) -> Result<RootSet> {
    let region = rays.root_region()?;
    let mut raw = Vec::new();
    for m in region.lattice_points() {
        let pairings = rays.pairings(&m);
        let minus_one: Vec<usize> = (0..pairings.len()).filter(|&i| pairings[i] == -BigInt::one()).collect();
        if minus_one.len() == 1 && pairings.iter().all(|x| x >= &-BigInt::one()) {
            raw.push((m, minus_one[0]));
        }
    }
    Ok(RootSet::classify(rays.clone(), raw))
}

/// Roots of a reflexive polytope: lattice points in the relative interior of
/// facets. Rays are the facet normals in facet order, so `η` indices are
/// facet indices.
pub fn roots_of_reflexive(p: &LatticePolytope) -> Result<RootSet> {
    match is_reflexive(p) {
        Ok(true) => {}
        Ok(false) | Err(Error::OriginNotInterior) => return Err(Error::NotReflexive),
        Err(e) => return Err(e),
    }
    let rays = RaySet::of_polytope(p)?;
    let mut raw = Vec::new();
    for x in p.boundary_lattice_points() {
        let tight = p.tight_facets(&x);
        if tight.len() == 1 {
            raw.push((x, tight[0]));
        }
    }
    Ok(RootSet::classify(rays, raw))
}

/// Partial addition of roots: for `⟨η_v, w⟩ > 0` and `v ≠ −w`, `v + w` is a
/// root with `η_{v+w} = η_w`.
pub fn orthogonalize(rs: &RootSet, v: &IntVector, w: &IntVector) -> Result<Root> {
    let rv = rs.require(v)?;
    let rw = rs.require(w)?;
    if *v == -w {
        return Err(Error::PreconditionFailed("v = −w".into()));
    }
    if !rs.eta(rv).dot(w).is_positive() {
        return Err(Error::PreconditionFailed(format!("⟨η_v, w⟩ ≤ 0 for v = {v}, w = {w}")));
    }
    ensure(rs.eta(rw).dot(v).is_zero(), "tame-orthogonal", || format!("⟨η_w, v⟩ ≠ 0 for v = {v}, w = {w}"))?;
    let s = v + w;
    let rsum = rs
        .get(&s)
        .ok_or_else(|| Error::violation("tame-sum", format!("{v} + {w} is not a root")))?;
    ensure(rsum.eta == rw.eta, "tame-eta", || format!("η of {s} differs from η of {w}"))?;
    ensure(
        rsum.is_semisimple() == (rv.is_semisimple() && rw.is_semisimple()),
        "tame-semisimple",
        || format!("semisimplicity of {s} inconsistent"),
    )?;
    Ok(rsum.clone())
}

/// Degree of a variable in `Cl(X) ≅ Z^f ⊕ ⊕ Z/dᵢ`: torsion components
/// reduced to `[0, dᵢ)` first, then free components.
pub type Degree = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeClass {
    /// Ray indices of the variables in the class.
    pub variables: Vec<usize>,
    pub degree: Degree,
    /// Distinct non-variable monomials of the same degree, as exponent vectors.
    pub monomials: Vec<Vec<BigInt>>,
}

/// Class-group grading of the homogeneous coordinate ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeClassData {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub degrees: Vec<Degree>,
    /// `Y₁, …, Y_s` in the standard order.
    pub classes: Vec<DegreeClass>,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

impl DegreeClassData {
    /// `cᵢ = |Yᵢ| − 1` for `i ≤ q`.
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes[..self.q].iter().map(|c| c.variables.len() - 1).collect()
    }

    fn variables_in(&self, range: std::ops::Range<usize>) -> usize {
        self.classes[range].iter().map(|c| c.variables.len()).sum()
    }
}

fn degree_of(exponents: &[BigInt], degrees: &[Degree], torsion_mods: &[Option<BigInt>]) -> Degree {
    let k = degrees.first().map_or(0, Vec::len);
    (0..k)
        .map(|j| {
            let raw: BigInt = exponents.iter().zip(degrees).map(|(e, d)| e * &d[j]).sum();
            match &torsion_mods[j] {
                Some(n) => raw.mod_floor(n),
                None => raw,
            }
        })
        .collect()
}

/// Degrees of the Cox variables via the Smith form of the ray matrix, the
/// partition into degree classes, and the monomial classes read off the
/// unipotent roots. All counting identities are checked.
pub fn cox_classes(rays: &RaySet, rs: &RootSet) -> Result<DegreeClassData> {
    let n = rays.len();
    let a = IntMatrix::from_rows(&rays.generators, rays.dim);
    let snf = smith_normal_form(&a);
    let factors = snf.invariant_factors();
    let rk = factors.len();
    // Cl = Z^n / im(A), identified with ⊕ Z/d_j ⊕ Z^{n−rk} through U.
    let mut kept: Vec<usize> = Vec::new();
    let mut mods: Vec<Option<BigInt>> = Vec::new();
    for (j, f) in factors.iter().enumerate() {
        if !f.is_one() {
            kept.push(j);
            mods.push(Some(f.clone()));
        }
    }
    for j in rk..n {
        kept.push(j);
        mods.push(None);
    }
    let degrees: Vec<Degree> = (0..n)
        .map(|i| {
            kept.iter()
                .zip(&mods)
                .map(|(&j, m)| match m {
                    Some(d) => snf.u[(j, i)].mod_floor(d),
                    None => snf.u[(j, i)].clone(),
                })
                .collect()
        })
        .collect();

    let mut groups: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for (i, d) in degrees.iter().enumerate() {
        groups.entry(d.clone()).or_default().push(i);
    }

    // every root gives a variable and a monomial of equal degree.
    for r in rs.all() {
        let mono = rs.monomial(r);
        let deg = degree_of(&mono, &degrees, &mods);
        ensure(deg == degrees[r.eta], "cox-degree", || {
            format!("monomial of root {} has degree {:?}, variable has {:?}", r.m, deg, degrees[r.eta])
        })?;
        if r.is_semisimple() {
            let neg = rs.require(&-&r.m)?;
            let unit: Vec<BigInt> = (0..n).map(|i| if i == neg.eta { BigInt::one() } else { BigInt::zero() }).collect();
            ensure(mono == unit, "cox-semisimple", || format!("root {} does not pair two variables", r.m))?;
        }
    }

    let mut classes: Vec<DegreeClass> = groups
        .into_iter()
        .map(|(degree, variables)| {
            let monomials: BTreeSet<Vec<BigInt>> = rs
                .unipotent()
                .into_iter()
                .filter(|r| variables.contains(&r.eta))
                .map(|r| rs.monomial(r))
                .collect();
            DegreeClass {
                variables,
                degree,
                monomials: monomials.into_iter().collect(),
            }
        })
        .collect();
    let category = |c: &DegreeClass| match (c.variables.len() >= 2, c.monomials.is_empty()) {
        (true, true) => 0,
        (true, false) => 1,
        (false, false) => 2,
        (false, true) => 3,
    };
    classes.sort_by_key(|c| (category(c), c.variables[0]));
    let count = |k| classes.iter().filter(|c| category(c) == k).count();
    let p = count(0);
    let q = p + count(1);
    let r = q + count(2);
    let s = classes.len();

    let data = DegreeClassData {
        free_rank: n - rk,
        torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        degrees,
        classes,
        p,
        q,
        r,
        s,
    };
    check_counting_identities(&data, rs)?;
    Ok(data)
}

fn check_counting_identities(data: &DegreeClassData, rs: &RootSet) -> Result<()> {
    use RootKind::*;
    let (p, q, r) = (data.p, data.q, data.r);
    let eta = |k: &[RootKind]| rs.eta_set(k).len();
    ensure(data.variables_in(0..p) == eta(&[S1]), "classes-eta-s1", || {
        format!("Σ_(i≤p)|Yᵢ| = {} but |η(S₁)| = {}", data.variables_in(0..p), eta(&[S1]))
    })?;
    ensure(
        data.variables_in(p..q) == eta(&[S2]) && eta(&[S2]) == eta(&[U2]),
        "classes-eta-s2",
        || format!("Σ_(p<i≤q)|Yᵢ| = {}, |η(S₂)| = {}, |η(U₂)| = {}", data.variables_in(p..q), eta(&[S2]), eta(&[U2])),
    )?;
    ensure(r - q == eta(&[U1]), "classes-eta-u1", || format!("r − q = {} but |η(U₁)| = {}", r - q, eta(&[U1])))?;
    ensure(
        data.variables_in(0..q) + (r - q) == eta(&RootKind::ALL),
        "classes-eta-r",
        || format!("variables in Y₁..Y_r do not match |η(R)| = {}", eta(&RootKind::ALL)),
    )?;
    let pairs = |range: std::ops::Range<usize>| -> usize {
        data.classes[range].iter().map(|c| c.variables.len() * (c.variables.len() - 1)).sum()
    };
    ensure(pairs(0..p) == rs.count(&[S1]), "classes-count-s1", || {
        format!("|S₁| = {} expected {}", rs.count(&[S1]), pairs(0..p))
    })?;
    ensure(pairs(p..q) == rs.count(&[S2]), "classes-count-s2", || {
        format!("|S₂| = {} expected {}", rs.count(&[S2]), pairs(p..q))
    })?;
    let u1: usize = data.classes[q..r].iter().map(|c| c.monomials.len()).sum();
    ensure(u1 == rs.count(&[U1]), "classes-count-u1", || format!("|U₁| = {} expected {}", rs.count(&[U1]), u1))?;
    let u2: usize = data.classes[p..q].iter().map(|c| c.variables.len() * c.monomials.len()).sum();
    ensure(u2 == rs.count(&[U2]), "classes-count-u2", || format!("|U₂| = {} expected {}", rs.count(&[U2]), u2))?;
    Ok(())
}

/// A pairwise orthogonal family of semisimple roots, split into
/// equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootBasis {
    pub roots: Vec<IntVector>,
    /// Index ranges of `roots` forming the classes `C₁, …, C_t`.
    pub classes: Vec<Vec<usize>>,
    /// `A = R ∩ lin(B)`, sorted.
    pub span_roots: Vec<IntVector>,
}

impl RootBasis {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_roots(&self, i: usize) -> Vec<IntVector> {
        self.classes[i].iter().map(|&j| self.roots[j].clone()).collect()
    }
}

/// `(class index i < q, K_i ⊆ Y_i)`; the basis uses the first ray of `K_i`
/// as the common second element of the ordered pairs.
pub type Selection = Vec<(usize, Vec<usize>)>;

pub fn default_selection(dcd: &DegreeClassData) -> Selection {
    (0..dcd.q).map(|i| (i, dcd.classes[i].variables.clone())).collect()
}

/// Builds the root basis for a selection of degree classes and variables,
/// then verifies orthogonality, saturation and the description of
/// `R ∩ lin(B)`.
pub fn build_root_basis(rs: &RootSet, dcd: &DegreeClassData, selection: &Selection) -> Result<RootBasis> {
    let mut seen = BTreeSet::new();
    let mut roots = Vec::new();
    let mut classes = Vec::new();
    for (i, k) in selection {
        if *i >= dcd.q || !seen.insert(*i) {
            return Err(Error::InvalidSelection(format!("class {i} is not an available class of order ≥ 2")));
        }
        let mut k = k.clone();
        k.sort_unstable();
        k.dedup();
        if k.len() < 2 || k.iter().any(|v| !dcd.classes[*i].variables.contains(v)) {
            return Err(Error::InvalidSelection(format!("K_{i} must be a subset of Y_{i} with at least two elements")));
        }
        let rho0 = k[0];
        let mut class = Vec::new();
        for &rho in &k[1..] {
            let found: Vec<&Root> = rs
                .semisimple()
                .into_iter()
                .filter(|r| r.eta == rho && rs.get(&-&r.m).map(|n| n.eta) == Some(rho0))
                .collect();
            ensure(found.len() == 1, "cox-pair", || {
                format!("{} roots for the ordered pair ({rho}, {rho0})", found.len())
            })?;
            class.push(roots.len());
            roots.push(found[0].m.clone());
        }
        classes.push(class);
    }
    let span_roots = roots_in_span(rs, &roots);
    let basis = RootBasis {
        roots,
        classes,
        span_roots,
    };
    verify_root_basis(rs, &basis)?;
    Ok(basis)
}

/// `R ∩ lin(B)`, sorted.
pub fn roots_in_span(rs: &RootSet, basis: &[IntVector]) -> Vec<IntVector> {
    if basis.is_empty() {
        return Vec::new();
    }
    rs.all()
        .iter()
        .filter(|r| solve_in_span(basis, &r.m).is_some())
        .map(|r| r.m.clone())
        .collect()
}

fn verify_root_basis(rs: &RootSet, basis: &RootBasis) -> Result<()> {
    let b = &basis.roots;
    for (i, x) in b.iter().enumerate() {
        for y in &b[i + 1..] {
            ensure(rs.orthogonal(x, y)?, "basis-orthogonal", || format!("{x} and {y} are not orthogonal"))?;
        }
    }
    if b.is_empty() {
        return Ok(());
    }
    ensure(rank(b) == b.len() && is_saturated_basis(b), "basis-saturated", || {
        "root basis is not a Z-basis of its span".into()
    })?;
    let class_of: BTreeMap<&IntVector, usize> = basis
        .classes
        .iter()
        .enumerate()
        .flat_map(|(c, idx)| idx.iter().map(move |&j| (&b[j], c)))
        .collect();
    for x in b {
        for y in b {
            if x != y {
                let same = class_of[x] == class_of[y];
                ensure(rs.equivalent(x, y)? == same, "basis-classes", || {
                    format!("equivalence of {x} and {y} disagrees with the class split")
                })?;
            }
        }
    }
    // R ∩ lin(B) = {±b} ∪ {b − b′ : b ≡ b′}
    let mut expected: BTreeSet<IntVector> = BTreeSet::new();
    for x in b {
        expected.insert(x.clone());
        expected.insert(-x);
        for y in b {
            if x != y && class_of[x] == class_of[y] {
                expected.insert(x - y);
            }
        }
    }
    let actual: BTreeSet<IntVector> = basis.span_roots.iter().cloned().collect();
    ensure(actual == expected, "root-fundi-set", || {
        format!("R ∩ lin(B) has {} elements, expected {}", actual.len(), expected.len())
    })?;
    let csum: usize = basis.classes.iter().map(|c| c.len() * c.len()).sum();
    ensure(actual.len() == b.len() + csum, "root-fundi-count", || {
        format!("|A| = {} but |B| + Σcᵢ² = {}", actual.len(), b.len() + csum)
    })?;
    let etas: BTreeSet<usize> = actual.iter().map(|m| rs.get(m).unwrap().eta).collect();
    ensure(etas.len() == b.len() + basis.classes.len(), "root-fundi-eta", || {
        format!("|η(A)| = {} but |B| + t = {}", etas.len(), b.len() + basis.classes.len())
    })?;
    Ok(())
}

/// The two orthogonal families `(B₁, B₂, B₃)` and `(D₁, D₂, D₃)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalFamilies {
    pub b1: Vec<IntVector>,
    pub b2: Vec<IntVector>,
    pub b3: Vec<IntVector>,
    pub d1: Vec<IntVector>,
    pub d2: Vec<IntVector>,
    pub d3: Vec<IntVector>,
}

const REPAIR_LIMIT: usize = 10_000;

/// Picks one root of the pool for every ray in `rays`, so that the new roots
/// are pairwise orthogonal and satisfy `⟨η_f, x⟩ = 0` for all fixed `f`.
/// Violations are repaired by partial addition; an exhaustive search backs
/// up the greedy pass.
fn facet_family(rs: &RootSet, fixed: &[IntVector], rays: &[usize], pool: &[RootKind]) -> Result<Vec<IntVector>> {
    let candidates: Vec<Vec<IntVector>> = rays
        .iter()
        .map(|&rho| rs.of_kind(pool).into_iter().filter(|r| r.eta == rho).map(|r| r.m.clone()).collect())
        .collect();
    if let Some(family) = greedy_family(rs, fixed, &candidates) {
        return Ok(family);
    }
    let mut chosen = Vec::new();
    if search_family(rs, fixed, &candidates, &mut chosen) {
        return Ok(chosen);
    }
    Err(Error::ConstructionFailed(format!("no orthogonal family covering rays {rays:?}")))
}

fn pairing(rs: &RootSet, x: &IntVector, y: &IntVector) -> BigInt {
    rs.eta(rs.get(x).expect("family members are roots")).dot(y)
}

fn family_ok(rs: &RootSet, fixed: &[IntVector], family: &[IntVector]) -> bool {
    family.iter().enumerate().all(|(i, x)| {
        fixed.iter().all(|f| pairing(rs, f, x).is_zero())
            && family.iter().enumerate().all(|(j, y)| i == j || pairing(rs, x, y).is_zero())
    })
}

fn greedy_family(rs: &RootSet, fixed: &[IntVector], candidates: &[Vec<IntVector>]) -> Option<Vec<IntVector>> {
    let mut family: Vec<IntVector> = candidates.iter().map(|c| c.first().cloned()).collect::<Option<_>>()?;
    for _ in 0..REPAIR_LIMIT {
        let mut changed = false;
        for i in 0..family.len() {
            let sources: Vec<IntVector> = fixed.iter().chain(family.iter()).cloned().collect();
            for src in sources {
                if src != family[i] && pairing(rs, &src, &family[i]).is_positive() && src != -&family[i] {
                    family[i] = orthogonalize(rs, &src, &family[i]).ok()?.m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    family_ok(rs, fixed, &family).then_some(family)
}

fn search_family(rs: &RootSet, fixed: &[IntVector], candidates: &[Vec<IntVector>], chosen: &mut Vec<IntVector>) -> bool {
    let k = chosen.len();
    if k == candidates.len() {
        return true;
    }
    for c in &candidates[k] {
        let fits = fixed.iter().all(|f| pairing(rs, f, c).is_zero())
            && chosen.iter().all(|x| pairing(rs, x, c).is_zero() && pairing(rs, c, x).is_zero());
        if fits {
            chosen.push(c.clone());
            if search_family(rs, fixed, candidates, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Constructs both orthogonal families and verifies every stated property,
/// including the resulting cardinality bounds.
pub fn orthogonal_families(rs: &RootSet, dcd: &DegreeClassData) -> Result<OrthogonalFamilies> {
    use RootKind::*;
    let d = rs.dim();
    let sel = default_selection(dcd);
    let b1 = build_root_basis(rs, dcd, &sel[..dcd.p].to_vec())?.roots;
    let b2 = build_root_basis(rs, dcd, &sel[dcd.p..].to_vec())?.roots;
    let b12: Vec<IntVector> = b1.iter().chain(&b2).cloned().collect();
    let u1_rays: Vec<usize> = rs.eta_set(&[U1]).into_iter().collect();
    let u2_rays: Vec<usize> = rs.eta_set(&[U2]).into_iter().collect();
    let b3 = facet_family(rs, &b12, &u1_rays, &[U1])?;

    let d3 = b1.clone();
    let u_rays: Vec<usize> = u1_rays.iter().chain(&u2_rays).copied().collect();
    let du = facet_family(rs, &d3, &u_rays, &[U1, U2])?;
    let (d1, d2) = du.split_at(u1_rays.len());
    let fam = OrthogonalFamilies {
        b1,
        b2,
        b3,
        d1: d1.to_vec(),
        d2: d2.to_vec(),
        d3,
    };
    verify_families(rs, &fam, d)?;
    Ok(fam)
}

fn verify_families(rs: &RootSet, fam: &OrthogonalFamilies, d: usize) -> Result<()> {
    use RootKind::*;
    let set = |v: &[IntVector]| -> BTreeSet<IntVector> { v.iter().cloned().collect() };
    let kinds = |k: &[RootKind]| -> BTreeSet<IntVector> { rs.of_kind(k).iter().map(|r| r.m.clone()).collect() };
    let span = |v: &[IntVector]| -> BTreeSet<IntVector> { roots_in_span(rs, v).into_iter().collect() };
    ensure(span(&fam.b1) == kinds(&[S1]), "all-b1", || "B₁ is not an S₁-root basis".into())?;
    ensure(span(&fam.b2) == kinds(&[S2]), "all-b2", || "B₂ is not an S₂-root basis".into())?;
    let b12: Vec<IntVector> = fam.b1.iter().chain(&fam.b2).cloned().collect();
    ensure(span(&b12) == kinds(&[S1, S2]), "all-b12", || "B₁ ∪ B₂ is not an S-root basis".into())?;
    let pair_orth = |v: &[IntVector]| v.iter().all(|x| v.iter().all(|y| x == y || rs.orthogonal(x, y).unwrap()));
    ensure(pair_orth(&b12) && pair_orth(&fam.b3), "all-b-orthogonal", || "B family not orthogonal".into())?;
    ensure(
        b12.iter().all(|b| fam.b3.iter().all(|x| pairing(rs, b, x).is_zero())),
        "all-b3-pairing",
        || "⟨η_b, b′⟩ ≠ 0 for b ∈ B₁ ∪ B₂, b′ ∈ B₃".into(),
    )?;
    let eta_of = |v: &[IntVector]| -> BTreeSet<usize> {
        let mut e: BTreeSet<usize> = v.iter().map(|x| rs.get(x).unwrap().eta).collect();
        for x in v {
            if let Some(n) = rs.get(&-x) {
                e.insert(n.eta);
            }
        }
        e
    };
    ensure(eta_of(&fam.b3) == rs.eta_set(&[U1]) && set(&fam.b3).is_subset(&kinds(&[U1])), "all-b3", || {
        "B₃ is not a U₁-facet basis".into()
    })?;
    let b: Vec<IntVector> = b12.iter().chain(&fam.b3).cloned().collect();
    let lin_s = rank(&rs.points(&rs.semisimple()));
    let u1 = rs.eta_set(&[U1]).len();
    let u2 = rs.eta_set(&[U2]).len();
    ensure(rank(&b) == b.len() && b.len() == lin_s + u1 && b.len() <= d, "all-b-bound", || {
        format!("|B| = {}, rank {}, dim lin(S) + |η(U₁)| = {}", b.len(), rank(&b), lin_s + u1)
    })?;

    let du: Vec<IntVector> = fam.d1.iter().chain(&fam.d2).cloned().collect();
    let dall: Vec<IntVector> = du.iter().chain(&fam.d3).cloned().collect();
    ensure(pair_orth(&dall), "all-d-orthogonal", || "D family not orthogonal".into())?;
    ensure(eta_of(&fam.d1) == rs.eta_set(&[U1]), "all-d1", || "D₁ is not a U₁-facet basis".into())?;
    ensure(eta_of(&fam.d2) == rs.eta_set(&[U2]) && set(&fam.d2).is_subset(&kinds(&[U1, U2])), "all-d2", || {
        "D₂ is not a U₂-facet basis".into()
    })?;
    ensure(eta_of(&du) == rs.eta_set(&[U1, U2]), "all-du", || "D₁ ∪ D₂ is not a U-facet basis".into())?;
    ensure(span(&fam.d3) == kinds(&[S1]), "all-d3", || "D₃ is not an S₁-root basis".into())?;
    ensure(eta_of(&dall) == rs.eta_set(&RootKind::ALL), "all-d-facet", || "D is not an R-facet basis".into())?;
    let lin_s1 = rank(&rs.points(&rs.of_kind(&[S1])));
    ensure(dall.len() == u1 + u2 + lin_s1 && dall.len() <= d, "all-d-bound", || {
        format!("|D| = {} but |η(U₁)| + |η(U₂)| + dim lin(S₁) = {}", dall.len(), u1 + u2 + lin_s1)
    })?;
    Ok(())
}

/// The three mutually exclusive relations between boundary lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ZCase {
    CommonFacet,
    Antipodal,
    Z { a: BigInt, b: BigInt, z: IntVector },
}

/// Classifies a pair of boundary lattice points of a reflexive polytope and
/// verifies the partial addition law by an exhaustive scan of `∂P ∩ M`.
pub fn z_pair(p: &LatticePolytope, v: &IntVector, w: &IntVector) -> Result<ZCase> {
    if !p.origin_in_interior() || !p.facets().iter().all(|f| f.level.is_one()) {
        return Err(Error::NotReflexive);
    }
    let boundary = p.boundary_lattice_points();
    z_pair_with(p, &boundary, v, w)
}

/// As [`z_pair`], reusing a precomputed sorted boundary point list.
pub fn z_pair_with(p: &LatticePolytope, boundary: &[IntVector], v: &IntVector, w: &IntVector) -> Result<ZCase> {
    for x in [v, w] {
        if x.dim() != p.dim() || boundary.binary_search(x).is_err() {
            return Err(Error::InputNotOnBoundary(x.to_string()));
        }
    }
    let fv = p.tight_facets(v);
    let fw = p.tight_facets(w);
    let common = fv.iter().any(|f| fw.contains(f));
    let antipodal = (v + w).is_zero();
    let sum = v + w;
    let sum_on_boundary = boundary.binary_search(&sum).is_ok();
    ensure(
        [common, antipodal, sum_on_boundary].iter().filter(|&&b| b).count() == 1,
        "root-prim-cases",
        || format!("v = {v}, w = {w}: common {common}, antipodal {antipodal}, v+w ∈ ∂P {sum_on_boundary}"),
    )?;
    if common {
        return Ok(ZCase::CommonFacet);
    }
    if antipodal {
        return Ok(ZCase::Antipodal);
    }
    let separates = |z: &IntVector| {
        p.tight_facets(z)
            .iter()
            .all(|f| fv.contains(f) != fw.contains(f))
    };
    ensure(separates(&sum), "root-prim-sum-facets", || {
        format!("a facet through {sum} contains both or neither of {v}, {w}")
    })?;
    let solver = PairSolver::new(v, w)
        .ok_or_else(|| Error::violation("root-prim-independent", format!("{v} and {w} are parallel")))?;
    let mut solutions = Vec::new();
    for z in boundary {
        let Some((a, b)) = solver.solve(z) else { continue };
        if !(a.is_positive() && b.is_positive()) {
            continue;
        }
        let fz = p.tight_facets(z);
        if fz.iter().any(|f| fv.contains(f)) && fz.iter().any(|f| fw.contains(f)) {
            solutions.push((a, b, z.clone()));
        }
    }
    ensure(solutions.len() == 1, "root-prim-unique", || {
        format!("{} pairs (a, b) for v = {v}, w = {w}", solutions.len())
    })?;
    let (a, b, z) = solutions.pop().unwrap();
    ensure(a.is_one() || b.is_one(), "root-prim-unit", || format!("a = {a}, b = {b}"))?;
    ensure(separates(&z), "root-prim-facets", || format!("a facet through {z} contains both or neither of {v}, {w}"))?;
    // partial addition with a root
    for (x, y, cx, cy) in [(v, w, &a, &b), (w, v, &b, &a)] {
        let fx = p.tight_facets(x);
        if fx.len() != 1 || p.facets()[fx[0]].value(y).is_zero() {
            continue;
        }
        let eta = &p.facets()[fx[0]].normal;
        ensure(p.facets()[fx[0]].value(&z).is_zero(), "root-prim-coro-facet", || {
            format!("z({x}, {y}) = {z} is not on the facet of the root {x}")
        })?;
        let k = eta.dot(y);
        ensure(k.is_positive() == (cy.is_one() && cx > &BigInt::one()), "root-prim-coro-iff", || {
            format!("⟨η_v, w⟩ = {k} for v = {x}, w = {y}, z = {z}")
        })?;
        if k.is_positive() {
            ensure(*cx == &k + BigInt::one(), "root-prim-coro-formula", || {
                format!("z({x}, {y}) = {z} but ⟨η_v, w⟩ + 1 = {}", &k + 1)
            })?;
        }
    }
    Ok(ZCase::Z { a, b, z })
}

/// Integer solutions of `z = a·v + b·w` by Cramer's rule on a non-singular
/// 2×2 minor, checked on all coordinates.
struct PairSolver<'a> {
    v: &'a IntVector,
    w: &'a IntVector,
    i: usize,
    j: usize,
    det: BigInt,
}

impl<'a> PairSolver<'a> {
    fn new(v: &'a IntVector, w: &'a IntVector) -> Option<Self> {
        let d = v.dim();
        for i in 0..d {
            for j in i + 1..d {
                let det = &v[i] * &w[j] - &v[j] * &w[i];
                if !det.is_zero() {
                    return Some(PairSolver { v, w, i, j, det });
                }
            }
        }
        None
    }

    fn solve(&self, z: &IntVector) -> Option<(BigInt, BigInt)> {
        let (i, j) = (self.i, self.j);
        let na = &z[i] * &self.w[j] - &z[j] * &self.w[i];
        let nb = &self.v[i] * &z[j] - &self.v[j] * &z[i];
        if !(&na % &self.det).is_zero() || !(&nb % &self.det).is_zero() {
            return None;
        }
        let (a, b) = (na / &self.det, nb / &self.det);
        (0..z.dim())
            .all(|k| &a * &self.v[k] + &b * &self.w[k] == z[k])
            .then_some((a, b))
    }
}

/// The lattice polytope `conv(R)`, when it is full-dimensional.
pub fn root_hull(rs: &RootSet) -> Option<LatticePolytope> {
    let pts: Vec<IntVector> = rs.all().iter().map(|r| r.m.clone()).collect();
    convex_hull(&pts).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::lattice_dual;
    use crate::standard;

    fn iv(a: &[i64]) -> IntVector {
        IntVector::from_i64s(a)
    }

    fn projective_rays(d: usize) -> RaySet {
        let mut g: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
        g.push(IntVector::from_i64s(&vec![-1; d]));
        RaySet::new(g).unwrap()
    }

    fn cube_rays(d: usize) -> RaySet {
        RaySet::of_polytope(&standard::cube(d)).unwrap()
    }

    fn weight_rays() -> RaySet {
        let dual = lattice_dual(&standard::weight_simplex()).unwrap();
        RaySet::new(dual.vertices().to_vec()).unwrap()
    }

    /// Direct scan of a box for roots, independent of the polar region.
    fn brute_roots(rays: &RaySet, bound: i64) -> BTreeSet<IntVector> {
        let d = rays.dim;
        let mut out = BTreeSet::new();
        let mut cur = vec![-bound; d];
        loop {
            let m = IntVector::from_i64s(&cur);
            let pr = rays.pairings(&m);
            let neg: Vec<&BigInt> = pr.iter().filter(|x| x.is_negative()).collect();
            if neg.len() == 1 && *neg[0] == BigInt::from(-1) {
                out.insert(m);
            }
            let mut i = 0;
            while i < d && cur[i] == bound {
                cur[i] = -bound;
                i += 1;
            }
            if i == d {
                return out;
            }
            cur[i] += 1;
        }
    }

    #[test]
    fn projective_space_roots() {
        for d in 1..=4 {
            let rs = compute_roots(&projective_rays(d)).unwrap();
            assert_eq!(rs.len(), d * d + d);
            assert!(rs.is_semisimple());
        }
    }

    #[test]
    fn cube_rays_roots_match_brute_force() {
        for d in 1..=3 {
            let rays = cube_rays(d);
            let rs = compute_roots(&rays).unwrap();
            let got: BTreeSet<IntVector> = rs.all().iter().map(|r| r.m.clone()).collect();
            assert_eq!(got, brute_roots(&rays, 1));
            assert_eq!(rs.len(), 2 * d);
        }
    }

    #[test]
    fn weight_simplex_roots() {
        let rs = compute_roots(&weight_rays()).unwrap();
        assert_eq!(rs.semisimple().len(), 4);
        assert_eq!(rs.unipotent().len(), 6);
        let got: BTreeSet<IntVector> = rs.all().iter().map(|r| r.m.clone()).collect();
        assert_eq!(got, brute_roots(&rs.rays, 6));
        let mut per_ray: BTreeMap<usize, usize> = BTreeMap::new();
        for r in rs.unipotent() {
            *per_ray.entry(r.eta).or_default() += 1;
        }
        assert_eq!(per_ray.values().copied().collect::<Vec<_>>(), vec![3, 3]);
        assert_eq!(rank(&rs.points(&rs.semisimple())), 2);
    }

    #[test]
    fn rays_must_span() {
        let rays = RaySet::new(vec![iv(&[1, 0]), iv(&[0, 1])]);
        assert_eq!(rays.unwrap_err(), Error::RaysNotSpanning);
        let rays = RaySet::new(vec![iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1])]);
        assert_eq!(rays.unwrap_err(), Error::RaysNotSpanning);
        assert!(RaySet::new(vec![iv(&[2, 0]), iv(&[-1, 0])]).is_err());
    }

    #[test]
    fn reflexive_roots_examples() {
        let rs = roots_of_reflexive(&standard::simplex_dual(2)).unwrap();
        let got: BTreeSet<IntVector> = rs.all().iter().map(|r| r.m.clone()).collect();
        let expected: BTreeSet<IntVector> = [[-1, 0], [-1, 1], [0, -1], [1, -1], [0, 1], [1, 0]]
            .iter()
            .map(|a| iv(a))
            .collect();
        assert_eq!(got, expected);
        assert_eq!(roots_of_reflexive(&standard::cube(3)).unwrap().len(), 6);
        assert_eq!(roots_of_reflexive(&standard::weight_simplex()).unwrap().len(), 10);
        let big = LatticePolytope::from_i64_points(&[&[2, 2], &[2, -2], &[-2, 2], &[-2, -2]]).unwrap();
        assert_eq!(roots_of_reflexive(&big).unwrap_err(), Error::NotReflexive);
    }

    #[test]
    fn dual_path_agrees() {
        for p in [standard::weight_simplex(), standard::simplex_dual(3), standard::cube(3), standard::cross_polytope(3)] {
            let a = roots_of_reflexive(&p).unwrap();
            let dual = crate::polytope::dual(&p).unwrap();
            let rays = RaySet::new(dual.vertices.iter().map(|v| v.to_int().unwrap()).collect()).unwrap();
            let b = compute_roots(&rays).unwrap();
            assert_eq!(a.all(), b.all());
        }
    }

    #[test]
    fn relations() {
        let rs = compute_roots(&cube_rays(2)).unwrap();
        assert!(rs.orthogonal(&iv(&[1, 0]), &iv(&[0, 1])).unwrap());
        let rs = compute_roots(&projective_rays(2)).unwrap();
        assert!(rs.equivalent(&iv(&[1, 0]), &iv(&[1, -1])).unwrap());
        assert!(!rs.orthogonal(&iv(&[1, 0]), &iv(&[-1, 0])).unwrap());
        assert_eq!(
            rs.orthogonal(&iv(&[2, 0]), &iv(&[1, 0])).unwrap_err(),
            Error::NotARoot("(2,0)".into())
        );
    }

    #[test]
    fn orthogonalize_on_weight_simplex() {
        let rs = compute_roots(&weight_rays()).unwrap();
        let mut hits = 0;
        for v in rs.all() {
            for w in rs.all() {
                if v.m != -&w.m && rs.eta(v).dot(&w.m).is_positive() {
                    let s = orthogonalize(&rs, &v.m, &w.m).unwrap();
                    assert_eq!(s.m, &v.m + &w.m);
                    assert_eq!(s.eta, w.eta);
                    hits += 1;
                }
            }
        }
        assert!(hits > 0);
        let v = &rs.semisimple()[0].m;
        assert!(matches!(orthogonalize(&rs, v, &-v), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn cox_class_examples() {
        for d in 1..=3 {
            let rays = projective_rays(d);
            let rs = compute_roots(&rays).unwrap();
            let c = cox_classes(&rays, &rs).unwrap();
            assert_eq!((c.p, c.q, c.r, c.s), (1, 1, 1, 1));
            assert_eq!(c.classes[0].variables.len(), d + 1);
            assert_eq!((c.free_rank, c.torsion.len()), (1, 0));
        }
        let rays = weight_rays();
        let rs = compute_roots(&rays).unwrap();
        let c = cox_classes(&rays, &rs).unwrap();
        assert_eq!((c.p, c.q, c.r, c.s), (1, 2, 2, 2));
        assert_eq!(c.class_sizes(), vec![1, 1]);
        assert_eq!(c.classes[1].monomials.len(), 3);
        // Cl ≅ Z with weights (1,1,2,2) up to sign
        let mut w: Vec<BigInt> = c.degrees.iter().map(|d| d[0].abs()).collect();
        w.sort();
        assert_eq!(w, [1, 1, 2, 2].map(BigInt::from).to_vec());
        for d in 2..=3 {
            let rays = cube_rays(d);
            let rs = compute_roots(&rays).unwrap();
            let c = cox_classes(&rays, &rs).unwrap();
            assert_eq!((c.p, c.q), (d, d));
            assert!(c.classes.iter().all(|k| k.variables.len() == 2));
        }
    }

    #[test]
    fn root_basis_examples() {
        for d in 1..=4 {
            let rays = projective_rays(d);
            let rs = compute_roots(&rays).unwrap();
            let c = cox_classes(&rays, &rs).unwrap();
            let b = build_root_basis(&rs, &c, &default_selection(&c)).unwrap();
            let got: BTreeSet<IntVector> = b.roots.iter().cloned().collect();
            let e = |i| IntVector::unit(d, i);
            let mut expected: BTreeSet<IntVector> = (1..d).map(|j| &e(0) - &e(j)).collect();
            expected.insert(e(0));
            assert_eq!(got, expected);
            assert_eq!(b.classes.len(), 1);
        }
        let rays = weight_rays();
        let rs = compute_roots(&rays).unwrap();
        let c = cox_classes(&rays, &rs).unwrap();
        let b = build_root_basis(&rs, &c, &default_selection(&c)).unwrap();
        assert_eq!(b.class_sizes(), vec![1, 1]);
        assert_eq!(rank(&b.roots), 2);
        let rays = cube_rays(3);
        let rs = compute_roots(&rays).unwrap();
        let c = cox_classes(&rays, &rs).unwrap();
        let b = build_root_basis(&rs, &c, &default_selection(&c)).unwrap();
        assert_eq!(b.classes.len(), 3);
        assert!(matches!(
            build_root_basis(&rs, &c, &vec![(7, vec![0, 1])]),
            Err(Error::InvalidSelection(_))
        ));
    }

    #[test]
    fn family_examples() {
        let rays = projective_rays(3);
        let rs = compute_roots(&rays).unwrap();
        let c = cox_classes(&rays, &rs).unwrap();
        let f = orthogonal_families(&rs, &c).unwrap();
        assert_eq!((f.b1.len(), f.b2.len(), f.b3.len()), (3, 0, 0));

        let rays = weight_rays();
        let rs = compute_roots(&rays).unwrap();
        let c = cox_classes(&rays, &rs).unwrap();
        let f = orthogonal_families(&rs, &c).unwrap();
        assert_eq!((f.b1.len(), f.b2.len(), f.b3.len()), (1, 1, 0));
        assert_eq!((f.d1.len(), f.d2.len(), f.d3.len()), (0, 2, 1));

        let rays = cube_rays(3);
        let rs = compute_roots(&rays).unwrap();
        let c = cox_classes(&rays, &rs).unwrap();
        assert_eq!(orthogonal_families(&rs, &c).unwrap().b1.len(), 3);
    }

    #[test]
    fn z_pair_examples() {
        let p = standard::simplex_dual(2);
        assert_eq!(z_pair(&p, &iv(&[1, 0]), &iv(&[0, 1])).unwrap(), ZCase::CommonFacet);
        assert_eq!(z_pair(&p, &iv(&[1, 0]), &iv(&[-1, 0])).unwrap(), ZCase::Antipodal);
        assert_eq!(
            z_pair(&p, &iv(&[-1, 1]), &iv(&[1, 0])).unwrap(),
            ZCase::Z {
                a: BigInt::from(2),
                b: BigInt::one(),
                z: iv(&[-1, 2])
            }
        );
        assert_eq!(
            z_pair(&p, &iv(&[0, 0]), &iv(&[1, 0])).unwrap_err(),
            Error::InputNotOnBoundary("(0,0)".into())
        );
    }

    #[test]
    fn z_pair_brute_force_ab() {
        // every Z-case answer agrees with a direct (a, b) scan over a box
        let p = standard::weight_simplex();
        let boundary = p.boundary_lattice_points();
        for v in boundary.iter().step_by(3) {
            for w in boundary.iter().step_by(5) {
                if let ZCase::Z { a, b, z } = z_pair_with(&p, &boundary, v, w).unwrap() {
                    let mut found = Vec::new();
                    for a2 in 1..=8i64 {
                        for b2 in 1..=8i64 {
                            let c = &v.scale(&BigInt::from(a2)) + &w.scale(&BigInt::from(b2));
                            if boundary.binary_search(&c).is_ok() {
                                let fc = p.tight_facets(&c);
                                let sv = p.tight_facets(v).iter().any(|f| fc.contains(f));
                                let sw = p.tight_facets(w).iter().any(|f| fc.contains(f));
                                if sv && sw {
                                    found.push((BigInt::from(a2), BigInt::from(b2), c));
                                }
                            }
                        }
                    }
                    assert_eq!(found, vec![(a, b, z)]);
                }
            }
        }
    }
}
