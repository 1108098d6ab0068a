//! Exact convex geometry of lattice polytopes.
//!
//! Polytopes are stored in both descriptions at once: the irredundant vertex
//! list (sorted lexicographically) and the facets (sorted by primitive inner
//! normal), linked by the vertex-facet incidence.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::lattice::{
    affine_lattice_basis, affine_rank, exact_determinant, hyperplane_normal, integer_coordinates,
    is_saturated_basis, primitive_part, rank, rational_inverse, IntMatrix, IntVector, Rational,
    RationalVector,
};

/// A facet `{x : ⟨normal, x⟩ = −level}` of a lattice polytope lying in the
/// half-space `⟨normal, x⟩ ≥ −level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: IntVector,
    pub level: BigInt,
    pub vertices: Vec<usize>,
}

impl Facet {
    /// Slack of `x`; non-negative exactly on the half-space.
    pub fn value(&self, x: &IntVector) -> BigInt {
        self.normal.dot(x) + &self.level
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVector>,
    facets: Vec<Facet>,
    vertex_facets: Vec<Vec<usize>>,
}

/// Convex hull of a full-dimensional set of lattice points.
pub fn convex_hull(points: &[IntVector]) -> Result<LatticePolytope> {
    let Some(first) = points.first() else {
        return Err(Error::NotFullDimensional { rank: 0, dim: 0 });
    };
    let dim = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch(dim, p.dim()));
    }
    let pts: Vec<IntVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if dim == 0 {
        return Err(Error::NotFullDimensional { rank: 0, dim: 0 });
    }
    let (hull, planes) = if dim == 1 {
        hull_1d(&pts)?
    } else {
        hull_general(&pts, dim)?
    };
    Ok(assemble(dim, &pts, &hull, planes))
}

type Plane = (IntVector, BigInt);

fn plane_value(plane: &Plane, x: &IntVector) -> BigInt {
    plane.0.dot(x) + &plane.1
}

fn hull_1d(pts: &[IntVector]) -> Result<(Vec<usize>, Vec<Plane>)> {
    if pts.len() < 2 {
        return Err(Error::NotFullDimensional { rank: 0, dim: 1 });
    }
    let (lo, hi) = (0, pts.len() - 1);
    let planes = vec![
        (IntVector::from_i64s(&[1]), -pts[lo][0].clone()),
        (IntVector::from_i64s(&[-1]), pts[hi][0].clone()),
    ];
    Ok((vec![lo, hi], planes))
}

/// Plane through the given points, oriented so that `inside` is strictly positive.
fn plane_through(points: &[&IntVector], inside: &IntVector) -> Plane {
    let p0 = points[0];
    let rows: Vec<IntVector> = points[1..].iter().map(|p| *p - p0).collect();
    let normal = hyperplane_normal(&rows).expect("points must be affinely independent");
    let offset = -normal.dot(p0);
    let plane = (normal, offset);
    if plane_value(&plane, inside).is_negative() {
        (-&plane.0, -plane.1)
    } else {
        plane
    }
}

/// Greedy affinely independent subset, in order.
fn independent_subset<'a>(points: &[&'a IntVector], size: usize) -> Vec<&'a IntVector> {
    let mut chosen: Vec<&IntVector> = Vec::with_capacity(size);
    for &p in points {
        if chosen.len() == size {
            break;
        }
        let mut trial: Vec<IntVector> = chosen.iter().map(|q| (*q).clone()).collect();
        trial.push(p.clone());
        if affine_rank(&trial) == trial.len() {
            chosen.push(p);
        }
    }
    chosen
}

// Beneath-beyond insertion. Facet point sets always hold every current hull
// vertex on the facet plane, so ridges are detected as intersections of
// vertex sets with the right affine rank, and coplanar merges fall out of
// deduplicating planes.
fn hull_general(pts: &[IntVector], dim: usize) -> Result<(Vec<usize>, Vec<Plane>)> {
    let mut simplex = vec![0usize];
    for i in 1..pts.len() {
        if simplex.len() == dim + 1 {
            break;
        }
        let mut trial: Vec<IntVector> = simplex.iter().map(|&j| pts[j].clone()).collect();
        trial.push(pts[i].clone());
        if affine_rank(&trial) == trial.len() {
            simplex.push(i);
        }
    }
    if simplex.len() < dim + 1 {
        return Err(Error::NotFullDimensional {
            rank: simplex.len() - 1,
            dim,
        });
    }

    let mut planes: Vec<Plane> = (0..=dim)
        .map(|j| {
            let others: Vec<&IntVector> = simplex
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, &i)| &pts[i])
                .collect();
            plane_through(&others, &pts[simplex[j]])
        })
        .collect();
    let mut hull: Vec<usize> = simplex.clone();
    let incidence = |planes: &[Plane], hull: &[usize]| -> Vec<Vec<usize>> {
        planes
            .iter()
            .map(|pl| hull.iter().copied().filter(|&h| plane_value(pl, &pts[h]).is_zero()).collect())
            .collect()
    };
    let mut on_plane = incidence(&planes, &hull);

    for i in 0..pts.len() {
        if simplex.contains(&i) {
            continue;
        }
        let p = &pts[i];
        let values: Vec<BigInt> = planes.iter().map(|pl| plane_value(pl, p)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            continue;
        }
        let mut next: Vec<Plane> = Vec::new();
        for (g, _) in values.iter().enumerate().filter(|(_, v)| !v.is_negative()) {
            next.push(planes[g].clone());
        }
        for (f, _) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
            for (g, _) in values.iter().enumerate().filter(|(_, v)| !v.is_negative()) {
                let common: Vec<usize> = on_plane[f]
                    .iter()
                    .copied()
                    .filter(|h| on_plane[g].binary_search(h).is_ok())
                    .collect();
                if common.len() < dim - 1 {
                    continue;
                }
                let common_pts: Vec<&IntVector> = common.iter().map(|&h| &pts[h]).collect();
                let owned: Vec<IntVector> = common_pts.iter().map(|q| (*q).clone()).collect();
                if affine_rank(&owned) != dim - 1 {
                    continue;
                }
                let mut through = independent_subset(&common_pts, dim - 1);
                through.push(p);
                let inside = on_plane[f]
                    .iter()
                    .find(|h| common.binary_search(h).is_err())
                    .map(|&h| &pts[h])
                    .expect("a facet has a vertex outside each of its ridges");
                next.push(plane_through(&through, inside));
            }
        }
        let mut seen = BTreeSet::new();
        next.retain(|pl| seen.insert(pl.clone()));
        planes = next;
        hull.push(i);
        hull.sort_unstable();
        on_plane = incidence(&planes, &hull);
        hull.retain(|&h| {
            let normals: Vec<IntVector> = on_plane
                .iter()
                .zip(&planes)
                .filter(|(on, _)| on.binary_search(&h).is_ok())
                .map(|(_, pl)| pl.0.clone())
                .collect();
            rank(&normals) == dim
        });
        on_plane = incidence(&planes, &hull);
    }
    Ok((hull, planes))
}

fn assemble(dim: usize, pts: &[IntVector], hull: &[usize], planes: Vec<Plane>) -> LatticePolytope {
    let mut hull = hull.to_vec();
    hull.sort_unstable();
    let vertices: Vec<IntVector> = hull.iter().map(|&h| pts[h].clone()).collect();
    let mut planes = planes;
    planes.sort();
    let facets: Vec<Facet> = planes
        .into_iter()
        .map(|(normal, level)| {
            let vs = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| (normal.dot(v) + &level).is_zero())
                .map(|(i, _)| i)
                .collect();
            Facet {
                normal,
                level,
                vertices: vs,
            }
        })
        .collect();
    LatticePolytope::from_parts(dim, vertices, facets)
}

impl LatticePolytope {
    fn from_parts(dim: usize, vertices: Vec<IntVector>, facets: Vec<Facet>) -> Self {
        let mut vertex_facets = vec![Vec::new(); vertices.len()];
        for (f, facet) in facets.iter().enumerate() {
            for &v in &facet.vertices {
                vertex_facets[v].push(f);
            }
        }
        LatticePolytope {
            dim,
            vertices,
            facets,
            vertex_facets,
        }
    }

    pub fn from_i64_points(points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<IntVector> = points.iter().map(|p| IntVector::from_i64s(p)).collect();
        convex_hull(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_facets(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    /// Facets × vertices incidence matrix.
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.facets
            .iter()
            .map(|f| (0..self.vertices.len()).map(|v| f.vertices.binary_search(&v).is_ok()).collect())
            .collect()
    }

    pub fn facet_points(&self, f: usize) -> Vec<IntVector> {
        self.facets[f].vertices.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.facets.iter().all(|f| !f.value(x).is_negative())
    }

    pub fn is_interior(&self, x: &IntVector) -> bool {
        self.facets.iter().all(|f| f.value(x).is_positive())
    }

    /// Indices of the facets whose hyperplane contains `x`.
    pub fn tight_facets(&self, x: &IntVector) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.facets[f].value(x).is_zero()).collect()
    }

    pub fn origin_in_interior(&self) -> bool {
        self.facets.iter().all(|f| f.level.is_positive())
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let set: BTreeSet<&IntVector> = self.vertices.iter().collect();
        self.vertices.iter().all(|v| set.contains(&-v))
    }

    /// All lattice points, sorted, by a bounding-box scan with facet filtering.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let lo: Vec<BigInt> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i].clone()).min().unwrap())
            .collect();
        let hi: Vec<BigInt> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i].clone()).max().unwrap())
            .collect();
        scan_box(&lo, &hi, |x| self.contains(x))
    }

    pub fn interior_lattice_points(&self) -> Vec<IntVector> {
        self.lattice_points().into_iter().filter(|x| self.is_interior(x)).collect()
    }

    pub fn boundary_lattice_points(&self) -> Vec<IntVector> {
        self.lattice_points().into_iter().filter(|x| !self.is_interior(x)).collect()
    }

    pub fn facet_lattice_points(&self, f: usize) -> Vec<IntVector> {
        let facet = &self.facets[f];
        self.lattice_points().into_iter().filter(|x| facet.value(x).is_zero()).collect()
    }

    pub fn facet_rvol(&self, f: usize) -> Rational {
        relative_volume(&self.facet_points(f))
    }

    pub fn translate(&self, t: &IntVector) -> LatticePolytope {
        let vertices: Vec<IntVector> = self.vertices.iter().map(|v| v + t).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                level: &f.level - f.normal.dot(t),
                vertices: f.vertices.clone(),
            })
            .collect();
        LatticePolytope::from_parts(self.dim, vertices, facets)
    }

    pub fn to_rational(&self) -> RationalPolytope {
        RationalPolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(IntVector::to_rational).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| RationalFacet {
                    normal: f.normal.clone(),
                    level: Rational::from(f.level.clone()),
                    vertices: f.vertices.clone(),
                })
                .collect(),
        }
    }

    /// Simplices (as point lists) of a triangulation: cones from the origin
    /// over triangulated facets when the origin is interior, otherwise a
    /// pulling triangulation from vertex 0.
    pub fn triangulation(&self) -> Vec<Vec<IntVector>> {
        let to_points = |s: Vec<usize>| -> Vec<IntVector> { s.into_iter().map(|v| self.vertices[v].clone()).collect() };
        if self.origin_in_interior() {
            let origin = IntVector::zeros(self.dim);
            let mut out = Vec::new();
            for f in &self.facets {
                for s in self.triangulate_face(&f.vertices, self.dim - 1) {
                    let mut simplex = vec![origin.clone()];
                    simplex.extend(to_points(s));
                    out.push(simplex);
                }
            }
            out
        } else {
            let all: Vec<usize> = (0..self.vertices.len()).collect();
            self.triangulate_face(&all, self.dim).into_iter().map(to_points).collect()
        }
    }

    fn triangulate_face(&self, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
        if dim == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in &self.facets {
            let s: Vec<usize> = face.iter().copied().filter(|v| g.vertices.binary_search(v).is_ok()).collect();
            if s.len() < dim || s.contains(&apex) || s.len() == face.len() {
                continue;
            }
            let pts: Vec<IntVector> = s.iter().map(|&v| self.vertices[v].clone()).collect();
            if affine_rank(&pts) == dim {
                subfaces.insert(s);
            }
        }
        let mut out = Vec::new();
        for sub in subfaces {
            for mut simplex in self.triangulate_face(&sub, dim - 1) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Euclidean volume.
    pub fn volume(&self) -> Rational {
        let total: BigInt = self.triangulation().iter().map(|s| simplex_det(s).abs()).sum();
        Rational::new(total, factorial(self.dim))
    }

    pub fn barycenter(&self) -> RationalVector {
        let mut weighted = RationalVector::zeros(self.dim);
        let mut total = BigInt::zero();
        for s in self.triangulation() {
            let w = simplex_det(&s).abs();
            let k = BigInt::from(s.len());
            let centroid = RationalVector(
                (0..self.dim)
                    .map(|i| Rational::new(s.iter().map(|p| p[i].clone()).sum(), k.clone()))
                    .collect(),
            );
            weighted = &weighted + &centroid.scale(&Rational::from(w.clone()));
            total += w;
        }
        weighted.scale(&Rational::new(BigInt::one(), total))
    }

    pub fn map(&self, m: &UnimodularMap) -> Result<LatticePolytope> {
        let pts: Vec<IntVector> = self.vertices.iter().map(|v| m.apply(v)).collect();
        convex_hull(&pts)
    }
}

fn scan_box(lo: &[BigInt], hi: &[BigInt], mut keep: impl FnMut(&IntVector) -> bool) -> Vec<IntVector> {
    let d = lo.len();
    let mut out = Vec::new();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return out;
    }
    let mut cur = IntVector(lo.to_vec());
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur.0[i] < hi[i] {
                cur.0[i] += 1;
                cur.0[i + 1..d].clone_from_slice(&lo[i + 1..d]);
                break;
            }
        }
    }
}

fn simplex_det(s: &[IntVector]) -> BigInt {
    let rows: Vec<IntVector> = s[1..].iter().map(|p| p - &s[0]).collect();
    exact_determinant(&IntMatrix::from_rows(&rows, s[0].dim())).expect("square")
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Volume of the convex hull of `points`, normalised so that a fundamental
/// parallelepiped of the affine lattice `aff(points) ∩ Z^d` has volume one.
/// A single point has volume one.
pub fn relative_volume(points: &[IntVector]) -> Rational {
    let (origin, basis) = affine_lattice_basis(points);
    if basis.is_empty() {
        return Rational::one();
    }
    let coords: Vec<IntVector> = points
        .iter()
        .map(|p| IntVector(integer_coordinates(&basis, &(p - &origin)).expect("point lies in its own affine lattice")))
        .collect();
    convex_hull(&coords).expect("points span their own affine hull").volume()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFacet {
    pub normal: IntVector,
    pub level: Rational,
    pub vertices: Vec<usize>,
}

impl RationalFacet {
    pub fn value(&self, x: &IntVector) -> Rational {
        Rational::from(self.normal.dot(x)) + &self.level
    }

    pub fn value_rational(&self, x: &RationalVector) -> Rational {
        x.dot_int(&self.normal) + &self.level
    }
}

/// A polytope with rational vertices, e.g. a dual polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub dim: usize,
    pub vertices: Vec<RationalVector>,
    pub facets: Vec<RationalFacet>,
}

impl RationalPolytope {
    /// Convex hull of full-dimensional rational points.
    pub fn from_points(points: &[RationalVector]) -> Result<Self> {
        let l = points.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let lq = Rational::from(l.clone());
        let scaled: Vec<IntVector> = points
            .iter()
            .map(|p| p.scale(&lq).to_int().expect("scaled to integers"))
            .collect();
        let hull = convex_hull(&scaled)?;
        let inv = Rational::new(BigInt::one(), l);
        Ok(RationalPolytope {
            dim: hull.dim,
            vertices: hull.vertices.iter().map(|v| v.to_rational().scale(&inv)).collect(),
            facets: hull
                .facets
                .iter()
                .map(|f| RationalFacet {
                    normal: f.normal.clone(),
                    level: Rational::from(f.level.clone()) * &inv,
                    vertices: f.vertices.clone(),
                })
                .collect(),
        })
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.facets.iter().all(|f| !f.value(x).is_negative())
    }

    pub fn lattice_points(&self) -> Vec<IntVector> {
        let lo: Vec<BigInt> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v.0[i].ceil().to_integer()).min().unwrap())
            .collect();
        let hi: Vec<BigInt> = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v.0[i].floor().to_integer()).max().unwrap())
            .collect();
        scan_box(&lo, &hi, |x| self.contains(x))
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalVector::is_integral)
    }

    /// The same polytope as a lattice polytope, if every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        let pts: Option<Vec<IntVector>> = self.vertices.iter().map(RationalVector::to_int).collect();
        convex_hull(&pts?).ok()
    }

    /// `{y : ⟨x, y⟩ ≥ −1 for all x in self}`; requires the origin in the interior.
    pub fn polar(&self) -> Result<RationalPolytope> {
        if !self.facets.iter().all(|f| f.level.is_positive()) {
            return Err(Error::OriginNotInterior);
        }
        let vertices = self
            .facets
            .iter()
            .map(|f| f.normal.to_rational().scale(&f.level.recip()))
            .collect();
        let mut facets: Vec<RationalFacet> = self
            .vertices
            .iter()
            .map(|v| {
                let (w, c) = primitive_rational(v);
                RationalFacet {
                    normal: w,
                    level: c.recip(),
                    vertices: Vec::new(),
                }
            })
            .collect();
        for (fi, f) in self.facets.iter().enumerate() {
            for &v in &f.vertices {
                facets[v].vertices.push(fi);
            }
        }
        Ok(RationalPolytope {
            dim: self.dim,
            vertices,
            facets,
        })
    }

    /// Facets × vertices incidence matrix.
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.facets
            .iter()
            .map(|f| (0..self.vertices.len()).map(|v| f.vertices.contains(&v)).collect())
            .collect()
    }
}

/// Writes a non-zero rational vector as `c·w` with `w` primitive and `c > 0`.
fn primitive_rational(v: &RationalVector) -> (IntVector, Rational) {
    let l = v.denominator_lcm();
    let scaled = v.scale(&Rational::from(l.clone())).to_int().expect("integral after scaling");
    let (g, w) = primitive_part(&scaled).expect("non-zero vertex");
    (w, Rational::new(g, l))
}

/// Dual polytope `P* = {y : ⟨x, y⟩ ≥ −1 ∀x ∈ P}`. Vertex `i` of the result
/// is `η` of facet `i` of `P`; facet `j` of the result corresponds to vertex
/// `j` of `P`.
pub fn dual(p: &LatticePolytope) -> Result<RationalPolytope> {
    p.to_rational().polar()
}

/// The dual of a reflexive polytope as a lattice polytope.
pub fn lattice_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    dual(p)?.to_lattice().ok_or(Error::NotReflexive)
}

/// True iff every facet sits at level one. A reflexive polytope must also be
/// canonical Fano; this is checked and reported as a violation otherwise.
pub fn is_reflexive(p: &LatticePolytope) -> Result<bool> {
    if !p.origin_in_interior() {
        return Err(Error::OriginNotInterior);
    }
    let reflexive = p.facets.iter().all(|f| f.level.is_one());
    if reflexive {
        let interior = p.interior_lattice_points();
        ensure(interior == [IntVector::zeros(p.dim)], "reflexive-canonical", || {
            format!("interior lattice points {interior:?}")
        })?;
    }
    Ok(reflexive)
}

pub fn product(p1: &LatticePolytope, p2: &LatticePolytope) -> LatticePolytope {
    let mut pts = Vec::with_capacity(p1.vertices.len() * p2.vertices.len());
    for a in &p1.vertices {
        for b in &p2.vertices {
            pts.push(a.concat(b));
        }
    }
    convex_hull(&pts).expect("product of full-dimensional polytopes")
}

/// `conv(P₁ × {0}, {0} × P₂)`; full-dimensional when both contain the origin
/// in their interior.
pub fn free_sum(p1: &LatticePolytope, p2: &LatticePolytope) -> Result<LatticePolytope> {
    let z1 = IntVector::zeros(p1.dim);
    let z2 = IntVector::zeros(p2.dim);
    let pts: Vec<IntVector> = p1
        .vertices
        .iter()
        .map(|a| a.concat(&z2))
        .chain(p2.vertices.iter().map(|b| z1.concat(b)))
        .collect();
    convex_hull(&pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanoClass {
    pub canonical: bool,
    pub terminal: bool,
    pub smooth: bool,
}

pub fn fano_class(p: &LatticePolytope) -> Result<FanoClass> {
    if !p.origin_in_interior() {
        return Err(Error::OriginNotInterior);
    }
    let zero = IntVector::zeros(p.dim);
    let points = p.lattice_points();
    let canonical = points.iter().filter(|x| p.is_interior(x)).eq(std::iter::once(&zero));
    let terminal = points.iter().all(|x| x.is_zero() || p.vertices.binary_search(x).is_ok());
    let smooth = p.facets.iter().all(|f| {
        f.vertices.len() == p.dim && {
            let rows: Vec<IntVector> = f.vertices.iter().map(|&v| p.vertices[v].clone()).collect();
            exact_determinant(&IntMatrix::from_rows(&rows, p.dim)).unwrap().abs().is_one()
        }
    });
    Ok(FanoClass {
        canonical,
        terminal,
        smooth,
    })
}

/// A lattice automorphism of `Z^d`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnimodularMap {
    pub matrix: IntMatrix,
}

impl UnimodularMap {
    pub fn identity(d: usize) -> Self {
        UnimodularMap {
            matrix: IntMatrix::identity(d),
        }
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        self.matrix.apply(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct VertexPrint {
    degree: usize,
    facets: Vec<(usize, Rational)>,
}

struct IsoData<'a> {
    poly: &'a LatticePolytope,
    prints: Vec<VertexPrint>,
    common: Vec<Vec<usize>>,
    index: BTreeMap<&'a IntVector, usize>,
}

impl<'a> IsoData<'a> {
    fn new(poly: &'a LatticePolytope) -> Self {
        let rvols: Vec<Rational> = (0..poly.facets.len()).map(|f| poly.facet_rvol(f)).collect();
        let prints = (0..poly.vertices.len())
            .map(|v| {
                let mut facets: Vec<(usize, Rational)> = poly.vertex_facets[v]
                    .iter()
                    .map(|&f| (poly.facets[f].vertices.len(), rvols[f].clone()))
                    .collect();
                facets.sort();
                VertexPrint {
                    degree: facets.len(),
                    facets,
                }
            })
            .collect();
        let n = poly.vertices.len();
        let common = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        poly.vertex_facets[a]
                            .iter()
                            .filter(|f| poly.vertex_facets[b].binary_search(f).is_ok())
                            .count()
                    })
                    .collect()
            })
            .collect();
        let index = poly.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        IsoData {
            poly,
            prints,
            common,
            index,
        }
    }

    fn sorted_prints(&self) -> Vec<&VertexPrint> {
        let mut v: Vec<&VertexPrint> = self.prints.iter().collect();
        v.sort();
        v
    }
}

/// Linear maps `A` with `A·V(P) = V(Q)`, found by assigning images to a
/// fixed linearly independent vertex sequence of `P` and verifying globally.
fn linear_isomorphisms(p: &IsoData, q: &IsoData, find_all: bool) -> Vec<UnimodularMap> {
    let (pp, qp) = (p.poly, q.poly);
    let d = pp.dim;
    if pp.vertices.len() != qp.vertices.len()
        || pp.facets.len() != qp.facets.len()
        || p.sorted_prints() != q.sorted_prints()
    {
        return Vec::new();
    }
    // Prefer vertices sharing many facets with those already chosen; this
    // keeps candidate images local and the search small.
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    while basis.len() < d {
        let chosen: Vec<IntVector> = basis.iter().map(|&b| pp.vertices[b].clone()).collect();
        let next = (0..pp.vertices.len())
            .filter(|v| !basis.contains(v))
            .filter(|&v| {
                let mut t = chosen.clone();
                t.push(pp.vertices[v].clone());
                rank(&t) == t.len()
            })
            .max_by_key(|&v| {
                let score: usize = basis.iter().map(|&b| p.common[b][v]).sum();
                (score, std::cmp::Reverse(v))
            });
        match next {
            Some(v) => basis.push(v),
            None => return Vec::new(),
        }
    }
    let bmat = IntMatrix::from_columns(&basis.iter().map(|&b| pp.vertices[b].clone()).collect::<Vec<_>>(), d);
    let Some(binv) = rational_inverse(&bmat) else {
        return Vec::new();
    };

    let mut found = Vec::new();
    let mut images: Vec<usize> = Vec::with_capacity(d);
    search_images(p, q, &basis, &binv, &mut images, &mut found, find_all);
    found
}

fn search_images(
    p: &IsoData,
    q: &IsoData,
    basis: &[usize],
    binv: &[Vec<Rational>],
    images: &mut Vec<usize>,
    found: &mut Vec<UnimodularMap>,
    find_all: bool,
) -> bool {
    let d = p.poly.dim;
    let k = images.len();
    if k == d {
        if let Some(m) = candidate_map(p, q, images, binv) {
            found.push(m);
            return !find_all;
        }
        return false;
    }
    let b = basis[k];
    for w in 0..q.poly.vertices.len() {
        if images.contains(&w) || p.prints[b] != q.prints[w] {
            continue;
        }
        if (0..k).any(|j| p.common[basis[j]][b] != q.common[images[j]][w]) {
            continue;
        }
        images.push(w);
        let stop = search_images(p, q, basis, binv, images, found, find_all);
        images.pop();
        if stop {
            return true;
        }
    }
    false
}

fn candidate_map(p: &IsoData, q: &IsoData, images: &[usize], binv: &[Vec<Rational>]) -> Option<UnimodularMap> {
    let d = p.poly.dim;
    let mut m = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Rational::zero();
            for (k, &w) in images.iter().enumerate() {
                acc += Rational::from(q.poly.vertices[w][i].clone()) * &binv[k][j];
            }
            if !acc.is_integer() {
                return None;
            }
            m[(i, j)] = acc.to_integer();
        }
    }
    if !exact_determinant(&m).ok()?.abs().is_one() {
        return None;
    }
    let map = UnimodularMap { matrix: m };
    p.poly
        .vertices
        .iter()
        .all(|v| q.index.contains_key(&map.apply(v)))
        .then_some(map)
}

/// A unimodular linear map sending `P` onto `Q`, if one exists. Both
/// polytopes are expected to contain the origin in their interior, so
/// lattice isomorphisms are linear.
pub fn lattice_isomorphism(p: &LatticePolytope, q: &LatticePolytope) -> Result<Option<UnimodularMap>> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch(p.dim, q.dim));
    }
    let (pd, qd) = (IsoData::new(p), IsoData::new(q));
    Ok(linear_isomorphisms(&pd, &qd, false).into_iter().next())
}

/// The finite group `Aut_M(P)` of linear lattice automorphisms preserving `P`.
pub fn lattice_automorphisms(p: &LatticePolytope) -> Vec<UnimodularMap> {
    let data = IsoData::new(p);
    linear_isomorphisms(&data, &data, true)
}

/// Dimension of `{x : A·x = x for all A}`.
pub fn fixed_space_dim(group: &[UnimodularMap], d: usize) -> usize {
    let mut rows = Vec::new();
    for a in group {
        for i in 0..d {
            let mut r = a.matrix.row(i);
            r.0[i] -= 1;
            rows.push(r);
        }
    }
    d - rank(&rows)
}

/// True iff `Aut_M(P)` fixes only the origin.
pub fn is_symmetric(p: &LatticePolytope) -> bool {
    fixed_space_dim(&lattice_automorphisms(p), p.dim) == 0
}

/// `P ∩ lin(basis)` in coordinates with respect to `basis`. The basis must
/// be linearly independent and a Z-basis of `lin(basis) ∩ M`.
pub fn intersect_with_subspace(p: &LatticePolytope, basis: &[IntVector]) -> Result<RationalPolytope> {
    if basis.is_empty() || rank(basis) != basis.len() {
        return Err(Error::PreconditionFailed("basis must be non-empty and linearly independent".into()));
    }
    if !is_saturated_basis(basis) {
        return Err(Error::BasisNotSaturated);
    }
    if !p.origin_in_interior() {
        return Err(Error::OriginNotInterior);
    }
    // In basis coordinates the constraints read ⟨Bᵀu_F, y⟩ ≥ −c_F; the
    // section is the polar of the points Bᵀu_F / c_F.
    let points: Vec<RationalVector> = p
        .facets
        .iter()
        .map(|f| {
            let a = IntVector(basis.iter().map(|b| f.normal.dot(b)).collect());
            a.to_rational().scale(&Rational::new(BigInt::one(), f.level.clone()))
        })
        .collect();
    RationalPolytope::from_points(&points)?.polar()
}

/// Images of points of `lin(basis)` in basis coordinates.
pub fn basis_coordinates(basis: &[IntVector], x: &IntVector) -> Option<IntVector> {
    integer_coordinates(basis, x).map(IntVector)
}
