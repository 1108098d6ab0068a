//! Reductivity criteria, dimension bounds and structural decompositions.
//!
//! Every equivalent condition is computed on its own, and agreement is
//! asserted; a disagreement surfaces as [`Error::TheoremViolation`].

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure, Error, Result};
use crate::lattice::{affine_rank, rank, saturation, IntVector, Rational, RationalVector};
use crate::polytope::{
    basis_coordinates, convex_hull, fano_class, intersect_with_subspace, is_reflexive, is_symmetric, lattice_automorphisms,
    lattice_dual, lattice_isomorphism, product, LatticePolytope,
};
use crate::roots::{roots_of_reflexive, DegreeClassData, RaySet, RootBasis, RootKind, RootSet};
use crate::standard;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AutSummary {
    pub reductive: bool,
    /// `dim Aut°(X) = |ℛ| + d`.
    pub aut_dim: usize,
}

pub fn aut_summary(rs: &RootSet, d: usize) -> AutSummary {
    AutSummary {
        reductive: rs.unipotent().is_empty(),
        aut_dim: rs.len() + d,
    }
}

/// Fan-level equivalents: (a) semisimple, (b) `Σ_{x∈ℛ} x = 0`,
/// (c) `Σ_τ ⟨v_τ, x⟩ = 0` for all roots, and the sufficient `Σ v_τ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanCriteria {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub rays_sum_zero: bool,
}

pub fn check_fan_criteria(rays: &RaySet, rs: &RootSet) -> Result<FanCriteria> {
    let d = rays.dim;
    let a = rs.all().iter().all(|r| rs.contains(&-&r.m));
    let b = IntVector::sum(d, rs.all().iter().map(|r| &r.m)).is_zero();
    let c = rs.all().iter().all(|r| rays.pairings(&r.m).iter().sum::<BigInt>().is_zero());
    let rays_sum_zero = rays.sum().is_zero();
    ensure(a == b && b == c, "main-fan-equivalence", || format!("(a) = {a}, (b) = {b}, (c) = {c}"))?;
    ensure(!rays_sum_zero || a, "main-fan-sufficient", || "Σ v_τ = 0 but the fan is not semisimple".into())?;
    Ok(FanCriteria { a, b, c, rays_sum_zero })
}

/// Reflexive-level equivalents (a)–(g).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReflexiveEquivalents {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
    pub f: bool,
    pub g: bool,
}

impl ReflexiveEquivalents {
    pub fn values(&self) -> [bool; 7] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.g]
    }
}

/// Sufficient conditions i–vii for semisimplicity of a reflexive polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SufficientConditions {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
    pub v: bool,
    pub vi: bool,
    pub vii: bool,
}

impl SufficientConditions {
    pub fn values(&self) -> [bool; 7] {
        [self.i, self.ii, self.iii, self.iv, self.v, self.vi, self.vii]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriteriaReport {
    pub fan: FanCriteria,
    pub reflexive_equivalent: Option<ReflexiveEquivalents>,
    pub sufficient: Option<SufficientConditions>,
    pub reductive: bool,
    pub aut_dim: usize,
    pub consistent: bool,
    /// For smooth Fano input, whether condition vi holds; reported only.
    pub smooth_fano_vi: Option<bool>,
}

/// Criteria report for a fan given by its rays.
pub fn fan_criteria_report(rays: &RaySet, rs: &RootSet) -> Result<CriteriaReport> {
    let fan = check_fan_criteria(rays, rs)?;
    let aut = aut_summary(rs, rays.dim);
    ensure(aut.reductive == fan.a, "autdim-reductive", || "reductivity disagrees with (a)".into())?;
    Ok(CriteriaReport {
        fan,
        reflexive_equivalent: None,
        sufficient: None,
        reductive: aut.reductive,
        aut_dim: aut.aut_dim,
        consistent: true,
        smooth_fano_vi: None,
    })
}

fn require_reflexive(p: &LatticePolytope) -> Result<()> {
    match is_reflexive(p) {
        Ok(true) => Ok(()),
        Ok(false) | Err(Error::OriginNotInterior) => Err(Error::NotReflexive),
        Err(e) => Err(e),
    }
}

/// Evaluates (a)–(g), i–vii and the fan-level criteria of the normal fan.
pub fn check_reflexive_criteria(p: &LatticePolytope) -> Result<CriteriaReport> {
    require_reflexive(p)?;
    let rs = roots_of_reflexive(p)?;
    let d = p.dim();
    let dual = lattice_dual(p)?;
    let roots: Vec<&IntVector> = rs.all().iter().map(|r| &r.m).collect();
    let dual_points = dual.lattice_points();
    let dual_barycenter = dual.barycenter();
    let zero_q = Rational::zero();

    let a = roots.iter().all(|m| rs.contains(&-*m));
    let b = IntVector::sum(d, roots.iter().copied()).is_zero();
    let c = roots
        .iter()
        .all(|m| dual.vertices().iter().map(|v| v.dot(m)).sum::<BigInt>().is_zero());
    let dd = roots.iter().all(|m| dual_points.iter().map(|y| y.dot(m)).sum::<BigInt>().is_zero());
    let e = roots.iter().all(|m| dual_barycenter.dot_int(m) == zero_q);
    let rvols: Vec<Rational> = (0..p.facets().len()).map(|f| p.facet_rvol(f)).collect();
    let counts: Vec<usize> = (0..p.facets().len()).map(|f| p.facet_lattice_points(f).len()).collect();
    let mut f = true;
    let mut g = true;
    for r in rs.all() {
        for (j, facet) in p.facets().iter().enumerate() {
            if facet.normal.dot(&r.m).is_positive() {
                f &= rvols[j] == rvols[r.eta];
                g &= counts[j] == counts[r.eta];
            }
        }
    }
    let eq = ReflexiveEquivalents { a, b, c, d: dd, e, f, g };
    ensure(eq.values().iter().all(|&x| x == a), "main-reflexive-equivalence", || format!("{eq:?}"))?;

    let zero = IntVector::zeros(d);
    let i = p.barycenter().is_zero();
    let ii = IntVector::sum(d, &p.lattice_points()) == zero;
    let iii = dual_barycenter.is_zero();
    let iv = IntVector::sum(d, &dual_points) == zero;
    let v = IntVector::sum(d, dual.vertices()) == zero;
    let vi = rvols.iter().all(|x| *x == rvols[0]);
    let vii = counts.iter().all(|x| *x == counts[0]);
    let suff = SufficientConditions { i, ii, iii, iv, v, vi, vii };
    for (name, holds) in ["i", "ii", "iii", "iv", "v", "vi", "vii"].iter().zip(suff.values()) {
        ensure(!holds || a, "main-sufficient", || format!("condition {name} holds but P is not semisimple"))?;
    }
    ensure(!vi || v, "main-vi-implies-v", || "equal facet volumes but Σ V(P*) ≠ 0".into())?;

    let rays = RaySet::of_polytope(p)?;
    let fan = check_fan_criteria(&rays, &rs)?;
    ensure(fan.a == a, "main-fan-reflexive", || "fan and reflexive verdicts differ".into())?;
    let aut = aut_summary(&rs, d);
    let smooth = fano_class(p)?.smooth;
    Ok(CriteriaReport {
        fan,
        reflexive_equivalent: Some(eq),
        sufficient: Some(suff),
        reductive: aut.reductive,
        aut_dim: aut.aut_dim,
        consistent: true,
        smooth_fano_vi: smooth.then_some(vi),
    })
}

/// `[|Y₁|−1, …, |Y_q|−1]` when the semisimple roots span `M_ℝ`.
pub fn detect_product_projective(rs: &RootSet, dcd: &DegreeClassData, d: usize) -> Option<Vec<usize>> {
    (rank(&rs.points(&rs.semisimple())) == d).then(|| dcd.class_sizes())
}

/// Confirms `P ≅ E*_{n₁} × ⋯ × E*_{n_q}` for a product-of-projective-spaces
/// verdict on a reflexive polytope.
pub fn confirm_product(p: &LatticePolytope, factors: &[usize]) -> Result<()> {
    let model = factors
        .iter()
        .map(|&n| standard::simplex_dual(n))
        .reduce(|acc, f| product(&acc, &f))
        .ok_or_else(|| Error::PreconditionFailed("no factors".into()))?;
    ensure(lattice_isomorphism(p, &model)?.is_some(), "charac-product", || {
        format!("P is not isomorphic to the product of simplex duals {factors:?}")
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub eta_u: usize,
    pub eta_u_not_s: usize,
    pub codim_lin_s: usize,
    pub eta_r: usize,
    pub semisimple: usize,
    pub aut_dim: usize,
    pub product_of_lines: bool,
    pub projective_space: bool,
}

/// Cardinality bounds on `η(𝒰)`, `η(ℛ)`, `𝒮` and `dim Aut°`, including
/// the equality cases. When `p` is given, equality cases are confirmed by
/// lattice isomorphism.
pub fn bound_checks(rs: &RootSet, dcd: &DegreeClassData, p: Option<&LatticePolytope>) -> Result<BoundReport> {
    use RootKind::*;
    let d = rs.dim();
    let eta_u = rs.eta_set(&[U1, U2]);
    let eta_s = rs.eta_set(&[S1, S2]);
    let lin_s = rank(&rs.points(&rs.semisimple()));
    let eta_u_not_s = eta_u.difference(&eta_s).count();
    let eta_r = rs.eta_set(&RootKind::ALL).len();
    let semisimple = rs.semisimple().len();
    let aut = aut_summary(rs, d);
    let factors = detect_product_projective(rs, dcd, d);
    let product_of_lines = factors.as_deref() == Some(&vec![1; d][..]);
    let projective_space = factors.as_deref() == Some(&[d][..]);

    ensure(eta_u.len() <= d, "cories-1", || format!("|η(𝒰)| = {} > {d}", eta_u.len()))?;
    ensure(eta_u_not_s <= d - lin_s, "cories-1-codim", || {
        format!("|η(𝒰) ∖ η(𝒮)| = {eta_u_not_s} > codim lin(𝒮) = {}", d - lin_s)
    })?;
    ensure(eta_r <= 2 * d, "cories-2", || format!("|η(ℛ)| = {eta_r} > 2d"))?;
    ensure((eta_r == 2 * d) == product_of_lines, "cories-2-equality", || {
        format!("|η(ℛ)| = {eta_r}, product of lines: {product_of_lines}")
    })?;
    ensure(semisimple <= d * d + d, "cories-3", || format!("|𝒮| = {semisimple} > d² + d"))?;
    ensure((semisimple == d * d + d) == projective_space, "cories-3-equality", || {
        format!("|𝒮| = {semisimple}, projective space: {projective_space}")
    })?;
    if aut.reductive {
        ensure(aut.aut_dim <= d * d + 2 * d, "root-dim", || format!("dim Aut° = {} > d² + 2d", aut.aut_dim))?;
        if factors.is_none() {
            ensure(aut.aut_dim + 2 <= d * d, "root-dim-nonproduct", || {
                format!("dim Aut° = {} > d² − 2 without product structure", aut.aut_dim)
            })?;
        }
    }
    if let Some(p) = p {
        let with_roots: BTreeSet<usize> = rs.all().iter().map(|r| r.eta).collect();
        ensure(with_roots.len() <= 2 * d, "wuerfel", || "more than 2d facets carry roots".into())?;
        if product_of_lines {
            ensure(lattice_isomorphism(p, &standard::cube(d))?.is_some(), "wuerfel-equality", || {
                "2d root facets but P is not a cube".into()
            })?;
        }
        if projective_space {
            ensure(lattice_isomorphism(p, &standard::simplex_dual(d))?.is_some(), "cories-3-iso", || {
                "|𝒮| = d² + d but P is not E_d*".into()
            })?;
        }
        if let Some(f) = &factors {
            confirm_product(p, f)?;
        }
    }
    Ok(BoundReport {
        eta_u: eta_u.len(),
        eta_u_not_s,
        codim_lin_s: d - lin_s,
        eta_r,
        semisimple,
        aut_dim: aut.aut_dim,
        product_of_lines,
        projective_space,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimOneReport {
    /// Rays outside `η(𝒮)`, when there are any; they form `{τ}` or `{±τ}`.
    pub part1: Option<Vec<usize>>,
    /// Checked when `q = 1`.
    pub part2: Option<bool>,
}

/// Structure of fans whose semisimple roots span a hyperplane; `None` when
/// `dim lin(𝒮) ≠ d − 1`.
pub fn codim_one_analysis(rs: &RootSet, rays: &RaySet, dcd: &DegreeClassData) -> Result<Option<CodimOneReport>> {
    use RootKind::*;
    let d = rays.dim;
    let s_points = rs.points(&rs.semisimple());
    if d == 0 || rank(&s_points) != d - 1 {
        return Ok(None);
    }
    let eta_s = rs.eta_set(&[S1, S2]);
    let rest: Vec<usize> = (0..rays.len()).filter(|i| !eta_s.contains(i)).collect();
    let part1 = if rest.is_empty() {
        None
    } else {
        let g = &rays.generators;
        let shape = rest.len() == 1 || (rest.len() == 2 && (&g[rest[0]] + &g[rest[1]]).is_zero());
        ensure(shape, "glocal-1", || format!("rays outside η(𝒮): {rest:?}"))?;
        for &t in &rest {
            ensure(s_points.iter().all(|m| g[t].dot(m).is_zero()), "glocal-1-orthogonal", || {
                format!("ray {} pairs non-trivially with 𝒮", g[t])
            })?;
        }
        Some(rest)
    };
    let part2 = if dcd.q == 1 {
        let eta_u = rs.eta_set(&[U1, U2]);
        ensure(s_points.len() == d * d - d, "glocal-2-count", || format!("|𝒮| = {} ≠ d² − d", s_points.len()))?;
        ensure(eta_u.len() == 1 && eta_u.is_disjoint(&eta_s), "glocal-2", || {
            format!("|η(𝒰)| = {}, η(𝒮) ∩ η(𝒰) = {:?}", eta_u.len(), eta_u.intersection(&eta_s).collect::<Vec<_>>())
        })?;
        Some(true)
    } else {
        None
    };
    Ok(Some(CodimOneReport { part1, part2 }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub class_sizes: Vec<usize>,
    pub dim: usize,
    pub vertices: usize,
    pub reflexive: bool,
}

fn lattice_section(p: &LatticePolytope, basis: &[IntVector], check: &str) -> Result<LatticePolytope> {
    intersect_with_subspace(p, basis)?
        .to_lattice()
        .ok_or_else(|| Error::violation(check, "section is not a lattice polytope"))
}

/// Verifies `P ∩ lin(B) ≅ ⊕ P ∩ lin(Cᵢ) ≅ ⊕ E*_{cᵢ}`, where `⊕` is the
/// direct sum (product) of polytopes, and the explicit simplex
/// `conv(b, b − (l+1)bᵢ)` for every class.
pub fn semisimple_span_check(p: &LatticePolytope, basis: &RootBasis) -> Result<SpanReport> {
    require_reflexive(p)?;
    if basis.roots.is_empty() {
        return Err(Error::PreconditionFailed("empty root basis".into()));
    }
    let section = lattice_section(p, &basis.roots, "intersec-lattice")?;
    let mut pieces = Vec::new();
    for i in 0..basis.classes.len() {
        let class = basis.class_roots(i);
        let l = class.len();
        let piece = lattice_section(p, &class, "intersec-class-lattice")?;
        let ones = IntVector::from_i64s(&vec![1; l]);
        let mut expected: Vec<IntVector> = (0..l)
            .map(|j| &ones - &IntVector::unit(l, j).scale(&BigInt::from(l as i64 + 1)))
            .collect();
        expected.push(ones);
        expected.sort();
        ensure(piece.vertices() == expected.as_slice(), "intersec-claim", || {
            format!("P ∩ lin(C_{i}) has vertices {:?}", piece.vertices())
        })?;
        ensure(lattice_isomorphism(&piece, &standard::simplex_dual(l))?.is_some(), "intersec-simplex", || {
            format!("P ∩ lin(C_{i}) is not E*_{l}")
        })?;
        pieces.push(piece);
    }
    // the direct sum of polytopes in complementary subspaces is their product
    let sum = pieces.into_iter().reduce(|acc, q| product(&acc, &q)).expect("non-empty");
    ensure(sum.vertices() == section.vertices(), "intersec-sum", || {
        "P ∩ lin(B) is not the direct sum of the class sections".into()
    })?;
    let reflexive = require_reflexive(&section).is_ok();
    ensure(reflexive, "intersec-reflexive", || "P ∩ lin(B) is not reflexive".into())?;
    Ok(SpanReport {
        class_sizes: basis.class_sizes(),
        dim: section.dim(),
        vertices: section.vertices().len(),
        reflexive,
    })
}

/// The five equivalent statements for centrally symmetric reflexive `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubeEquivalents {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralSplit {
    /// Number of `E₁` factors.
    pub k: usize,
    pub g_dim: usize,
    /// Vertices of `G` in its own lattice, centered at its interior point.
    pub g_vertices: Vec<IntVector>,
    pub cube: CubeEquivalents,
}

/// The facet `F` containing the root `x`, as a polytope in a basis of
/// `aff(F) ∩ M` centered at `x`. `None` for a point.
fn facet_in_own_lattice(q: &LatticePolytope, f: usize, x: &IntVector) -> Option<LatticePolytope> {
    let diffs: Vec<IntVector> = q.facet_points(f).iter().map(|v| v - x).collect();
    let basis = saturation(&diffs);
    if basis.is_empty() {
        return None;
    }
    let coords: Vec<IntVector> = diffs
        .iter()
        .map(|v| basis_coordinates(&basis, v).expect("facet points lie in the facet lattice"))
        .collect();
    Some(convex_hull(&coords).expect("facet spans its affine hull"))
}

/// Splits `P ≅ E₁^k × G`, splitting along the first facet carrying a root at
/// every step, and checks the bounds and equivalences for centrally
/// symmetric reflexive polytopes.
pub fn central_decompose(p: &LatticePolytope) -> Result<CentralSplit> {
    if !p.origin_in_interior() || !p.is_centrally_symmetric() {
        return Err(Error::NotCentrallySymmetric);
    }
    require_reflexive(p)?;
    let d = p.dim();
    let rs = roots_of_reflexive(p)?;
    let segment = standard::cube(1);

    let mut k = 0;
    let mut current = Some(p.clone());
    while let Some(q) = current.clone() {
        let qrs = roots_of_reflexive(&q)?;
        let Some(first) = qrs.all().iter().min_by_key(|r| r.eta) else { break };
        let f = first.eta;
        let next = facet_in_own_lattice(&q, f, &first.m);
        match &next {
            Some(g) => {
                ensure(g.origin_in_interior() && g.is_centrally_symmetric(), "rootcentral-symmetric", || {
                    "facet with a root is not centrally symmetric about it".into()
                })?;
                ensure(require_reflexive(g).is_ok(), "rootcentral-reflexive", || "facet is not reflexive".into())?;
                ensure(lattice_isomorphism(&q, &product(&segment, g))?.is_some(), "rootcentral-product", || {
                    "P is not E₁ × F".into()
                })?;
            }
            None => ensure(q.dim() == 1, "rootcentral-product", || "point facet in dimension > 1".into())?,
        }
        k += 1;
        current = next;
    }
    ensure(2 * k == rs.len(), "central-1", || format!("split off {k} factors but |ℛ| = {}", rs.len()))?;
    if let Some(g) = &current {
        ensure(roots_of_reflexive(g)?.is_empty(), "central-1-rootfree", || "G has roots".into())?;
        let model = if k == 0 { g.clone() } else { product(&standard::cube(k), g) };
        ensure(lattice_isomorphism(p, &model)?.is_some(), "central-1-reconstruct", || "P ≇ E₁^k × G".into())?;
    } else {
        ensure(k == d, "central-1", || "G is a point but k ≠ d".into())?;
    }

    let points = p.lattice_points().len();
    let facet_counts: Vec<usize> = (0..p.facets().len()).map(|f| p.facet_lattice_points(f).len()).collect();
    let roots_per_facet: Vec<usize> = (0..p.facets().len())
        .map(|f| rs.all().iter().filter(|r| r.eta == f).count())
        .collect();
    let three = |n: usize| 3usize.pow(n as u32);
    ensure(facet_counts.iter().all(|&c| c <= three(d - 1)), "central-2-facet-points", || {
        format!("facet lattice point counts {facet_counts:?}")
    })?;
    ensure(roots_per_facet.iter().all(|&c| c <= 1), "central-2-facet-roots", || "a facet has two roots".into())?;
    ensure(points <= three(d), "central-2-points", || format!("|P ∩ M| = {points}"))?;
    ensure(rs.len() <= 2 * d, "central-2-roots", || format!("|ℛ| = {}", rs.len()))?;
    ensure(rs.len() + d <= 3 * d, "central-2-aut", || "dim Aut° > 3d".into())?;

    let cube = CubeEquivalents {
        a: points == three(d),
        b: rs.len() == 2 * d,
        c: roots_per_facet.iter().all(|&c| c == 1),
        d: facet_counts.iter().all(|&c| c == three(d - 1)),
        e: lattice_isomorphism(p, &standard::cube(d))?.is_some(),
    };
    ensure(
        [cube.b, cube.c, cube.d, cube.e].iter().all(|&x| x == cube.a),
        "central-3",
        || format!("{cube:?}"),
    )?;
    Ok(CentralSplit {
        k,
        g_dim: current.as_ref().map_or(0, LatticePolytope::dim),
        g_vertices: current.map(|g| g.vertices().to_vec()).unwrap_or_default(),
        cube,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub semisimple: bool,
    /// Codimension of `⋂_{F ∈ ℱ(𝒰)} F` when `𝒰 ≠ ∅`.
    pub unipotent_face_codim: Option<usize>,
    /// Sum of the lattice points of that face.
    pub fixpoint: Option<IntVector>,
}

/// Symmetric reflexive polytopes are semisimple; conversely for
/// non-semisimple `P` the face cut out by the facets with unipotent roots
/// yields a non-zero fixpoint of `Aut_M(P)`.
pub fn symmetric_implies_semisimple(p: &LatticePolytope) -> Result<SymmetryReport> {
    require_reflexive(p)?;
    let rs = roots_of_reflexive(p)?;
    let d = p.dim();
    let symmetric = is_symmetric(p);
    let semisimple = rs.is_semisimple();
    ensure(!symmetric || semisimple, "bs-sym", || "symmetric polytope with unipotent roots".into())?;
    if semisimple {
        return Ok(SymmetryReport {
            symmetric,
            semisimple,
            unipotent_face_codim: None,
            fixpoint: None,
        });
    }
    let facets: BTreeSet<usize> = rs.unipotent().iter().map(|r| r.eta).collect();
    let face_vertices: Vec<IntVector> = (0..p.vertices().len())
        .filter(|&v| facets.iter().all(|f| p.facets()[*f].vertices.contains(&v)))
        .map(|v| p.vertices()[v].clone())
        .collect();
    ensure(!face_vertices.is_empty(), "ucoro-nonempty", || "⋂ ℱ(𝒰) is empty".into())?;
    let codim = d + 1 - affine_rank(&face_vertices);
    ensure(codim == facets.len() && codim <= d, "ucoro-codim", || {
        format!("face codimension {codim}, |ℱ(𝒰)| = {}", facets.len())
    })?;
    let face_points: Vec<IntVector> = p
        .boundary_lattice_points()
        .into_iter()
        .filter(|x| facets.iter().all(|f| p.facets()[*f].value(x).is_zero()))
        .collect();
    let s = IntVector::sum(d, &face_points);
    ensure(!s.is_zero(), "ucoro-nonzero", || "lattice point sum of the face is zero".into())?;
    let fixed = lattice_automorphisms(p).iter().all(|a| a.apply(&s) == s);
    ensure(fixed, "ucoro-fixpoint", || format!("{s} is not fixed by Aut_M(P)"))?;
    Ok(SymmetryReport {
        symmetric,
        semisimple,
        unipotent_face_codim: Some(codim),
        fixpoint: Some(s),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification2d {
    pub semisimple: bool,
    pub smooth: bool,
    pub is_e2_dual: bool,
    pub is_square: bool,
    pub dual_semisimple: bool,
    pub dual_smooth: bool,
}

/// Semisimple reflexive polygons are exactly the smooth Fano polygons,
/// `E₂*` and `E₁²`; and `P` or `P*` is semisimple iff one of them is smooth.
pub fn classify_2d(p: &LatticePolytope) -> Result<Classification2d> {
    if p.dim() != 2 {
        return Err(Error::PreconditionFailed(format!("dimension {} ≠ 2", p.dim())));
    }
    require_reflexive(p)?;
    let dual = lattice_dual(p)?;
    let semisimple = roots_of_reflexive(p)?.is_semisimple();
    let dual_semisimple = roots_of_reflexive(&dual)?.is_semisimple();
    let smooth = fano_class(p)?.smooth;
    let dual_smooth = fano_class(&dual)?.smooth;
    let is_e2_dual = lattice_isomorphism(p, &standard::simplex_dual(2))?.is_some();
    let is_square = lattice_isomorphism(p, &standard::cube(2))?.is_some();
    let c = Classification2d {
        semisimple,
        smooth,
        is_e2_dual,
        is_square,
        dual_semisimple,
        dual_smooth,
    };
    ensure(semisimple == (smooth || is_e2_dual || is_square), "polygon-semisimple", || format!("{c:?}"))?;
    ensure((semisimple || dual_semisimple) == (smooth || dual_smooth), "polygon-dual", || format!("{c:?}"))?;
    Ok(c)
}

pub const DEFAULT_BOX: i64 = 3;

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Whether `b` comes strictly after `a` counterclockwise from the ray
/// through `s`.
fn angle_less(s: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    let half = |x: (i64, i64)| {
        let c = det(s, x);
        !(c > 0 || (c == 0 && s.0 * x.0 + s.1 * x.1 > 0))
    };
    match (half(a), half(b)) {
        (ha, hb) if ha != hb => !ha,
        _ => det(a, b) > 0,
    }
}

/// Closed boundary walks winding once around the origin through lattice
/// points of the box: consecutive points span unimodular triangles with the
/// origin, and every turn is convex. The walk starts at its
/// lexicographically smallest point.
fn boundary_cycles(start: (i64, i64), points: &[(i64, i64)], out: &mut Vec<Vec<(i64, i64)>>) {
    const MAX_LEN: usize = 12;
    fn extend(path: &mut Vec<(i64, i64)>, points: &[(i64, i64)], out: &mut Vec<Vec<(i64, i64)>>) {
        let cur = *path.last().unwrap();
        let start = path[0];
        for &q in points {
            if det(cur, q) != 1 {
                continue;
            }
            if path.len() >= 2 {
                let prev = path[path.len() - 2];
                if det((cur.0 - prev.0, cur.1 - prev.1), (q.0 - cur.0, q.1 - cur.1)) < 0 {
                    continue;
                }
            }
            if q == start {
                if path.len() >= 3 {
                    let second = path[1];
                    if det((start.0 - cur.0, start.1 - cur.1), (second.0 - start.0, second.1 - start.1)) >= 0 {
                        out.push(path.clone());
                    }
                }
                continue;
            }
            if q < start || path.len() >= MAX_LEN || !angle_less(start, cur, q) {
                continue;
            }
            path.push(q);
            extend(path, points, out);
            path.pop();
        }
    }
    let mut path = vec![start];
    extend(&mut path, points, out);
}

/// One representative per lattice isomorphism class of reflexive polygons
/// with all vertices in `[−K, K]²`.
pub fn enumerate_reflexive_2d(bound: i64) -> Vec<LatticePolytope> {
    let points: Vec<(i64, i64)> = (-bound..=bound)
        .flat_map(|x| (-bound..=bound).map(move |y| (x, y)))
        .filter(|&(x, y)| num_integer::gcd(x, y) == 1)
        .collect();
    let candidates: Vec<LatticePolytope> = points
        .par_iter()
        .map(|&s| {
            let mut cycles = Vec::new();
            boundary_cycles(s, &points, &mut cycles);
            cycles
                .into_iter()
                .filter_map(|c| {
                    let pts: Vec<IntVector> = c.iter().map(|&(x, y)| IntVector::from_i64s(&[x, y])).collect();
                    let hull = convex_hull(&pts).ok()?;
                    let ok = hull.interior_lattice_points() == [IntVector::zeros(2)]
                        && hull.boundary_lattice_points().len() == c.len()
                        && hull.facets().iter().all(|f| f.level.is_one());
                    ok.then_some(hull)
                })
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    let mut seen = BTreeSet::new();
    let keyed: Vec<_> = candidates
        .into_iter()
        .filter(|c| seen.insert(c.vertices().to_vec()))
        .map(|c| (polygon_key(&c), c))
        .collect();
    let mut unique: Vec<(PolygonKey, LatticePolytope)> = Vec::new();
    for (key, c) in keyed {
        let duplicate = unique
            .iter()
            .any(|(k, u)| *k == key && lattice_isomorphism(u, &c).ok().flatten().is_some());
        if !duplicate {
            unique.push((key, c));
        }
    }
    unique.sort_by(|(k1, u1), (k2, u2)| (k1, u1.vertices()).cmp(&(k2, u2.vertices())));
    unique.into_iter().map(|(_, u)| u).collect()
}

type PolygonKey = (usize, usize, Vec<usize>);

fn polygon_key(p: &LatticePolytope) -> PolygonKey {
    let mut edges: Vec<usize> = (0..p.facets().len()).map(|f| p.facet_lattice_points(f).len()).collect();
    edges.sort_unstable();
    (p.boundary_lattice_points().len(), p.vertices().len(), edges)
}

/// `Σ_{v ∈ V(P*)} rvol(v*) · v`, zero for every reflexive polytope.
pub fn minkowski_sum(p: &LatticePolytope) -> Result<RationalVector> {
    require_reflexive(p)?;
    let dual = lattice_dual(p)?;
    let d = p.dim();
    let mut acc = RationalVector::zeros(d);
    for v in dual.vertices() {
        let f = p
            .facets()
            .iter()
            .position(|f| &f.normal == v)
            .ok_or_else(|| Error::violation("mink-facet", format!("no facet with normal {v}")))?;
        acc = &acc + &v.to_rational().scale(&p.facet_rvol(f));
    }
    Ok(acc)
}

pub fn check_minkowski(p: &LatticePolytope) -> Result<()> {
    let s = minkowski_sum(p)?;
    ensure(s.is_zero(), "mink", || format!("Σ rvol(v*)·v = {s}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_root_basis, compute_roots, cox_classes, default_selection};

    fn iv(a: &[i64]) -> IntVector {
        IntVector::from_i64s(a)
    }

    fn fan_data(p: &LatticePolytope) -> (RaySet, RootSet, DegreeClassData) {
        let rs = roots_of_reflexive(p).unwrap();
        let rays = rs.rays.clone();
        let dcd = cox_classes(&rays, &rs).unwrap();
        (rays, rs, dcd)
    }

    fn projective_rays(d: usize) -> RaySet {
        let mut g: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
        g.push(IntVector::from_i64s(&vec![-1; d]));
        RaySet::new(g).unwrap()
    }

    #[test]
    fn aut_summary_examples() {
        for d in 1..=4 {
            let rs = compute_roots(&projective_rays(d)).unwrap();
            assert_eq!(aut_summary(&rs, d), AutSummary { reductive: true, aut_dim: d * d + 2 * d });
        }
        let rs = roots_of_reflexive(&standard::weight_simplex()).unwrap();
        assert_eq!(aut_summary(&rs, 3), AutSummary { reductive: false, aut_dim: 13 });
        for d in 1..=3 {
            let rs = roots_of_reflexive(&standard::cube(d)).unwrap();
            assert_eq!(aut_summary(&rs, d).aut_dim, 3 * d);
        }
    }

    #[test]
    fn fan_criteria_examples() {
        let rays = projective_rays(2);
        let rs = compute_roots(&rays).unwrap();
        let f = check_fan_criteria(&rays, &rs).unwrap();
        assert!(f.a && f.b && f.c && f.rays_sum_zero);

        let (rays, rs, _) = fan_data(&standard::weight_simplex());
        let f = check_fan_criteria(&rays, &rs).unwrap();
        assert!(!f.a && !f.b && !f.c && !f.rays_sum_zero);
        assert_eq!(rays.sum(), iv(&[-1, 0, 1]));

        let (rays, rs, _) = fan_data(&standard::cube(3));
        assert!(check_fan_criteria(&rays, &rs).unwrap().rays_sum_zero);
    }

    #[test]
    fn reflexive_criteria_examples() {
        let r = check_reflexive_criteria(&standard::simplex_dual(2)).unwrap();
        assert!(r.reflexive_equivalent.unwrap().values().iter().all(|&x| x));
        assert!(r.sufficient.unwrap().values().iter().all(|&x| x));

        let r = check_reflexive_criteria(&standard::weight_simplex()).unwrap();
        assert!(r.reflexive_equivalent.unwrap().values().iter().all(|&x| !x));
        assert!(r.sufficient.unwrap().values().iter().all(|&x| !x));

        let r = check_reflexive_criteria(&standard::cube(3)).unwrap();
        assert!(r.reflexive_equivalent.unwrap().values().iter().all(|&x| x));
        assert!(r.sufficient.unwrap().values().iter().all(|&x| x));

        let big = LatticePolytope::from_i64_points(&[&[2, 2], &[2, -2], &[-2, 2], &[-2, -2]]).unwrap();
        assert_eq!(check_reflexive_criteria(&big).unwrap_err(), Error::NotReflexive);
    }

    #[test]
    fn product_detection_examples() {
        let rays = projective_rays(2);
        let rs = compute_roots(&rays).unwrap();
        let dcd = cox_classes(&rays, &rs).unwrap();
        assert_eq!(detect_product_projective(&rs, &dcd, 2), Some(vec![2]));
        let (_, rs, dcd) = fan_data(&standard::cube(3));
        assert_eq!(detect_product_projective(&rs, &dcd, 3), Some(vec![1, 1, 1]));
        let (_, rs, dcd) = fan_data(&standard::weight_simplex());
        assert_eq!(detect_product_projective(&rs, &dcd, 3), None);
        let p = product(&standard::simplex_dual(2), &standard::cube(1));
        let (_, rs, dcd) = fan_data(&p);
        assert_eq!(rs.len(), 8);
        let mut f = detect_product_projective(&rs, &dcd, 3).unwrap();
        f.sort();
        assert_eq!(f, vec![1, 2]);
        confirm_product(&p, &f).unwrap();
    }

    #[test]
    fn bound_examples() {
        let p = standard::simplex_dual(3);
        let (_, rs, dcd) = fan_data(&p);
        let b = bound_checks(&rs, &dcd, Some(&p)).unwrap();
        assert!(b.projective_space && b.semisimple == 12);
        let p = standard::cube(3);
        let (_, rs, dcd) = fan_data(&p);
        let b = bound_checks(&rs, &dcd, Some(&p)).unwrap();
        assert!(b.product_of_lines && b.eta_r == 6);
        let p = standard::weight_simplex();
        let (_, rs, dcd) = fan_data(&p);
        assert_eq!(bound_checks(&rs, &dcd, Some(&p)).unwrap().eta_u, 2);
    }

    #[test]
    fn codim_one_examples() {
        let (rays, rs, dcd) = fan_data(&standard::weight_simplex());
        let r = codim_one_analysis(&rs, &rays, &dcd).unwrap().unwrap();
        assert_eq!(r, CodimOneReport { part1: None, part2: None });
        let rays = projective_rays(2);
        let rs = compute_roots(&rays).unwrap();
        let dcd = cox_classes(&rays, &rs).unwrap();
        assert_eq!(codim_one_analysis(&rs, &rays, &dcd).unwrap(), None);
        let (rays, rs, dcd) = fan_data(&product(&standard::simplex_dual(2), &standard::cube(1)));
        assert_eq!(codim_one_analysis(&rs, &rays, &dcd).unwrap(), None);
        // Hirzebruch surface F₂: one semisimple pair, q = 1
        let rays = RaySet::new(vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[-1, 2]), iv(&[0, -1])]).unwrap();
        let rs = compute_roots(&rays).unwrap();
        let dcd = cox_classes(&rays, &rs).unwrap();
        let r = codim_one_analysis(&rs, &rays, &dcd).unwrap().unwrap();
        assert_eq!(r.part2, Some(true));
        assert_eq!(r.part1.map(|v| v.len()), Some(2));
    }

    #[test]
    fn span_examples() {
        for d in 1..=3 {
            let p = standard::simplex_dual(d);
            let (rays, rs, dcd) = fan_data(&p);
            let _ = rays;
            let b = build_root_basis(&rs, &dcd, &default_selection(&dcd)).unwrap();
            let r = semisimple_span_check(&p, &b).unwrap();
            assert_eq!((r.dim, r.vertices), (d, d + 1));
        }
        let p = standard::weight_simplex();
        let (_, rs, dcd) = fan_data(&p);
        let b = build_root_basis(&rs, &dcd, &default_selection(&dcd)).unwrap();
        let r = semisimple_span_check(&p, &b).unwrap();
        assert_eq!((r.dim, r.vertices, r.class_sizes.clone()), (2, 4, vec![1, 1]));
        let p = standard::cube(3);
        let (_, rs, dcd) = fan_data(&p);
        let sel = default_selection(&dcd)[..2].to_vec();
        let b = build_root_basis(&rs, &dcd, &sel).unwrap();
        let r = semisimple_span_check(&p, &b).unwrap();
        assert_eq!((r.dim, r.vertices), (2, 4));
    }

    #[test]
    fn central_examples() {
        let c = central_decompose(&standard::cube(3)).unwrap();
        assert_eq!((c.k, c.g_dim), (3, 0));
        assert!(c.cube.a && c.cube.e);
        let c = central_decompose(&standard::cross_polytope(3)).unwrap();
        assert_eq!((c.k, c.g_dim), (0, 3));
        assert!(!c.cube.a && !c.cube.e);
        let p = product(&standard::cube(1), &standard::cross_polytope(2));
        let c = central_decompose(&p).unwrap();
        assert_eq!((c.k, c.g_dim), (1, 2));
        assert!(lattice_isomorphism(&convex_hull(&c.g_vertices).unwrap(), &standard::cross_polytope(2))
            .unwrap()
            .is_some());
        assert_eq!(central_decompose(&standard::simplex_dual(2)).unwrap_err(), Error::NotCentrallySymmetric);
    }

    #[test]
    fn symmetry_examples() {
        let r = symmetric_implies_semisimple(&standard::cube(3)).unwrap();
        assert!(r.symmetric && r.semisimple);
        let r = symmetric_implies_semisimple(&standard::simplex_dual(2)).unwrap();
        assert!(r.symmetric && r.semisimple);
        let r = symmetric_implies_semisimple(&standard::weight_simplex()).unwrap();
        assert!(!r.symmetric && !r.semisimple);
        assert_eq!(r.unipotent_face_codim, Some(2));
        assert!(!r.fixpoint.unwrap().is_zero());
    }

    #[test]
    fn classify_2d_examples() {
        let c = classify_2d(&standard::cube(2)).unwrap();
        assert!(c.semisimple && c.is_square);
        let c = classify_2d(&standard::simplex_dual(2)).unwrap();
        assert!(c.semisimple && c.is_e2_dual);
        let c = classify_2d(&standard::simplex(2)).unwrap();
        assert!(c.semisimple && c.smooth);
    }

    #[test]
    fn reflexive_polygons() {
        let all = enumerate_reflexive_2d(DEFAULT_BOX);
        assert_eq!(all.len(), 16);
        let has = |q: &LatticePolytope| all.iter().any(|p| lattice_isomorphism(p, q).unwrap().is_some());
        assert!(has(&standard::simplex_dual(2)) && has(&standard::cube(2)));
        let semisimple = all.iter().filter(|p| classify_2d(p).unwrap().semisimple).count();
        assert_eq!(semisimple, 7);
        for p in &all {
            check_reflexive_criteria(p).unwrap();
            check_minkowski(p).unwrap();
        }
    }
}
