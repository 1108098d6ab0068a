//! Structural properties of root systems, checked exhaustively on a single
//! input. Each check returns the number of instances it examined.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{ensure, Result};
use crate::lattice::{affine_rank, integer_coordinates, solve_in_span, unimodular_completion, IntVector};
use crate::polytope::{lattice_dual, LatticePolytope};
use crate::roots::{compute_roots, orthogonalize, z_pair_with, RaySet, RootBasis, RootKind, RootSet};

/// `Σ_τ ⟨v_τ, m⟩ ≥ 0` for every root, with equality exactly on `𝒮`.
pub fn short_roots(rs: &RootSet) -> Result<usize> {
    for r in rs.all() {
        let s: BigInt = rs.rays.pairings(&r.m).iter().sum();
        ensure(!s.is_negative(), "short-nonnegative", || format!("Σ⟨v_τ, {}⟩ = {s}", r.m))?;
        ensure(s.is_zero() == r.is_semisimple(), "short-semisimple", || {
            format!("Σ⟨v_τ, {}⟩ = {s} for a {:?} root", r.m, r.kind)
        })?;
    }
    Ok(rs.len())
}

/// A semisimple root pairs to zero with every ray other than `η_b`, `η_{−b}`.
pub fn semisimple_support(rs: &RootSet) -> Result<usize> {
    for r in rs.semisimple() {
        let neg = rs.get(&-&r.m).expect("semisimple");
        for (t, v) in rs.rays.generators.iter().enumerate() {
            if t != r.eta && t != neg.eta {
                ensure(v.dot(&r.m).is_zero(), "short-support", || format!("⟨{v}, {}⟩ ≠ 0", r.m))?;
            }
        }
    }
    Ok(rs.semisimple().len())
}

/// Positive integer relations `Σ k_m m = 0` with `k_m ≤ 3` over random
/// subsets of at most six roots only involve semisimple roots.
pub fn sum_relations_random<R: Rng>(rs: &RootSet, rng: &mut R, trials: usize) -> Result<usize> {
    const MAX_COEFF: u32 = 3;
    const MAX_SIZE: usize = 6;
    let roots = rs.all();
    if roots.is_empty() {
        return Ok(0);
    }
    let mut relations = 0;
    for _ in 0..trials {
        let size = rng.gen_range(1..=MAX_SIZE.min(roots.len()));
        let mut subset: Vec<&IntVector> = roots.choose_multiple(rng, size).map(|r| &r.m).collect();
        // bias towards relations: sometimes close the subset under negation
        if rng.gen_bool(0.5) {
            let extra: Vec<IntVector> = subset.iter().map(|m| -*m).filter(|m| rs.contains(m)).collect();
            for m in extra {
                if subset.len() < MAX_SIZE && !subset.contains(&&m) {
                    subset.push(&rs.get(&m).unwrap().m);
                }
            }
        }
        let k = subset.len();
        let d = rs.dim();
        let mut coeffs = vec![1u32; k];
        loop {
            let mut sum = IntVector::zeros(d);
            for (m, &c) in subset.iter().zip(&coeffs) {
                sum = &sum + &m.scale(&BigInt::from(c));
            }
            if sum.is_zero() {
                relations += 1;
                for m in &subset {
                    ensure(rs.get(m).unwrap().is_semisimple(), "sum", || {
                        format!("unipotent root {m} in a positive relation")
                    })?;
                }
                break;
            }
            let mut i = 0;
            while i < k && coeffs[i] == MAX_COEFF {
                coeffs[i] = 1;
                i += 1;
            }
            if i == k {
                break;
            }
            coeffs[i] += 1;
        }
    }
    Ok(relations)
}

/// Partial addition on every admissible pair of roots.
pub fn tame_pairs(rs: &RootSet) -> Result<usize> {
    let mut n = 0;
    for v in rs.all() {
        for w in rs.all() {
            if v.m != -&w.m && rs.eta(v).dot(&w.m).is_positive() {
                let s = orthogonalize(rs, &v.m, &w.m)?;
                ensure(s.m == &v.m + &w.m, "tame", || format!("{} + {}", v.m, w.m))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// `⟨η_v, w⟩ = 0` for `v ∈ 𝒰`, `w ∈ 𝒮₁`.
pub fn neu(rs: &RootSet) -> Result<usize> {
    let s1 = rs.of_kind(&[RootKind::S1]);
    let u = rs.unipotent();
    for v in &u {
        for w in &s1 {
            ensure(rs.eta(v).dot(&w.m).is_zero(), "neu", || format!("⟨η_{}, {}⟩ ≠ 0", v.m, w.m))?;
        }
    }
    Ok(u.len() * s1.len())
}

/// A facet with a unipotent root and a semisimple root `x` forces a
/// unipotent root on the facet of `−x`.
pub fn facet_unipotent(rs: &RootSet) -> Result<usize> {
    let eta_u: BTreeSet<usize> = rs.unipotent().iter().map(|r| r.eta).collect();
    let mut n = 0;
    for x in rs.semisimple() {
        if eta_u.contains(&x.eta) {
            let neg = rs.get(&-&x.m).unwrap();
            ensure(eta_u.contains(&neg.eta), "facet-unipotent", || {
                format!("facet of {} has no unipotent root", neg.m)
            })?;
            n += 1;
        }
    }
    Ok(n)
}

/// Every lattice point of `P` in `lin(B)` has integer coordinates in `B`.
pub fn ortho1(p: &LatticePolytope, basis: &RootBasis) -> Result<usize> {
    if basis.roots.is_empty() {
        return Ok(0);
    }
    let mut n = 0;
    for x in p.lattice_points() {
        if solve_in_span(&basis.roots, &x).is_some() {
            ensure(integer_coordinates(&basis.roots, &x).is_some(), "ortho1", || {
                format!("{x} has non-integral coordinates in the root basis")
            })?;
            n += 1;
        }
    }
    Ok(n)
}

/// For a pairwise orthogonal family `B`, `⋂ ℱ_b` is a face of codimension
/// `|B|` with `Σ b` in its relative interior.
pub fn ortho2(p: &LatticePolytope, rs: &RootSet, family: &[IntVector]) -> Result<()> {
    if family.is_empty() {
        return Ok(());
    }
    let facets: BTreeSet<usize> = family.iter().map(|b| rs.get(b).expect("family of roots").eta).collect();
    ensure(facets.len() == family.len(), "ortho2-distinct", || "two family members share a facet".into())?;
    let face: Vec<IntVector> = (0..p.vertices().len())
        .filter(|&v| facets.iter().all(|f| p.facets()[*f].vertices.contains(&v)))
        .map(|v| p.vertices()[v].clone())
        .collect();
    let codim = p.dim() + 1 - affine_rank(&face);
    ensure(!face.is_empty() && codim == family.len(), "ortho2-codim", || {
        format!("face of {} roots has codimension {codim}", family.len())
    })?;
    let s = IntVector::sum(p.dim(), family);
    let tight: BTreeSet<usize> = p.tight_facets(&s).into_iter().collect();
    ensure(tight == facets, "ortho2-relint", || format!("Σb = {s} lies on facets {tight:?}"))
}

/// All orthogonal pairs of roots, as two-element families.
pub fn ortho2_pairs(p: &LatticePolytope, rs: &RootSet) -> Result<usize> {
    let mut n = 0;
    for (i, v) in rs.all().iter().enumerate() {
        for w in &rs.all()[i + 1..] {
            if rs.orthogonal(&v.m, &w.m)? {
                ortho2(p, rs, &[v.m.clone(), w.m.clone()])?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// The projection along a root maps `ℱ_m ∩ M` bijectively onto `π_m(P ∩ M)`.
pub fn root_proj(p: &LatticePolytope, rs: &RootSet) -> Result<usize> {
    let points = p.lattice_points();
    for r in rs.all() {
        let u = unimodular_completion(&r.m)?;
        let project = |x: &IntVector| IntVector(u.apply(x).0[1..].to_vec());
        let facet = p.facet_lattice_points(r.eta);
        let image: BTreeSet<IntVector> = facet.iter().map(project).collect();
        ensure(image.len() == facet.len(), "root-proj-injective", || format!("projection along {} not injective", r.m))?;
        let all: BTreeSet<IntVector> = points.iter().map(project).collect();
        ensure(image == all, "root-proj-surjective", || format!("projection along {} not onto", r.m))?;
    }
    Ok(rs.len())
}

/// `{n ∈ P* ∩ N : ⟨n, m⟩ < 0} = {η_m}` for all roots, and for semisimple
/// `m` the support `{n : ⟨n, m⟩ ≠ 0}` is `{η_m, η_{−m}}`.
pub fn prisma(p: &LatticePolytope, rs: &RootSet) -> Result<usize> {
    let dual_points = lattice_dual(p)?.lattice_points();
    for r in rs.all() {
        let negative: Vec<&IntVector> = dual_points.iter().filter(|n| n.dot(&r.m).is_negative()).collect();
        ensure(negative == [rs.eta(r)], "prisma-1", || format!("negative support of {}", r.m))?;
        if r.is_semisimple() {
            let neg = rs.get(&-&r.m).unwrap();
            let support: BTreeSet<&IntVector> = dual_points.iter().filter(|n| !n.dot(&r.m).is_zero()).collect();
            let expected: BTreeSet<&IntVector> = [rs.eta(r), rs.eta(neg)].into_iter().collect();
            ensure(support == expected, "prisma-3", || format!("support of {} has {} elements", r.m, support.len()))?;
        }
    }
    Ok(rs.len())
}

/// The root set of the normal fan computed from `𝒱(P*)` agrees with the
/// facet-interior points, including `η`.
pub fn dual_path(p: &LatticePolytope, rs: &RootSet) -> Result<()> {
    let dual = lattice_dual(p)?;
    // order the dual vertices like the facets of P so η indices are comparable
    let ordered: Vec<IntVector> = p
        .facets()
        .iter()
        .map(|f| dual.vertices().iter().find(|v| **v == f.normal).cloned())
        .collect::<Option<_>>()
        .ok_or_else(|| crate::Error::violation("dual-path", "dual vertices differ from facet normals"))?;
    let other = compute_roots(&RaySet::new(ordered)?)?;
    ensure(other.all() == rs.all(), "dual-path", || {
        format!("{} roots from facets, {} from the dual", rs.len(), other.len())
    })
}

/// The partial addition law on every ordered pair of boundary lattice points.
pub fn z_pairs(p: &LatticePolytope) -> Result<usize> {
    let boundary = p.boundary_lattice_points();
    for v in &boundary {
        for w in &boundary {
            z_pair_with(p, &boundary, v, w)?;
        }
    }
    Ok(boundary.len() * boundary.len())
}

/// For centrally symmetric ray sets `dim Aut° ≤ 3d`, with equality iff the
/// rays are `±` a lattice basis.
pub fn symmetric_rays_bound(rays: &RaySet, rs: &RootSet) -> Result<Option<bool>> {
    let set: BTreeSet<&IntVector> = rays.generators.iter().collect();
    if !rays.generators.iter().all(|v| set.contains(&-v)) {
        return Ok(None);
    }
    let d = rays.dim;
    let n = rs.len() + d;
    ensure(n <= 3 * d, "symmetric-rays-bound", || format!("dim Aut° = {n} > 3d"))?;
    let positive: Vec<IntVector> = rays.generators.iter().filter(|v| v > &&-*v).cloned().collect();
    let cube = rays.len() == 2 * d && crate::lattice::is_saturated_basis(&positive) && positive.len() == d;
    ensure((n == 3 * d) == cube, "symmetric-rays-equality", || format!("dim Aut° = {n}, cube fan: {cube}"))?;
    Ok(Some(n == 3 * d))
}
