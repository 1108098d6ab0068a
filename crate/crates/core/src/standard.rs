//! Named polytopes used throughout the examples and the corpus.

use crate::lattice::IntVector;
use crate::polytope::{convex_hull, product, LatticePolytope};

fn hull(points: Vec<IntVector>) -> LatticePolytope {
    convex_hull(&points).expect("standard polytopes are full-dimensional")
}

/// `E_d = conv(e₁, …, e_d, −Σeᵢ)`, the fan polytope of projective space.
pub fn simplex(d: usize) -> LatticePolytope {
    let mut pts: Vec<IntVector> = (0..d).map(|i| IntVector::unit(d, i)).collect();
    pts.push(IntVector::from_i64s(&vec![-1; d]));
    hull(pts)
}

/// `E_d*`, the reflexive simplex whose normal fan is that of projective space.
pub fn simplex_dual(d: usize) -> LatticePolytope {
    let base = vec![-1i64; d];
    let mut pts = vec![IntVector::from_i64s(&base)];
    for i in 0..d {
        let mut v = base.clone();
        v[i] += d as i64 + 1;
        pts.push(IntVector::from_i64s(&v));
    }
    hull(pts)
}

/// `[−1, 1]^d = E₁^d`.
pub fn cube(d: usize) -> LatticePolytope {
    let segment = hull(vec![IntVector::from_i64s(&[-1]), IntVector::from_i64s(&[1])]);
    (1..d).fold(segment.clone(), |acc, _| product(&acc, &segment))
}

/// `conv(±e₁, …, ±e_d)`.
pub fn cross_polytope(d: usize) -> LatticePolytope {
    let pts = (0..d)
        .flat_map(|i| {
            let e = IntVector::unit(d, i);
            [-&e, e]
        })
        .collect();
    hull(pts)
}

/// The reflexive 3-simplex `conv((1,0,0), (1,3,0), (1,0,3), (−5,−6,−3))`.
pub fn weight_simplex() -> LatticePolytope {
    hull(vec![
        IntVector::from_i64s(&[1, 0, 0]),
        IntVector::from_i64s(&[1, 3, 0]),
        IntVector::from_i64s(&[1, 0, 3]),
        IntVector::from_i64s(&[-5, -6, -3]),
    ])
}
