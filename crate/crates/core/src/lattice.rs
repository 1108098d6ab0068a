//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers; no floating point
//! is used anywhere in the crate. Matrices are small (dimension at most a
//! handful, a few dozen rows), so the algorithms favour determinism and
//! simplicity over asymptotics.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point of the lattice `Z^d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn concat(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|x| Rational::from(x.clone())).collect())
    }

    /// Sum of a sequence of vectors of dimension `dim`.
    pub fn sum<'a>(dim: usize, vs: impl IntoIterator<Item = &'a IntVector>) -> IntVector {
        vs.into_iter().fold(IntVector::zeros(dim), |acc, v| &acc + v)
    }
}

impl std::ops::Deref for IntVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(a: [i64; N]) -> Self {
        IntVector::from_i64s(&a)
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(a: Vec<i64>) -> Self {
        IntVector::from_i64s(&a)
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

// Integers go out as decimal strings so JSON consumers never truncate them.
impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

/// A point of `Q^d`, every entry in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot_int(&self, other: &IntVector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * Rational::from(b.clone()))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntVector> {
        self.is_integral()
            .then(|| IntVector(self.0.iter().map(|x| x.to_integer()).collect()))
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors; `cols` is only
    /// consulted when `rows` is empty.
    pub fn from_rows(rows: &[IntVector], cols: usize) -> Self {
        let cols = rows.first().map_or(cols, IntVector::dim);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "ragged rows");
            data.extend(r.0.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let vs: Vec<IntVector> = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(&vs, 0)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[IntVector], rows: usize) -> Self {
        Self::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &IntVector) -> IntVector {
        assert_eq!(v.dim(), self.cols);
        IntVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += t;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.row_vectors())
    }
}

/// Returns `(g, v / g)` where `g > 0` is the gcd of the entries of `v`.
pub fn primitive_part(v: &IntVector) -> Result<(BigInt, IntVector)> {
    let g = v.0.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let w = IntVector(v.0.iter().map(|x| x / &g).collect());
    Ok((g, w))
}

pub fn is_primitive(v: &IntVector) -> bool {
    matches!(primitive_part(v), Ok((g, _)) if g.is_one())
}

/// Smith normal form `U·A·V = D` together with `V⁻¹`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// The non-zero diagonal entries `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Structure of `Z^rows / A·Z^cols`: free rank and the torsion
    /// coefficients greater than one.
    pub fn cokernel(&self) -> (usize, Vec<BigInt>) {
        let factors = self.invariant_factors();
        let free = self.d.rows() - factors.len();
        let torsion = factors.into_iter().filter(|x| !x.is_one()).collect();
        (free, torsion)
    }
}

/// Smith normal form with smallest-absolute-value pivoting; ties go to the
/// lowest (row, column) index so that `U` and `V` are reproducible.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| x.abs() < d[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish_snf(d, u, v, v_inv);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                let k = -q;
                d.add_row_multiple(i, t, &k);
                u.add_row_multiple(i, t, &k);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                let k = -&q;
                d.add_col_multiple(j, t, &k);
                v.add_col_multiple(j, t, &k);
                // V⁻¹ picks up the inverse operation: row_t += q·row_j
                v_inv.add_row_multiple(t, j, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            if let Some(i) = bad_row {
                d.add_row_multiple(t, i, &BigInt::one());
                u.add_row_multiple(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish_snf(d, u, v, v_inv)
}

fn finish_snf(mut d: IntMatrix, mut u: IntMatrix, v: IntMatrix, v_inv: IntMatrix) -> SmithForm {
    for t in 0..d.rows().min(d.cols()) {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { d, u, v, v_inv }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn exact_determinant(a: &IntMatrix) -> Result<BigInt> {
    if a.rows() != a.cols() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = val;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    Ok(sign * &m[(n - 1, n - 1)])
}

/// Rank over `Q` of a family of integer vectors.
pub fn rank(rows: &[IntVector]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.dim();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for j in c..cols {
                let val = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = val;
            }
            let g = m[i].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in &mut m[i] {
                    *x = &*x / &g;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Affine rank (number of affinely independent points) of a point set.
pub fn affine_rank(points: &[IntVector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<IntVector> = rest.iter().map(|p| p - p0).collect();
            rank(&diffs) + 1
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: the
/// returned rows form a basis in echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_basis(rows: &[IntVector]) -> Vec<IntVector> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let cols = first.dim();
    let mut m: Vec<IntVector> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let sub = m[r].scale(&q);
                m[i] = &m[i] - &sub;
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                m[r] = -&m[r];
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                let sub = m[r].scale(&q);
                m[i] = &m[i] - &sub;
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// A basis of the saturated lattice `lin_Q(rows) ∩ Z^d`, in Hermite form.
pub fn saturation(rows: &[IntVector]) -> Vec<IntVector> {
    let nonzero: Vec<IntVector> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&nonzero, 0));
    let r = snf.rank();
    let basis: Vec<IntVector> = (0..r).map(|i| snf.v_inv.row(i)).collect();
    hermite_basis(&basis)
}

/// True iff `basis` is linearly independent and generates `lin(basis) ∩ Z^d`.
pub fn is_saturated_basis(basis: &[IntVector]) -> bool {
    if basis.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(basis, 0));
    let f = snf.invariant_factors();
    f.len() == basis.len() && f.iter().all(One::is_one)
}

/// `(origin, basis)` with `basis` a Z-basis of `(aff(points) ∩ Z^d) − origin`.
/// The origin is the first point.
pub fn affine_lattice_basis(points: &[IntVector]) -> (IntVector, Vec<IntVector>) {
    let origin = points
        .first()
        .cloned()
        .expect("affine_lattice_basis needs at least one point");
    let diffs: Vec<IntVector> = points[1..].iter().map(|p| p - &origin).collect();
    (origin, saturation(&diffs))
}

/// Solves `Σ cᵢ·basisᵢ = x` over `Q`; `None` if `x` is not in the span.
/// The basis must be linearly independent.
pub fn solve_in_span(basis: &[IntVector], x: &IntVector) -> Option<Vec<Rational>> {
    let k = basis.len();
    let d = x.dim();
    // Augmented system: d equations, k unknowns.
    let mut m: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| Rational::from(b[i].clone())).collect();
            row.push(Rational::from(x[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for c in 0..k {
        let p = (r..d).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        for i in 0..d {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=k {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if (r..d).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&i| m[i][k].clone()).collect())
}

/// Integer coordinates of `x` in `basis`, if they exist.
pub fn integer_coordinates(basis: &[IntVector], x: &IntVector) -> Option<Vec<BigInt>> {
    let c = solve_in_span(basis, x)?;
    c.iter()
        .all(|q| q.is_integer())
        .then(|| c.iter().map(|q| q.to_integer()).collect())
}

/// Inverse of a square integer matrix over `Q`.
pub fn rational_inverse(a: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Rational::from(a[(i, j)].clone())
                    } else if j - n == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in &mut m[c] {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..2 * n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Primitive normal of the hyperplane spanned by `d − 1` independent
/// vectors in `Z^d`, via signed maximal minors.
pub fn hyperplane_normal(rows: &[IntVector]) -> Option<IntVector> {
    let d = rows.first()?.dim();
    debug_assert_eq!(rows.len() + 1, d);
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<IntVector> = rows
            .iter()
            .map(|r| IntVector(r.0.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()))
            .collect();
        let det = exact_determinant(&IntMatrix::from_rows(&minor, d - 1)).ok()?;
        normal.push(if j % 2 == 0 { det } else { -det });
    }
    primitive_part(&IntVector(normal)).ok().map(|(_, w)| w)
}

/// Unimodular `U` with `U·m = e₁` for a primitive `m`.
pub fn unimodular_completion(m: &IntVector) -> Result<IntMatrix> {
    let (g, _) = primitive_part(m)?;
    if !g.is_one() {
        return Err(Error::PreconditionFailed(format!("{m} is not primitive")));
    }
    let snf = smith_normal_form(&IntMatrix::from_columns(std::slice::from_ref(m), m.dim()));
    // U·m·V = e₁ with V = (±1)
    let mut u = snf.u;
    if snf.v[(0, 0)].is_negative() {
        u.negate_row(0);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(a: &[i64]) -> IntVector {
        IntVector::from_i64s(a)
    }

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn primitive_part_examples() {
        assert_eq!(primitive_part(&iv(&[2, 4, 6])).unwrap(), (BigInt::from(2), iv(&[1, 2, 3])));
        assert_eq!(primitive_part(&iv(&[0, -3])).unwrap(), (BigInt::from(3), iv(&[0, -1])));
        assert_eq!(primitive_part(&iv(&[5, 7])).unwrap(), (BigInt::from(1), iv(&[5, 7])));
        assert_eq!(primitive_part(&iv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn snf_examples() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 6]]));

        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));

        // ray matrix of P^2
        let a = IntMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[-1, -1]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.cokernel(), (1, vec![]));
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(exact_determinant(&IntMatrix::identity(4)).unwrap(), BigInt::from(1));
        let a = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 3]]);
        assert_eq!(exact_determinant(&a).unwrap(), BigInt::from(cofactor_det(&[vec![1, 0], vec![1, 3]])));
        assert_eq!(exact_determinant(&a).unwrap(), BigInt::from(3));
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(exact_determinant(&a).unwrap(), BigInt::from(6));
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3]]);
        assert_eq!(exact_determinant(&a), Err(Error::NotSquare { rows: 1, cols: 3 }));
    }

    #[test]
    fn affine_lattice_basis_examples() {
        let (o, b) = affine_lattice_basis(&[iv(&[-1, -1]), iv(&[-1, 2])]);
        assert_eq!(o, iv(&[-1, -1]));
        assert_eq!(b, vec![iv(&[0, 1])]);

        let (o, b) = affine_lattice_basis(&[iv(&[1, 0, 0]), iv(&[1, 3, 0]), iv(&[1, 0, 3])]);
        assert_eq!(o, iv(&[1, 0, 0]));
        assert_eq!(b, vec![iv(&[0, 1, 0]), iv(&[0, 0, 1])]);

        let (_, b) = affine_lattice_basis(&[iv(&[4, 5])]);
        assert!(b.is_empty());
    }

    #[test]
    fn saturation_detects_index() {
        assert!(!is_saturated_basis(&[iv(&[2, 0])]));
        assert!(is_saturated_basis(&[iv(&[1, 1]), iv(&[1, 2])]));
        assert!(!is_saturated_basis(&[iv(&[1, 1]), iv(&[1, -1])]));
    }

    #[test]
    fn completion_sends_vector_to_unit() {
        let m = iv(&[3, 5, -2]);
        let u = unimodular_completion(&m).unwrap();
        assert_eq!(u.apply(&m), iv(&[1, 0, 0]));
        assert!(exact_determinant(&u).unwrap().abs().is_one());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-20i64..20, c), r)
        })
    }

    proptest! {
        #[test]
        fn snf_reconstructs(rows in small_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let a = IntMatrix::from_i64_rows(&refs);
            let s = smith_normal_form(&a);
            prop_assert_eq!(&(&s.u * &a) * &s.v, s.d.clone());
            prop_assert!(s.d.is_diagonal());
            prop_assert!(exact_determinant(&s.u).unwrap().abs().is_one());
            prop_assert!(exact_determinant(&s.v).unwrap().abs().is_one());
            prop_assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
            let f = s.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert!(f.iter().all(|x| x.is_positive()));
            prop_assert_eq!(f.len(), rank(&a.row_vectors()));
        }

        #[test]
        fn bareiss_matches_cofactors(rows in (1usize..5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-9i64..9, n), n))) {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let a = IntMatrix::from_i64_rows(&refs);
            prop_assert_eq!(exact_determinant(&a).unwrap(), BigInt::from(cofactor_det(&rows)));
        }

        #[test]
        fn primitive_part_idempotent(v in proptest::collection::vec(-50i64..50, 1..5)) {
            let v = IntVector::from_i64s(&v);
            prop_assume!(!v.is_zero());
            let (g, w) = primitive_part(&v).unwrap();
            prop_assert!(g.is_positive());
            prop_assert_eq!(w.scale(&g), v);
            let (g2, w2) = primitive_part(&w).unwrap();
            prop_assert!(g2.is_one());
            prop_assert_eq!(w2, w);
        }

        #[test]
        fn affine_basis_spans_differences(pts in proptest::collection::vec(proptest::collection::vec(-6i64..6, 3), 1..6)) {
            let pts: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64s(p)).collect();
            let (o, basis) = affine_lattice_basis(&pts);
            prop_assert!(is_saturated_basis(&basis));
            prop_assert_eq!(basis.len() + 1, affine_rank(&pts));
            for p in &pts {
                prop_assert!(integer_coordinates(&basis, &(p - &o)).is_some());
            }
        }
    }
}
