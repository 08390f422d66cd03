//! Dense exact linear algebra over Q(i).
//!
//! Matrices act on column vectors: column `j` of a linear map holds the image of basis vector `j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussRat;

pub type Vector = Vec<GaussRat>;

pub fn zero_vec(n: usize) -> Vector {
    vec![GaussRat::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = GaussRat::one();
    v
}

pub fn is_zero_vec(v: &[GaussRat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[GaussRat], b: &[GaussRat]) -> GaussRat {
    let mut s = GaussRat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn vadd(a: &[GaussRat], b: &[GaussRat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[GaussRat], b: &[GaussRat]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &GaussRat, a: &[GaussRat]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * a`, skipping zero work.
pub fn axpy(acc: &mut [GaussRat], c: &GaussRat, a: &[GaussRat]) {
    if c.is_zero() {
        return;
    }
    for (s, x) in acc.iter_mut().zip(a) {
        if !x.is_zero() {
            *s += c * x;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussRat::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &GaussRat) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vector]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension("column length".into()));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> GaussRat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect()).collect();
        Matrix::from_rows(v).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[GaussRat] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &GaussRat) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn apply(&self, v: &[GaussRat]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Matrix) -> Matrix {
        &(self * o) - &(o * self)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                GaussRat::one()
            } else {
                GaussRat::zero()
            }
        });
        let (r, _) = rref(&aug);
        for i in 0..n {
            if r[(i, i)] != GaussRat::one() {
                return Err(Error::Singular);
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// Block diagonal sum.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn nonzeros(&self) -> Vec<(usize, usize, GaussRat)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    out.push((i, j, self[(i, j)].clone()));
                }
            }
        }
        out
    }

    pub fn to_complex(&self) -> Vec<Vec<num_complex::Complex64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(GaussRat::to_complex64).collect()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussRat;
    fn index(&self, (i, j): (usize, usize)) -> &GaussRat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussRat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product dimensions")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum dimensions");
        Matrix { rows: self.rows, cols: self.cols, data: vadd(&self.data, &o.data) }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference dimensions");
        Matrix { rows: self.rows, cols: self.cols, data: vsub(&self.data, &o.data) }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        let pivot_row: Vector = a.row(r).to_vec();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    let d = &f * &pivot_row[j];
                    a[(i, j)] -= d;
                }
            }
        }
        r += 1;
    }
    (a, r)
}

fn pivots(r: &Matrix, rank: usize) -> Vec<usize> {
    (0..rank).map(|i| (0..r.cols).find(|&j| !r[(i, j)].is_zero()).expect("pivot")).collect()
}

/// One solution of `m x = rhs`, or `None` if inconsistent.
pub fn solve(m: &Matrix, rhs: &[GaussRat]) -> Option<Vector> {
    if rhs.len() != m.rows {
        return None;
    }
    let aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m[(i, j)].clone()
        } else {
            rhs[i].clone()
        }
    });
    let (r, rank) = rref(&aug);
    let piv = pivots(&r, rank);
    if piv.last() == Some(&m.cols) {
        return None;
    }
    let mut x = zero_vec(m.cols);
    for (i, &p) in piv.iter().enumerate() {
        x[p] = r[(i, m.cols)].clone();
    }
    Some(x)
}

/// A linear subspace of `Q(i)^n`, stored as an RREF basis so that equality is basis equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, &Matrix::identity(ambient).row_vecs())
    }

    pub fn span(ambient: usize, vecs: &[Vector]) -> Self {
        if vecs.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vecs.to_vec()).expect("equal-length vectors");
        assert_eq!(m.cols, ambient, "vector length vs ambient dimension");
        let (r, rank) = rref(&m);
        Subspace { ambient, basis: (0..rank).map(|i| r.row(i).to_vec()).collect() }
    }

    /// Span of the given coordinate axes.
    pub fn coordinate(ambient: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let v: Vec<Vector> = idx.into_iter().map(|i| unit_vec(ambient, i)).collect();
        Subspace::span(ambient, &v)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[GaussRat]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::span(self.ambient, &vs).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && self.basis.iter().all(|v| o.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check_same(o)?;
        let mut vs = self.basis.clone();
        vs.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &vs))
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check_same(o)?;
        Ok(annihilator(&annihilator(self).sum(&annihilator(o))?))
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols != self.ambient {
            return Err(Error::Dimension("map domain vs subspace ambient".into()));
        }
        let vs: Vec<Vector> = self.basis.iter().map(|v| m.apply(v)).collect();
        Ok(Subspace::span(m.rows, &vs))
    }

    /// Direct sum `self ⊕ o` inside the concatenated ambient space.
    pub fn direct_sum(&self, o: &Subspace) -> Subspace {
        let n = self.ambient + o.ambient;
        let mut vs = Vec::new();
        for v in &self.basis {
            let mut w = v.clone();
            w.extend(zero_vec(o.ambient));
            vs.push(w);
        }
        for v in &o.basis {
            let mut w = zero_vec(self.ambient);
            w.extend(v.iter().cloned());
            vs.push(w);
        }
        Subspace::span(n, &vs)
    }

    fn check_same(&self, o: &Subspace) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::Dimension(format!("ambient {} vs {}", self.ambient, o.ambient)));
        }
        Ok(())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

pub fn kernel(m: &Matrix) -> Subspace {
    let (r, rank) = rref(m);
    let piv = pivots(&r, rank);
    let mut vs = Vec::new();
    for free in (0..m.cols).filter(|j| !piv.contains(j)) {
        let mut v = zero_vec(m.cols);
        v[free] = GaussRat::one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = -&r[(i, free)];
        }
        vs.push(v);
    }
    Subspace::span(m.cols, &vs)
}

pub fn image(m: &Matrix) -> Subspace {
    let cols: Vec<Vector> = (0..m.cols).map(|j| m.col(j)).collect();
    Subspace::span(m.rows, &cols)
}

/// `a^⊥` in the dual space, using the bilinear pairing of coordinates.
pub fn annihilator(a: &Subspace) -> Subspace {
    if a.dim() == 0 {
        return Subspace::full(a.ambient);
    }
    kernel(&Matrix::from_rows(a.basis.clone()).expect("basis rows"))
}

/// `{x | S(x,u) = 0 for all u in a}` for the Gram matrix `form`.
pub fn s_orthogonal(a: &Subspace, form: &Matrix) -> Result<Subspace> {
    if form.rows != a.ambient || form.cols != a.ambient {
        return Err(Error::Dimension("form vs subspace ambient".into()));
    }
    let vs: Vec<Vector> = a.basis.iter().map(|u| form.apply(u)).collect();
    Ok(annihilator(&Subspace::span(a.ambient, &vs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn rref_complex_example() {
        let i = GaussRat::i();
        let m = Matrix::from_rows(vec![vec![qi(1), i.clone()], vec![i.clone(), qi(-1)]]).unwrap();
        let (r, rank) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(r, Matrix::from_rows(vec![vec![qi(1), i], vec![qi(0), qi(0)]]).unwrap());
    }

    #[test]
    fn trivial_kernels() {
        assert_eq!(kernel(&Matrix::identity(3)).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(3, 3)), Subspace::full(3));
        let tau = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(kernel(&(&tau - &Matrix::identity(2))), Subspace::coordinate(2, [0]));
    }

    #[test]
    fn annihilator_of_axis() {
        assert_eq!(annihilator(&Subspace::coordinate(2, [0])), Subspace::coordinate(2, [1]));
    }

    #[test]
    fn solve_cases() {
        let rhs = vec![qi(1), q(2, 3)];
        assert_eq!(solve(&Matrix::identity(2), &rhs), Some(rhs.clone()));
        assert_eq!(solve(&Matrix::zeros(2, 2), &rhs), None);
        let gram = Matrix::from_i64(&[&[8, 0, 0], &[0, 0, 4], &[0, 4, 0]]);
        assert_eq!(solve(&gram, &[qi(1), qi(0), qi(0)]), Some(vec![q(1, 8), qi(0), qi(0)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(&m * &m.inverse().unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }
}
