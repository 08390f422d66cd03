//! Dense tensors in `g⊗g` and `g⊗g⊗g`, and r-matrices with their operator views.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::GaussRat;

/// `Σ t[i][j] e_i ⊗ e_j`, stored as a square matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor2(pub Matrix);

impl Tensor2 {
    pub fn zeros(dim: usize) -> Self {
        Tensor2(Matrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.0[(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `r^21`.
    pub fn transpose21(&self) -> Tensor2 {
        Tensor2(self.0.transpose())
    }

    /// `(a ⊗ b) t`.
    pub fn apply(&self, a: &Matrix, b: &Matrix) -> Tensor2 {
        Tensor2(&(a * &self.0) * &b.transpose())
    }

    pub fn add(&self, o: &Tensor2) -> Tensor2 {
        Tensor2(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Tensor2) -> Tensor2 {
        Tensor2(&self.0 - &o.0)
    }

    pub fn scale(&self, c: &GaussRat) -> Tensor2 {
        Tensor2(self.0.scale(c))
    }

    /// `(ξ ⊗ η)(t)`.
    pub fn pair(&self, xi: &[GaussRat], eta: &[GaussRat]) -> GaussRat {
        crate::linalg::dot(xi, &self.0.apply(eta))
    }
}

/// Operator `r_+: g* -> g`, `r_+(ξ) = r(ξ, ·)`. Column `i` is `r_+(e_i*)`.
pub fn operator_of(t: &Tensor2) -> Matrix {
    t.0.transpose()
}

/// Inverse of [`operator_of`]: `r = Σ_i e_i ⊗ op(e_i*)`.
pub fn tensor_of(op: &Matrix) -> Tensor2 {
    Tensor2(op.transpose())
}

/// `Σ t[i][j][k] e_i ⊗ e_j ⊗ e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<GaussRat>,
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3(dim {}) {{", self.dim)?;
        for (i, j, k, v) in self.nonzeros() {
            write!(f, " [{},{},{}]={}", i, j, k, v)?;
        }
        write!(f, " }}")
    }
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 { dim, data: vec![GaussRat::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &GaussRat {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn get_mut(&mut self, i: usize, j: usize, k: usize) -> &mut GaussRat {
        &mut self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nonzeros(&self) -> Vec<(usize, usize, usize, GaussRat)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Permutes legs: `out[p(i,j,k)] = self[i][j][k]` where `perm[a]` is the output slot of leg `a`.
    pub fn permute(&self, perm: [usize; 3]) -> Tensor3 {
        let n = self.dim;
        let mut out = Tensor3::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut idx = [0; 3];
                    idx[perm[0]] = i;
                    idx[perm[1]] = j;
                    idx[perm[2]] = k;
                    *out.get_mut(idx[0], idx[1], idx[2]) = self.get(i, j, k).clone();
                }
            }
        }
        out
    }

    pub fn neg(&self) -> Tensor3 {
        Tensor3 { dim: self.dim, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// An element `r ∈ g ⊗ g` together with its algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix {
    pub algebra: LieAlgebra,
    pub tensor: Tensor2,
}

impl RMatrix {
    pub fn new(algebra: LieAlgebra, tensor: Tensor2) -> Result<Self> {
        if tensor.dim() != algebra.dim() {
            return Err(Error::Dimension("r-matrix vs algebra".into()));
        }
        Ok(RMatrix { algebra, tensor })
    }

    pub fn from_operator(algebra: LieAlgebra, r_plus: &Matrix) -> Result<Self> {
        RMatrix::new(algebra, tensor_of(r_plus))
    }

    pub fn r_plus(&self) -> Matrix {
        operator_of(&self.tensor)
    }

    /// `r_- = -r_+^*`.
    pub fn r_minus(&self) -> Matrix {
        -&self.r_plus().transpose()
    }

    /// `I = r_+ - r_-`, the operator of `r + r^21`.
    pub fn symmetric_operator(&self) -> Matrix {
        &self.r_plus() - &self.r_minus()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn transpose_elementary() {
        let mut t = Tensor2::zeros(2);
        t.0[(0, 1)] = qi(1);
        let mut s = Tensor2::zeros(2);
        s.0[(1, 0)] = qi(1);
        assert_eq!(t.transpose21(), s);
    }

    #[test]
    fn operator_roundtrip() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(operator_of(&tensor_of(&m)), m);
    }
}
