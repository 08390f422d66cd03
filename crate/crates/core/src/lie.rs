//! Lie algebras given by structure constants, their representations and bilinear forms.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::scalar::GaussRat;

/// Lie algebra on `Q(i)^dim` with `c[i][j][k]` the coefficient of `e_k` in `[e_i, e_j]`.
///
/// Cheap to clone; the constants are shared.
#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    c: Arc<Vec<GaussRat>>,
    sparse: Arc<Vec<Vec<(usize, GaussRat)>>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.c == o.c
    }
}

impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}) {{", self.dim)?;
        for (i, j, k, v) in self.nonzero_constants() {
            write!(f, " c[{}][{}][{}]={}", i, j, k, v)?;
        }
        write!(f, " }}")
    }
}

impl LieAlgebra {
    /// From a dense array of length `dim^3`, indexed `(i*dim + j)*dim + k`. Not validated.
    pub fn from_dense(dim: usize, c: Vec<GaussRat>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::Dimension(format!("{} structure constants for dim {}", c.len(), dim)));
        }
        let mut sparse = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = &c[(i * dim + j) * dim + k];
                    if !v.is_zero() {
                        sparse[i * dim + j].push((k, v.clone()));
                    }
                }
            }
        }
        Ok(LieAlgebra { dim, c: Arc::new(c), sparse: Arc::new(sparse) })
    }

    /// From `[e_i, e_j] = v` entries; the antisymmetric partner is filled in.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut c = vec![GaussRat::zero(); dim * dim * dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::Dimension("bracket entry out of range".into()));
            }
            for (k, x) in v.iter().enumerate() {
                c[(i * dim + j) * dim + k] = x.clone();
                c[(j * dim + i) * dim + k] = -x;
            }
        }
        LieAlgebra::from_dense(dim, c)
    }

    /// Structure constants computed from a bilinear bracket on coordinate vectors.
    pub fn from_fn(dim: usize, bracket: impl Fn(usize, usize) -> Vector) -> Result<Self> {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = bracket(i, j);
                if v.len() != dim {
                    return Err(Error::Dimension("bracket value length".into()));
                }
                c.extend(v);
            }
        }
        LieAlgebra::from_dense(dim, c)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::from_dense(dim, vec![GaussRat::zero(); dim * dim * dim]).expect("sized")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &GaussRat {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn dense(&self) -> &[GaussRat] {
        &self.c
    }

    /// Nonzero terms of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, GaussRat)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn basis_bracket_vec(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vec(self.dim);
        for (k, x) in self.basis_bracket(i, j) {
            v[*k] = x.clone();
        }
        v
    }

    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, GaussRat)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, v) in self.basis_bracket(i, j) {
                    out.push((i, j, *k, v.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.sparse.iter().all(Vec::is_empty)
    }

    pub fn bracket(&self, x: &[GaussRat], y: &[GaussRat]) -> Vector {
        let n = self.dim;
        let mut out = zero_vec(n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || self.sparse[i * n + j].is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, v) in &self.sparse[i * n + j] {
                    out[*k] += &ab * v;
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`.
    pub fn ad(&self, x: &[GaussRat]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, v) in self.basis_bracket(i, j) {
                    m[(*k, j)] += a * v;
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vec(self.dim, i))
    }

    /// Matrix of the coadjoint action `ad*_x = -(ad_x)^T` on the dual basis.
    pub fn coad(&self, x: &[GaussRat]) -> Matrix {
        -&self.ad(x).transpose()
    }

    /// Lists violated antisymmetry entries `(i,j,k)` and Jacobi entries `(i,j,k,l)`.
    pub fn validate(&self) -> LieReport {
        let n = self.dim;
        let mut rep = LieReport::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !(self.c(i, j, k) + self.c(j, i, k)).is_zero() {
                        rep.antisymmetry.push((i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = zero_vec(n);
                    for (a, b, cc) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, v) in self.basis_bracket(a, b) {
                            for (l, w) in self.basis_bracket(*m, cc) {
                                s[*l] += v * w;
                            }
                        }
                    }
                    for (l, x) in s.iter().enumerate() {
                        if !x.is_zero() {
                            rep.jacobi.push((i, j, k, l));
                        }
                    }
                }
            }
        }
        rep
    }

    pub fn is_subalgebra(&self, h: &Subspace) -> bool {
        self.closure_violation(h, h).is_none()
    }

    pub fn is_ideal(&self, h: &Subspace) -> bool {
        self.closure_violation(&Subspace::full(self.dim), h).is_none()
    }

    /// First pair `(a, b)` of basis vectors of `a_space` and `h` whose bracket leaves `h`.
    pub fn closure_violation(&self, a_space: &Subspace, h: &Subspace) -> Option<(Vector, Vector, Vector)> {
        for a in a_space.basis() {
            for b in h.basis() {
                let v = self.bracket(a, b);
                if !h.contains(&v) {
                    return Some((a.clone(), b.clone(), v));
                }
            }
        }
        None
    }

    /// `f([x,y]) - [f x, f y]` over basis pairs, for `f: self -> target`.
    pub fn homomorphism_defect(&self, target: &LieAlgebra, f: &Matrix) -> Result<Vec<(usize, usize, Vector)>> {
        if f.cols() != self.dim || f.rows() != target.dim {
            return Err(Error::Dimension("homomorphism shape".into()));
        }
        let mut out = Vec::new();
        let cols: Vec<Vector> = (0..self.dim).map(|j| f.col(j)).collect();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let lhs = f.apply(&self.basis_bracket_vec(i, j));
                let rhs = target.bracket(&cols[i], &cols[j]);
                let d: Vector = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                if !is_zero_vec(&d) {
                    out.push((i, j, d));
                }
            }
        }
        Ok(out)
    }

    pub fn is_isomorphism(&self, target: &LieAlgebra, f: &Matrix) -> bool {
        f.is_square() && f.inverse().is_ok() && matches!(self.homomorphism_defect(target, f), Ok(d) if d.is_empty())
    }

    pub fn is_automorphism(&self, tau: &Matrix) -> bool {
        self.is_isomorphism(self, tau)
    }

    /// Structure constants pushed through an invertible change of coordinates `p` (new = p * old).
    pub fn transport(&self, p: &Matrix) -> Result<LieAlgebra> {
        let pinv = p.inverse()?;
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| pinv.col(j)).collect();
        LieAlgebra::from_fn(n, |i, j| p.apply(&self.bracket(&cols[i], &cols[j])))
    }

    /// Adjoint representation.
    pub fn adjoint(&self) -> Representation {
        Representation::new(self.clone(), self.dim, (0..self.dim).map(|i| self.ad_basis(i)).collect())
            .expect("adjoint shape")
    }

    /// Opposite algebra, bracket `-[x,y]`.
    pub fn opposite(&self) -> LieAlgebra {
        LieAlgebra::from_dense(self.dim, self.c.iter().map(|x| -x).collect()).expect("sized")
    }

    pub fn scaled(&self, s: &GaussRat) -> LieAlgebra {
        LieAlgebra::from_dense(self.dim, self.c.iter().map(|x| s * x).collect()).expect("sized")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LieReport {
    pub antisymmetry: Vec<(usize, usize, usize)>,
    pub jacobi: Vec<(usize, usize, usize, usize)>,
}

impl LieReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

/// Representation `rho: g -> End(V)` with `mats[i] = rho(e_i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: LieAlgebra,
    space_dim: usize,
    mats: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation(dim {} on {}) {:?}", self.algebra.dim, self.space_dim, self.mats)
    }
}

impl Representation {
    pub fn new(algebra: LieAlgebra, space_dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        if mats.len() != algebra.dim {
            return Err(Error::Dimension(format!("{} matrices for algebra of dim {}", mats.len(), algebra.dim)));
        }
        if mats.iter().any(|m| m.rows() != space_dim || m.cols() != space_dim) {
            return Err(Error::Dimension("representation matrix shape".into()));
        }
        Ok(Representation { algebra, space_dim, mats })
    }

    pub fn zero(algebra: LieAlgebra, space_dim: usize) -> Self {
        let mats = vec![Matrix::zeros(space_dim, space_dim); algebra.dim];
        Representation { algebra, space_dim, mats }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn of(&self, x: &[GaussRat]) -> Matrix {
        let mut m = Matrix::zeros(self.space_dim, self.space_dim);
        for (i, a) in x.iter().enumerate() {
            if !a.is_zero() {
                m = &m + &self.mats[i].scale(a);
            }
        }
        m
    }

    pub fn act(&self, x: &[GaussRat], v: &[GaussRat]) -> Vector {
        let mut out = zero_vec(self.space_dim);
        for (i, a) in x.iter().enumerate() {
            if !a.is_zero() {
                axpy(&mut out, a, &self.mats[i].apply(v));
            }
        }
        out
    }

    /// Basis pairs `(i, j)` where `rho([e_i,e_j]) != [rho(e_i), rho(e_j)]`.
    pub fn validate(&self) -> Vec<(usize, usize)> {
        let n = self.algebra.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.of(&self.algebra.basis_bracket_vec(i, j));
                if lhs != self.mats[i].commutator(&self.mats[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Triples `(i, a, b)` violating `rho(e_i)[u_a,u_b] = [rho(e_i)u_a, u_b] + [u_a, rho(e_i)u_b]`.
    pub fn derivation_violations(&self, k: &LieAlgebra) -> Result<Vec<(usize, usize, usize)>> {
        if k.dim != self.space_dim {
            return Err(Error::Dimension("derivation target dimension".into()));
        }
        let m = k.dim;
        let mut out = Vec::new();
        for (i, r) in self.mats.iter().enumerate() {
            for a in 0..m {
                for b in 0..m {
                    let lhs = r.apply(&k.basis_bracket_vec(a, b));
                    let u = unit_vec(m, a);
                    let v = unit_vec(m, b);
                    let mut rhs = k.bracket(&r.col(a), &v);
                    let t = k.bracket(&u, &r.col(b));
                    axpy(&mut rhs, &GaussRat::from_int(1), &t);
                    if lhs != rhs {
                        out.push((i, a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Dual representation `rho*(x) = -rho(x)^T` on `V*`.
    pub fn dual(&self) -> Representation {
        Representation {
            algebra: self.algebra.clone(),
            space_dim: self.space_dim,
            mats: self.mats.iter().map(|m| -&m.transpose()).collect(),
        }
    }

    /// Same matrices viewed over another algebra of the same dimension.
    pub fn reinterpret(&self, algebra: LieAlgebra) -> Result<Representation> {
        Representation::new(algebra, self.space_dim, self.mats.clone())
    }
}

/// Coadjoint representation `ad*` of `L` on `L*`.
pub fn coadjoint(l: &LieAlgebra) -> Representation {
    l.adjoint().dual()
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (n, m) = (a.dim, b.dim);
    LieAlgebra::from_fn(n + m, |i, j| {
        let mut v = zero_vec(n + m);
        if i < n && j < n {
            for (k, x) in a.basis_bracket(i, j) {
                v[*k] = x.clone();
            }
        } else if i >= n && j >= n {
            for (k, x) in b.basis_bracket(i - n, j - n) {
                v[n + k] = x.clone();
            }
        }
        v
    })
    .expect("sized")
}

/// `L ⋉_rho V` with `V` abelian; basis order `(L, V)`.
pub fn semidirect(rho: &Representation) -> LieAlgebra {
    semidirect_with(rho, &LieAlgebra::abelian(rho.space_dim)).expect("abelian module")
}

/// `L ⋉_rho K` where `rho` acts on the Lie algebra `K` by derivations; basis order `(L, K)`.
pub fn semidirect_with(rho: &Representation, k: &LieAlgebra) -> Result<LieAlgebra> {
    if k.dim != rho.space_dim {
        return Err(Error::Dimension("semidirect module dimension".into()));
    }
    let l = &rho.algebra;
    let (n, m) = (l.dim, k.dim);
    LieAlgebra::from_fn(n + m, |i, j| {
        let mut v = zero_vec(n + m);
        match (i < n, j < n) {
            (true, true) => {
                for (c, x) in l.basis_bracket(i, j) {
                    v[*c] = x.clone();
                }
            }
            (true, false) => {
                for a in 0..m {
                    v[n + a] = rho.mats[i][(a, j - n)].clone();
                }
            }
            (false, true) => {
                for a in 0..m {
                    v[n + a] = -&rho.mats[j][(a, i - n)];
                }
            }
            (false, false) => {
                for (c, x) in k.basis_bracket(i - n, j - n) {
                    v[n + c] = x.clone();
                }
            }
        }
        v
    })
}

/// Symmetric bilinear form data: `gram[(i,j)] = S(e_i, e_j)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    pub algebra: LieAlgebra,
    pub gram: Matrix,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormReport {
    pub asymmetric: Vec<(usize, usize)>,
    pub degenerate: bool,
    /// `(i, j, k)` with `S([e_i,e_j],e_k) + S(e_j,[e_i,e_k]) != 0`.
    pub non_invariant: Vec<(usize, usize, usize)>,
}

impl FormReport {
    pub fn symmetric(&self) -> bool {
        self.asymmetric.is_empty()
    }
    pub fn nondegenerate(&self) -> bool {
        !self.degenerate
    }
    pub fn invariant(&self) -> bool {
        self.non_invariant.is_empty()
    }
    pub fn all_hold(&self) -> bool {
        self.symmetric() && self.nondegenerate() && self.invariant()
    }
}

impl BilinearForm {
    pub fn new(algebra: LieAlgebra, gram: Matrix) -> Result<Self> {
        if gram.rows() != algebra.dim || gram.cols() != algebra.dim {
            return Err(Error::Dimension("Gram matrix shape".into()));
        }
        Ok(BilinearForm { algebra, gram })
    }

    pub fn eval(&self, x: &[GaussRat], y: &[GaussRat]) -> GaussRat {
        crate::linalg::dot(x, &self.gram.apply(y))
    }

    pub fn checks(&self) -> FormReport {
        let n = self.algebra.dim;
        let g = &self.gram;
        let mut rep = FormReport::default();
        for i in 0..n {
            for j in 0..n {
                if g[(i, j)] != g[(j, i)] {
                    rep.asymmetric.push((i, j));
                }
            }
        }
        rep.degenerate = g.rank() < n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = self.eval(&self.algebra.basis_bracket_vec(i, j), &unit_vec(n, k));
                    let b = self.eval(&unit_vec(n, j), &self.algebra.basis_bracket_vec(i, k));
                    if !(a + b).is_zero() {
                        rep.non_invariant.push((i, j, k));
                    }
                }
            }
        }
        rep
    }

    /// `I_S: g* -> g`, defined by `<I_S^{-1} x, y> = S(x, y)`.
    pub fn i_s(&self) -> Result<Matrix> {
        self.i_s_inv()?.inverse().map_err(|_| Error::DegenerateForm)
    }

    /// `I_S^{-1}: g -> g*`; its matrix is the transposed Gram matrix.
    pub fn i_s_inv(&self) -> Result<Matrix> {
        if self.gram.rank() < self.algebra.dim {
            return Err(Error::DegenerateForm);
        }
        Ok(self.gram.transpose())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qi;

    #[test]
    fn antisymmetry_counterexample() {
        let mut c = vec![GaussRat::zero(); 27];
        c[(3 + 2) * 3 + 1] = qi(1);
        c[(2 * 3 + 1) * 3 + 1] = qi(1);
        let l = LieAlgebra::from_dense(3, c).unwrap();
        let r = l.validate();
        assert!(r.antisymmetry.contains(&(1, 2, 1)));
    }

    #[test]
    fn abelian_is_valid() {
        assert!(LieAlgebra::abelian(4).validate().is_valid());
        assert!(direct_sum(&LieAlgebra::abelian(1), &LieAlgebra::abelian(2)).is_abelian());
    }
}
