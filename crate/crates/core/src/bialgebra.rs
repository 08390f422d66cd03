//! Coboundary Lie bialgebra calculus: CYBE, cobracket, dual bracket, reflection equation, coideals.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{annihilator, kernel, unit_vec, vsub, Matrix, Subspace, Vector};
use crate::scalar::GaussRat;
use crate::tensor::{tensor_of, RMatrix, Tensor2, Tensor3};

/// `[x, t]` for `t ∈ g⊗g`, i.e. `(ad_x ⊗ 1 + 1 ⊗ ad_x) t`.
pub fn adjoint_act2(l: &LieAlgebra, x: &[GaussRat], t: &Tensor2) -> Tensor2 {
    let ad = l.ad(x);
    Tensor2(&(&ad * &t.0) + &(&t.0 * &ad.transpose()))
}

/// `[x, t]` for `t ∈ g⊗g⊗g` by the Leibniz rule on each leg.
pub fn adjoint_act3(l: &LieAlgebra, x: &[GaussRat], t: &Tensor3) -> Tensor3 {
    let n = l.dim();
    let ad = l.ad(x);
    let mut out = Tensor3::zeros(n);
    for (i, j, k, v) in t.nonzeros() {
        for m in 0..n {
            for (slot, src) in [(0, i), (1, j), (2, k)] {
                let a = &ad[(m, src)];
                if a.is_zero() {
                    continue;
                }
                let idx = match slot {
                    0 => (m, j, k),
                    1 => (i, m, k),
                    _ => (i, j, m),
                };
                *out.get_mut(idx.0, idx.1, idx.2) += a * &v;
            }
        }
    }
    out
}

/// `[r,r] = [r12,r13] + [r13,r23] + [r12,r23]`.
pub fn cybe_bracket(l: &LieAlgebra, r: &RMatrix) -> Tensor3 {
    let n = l.dim();
    let t = &r.tensor.0;
    let mut rows: Vec<Vec<(usize, GaussRat)>> = vec![Vec::new(); n];
    let mut cols: Vec<Vec<(usize, GaussRat)>> = vec![Vec::new(); n];
    for (a, b, v) in t.nonzeros() {
        rows[a].push((b, v.clone()));
        cols[b].push((a, v));
    }
    let mut out = Tensor3::zeros(n);
    for p in 0..n {
        for q in 0..n {
            let br = l.basis_bracket(p, q);
            if br.is_empty() {
                continue;
            }
            // [r12,r13]: [a_p, a_q] ⊗ b ⊗ b'
            for (b, x) in &rows[p] {
                for (d, y) in &rows[q] {
                    let xy = x * y;
                    for (k, c) in br {
                        *out.get_mut(*k, *b, *d) += &xy * c;
                    }
                }
            }
            // [r13,r23]: a ⊗ a' ⊗ [b_p, b_q]
            for (a, x) in &cols[p] {
                for (c2, y) in &cols[q] {
                    let xy = x * y;
                    for (k, c) in br {
                        *out.get_mut(*a, *c2, *k) += &xy * c;
                    }
                }
            }
            // [r12,r23]: a ⊗ [b_p, a'_q] ⊗ b'
            for (a, x) in &cols[p] {
                for (d, y) in &rows[q] {
                    let xy = x * y;
                    for (k, c) in br {
                        *out.get_mut(*a, *k, *d) += &xy * c;
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BialgebraKind {
    Triangular,
    Factorizable,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    /// `I = r_+ - r_-`.
    pub i_op: Matrix,
    /// Basis indices where `I ∘ ad*_{e_i} != ad_{e_i} ∘ I`.
    pub violations: Vec<usize>,
    pub kind: BialgebraKind,
}

impl InvarianceReport {
    pub fn invariant(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn symmetric_invariance(l: &LieAlgebra, r: &RMatrix) -> InvarianceReport {
    let i_op = r.symmetric_operator();
    let violations = (0..l.dim())
        .filter(|&i| {
            let e = unit_vec(l.dim(), i);
            &i_op * &l.coad(&e) != &l.ad(&e) * &i_op
        })
        .collect();
    let kind = if i_op.is_zero() {
        BialgebraKind::Triangular
    } else if i_op.inverse().is_ok() {
        BialgebraKind::Factorizable
    } else {
        BialgebraKind::Neither
    };
    InvarianceReport { i_op, violations, kind }
}

/// True when `[r,r]` vanishes and `r + r^21` is ad-invariant, the coboundary conditions used here.
pub fn is_quasitriangular(l: &LieAlgebra, r: &RMatrix) -> bool {
    symmetric_invariance(l, r).invariant() && cybe_bracket(l, r).is_zero()
}

/// `δ(x) = [x, r]`.
pub fn cobracket(l: &LieAlgebra, r: &RMatrix, x: &[GaussRat]) -> Tensor2 {
    adjoint_act2(l, x, &r.tensor)
}

/// `[ξ,η] = ad*_{r_+ ξ} η - ad*_{r_- η} ξ`.
pub fn dual_bracket(l: &LieAlgebra, r: &RMatrix, xi: &[GaussRat], eta: &[GaussRat]) -> Vector {
    let a = l.coad(&r.r_plus().apply(xi)).apply(eta);
    let b = l.coad(&r.r_minus().apply(eta)).apply(xi);
    vsub(&a, &b)
}

/// The dual bracket read off the cobracket: `<[ξ,η], e_k> = (ξ⊗η)(δ(e_k))`.
pub fn dual_bracket_via_cobracket(l: &LieAlgebra, r: &RMatrix, xi: &[GaussRat], eta: &[GaussRat]) -> Vector {
    (0..l.dim()).map(|k| cobracket(l, r, &unit_vec(l.dim(), k)).pair(xi, eta)).collect()
}

/// Structure constants of `g*_r` on the dual basis.
pub fn dual_algebra(l: &LieAlgebra, r: &RMatrix) -> LieAlgebra {
    if !is_quasitriangular(l, r) {
        log::warn!("dual bracket of an r-matrix that fails the coboundary conditions");
    }
    let n = l.dim();
    LieAlgebra::from_fn(n, |i, j| dual_bracket(l, r, &unit_vec(n, i), &unit_vec(n, j))).expect("sized")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreResidual {
    /// `(τ⊗τ)r + r - (τ⊗1 + 1⊗τ)r`.
    pub tensor: Tensor2,
    /// `(τ-1) r_+ (τ^T-1)`.
    pub operator: Matrix,
}

impl CreResidual {
    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero() && self.operator.is_zero()
    }

    pub fn forms_agree(&self) -> bool {
        tensor_of(&self.operator) == self.tensor
    }
}

pub fn cre_residual(l: &LieAlgebra, r: &RMatrix, tau: &Matrix) -> Result<CreResidual> {
    if !l.is_automorphism(tau) {
        return Err(Error::NotAutomorphism);
    }
    let one = Matrix::identity(l.dim());
    let t = &r.tensor;
    let tensor = t.apply(tau, tau).add(t).sub(&t.apply(tau, &one)).sub(&t.apply(&one, tau));
    let tm = tau - &one;
    let operator = &(&tm * &r.r_plus()) * &tm.transpose();
    Ok(CreResidual { tensor, operator })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedInvarianceReport {
    /// `K = (τ-1) r_+ (τ*-1)`.
    pub k: Matrix,
    /// `(index into h's basis, ad_x K - K ad*_x)` for every failing basis vector.
    pub residuals: Vec<(usize, Matrix)>,
}

impl FixedInvarianceReport {
    pub fn passes(&self) -> bool {
        self.residuals.is_empty()
    }
}

/// Invariance of the reflection residual under the fixed-point subalgebra `h = ker(τ-1)`.
pub fn fixed_point_invariance(l: &LieAlgebra, r: &RMatrix, tau: &Matrix, h: &Subspace) -> Result<FixedInvarianceReport> {
    let n = l.dim();
    if !l.is_automorphism(tau) {
        return Err(Error::NotAutomorphism);
    }
    if kernel(&(tau - &Matrix::identity(n))) != *h {
        return Err(Error::NotFixedSpace);
    }
    let tm = tau - &Matrix::identity(n);
    let k = &(&tm * &r.r_plus()) * &tm.transpose();
    let residuals = h
        .basis()
        .iter()
        .enumerate()
        .filter_map(|(idx, x)| {
            let res = &(&l.ad(x) * &k) - &(&k * &l.coad(x));
            (!res.is_zero()).then_some((idx, res))
        })
        .collect();
    Ok(FixedInvarianceReport { k, residuals })
}

/// Coideal test through closure of `h^⊥` under the dual bracket.
pub fn is_coideal(l: &LieAlgebra, r: &RMatrix, h: &Subspace) -> bool {
    let perp = annihilator(h);
    let basis = perp.basis();
    for (a, xi) in basis.iter().enumerate() {
        for eta in &basis[a + 1..] {
            if !perp.contains(&dual_bracket(l, r, xi, eta)) {
                return false;
            }
        }
    }
    true
}

/// Coideal test through `δ(h) ⊂ g⊗h + h⊗g`: `δ(x)` must vanish on `h^⊥ ⊗ h^⊥`.
pub fn is_coideal_by_containment(l: &LieAlgebra, r: &RMatrix, h: &Subspace) -> bool {
    let perp = annihilator(h);
    h.basis().iter().all(|x| {
        let d = cobracket(l, r, x);
        perp.basis().iter().all(|xi| perp.basis().iter().all(|eta| d.pair(xi, eta).is_zero()))
    })
}

/// `ad_x` acting on `g*`-valued data is `coad`; this returns `ad*_x ξ`.
pub fn coad_act(l: &LieAlgebra, x: &[GaussRat], xi: &[GaussRat]) -> Vector {
    l.coad(x).apply(xi)
}

/// Whether the whole `g⊗g` tensor is invariant: `[e_i, t] = 0` for all `i`.
pub fn is_invariant_tensor(l: &LieAlgebra, t: &Tensor2) -> bool {
    (0..l.dim()).all(|i| adjoint_act2(l, &unit_vec(l.dim(), i), t).is_zero())
}
