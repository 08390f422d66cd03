//! Relative Rota-Baxter operators of weight 0 and of nonzero weight, with the pre-Lie and post-Lie
//! algebras that produce them.

use num_traits::{One, Zero};

use crate::bialgebra::{cre_residual, dual_algebra, is_coideal, CreResidual};
use crate::error::{Error, Result};
use crate::lie::{semidirect, semidirect_with, LieAlgebra, Representation};
use crate::linalg::{annihilator, image, kernel, unit_vec, vadd, vscale, vsub, zero_vec, Matrix, Subspace, Vector};
use crate::rotabaxter::{r_semidirect, rb_reflection_residuals, RBStructure};
use crate::scalar::GaussRat;
use crate::tensor::{RMatrix, Tensor2};

/// Permutation matrix sending slot `i` to slot `perm[i]`.
fn permutation(perm: &[usize]) -> Matrix {
    let mut p = Matrix::zeros(perm.len(), perm.len());
    for (i, &j) in perm.iter().enumerate() {
        p[(j, i)] = GaussRat::one();
    }
    p
}

/// Weight-0 relative Rota-Baxter operator `T: V -> g` with respect to `rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelRB0 {
    pub g: LieAlgebra,
    pub rho: Representation,
    pub t: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelReflectionResiduals {
    /// Pairs `(x index, v index, residual)` of the module compatibility condition.
    pub module: Vec<(usize, usize, Vector)>,
    /// `σTτ - T + σT - Tτ`.
    pub operator: Matrix,
}

impl RelReflectionResiduals {
    pub fn is_empty(&self) -> bool {
        self.module.is_empty() && self.operator.is_zero()
    }
}

fn operator_residual(sigma: &Matrix, t: &Matrix, tau: &Matrix) -> Matrix {
    &(&(&(&(sigma * t) * tau) - t) + &(sigma * t)) - &(t * tau)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSemidirectReport {
    pub skew: bool,
    pub cybe_zero: bool,
    /// Dual algebra of `r_T` equals `V_T ⋉_{θ*} g*` constant by constant.
    pub equal: bool,
    /// Equality after `ξ ↦ -ξ`, reported in case the conventions differ by that sign.
    pub equal_up_to_sign: bool,
}

impl RelRB0 {
    pub fn new(g: LieAlgebra, rho: Representation, t: Matrix) -> Result<Self> {
        if rho.algebra() != &g {
            return Err(Error::Dimension("representation over a different algebra".into()));
        }
        if t.rows() != g.dim() || t.cols() != rho.space_dim() {
            return Err(Error::Dimension("operator shape V -> g".into()));
        }
        Ok(RelRB0 { g, rho, t })
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rho.space_dim()
    }

    fn vt_bracket(&self, u: &[GaussRat], v: &[GaussRat]) -> Vector {
        vsub(&self.rho.act(&self.t.apply(u), v), &self.rho.act(&self.t.apply(v), u))
    }

    /// `T(ρ(Tu)v - ρ(Tv)u) - [Tu,Tv]` on failing basis pairs.
    pub fn residual(&self) -> Vec<(usize, usize, Vector)> {
        let m = self.dim_v();
        let mut out = Vec::new();
        for a in 0..m {
            for b in (a + 1)..m {
                let (u, v) = (unit_vec(m, a), unit_vec(m, b));
                let lhs = self.t.apply(&self.vt_bracket(&u, &v));
                let rhs = self.g.bracket(&self.t.col(a), &self.t.col(b));
                let d = vsub(&lhs, &rhs);
                if d.iter().any(|x| !x.is_zero()) {
                    out.push((a, b, d));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.residual().is_empty()
    }

    /// `V_T` with `[u,v]_T = ρ(Tu)v - ρ(Tv)u`.
    pub fn descendent(&self) -> LieAlgebra {
        let m = self.dim_v();
        LieAlgebra::from_fn(m, |a, b| self.vt_bracket(&unit_vec(m, a), &unit_vec(m, b))).expect("sized")
    }

    /// `θ(u)x = [Tu,x] + T(ρ(x)u)`, a representation of `V_T` on `g`.
    pub fn theta(&self) -> Representation {
        let (n, m) = (self.dim_g(), self.dim_v());
        let mats = (0..m)
            .map(|a| {
                let tu = self.t.col(a);
                let cols: Vec<Vector> = (0..n)
                    .map(|x| {
                        let e = unit_vec(n, x);
                        vadd(&self.g.bracket(&tu, &e), &self.t.apply(&self.rho.mats()[x].col(a)))
                    })
                    .collect();
                Matrix::from_cols(n, &cols).expect("shape")
            })
            .collect();
        Representation::new(self.descendent(), n, mats).expect("shape")
    }

    /// `g ⋉_{ρ*} V*`, basis order `(g, V*)`.
    pub fn semidirect_algebra(&self) -> LieAlgebra {
        semidirect(&self.rho.dual())
    }

    /// `r_T = T - T^21` with `T ∈ V* ⊗ g`, so that `r_+(u + ξ) = Tu - T*ξ`.
    pub fn r_t(&self) -> RMatrix {
        let (n, m) = (self.dim_g(), self.dim_v());
        let mut t = Matrix::zeros(n + m, n + m);
        for a in 0..n {
            for i in 0..m {
                t[(n + i, a)] = self.t[(a, i)].clone();
                t[(a, n + i)] = -&self.t[(a, i)];
            }
        }
        RMatrix::new(self.semidirect_algebra(), Tensor2(t)).expect("shape")
    }

    /// Dual algebra of `r_T` against `V_T ⋉_{θ*} g*`.
    pub fn dual_semidirect_check(&self) -> DualSemidirectReport {
        let (n, m) = (self.dim_g(), self.dim_v());
        let r = self.r_t();
        let d = &r.algebra;
        let skew = r.tensor.transpose21() == r.tensor.scale(&-GaussRat::one());
        let cybe_zero = crate::bialgebra::cybe_bracket(d, &r).is_zero();
        let dual = dual_algebra(d, &r);
        // dual slots: (g*, V) -> target order (V, g*)
        let perm: Vec<usize> = (0..n).map(|i| m + i).chain(0..m).collect();
        let moved = dual.transport(&permutation(&perm)).expect("permutation");
        let target = semidirect(&self.theta().dual());
        let mut flip = Matrix::identity(n + m);
        for i in 0..n {
            flip[(m + i, m + i)] = -GaussRat::one();
        }
        let flipped = moved.transport(&flip).expect("diagonal");
        DualSemidirectReport { skew, cybe_zero, equal: moved == target, equal_up_to_sign: flipped == target }
    }

    /// Module condition `τ(ρ(σx)v) - ρ(x)(τv)` and operator condition `σTτ - T + σT - Tτ`.
    pub fn reflection_residuals(&self, sigma: &Matrix, tau: &Matrix) -> Result<RelReflectionResiduals> {
        if !self.g.is_automorphism(sigma) {
            return Err(Error::NotAutomorphism);
        }
        if tau.rows() != self.dim_v() || tau.inverse().is_err() {
            return Err(Error::Dimension("τ must be invertible on V".into()));
        }
        let (n, m) = (self.dim_g(), self.dim_v());
        let mut module = Vec::new();
        for x in 0..n {
            let e = unit_vec(n, x);
            for v in 0..m {
                let w = unit_vec(m, v);
                let a = tau.apply(&self.rho.act(&sigma.apply(&e), &w));
                let b = self.rho.act(&e, &tau.apply(&w));
                let d = vsub(&a, &b);
                if d.iter().any(|z| !z.is_zero()) {
                    module.push((x, v, d));
                }
            }
        }
        Ok(RelReflectionResiduals { module, operator: operator_residual(sigma, &self.t, tau) })
    }

    /// `σ ⊕ (-τ*)` on `g ⊕ V*`.
    pub fn lift(sigma: &Matrix, tau: &Matrix) -> Matrix {
        Matrix::block_diag(sigma, &-&tau.transpose())
    }

    pub fn lifted_cre(&self, sigma: &Matrix, tau: &Matrix) -> Result<CreResidual> {
        let r = self.r_t();
        cre_residual(&r.algebra, &r, &RelRB0::lift(sigma, tau))
    }

    /// Coideal property of the fixed-point set of the lifted reflection.
    pub fn lifted_coideal(&self, sigma: &Matrix, tau: &Matrix) -> bool {
        let lift = RelRB0::lift(sigma, tau);
        let h = kernel(&(&lift - &Matrix::identity(lift.rows())));
        let r = self.r_t();
        is_coideal(&r.algebra, &r, &h)
    }

    /// `Im(τ+1) ⊕ h^⊥` in `V_T ⋉_{θ*} g*` with `h = ker(σ-1)`; returns the subspace and whether it closes.
    pub fn fixed_subspace(&self, sigma: &Matrix, tau: &Matrix) -> Result<(Subspace, bool)> {
        if !self.reflection_residuals(sigma, tau)?.is_empty() {
            return Err(Error::NotRelative("pair is not a reflection".into()));
        }
        let h = kernel(&(sigma - &Matrix::identity(self.dim_g())));
        let w = image(&(tau + &Matrix::identity(self.dim_v()))).direct_sum(&annihilator(&h));
        let alg = semidirect(&self.theta().dual());
        let closed = alg.is_subalgebra(&w);
        Ok((w, closed))
    }
}

/// Pre-Lie algebra with `e_i ▷ e_j = Σ a[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLie {
    dim: usize,
    a: Vec<GaussRat>,
}

fn table_mult(dim: usize, a: &[GaussRat], x: &[GaussRat], y: &[GaussRat]) -> Vector {
    let mut out = zero_vec(dim);
    for (i, p) in x.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in y.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let pq = p * q;
            for k in 0..dim {
                let c = &a[(i * dim + j) * dim + k];
                if !c.is_zero() {
                    out[k] += &pq * c;
                }
            }
        }
    }
    out
}

fn left_mult_rep(dim: usize, a: &[GaussRat], algebra: LieAlgebra) -> Representation {
    let mats = (0..dim)
        .map(|i| Matrix::from_fn(dim, dim, |k, j| a[(i * dim + j) * dim + k].clone()))
        .collect();
    Representation::new(algebra, dim, mats).expect("shape")
}

impl PreLie {
    pub fn new(dim: usize, a: Vec<GaussRat>) -> Result<Self> {
        if a.len() != dim * dim * dim {
            return Err(Error::Dimension("multiplication table size".into()));
        }
        Ok(PreLie { dim, a })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[GaussRat] {
        &self.a
    }

    pub fn mult(&self, x: &[GaussRat], y: &[GaussRat]) -> Vector {
        table_mult(self.dim, &self.a, x, y)
    }

    fn associator(&self, x: &[GaussRat], y: &[GaussRat], z: &[GaussRat]) -> Vector {
        vsub(&self.mult(&self.mult(x, y), z), &self.mult(x, &self.mult(y, z)))
    }

    /// Basis triples where `(x,y,z) != (y,x,z)`.
    pub fn residual(&self) -> Vec<(usize, usize, usize, Vector)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let (x, y, z) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                    let d = vsub(&self.associator(&x, &y, &z), &self.associator(&y, &x, &z));
                    if d.iter().any(|c| !c.is_zero()) {
                        out.push((i, j, k, d));
                    }
                }
            }
        }
        out
    }

    /// `[x,y] = x▷y - y▷x`.
    pub fn subadjacent(&self) -> LieAlgebra {
        let n = self.dim;
        LieAlgebra::from_fn(n, |i, j| {
            let (x, y) = (unit_vec(n, i), unit_vec(n, j));
            vsub(&self.mult(&x, &y), &self.mult(&y, &x))
        })
        .expect("sized")
    }

    /// Left multiplication as a representation of the subadjacent algebra.
    pub fn left_rep(&self) -> Representation {
        left_mult_rep(self.dim, &self.a, self.subadjacent())
    }

    /// The identity map as a relative Rota-Baxter operator of weight 0.
    pub fn as_relrb0(&self) -> RelRB0 {
        let rep = self.left_rep();
        RelRB0::new(rep.algebra().clone(), rep, Matrix::identity(self.dim)).expect("shape")
    }

    pub fn as_postlie(&self) -> PostLie {
        PostLie::new(LieAlgebra::abelian(self.dim), self.a.clone()).expect("sized")
    }

    pub fn is_automorphism(&self, sigma: &Matrix) -> bool {
        let n = self.dim;
        sigma.inverse().is_ok()
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    sigma.apply(&self.mult(&unit_vec(n, i), &unit_vec(n, j))) == self.mult(&sigma.col(i), &sigma.col(j))
                })
            })
    }
}

/// Weight-λ relative Rota-Baxter operator `T: k -> g`, `ρ` acting on `k` by derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelRBW {
    pub g: LieAlgebra,
    pub k: LieAlgebra,
    pub rho: Representation,
    pub t: Matrix,
    pub weight: GaussRat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitDualReport {
    pub pairing_matches: bool,
    pub module_family_matches: bool,
    pub mixed_family_matches: bool,
    pub dual_family_zero: bool,
}

impl ExplicitDualReport {
    pub fn all_hold(&self) -> bool {
        self.pairing_matches && self.module_family_matches && self.mixed_family_matches && self.dual_family_zero
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBialgebraReport {
    /// `g ⊕ k*` is a subalgebra of `ḡ ⋉ ḡ*`.
    pub subalgebra: bool,
    /// Its annihilator is an ideal of the dual algebra.
    pub annihilator_ideal: bool,
    /// The quotient bracket on `g* ⊕ k` equals [`RelRBW::quotient_algebra`].
    pub quotient_matches: bool,
    pub quotient_is_lie: bool,
    /// The quotient bracket equals [`RelRBW::quotient_algebra_full`].
    pub full_quotient_matches: bool,
    pub full_quotient_is_lie: bool,
}

impl SubBialgebraReport {
    pub fn all_hold(&self) -> bool {
        self.subalgebra && self.annihilator_ideal && self.quotient_matches && self.quotient_is_lie
    }

    /// Structure checks against the bracket actually induced on the quotient.
    pub fn structure_holds(&self) -> bool {
        self.subalgebra && self.annihilator_ideal && self.full_quotient_matches && self.full_quotient_is_lie
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelwChain {
    pub residuals_vanish: bool,
    pub rb_reflection_vanishes: bool,
    pub cre_vanishes: bool,
    pub forms_agree: bool,
}

impl RelRBW {
    pub fn new(g: LieAlgebra, k: LieAlgebra, rho: Representation, t: Matrix, weight: GaussRat) -> Result<Self> {
        if weight.is_zero() {
            return Err(Error::ZeroWeight);
        }
        if rho.algebra() != &g || rho.space_dim() != k.dim() {
            return Err(Error::Dimension("representation of g on k".into()));
        }
        if t.rows() != g.dim() || t.cols() != k.dim() {
            return Err(Error::Dimension("operator shape k -> g".into()));
        }
        if !rho.derivation_violations(&k)?.is_empty() {
            return Err(Error::NotDerivation);
        }
        Ok(RelRBW { g, k, rho, t, weight })
    }

    pub fn dim_g(&self) -> usize {
        self.g.dim()
    }

    pub fn dim_k(&self) -> usize {
        self.k.dim()
    }

    fn twisted(&self, u: &[GaussRat], v: &[GaussRat]) -> Vector {
        let a = vsub(&self.rho.act(&self.t.apply(u), v), &self.rho.act(&self.t.apply(v), u));
        vadd(&a, &vscale(&self.weight, &self.k.bracket(u, v)))
    }

    /// `[Tu,Tv] - T(ρ(Tu)v - ρ(Tv)u + λ[u,v])` on failing basis pairs.
    pub fn residual(&self) -> Vec<(usize, usize, Vector)> {
        let m = self.dim_k();
        let mut out = Vec::new();
        for a in 0..m {
            for b in (a + 1)..m {
                let lhs = self.g.bracket(&self.t.col(a), &self.t.col(b));
                let rhs = self.t.apply(&self.twisted(&unit_vec(m, a), &unit_vec(m, b)));
                let d = vsub(&lhs, &rhs);
                if d.iter().any(|x| !x.is_zero()) {
                    out.push((a, b, d));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.residual().is_empty()
    }

    /// `ḡ = g ⋉_ρ k`, basis order `(g, k)`.
    pub fn bar_algebra(&self) -> LieAlgebra {
        semidirect_with(&self.rho, &self.k).expect("checked shapes")
    }

    /// `T̄(x + u) = -λx + Tu` on `ḡ`.
    pub fn bar_lift(&self) -> RBStructure {
        let (n, m) = (self.dim_g(), self.dim_k());
        let mut b = Matrix::zeros(n + m, n + m);
        b.set_block(0, 0, &Matrix::scalar(n, &-&self.weight));
        b.set_block(0, n, &self.t);
        RBStructure::new(self.bar_algebra(), b, self.weight.clone()).expect("shape")
    }

    pub fn r_bar(&self) -> Result<RMatrix> {
        r_semidirect(&self.bar_lift())
    }

    fn slots(&self) -> (usize, usize) {
        (self.dim_g(), self.dim_k())
    }

    /// `r` written from the closed pairing formula.
    pub fn r_bar_formula(&self) -> Result<Tensor2> {
        let (n, m) = self.slots();
        let inv = self.weight.inv()?;
        let big = 2 * (n + m);
        let (gs, ks) = (n + m, 2 * n + m);
        let mut t = Matrix::zeros(big, big);
        for j in 0..n {
            t[(j, gs + j)] = GaussRat::one();
            for i in 0..m {
                t[(ks + i, j)] = &self.t[(j, i)] * &inv;
                t[(j, ks + i)] = -&(&self.t[(j, i)] * &inv);
            }
        }
        for i in 0..m {
            t[(ks + i, n + i)] = GaussRat::one();
        }
        Ok(Tensor2(t))
    }

    /// Checks the pairing values and the three families of dual brackets against closed formulas.
    pub fn explicit_dual_check(&self) -> Result<ExplicitDualReport> {
        let (n, m) = self.slots();
        let nm = n + m;
        let r = self.r_bar()?;
        let d = &r.algebra;
        let dual = dual_algebra(d, &r);
        let bar = self.bar_algebra();
        let inv = self.weight.inv()?;
        let lam = &self.weight;
        // D* slots: [0,n) ξ ∈ g*, [n,nm) α ∈ k*, [nm,nm+n) x ∈ g, [nm+n,2nm) u ∈ k
        let embed = |gstar: &[GaussRat], kstar: &[GaussRat], x: &[GaussRat], u: &[GaussRat]| -> Vector {
            let mut v = gstar.to_vec();
            v.extend_from_slice(kstar);
            v.extend_from_slice(x);
            v.extend_from_slice(u);
            v
        };
        let split = |s: usize| -> (Vector, Vector, Vector, Vector) {
            let e = unit_vec(2 * nm, s);
            (e[..n].to_vec(), e[n..nm].to_vec(), e[nm..nm + n].to_vec(), e[nm + n..].to_vec())
        };
        let bar_coad = |x: &[GaussRat], u: &[GaussRat], gamma_g: &[GaussRat], gamma_k: &[GaussRat]| -> (Vector, Vector) {
            let mut el = x.to_vec();
            el.extend_from_slice(u);
            let mut gam = gamma_g.to_vec();
            gam.extend_from_slice(gamma_k);
            let out = bar.coad(&el).apply(&gam);
            (out[..n].to_vec(), out[n..].to_vec())
        };
        let zn = zero_vec(n);
        let zm = zero_vec(m);
        let mut module_ok = true;
        let mut mixed_ok = true;
        let mut dual_zero = true;
        for p in 0..2 * nm {
            for q in 0..2 * nm {
                let (xi1, al1, x1, u1) = split(p);
                let (xi2, al2, x2, u2) = split(q);
                let lhs = dual.basis_bracket_vec(p, q);
                let p_first = p >= nm;
                let q_first = q >= nm;
                match (p_first, q_first) {
                    (true, true) => {
                        // (1/λ)(-λ[x,y] + [x,Tv] + [Tu,y] + ρ(Tu)v - ρ(Tv)u + λ[u,v])
                        let mut gpart = vscale(&-lam, &self.g.bracket(&x1, &x2));
                        gpart = vadd(&gpart, &self.g.bracket(&x1, &self.t.apply(&u2)));
                        gpart = vadd(&gpart, &self.g.bracket(&self.t.apply(&u1), &x2));
                        let kpart = self.twisted(&u1, &u2);
                        let expect = embed(&zn, &zm, &vscale(&inv, &gpart), &vscale(&inv, &kpart));
                        module_ok &= lhs == expect;
                    }
                    (false, false) => dual_zero &= lhs.iter().all(Zero::is_zero),
                    _ => {
                        let ((x, u, xi, al), sign) = if p_first {
                            ((x1, u1, xi2, al2), GaussRat::one())
                        } else {
                            ((x2, u2, xi1, al1), -GaussRat::one())
                        };
                        // (1/λ)(ad*_{Tu}ξ + ρ*_{-λx+Tu}α - ad*_u T*ξ - ρ*_x T*ξ)
                        let tu = self.t.apply(&u);
                        let part1 = self.g.coad(&tu).apply(&xi);
                        let y = vadd(&vscale(&-lam, &x), &tu);
                        let part2 = self.rho.dual().act(&y, &al);
                        let tstar = self.t.transpose().apply(&xi);
                        let (c3g, c3k) = bar_coad(&zn, &u, &zn, &tstar);
                        let part4 = self.rho.dual().act(&x, &tstar);
                        let gstar = vsub(&part1, &c3g);
                        let kstar = vsub(&vsub(&part2, &c3k), &part4);
                        let s = &sign * &inv;
                        let expect = embed(&vscale(&s, &gstar), &vscale(&s, &kstar), &zn, &zm);
                        mixed_ok &= lhs == expect;
                    }
                }
            }
        }
        Ok(ExplicitDualReport {
            pairing_matches: r.tensor == self.r_bar_formula()?,
            module_family_matches: module_ok,
            mixed_family_matches: mixed_ok,
            dual_family_zero: dual_zero,
        })
    }

    /// Bracket on `g* ⊕ k`: `(1/λ)(ad*_{Tu}η - ad*_{Tv}ξ + ρ(Tu)v - ρ(Tv)u + λ[u,v])`.
    pub fn quotient_algebra(&self) -> Result<LieAlgebra> {
        let (n, m) = self.slots();
        let inv = self.weight.inv()?;
        LieAlgebra::from_fn(n + m, |p, q| {
            let e = unit_vec(n + m, p);
            let f = unit_vec(n + m, q);
            let (xi, u) = (&e[..n], &e[n..]);
            let (eta, v) = (&f[..n], &f[n..]);
            let gpart = vsub(&self.g.coad(&self.t.apply(u)).apply(eta), &self.g.coad(&self.t.apply(v)).apply(xi));
            let mut out = vscale(&inv, &gpart);
            out.extend(vscale(&inv, &self.twisted(u, v)));
            out
        })
    }

    /// [`RelRBW::quotient_algebra`] plus `(1/λ)(<ξ, Tρ(·)v> - <η, Tρ(·)u>)`, the `g*` part of the
    /// mixed terms `-ad*_u T*η` that survives the quotient.
    pub fn quotient_algebra_full(&self) -> Result<LieAlgebra> {
        let (n, m) = self.slots();
        let inv = self.weight.inv()?;
        // w(u)[y] = <., Tρ(e_y)u> as a map g* -> g*
        let pull = |u: &[GaussRat], eta: &[GaussRat]| -> Vector {
            (0..n).map(|y| crate::linalg::dot(eta, &self.t.apply(&self.rho.mats()[y].apply(u)))).collect()
        };
        LieAlgebra::from_fn(n + m, |p, q| {
            let e = unit_vec(n + m, p);
            let f = unit_vec(n + m, q);
            let (xi, u) = (&e[..n], &e[n..]);
            let (eta, v) = (&f[..n], &f[n..]);
            let mut gpart = vsub(&self.g.coad(&self.t.apply(u)).apply(eta), &self.g.coad(&self.t.apply(v)).apply(xi));
            gpart = vadd(&gpart, &vsub(&pull(v, xi), &pull(u, eta)));
            let mut out = vscale(&inv, &gpart);
            out.extend(vscale(&inv, &self.twisted(u, v)));
            out
        })
    }

    /// Sub-bialgebra checks on `g ⋉ k*` inside `ḡ ⋉ ḡ*`.
    pub fn sub_bialgebra_check(&self) -> Result<SubBialgebraReport> {
        let (n, m) = self.slots();
        let nm = n + m;
        let r = self.r_bar()?;
        let d = &r.algebra;
        let dual = dual_algebra(d, &r);
        let sub = Subspace::coordinate(2 * nm, (0..n).chain(2 * n + m..2 * nm));
        let ann = annihilator(&sub);
        let quotient = self.quotient_algebra()?;
        let full = self.quotient_algebra_full()?;
        // quotient slots: ξ at [0,n), u at [nm+n, 2nm)
        let reps: Vec<usize> = (0..n).chain(nm + n..2 * nm).collect();
        let mut quotient_matches = true;
        let mut full_quotient_matches = true;
        for (a, &p) in reps.iter().enumerate() {
            for (b, &q) in reps.iter().enumerate() {
                let br = dual.basis_bracket_vec(p, q);
                let projected: Vector = reps.iter().map(|&s| br[s].clone()).collect();
                quotient_matches &= projected == quotient.basis_bracket_vec(a, b);
                full_quotient_matches &= projected == full.basis_bracket_vec(a, b);
            }
        }
        Ok(SubBialgebraReport {
            subalgebra: d.is_subalgebra(&sub),
            annihilator_ideal: dual.is_ideal(&ann),
            quotient_matches,
            quotient_is_lie: quotient.validate().is_valid(),
            full_quotient_matches,
            full_quotient_is_lie: full.validate().is_valid(),
        })
    }

    /// Conditions on a pair of involutive automorphisms `σ` of `g` and `τ` of `k`.
    pub fn reflection_residuals(&self, sigma: &Matrix, tau: &Matrix) -> Result<RelReflectionResiduals> {
        let (n, m) = self.slots();
        for (alg, map, dim) in [(&self.g, sigma, n), (&self.k, tau, m)] {
            if !alg.is_automorphism(map) {
                return Err(Error::NotAutomorphism);
            }
            if (map * map) != Matrix::identity(dim) {
                return Err(Error::NotInvolution);
            }
        }
        let mut module = Vec::new();
        for x in 0..n {
            let e = unit_vec(n, x);
            for v in 0..m {
                let w = unit_vec(m, v);
                let a = tau.apply(&self.rho.act(&e, &w));
                let b = self.rho.act(&sigma.apply(&e), &tau.apply(&w));
                let d = vsub(&a, &b);
                if d.iter().any(|z| !z.is_zero()) {
                    module.push((x, v, d));
                }
            }
        }
        Ok(RelReflectionResiduals { module, operator: operator_residual(sigma, &self.t, tau) })
    }

    /// `(σ ⊕ τ) ⊕ (-σ* ⊕ -τ*)` in basis order `(g, k, g*, k*)`.
    pub fn lift(sigma: &Matrix, tau: &Matrix) -> Matrix {
        let st = Matrix::block_diag(sigma, tau);
        Matrix::block_diag(&st, &-&st.transpose())
    }

    /// Each link: relative reflection, reflection on `(ḡ, T̄)`, reflection equation for the lift.
    pub fn reflection_chain(&self, sigma: &Matrix, tau: &Matrix) -> Result<RelwChain> {
        let res = self.reflection_residuals(sigma, tau)?;
        let st = Matrix::block_diag(sigma, tau);
        let bar = self.bar_lift();
        let rb_ok = match rb_reflection_residuals(&bar, &st) {
            Ok(r) => r.is_empty(),
            Err(Error::NotAutomorphism) => false,
            Err(e) => return Err(e),
        };
        let r = self.r_bar()?;
        let lift = RelRBW::lift(sigma, tau);
        let (cre_vanishes, forms_agree) = match cre_residual(&r.algebra, &r, &lift) {
            Ok(c) => (c.is_zero(), c.forms_agree()),
            Err(Error::NotAutomorphism) => (false, true),
            Err(e) => return Err(e),
        };
        Ok(RelwChain { residuals_vanish: res.is_empty(), rb_reflection_vanishes: rb_ok, cre_vanishes, forms_agree })
    }
}

/// Post-Lie algebra: a Lie algebra with a product `▷` acting by derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostLie {
    pub lie: LieAlgebra,
    a: Vec<GaussRat>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PostLieResiduals {
    /// `x▷[y,z] - [x▷y,z] - [y,x▷z]`.
    pub derivation: Vec<(usize, usize, usize, Vector)>,
    /// `([x,y] + x▷y - y▷x)▷z - x▷(y▷z) + y▷(x▷z)`.
    pub action: Vec<(usize, usize, usize, Vector)>,
}

impl PostLieResiduals {
    pub fn is_empty(&self) -> bool {
        self.derivation.is_empty() && self.action.is_empty()
    }
}

impl PostLie {
    pub fn new(lie: LieAlgebra, a: Vec<GaussRat>) -> Result<Self> {
        let n = lie.dim();
        if a.len() != n * n * n {
            return Err(Error::Dimension("multiplication table size".into()));
        }
        Ok(PostLie { lie, a })
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn table(&self) -> &[GaussRat] {
        &self.a
    }

    pub fn mult(&self, x: &[GaussRat], y: &[GaussRat]) -> Vector {
        table_mult(self.dim(), &self.a, x, y)
    }

    fn sub_bracket(&self, x: &[GaussRat], y: &[GaussRat]) -> Vector {
        vadd(&self.lie.bracket(x, y), &vsub(&self.mult(x, y), &self.mult(y, x)))
    }

    pub fn residuals(&self) -> PostLieResiduals {
        let n = self.dim();
        let mut out = PostLieResiduals::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k));
                    let d1 = vsub(
                        &self.mult(&x, &self.lie.bracket(&y, &z)),
                        &vadd(&self.lie.bracket(&self.mult(&x, &y), &z), &self.lie.bracket(&y, &self.mult(&x, &z))),
                    );
                    if d1.iter().any(|c| !c.is_zero()) {
                        out.derivation.push((i, j, k, d1));
                    }
                    let d2 = vadd(
                        &vsub(&self.mult(&self.sub_bracket(&x, &y), &z), &self.mult(&x, &self.mult(&y, &z))),
                        &self.mult(&y, &self.mult(&x, &z)),
                    );
                    if d2.iter().any(|c| !c.is_zero()) {
                        out.action.push((i, j, k, d2));
                    }
                }
            }
        }
        out
    }

    /// `[x,y]_▷ = [x,y] + x▷y - y▷x`.
    pub fn subadjacent(&self) -> LieAlgebra {
        let n = self.dim();
        LieAlgebra::from_fn(n, |i, j| self.sub_bracket(&unit_vec(n, i), &unit_vec(n, j))).expect("sized")
    }

    /// `L_▷` as a representation of the subadjacent algebra on the underlying Lie algebra.
    pub fn left_rep(&self) -> Representation {
        left_mult_rep(self.dim(), &self.a, self.subadjacent())
    }

    /// The identity map as a relative Rota-Baxter operator of weight 1.
    pub fn as_relrbw(&self) -> Result<RelRBW> {
        let rep = self.left_rep();
        RelRBW::new(rep.algebra().clone(), self.lie.clone(), rep, Matrix::identity(self.dim()), GaussRat::one())
    }

    pub fn is_automorphism(&self, sigma: &Matrix) -> bool {
        let n = self.dim();
        self.lie.is_automorphism(sigma)
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    sigma.apply(&self.mult(&unit_vec(n, i), &unit_vec(n, j))) == self.mult(&sigma.col(i), &sigma.col(j))
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_moves_slots() {
        let p = permutation(&[1, 0]);
        assert_eq!(p.apply(&unit_vec(2, 0)), unit_vec(2, 1));
    }
}
