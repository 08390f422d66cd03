//! Rota-Baxter operators of weight λ, quadratic Rota-Baxter Lie algebras, their r-matrices,
//! reflections and the constructions built from them.

use num_traits::{One, Zero};

use crate::bialgebra::{cre_residual, dual_algebra};
use crate::error::{Error, Result};
use crate::lie::{coadjoint, direct_sum, semidirect, BilinearForm, FormReport, LieAlgebra, Representation};
use crate::linalg::{image, kernel, s_orthogonal, unit_vec, vadd, vscale, zero_vec, Matrix, Subspace, Vector};
use crate::scalar::GaussRat;
use crate::tensor::{RMatrix, Tensor2};

/// Residual `[Bx,By] - B([Bx,y] + [x,By] + λ[x,y])` for every basis pair `i < j` where it is nonzero.
pub fn rb_residual(l: &LieAlgebra, b: &Matrix, weight: &GaussRat) -> Vec<(usize, usize, Vector)> {
    let n = l.dim();
    let cols: Vec<Vector> = (0..n).map(|j| b.col(j)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = l.bracket(&cols[i], &cols[j]);
            let inner = descendent_bracket_raw(l, b, weight, &unit_vec(n, i), &unit_vec(n, j));
            let res: Vector = lhs.iter().zip(b.apply(&inner)).map(|(a, c)| a - &c).collect();
            if res.iter().any(|x| !x.is_zero()) {
                out.push((i, j, res));
            }
        }
    }
    out
}

fn descendent_bracket_raw(l: &LieAlgebra, b: &Matrix, weight: &GaussRat, x: &[GaussRat], y: &[GaussRat]) -> Vector {
    let mut v = vadd(&l.bracket(&b.apply(x), y), &l.bracket(x, &b.apply(y)));
    if !weight.is_zero() {
        v = vadd(&v, &vscale(weight, &l.bracket(x, y)));
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RBStructure {
    pub algebra: LieAlgebra,
    pub b: Matrix,
    pub weight: GaussRat,
}

impl RBStructure {
    pub fn new(algebra: LieAlgebra, b: Matrix, weight: GaussRat) -> Result<Self> {
        if b.rows() != algebra.dim() || b.cols() != algebra.dim() {
            return Err(Error::Dimension("operator vs algebra".into()));
        }
        Ok(RBStructure { algebra, b, weight })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn residual(&self) -> Vec<(usize, usize, Vector)> {
        rb_residual(&self.algebra, &self.b, &self.weight)
    }

    pub fn is_valid(&self) -> bool {
        self.residual().is_empty()
    }

    pub fn descendent_bracket(&self, x: &[GaussRat], y: &[GaussRat]) -> Vector {
        descendent_bracket_raw(&self.algebra, &self.b, &self.weight, x, y)
    }

    /// The descendent Lie algebra `g_B`.
    pub fn descendent(&self) -> Result<LieAlgebra> {
        if let Some((i, j, _)) = self.residual().first() {
            return Err(Error::NotRotaBaxter(format!("identity fails on basis pair ({}, {})", i, j)));
        }
        Ok(self.descendent_unchecked())
    }

    fn descendent_unchecked(&self) -> LieAlgebra {
        let n = self.dim();
        LieAlgebra::from_fn(n, |i, j| self.descendent_bracket(&unit_vec(n, i), &unit_vec(n, j))).expect("sized")
    }

    /// `-λ1 - B`, again a Rota-Baxter operator of weight λ.
    pub fn complement(&self) -> RBStructure {
        let b = &(-&self.b) - &Matrix::scalar(self.dim(), &self.weight);
        RBStructure { algebra: self.algebra.clone(), b, weight: self.weight.clone() }
    }

    pub fn shifted(&self) -> Matrix {
        &self.b + &Matrix::scalar(self.dim(), &self.weight)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRB {
    pub rb: RBStructure,
    pub form: BilinearForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticReport {
    pub form: FormReport,
    pub rb: Vec<(usize, usize, Vector)>,
    /// Gram matrix of `S(x,By) + S(Bx,y) + λS(x,y)`.
    pub compatibility: Matrix,
}

impl QuadraticReport {
    pub fn is_valid(&self) -> bool {
        self.form.all_hold() && self.rb.is_empty() && self.compatibility.is_zero()
    }
}

impl QuadraticRB {
    pub fn new(rb: RBStructure, gram: Matrix) -> Result<Self> {
        let form = BilinearForm::new(rb.algebra.clone(), gram)?;
        Ok(QuadraticRB { rb, form })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.rb.algebra
    }

    pub fn dim(&self) -> usize {
        self.rb.dim()
    }

    pub fn weight(&self) -> &GaussRat {
        &self.rb.weight
    }

    pub fn validate(&self) -> QuadraticReport {
        let g = &self.form.gram;
        let b = &self.rb.b;
        let compatibility = &(&(g * b) + &(&b.transpose() * g)) + &g.scale(&self.rb.weight);
        QuadraticReport { form: self.form.checks(), rb: self.rb.residual(), compatibility }
    }

    pub fn i_s(&self) -> Result<Matrix> {
        self.form.i_s()
    }
}

/// `r_+ = B∘I_S` for λ = 0 and `r_+ = (1/λ)(B+λ)∘I_S` otherwise.
pub fn r_from_quadratic(q: &QuadraticRB) -> Result<RMatrix> {
    let rep = q.validate();
    if !rep.is_valid() {
        return Err(Error::NotQuadratic(describe_quadratic_failure(&rep)));
    }
    let i_s = q.i_s()?;
    let lam = q.weight();
    let r_plus = if lam.is_zero() {
        &q.rb.b * &i_s
    } else {
        (&q.rb.shifted() * &i_s).scale(&lam.inv()?)
    };
    RMatrix::from_operator(q.algebra().clone(), &r_plus)
}

fn describe_quadratic_failure(r: &QuadraticReport) -> String {
    let mut parts = Vec::new();
    if !r.form.symmetric() {
        parts.push("form not symmetric");
    }
    if !r.form.nondegenerate() {
        parts.push("form degenerate");
    }
    if !r.form.invariant() {
        parts.push("form not invariant");
    }
    if !r.rb.is_empty() {
        parts.push("operator fails the Rota-Baxter identity");
    }
    if !r.compatibility.is_zero() {
        parts.push("form and operator incompatible");
    }
    parts.join(", ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReflectionVariant {
    Skew,
    Symmetric,
    RelaxedAd,
}

impl ReflectionVariant {
    pub fn tag(self) -> &'static str {
        match self {
            ReflectionVariant::Skew => "skew",
            ReflectionVariant::Symmetric => "symmetric",
            ReflectionVariant::RelaxedAd => "relaxed-ad",
        }
    }

    pub fn from_tag(s: &str) -> Option<Self> {
        match s {
            "skew" => Some(ReflectionVariant::Skew),
            "symmetric" => Some(ReflectionVariant::Symmetric),
            "relaxed-ad" => Some(ReflectionVariant::RelaxedAd),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadReflection {
    pub qrb: QuadraticRB,
    pub tau: Matrix,
    pub variant: ReflectionVariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionResiduals {
    /// `(τ-1)(B+λ)(τ+1)`.
    pub skew_core: Matrix,
    /// `I_S τ^T + τ I_S`.
    pub skew_pairing: Matrix,
    /// `(τ-1)(B+λ)(τ-1)`.
    pub symmetric_core: Matrix,
    /// `I_S τ^T - τ I_S`.
    pub symmetric_pairing: Matrix,
    /// Basis vectors `x` of `ker(τ-1)` with `[ad_x, (τ-1)(B+λ)(τ+1)] != 0`.
    pub relaxed_skew: Vec<(usize, Matrix)>,
    /// Same with `(τ-1)(B+λ)(τ-1)`.
    pub relaxed_symmetric: Vec<(usize, Matrix)>,
}

impl ReflectionResiduals {
    pub fn holds(&self, v: ReflectionVariant) -> bool {
        match v {
            ReflectionVariant::Skew => self.skew_core.is_zero() && self.skew_pairing.is_zero(),
            ReflectionVariant::Symmetric => self.symmetric_core.is_zero() && self.symmetric_pairing.is_zero(),
            ReflectionVariant::RelaxedAd => {
                (self.skew_pairing.is_zero() && self.relaxed_skew.is_empty())
                    || (self.symmetric_pairing.is_zero() && self.relaxed_symmetric.is_empty())
            }
        }
    }
}

pub fn reflection_residuals(q: &QuadraticRB, tau: &Matrix) -> Result<ReflectionResiduals> {
    let l = q.algebra();
    if !l.is_automorphism(tau) {
        return Err(Error::NotAutomorphism);
    }
    let n = q.dim();
    let one = Matrix::identity(n);
    let i_s = q.i_s()?;
    let shifted = q.rb.shifted();
    let tm = tau - &one;
    let tp = tau + &one;
    let skew_core = &(&tm * &shifted) * &tp;
    let symmetric_core = &(&tm * &shifted) * &tm;
    let a = &i_s * &tau.transpose();
    let b = tau * &i_s;
    let h = kernel(&tm);
    let relaxed = |core: &Matrix| -> Vec<(usize, Matrix)> {
        h.basis()
            .iter()
            .enumerate()
            .filter_map(|(k, x)| {
                let c = l.ad(x).commutator(core);
                (!c.is_zero()).then_some((k, c))
            })
            .collect()
    };
    Ok(ReflectionResiduals {
        relaxed_skew: relaxed(&skew_core),
        relaxed_symmetric: relaxed(&symmetric_core),
        skew_core,
        symmetric_core,
        skew_pairing: &a + &b,
        symmetric_pairing: &a - &b,
    })
}

impl QuadReflection {
    pub fn new(qrb: QuadraticRB, tau: Matrix, variant: ReflectionVariant) -> Result<Self> {
        if tau.rows() != qrb.dim() || tau.cols() != qrb.dim() {
            return Err(Error::Dimension("reflection vs algebra".into()));
        }
        Ok(QuadReflection { qrb, tau, variant })
    }

    pub fn residuals(&self) -> Result<ReflectionResiduals> {
        reflection_residuals(&self.qrb, &self.tau)
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.residuals()?.holds(self.variant))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockReport {
    pub h: Subspace,
    pub p: Subspace,
    /// Component of `B|_h` in `p`, as a `dim p × dim h` matrix in the eigenbases.
    pub b_hp: Matrix,
    /// Component of `B|_p` in `h`, as a `dim h × dim p` matrix.
    pub b_ph: Matrix,
    pub h_isotropic: bool,
    pub p_isotropic: bool,
    /// Skew-variant verdict from the residuals, for cross-checking.
    pub residual_verdict: bool,
}

impl BlockReport {
    pub fn block_verdict(&self) -> bool {
        self.b_hp.is_zero() && self.h_isotropic && self.p_isotropic
    }
}

fn isotropic(form: &BilinearForm, s: &Subspace) -> bool {
    s.basis().iter().all(|u| s.basis().iter().all(|v| form.eval(u, v).is_zero()))
}

/// Eigenspace decomposition of an involution and the block form of `B`.
pub fn involution_block_analysis(q: &QuadraticRB, tau: &Matrix) -> Result<BlockReport> {
    let n = q.dim();
    let one = Matrix::identity(n);
    if (tau * tau) != one {
        return Err(Error::NotInvolution);
    }
    let h = kernel(&(tau - &one));
    let p = kernel(&(tau + &one));
    let (dh, dp) = (h.dim(), p.dim());
    let mut cols: Vec<Vector> = h.basis().to_vec();
    cols.extend(p.basis().iter().cloned());
    let change = Matrix::from_cols(n, &cols)?;
    let b = &(&change.inverse()? * &q.rb.b) * &change;
    let residual_verdict = reflection_residuals(q, tau)?.holds(ReflectionVariant::Skew);
    Ok(BlockReport {
        b_hp: b.block(dh, 0, dp, dh),
        b_ph: b.block(0, dh, dh, dp),
        h_isotropic: isotropic(&q.form, &h),
        p_isotropic: isotropic(&q.form, &p),
        h,
        p,
        residual_verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSpaces {
    pub h: Subspace,
    /// `S`-orthogonal of `h`.
    pub h0: Subspace,
    /// Annihilator of `h` in `g*`.
    pub hperp: Subspace,
    pub h0_is_image: bool,
}

pub fn fixed_and_orthogonal(q: &QuadraticRB, tau: &Matrix) -> Result<FixedSpaces> {
    let one = Matrix::identity(q.dim());
    let h = kernel(&(tau - &one));
    let h0 = s_orthogonal(&h, &q.form.gram)?;
    let h0_is_image = h0 == image(&(tau + &one));
    Ok(FixedSpaces { hperp: crate::linalg::annihilator(&h), h, h0, h0_is_image })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalFixedReport {
    pub spaces: FixedSpaces,
    pub b_stable: bool,
    pub descendent_closed: bool,
    /// `h⁰ ⊕ h` closed in the bowtie algebra.
    pub bowtie_closed: bool,
    pub ideal: bool,
    /// `(a, b, [a,b]_B)` with `a ∈ h⁰`, `b` a basis vector of `g`, and the bracket outside `h⁰`.
    pub non_ideal_witness: Option<(Vector, Vector, Vector)>,
}

/// Subalgebra, B-stability and ideal checks for the `S`-orthogonal of the fixed-point set.
pub fn orthogonal_fixed_checks(q: &QuadraticRB, tau: &Matrix) -> Result<OrthogonalFixedReport> {
    let spaces = fixed_and_orthogonal(q, tau)?;
    let desc = q.rb.descendent()?;
    let h0 = &spaces.h0;
    let b_stable = h0.map(&q.rb.b)?.is_subspace_of(h0);
    let descendent_closed = desc.is_subalgebra(h0);
    let bow = bowtie(&q.rb)?;
    let bowtie_closed = bow.is_subalgebra(&h0.direct_sum(&spaces.h));
    let non_ideal_witness = desc.closure_violation(&Subspace::full(q.dim()), h0).map(|(b, a, v)| (a, b, v.iter().map(|x| -x).collect()));
    Ok(OrthogonalFixedReport {
        ideal: non_ideal_witness.is_none(),
        spaces,
        b_stable,
        descendent_closed,
        bowtie_closed,
        non_ideal_witness,
    })
}

/// Bowtie algebra `g_B ⋈ g` on `g ⊕ g`, basis order `(g_B, g)`.
pub fn bowtie(rb: &RBStructure) -> Result<LieAlgebra> {
    let desc = rb.descendent()?;
    let l = &rb.algebra;
    let n = rb.dim();
    LieAlgebra::from_fn(2 * n, |i, j| {
        let mut v = zero_vec(2 * n);
        let mixed = |xi: usize, a: usize| -> (Vector, Vector) {
            let e = unit_vec(n, xi);
            let f = unit_vec(n, a);
            let br = l.bracket(&e, &f);
            let second: Vector = l.bracket(&rb.b.apply(&e), &f).iter().zip(rb.b.apply(&br)).map(|(x, y)| x - &y).collect();
            (br, second)
        };
        match (i < n, j < n) {
            (true, true) => v[..n].clone_from_slice(&desc.basis_bracket_vec(i, j)),
            (false, false) => v[n..].clone_from_slice(&l.basis_bracket_vec(i - n, j - n)),
            (true, false) => {
                let (a, b) = mixed(i, j - n);
                v[..n].clone_from_slice(&a);
                v[n..].clone_from_slice(&b);
            }
            (false, true) => {
                let (a, b) = mixed(j, i - n);
                for k in 0..n {
                    v[k] = -&a[k];
                    v[n + k] = -&b[k];
                }
            }
        }
        v
    })
}

fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    let (n, m) = (a.rows(), a.cols());
    let mut out = Matrix::zeros(n + c.rows(), m + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, m, b);
    out.set_block(n, 0, c);
    out.set_block(n, m, d);
    out
}

fn require_nonzero_weight(q: &QuadraticRB) -> Result<GaussRat> {
    if q.weight().is_zero() {
        return Err(Error::ZeroWeight);
    }
    let rep = q.validate();
    if !rep.is_valid() {
        return Err(Error::NotQuadratic(describe_quadratic_failure(&rep)));
    }
    Ok(q.weight().clone())
}

/// Quadratic Rota-Baxter algebra on `g ⊕ g` with the swap reflection.
pub fn construct_direct_sum_qrb(q: &QuadraticRB) -> Result<(QuadraticRB, Matrix)> {
    let lam = require_nonzero_weight(q)?;
    let n = q.dim();
    let b = &q.rb.b;
    let c = -&q.rb.shifted();
    let bhat = block2(b, &c, b, &c);
    let g = &q.form.gram;
    let shat = Matrix::block_diag(g, &-g);
    let one = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    let swap = block2(&zero, &one, &one, &zero);
    let algebra = direct_sum(q.algebra(), q.algebra());
    Ok((QuadraticRB::new(RBStructure::new(algebra, bhat, lam)?, shat)?, swap))
}

/// Quadratic Rota-Baxter algebra on `g_B ⋈ g` and its reflection.
pub fn construct_bowtie_qrb(q: &QuadraticRB) -> Result<(QuadraticRB, Matrix)> {
    let lam = require_nonzero_weight(q)?;
    let n = q.dim();
    let one = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    let b = block2(&zero, &zero, &zero, &Matrix::scalar(n, &-&lam));
    let g = &q.form.gram;
    let s = block2(&zero, &g.scale(&lam), &g.scale(&lam), &zero);
    let two_b = &q.rb.b.scale(&GaussRat::from_int(2)) + &Matrix::scalar(n, &lam);
    let tau = block2(&-&one, &zero, &two_b, &one);
    Ok((QuadraticRB::new(RBStructure::new(bowtie(&q.rb)?, b, lam)?, s)?, tau))
}

/// The double `g*_{r_B} ⋈ g`, basis order `(g*, g)`.
pub fn double_algebra(q: &QuadraticRB) -> Result<LieAlgebra> {
    let r = r_from_quadratic(q)?;
    let l = q.algebra();
    let n = q.dim();
    let dual = dual_algebra(l, &r);
    // [x, α] = ad*_x α - ad*_α x, with <ad*_α x, β> = -<x, [α,β]_*>
    let mixed = |x: usize, a: usize| -> Vector {
        let mut v = zero_vec(2 * n);
        let coad = l.coad(&unit_vec(n, x)).apply(&unit_vec(n, a));
        v[..n].clone_from_slice(&coad);
        for k in 0..n {
            v[n + k] = dual.c(a, k, x).clone();
        }
        v
    };
    LieAlgebra::from_fn(2 * n, |i, j| match (i < n, j < n) {
        (true, true) => {
            let mut v = dual.basis_bracket_vec(i, j);
            v.extend(zero_vec(n));
            v
        }
        (false, false) => {
            let mut v = zero_vec(n);
            v.extend(l.basis_bracket_vec(i - n, j - n));
            v
        }
        (false, true) => mixed(i - n, j),
        (true, false) => mixed(j - n, i).iter().map(|x| -x).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleConstruction {
    pub qrb: QuadraticRB,
    pub tau: Matrix,
    /// `ψ(α,x) = (r_+α + x, r_-α + x)` into `g ⊕ g`.
    pub psi: Matrix,
    /// `φ(ξ,x) = (Bξ + λξ + x, Bξ + x)` from the bowtie algebra into `g ⊕ g`.
    pub phi: Matrix,
    /// `(1/λ)I_S ⊕ 1` from the double to the bowtie algebra.
    pub kappa: Matrix,
}

pub fn construct_double_qrb(q: &QuadraticRB) -> Result<DoubleConstruction> {
    let lam = require_nonzero_weight(q)?;
    let n = q.dim();
    let one = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    let inv_lam = lam.inv()?;
    let i_s = q.i_s()?;
    let b = block2(&zero, &zero, &zero, &Matrix::scalar(n, &-&lam));
    let s = block2(&zero, &one, &one, &zero);
    let two_b = &q.rb.b.scale(&GaussRat::from_int(2)) + &Matrix::scalar(n, &lam);
    let tau = block2(&-&one, &zero, &(&two_b * &i_s).scale(&inv_lam), &one);
    let r = r_from_quadratic(q)?;
    let psi = block2(&r.r_plus(), &one, &r.r_minus(), &one);
    let phi = block2(&q.rb.shifted(), &one, &q.rb.b, &one);
    let kappa = Matrix::block_diag(&i_s.scale(&inv_lam), &one);
    let qrb = QuadraticRB::new(RBStructure::new(double_algebra(q)?, b, lam)?, s)?;
    Ok(DoubleConstruction { qrb, tau, psi, phi, kappa })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub psi_iso: bool,
    pub phi_iso: bool,
    pub kappa_iso: bool,
    pub commutes: bool,
    /// `ψ` and `φ` carry operator, form and reflection onto those of the direct-sum construction.
    pub psi_intertwines: bool,
    pub phi_intertwines: bool,
}

impl DiagramReport {
    pub fn all_hold(&self) -> bool {
        self.psi_iso && self.phi_iso && self.kappa_iso && self.commutes && self.psi_intertwines && self.phi_intertwines
    }
}

fn intertwines(f: &Matrix, from: &QuadraticRB, from_tau: &Matrix, to: &QuadraticRB, to_tau: &Matrix) -> bool {
    (f * &from.rb.b) == (&to.rb.b * f)
        && &(&f.transpose() * &to.form.gram) * f == from.form.gram
        && (f * from_tau) == (to_tau * f)
}

/// Checks that the direct-sum, bowtie and double constructions are isomorphic through `ψ`, `φ` and `κ`.
pub fn diagram_check(q: &QuadraticRB) -> Result<DiagramReport> {
    let (ds, swap) = construct_direct_sum_qrb(q)?;
    let (bw, tau_b) = construct_bowtie_qrb(q)?;
    let d = construct_double_qrb(q)?;
    Ok(DiagramReport {
        psi_iso: d.qrb.algebra().is_isomorphism(ds.algebra(), &d.psi),
        phi_iso: bw.algebra().is_isomorphism(ds.algebra(), &d.phi),
        kappa_iso: d.qrb.algebra().is_isomorphism(bw.algebra(), &d.kappa),
        commutes: &d.phi * &d.kappa == d.psi,
        psi_intertwines: intertwines(&d.psi, &d.qrb, &d.tau, &ds, &swap),
        phi_intertwines: intertwines(&d.phi, &bw, &tau_b, &ds, &swap),
    })
}

/// `(g ⋉_{ad*} g*, B ⊕ (-λ1 - B*), natural pairing)`, basis order `(g, g*)`.
pub fn semidirect_qrb(rb: &RBStructure) -> Result<QuadraticRB> {
    if !rb.is_valid() {
        return Err(Error::NotRotaBaxter("semidirect lift needs a valid operator".into()));
    }
    let n = rb.dim();
    let algebra = semidirect(&coadjoint(&rb.algebra));
    let lower = &(-&rb.b.transpose()) - &Matrix::scalar(n, &rb.weight);
    let b = Matrix::block_diag(&rb.b, &lower);
    let zero = Matrix::zeros(n, n);
    let one = Matrix::identity(n);
    QuadraticRB::new(RBStructure::new(algebra, b, rb.weight.clone())?, block2(&zero, &one, &one, &zero))
}

/// The r-matrix of the semidirect lift written directly from `B`:
/// `r(x+ξ, y+η) = <Bx,η> - <ξ,By>` (λ = 0) or `(1/λ)(<Bx,η> - <ξ,By> + λ<x,η>)`.
pub fn r_semidirect(rb: &RBStructure) -> Result<RMatrix> {
    let n = rb.dim();
    let lam = &rb.weight;
    let (scale, shift) = if lam.is_zero() {
        (GaussRat::one(), GaussRat::zero())
    } else {
        (lam.inv()?, lam.clone())
    };
    let mut t = Matrix::zeros(2 * n, 2 * n);
    // dual slot i < n is the covector e^i (pairs with g); slot n+i is e_i (pairs with g*)
    for i in 0..n {
        for j in 0..n {
            t[(i, n + j)] = -&(&scale * &rb.b[(i, j)]);
            let mut v = rb.b[(j, i)].clone();
            if i == j {
                v += &shift;
            }
            t[(n + i, j)] = &scale * &v;
        }
    }
    RMatrix::new(semidirect(&coadjoint(&rb.algebra)), Tensor2(t))
}

/// `ρ_B(x)ξ = ad*_{Bx}ξ - ad*_x B*ξ`, a representation of `g_B` on `g*`.
pub fn rho_b(rb: &RBStructure) -> Result<Representation> {
    let desc = rb.descendent()?;
    let l = &rb.algebra;
    let bt = rb.b.transpose();
    let mats = (0..rb.dim())
        .map(|i| {
            let e = unit_vec(rb.dim(), i);
            &l.coad(&rb.b.apply(&e)) - &(&l.coad(&e) * &bt)
        })
        .collect();
    Representation::new(desc, rb.dim(), mats)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualDescendentReport {
    pub rho_valid: bool,
    /// Descendent of the semidirect lift equals `g_B ⋉_{ρ_B} g*`.
    pub descendent_is_semidirect: bool,
    /// `(1/λ)I_S` (or `I_S` at λ = 0) is a Lie isomorphism from the dual algebra onto the descendent.
    pub scaling_is_iso: bool,
    /// Transported dual structure constants equal the scaled descendent ones.
    pub constants_match: bool,
}

impl DualDescendentReport {
    pub fn all_hold(&self) -> bool {
        self.rho_valid && self.descendent_is_semidirect && self.scaling_is_iso && self.constants_match
    }
}

/// Compares the dual algebra of the semidirect r-matrix with the descendent of the semidirect lift.
pub fn dual_descendent_check(rb: &RBStructure) -> Result<DualDescendentReport> {
    let rho = rho_b(rb)?;
    let q = semidirect_qrb(rb)?;
    let desc = q.rb.descendent()?;
    let r = r_semidirect(rb)?;
    let dual = dual_algebra(q.algebra(), &r);
    let i_s = q.i_s()?;
    let lam = &rb.weight;
    let s = if lam.is_zero() { GaussRat::one() } else { lam.inv()? };
    let map = i_s.scale(&s);
    Ok(DualDescendentReport {
        rho_valid: rho.validate().is_empty(),
        descendent_is_semidirect: desc == semidirect(&rho),
        scaling_is_iso: dual.is_isomorphism(&desc, &map),
        constants_match: dual.transport(&i_s)? == desc.scaled(&s),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbReflectionResiduals {
    /// `τ[τe_i, e_j] - [e_i, τe_j]` for failing pairs.
    pub homomorphism: Vec<(usize, usize, Vector)>,
    /// `λτ² - λ`.
    pub involution: Matrix,
    /// `τBτ - B + τB - Bτ`.
    pub compatibility: Matrix,
}

impl RbReflectionResiduals {
    pub fn is_empty(&self) -> bool {
        self.homomorphism.is_empty() && self.involution.is_zero() && self.compatibility.is_zero()
    }
}

pub fn rb_reflection_residuals(rb: &RBStructure, tau: &Matrix) -> Result<RbReflectionResiduals> {
    let l = &rb.algebra;
    if !l.is_automorphism(tau) {
        return Err(Error::NotAutomorphism);
    }
    let n = rb.dim();
    let mut homomorphism = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = unit_vec(n, i);
            let f = unit_vec(n, j);
            let a = tau.apply(&l.bracket(&tau.apply(&e), &f));
            let b = l.bracket(&e, &tau.apply(&f));
            let d: Vector = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            if d.iter().any(|x| !x.is_zero()) {
                homomorphism.push((i, j, d));
            }
        }
    }
    let lam = &rb.weight;
    let involution = &(tau * tau).scale(lam) - &Matrix::scalar(n, lam);
    let b = &rb.b;
    let compatibility = &(&(&(&(tau * b) * tau) - b) + &(tau * b)) - &(b * tau);
    Ok(RbReflectionResiduals { homomorphism, involution, compatibility })
}

/// `τ ⊕ (-τ*)` on `g ⊕ g*`.
pub fn lift_reflection(tau: &Matrix) -> Matrix {
    Matrix::block_diag(tau, &-&tau.transpose())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftEquivalence {
    pub residuals_vanish: bool,
    pub cre_vanishes: bool,
    pub forms_agree: bool,
}

/// Residuals of `τ` on the Rota-Baxter algebra against the reflection equation of the lifted map.
pub fn lift_equivalence(rb: &RBStructure, tau: &Matrix) -> Result<LiftEquivalence> {
    let res = rb_reflection_residuals(rb, tau)?;
    let r = r_semidirect(rb)?;
    let cre = cre_residual(&r.algebra, &r, &lift_reflection(tau))?;
    Ok(LiftEquivalence { residuals_vanish: res.is_empty(), cre_vanishes: cre.is_zero(), forms_agree: cre.forms_agree() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSubspaceReport {
    /// `Im(τ+1) ⊕ h^⊥` inside `g ⊕ g*`.
    pub subspace: Subspace,
    pub closed: bool,
    pub operator_stable: bool,
}

/// `Im(τ+1) ⊕ h^⊥` as a Rota-Baxter subalgebra of `g_B ⋉_{ρ_B} g*`.
pub fn lifted_fixed_subspace(rb: &RBStructure, tau: &Matrix) -> Result<LiftedSubspaceReport> {
    let res = rb_reflection_residuals(rb, tau)?;
    if !res.is_empty() {
        return Err(Error::NotRotaBaxter("map is not a reflection on the Rota-Baxter algebra".into()));
    }
    let one = Matrix::identity(rb.dim());
    let h = kernel(&(tau - &one));
    let subspace = image(&(tau + &one)).direct_sum(&crate::linalg::annihilator(&h));
    let q = semidirect_qrb(rb)?;
    let desc = q.rb.descendent()?;
    Ok(LiftedSubspaceReport {
        closed: desc.is_subalgebra(&subspace),
        operator_stable: subspace.map(&q.rb.b)?.is_subspace_of(&subspace),
        subspace,
    })
}
