//! Floating-point evaluation of multiplicative Poisson bivectors on matrix groups, reported in the
//! left-trivialized frame `π^L(g) = t - Ad_{g⁻¹}^{⊗2} t`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Representation};
use crate::linalg::Matrix;
use crate::relative::RelRB0;
use crate::rotabaxter::{r_from_quadratic, r_semidirect, QuadraticRB, RBStructure};
use crate::scalar::GaussRat;

pub type CMat = DMatrix<Complex64>;

pub const TOL_COMPOSITE: f64 = 1e-8;
pub const TOL_SINGLE: f64 = 1e-10;
pub const TOL_IDENTITY: f64 = 1e-12;

pub fn to_cmat(m: &Matrix) -> CMat {
    CMat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_complex64())
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn mexp(x: &CMat) -> Result<CMat> {
    if !finite(x) {
        return Err(Error::Numeric("non-finite input to exp".into()));
    }
    let n = x.nrows();
    let norm = (0..n).map(|i| x.row(i).iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a = x.map(|z| z * 2f64.powi(-s));
    let mut term = CMat::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=30 {
        term = (&term * &a).map(|z| z / k as f64);
        if max_abs(&term) == 0.0 {
            break;
        }
        sum += &term;
        if max_abs(&term) < f64::EPSILON * max_abs(&sum) {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    if finite(&sum) {
        Ok(sum)
    } else {
        Err(Error::Numeric("overflow in exp".into()))
    }
}

/// Float structure constants, with an optional faithful matrix basis.
#[derive(Clone, Debug)]
pub struct MatrixLieData {
    pub dim: usize,
    c: Vec<Complex64>,
    pub basis: Option<Vec<CMat>>,
}

impl MatrixLieData {
    pub fn new(l: &LieAlgebra, basis: Option<&[Matrix]>) -> Self {
        MatrixLieData {
            dim: l.dim(),
            c: l.dense().iter().map(GaussRat::to_complex64).collect(),
            basis: basis.map(|b| b.iter().map(to_cmat).collect()),
        }
    }

    fn c(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn ad(&self, x: &[Complex64]) -> CMat {
        let n = self.dim;
        CMat::from_fn(n, n, |k, j| (0..n).map(|i| x[i] * self.c(i, j, k)).sum())
    }

    /// Largest deviation between matrix commutators of the basis and the structure constants.
    pub fn basis_residual(&self) -> f64 {
        let Some(b) = &self.basis else { return 0.0 };
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut d = &b[i] * &b[j] - &b[j] * &b[i];
                for (k, bk) in b.iter().enumerate() {
                    d -= bk.map(|z| z * self.c(i, j, k));
                }
                worst = worst.max(max_abs(&d));
            }
        }
        worst
    }

    pub fn adjoint(&self, p: &GroupPoint) -> Result<CMat> {
        p.factors.iter().try_fold(CMat::identity(self.dim, self.dim), |acc, x| Ok(acc * mexp(&self.ad(x))?))
    }

    pub fn adjoint_inv(&self, p: &GroupPoint) -> Result<CMat> {
        p.factors.iter().rev().try_fold(CMat::identity(self.dim, self.dim), |acc, x| {
            Ok(acc * mexp(&self.ad(x).map(|z| -z))?)
        })
    }

    /// The group element itself, when a matrix basis is present.
    pub fn element(&self, p: &GroupPoint) -> Result<Option<CMat>> {
        let Some(b) = &self.basis else { return Ok(None) };
        let n = b[0].nrows();
        let mut g = CMat::identity(n, n);
        for x in &p.factors {
            let mut m = CMat::zeros(n, n);
            for (c, bi) in x.iter().zip(b) {
                m += bi.map(|z| z * c);
            }
            g *= mexp(&m)?;
        }
        Ok(Some(g))
    }
}

/// `exp(x₁)···exp(x_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPoint {
    pub factors: Vec<Vec<Complex64>>,
}

impl GroupPoint {
    pub fn identity() -> Self {
        GroupPoint { factors: Vec::new() }
    }

    pub fn mul(&self, o: &GroupPoint) -> GroupPoint {
        GroupPoint { factors: self.factors.iter().chain(&o.factors).cloned().collect() }
    }
}

/// `π^L(g) = t - Ad_{g⁻¹} t Ad_{g⁻¹}^T`.
pub fn pi_quadratic(data: &MatrixLieData, t: &CMat, g: &GroupPoint) -> Result<CMat> {
    let a = data.adjoint_inv(g)?;
    Ok(t - &a * t * a.transpose())
}

/// Skew part and full tensor of the r-matrix of a quadratic Rota-Baxter algebra.
pub fn quadratic_tensors(q: &QuadraticRB) -> Result<(CMat, CMat)> {
    let r = r_from_quadratic(q)?;
    let full = &r.tensor.0;
    let skew = (full - &full.transpose()).scale(&GaussRat::frac(1, 2));
    Ok((to_cmat(&skew), to_cmat(full)))
}

/// A group `G ⋉ V*` with a bivector `t` on `g ⋉ V*` and the bracket expected as linear part.
#[derive(Clone, Debug)]
pub struct SemidirectData {
    pub base: MatrixLieData,
    /// `ρ(e_i)` on `V`.
    pub rho: Vec<CMat>,
    pub t: CMat,
    /// Structure constants `[e_i, e_j] = Σ linear[i][j][k] e_k` on `V`.
    pub linear: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectPoint {
    pub g: GroupPoint,
    pub alpha: Vec<Complex64>,
}

fn skew_part(t: &Matrix) -> Matrix {
    (t - &t.transpose()).scale(&GaussRat::frac(1, 2))
}

impl SemidirectData {
    /// `G ⋉_{Ad*} g*` with the skew part of the semidirect r-matrix of `rb`; the linear part is the
    /// descendent bracket scaled by `1/λ` (unscaled at λ = 0).
    pub fn from_rb(rb: &RBStructure) -> Result<Self> {
        let r = r_semidirect(rb)?;
        let desc = rb.descendent()?;
        let s = if rb.weight.is_zero() { GaussRat::one() } else { rb.weight.inv()? };
        let l = &rb.algebra;
        Ok(SemidirectData {
            base: MatrixLieData::new(l, None),
            rho: (0..l.dim()).map(|i| to_cmat(&l.ad_basis(i))).collect(),
            t: to_cmat(&skew_part(&r.tensor.0)),
            linear: desc.dense().iter().map(|c| (c * &s).to_complex64()).collect(),
        })
    }

    /// `G ⋉_{ρ*} V*` with `r_T`; the linear part is `V_T`.
    pub fn from_relative(op: &RelRB0) -> Self {
        SemidirectData {
            base: MatrixLieData::new(&op.g, None),
            rho: op.rho.mats().iter().map(to_cmat).collect(),
            t: to_cmat(&op.r_t().tensor.0),
            linear: op.descendent().dense().iter().map(GaussRat::to_complex64).collect(),
        }
    }

    fn m(&self) -> usize {
        self.rho.first().map_or(0, |r| r.nrows())
    }

    fn rho_of(&self, x: &[Complex64]) -> CMat {
        let m = self.m();
        let mut out = CMat::zeros(m, m);
        for (c, r) in x.iter().zip(&self.rho) {
            out += r.map(|z| z * c);
        }
        out
    }

    fn rho_group(&self, p: &GroupPoint) -> Result<CMat> {
        let m = self.m();
        p.factors.iter().try_fold(CMat::identity(m, m), |acc, x| Ok(acc * mexp(&self.rho_of(x))?))
    }

    fn rho_group_inv(&self, p: &GroupPoint) -> Result<CMat> {
        let m = self.m();
        p.factors.iter().rev().try_fold(CMat::identity(m, m), |acc, x| {
            Ok(acc * mexp(&self.rho_of(x).map(|z| -z))?)
        })
    }

    /// `(g,α)(h,β) = (gh, α + ρ*_g β)`.
    pub fn mul(&self, a: &SemidirectPoint, b: &SemidirectPoint) -> Result<SemidirectPoint> {
        let dual = self.rho_group_inv(&a.g)?.transpose();
        let moved = &dual * nalgebra::DVector::from_column_slice(&b.alpha);
        let alpha = a.alpha.iter().zip(moved.iter()).map(|(x, y)| x + y).collect();
        Ok(SemidirectPoint { g: a.g.mul(&b.g), alpha })
    }

    /// `Ad_{(g,α)⁻¹}` with `Ad_{(g,α)}(x,β) = (Ad_g x, ρ*_g β - ρ*(Ad_g x)α)`.
    pub fn adjoint_inv(&self, p: &SemidirectPoint) -> Result<CMat> {
        let (n, m) = (self.base.dim, self.m());
        let ad = self.base.adjoint_inv(&p.g)?;
        let rho_g = self.rho_group(&p.g)?;
        let alpha = nalgebra::DVector::from_column_slice(&p.alpha);
        // (g,α)⁻¹ = (g⁻¹, -ρ*_{g⁻¹}α) and ρ*_{g⁻¹} = ρ_g^T
        let alpha_inv = -(rho_g.transpose() * alpha);
        let mut out = CMat::zeros(n + m, n + m);
        out.view_mut((0, 0), (n, n)).copy_from(&ad);
        out.view_mut((n, n), (m, m)).copy_from(&rho_g.transpose());
        for a in 0..n {
            let y: Vec<Complex64> = ad.column(a).iter().copied().collect();
            // -ρ*(y)α' = ρ(y)^T α'
            let col = self.rho_of(&y).transpose() * &alpha_inv;
            out.view_mut((n, a), (m, 1)).copy_from(&col);
        }
        Ok(out)
    }

    pub fn pi(&self, p: &SemidirectPoint) -> Result<CMat> {
        let a = self.adjoint_inv(p)?;
        Ok(&self.t - &a * &self.t * a.transpose())
    }

    /// Largest gap between the `V*⊗V*` block of `π^L(e,α)` and `<α, [u,v]>`.
    pub fn linear_residual(&self, alpha: &[Complex64]) -> Result<f64> {
        let (n, m) = (self.base.dim, self.m());
        let pi = self.pi(&SemidirectPoint { g: GroupPoint::identity(), alpha: alpha.to_vec() })?;
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let expect: Complex64 = (0..m).map(|k| alpha[k] * self.linear[(i * m + j) * m + k]).sum();
                worst = worst.max((pi[(n + i, n + j)] - expect).norm());
            }
        }
        Ok(worst)
    }
}

pub fn pi_semidirect(data: &SemidirectData, p: &SemidirectPoint) -> Result<CMat> {
    data.pi(p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

impl Residual {
    pub fn passes(&self) -> bool {
        self.value < self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub formula: String,
    pub samples: usize,
    pub seed: u64,
    /// Empty when no samples were drawn.
    pub residuals: Vec<Residual>,
}

impl SampleReport {
    pub fn passes(&self) -> bool {
        self.residuals.iter().all(Residual::passes)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.name == name).map(|r| r.value)
    }
}

impl fmt::Display for SampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formula {} frame left-trivialized samples {} seed {}", self.formula, self.samples, self.seed)?;
        for r in &self.residuals {
            let status = if r.passes() { "pass" } else { "fail" };
            writeln!(f, "  {} {:.6e} tol {:.0e} {}", r.name, r.value, r.tolerance, status)?;
        }
        Ok(())
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Coefficients uniform in `[-1,1]`, rescaled into the unit ball.
fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    v.into_iter().map(|x| Complex64::new(x / norm, 0.0)).collect()
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> GroupPoint {
    GroupPoint { factors: vec![random_element(rng, dim), random_element(rng, dim)] }
}

fn relative_gap(lhs: &CMat, rhs: &CMat) -> f64 {
    max_abs(&(lhs - rhs)) / max_abs(lhs).max(1.0)
}

fn skew_gap(pi: &CMat) -> f64 {
    max_abs(&(pi + pi.transpose()))
}

fn fold_max(values: Vec<Result<[f64; 5]>>) -> Result<[f64; 5]> {
    values.into_iter().try_fold([0.0f64; 5], |acc, v| {
        let v = v?;
        Ok([0, 1, 2, 3, 4].map(|i| acc[i].max(v[i])))
    })
}

/// Sampled residuals of `pi_quadratic`: skew-symmetry, value at `e`, multiplicativity over pairs,
/// independence from the symmetric part of `r`, and the matrix-basis check when present.
pub fn sample_quadratic(data: &MatrixLieData, t_skew: &CMat, t_full: &CMat, n_samples: usize, seed: u64) -> Result<SampleReport> {
    let mut report = SampleReport { formula: "quadratic".into(), samples: n_samples, seed, residuals: Vec::new() };
    if n_samples == 0 {
        return Ok(report);
    }
    let per: Vec<Result<[f64; 5]>> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = random_point(&mut rng, data.dim);
            let h = random_point(&mut rng, data.dim);
            let pg = pi_quadratic(data, t_skew, &g)?;
            let ph = pi_quadratic(data, t_skew, &h)?;
            let pgh = pi_quadratic(data, t_skew, &g.mul(&h))?;
            let a = data.adjoint_inv(&h)?;
            let rhs = &ph + &a * &pg * a.transpose();
            let full = pi_quadratic(data, t_full, &g)?;
            let adjoint_gap = match data.element(&g)? {
                Some(el) => {
                    let ad = data.adjoint(&g)?;
                    let inv = data.element(&GroupPoint { factors: g.factors.iter().rev().map(|x| x.iter().map(|z| -z).collect()).collect() })?.expect("basis present");
                    let b = data.basis.as_ref().expect("basis present");
                    let mut worst = 0.0f64;
                    for (j, bj) in b.iter().enumerate() {
                        let mut d = &el * bj * &inv;
                        for (k, bk) in b.iter().enumerate() {
                            d -= bk.map(|z| z * ad[(k, j)]);
                        }
                        worst = worst.max(max_abs(&d));
                    }
                    worst
                }
                None => 0.0,
            };
            Ok([skew_gap(&pg), relative_gap(&pgh, &rhs), max_abs(&(&full - &pg)), adjoint_gap, 0.0])
        })
        .collect();
    let worst = fold_max(per)?;
    let at_identity = max_abs(&pi_quadratic(data, t_skew, &GroupPoint::identity())?);
    report.residuals = vec![
        Residual { name: "skew-symmetry", value: worst[0], tolerance: TOL_SINGLE },
        Residual { name: "identity", value: at_identity, tolerance: TOL_IDENTITY },
        Residual { name: "multiplicativity", value: worst[1], tolerance: TOL_COMPOSITE },
        Residual { name: "symmetric-part-cancels", value: worst[2], tolerance: TOL_COMPOSITE },
        Residual { name: "structure-constants", value: data.basis_residual(), tolerance: TOL_SINGLE },
        Residual { name: "adjoint-vs-conjugation", value: worst[3], tolerance: TOL_COMPOSITE },
    ];
    Ok(report)
}

/// Sampled residuals of `pi_semidirect`, including the linear part at `(e, α)`.
pub fn sample_semidirect(data: &SemidirectData, n_samples: usize, seed: u64) -> Result<SampleReport> {
    let mut report = SampleReport { formula: "semidirect".into(), samples: n_samples, seed, residuals: Vec::new() };
    if n_samples == 0 {
        return Ok(report);
    }
    let (n, m) = (data.base.dim, data.m());
    let per: Vec<Result<[f64; 5]>> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = SemidirectPoint { g: random_point(&mut rng, n), alpha: random_element(&mut rng, m) };
            let h = SemidirectPoint { g: random_point(&mut rng, n), alpha: random_element(&mut rng, m) };
            let pg = data.pi(&g)?;
            let ph = data.pi(&h)?;
            let pgh = data.pi(&data.mul(&g, &h)?)?;
            let a = data.adjoint_inv(&h)?;
            let rhs = &ph + &a * &pg * a.transpose();
            let linear = data.linear_residual(&g.alpha)?;
            Ok([skew_gap(&pg), relative_gap(&pgh, &rhs), linear, 0.0, 0.0])
        })
        .collect();
    let worst = fold_max(per)?;
    let at_identity = max_abs(&data.pi(&SemidirectPoint { g: GroupPoint::identity(), alpha: vec![Complex64::zero(); m] })?);
    report.residuals = vec![
        Residual { name: "skew-symmetry", value: worst[0], tolerance: TOL_SINGLE },
        Residual { name: "identity", value: at_identity, tolerance: TOL_IDENTITY },
        Residual { name: "multiplicativity", value: worst[1], tolerance: TOL_COMPOSITE },
        Residual { name: "linear-part", value: worst[2], tolerance: TOL_SINGLE },
    ];
    Ok(report)
}

/// Both formulas on a quadratic Rota-Baxter algebra: `π` on `G` and `π` on `G ⋉_{Ad*} g*`.
pub fn sample_suite(q: &QuadraticRB, basis: Option<&[Matrix]>, n_samples: usize, seed: u64) -> Result<Vec<SampleReport>> {
    let data = MatrixLieData::new(q.algebra(), basis);
    let (skew, full) = quadratic_tensors(q)?;
    let semi = SemidirectData::from_rb(&q.rb)?;
    Ok(vec![sample_quadratic(&data, &skew, &full, n_samples, seed)?, sample_semidirect(&semi, n_samples, seed)?])
}

/// Float copy of a representation, for callers building their own [`SemidirectData`].
pub fn rep_to_float(rho: &Representation) -> Vec<CMat> {
    rho.mats().iter().map(to_cmat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(mexp(&CMat::zeros(3, 3)).unwrap(), CMat::identity(3, 3));
    }

    #[test]
    fn exp_of_diagonal() {
        let x = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-2.0)]));
        let e = mexp(&x).unwrap();
        assert!((e[(0, 0)].re - 1f64.exp()).abs() < 1e-14);
        assert!((e[(1, 1)].re - (-2f64).exp()).abs() < 1e-15);
        assert_eq!(e[(0, 1)], Complex64::zero());
    }

    #[test]
    fn exp_of_nilpotent_is_polynomial() {
        let mut x = CMat::zeros(3, 3);
        x[(0, 1)] = c(0.25);
        x[(1, 2)] = c(0.25);
        let e = mexp(&x).unwrap();
        assert_eq!(e[(0, 2)], c(0.25 * 0.25 / 2.0));
        assert_eq!(e[(0, 1)], c(0.25));
        assert_eq!(e[(2, 0)], Complex64::zero());
    }

    #[test]
    fn exp_rejects_non_finite() {
        let mut x = CMat::zeros(1, 1);
        x[(0, 0)] = c(f64::NAN);
        assert!(mexp(&x).is_err());
        x[(0, 0)] = c(1e6);
        assert!(mexp(&x).is_err());
    }
}
