//! Exact example instances with machine-checkable expected facts.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bialgebra::{cre_residual, cybe_bracket, fixed_point_invariance, is_coideal, symmetric_invariance, BialgebraKind};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{kernel, solve, Matrix, Subspace, Vector};
use crate::relative::{PostLie, PreLie, RelRB0, RelRBW};
use crate::rotabaxter::{
    construct_bowtie_qrb, construct_direct_sum_qrb, construct_double_qrb, dual_descendent_check, fixed_and_orthogonal,
    lift_equivalence, lifted_fixed_subspace, orthogonal_fixed_checks, r_from_quadratic, r_semidirect,
    rb_reflection_residuals, reflection_residuals, QuadraticRB, RBStructure, ReflectionVariant,
};
use crate::scalar::GaussRat;
use crate::tensor::Tensor2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedReflection {
    pub name: String,
    pub tau: Matrix,
    pub variant: ReflectionVariant,
}

/// A pair `(σ, τ)` acting on the target and source of a relative operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPair {
    pub name: String,
    pub sigma: Matrix,
    pub tau: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Quadratic { qrb: QuadraticRB, reflections: Vec<NamedReflection> },
    RotaBaxter { rb: RBStructure, reflections: Vec<(String, Matrix)> },
    Relative0 { op: RelRB0, pairs: Vec<NamedPair> },
    RelativeW { op: RelRBW, pairs: Vec<NamedPair> },
    PreLie { alg: PreLie, involutions: Vec<Matrix> },
    PostLie { alg: PostLie, involutions: Vec<Matrix> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fact {
    QuadraticValid,
    RbValid,
    /// `[e_i, e_j]_B` equals `value`.
    DescendentBracket { i: usize, j: usize, value: Vector },
    /// The operator kills these basis vectors.
    OperatorVanishesOn(Vec<usize>),
    /// The form vanishes on the span of these basis vectors.
    Isotropic(Vec<usize>),
    CybeZero,
    Kind(BialgebraKind),
    /// A reflection satisfies (or fails) its variant.
    ReflectionHolds { name: String, holds: bool },
    CreZero { name: String },
    /// `(τ-1)(B+λ)(τ-1)` equals `value`.
    SymmetricCore { name: String, value: Matrix },
    FixedPointInvariance { name: String },
    FixedDim { name: String, dim: usize },
    FixedSpaceIs { name: String, space: Subspace },
    /// The `S`-orthogonal of the fixed set is a descendent subalgebra; `ideal` records whether it is an ideal.
    OrthogonalFixed { name: String, ideal: bool },
    Coideal { name: String },
    SemidirectR(Tensor2),
    DualDescendentIso,
    /// Residuals of a map as a reflection of a Rota-Baxter algebra vanish (or not).
    RbReflection { name: String, holds: bool },
    LiftedSubspaceClosed { name: String },
    PreLieAxioms,
    PostLieAxioms,
    RelativeValid,
    InducedCybeZero,
    WeightZeroDual,
    RelativeReflection { name: String },
    /// `g ⊕ k*` is a subalgebra whose annihilator is an ideal of the dual, with the induced quotient bracket.
    SubBialgebra,
    ExplicitDual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub payload: Payload,
    pub expected: Vec<Fact>,
}

fn find_reflection<'a>(reflections: &'a [NamedReflection], name: &str) -> Result<&'a NamedReflection> {
    reflections.iter().find(|r| r.name == name).ok_or_else(|| Error::Parse(format!("unknown reflection {name}")))
}

fn find_pair<'a>(pairs: &'a [NamedPair], name: &str) -> Result<&'a NamedPair> {
    pairs.iter().find(|r| r.name == name).ok_or_else(|| Error::Parse(format!("unknown pair {name}")))
}

fn fact_label(f: &Fact) -> String {
    match f {
        Fact::DescendentBracket { i, j, .. } => format!("descendent-bracket[{i},{j}]"),
        Fact::OperatorVanishesOn(v) => format!("operator-vanishes-on{v:?}"),
        Fact::Isotropic(v) => format!("isotropic{v:?}"),
        Fact::Kind(k) => format!("kind-{k:?}").to_lowercase(),
        Fact::ReflectionHolds { name, holds } => format!("reflection-{name}-{}", if *holds { "holds" } else { "rejected" }),
        Fact::CreZero { name } => format!("cre-{name}"),
        Fact::SymmetricCore { name, .. } => format!("symmetric-core-{name}"),
        Fact::FixedPointInvariance { name } => format!("fixed-point-invariance-{name}"),
        Fact::FixedDim { name, dim } => format!("fixed-dim-{name}={dim}"),
        Fact::FixedSpaceIs { name, .. } => format!("fixed-space-{name}"),
        Fact::OrthogonalFixed { name, ideal } => format!("orthogonal-fixed-{name}-{}", if *ideal { "ideal" } else { "not-ideal" }),
        Fact::Coideal { name } => format!("coideal-{name}"),
        Fact::RbReflection { name, holds } => format!("rb-reflection-{name}-{}", if *holds { "holds" } else { "rejected" }),
        Fact::LiftedSubspaceClosed { name } => format!("lifted-subspace-{name}"),
        Fact::RelativeReflection { name } => format!("relative-reflection-{name}"),
        other => format!("{other:?}").split(['(', ' ']).next().unwrap_or_default().to_string(),
    }
}

impl CatalogEntry {
    /// Checks every expected fact; returns `(label, passed)` in declaration order.
    pub fn verify(&self) -> Result<Vec<(String, bool)>> {
        self.expected.iter().map(|f| Ok((fact_label(f), self.check(f)?))).collect()
    }

    pub fn all_pass(&self) -> Result<bool> {
        Ok(self.verify()?.iter().all(|(_, ok)| *ok))
    }

    fn check(&self, fact: &Fact) -> Result<bool> {
        match &self.payload {
            Payload::Quadratic { qrb, reflections } => check_quadratic(qrb, reflections, fact),
            Payload::RotaBaxter { rb, reflections } => check_rb(rb, reflections, fact),
            Payload::Relative0 { op, pairs } => check_rel0(op, pairs, fact),
            Payload::RelativeW { op, pairs } => check_relw(op, pairs, fact),
            Payload::PreLie { alg, .. } => match fact {
                Fact::PreLieAxioms => Ok(alg.residual().is_empty()),
                _ => check_rel0(&alg.as_relrb0(), &[], fact),
            },
            Payload::PostLie { alg, .. } => match fact {
                Fact::PostLieAxioms => Ok(alg.residuals().is_empty()),
                _ => check_relw(&alg.as_relrbw()?, &[], fact),
            },
        }
    }
}

fn unsupported(fact: &Fact) -> Result<bool> {
    Err(Error::Parse(format!("fact {} does not apply to this payload", fact_label(fact))))
}

fn check_quadratic(q: &QuadraticRB, reflections: &[NamedReflection], fact: &Fact) -> Result<bool> {
    let n = q.dim();
    Ok(match fact {
        Fact::QuadraticValid => q.validate().is_valid(),
        Fact::RbValid => q.rb.is_valid(),
        Fact::DescendentBracket { i, j, value } => &q.rb.descendent()?.basis_bracket_vec(*i, *j) == value,
        Fact::OperatorVanishesOn(idx) => idx.iter().all(|&i| q.rb.b.col(i).iter().all(Zero::is_zero)),
        Fact::Isotropic(idx) => idx.iter().all(|&i| idx.iter().all(|&j| q.form.gram[(i, j)].is_zero())),
        Fact::CybeZero => cybe_bracket(q.algebra(), &r_from_quadratic(q)?).is_zero(),
        Fact::Kind(k) => symmetric_invariance(q.algebra(), &r_from_quadratic(q)?).kind == *k,
        Fact::ReflectionHolds { name, holds } => {
            let r = find_reflection(reflections, name)?;
            match reflection_residuals(q, &r.tau) {
                Ok(res) => res.holds(r.variant) == *holds,
                Err(Error::NotAutomorphism) => !holds,
                Err(e) => return Err(e),
            }
        }
        Fact::CreZero { name } => {
            let r = find_reflection(reflections, name)?;
            let c = cre_residual(q.algebra(), &r_from_quadratic(q)?, &r.tau)?;
            c.is_zero() && c.forms_agree()
        }
        Fact::SymmetricCore { name, value } => {
            let r = find_reflection(reflections, name)?;
            &reflection_residuals(q, &r.tau)?.symmetric_core == value
        }
        Fact::FixedPointInvariance { name } => {
            let r = find_reflection(reflections, name)?;
            let h = kernel(&(&r.tau - &Matrix::identity(n)));
            fixed_point_invariance(q.algebra(), &r_from_quadratic(q)?, &r.tau, &h)?.passes()
        }
        Fact::FixedDim { name, dim } => {
            let r = find_reflection(reflections, name)?;
            fixed_and_orthogonal(q, &r.tau)?.h.dim() == *dim
        }
        Fact::FixedSpaceIs { name, space } => {
            let r = find_reflection(reflections, name)?;
            &fixed_and_orthogonal(q, &r.tau)?.h == space
        }
        Fact::OrthogonalFixed { name, ideal } => {
            let r = find_reflection(reflections, name)?;
            let rep = orthogonal_fixed_checks(q, &r.tau)?;
            rep.descendent_closed && rep.ideal == *ideal && rep.non_ideal_witness.is_some() != *ideal
        }
        Fact::Coideal { name } => {
            let r = find_reflection(reflections, name)?;
            let h = kernel(&(&r.tau - &Matrix::identity(n)));
            is_coideal(q.algebra(), &r_from_quadratic(q)?, &h)
        }
        _ => return unsupported(fact),
    })
}

fn check_rb(rb: &RBStructure, reflections: &[(String, Matrix)], fact: &Fact) -> Result<bool> {
    let find = |name: &str| {
        reflections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::Parse(format!("unknown reflection {name}")))
    };
    Ok(match fact {
        Fact::RbValid => rb.is_valid(),
        Fact::DescendentBracket { i, j, value } => &rb.descendent()?.basis_bracket_vec(*i, *j) == value,
        Fact::SemidirectR(t) => &r_semidirect(rb)?.tensor == t,
        Fact::CybeZero => {
            let r = r_semidirect(rb)?;
            cybe_bracket(&r.algebra, &r).is_zero()
        }
        Fact::DualDescendentIso => dual_descendent_check(rb)?.all_hold(),
        Fact::RbReflection { name, holds } => {
            let tau = find(name)?;
            match rb_reflection_residuals(rb, tau) {
                Ok(res) => res.is_empty() == *holds,
                Err(Error::NotAutomorphism) => !holds,
                Err(e) => return Err(e),
            }
        }
        Fact::CreZero { name } => {
            let eq = lift_equivalence(rb, find(name)?)?;
            eq.residuals_vanish && eq.cre_vanishes && eq.forms_agree
        }
        Fact::Coideal { name } => {
            let lift = crate::rotabaxter::lift_reflection(find(name)?);
            let r = r_semidirect(rb)?;
            let h = kernel(&(&lift - &Matrix::identity(lift.rows())));
            is_coideal(&r.algebra, &r, &h)
        }
        Fact::LiftedSubspaceClosed { name } => {
            let rep = lifted_fixed_subspace(rb, find(name)?)?;
            rep.closed && rep.operator_stable
        }
        _ => return unsupported(fact),
    })
}

fn check_rel0(op: &RelRB0, pairs: &[NamedPair], fact: &Fact) -> Result<bool> {
    Ok(match fact {
        Fact::RelativeValid => op.is_valid(),
        Fact::InducedCybeZero => {
            let r = op.r_t();
            cybe_bracket(&r.algebra, &r).is_zero()
        }
        Fact::WeightZeroDual => {
            let rep = op.dual_semidirect_check();
            rep.skew && rep.cybe_zero && rep.equal
        }
        Fact::RelativeReflection { name } => {
            let p = find_pair(pairs, name)?;
            op.reflection_residuals(&p.sigma, &p.tau)?.is_empty()
        }
        Fact::CreZero { name } => {
            let p = find_pair(pairs, name)?;
            let c = op.lifted_cre(&p.sigma, &p.tau)?;
            c.is_zero() && c.forms_agree()
        }
        Fact::Coideal { name } => {
            let p = find_pair(pairs, name)?;
            op.lifted_coideal(&p.sigma, &p.tau)
        }
        Fact::LiftedSubspaceClosed { name } => {
            let p = find_pair(pairs, name)?;
            op.fixed_subspace(&p.sigma, &p.tau)?.1
        }
        _ => return unsupported(fact),
    })
}

fn check_relw(op: &RelRBW, pairs: &[NamedPair], fact: &Fact) -> Result<bool> {
    Ok(match fact {
        Fact::RelativeValid => op.is_valid(),
        Fact::RbValid => op.bar_lift().is_valid(),
        Fact::InducedCybeZero => {
            let r = op.r_bar()?;
            cybe_bracket(&r.algebra, &r).is_zero()
        }
        Fact::ExplicitDual => op.explicit_dual_check()?.all_hold(),
        Fact::SubBialgebra => op.sub_bialgebra_check()?.structure_holds(),
        Fact::RelativeReflection { name } => {
            let p = find_pair(pairs, name)?;
            op.reflection_residuals(&p.sigma, &p.tau)?.is_empty()
        }
        Fact::CreZero { name } => {
            let p = find_pair(pairs, name)?;
            let chain = op.reflection_chain(&p.sigma, &p.tau)?;
            chain.residuals_vanish && chain.rb_reflection_vanishes && chain.cre_vanishes && chain.forms_agree
        }
        Fact::Coideal { name } => {
            let p = find_pair(pairs, name)?;
            let lift = RelRBW::lift(&p.sigma, &p.tau);
            let r = op.r_bar()?;
            let h = kernel(&(&lift - &Matrix::identity(lift.rows())));
            is_coideal(&r.algebra, &r, &h)
        }
        _ => return unsupported(fact),
    })
}

fn complex_commutator(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

/// Real coordinates `(re, im)` of every entry.
fn realify(m: &Matrix) -> Vector {
    m.entries().iter().flat_map(|z| [z.real_part(), z.imag_part()]).collect()
}

struct MatrixBasis {
    mats: Vec<Matrix>,
    coords: Matrix,
    real: bool,
}

impl MatrixBasis {
    fn new(mats: Vec<Matrix>, real: bool) -> Self {
        let cols: Vec<Vector> = if real {
            mats.iter().map(realify).collect()
        } else {
            mats.iter().map(|m| m.entries().to_vec()).collect()
        };
        let len = cols[0].len();
        MatrixBasis { coords: Matrix::from_cols(len, &cols).expect("uniform"), mats, real }
    }

    fn coordinates(&self, m: &Matrix) -> Result<Vector> {
        let target = if self.real { realify(m) } else { m.entries().to_vec() };
        solve(&self.coords, &target).ok_or_else(|| Error::Numeric("matrix outside the span of the basis".into()))
    }

    fn algebra(&self) -> Result<LieAlgebra> {
        let d = self.mats.len();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                brackets.push((i, j, self.coordinates(&complex_commutator(&self.mats[i], &self.mats[j]))?));
            }
        }
        LieAlgebra::from_brackets(d, &brackets)
    }

    fn linear_map(&self, f: impl Fn(&Matrix) -> Matrix) -> Result<Matrix> {
        let cols = self.mats.iter().map(|m| self.coordinates(&f(m))).collect::<Result<Vec<_>>>()?;
        Matrix::from_cols(self.mats.len(), &cols)
    }

    fn gram(&self, f: impl Fn(&Matrix, &Matrix) -> GaussRat) -> Matrix {
        let d = self.mats.len();
        Matrix::from_fn(d, d, |i, j| f(&self.mats[i], &self.mats[j]))
    }
}

fn elementary(n: usize, i: usize, j: usize, c: GaussRat) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = c;
    m
}

fn trace(m: &Matrix) -> GaussRat {
    (0..m.rows()).fold(GaussRat::zero(), |acc, i| acc + &m[(i, i)])
}

fn neg_conj_transpose(m: &Matrix) -> Matrix {
    Matrix::from_fn(m.cols(), m.rows(), |i, j| -&m[(j, i)].conj())
}

fn q(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

fn chevalley(d: usize) -> Matrix {
    debug_assert_eq!(d, 3);
    Matrix::from_i64(&[&[-1, 0, 0], &[0, 0, -1], &[0, -1, 0]])
}

/// `H, X, Y` as 2×2 matrices.
pub fn sl2_matrices() -> Vec<Matrix> {
    vec![Matrix::from_i64(&[&[1, 0], &[0, -1]]), elementary(2, 0, 1, q(1)), elementary(2, 1, 0, q(1))]
}

/// `sl(2,ℂ)` with basis `H, X, Y`, the form `8aa' + 4(bc' + cb')`, `B(aH+bX+cY) = -(λ/2)aH - λbX`
/// and the reflection `U ↦ -U^T`.
pub fn sl2_example(lambda: &GaussRat) -> Result<CatalogEntry> {
    if lambda.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let basis = MatrixBasis::new(sl2_matrices(), false);
    let algebra = basis.algebra()?;
    let gram = basis.gram(|a, b| &trace(&(a * b)) * &q(4));
    let half = GaussRat::frac(1, 2);
    let b = Matrix::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => -&(&half * lambda),
        (1, 1) => -lambda,
        _ => GaussRat::zero(),
    });
    let tau = basis.linear_map(|u| -&u.transpose())?;
    let qrb = QuadraticRB::new(RBStructure::new(algebra, b, lambda.clone())?, gram)?;
    let one = Matrix::identity(3);
    let sym_core = (&one - &tau).scale(lambda);
    let name = "transpose".to_string();
    let expected = vec![
        Fact::QuadraticValid,
        Fact::DescendentBracket { i: 0, j: 1, value: vec![q(0), -lambda, q(0)] },
        Fact::DescendentBracket { i: 0, j: 2, value: vec![q(0), q(0), -lambda] },
        Fact::DescendentBracket { i: 1, j: 2, value: vec![q(0); 3] },
        Fact::CybeZero,
        Fact::Kind(BialgebraKind::Factorizable),
        Fact::ReflectionHolds { name: name.clone(), holds: true },
        Fact::SymmetricCore { name: name.clone(), value: sym_core },
        Fact::FixedPointInvariance { name: name.clone() },
        Fact::FixedDim { name: name.clone(), dim: 1 },
        Fact::OrthogonalFixed { name: name.clone(), ideal: false },
        Fact::Coideal { name: name.clone() },
    ];
    Ok(CatalogEntry {
        name: "sl2".into(),
        payload: Payload::Quadratic {
            qrb,
            reflections: vec![NamedReflection { name, tau, variant: ReflectionVariant::RelaxedAd }],
        },
        expected,
    })
}

/// `su(n)` basis followed by `sb(n,ℂ)` basis, as complex matrices.
pub fn sln_basis(n: usize) -> Vec<Matrix> {
    let i = GaussRat::i();
    let mut su = Vec::new();
    let mut sb = Vec::new();
    for j in 0..n - 1 {
        let d = &elementary(n, j, j, q(1)) - &elementary(n, j + 1, j + 1, q(1));
        su.push(d.scale(&i));
        sb.push(d);
    }
    for j in 0..n {
        for k in (j + 1)..n {
            su.push(&elementary(n, j, k, q(1)) - &elementary(n, k, j, q(1)));
            su.push(&elementary(n, j, k, i.clone()) + &elementary(n, k, j, i.clone()));
            sb.push(elementary(n, j, k, q(1)));
            sb.push(elementary(n, j, k, i.clone()));
        }
    }
    su.extend(sb);
    su
}

/// Realified `sl(n,ℂ) = su(n) ⊕ sb(n,ℂ)` with `S = Im tr(XY)`, `B = -λ·(projection onto sb)` and
/// the reflection `X ↦ -X̄^T`.
pub fn sln_realified(n: usize, lambda: &GaussRat) -> Result<CatalogEntry> {
    if !(2..=4).contains(&n) {
        return Err(Error::Dimension(format!("n = {n} outside 2..=4")));
    }
    if lambda.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let basis = MatrixBasis::new(sln_basis(n), true);
    let algebra = basis.algebra()?;
    let d = algebra.dim();
    let half = d / 2;
    let gram = basis.gram(|a, b| trace(&(a * b)).imag_part());
    let b = Matrix::from_fn(d, d, |i, j| if i == j && i >= half { -lambda } else { GaussRat::zero() });
    let tau = basis.linear_map(neg_conj_transpose)?;
    let qrb = QuadraticRB::new(RBStructure::new(algebra, b, lambda.clone())?, gram)?;
    let name = "conj-transpose".to_string();
    let su: Vec<usize> = (0..half).collect();
    let sb: Vec<usize> = (half..d).collect();
    let mut expected = vec![
        Fact::QuadraticValid,
        Fact::OperatorVanishesOn(su.clone()),
        Fact::Isotropic(su.clone()),
        Fact::Isotropic(sb.clone()),
        Fact::CybeZero,
        Fact::Kind(BialgebraKind::Factorizable),
        Fact::ReflectionHolds { name: name.clone(), holds: true },
        Fact::CreZero { name: name.clone() },
        Fact::FixedDim { name: name.clone(), dim: n * n - 1 },
        Fact::FixedSpaceIs { name: name.clone(), space: Subspace::coordinate(d, su.clone()) },
        Fact::FixedPointInvariance { name: name.clone() },
        Fact::Coideal { name: name.clone() },
    ];
    // [X,Y]_B = λ[X₁,Y₁] - λ[X₂,Y₂] on basis pairs from the same summand
    let l = qrb.algebra();
    for part in [&su, &sb] {
        let sign = if part[0] < half { lambda.clone() } else { -lambda };
        for (a, &i) in part.iter().enumerate() {
            for &j in &part[a + 1..] {
                let value = l.basis_bracket_vec(i, j).iter().map(|c| c * &sign).collect();
                expected.push(Fact::DescendentBracket { i, j, value });
            }
        }
    }
    Ok(CatalogEntry {
        name: format!("sl{n}-realified"),
        payload: Payload::Quadratic {
            qrb,
            reflections: vec![NamedReflection { name, tau, variant: ReflectionVariant::Skew }],
        },
        expected,
    })
}

fn quadratic_of(entry: &CatalogEntry) -> Result<&QuadraticRB> {
    match &entry.payload {
        Payload::Quadratic { qrb, .. } => Ok(qrb),
        _ => Err(Error::NotQuadratic(format!("{} has no quadratic payload", entry.name))),
    }
}

fn construction_entry(name: String, qrb: QuadraticRB, tau: Matrix, extra: Vec<Fact>) -> CatalogEntry {
    let r = "swap-like".to_string();
    let mut expected = vec![
        Fact::QuadraticValid,
        Fact::CybeZero,
        Fact::Kind(BialgebraKind::Factorizable),
        Fact::ReflectionHolds { name: r.clone(), holds: true },
        Fact::CreZero { name: r.clone() },
        Fact::FixedPointInvariance { name: r.clone() },
        Fact::Coideal { name: r.clone() },
    ];
    expected.extend(extra);
    CatalogEntry {
        name,
        payload: Payload::Quadratic { qrb, reflections: vec![NamedReflection { name: r, tau, variant: ReflectionVariant::Skew }] },
        expected,
    }
}

/// `(g ⊕ g, B̂, Ŝ)` with the swap reflection, whose fixed set is the diagonal.
pub fn direct_sum_swap(base: &CatalogEntry) -> Result<CatalogEntry> {
    let q = quadratic_of(base)?;
    let (qrb, tau) = construct_direct_sum_qrb(q)?;
    let n = q.dim();
    let diag: Vec<Vector> = (0..n)
        .map(|i| {
            let mut v = vec![GaussRat::zero(); 2 * n];
            v[i] = GaussRat::one();
            v[n + i] = GaussRat::one();
            v
        })
        .collect();
    let r = "swap-like".to_string();
    let extra = vec![
        Fact::FixedSpaceIs { name: r.clone(), space: Subspace::span(2 * n, &diag) },
        Fact::OrthogonalFixed { name: r, ideal: true },
    ];
    Ok(construction_entry(format!("{}-directsum", base.name), qrb, tau, extra))
}

pub fn bowtie_entry(base: &CatalogEntry) -> Result<CatalogEntry> {
    let (qrb, tau) = construct_bowtie_qrb(quadratic_of(base)?)?;
    Ok(construction_entry(format!("{}-bowtie", base.name), qrb, tau, Vec::new()))
}

pub fn double_entry(base: &CatalogEntry) -> Result<CatalogEntry> {
    let d = construct_double_qrb(quadratic_of(base)?)?;
    Ok(construction_entry(format!("{}-double", base.name), d.qrb, d.tau, Vec::new()))
}

/// `B = -1` of weight 1 on `l`; `-1` is listed as a reflection that must be rejected unless `l` is abelian.
pub fn minus_identity(l: &LieAlgebra, involutions: &[(String, Matrix)]) -> Result<CatalogEntry> {
    let n = l.dim();
    let rb = RBStructure::new(l.clone(), -&Matrix::identity(n), GaussRat::one())?;
    let mut t = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        t[(i, n + i)] = GaussRat::one();
    }
    let mut reflections = involutions.to_vec();
    let mut expected = vec![Fact::RbValid, Fact::SemidirectR(Tensor2(t)), Fact::CybeZero, Fact::DualDescendentIso];
    for (name, _) in involutions {
        expected.push(Fact::RbReflection { name: name.clone(), holds: true });
        expected.push(Fact::CreZero { name: name.clone() });
        expected.push(Fact::Coideal { name: name.clone() });
        expected.push(Fact::LiftedSubspaceClosed { name: name.clone() });
    }
    reflections.push(("minus-one".into(), -&Matrix::identity(n)));
    expected.push(Fact::RbReflection { name: "minus-one".into(), holds: l.is_abelian() });
    Ok(CatalogEntry { name: "minus-identity".into(), payload: Payload::RotaBaxter { rb, reflections }, expected })
}

/// Bare `sl(2,ℂ)` in the basis `H, X, Y`.
pub fn sl2_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, vec![q(0), q(2), q(0)]), (0, 2, vec![q(0), q(0), q(-2)]), (1, 2, vec![q(1), q(0), q(0)])])
        .expect("sl2")
}

pub fn minus_identity_sl2() -> Result<CatalogEntry> {
    let mut e = minus_identity(&sl2_algebra(), &[("chevalley".into(), chevalley(3))])?;
    e.name = "minus-identity-sl2".into();
    Ok(e)
}

/// Post-Lie product `x ▷ y = -[x,y]` on `l`, seen as a relative operator of weight `λ` via `λ·1`.
pub fn negative_bracket_postlie(l: &LieAlgebra) -> PostLie {
    let n = l.dim();
    let mut a = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                a.push(-l.c(i, j, k));
            }
        }
    }
    PostLie::new(l.clone(), a).expect("sized")
}

fn relw_facts(pairs: &[NamedPair]) -> Vec<Fact> {
    let mut f = vec![Fact::RelativeValid, Fact::RbValid, Fact::InducedCybeZero, Fact::ExplicitDual, Fact::SubBialgebra];
    for p in pairs {
        f.push(Fact::RelativeReflection { name: p.name.clone() });
        f.push(Fact::CreZero { name: p.name.clone() });
        f.push(Fact::Coideal { name: p.name.clone() });
    }
    f
}

/// `λ·1: sl(2) -> sl(2)_▷` for `x ▷ y = -[x,y]`, with the Chevalley involution on both sides.
pub fn relw_sl2(lambda: &GaussRat) -> Result<CatalogEntry> {
    let p = negative_bracket_postlie(&sl2_algebra());
    let base = p.as_relrbw()?;
    let op = RelRBW::new(base.g, base.k, base.rho, Matrix::scalar(3, lambda), lambda.clone())?;
    let pairs = vec![NamedPair { name: "chevalley".into(), sigma: chevalley(3), tau: chevalley(3) }];
    Ok(CatalogEntry { name: "relw-sl2".into(), expected: relw_facts(&pairs), payload: Payload::RelativeW { op, pairs } })
}

/// `T = 0` from an abelian `k` with zero action.
pub fn relw_zero(l: &LieAlgebra, k_dim: usize, lambda: &GaussRat) -> Result<CatalogEntry> {
    let rho = crate::lie::Representation::zero(l.clone(), k_dim);
    let op = RelRBW::new(l.clone(), LieAlgebra::abelian(k_dim), rho, Matrix::zeros(l.dim(), k_dim), lambda.clone())?;
    Ok(CatalogEntry { name: "relw-zero".into(), expected: relw_facts(&[]), payload: Payload::RelativeW { op, pairs: Vec::new() } })
}

/// `T = 0` of weight 0.
pub fn rel0_zero(l: &LieAlgebra, v_dim: usize) -> Result<CatalogEntry> {
    let rho = crate::lie::Representation::zero(l.clone(), v_dim);
    let op = RelRB0::new(l.clone(), rho, Matrix::zeros(l.dim(), v_dim))?;
    Ok(CatalogEntry {
        name: "rel0-zero".into(),
        expected: vec![Fact::RelativeValid, Fact::InducedCybeZero, Fact::WeightZeroDual],
        payload: Payload::Relative0 { op, pairs: Vec::new() },
    })
}

// Brute-force search over dim-2 tables with coefficients in {-1, 0, 1}.

const D: usize = 2;
type Table = [i64; 8];
type Bracket = [i64; 8];

fn imul(a: &Table, x: &[i64; 2], y: &[i64; 2]) -> [i64; 2] {
    let mut out = [0; 2];
    for i in 0..D {
        for j in 0..D {
            for (k, o) in out.iter_mut().enumerate() {
                *o += x[i] * y[j] * a[(i * D + j) * D + k];
            }
        }
    }
    out
}

fn iadd(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

fn isub(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

const E: [[i64; 2]; 2] = [[1, 0], [0, 1]];

fn prelie_i64(a: &Table) -> bool {
    for x in &E {
        for y in &E {
            for z in &E {
                let assoc = |p: &[i64; 2], q: &[i64; 2]| isub(imul(a, &imul(a, p, q), z), imul(a, p, &imul(a, q, z)));
                if assoc(x, y) != assoc(y, x) {
                    return false;
                }
            }
        }
    }
    true
}

fn postlie_i64(c: &Bracket, a: &Table) -> bool {
    let br = |x: &[i64; 2], y: &[i64; 2]| imul(c, x, y);
    for x in &E {
        for y in &E {
            for z in &E {
                let d1 = isub(imul(a, x, &br(y, z)), iadd(br(&imul(a, x, y), z), br(y, &imul(a, x, z))));
                let sub = iadd(br(x, y), isub(imul(a, x, y), imul(a, y, x)));
                let d2 = iadd(isub(imul(a, &sub, z), imul(a, x, &imul(a, y, z))), imul(a, y, &imul(a, x, z)));
                if d1 != [0, 0] || d2 != [0, 0] {
                    return false;
                }
            }
        }
    }
    true
}

fn swap_table(a: &Table) -> Table {
    let s = |i: usize| 1 - i;
    let mut out = [0; 8];
    for i in 0..D {
        for j in 0..D {
            for k in 0..D {
                out[(s(i) * D + s(j)) * D + s(k)] = a[(i * D + j) * D + k];
            }
        }
    }
    out
}

fn decode(mut code: usize) -> Table {
    let mut t = [0; 8];
    for slot in t.iter_mut() {
        *slot = (code % 3) as i64 - 1;
        code /= 3;
    }
    t
}

fn dim2_brackets() -> Vec<Bracket> {
    let mut out = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            let mut c = [0; 8];
            c[2] = a;
            c[3] = b;
            c[4] = -a;
            c[5] = -b;
            out.push(c);
        }
    }
    out
}

fn to_rat(a: &[i64]) -> Vec<GaussRat> {
    a.iter().map(|&x| GaussRat::from_int(x)).collect()
}

/// Canonical dim-2 pre-Lie tables over `{-1,0,1}`, one per orbit of the basis swap, in code order.
pub fn enumerate_prelie2() -> Vec<PreLie> {
    (0..3usize.pow(8))
        .into_par_iter()
        .map(decode)
        .filter(|a| prelie_i64(a) && *a <= swap_table(a))
        .collect::<Vec<_>>()
        .into_iter()
        .map(|a| PreLie::new(D, to_rat(&a)).expect("sized"))
        .collect()
}

/// Canonical dim-2 post-Lie structures over `{-1,0,1}` (bracket and product), one per swap orbit.
pub fn enumerate_postlie2() -> Vec<PostLie> {
    let brackets = dim2_brackets();
    let cand: Vec<(Bracket, Table)> =
        brackets.iter().flat_map(|c| (0..3usize.pow(8)).map(move |code| (*c, decode(code)))).collect();
    cand.into_par_iter()
        .filter(|(c, a)| postlie_i64(c, a) && (*c, *a) <= (swap_table(c), swap_table(a)))
        .collect::<Vec<_>>()
        .into_iter()
        .map(|(c, a)| {
            let lie = LieAlgebra::from_dense(D, to_rat(&c)).expect("dim-2 bracket");
            PostLie::new(lie, to_rat(&a)).expect("sized")
        })
        .collect()
}

/// Involutions with entries in `{-1,0,1}` that preserve the product.
fn small_involutions(is_auto: impl Fn(&Matrix) -> bool) -> Vec<Matrix> {
    let one = Matrix::identity(D);
    (0..3usize.pow(4))
        .map(|code| {
            let t = decode(code);
            Matrix::from_fn(D, D, |i, j| GaussRat::from_int(t[i * D + j]))
        })
        .filter(|m| (m * m) == one && is_auto(m))
        .collect()
}

fn pairs_of(invs: &[Matrix]) -> Vec<NamedPair> {
    invs.iter()
        .enumerate()
        .map(|(i, m)| NamedPair { name: format!("inv{i}"), sigma: m.clone(), tau: m.clone() })
        .collect()
}

/// Pre-Lie and post-Lie entries found by exhaustive search; each is also exposed as its relative operator.
pub fn small_prelie_postlie() -> Vec<CatalogEntry> {
    let pre = enumerate_prelie2();
    let post = enumerate_postlie2();
    let mut out: Vec<CatalogEntry> = pre
        .into_par_iter()
        .enumerate()
        .map(|(i, alg)| {
            let involutions = small_involutions(|m| alg.is_automorphism(m));
            let pairs = pairs_of(&involutions);
            let op = alg.as_relrb0();
            let mut expected = vec![Fact::RelativeValid, Fact::InducedCybeZero, Fact::WeightZeroDual];
            for p in &pairs {
                expected.push(Fact::RelativeReflection { name: p.name.clone() });
                expected.push(Fact::CreZero { name: p.name.clone() });
                expected.push(Fact::Coideal { name: p.name.clone() });
                expected.push(Fact::LiftedSubspaceClosed { name: p.name.clone() });
            }
            CatalogEntry { name: format!("prelie2-{i}"), payload: Payload::Relative0 { op, pairs }, expected }
        })
        .collect();
    out.par_extend(post.into_par_iter().enumerate().map(|(i, alg)| {
        let involutions = small_involutions(|m| alg.is_automorphism(m));
        let pairs = pairs_of(&involutions);
        let op = alg.as_relrbw().expect("post-Lie left multiplication acts by derivations");
        CatalogEntry { name: format!("postlie2-{i}"), expected: relw_facts(&pairs), payload: Payload::RelativeW { op, pairs } }
    }));
    out
}

/// Raw pre-Lie and post-Lie entries, checked against their own axioms.
pub fn small_algebra_entries() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = enumerate_prelie2()
        .into_iter()
        .enumerate()
        .map(|(i, alg)| CatalogEntry {
            name: format!("prelie2-{i}"),
            expected: vec![Fact::PreLieAxioms, Fact::RelativeValid, Fact::InducedCybeZero],
            payload: Payload::PreLie { involutions: small_involutions(|m| alg.is_automorphism(m)), alg },
        })
        .collect();
    out.extend(enumerate_postlie2().into_iter().enumerate().map(|(i, alg)| CatalogEntry {
        name: format!("postlie2-{i}"),
        expected: vec![Fact::PostLieAxioms, Fact::RelativeValid, Fact::InducedCybeZero],
        payload: Payload::PostLie { involutions: small_involutions(|m| alg.is_automorphism(m)), alg },
    }));
    out
}

/// Catalog lookup by name. `n` is used by the realified family.
pub fn by_name(name: &str, lambda: &GaussRat, n: usize) -> Result<CatalogEntry> {
    let sln = || sln_realified(n, lambda);
    match name {
        "sl2" => sl2_example(lambda),
        "sln" => sln(),
        "sl2-directsum" => direct_sum_swap(&sl2_example(lambda)?),
        "sl2-bowtie" => bowtie_entry(&sl2_example(lambda)?),
        "sl2-double" => double_entry(&sl2_example(lambda)?),
        "sln-directsum" => direct_sum_swap(&sln()?),
        "sln-bowtie" => bowtie_entry(&sln()?),
        "sln-double" => double_entry(&sln()?),
        "minus-identity-sl2" => minus_identity_sl2(),
        "relw-sl2" => relw_sl2(lambda),
        "relw-zero" => relw_zero(&sl2_algebra(), 2, lambda),
        "rel0-zero" => rel0_zero(&sl2_algebra(), 2),
        _ => Err(Error::Parse(format!("unknown catalog entry {name}"))),
    }
}

pub const CATALOG_NAMES: &[&str] = &[
    "sl2",
    "sln",
    "sl2-directsum",
    "sl2-bowtie",
    "sl2-double",
    "sln-directsum",
    "sln-bowtie",
    "sln-double",
    "minus-identity-sl2",
    "relw-sl2",
    "relw-zero",
    "rel0-zero",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_is_involutive() {
        let t = decode(1234);
        assert_eq!(swap_table(&swap_table(&t)), t);
    }

    #[test]
    fn decode_covers_range() {
        assert_eq!(decode(0), [-1; 8]);
        assert_eq!(decode(3usize.pow(8) - 1), [1; 8]);
    }
}
