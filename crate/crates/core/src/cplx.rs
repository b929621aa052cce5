//! Nilpotent complex structures on six-dimensional nilpotent Lie algebras,
//! given by structure equations
//!
//! ```text
//! dω¹ = 0,  dω² = ε ω¹∧ω̄¹,
//! dω³ = ρ ω¹∧ω² + A ω¹∧ω̄¹ + B ω¹∧ω̄² + C ω²∧ω̄¹ + D ω²∧ω̄².
//! ```
//!
//! Computations happen in the complex frame `(ω¹, ω², ω³, ω̄¹, ω̄², ω̄³)`,
//! indices 0..6, and are realified with `ω^k = e^{2k−1} + i e^{2k}` unless a
//! coframe is supplied.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exterior::{span_basis, span_dim, Matrix, Multivector};
use crate::lie::LieAlgebra;
use crate::notation::{classify, ClassifyError};
use num_traits::Zero;

use crate::scalars::{rat, sign, Rational, GR};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CplxError {
    #[error("D·ε ≠ 0: the equations violate d² = 0")]
    DEpsilonNonzero,
    #[error("ε ≠ 0 with dω³ = 0 is excluded")]
    ExcludedDegenerate,
    #[error("basis change incompatible with the equations: {0}")]
    IncompatibleChange(&'static str),
    #[error("coframe is not a basis of (1,0)-forms")]
    BadCoframe,
    #[error("realification has non-real structure constants")]
    NotReal,
    #[error("differentials are not in structure-equation form")]
    NotStructureForm,
    #[error("profile not in the classification table")]
    ProfileNotInTable,
    #[error("J² ≠ −1")]
    NotAlmostComplex,
    #[error("Nijenhuis tensor does not vanish")]
    NotIntegrable,
    #[error("filtration stabilises at dimension {0}: J is not nilpotent")]
    NotNilpotent(usize),
    #[error("underlying algebra: {0}")]
    Classify(ClassifyError),
}

/// Coefficients of the structure equations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexStructureEq {
    pub epsilon: GR,
    pub rho: GR,
    pub a: GR,
    pub b: GR,
    pub c: GR,
    pub d: GR,
}

impl ComplexStructureEq {
    pub fn new(epsilon: GR, rho: GR, a: GR, b: GR, c: GR, d: GR) -> Result<Self, CplxError> {
        let eq = ComplexStructureEq { epsilon, rho, a, b, c, d };
        eq.validate()?;
        Ok(eq)
    }

    pub fn zero() -> Self {
        ComplexStructureEq {
            epsilon: GR::zero(),
            rho: GR::zero(),
            a: GR::zero(),
            b: GR::zero(),
            c: GR::zero(),
            d: GR::zero(),
        }
    }

    /// Integer shorthand `(ε, ρ, A, B, C, D)`, handy in tests.
    pub fn from_ints(v: [i64; 6]) -> Result<Self, CplxError> {
        let [e, r, a, b, c, d] = v.map(GR::from_int);
        Self::new(e, r, a, b, c, d)
    }

    pub fn validate(&self) -> Result<(), CplxError> {
        if !(&self.d * &self.epsilon).is_zero() {
            return Err(CplxError::DEpsilonNonzero);
        }
        if !self.epsilon.is_zero() && self.d_omega3_is_zero() {
            return Err(CplxError::ExcludedDegenerate);
        }
        Ok(())
    }

    fn d_omega3_is_zero(&self) -> bool {
        [&self.rho, &self.a, &self.b, &self.c, &self.d].iter().all(|x| x.is_zero())
    }

    /// `Δ₁ = AD − BC`.
    pub fn delta1(&self) -> GR {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `Δ₂ = ½(|B|² + |C|² − AD̄ − ĀD − |ρ|²)`.
    pub fn delta2(&self) -> Rational {
        let ad = &self.a * &self.d.conj();
        (self.b.abs2() + self.c.abs2() - ad.re * rat(2, 1) - self.rho.abs2()) * rat(1, 2)
    }

    /// The complex Lie algebra in the frame `(ω, ω̄)`.
    pub fn frame_algebra(&self) -> LieAlgebra {
        let w = |i: usize, j: usize| Multivector::word(6, &[i, j]);
        let dw2 = w(1, 4).scale(&self.epsilon);
        let dw3 = w(1, 2)
            .scale(&self.rho)
            .add(&w(1, 4).scale(&self.a))
            .add(&w(1, 5).scale(&self.b))
            .add(&w(2, 4).scale(&self.c))
            .add(&w(2, 5).scale(&self.d));
        let dw1 = Multivector::zero(6);
        let diffs = vec![
            dw1.clone(),
            dw2.clone(),
            dw3.clone(),
            conj_swap(&dw1),
            conj_swap(&dw2),
            conj_swap(&dw3),
        ];
        LieAlgebra::new(diffs).expect("2-forms")
    }
}

impl fmt::Display for ComplexStructureEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ε={} ρ={} A={} B={} C={} D={}",
            self.epsilon, self.rho, self.a, self.b, self.c, self.d
        )
    }
}

/// Complex conjugation on the frame `(ω, ω̄)`: swaps `ω^k ↔ ω̄^k` and
/// conjugates coefficients.
pub fn conj_swap(a: &Multivector) -> Multivector {
    let m = a.dim() / 2;
    let images: Vec<Multivector> = (0..2 * m).map(|k| Multivector::generator(2 * m, (k + m) % (2 * m))).collect();
    a.substitute(&images).conj()
}

/// `ω^k = e^{2k−1} + i e^{2k}` in real dimension `2m`.
pub fn default_coframe(m: usize) -> Vec<Multivector> {
    (0..m)
        .map(|k| {
            let mut w = Multivector::zero(2 * m);
            w.add_term(1 << (2 * k), GR::one());
            w.add_term(1 << (2 * k + 1), GR::i());
            w
        })
        .collect()
}

/// Rows: the coframe followed by its conjugates, in `e`-coordinates.
fn frame_matrix(coframe: &[Multivector]) -> Result<Matrix, CplxError> {
    let n = 2 * coframe.len();
    if coframe.iter().any(|w| w.dim() != n || (!w.is_zero() && w.homogeneous_degree() != Some(1))) {
        return Err(CplxError::BadCoframe);
    }
    let mut rows: Vec<Vec<GR>> = coframe.iter().map(|w| w.coords(1)).collect();
    rows.extend(coframe.iter().map(|w| w.conj().coords(1)));
    let r = Matrix::from_rows(&rows);
    if r.rank() < n {
        return Err(CplxError::BadCoframe);
    }
    Ok(r)
}

/// The real algebra with the default coframe.
pub fn realify(eq: &ComplexStructureEq) -> LieAlgebra {
    realify_with(eq, &default_coframe(3)).expect("default coframe realifies")
}

/// The real algebra on which `coframe` has structure equations `eq`.
pub fn realify_with(eq: &ComplexStructureEq, coframe: &[Multivector]) -> Result<LieAlgebra, CplxError> {
    let r = frame_matrix(coframe)?;
    let n_inv = r.inverse().ok_or(CplxError::BadCoframe)?;
    let g = eq.frame_algebra().change_basis(&n_inv).ok_or(CplxError::BadCoframe)?;
    if !g.is_real() {
        return Err(CplxError::NotReal);
    }
    Ok(g)
}

/// Differentials of `(ω, ω̄)` for a coframe of a real algebra `g`.
pub fn frame_of(g: &LieAlgebra, coframe: &[Multivector]) -> Result<LieAlgebra, CplxError> {
    if g.dim() != 2 * coframe.len() {
        return Err(CplxError::BadCoframe);
    }
    let r = frame_matrix(coframe)?;
    g.change_basis(&r).ok_or(CplxError::BadCoframe)
}

/// Reads off `(ε, ρ, A, B, C, D)` from frame differentials.
fn read_frame(fa: &LieAlgebra) -> Result<ComplexStructureEq, CplxError> {
    let ds = fa.differentials();
    let m = |i: usize, j: usize| (1u16 << i) | (1u16 << j);
    let only = |a: &Multivector, allowed: &[u16]| a.terms().all(|(k, _)| allowed.contains(&k));
    let slots = [m(0, 1), m(0, 3), m(0, 4), m(1, 3), m(1, 4)];
    if !ds[0].is_zero() || !only(&ds[1], &[m(0, 3)]) || !only(&ds[2], &slots) {
        return Err(CplxError::NotStructureForm);
    }
    let c = |k| ds[2].coeff(k);
    let eq = ComplexStructureEq {
        epsilon: ds[1].coeff(m(0, 3)),
        rho: c(slots[0]),
        a: c(slots[1]),
        b: c(slots[2]),
        c: c(slots[3]),
        d: c(slots[4]),
    };
    if *fa != eq.frame_algebra() {
        return Err(CplxError::NotStructureForm);
    }
    eq.validate()?;
    Ok(eq)
}

/// Structure equations of a coframe on a real algebra, if they have the
/// standard form.
pub fn structure_eq(g: &LieAlgebra, coframe: &[Multivector]) -> Result<ComplexStructureEq, CplxError> {
    if coframe.len() != 3 {
        return Err(CplxError::BadCoframe);
    }
    read_frame(&frame_of(g, coframe)?)
}

/// `θ^j = Σ_k σ[j][k] ω^k` (0-based). Only `θ³` may involve `ω³`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisChange {
    pub s: [[GR; 3]; 3],
}

impl BasisChange {
    pub fn identity() -> Self {
        let mut s: [[GR; 3]; 3] = Default::default();
        for (i, row) in s.iter_mut().enumerate() {
            row[i] = GR::one();
        }
        BasisChange { s }
    }

    /// `Δ'(θ, ω)`, the upper 2×2 determinant.
    pub fn delta_prime(&self) -> GR {
        &self.s[0][0] * &self.s[1][1] - &self.s[0][1] * &self.s[1][0]
    }

    /// `Δ(θ, ω) = σ³₃ Δ'(θ, ω)`.
    pub fn delta(&self) -> GR {
        &self.s[2][2] * &self.delta_prime()
    }

    pub fn check(&self, eq: &ComplexStructureEq) -> Result<(), CplxError> {
        if !self.s[0][2].is_zero() || !self.s[1][2].is_zero() {
            return Err(CplxError::IncompatibleChange("θ¹, θ² must not involve ω³"));
        }
        if !(&eq.epsilon * &self.s[0][1]).is_zero() {
            return Err(CplxError::IncompatibleChange("ε·σ¹₂ ≠ 0"));
        }
        if self.delta().is_zero() {
            return Err(CplxError::IncompatibleChange("not invertible"));
        }
        Ok(())
    }

    fn frame_matrix(&self) -> Matrix {
        let mut p = Matrix::zeros(6, 6);
        for j in 0..3 {
            for k in 0..3 {
                p.set(j, k, self.s[j][k].clone());
                p.set(j + 3, k + 3, self.s[j][k].conj());
            }
        }
        p
    }
}

/// Structure equations in the basis `θ = σ ω`.
pub fn transform(eq: &ComplexStructureEq, sigma: &BasisChange) -> Result<ComplexStructureEq, CplxError> {
    eq.validate()?;
    sigma.check(eq)?;
    let fa = eq
        .frame_algebra()
        .change_basis(&sigma.frame_matrix())
        .ok_or(CplxError::IncompatibleChange("not invertible"))?;
    read_frame(&fa)
}

/// Normal form: `ε ∈ {0,1}`, `A = D = 0` when `ε = 1`, `ρ ∈ {0,1}`.
///
/// `ε` is normalised by rescaling `ω²`, then `A` is removed with
/// `ω³ ↦ ω³ − Aω²`, then `ω³` is rescaled to make `ρ = 1`.
pub fn reduce(eq: &ComplexStructureEq) -> ComplexStructureEq {
    let mut out = eq.clone();
    let step = |e: &ComplexStructureEq, f: &dyn Fn(&mut BasisChange)| {
        let mut s = BasisChange::identity();
        f(&mut s);
        transform(e, &s).expect("reduction step is admissible")
    };
    if !out.epsilon.is_zero() {
        if !out.epsilon.is_one() {
            let inv = out.epsilon.inv().expect("nonzero");
            out = step(&out, &|s| s.s[1][1] = inv.clone());
        }
        if !out.a.is_zero() {
            let a = out.a.clone();
            out = step(&out, &|s| s.s[2][1] = -a.clone());
        }
    }
    if !out.rho.is_zero() && !out.rho.is_one() {
        let inv = out.rho.inv().expect("nonzero");
        out = step(&out, &|s| s.s[2][2] = inv.clone());
    }
    out
}

/// Invariants of a nilpotent complex structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantProfile {
    pub n: (usize, usize),
    pub delta1: GR,
    pub delta2: Rational,
    pub d_span: usize,
    pub rank_x: usize,
    pub abs_b2: Rational,
    pub abs_c2: Rational,
    /// Sign of `|Δ₁|² − Δ₂²`.
    pub sign_disc: i8,
    pub abelian: bool,
}

pub fn invariants(eq: &ComplexStructureEq) -> Result<InvariantProfile, CplxError> {
    eq.validate()?;
    let fa = eq.frame_algebra();
    let ds = fa.differentials();
    let d_span = span_dim(&[ds[2].coords(2), ds[5].coords(2)]);
    let rank_x = Matrix::from_rows(&[vec![eq.a.clone(), eq.b.clone()], vec![eq.c.clone(), eq.d.clone()]]).rank();
    let g = realify(eq);
    let seq = g.dual_sequence().map_err(|_| CplxError::NotNilpotent(0))?;
    let n = (seq.first().copied().unwrap_or(6), seq.get(1).copied().unwrap_or(6));
    let delta1 = eq.delta1();
    let delta2 = eq.delta2();
    let sign_disc = sign(&(delta1.abs2() - &delta2 * &delta2));
    Ok(InvariantProfile {
        n,
        delta1,
        delta2,
        d_span,
        rank_x,
        abs_b2: eq.b.abs2(),
        abs_c2: eq.c.abs2(),
        sign_disc,
        abelian: is_abelian(eq),
    })
}

/// The five conditions equivalent to `d_span ≤ 1`.
pub fn span_conditions(eq: &ComplexStructureEq) -> bool {
    let (a, b, c, d) = (&eq.a, &eq.b, &eq.c, &eq.d);
    eq.rho.is_zero()
        && b.abs2() == c.abs2()
        && a * &d.conj() == a.conj() * d
        && a * &b.conj() == a.conj() * c
        && d * &b.conj() == d.conj() * c
}

/// Coefficients `(Δ₂ + ReΔ₁, −2 ImΔ₁, Δ₂ − ReΔ₁)` of the quadratic in
/// `(s, t)` whose real roots give simple forms `s de⁵ − t de⁶`.
pub fn simple_form_quadratic(eq: &ComplexStructureEq) -> [Rational; 3] {
    let d1 = eq.delta1();
    let d2 = eq.delta2();
    [&d2 + &d1.re, -(d1.im.clone() * rat(2, 1)), d2 - d1.re]
}

/// Number of real projective roots of `p s² + q st + r t²`; `None` when the
/// form vanishes identically.
pub fn real_root_count(coeffs: &[Rational; 3]) -> Option<usize> {
    let [p, q, r] = coeffs;
    if p.is_zero() && q.is_zero() && r.is_zero() {
        return None;
    }
    let disc = q * q - rat(4, 1) * p * r;
    Some(match sign(&disc) {
        1 => 2,
        0 => 1,
        _ => 0,
    })
}

/// `J` on vectors for the default coframe: `J e_{2k−1} = e_{2k}`, `J e_{2k} = −e_{2k−1}`.
pub fn standard_j(m: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        j.set(2 * k + 1, 2 * k, GR::one());
        j.set(2 * k, 2 * k + 1, -GR::one());
    }
    j
}

/// The endomorphism whose `(1,0)`-forms are the given coframe.
pub fn j_from_coframe(coframe: &[Multivector]) -> Result<Matrix, CplxError> {
    let r = frame_matrix(coframe)?;
    let n = r.nrows();
    let mut dg = Matrix::zeros(n, n);
    for k in 0..n {
        dg.set(k, k, if k < n / 2 { GR::i() } else { -GR::i() });
    }
    let j = r.inverse().ok_or(CplxError::BadCoframe)?.mul(&dg).mul(&r);
    Ok(j)
}

fn unit(n: usize, i: usize) -> Vec<GR> {
    let mut v = vec![GR::zero(); n];
    v[i] = GR::one();
    v
}

/// `[JX, JY] = [X, Y]` on the realified algebra.
pub fn is_abelian(eq: &ComplexStructureEq) -> bool {
    let g = realify(eq);
    let j = standard_j(3);
    (0..6).all(|x| {
        (x + 1..6).all(|y| g.bracket(&j.col(x), &j.col(y)) == g.bracket_basis(x, y))
    })
}

/// `dω^p ∈ Λ²⟨ω^1..ω^{p−1}, ω̄^1..ω̄^{p−1}⟩` for every `p`.
pub fn is_nilpotent_basis(g: &LieAlgebra, coframe: &[Multivector]) -> bool {
    let Ok(fa) = frame_of(g, coframe) else { return false };
    let m = coframe.len();
    fa.differentials().iter().take(m).enumerate().all(|(p, dw)| {
        let allowed: u16 = (0..p).map(|i| (1u16 << i) | (1u16 << (i + m))).sum();
        dw.terms().all(|(k, _)| k & !allowed == 0)
    })
}

/// `d(ω¹∧…∧ω^p) = 0` for every `p`.
pub fn is_integrable_basis(g: &LieAlgebra, coframe: &[Multivector]) -> bool {
    let Ok(fa) = frame_of(g, coframe) else { return false };
    let n = fa.dim();
    (1..=coframe.len()).all(|p| {
        let idx: Vec<usize> = (1..=p).collect();
        fa.d(&Multivector::word(n, &idx)).is_zero()
    })
}

/// `N(X,Y) = [JX,JY] − J[JX,Y] − J[X,JY] − [X,Y]` vanishes on basis pairs.
pub fn nijenhuis_vanishes(g: &LieAlgebra, j: &Matrix) -> bool {
    let n = g.dim();
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            let (jx, jy) = (j.col(x), j.col(y));
            let a = g.bracket(&jx, &jy);
            let b = j.apply(&g.bracket(&jx, &unit(n, y)));
            let c = j.apply(&g.bracket(&unit(n, x), &jy));
            let e = g.bracket_basis(x, y);
            (0..n).all(|k| (&a[k] - &b[k] - &c[k] - &e[k]).is_zero())
        })
    })
}

/// Builds a coframe adapted to the filtration
/// `A_p = {ω ∈ Λ^{1,0} : dω ∈ Λ²(A_{p−1} ⊕ Ā_{p−1})}`.
pub fn find_adapted_basis(g: &LieAlgebra, j: &Matrix) -> Result<Vec<Multivector>, CplxError> {
    let n = g.dim();
    if !n.is_multiple_of(2) || j.nrows() != n || j.ncols() != n {
        return Err(CplxError::NotAlmostComplex);
    }
    let mut minus_one = Matrix::zeros(n, n);
    for k in 0..n {
        minus_one.set(k, k, -GR::one());
    }
    if j.mul(j) != minus_one {
        return Err(CplxError::NotAlmostComplex);
    }
    if !nijenhuis_vanishes(g, j) {
        return Err(CplxError::NotIntegrable);
    }
    let m = n / 2;
    // (1,0)-forms: row vectors a with aJ = ia
    let mut shifted = j.transpose();
    for k in 0..n {
        shifted.set(k, k, shifted.get(k, k) - &GR::i());
    }
    let psi = shifted.kernel();
    debug_assert_eq!(psi.len(), m);
    let psi_forms: Vec<Multivector> = psi.iter().map(|v| Multivector::from_vector(v)).collect();
    let fa = frame_of(g, &psi_forms)?;
    let dpsi: Vec<Multivector> = fa.differentials()[..m].to_vec();

    // filtration as coefficient vectors over psi
    let mut layers: Vec<Vec<Vec<GR>>> = Vec::new();
    let mut prev: Vec<Vec<GR>> = Vec::new();
    loop {
        let next = filtration_step(&dpsi, &prev, m);
        if next.len() == prev.len() {
            break;
        }
        layers.push(next.clone());
        prev = next;
        if prev.len() == m {
            break;
        }
    }
    if prev.len() < m {
        return Err(CplxError::NotNilpotent(prev.len()));
    }
    // basis compatible with the flag
    let mut chosen: Vec<Vec<GR>> = Vec::new();
    for layer in &layers {
        for v in layer {
            let mut trial = chosen.clone();
            trial.push(v.clone());
            if span_dim(&trial) > chosen.len() {
                chosen = trial;
            }
        }
    }
    let coframe: Vec<Multivector> = chosen
        .iter()
        .map(|c| {
            c.iter()
                .zip(&psi_forms)
                .fold(Multivector::zero(n), |acc, (ck, w)| acc.add(&w.scale(ck)))
        })
        .collect();
    Ok(coframe)
}

/// `{c : Σ c_k dψ_k ∈ Λ²(W ⊕ W̄)}` where `W` is spanned by `prev`.
fn filtration_step(dpsi: &[Multivector], prev: &[Vec<GR>], m: usize) -> Vec<Vec<GR>> {
    let n = 2 * m;
    let mut w: Vec<Vec<GR>> = Vec::new();
    for c in prev {
        let mut v = c.clone();
        v.extend(core::iter::repeat_n(GR::zero(), m));
        w.push(v);
        let mut v = vec![GR::zero(); m];
        v.extend(c.iter().map(GR::conj));
        w.push(v);
    }
    let mut basis = span_basis(&w);
    let r = basis.len();
    for i in 0..n {
        let mut trial = basis.clone();
        trial.push(unit(n, i));
        if span_dim(&trial) > basis.len() {
            basis = trial;
        }
    }
    // new coordinates: rows of `basis` are the new generators
    let q = Matrix::from_rows(&basis);
    let qi = q.inverse().expect("completed basis");
    let images: Vec<Multivector> = (0..n).map(|j| Multivector::from_vector(&qi.row(j))).collect();
    let inside: u16 = ((1u32 << r) - 1) as u16;
    let moved: Vec<Multivector> = dpsi.iter().map(|a| a.substitute(&images)).collect();
    let mut masks: Vec<u16> = Vec::new();
    for a in &moved {
        for (k, _) in a.terms() {
            if k & !inside != 0 && !masks.contains(&k) {
                masks.push(k);
            }
        }
    }
    if masks.is_empty() {
        return (0..m).map(|i| unit(m, i)).collect();
    }
    let rows: Vec<Vec<GR>> = masks.iter().map(|&k| moved.iter().map(|a| a.coeff(k)).collect()).collect();
    span_basis(&Matrix::from_rows(&rows).kernel())
}

/// Classification-table row patterns: `Z` zero, `P` positive or nonzero, `N` negative,
/// `X` unconstrained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Pat {
    Z,
    P,
    N,
    X,
}

impl Pat {
    fn matches(self, s: i8) -> bool {
        match self {
            Pat::Z => s == 0,
            Pat::P => s > 0,
            Pat::N => s < 0,
            Pat::X => true,
        }
    }
}

struct Row {
    n: (usize, usize),
    name: &'static str,
    disc: Pat,
    d1: Pat,
    d2: Pat,
    eps: Pat,
    rho: Pat,
    d: usize,
}

macro_rules! row {
    ($n1:literal, $n2:literal, $name:literal, $a:ident $b:ident $c:ident $e:ident $r:ident $d:literal) => {
        Row { n: ($n1, $n2), name: $name, disc: Pat::$a, d1: Pat::$b, d2: Pat::$c, eps: Pat::$e, rho: Pat::$r, d: $d }
    };
}

const TABLE1: [Row; 16] = [
    row!(6, 6, "h1", Z Z Z Z Z 0),
    row!(5, 6, "h8", Z Z Z Z Z 1),
    row!(5, 6, "h3", Z P P Z Z 1),
    row!(4, 6, "h6", Z Z Z Z P 2),
    row!(4, 6, "h4", Z P P Z X 2),
    row!(4, 6, "h2", P P X Z X 2),
    row!(4, 6, "h5", N X P Z X 2),
    row!(4, 5, "h9", Z P P P Z 1),
    row!(3, 6, "h7", Z Z Z P P 2),
    row!(3, 5, "h10", Z Z Z P P 2),
    row!(3, 5, "h11", Z P P P P 2),
    row!(3, 5, "h12", P P X P P 2),
    row!(3, 4, "h16", Z Z Z P P 2),
    row!(3, 4, "h13", P P X P P 2),
    row!(3, 4, "h14", Z P P P P 2),
    row!(3, 4, "h15", N X P P X 2),
];

/// Underlying real algebra by the classification-table decision procedure.
pub fn identify_underlying(eq: &ComplexStructureEq) -> Result<&'static str, CplxError> {
    let eq = reduce(eq);
    let p = invariants(&eq)?;
    lookup_table1(&p, !eq.epsilon.is_zero(), !eq.rho.is_zero())
}

fn lookup_table1(p: &InvariantProfile, eps: bool, rho: bool) -> Result<&'static str, CplxError> {
    let nz = |b: bool| if b { 1 } else { 0 };
    let hits: Vec<&Row> = TABLE1
        .iter()
        .filter(|r| {
            r.n == p.n
                && r.disc.matches(p.sign_disc)
                && r.d1.matches(nz(!p.delta1.is_zero()))
                && r.d2.matches(nz(!p.delta2.is_zero()))
                && r.eps.matches(nz(eps))
                && r.rho.matches(nz(rho))
                && r.d == p.d_span
        })
        .collect();
    match hits.as_slice() {
        [r] => Ok(r.name),
        _ => Err(CplxError::ProfileNotInTable),
    }
}

/// `classify ∘ realify`.
pub fn classify_realified(eq: &ComplexStructureEq) -> Result<&'static str, CplxError> {
    classify(&realify(eq)).map_err(CplxError::Classify)
}
