//! Symplectic structures, `DGA(h, Ω)`, and the weak self-mirror check.
//!
//! `O(x) = ι_x Ω` turns a symplectic form into a compatible map `h → h*`;
//! [`dga_from_symplectic`] builds the resulting algebra on `h*`. The
//! isomorphism search compares it with `DGA(g, J)` from [`build_f1`].

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cplx::{default_coframe, realify_with, ComplexStructureEq, CplxError};
use crate::dga::{build_f1, DGAlgebra, DgaError};
use crate::exterior::{annihilator, basis_masks, bits, Matrix, Multivector};
use crate::lie::LieAlgebra;
use crate::poly::Poly;
use crate::scalars::{rat, Rational, GR};
use crate::solve::{SolveOptions, SolveOutcome, Solver};
use crate::tables::{verify_tab_f1, Sampler};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MirrorError {
    #[error("not a closed 2-form")]
    NotClosed,
    #[error("2-form is degenerate")]
    Degenerate,
    #[error("no nonzero compatible (1,1)-forms")]
    EmptyFamily,
    #[error("degenerate parameters: {0}")]
    ParamsDegenerate(&'static str),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("map failed verification")]
    NotVerified,
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Cplx(#[from] CplxError),
}

fn top_coeff(a: &Multivector) -> GR {
    a.coeff(((1u32 << a.dim()) - 1) as u16)
}

/// Basis of the closed 2-forms `Z²(g)`.
pub fn closed_two_forms(g: &LieAlgebra) -> Vec<Multivector> {
    g.d_matrix(2).kernel().iter().map(|v| Multivector::from_coords(g.dim(), 2, v)).collect()
}

/// The top-degree coefficient of `(Σ tᵢ ωᵢ)^{n/2}` as a polynomial in `t`,
/// for `n = 6`. Zero iff every combination is degenerate.
pub fn cubic_form(forms: &[Multivector]) -> Poly {
    let k = forms.len();
    let mut p = Poly::zero(k);
    for i in 0..k {
        for j in i..k {
            let wij = forms[i].wedge(&forms[j]);
            for l in j..k {
                let c = top_coeff(&wij.wedge(&forms[l]));
                if c.is_zero() {
                    continue;
                }
                let mult = match (i == j, j == l) {
                    (true, true) => 1,
                    (true, false) | (false, true) => 3,
                    _ => 6,
                };
                let mut e = vec![0u8; k];
                e[i] += 1;
                e[j] += 1;
                e[l] += 1;
                p.add_term(e, c * GR::from_int(mult));
            }
        }
    }
    p
}

/// Whether some closed 2-form on the six-dimensional `g` is non-degenerate.
pub fn symplectic_exists(g: &LieAlgebra) -> bool {
    g.dim() == 6 && !cubic_form(&closed_two_forms(g)).is_zero()
}

/// A symplectic form with small integer coordinates in the [`closed_two_forms`]
/// basis, or `None` if there is none.
pub fn symplectic_witness(g: &LieAlgebra, seed: u64) -> Option<SymplecticForm> {
    let z = closed_two_forms(g);
    let cubic = cubic_form(&z);
    if g.dim() != 6 || cubic.is_zero() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // a nonzero cubic does not vanish on all of {-3..3}^k
    loop {
        let t: Vec<GR> = (0..z.len()).map(|_| GR::from_int(rng.gen_range(-3i64..=3))).collect();
        if cubic.eval(&t).is_zero() {
            continue;
        }
        let omega = z.iter().zip(&t).fold(Multivector::zero(6), |acc, (w, c)| acc.add(&w.scale(c)));
        return SymplecticForm::new(g.clone(), omega).ok();
    }
}

/// A closed non-degenerate 2-form on a six-dimensional algebra. Complex
/// coefficients are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    g: LieAlgebra,
    omega: Multivector,
}

impl SymplecticForm {
    pub fn new(g: LieAlgebra, omega: Multivector) -> Result<Self, MirrorError> {
        if omega.dim() != g.dim() || !(omega.is_zero() || omega.homogeneous_degree() == Some(2)) {
            return Err(MirrorError::NotClosed);
        }
        if !g.d(&omega).is_zero() {
            return Err(MirrorError::NotClosed);
        }
        let top = (0..g.dim() / 2).fold(Multivector::scalar(g.dim(), GR::one()), |acc, _| acc.wedge(&omega));
        if top_coeff(&top).is_zero() {
            return Err(MirrorError::Degenerate);
        }
        Ok(SymplecticForm { g, omega })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn form(&self) -> &Multivector {
        &self.omega
    }

    /// `O(x_j) = ι_{x_j} Ω` as column `j`.
    pub fn contraction_matrix(&self) -> Matrix {
        let n = self.g.dim();
        let cols: Vec<Vec<GR>> = (0..n).map(|j| self.omega.contract(j).coords(1)).collect();
        Matrix::from_cols(&cols, n)
    }
}

/// `DGA(h, Ω)`: the algebra on `h*` with `[α,β]_Ω = O[O⁻¹α, O⁻¹β]`.
pub fn dga_from_symplectic(omega: &SymplecticForm) -> Result<DGAlgebra, MirrorError> {
    Ok(crate::dga::dga_from_o(&omega.g, &omega.contraction_matrix())?)
}

/// The real closed `(1,1)`-forms for a complex structure, in frame
/// coordinates `(ω, ω̄)`; members are real combinations of `basis`.
#[derive(Clone, Debug)]
pub struct PKFamily {
    pub eq: ComplexStructureEq,
    pub basis: Vec<Multivector>,
}

impl PKFamily {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ tᵢ basisᵢ` in frame coordinates.
    pub fn member(&self, t: &[Rational]) -> Multivector {
        assert_eq!(t.len(), self.basis.len());
        self.basis
            .iter()
            .zip(t)
            .fold(Multivector::zero(6), |acc, (b, c)| acc.add(&b.scale(&GR::from_rational(c.clone()))))
    }

    /// A member rewritten in the real basis dual to `coframe`.
    pub fn member_real(&self, t: &[Rational], coframe: &[Multivector]) -> Multivector {
        frame_to_real(&self.member(t), coframe)
    }

    /// Top coefficient of `Ω³` as a cubic in the family parameters.
    pub fn cubic(&self) -> Poly {
        cubic_form(&self.basis)
    }
}

/// Substitutes `ω^j ↦ coframe[j]`, `ω̄^j ↦ conj(coframe[j])`.
pub fn frame_to_real(form: &Multivector, coframe: &[Multivector]) -> Multivector {
    let mut images: Vec<Multivector> = coframe.to_vec();
    images.extend(coframe.iter().map(|w| w.conj()));
    form.substitute(&images)
}

/// Real `(1,1)`-forms `i ω^j ω̄^j`, `ω^j ω̄^k − ω^k ω̄^j`, `i(ω^j ω̄^k + ω^k ω̄^j)`.
fn real_11_basis() -> Vec<Multivector> {
    let w = |j: usize, k: usize| Multivector::word(6, &[j + 1, k + 4]);
    let mut out = Vec::new();
    for j in 0..3 {
        out.push(w(j, j).scale(&GR::i()));
    }
    for j in 0..3 {
        for k in j + 1..3 {
            out.push(w(j, k).sub(&w(k, j)));
            out.push(w(j, k).add(&w(k, j)).scale(&GR::i()));
        }
    }
    out
}

/// All closed real `(1,1)`-forms for `eq`, by an exact linear solve.
pub fn compatible_11_family(eq: &ComplexStructureEq) -> Result<PKFamily, MirrorError> {
    eq.validate()?;
    let fa = eq.frame_algebra();
    let cands = real_11_basis();
    let images: Vec<Vec<GR>> = cands.iter().map(|b| fa.d(b).coords(3)).collect();
    // real and imaginary parts of every coefficient must vanish
    let rows: Vec<Vec<GR>> = (0..images[0].len())
        .flat_map(|r| {
            let re: Vec<GR> = images.iter().map(|v| GR::from_rational(v[r].re.clone())).collect();
            let im: Vec<GR> = images.iter().map(|v| GR::from_rational(v[r].im.clone())).collect();
            [re, im]
        })
        .collect();
    let kernel = Matrix::from_rows(&rows).kernel();
    if kernel.is_empty() {
        return Err(MirrorError::EmptyFamily);
    }
    let basis = kernel
        .iter()
        .map(|v| cands.iter().zip(v).fold(Multivector::zero(6), |acc, (b, c)| acc.add(&b.scale(c))))
        .collect();
    Ok(PKFamily { eq: eq.clone(), basis })
}

/// Homomorphism conditions for the generator map `m` (`m[k][i]` =
/// coefficient of `b`-generator `k` in the image of `a`-generator `i`).
/// Each returned polynomial must vanish.
pub fn hom_equations(a: &DGAlgebra, b: &DGAlgebra, m: &[Vec<Poly>]) -> Vec<Poly> {
    let n = a.dim();
    let nv = m[0][0].nvars();
    let mut out = Vec::new();
    // [M g_i, M g_j] = M [g_i, g_j]
    for i in 0..n {
        for j in i + 1..n {
            let lhs = a.bracket_table(i, j);
            for k in 0..n {
                let mut e = Poly::zero(nv);
                for (l, c) in lhs.iter().enumerate() {
                    if !c.is_zero() {
                        e = e.add(&m[k][l].scale(c));
                    }
                }
                for p in 0..n {
                    if m[p][i].is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        let c = &b.bracket_table(p, q)[k];
                        if c.is_zero() || m[q][j].is_zero() {
                            continue;
                        }
                        e = e.sub(&m[p][i].mul(&m[q][j]).scale(c));
                    }
                }
                out.push(e);
            }
        }
    }
    // M(d g_i) = d(M g_i), coefficient by coefficient on b-generator pairs
    let masks = basis_masks(n, 2);
    for i in 0..n {
        let da = &a.d_table()[i];
        let mut lhs = vec![Poly::zero(nv); masks.len()];
        for (mask, c) in da.terms() {
            let ab = bits(mask);
            let (x, y) = (ab[0], ab[1]);
            for (slot, &pq) in masks.iter().enumerate() {
                let pqb = bits(pq);
                let (p, q) = (pqb[0], pqb[1]);
                let t = m[p][x].mul(&m[q][y]).sub(&m[q][x].mul(&m[p][y]));
                if !t.is_zero() {
                    lhs[slot] = lhs[slot].add(&t.scale(c));
                }
            }
        }
        for k in 0..n {
            if m[k][i].is_zero() {
                continue;
            }
            let db = b.d_table()[k].coords(2);
            for (slot, c) in db.iter().enumerate() {
                if !c.is_zero() {
                    lhs[slot] = lhs[slot].sub(&m[k][i].scale(c));
                }
            }
        }
        out.extend(lhs.into_iter().filter(|p| !p.is_zero()));
    }
    out
}

/// The invariant flags of a DGA: the dual sequence of `d`, the lower
/// central series and the ascending series of the degree-one algebra.
fn flags(x: &DGAlgebra) -> Option<Vec<Vec<Vec<GR>>>> {
    let g1 = x.degree1_algebra();
    let mut out = x.differential_algebra().dual_sequence_spaces().ok()?;
    out.push(Vec::new());
    out.extend(g1.lower_central_spaces().ok()?);
    out.push(Vec::new());
    out.extend(g1.ascending_spaces().ok()?);
    Some(out)
}

/// Result of [`mirror_iso_search`].
#[derive(Clone, Debug)]
pub enum IsoSearch {
    /// Column `i` is the image of generator `i`.
    Found(Matrix),
    /// `constraints` is the reduced system that admitted no accepted
    /// solution; `exhausted` is false if the search ran out of budget.
    NotFound { reason: String, constraints: Vec<Poly>, exhausted: bool },
}

impl IsoSearch {
    pub fn found(&self) -> Option<&Matrix> {
        match self {
            IsoSearch::Found(m) => Some(m),
            IsoSearch::NotFound { .. } => None,
        }
    }
}

fn var_matrix(n: usize) -> Vec<Vec<Poly>> {
    (0..n).map(|k| (0..n).map(|i| Poly::var(n * n, k * n + i)).collect()).collect()
}

fn matrix_of(n: usize, x: &[GR]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for k in 0..n {
        for i in 0..n {
            m.set(k, i, x[k * n + i].clone());
        }
    }
    m
}

/// Searches for a DGA isomorphism `a → b` that preserves the invariant
/// flags. Several seeds are tried before giving up.
pub fn mirror_iso_search(a: &DGAlgebra, b: &DGAlgebra, opts: &SolveOptions) -> IsoSearch {
    let n = a.dim();
    let not_found = |reason: &str| IsoSearch::NotFound { reason: reason.to_string(), constraints: Vec::new(), exhausted: true };
    if b.dim() != n {
        return not_found("dimensions differ");
    }
    let (Some(fa), Some(fb)) = (flags(a), flags(b)) else {
        return not_found("degree-one algebra or differential is not nilpotent");
    };
    if fa.len() != fb.len() || fa.iter().zip(&fb).any(|(s, t)| s.len() != t.len()) {
        return not_found("invariant flags have different dimensions");
    }
    let m = var_matrix(n);
    let mut eqs = Vec::new();
    for (sa, sb) in fa.iter().zip(&fb) {
        if sa.is_empty() {
            continue;
        }
        let ann = annihilator(sb, n);
        for s in sa {
            for w in &ann {
                let mut e = Poly::zero(n * n);
                for k in 0..n {
                    for i in 0..n {
                        let c = &w[k] * &s[i];
                        if !c.is_zero() {
                            e.add_term(m[k][i].terms().next().expect("variable").0.clone(), c);
                        }
                    }
                }
                eqs.push(e);
            }
        }
    }
    eqs.extend(hom_equations(a, b, &m));
    let accept = |x: &[GR]| a.is_isomorphism(b, &matrix_of(n, x));
    let mut last = None;
    for round in 0..8u64 {
        let o = SolveOptions { seed: opts.seed.wrapping_add(round), ..opts.clone() };
        match Solver::new(n * n, o, &accept).solve(eqs.clone()) {
            SolveOutcome::Solution(x) => return IsoSearch::Found(matrix_of(n, &x)),
            SolveOutcome::NoSolution { reduced, exhausted } => {
                if exhausted {
                    return IsoSearch::NotFound { reason: "constraint system is inconsistent".into(), constraints: reduced, exhausted };
                }
                last = Some(reduced);
            }
        }
    }
    IsoSearch::NotFound {
        reason: "search budget exhausted".into(),
        constraints: last.unwrap_or_default(),
        exhausted: false,
    }
}

/// A DGA with zero differential carrying the bracket of `g`.
pub fn bracket_only(g: &LieAlgebra) -> DGAlgebra {
    let n = g.dim();
    let br = (0..n).map(|i| (0..n).map(|j| g.bracket_basis(i, j).to_vec()).collect()).collect();
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    DGAlgebra::new(names, vec![Multivector::zero(n); n], br).expect("Lie bracket table")
}

/// Lie algebra isomorphism search `h → k`.
pub fn lie_iso_search(h: &LieAlgebra, k: &LieAlgebra, opts: &SolveOptions) -> IsoSearch {
    mirror_iso_search(&bracket_only(h), &bracket_only(k), opts)
}

/// An explicit, verified isomorphism `DGA(g, J) → DGA(g, Ω)`.
#[derive(Clone, Debug)]
pub struct MirrorWitness {
    pub name: &'static str,
    pub eq: ComplexStructureEq,
    pub coframe: Vec<Multivector>,
    pub omega: SymplecticForm,
    /// Column `i` is the image of η_i in `e`-coordinates.
    pub map: Matrix,
}

impl MirrorWitness {
    fn assemble(
        name: &'static str,
        eq: ComplexStructureEq,
        coframe: Vec<Multivector>,
        omega: Multivector,
        map: Matrix,
    ) -> Result<Self, MirrorError> {
        let g = realify_with(&eq, &coframe)?;
        let omega = SymplecticForm::new(g, omega)?;
        let w = MirrorWitness { name, eq, coframe, omega, map };
        if !w.verify()? {
            return Err(MirrorError::NotVerified);
        }
        Ok(w)
    }

    /// Rechecks brackets and differentials on all generators.
    pub fn verify(&self) -> Result<bool, MirrorError> {
        let a = build_f1(&self.eq)?;
        let b = dga_from_symplectic(&self.omega)?;
        Ok(a.is_isomorphism(&b, &self.map))
    }
}

fn q(x: &Rational) -> GR {
    GR::from_rational(x.clone())
}

/// Real 2-form from `(coefficient, i, j)` triples, 1-based.
fn real_form(terms: &[(GR, usize, usize)]) -> Multivector {
    terms.iter().fold(Multivector::zero(6), |acc, (c, i, j)| acc.add(&Multivector::word(6, &[*i, *j]).scale(c)))
}

/// Vector in `e`-coordinates from `(coefficient, index)` pairs, 1-based.
fn evec(terms: &[(GR, usize)]) -> Vec<GR> {
    let mut v = vec![GR::zero(); 6];
    for (c, i) in terms {
        v[i - 1] += c;
    }
    v
}

fn coframe_from(rows: [[(i64, i64); 6]; 3]) -> Vec<Multivector> {
    rows.iter()
        .map(|r| {
            let mut w = Multivector::zero(6);
            for (k, &(re, im)) in r.iter().enumerate() {
                w.add_term(1 << k, GR::from_ints(re, im));
            }
            w
        })
        .collect()
}

/// `h₁`: the abelian algebra, `Ω = e12 + e34 + e56`, identity-like map.
pub fn mirror_h1() -> Result<MirrorWitness, MirrorError> {
    let eq = ComplexStructureEq::zero();
    let one = GR::one();
    let omega = real_form(&[(one.clone(), 1, 2), (one.clone(), 3, 4), (one.clone(), 5, 6)]);
    MirrorWitness::assemble("h1", eq, default_coframe(3), omega, Matrix::identity(6))
}

/// `h₆` with `Ω = a e23 + b e14 + c(e12 − e34) − k(e13 + e24) + ℓ(e25 + e36)`.
pub fn mirror_h6(a: &Rational, b: &Rational, c: &Rational, k: &Rational, l: &Rational) -> Result<MirrorWitness, MirrorError> {
    use num_traits::Zero;
    if b.is_zero() || l.is_zero() {
        return Err(MirrorError::ParamsDegenerate("h6 needs b ≠ 0 and ℓ ≠ 0"));
    }
    let eq = ComplexStructureEq::from_ints([0, 1, 0, 1, 0, 0])?;
    let coframe = vec![
        Multivector::from_vector(&evec(&[(GR::one(), 2), (GR::i(), 3)])),
        Multivector::from_vector(&evec(&[(q(&rat(-1, 2)), 1), (GR::i().scale(&rat(-1, 2)), 4)])),
        Multivector::from_vector(&evec(&[(GR::one(), 5), (GR::i(), 6)])),
    ];
    let omega = real_form(&[
        (q(a), 2, 3),
        (q(b), 1, 4),
        (q(c), 1, 2),
        (-q(c), 3, 4),
        (-q(k), 1, 3),
        (-q(k), 2, 4),
        (q(l), 2, 5),
        (q(l), 3, 6),
    ]);
    let kl = q(&(k / l));
    let cl = q(&(c / l));
    let one = GR::one();
    // η order: ω̄¹, T₃, ω̄², T₂, ω̄³, T₁
    let cols = vec![
        evec(&[(-one.clone(), 3)]),
        evec(&[(one.clone(), 2)]),
        evec(&[(one.clone(), 1)]),
        evec(&[(q(b), 4)]),
        evec(&[(one.clone(), 6), (-cl, 4)]),
        evec(&[(one.clone(), 5), (-kl, 4)]),
    ];
    MirrorWitness::assemble("h6", eq, coframe, omega, Matrix::from_cols(&cols, 6))
}

/// `h₈` with `Ω = a e12 + b e34 + x(e13 + e24) − y(e23 − e14) − u(e15 + e26) + v(e25 − e16)`.
pub fn mirror_h8(
    a: &Rational,
    b: &Rational,
    x: &Rational,
    y: &Rational,
    u: &Rational,
    v: &Rational,
) -> Result<MirrorWitness, MirrorError> {
    use num_traits::Zero;
    let n2 = u * u + v * v;
    if n2.is_zero() {
        return Err(MirrorError::ParamsDegenerate("h8 needs (u, v) ≠ (0, 0)"));
    }
    let eq = ComplexStructureEq::from_ints([0, 0, 1, 0, 0, 0])?;
    let coframe = coframe_from([
        [(1, 0), (0, 1), (0, 0), (0, 0), (0, 0), (0, 0)],
        [(0, 0), (0, 0), (1, 0), (0, 1), (0, 0), (0, 0)],
        [(0, 0), (0, 0), (0, 0), (0, 0), (-2, 0), (0, -2)],
    ]);
    let omega = real_form(&[
        (q(a), 1, 2),
        (q(b), 3, 4),
        (q(x), 1, 3),
        (q(x), 2, 4),
        (-q(y), 2, 3),
        (q(y), 1, 4),
        (-q(u), 1, 5),
        (-q(u), 2, 6),
        (q(v), 2, 5),
        (-q(v), 1, 6),
    ]);
    let one = GR::one();
    let cols = vec![
        evec(&[(q(&(v / &n2)), 1), (q(&(u / &n2)), 2)]),
        evec(&[(q(u), 1), (-q(v), 2)]),
        evec(&[(one.clone(), 4)]),
        evec(&[(one.clone(), 3)]),
        evec(&[(one.clone(), 5)]),
        evec(&[(-one, 6)]),
    ];
    MirrorWitness::assemble("h8", eq, coframe, omega, Matrix::from_cols(&cols, 6))
}

fn gr(re: i64, im: i64, den: i64) -> GR {
    GR::new(rat(re, den), rat(im, den))
}

/// `h₉` with `Ω = e13 − e26 − e45`.
pub fn mirror_h9() -> Result<MirrorWitness, MirrorError> {
    let eq = ComplexStructureEq::new(gr(-1, 0, 2), GR::zero(), GR::zero(), gr(1, 0, 2), gr(1, 0, 2), GR::zero())?;
    let coframe = coframe_from([
        [(1, 0), (0, 1), (0, 0), (0, 0), (0, 0), (0, 0)],
        [(0, 0), (0, 0), (0, 0), (1, 0), (0, 1), (0, 0)],
        [(0, 0), (0, 0), (0, 1), (0, 0), (0, 0), (1, 0)],
    ]);
    let one = GR::one();
    let omega = real_form(&[(one.clone(), 1, 3), (-one.clone(), 2, 6), (-one, 4, 5)]);
    MirrorWitness::assemble("h9", eq, coframe, omega, sparse_matrix(H9_MAP))
}

/// `h₁₀` with `Ω = i(e16 − e25 + e34)` in the default coframe.
pub fn mirror_h10() -> Result<MirrorWitness, MirrorError> {
    let eq = ComplexStructureEq::from_ints([1, 1, 0, 0, 1, 0])?;
    let i = GR::i();
    let omega = real_form(&[(i.clone(), 1, 6), (-i.clone(), 2, 5), (i, 3, 4)]);
    MirrorWitness::assemble("h10", eq, default_coframe(3), omega, sparse_matrix(H10_MAP))
}

/// Sparse map entries `(e-row, η-column, re, im, denominator)`.
type SparseMap = [(usize, usize, i64, i64, i64)];

const H9_MAP: &SparseMap = &[(0, 0, 2, 0, 1), (1, 1, 1, 0, 2), (2, 5, 1, 0, 2), (3, 2, -2, 0, 1), (4, 3, 1, 0, 2), (5, 4, 2, 0, 1)];
const H10_MAP: &SparseMap =
    &[(0, 1, 0, -32, 1), (1, 0, 1, 0, 2), (2, 2, -1, 0, 8), (3, 3, 0, -8, 1), (4, 5, 0, 2, 1), (5, 4, -1, 0, 32)];

fn sparse_matrix(entries: &SparseMap) -> Matrix {
    let mut m = Matrix::zeros(6, 6);
    for &(r, c, re, im, den) in entries {
        m.set(r, c, gr(re, im, den));
    }
    m
}

/// Dispatches on `h1`, `h6`, `h8`, `h9`, `h10`; `params` are
/// `(a,b,c,k,ℓ)` for h6 and `(a,b,x,y,u,v)` for h8.
pub fn explicit_mirror_iso(name: &str, params: &[Rational]) -> Result<MirrorWitness, MirrorError> {
    let need = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(MirrorError::ParamsDegenerate("wrong number of parameters"))
        }
    };
    match name {
        "h1" => mirror_h1(),
        "h6" => {
            need(5)?;
            mirror_h6(&params[0], &params[1], &params[2], &params[3], &params[4])
        }
        "h8" => {
            need(6)?;
            mirror_h8(&params[0], &params[1], &params[2], &params[3], &params[4], &params[5])
        }
        "h9" => mirror_h9(),
        "h10" => mirror_h10(),
        other => Err(MirrorError::UnknownCase(other.to_string())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Contradiction,
    Inconclusive,
}

/// One equation of the elimination chain: `residual = 0` is claimed to
/// follow from the homomorphism equations, and `holds` records whether
/// that was confirmed.
#[derive(Clone, Debug)]
pub struct ObstructionStep {
    pub label: &'static str,
    pub residual: Poly,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub variables: Vec<String>,
    pub steps: Vec<ObstructionStep>,
    /// `coefficient · (φ¹₁)²`, forced to vanish by the chain.
    pub forced: Poly,
    pub coefficient: GR,
    pub certificate_holds: bool,
    pub verdict: Verdict,
}

/// Names `phi{m}{n}` of the ansatz unknowns, in variable order.
pub fn ansatz_variables() -> Vec<String> {
    (1..=6).flat_map(|m| (1..=m).map(move |n| format!("phi{m}{n}"))).collect()
}

fn phi(m: usize, n: usize) -> Poly {
    Poly::var(21, (m - 1) * m / 2 + (n - 1))
}

/// The filtration-respecting ansatz `Φ: f¹ → h*` for the `h₁₁` structure
/// `ε = ρ = 1`, `A = D = 0`, as `m[k][i]` in frame coordinates.
pub fn h11_ansatz(b: &GR, c: &GR) -> Vec<Vec<Poly>> {
    let cst = |x: &GR| Poly::constant(21, x.clone());
    let bm1 = cst(&(b - &GR::one()));
    let cc = cst(c);
    let mut m = vec![vec![Poly::zero(21); 6]; 6];
    // frame order ω¹ ω² ω³ ω̄¹ ω̄² ω̄³ ↦ 0..5
    m[0][0] = phi(1, 1).mul(&bm1);
    m[3][0] = phi(1, 1).mul(&cc);
    m[0][1] = phi(2, 1);
    m[3][1] = phi(2, 2);
    m[0][2] = phi(3, 1);
    m[3][2] = phi(3, 2);
    m[1][2] = phi(3, 3);
    m[4][2] = phi(3, 3);
    for (n, k) in [(1, 0), (2, 3), (3, 1), (4, 4)] {
        m[k][3] = phi(4, n);
        m[k][4] = phi(5, n);
        m[k][5] = phi(6, n);
    }
    m[2][4] = phi(5, 5).mul(&bm1);
    m[5][4] = phi(5, 5).mul(&cc);
    m[2][5] = phi(6, 5);
    m[5][5] = phi(6, 6);
    m
}

/// Whether `r` is a constant-coefficient combination of `eqs`.
fn in_poly_span(eqs: &[Poly], r: &Poly) -> bool {
    let mut monos: BTreeSet<Vec<u8>> = BTreeSet::new();
    for e in eqs.iter().chain(core::iter::once(r)) {
        monos.extend(e.terms().map(|(x, _)| x.clone()));
    }
    let monos: Vec<Vec<u8>> = monos.into_iter().collect();
    let cols: Vec<Vec<GR>> = eqs.iter().map(|e| monos.iter().map(|x| e.coeff(x)).collect()).collect();
    if cols.is_empty() {
        return r.is_zero();
    }
    let a = Matrix::from_cols(&cols, monos.len());
    let target: Vec<GR> = monos.iter().map(|x| r.coeff(x)).collect();
    a.solve(&target).is_some()
}

/// The symbolic elimination chain showing that `DGA(h₁₁, J)` and
/// `DGA(h₁₁, Ω)` are not isomorphic, for the compatible `Ω` given by
/// `a₁, a₂, a₃`.
pub fn h11_obstruction(b: &GR, c: &GR, a1: &GR, a2: &GR, a3: &GR) -> Result<ObstructionReport, MirrorError> {
    let one = GR::one();
    let bp1 = b + &one;
    let bm1 = b - &one;
    if !b.is_real() {
        return Err(MirrorError::PreconditionViolated("B must be real"));
    }
    if c.abs2() != bm1.abs2() {
        return Err(MirrorError::PreconditionViolated("|C|² must equal (B − 1)²"));
    }
    if (b * c).is_zero() {
        return Err(MirrorError::PreconditionViolated("BC must be nonzero"));
    }
    if !(a1 + &a1.conj()).is_zero() || !(a3 + &a3.conj()).is_zero() {
        return Err(MirrorError::PreconditionViolated("a₁ and a₃ must be imaginary"));
    }
    if (a1 * a3 * &bp1).is_zero() {
        return Err(MirrorError::PreconditionViolated("a₁a₃(B + 1) must be nonzero"));
    }
    let eq = ComplexStructureEq::new(one.clone(), one.clone(), GR::zero(), b.clone(), c.clone(), GR::zero())?;
    let h = eq.frame_algebra();
    let w = |i: usize, j: usize| Multivector::word(6, &[i, j]);
    let omega = w(1, 4)
        .scale(a1)
        .add(&w(2, 5).scale(&(a3 * &bp1)))
        .add(&w(1, 5).scale(a2))
        .sub(&w(2, 4).scale(&a2.conj()))
        .add(&w(1, 6).add(&w(3, 4)).scale(a3));
    let omega = SymplecticForm::new(h, omega)?;
    let target = dga_from_symplectic(&omega)?;
    let source = build_f1(&eq)?;
    let eqs = hom_equations(&source, &target, &h11_ansatz(b, c));

    let cst = |x: &GR| Poly::constant(21, x.clone());
    let x_fac = phi(2, 2).mul(&cst(&bm1)).sub(&phi(2, 1).mul(&cst(c)));
    let y_fac = phi(6, 5).mul(&cst(c)).sub(&phi(6, 6).mul(&cst(&bm1)));
    let cphi = phi(1, 1).mul(&cst(c));
    let r8 = phi(4, 3).sub(&phi(4, 4)).sub(&cphi.mul(&x_fac));
    let r9 = phi(5, 5).sub(&phi(1, 1).mul(&phi(3, 3)));
    let r_comb = cphi.mul(&phi(4, 3).sub(&phi(4, 4))).add(&phi(3, 3).mul(&x_fac));
    let r10 = phi(3, 3).add(&cphi.mul(&cphi));
    let r4 = phi(1, 1).mul(&cst(&(c * &bp1 * a3))).sub(&phi(3, 3).mul(&y_fac));
    let r5 = phi(3, 3).mul(&cst(&(a3 * &c.conj()))).sub(&phi(5, 5).mul(&y_fac).mul(&cst(&bp1)));

    let s8 = in_poly_span(&eqs, &r8);
    let s9 = in_poly_span(&eqs, &r9);
    let s_comb = in_poly_span(&eqs, &r_comb);
    // r_comb − Cφ¹₁·r8 = r10·X, and X ≠ 0 because Φ(ω̄¹), Φ(T₃) are independent
    let s10 = s_comb && s8 && r_comb.sub(&cphi.mul(&r8)) == r10.mul(&x_fac);
    let s4 = in_poly_span(&eqs, &r4);
    let s5 = in_poly_span(&eqs, &r5);

    let combo = r10
        .mul(&cst(&(a3 * &c.conj())))
        .sub(&y_fac.mul(&r9).mul(&cst(&bp1)))
        .add(&phi(1, 1).mul(&r4).mul(&cst(&bp1)))
        .sub(&r5);
    let coefficient = GR::from_rational(c.abs2() + bp1.abs2()) * a3 * c;
    let forced = phi(1, 1).mul(&phi(1, 1)).scale(&coefficient);
    let certificate_holds = combo == forced;
    let steps = vec![
        ObstructionStep { label: "d Φ(T2) = C Φ(wb1) ∧ Φ(T3)", residual: r8, holds: s8 },
        ObstructionStep { label: "component of d Φ(wb3) = Φ(wb1) ∧ Φ(wb3)", residual: r9, holds: s9 },
        ObstructionStep { label: "elimination of phi65, phi66 in d Φ(T1)", residual: r_comb, holds: s_comb },
        ObstructionStep { label: "independence of Φ(wb1), Φ(T3)", residual: r10, holds: s10 },
        ObstructionStep { label: "[Φ(T1), Φ(wb2)] = -Φ(wb1)", residual: r4, holds: s4 },
        ObstructionStep { label: "component of [Φ(T1), Φ(wb3)] = -C̄ Φ(wb2)", residual: r5, holds: s5 },
    ];
    let all = steps.iter().all(|s| s.holds);
    let verdict = if all && certificate_holds && !coefficient.is_zero() {
        Verdict::Contradiction
    } else {
        Verdict::Inconclusive
    };
    Ok(ObstructionReport { variables: ansatz_variables(), steps, forced, coefficient, certificate_holds, verdict })
}

/// Outcome for one algebra in [`verify_theorem_main`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MainVerdict {
    /// Explicit isomorphisms verified on every sample.
    SelfMirror,
    /// The obstruction gave a contradiction on every sample.
    Obstructed,
    /// `f¹(g, J)` was never isomorphic to `g` in the sampled data.
    Excluded,
    /// Something did not check out; see the detail.
    Failed,
}

#[derive(Clone, Debug)]
pub struct MainRow {
    pub algebra: &'static str,
    pub verdict: MainVerdict,
    pub samples: usize,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct MainReport {
    pub rows: Vec<MainRow>,
}

impl MainReport {
    pub fn row(&self, name: &str) -> Option<&MainRow> {
        self.rows.iter().find(|r| r.algebra == name)
    }

    /// The self-mirror list matches `h1, h6, h8, h9, h10` and nothing failed.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| {
            let want = match r.algebra {
                "h1" | "h6" | "h8" | "h9" | "h10" => MainVerdict::SelfMirror,
                "h11" => MainVerdict::Obstructed,
                _ => MainVerdict::Excluded,
            };
            r.verdict == want
        })
    }
}

/// Sample counts for [`verify_theorem_main`].
#[derive(Clone, Debug)]
pub struct MainOptions {
    pub seed: u64,
    pub h6_samples: usize,
    pub h8_samples: usize,
    pub h11_samples: usize,
    pub table_samples: usize,
}

impl Default for MainOptions {
    fn default() -> Self {
        MainOptions { seed: 1, h6_samples: 50, h8_samples: 50, h11_samples: 100, table_samples: 20 }
    }
}

/// Admissible `(B, C, a₁, a₂, a₃)` for the `h₁₁` obstruction: `B` real with
/// `B ∉ {0, ±1}`, `C = (B − 1)·u` for a rational unit `u`.
pub fn sample_h11_params(s: &mut Sampler) -> [GR; 5] {
    use num_traits::{One, Zero};
    let b = loop {
        let b = s.rational(-4, 4, true);
        if !b.is_one() && !(-&b).is_one() {
            break b;
        }
    };
    let c = GR::from_rational(&b - rat(1, 1)) * s.unit();
    let imag = |s: &mut Sampler| loop {
        let x = s.rational(-4, 4, true);
        if !x.is_zero() {
            break GR::new(rat(0, 1), x);
        }
    };
    let a1 = imag(s);
    let a3 = imag(s);
    let a2 = s.gaussian(false);
    [GR::from_rational(b), c, a1, a2, a3]
}

fn sample_nonzero(s: &mut Sampler) -> Rational {
    s.rational(-4, 4, true)
}

/// Checks the self-mirror classification: explicit isomorphisms for `h₁`,
/// `h₆`, `h₈`, `h₉`, `h₁₀`, the obstruction for `h₁₁`, and exclusion of
/// every other algebra because sampled `f¹(g, J)` is never `g`.
pub fn verify_theorem_main(opts: &MainOptions) -> MainReport {
    let mut s = Sampler::new(opts.seed);
    let mut rows = Vec::new();
    let verdict_of = |ok: bool, good: MainVerdict| if ok { good } else { MainVerdict::Failed };

    let h1 = mirror_h1().is_ok();
    rows.push(MainRow { algebra: "h1", verdict: verdict_of(h1, MainVerdict::SelfMirror), samples: 1, detail: "identity map".into() });

    let mut bad = Vec::new();
    for _ in 0..opts.h6_samples {
        let p = [s.rational(-4, 4, false), sample_nonzero(&mut s), s.rational(-4, 4, false), s.rational(-4, 4, false), sample_nonzero(&mut s)];
        if let Err(e) = mirror_h6(&p[0], &p[1], &p[2], &p[3], &p[4]) {
            bad.push(format!("{p:?}: {e}"));
        }
    }
    rows.push(main_row("h6", opts.h6_samples, bad, "verified map for (a,b,c,k,l)"));

    let mut bad = Vec::new();
    for _ in 0..opts.h8_samples {
        let (u, v) = loop {
            let (u, v) = (s.rational(-4, 4, false), s.rational(-4, 4, false));
            if &u * &u + &v * &v != rat(0, 1) {
                break (u, v);
            }
        };
        let p = [s.rational(-4, 4, false), sample_nonzero(&mut s), s.rational(-4, 4, false), s.rational(-4, 4, false), u, v];
        if let Err(e) = mirror_h8(&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]) {
            bad.push(format!("{p:?}: {e}"));
        }
    }
    rows.push(main_row("h8", opts.h8_samples, bad, "verified map for (a,b,x,y,u,v)"));

    let h9 = mirror_h9().is_ok();
    rows.push(MainRow { algebra: "h9", verdict: verdict_of(h9, MainVerdict::SelfMirror), samples: 1, detail: "Ω = e13 - e26 - e45".into() });
    let h10 = mirror_h10().is_ok();
    rows.push(MainRow { algebra: "h10", verdict: verdict_of(h10, MainVerdict::SelfMirror), samples: 1, detail: "Ω = i(e16 - e25 + e34)".into() });

    let mut bad = Vec::new();
    for _ in 0..opts.h11_samples {
        let [b, c, a1, a2, a3] = sample_h11_params(&mut s);
        match h11_obstruction(&b, &c, &a1, &a2, &a3) {
            Ok(r) if r.verdict == Verdict::Contradiction => {}
            Ok(_) => bad.push(format!("B={b} C={c}: inconclusive")),
            Err(e) => bad.push(format!("B={b} C={c}: {e}")),
        }
    }
    let ok = bad.is_empty();
    rows.push(MainRow {
        algebra: "h11",
        verdict: verdict_of(ok, MainVerdict::Obstructed),
        samples: opts.h11_samples,
        detail: if ok { "contradiction in every sample".into() } else { bad.join("; ") },
    });

    // exclusion: the diagonal of the sampled (g, f¹) incidence
    let table = verify_tab_f1(opts.seed, opts.table_samples);
    let diagonal: BTreeSet<String> = table.incidence.iter().filter(|(g, f)| g == f).map(|(g, _)| g.clone()).collect();
    let table_ok = table.all_pass();
    for (name, _) in crate::notation::CATALOG.iter() {
        if matches!(*name, "h1" | "h6" | "h8" | "h9" | "h10" | "h11") {
            continue;
        }
        let seen: Vec<&str> = table.incidence.iter().filter(|(g, _)| g == name).map(|(_, f)| f.as_str()).collect();
        let excluded = table_ok && !diagonal.contains(*name);
        let detail = if seen.is_empty() {
            "no nilpotent complex structure".into()
        } else {
            format!("f1 only in {{{}}}", seen.join(", "))
        };
        rows.push(MainRow { algebra: name, verdict: verdict_of(excluded, MainVerdict::Excluded), samples: table.rows.iter().map(|r| r.samples).sum(), detail });
    }
    MainReport { rows }
}

fn main_row(name: &'static str, samples: usize, bad: Vec<String>, ok_detail: &str) -> MainRow {
    if bad.is_empty() {
        MainRow { algebra: name, verdict: MainVerdict::SelfMirror, samples, detail: ok_detail.into() }
    } else {
        MainRow { algebra: name, verdict: MainVerdict::Failed, samples, detail: bad.join("; ") }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx::realify;
    use crate::notation::{catalog_lookup, classify};

    fn e(i: usize) -> Multivector {
        Multivector::generator(6, i - 1)
    }

    #[test]
    fn closed_forms_and_existence() {
        assert_eq!(closed_two_forms(&catalog_lookup("h1").unwrap()).len(), 15);
        assert_eq!(closed_two_forms(&catalog_lookup("h8").unwrap()).len(), 12);
        for name in ["h1", "h6", "h8", "h9", "h10", "h11"] {
            let g = catalog_lookup(name).unwrap();
            assert!(symplectic_exists(&g), "{name}");
            assert!(symplectic_witness(&g, 3).is_some(), "{name}");
        }
    }

    #[test]
    fn h6_brackets() {
        let w = mirror_h6(&rat(2, 1), &rat(3, 1), &rat(5, 1), &rat(-1, 1), &rat(7, 1)).unwrap();
        assert_eq!(classify(w.omega.algebra()).unwrap(), "h6");
        let dga = dga_from_symplectic(&w.omega).unwrap();
        let (b, c, k, l) = (GR::from_int(3), GR::from_int(5), GR::from_int(-1), GR::from_int(7));
        assert_eq!(dga.bracket(&e(4), &e(5)).scale(&b), e(2));
        assert_eq!(dga.bracket(&e(4), &e(6)).scale(&b), e(3));
        assert_eq!(dga.bracket(&e(5), &e(6)).scale(&(&b * &l)), e(3).scale(&k).sub(&e(2).scale(&c)));
    }

    #[test]
    fn h8_brackets() {
        let (u, v) = (rat(2, 1), rat(-3, 1));
        let w = mirror_h8(&rat(1, 1), &rat(4, 1), &rat(1, 2), &rat(0, 1), &u, &v).unwrap();
        assert_eq!(classify(w.omega.algebra()).unwrap(), "h8");
        let dga = dga_from_symplectic(&w.omega).unwrap();
        let (u, v) = (q(&u), q(&v));
        let x = e(5).scale(&-u.clone()).sub(&e(6).scale(&v));
        let y = e(5).scale(&v).sub(&e(6).scale(&u));
        assert_eq!(dga.bracket(&x, &y), e(2).scale(&u).add(&e(1).scale(&v)).neg());
    }

    #[test]
    fn symplectic_dga_axioms() {
        let g = catalog_lookup("h1").unwrap();
        let w = mirror_h1().unwrap();
        let dga = dga_from_symplectic(&w.omega).unwrap();
        assert!(dga.check_axioms().all_pass());
        assert!(dga.degree1_algebra().differentials().iter().all(|x| x.is_zero()));
        assert_eq!(&g, w.omega.algebra());
    }

    #[test]
    fn families() {
        let h8 = ComplexStructureEq::from_ints([0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(compatible_11_family(&h8).unwrap().dim(), 6);
        let h11 = ComplexStructureEq::new(GR::one(), GR::one(), GR::zero(), GR::from_int(3), GR::from_int(2), GR::zero()).unwrap();
        let fam = compatible_11_family(&h11).unwrap();
        assert_eq!(fam.dim(), 4);
        let fa = h11.frame_algebra();
        for b in &fam.basis {
            assert!(fa.d(b).is_zero());
            assert_eq!(&crate::cplx::conj_swap(b), b);
        }
        let real = fam.member_real(&[rat(1, 1), rat(2, 1), rat(0, 1), rat(-1, 1)], &default_coframe(3));
        assert!(realify(&h11).d(&real).is_zero());
        assert!(real.terms().all(|(_, c)| c.is_real()));
    }

    #[test]
    fn h11_example() {
        let i = GR::i();
        let r = h11_obstruction(&GR::from_int(3), &GR::from_int(2), &i, &GR::zero(), &i).unwrap();
        for s in &r.steps {
            assert!(s.holds, "{}: {}", s.label, s.residual);
        }
        assert!(r.certificate_holds);
        assert_eq!(r.verdict, Verdict::Contradiction);
        assert_eq!(r.coefficient, GR::from_int(40) * i.clone());
        assert!(matches!(
            h11_obstruction(&GR::from_int(-1), &GR::from_int(2), &i, &GR::zero(), &i),
            Err(MirrorError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn h17_carries_a_symplectic_form() {
        let g = catalog_lookup("h17").unwrap();
        let omega = e(1).wedge(&e(6)).add(&e(2).wedge(&e(5))).add(&e(3).wedge(&e(4)));
        assert!(SymplecticForm::new(g.clone(), omega).is_ok());
        assert!(symplectic_exists(&g));
    }

    #[test]
    fn theorem_main_small() {
        let opts = MainOptions { seed: 2, h6_samples: 3, h8_samples: 3, h11_samples: 3, table_samples: 2 };
        let r = verify_theorem_main(&opts);
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.rows.len(), 17);
    }

    #[test]
    fn explicit_maps() {
        assert!(mirror_h6(&rat(2, 1), &rat(3, 1), &rat(5, 1), &rat(-1, 1), &rat(7, 1)).is_ok());
        assert!(mirror_h8(&rat(1, 1), &rat(4, 1), &rat(1, 2), &rat(3, 1), &rat(2, 1), &rat(-3, 1)).is_ok());
        assert!(mirror_h1().is_ok());
        assert!(mirror_h9().is_ok());
        assert!(mirror_h10().is_ok());
        assert!(mirror_h6(&rat(0, 1), &rat(1, 1), &rat(0, 1), &rat(0, 1), &rat(1, 1)).is_ok());
        assert!(mirror_h8(&rat(0, 1), &rat(1, 1), &rat(0, 1), &rat(0, 1), &rat(0, 1), &rat(1, 1)).is_ok());
        assert!(matches!(
            mirror_h6(&rat(0, 1), &rat(0, 1), &rat(0, 1), &rat(0, 1), &rat(1, 1)),
            Err(MirrorError::ParamsDegenerate(_))
        ));
    }
}
