//! Differential Gerstenhaber algebras generated in degree one.
//!
//! A [`DGAlgebra`] stores a bracket on the degree-one generators and the
//! differential of each generator; the Schouten bracket and `d` on higher
//! degrees are the unique extensions.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cplx::{ComplexStructureEq, CplxError};
use crate::exterior::{bits, basis_masks, Matrix, Multivector};
use crate::lie::LieAlgebra;
use crate::notation::{classify_complex, ClassifyError};
use crate::scalars::GR;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DgaError {
    #[error("tables have inconsistent dimensions")]
    Dimension,
    #[error("bracket table is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("differential of generator {0} is not a 2-form")]
    NotTwoForm(usize),
    #[error("bracket leaves the degree-one space")]
    NotClosed,
    #[error("axiom violated: {0}")]
    AxiomViolation(&'static str),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("compatibility fails on generators ({0}, {1})")]
    Incompatible(usize, usize),
    #[error("not compatible: {0}")]
    NotCompatible(&'static str),
    #[error(transparent)]
    Cplx(#[from] CplxError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DGAlgebra {
    names: Vec<String>,
    d: LieAlgebra,
    br: Vec<Vec<Vec<GR>>>,
}

/// Outcome of [`DGAlgebra::check_axioms`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub commutativity: bool,
    pub jacobi: bool,
    pub leibniz: bool,
    pub compatibility: bool,
    pub d_squared: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.commutativity && self.jacobi && self.leibniz && self.compatibility && self.d_squared
    }
}

fn sgn(e: usize) -> GR {
    if e.is_multiple_of(2) {
        GR::one()
    } else {
        -GR::one()
    }
}

impl DGAlgebra {
    /// `br[i][j]` is `[g_i, g_j]` in coordinates; `d_table[i]` is `d g_i`.
    pub fn new(names: Vec<String>, d_table: Vec<Multivector>, br: Vec<Vec<Vec<GR>>>) -> Result<Self, DgaError> {
        let n = names.len();
        if d_table.len() != n || br.len() != n || br.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(DgaError::Dimension);
        }
        for i in 0..n {
            for j in 0..n {
                if br[i][j].iter().zip(&br[j][i]).any(|(a, b)| !(a + b).is_zero()) {
                    return Err(DgaError::NotAntisymmetric(i, j));
                }
            }
        }
        let d = LieAlgebra::new(d_table).map_err(|e| match e {
            crate::lie::LieError::NotTwoForm(k) => DgaError::NotTwoForm(k),
            _ => DgaError::Dimension,
        })?;
        Ok(DGAlgebra { names, d, br })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `d` on generators.
    pub fn d_table(&self) -> &[Multivector] {
        self.d.differentials()
    }

    /// `[g_i, g_j]` in coordinates.
    pub fn bracket_table(&self, i: usize, j: usize) -> &[GR] {
        &self.br[i][j]
    }

    pub fn d(&self, a: &Multivector) -> Multivector {
        self.d.d(a)
    }

    /// The complex Lie algebra of degree-one elements.
    pub fn degree1_algebra(&self) -> LieAlgebra {
        LieAlgebra::from_brackets(self.dim(), |i, j| self.br[i][j].clone())
    }

    /// The Lie algebra whose Chevalley–Eilenberg differential is `d`.
    pub fn differential_algebra(&self) -> &LieAlgebra {
        &self.d
    }

    fn bracket_vec(&self, x: &[GR], y: &[GR]) -> Vec<GR> {
        let n = self.dim();
        let mut out = vec![GR::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, b) in self.br[i][j].iter().enumerate() {
                    if !b.is_zero() {
                        out[k] += &c * b;
                    }
                }
            }
        }
        out
    }

    /// Schouten bracket, extended as a biderivation.
    pub fn bracket(&self, a: &Multivector, b: &Multivector) -> Multivector {
        let n = self.dim();
        let mut out = Multivector::zero(n);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let t = self.bracket_monomial(ma, mb);
                if !t.is_zero() {
                    out = out.add(&t.scale(&(ca * cb)));
                }
            }
        }
        out
    }

    fn bracket_monomial(&self, ma: u16, mb: u16) -> Multivector {
        let n = self.dim();
        let (pa, pb) = (ma.count_ones() as usize, mb.count_ones() as usize);
        if pa == 0 || pb == 0 {
            return Multivector::zero(n);
        }
        if pa == 1 && pb == 1 {
            let (i, j) = (ma.trailing_zeros() as usize, mb.trailing_zeros() as usize);
            return Multivector::from_vector(&self.br[i][j]);
        }
        if pb == 1 {
            return self.bracket_monomial(mb, ma).neg();
        }
        // b = y ∧ c with y the lowest generator
        let y = mb & mb.wrapping_neg();
        let c = mb ^ y;
        let one = GR::one();
        let left = self.bracket_monomial(ma, y).wedge(&Multivector::monomial(n, c, one.clone()));
        let right = Multivector::monomial(n, y, one).wedge(&self.bracket_monomial(ma, c));
        left.add(&right.scale(&sgn(pa + 1)))
    }

    /// Checks the axioms exhaustively on generators and on a fixed sample of
    /// degree-two elements.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mono = |m: u16| Multivector::monomial(n, m, GR::one());
        let g1 = basis_masks(n, 1);
        let g2 = basis_masks(n, 2);
        let low: Vec<u16> = g1.iter().chain(&g2).copied().collect();
        let deg = |m: u16| m.count_ones() as usize;

        let d_squared = g1.iter().all(|&m| self.d(&self.d(&mono(m))).is_zero());

        let leibniz = low.iter().all(|&a| {
            g1.iter().all(|&b| {
                let (x, y) = (mono(a), mono(b));
                let lhs = self.d(&x.wedge(&y));
                let rhs = self.d(&x).wedge(&y).add(&x.wedge(&self.d(&y)).scale(&sgn(deg(a))));
                lhs == rhs
            })
        });

        let commutativity = low.iter().all(|&a| {
            low.iter().all(|&b| {
                let lhs = self.bracket_monomial(a, b);
                let rhs = self.bracket_monomial(b, a).scale(&-sgn((deg(a) + 1) * (deg(b) + 1)));
                lhs == rhs
            })
        });

        let jac = |a: u16, b: u16, c: u16| {
            let (x, y, z) = (mono(a), mono(b), mono(c));
            let (da, db, dc) = (deg(a) + 1, deg(b) + 1, deg(c) + 1);
            let t1 = self.bracket(&self.bracket(&x, &y), &z).scale(&sgn(da * dc));
            let t2 = self.bracket(&self.bracket(&y, &z), &x).scale(&sgn(db * da));
            let t3 = self.bracket(&self.bracket(&z, &x), &y).scale(&sgn(dc * db));
            t1.add(&t2).add(&t3).is_zero()
        };
        let jacobi = g1.iter().all(|&a| g1.iter().all(|&b| g1.iter().all(|&c| jac(a, b, c))))
            && g1.iter().all(|&a| g1.iter().all(|&b| g2.iter().step_by(2).all(|&c| jac(a, b, c))));

        let compat = |a: u16, b: u16| {
            let (x, y) = (mono(a), mono(b));
            let lhs = self.d(&self.bracket(&x, &y));
            let rhs = self
                .bracket(&self.d(&x), &y)
                .add(&self.bracket(&x, &self.d(&y)).scale(&sgn(deg(a) + 1)));
            lhs == rhs
        };
        let compatibility = g1.iter().all(|&a| low.iter().all(|&b| compat(a, b)))
            && g2.iter().step_by(3).all(|&a| g2.iter().step_by(2).all(|&b| compat(a, b)));

        AxiomReport { commutativity, jacobi, leibniz, compatibility, d_squared }
    }

    /// `d[a,b] = [da,b] + [a,db]` on generator pairs, and `d² = 0`.
    pub fn check_generator_compatibility(&self) -> Result<(), DgaError> {
        let n = self.dim();
        for i in 0..n {
            let x = Multivector::generator(n, i);
            if !self.d(&self.d(&x)).is_zero() {
                return Err(DgaError::AxiomViolation("d² ≠ 0"));
            }
            for j in i + 1..n {
                let y = Multivector::generator(n, j);
                let lhs = self.d(&self.bracket(&x, &y));
                let rhs = self.bracket(&self.d(&x), &y).add(&self.bracket(&x, &self.d(&y)));
                if lhs != rhs {
                    return Err(DgaError::Incompatible(i, j));
                }
            }
        }
        Ok(())
    }

    /// Checks that the generator map `m` (column `i` = image of `g_i`)
    /// intertwines brackets and differentials with `other`.
    pub fn is_isomorphism(&self, other: &DGAlgebra, m: &Matrix) -> bool {
        let n = self.dim();
        if other.dim() != n || m.nrows() != n || m.ncols() != n || m.determinant().is_zero() {
            return false;
        }
        let cols: Vec<Vec<GR>> = (0..n).map(|i| m.col(i)).collect();
        let images: Vec<Multivector> = cols.iter().map(|c| Multivector::from_vector(c)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| m.apply(&self.br[i][j]) == other.bracket_vec(&cols[i], &cols[j]))
                && self.d_table()[i].substitute(&images) == other.d(&images[i])
        })
    }
}

/// `[x+α, y+β] = [x,y] + ι_x dβ − ι_y dα`.
pub fn courant_bracket(
    g: &LieAlgebra,
    x: &[GR],
    alpha: &Multivector,
    y: &[GR],
    beta: &Multivector,
) -> (Vec<GR>, Multivector) {
    let n = g.dim();
    let contract = |v: &[GR], form: &Multivector| {
        v.iter().enumerate().fold(Multivector::zero(n), |acc, (i, c)| {
            if c.is_zero() {
                acc
            } else {
                acc.add(&form.contract(i).scale(c))
            }
        })
    };
    let form = contract(x, &g.d(beta)).sub(&contract(y, &g.d(alpha)));
    (g.bracket(x, y), form)
}

/// Generator labels of `f¹` in the η order.
pub const F1_NAMES: [&str; 6] = ["wb1", "T3", "wb2", "T2", "wb3", "T1"];

/// A degree-one element `x + α` of `g_C ⊕ g_C*` in frame coordinates.
type Mixed = (Vec<GR>, Multivector);

fn frame_vector(k: usize) -> Vec<GR> {
    let mut v = vec![GR::zero(); 6];
    v[k] = GR::one();
    v
}

/// The η basis `(ω̄¹, T₃, ω̄², T₂, ω̄³, T₁)` of `f¹`, or with `conj` its
/// conjugate-dual partner basis `(T̄₁, ω³, T̄₂, ω², T̄₃, ω¹)` of `f̄¹`.
fn f1_basis(conj: bool) -> Vec<Mixed> {
    let zv = vec![GR::zero(); 6];
    let form = |k: usize| (zv.clone(), Multivector::generator(6, k));
    let vector = |k: usize| (frame_vector(k), Multivector::zero(6));
    if conj {
        vec![vector(3), form(2), vector(4), form(1), vector(5), form(0)]
    } else {
        vec![form(3), vector(2), form(4), vector(1), form(5), vector(0)]
    }
}

fn coords_in(basis: &[Mixed], (v, a): &Mixed) -> Result<Vec<GR>, DgaError> {
    let mut out = vec![GR::zero(); basis.len()];
    let mut seen_v = [false; 6];
    let mut seen_f = [false; 6];
    for (slot, (bv, ba)) in basis.iter().enumerate() {
        if let Some(k) = bv.iter().position(|c| !c.is_zero()) {
            out[slot] = v[k].clone();
            seen_v[k] = true;
        } else {
            let (m, _) = ba.terms().next().expect("basis element");
            out[slot] = a.coeff(m);
            seen_f[bits(m)[0]] = true;
        }
    }
    let stray_v = v.iter().enumerate().any(|(k, c)| !seen_v[k] && !c.is_zero());
    let stray_f = a.terms().any(|(m, _)| m.count_ones() != 1 || !seen_f[bits(m)[0]]);
    if stray_v || stray_f {
        return Err(DgaError::NotClosed);
    }
    Ok(out)
}

fn bracket_table(fa: &LieAlgebra, basis: &[Mixed]) -> Result<Vec<Vec<Vec<GR>>>, DgaError> {
    let n = basis.len();
    let mut br = vec![vec![vec![GR::zero(); n]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let (x, a) = &basis[i];
            let (y, b) = &basis[j];
            let c = coords_in(basis, &courant_bracket(fa, x, a, y, b))?;
            br[j][i] = c.iter().map(|t| -t.clone()).collect();
            br[i][j] = c;
        }
    }
    Ok(br)
}

/// `DGA(g, J)` restricted to its generators `f¹ = g^{1,0} ⊕ g*^{(0,1)}`.
///
/// The bracket is the Courant bracket; `∂̄` is the Chevalley–Eilenberg
/// differential of the conjugate algebra `f̄¹ ≅ (f¹)*`.
pub fn build_f1(eq: &ComplexStructureEq) -> Result<DGAlgebra, DgaError> {
    eq.validate()?;
    let fa = eq.frame_algebra();
    let br = bracket_table(&fa, &f1_basis(false))?;
    let cbr = bracket_table(&fa, &f1_basis(true))?;
    let k = LieAlgebra::from_brackets(6, |i, j| cbr[i][j].clone());
    let names = F1_NAMES.iter().map(|s| s.to_string()).collect();
    let dga = DGAlgebra::new(names, k.differentials().to_vec(), br)?;
    dga.check_generator_compatibility()
        .map_err(|_| DgaError::AxiomViolation("build_f1 produced an incompatible table"))?;
    Ok(dga)
}

/// Isomorphism class of the complex Lie algebra `f¹`.
pub fn classify_f1(eq: &ComplexStructureEq) -> Result<&'static str, ClassifyError> {
    let dga = build_f1(eq).map_err(|_| ClassifyError::NotNilpotent)?;
    classify_complex(&dga.degree1_algebra())
}

/// `DGA(h, O)` on `h*` with `[α,β]_O = O[O⁻¹α, O⁻¹β]`; column `j` of `o` is
/// `O(x_j)` in dual coordinates.
pub fn dga_from_o(h: &LieAlgebra, o: &Matrix) -> Result<DGAlgebra, DgaError> {
    let n = h.dim();
    if o.nrows() != n || o.ncols() != n {
        return Err(DgaError::Dimension);
    }
    let oi = o.inverse().ok_or(DgaError::NotInvertible)?;
    let mut br = vec![vec![vec![GR::zero(); n]; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let v = o.apply(&h.bracket(&oi.col(a), &oi.col(b)));
            br[b][a] = v.iter().map(|t| -t.clone()).collect();
            br[a][b] = v;
        }
    }
    let names = (1..=n).map(|i| alloc::format!("e{i}")).collect();
    let dga = DGAlgebra::new(names, h.differentials().to_vec(), br)?;
    dga.check_generator_compatibility()?;
    Ok(dga)
}

/// Pairing partner of η_b in `f̄¹`, as an η index.
fn dual_partner(b: usize) -> usize {
    5 - b
}

/// The compatible `O = ψ*∘φ` for a Lie isomorphism `φ: h → f¹` (column `i`
/// = `φ(x_i)` in η coordinates) with `h` real. Returns `(O, ψ*)` where
/// `ψ*: f¹ → h*` is a DGA isomorphism onto `DGA(h, O)`.
pub fn build_o(h: &LieAlgebra, phi: &Matrix, eq: &ComplexStructureEq) -> Result<(Matrix, Matrix), DgaError> {
    if !h.is_real() {
        return Err(DgaError::NotCompatible("h has no real structure"));
    }
    let f1 = build_f1(eq)?.degree1_algebra();
    if !is_lie_isomorphism(h, &f1, phi) {
        return Err(DgaError::NotCompatible("φ is not a Lie algebra isomorphism"));
    }
    let n = h.dim();
    // ψ*(η_b) = Σ_i conj(φ[σ(b)][i]) x^i
    let mut psi_star = Matrix::zeros(n, n);
    for b in 0..n {
        for i in 0..n {
            psi_star.set(i, b, phi.get(dual_partner(b), i).conj());
        }
    }
    let o = psi_star.mul(phi);
    Ok((o, psi_star))
}

/// Whether `m` (column `i` = image of `x_i`) is a Lie algebra isomorphism.
pub fn is_lie_isomorphism(h: &LieAlgebra, k: &LieAlgebra, m: &Matrix) -> bool {
    let n = h.dim();
    if k.dim() != n || m.determinant().is_zero() {
        return false;
    }
    let cols: Vec<Vec<GR>> = (0..n).map(|i| m.col(i)).collect();
    (0..n).all(|i| (i + 1..n).all(|j| m.apply(h.bracket_basis(i, j)) == k.bracket(&cols[i], &cols[j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GR;

    fn eq(v: [i64; 6]) -> ComplexStructureEq {
        ComplexStructureEq::from_ints(v).unwrap()
    }

    fn w(idx: &[usize]) -> Multivector {
        Multivector::word(6, idx)
    }

    #[test]
    fn h8_tables() {
        let f = build_f1(&eq([0, 0, 1, 0, 0, 0])).unwrap();
        // [T1, wb3] = −wb1, ∂̄T1 = wb1 ∧ T3
        let mut expect = vec![GR::zero(); 6];
        expect[0] = -GR::one();
        assert_eq!(f.bracket_table(5, 4), expect.as_slice());
        for i in 0..6 {
            for j in 0..6 {
                if !((i, j) == (5, 4) || (i, j) == (4, 5)) {
                    assert!(f.bracket_table(i, j).iter().all(GR::is_zero));
                }
            }
        }
        assert_eq!(f.d_table()[5], w(&[1, 2]));
        assert!(f.d_table()[..5].iter().all(Multivector::is_zero));
    }

    #[test]
    fn h6_eta_differentials() {
        let f = build_f1(&eq([0, 1, 0, 1, 0, 0])).unwrap();
        assert_eq!(f.d_table()[4], w(&[1, 3]));
        assert_eq!(f.d_table()[5], w(&[3, 2]));
        // [T1, T2 ∧ T3] = [T1,T2] ∧ T3 + T2 ∧ [T1,T3] = −T3 ∧ T3 = 0
        let t = f.bracket(&Multivector::generator(6, 5), &w(&[4, 2]));
        assert!(t.is_zero());
        assert!(f.bracket(&Multivector::generator(6, 5), &Multivector::scalar(6, GR::one())).is_zero());
    }

    #[test]
    fn zero_equations_abelian() {
        let f = build_f1(&ComplexStructureEq::zero()).unwrap();
        assert!(f.d_table().iter().all(Multivector::is_zero));
        assert!(f.check_axioms().all_pass());
    }

    #[test]
    fn axioms_and_corruption() {
        let e = eq([0, 1, 0, 1, 0, 0]);
        let f = build_f1(&e).unwrap();
        assert!(f.check_axioms().all_pass());
        // perturb [T1, T2] = −T3 by each generator in turn
        let base: Vec<Vec<Vec<GR>>> = (0..6).map(|i| (0..6).map(|j| f.bracket_table(i, j).to_vec()).collect()).collect();
        let failing: Vec<usize> = (0..6)
            .filter(|&k| {
                let mut br = base.clone();
                br[5][3][k] += GR::one();
                br[3][5][k] -= &GR::one();
                let bad = DGAlgebra::new(f.names().to_vec(), f.d_table().to_vec(), br).unwrap();
                !bad.check_axioms().all_pass()
            })
            .collect();
        // adding wb3 breaks compatibility since ∂̄wb3 ≠ 0
        assert!(failing.contains(&4));
    }

    #[test]
    fn courant_examples() {
        let fa = eq([0, 0, 1, 0, 0, 0]).frame_algebra();
        let z = Multivector::zero(6);
        let x = frame_vector(0);
        let y = frame_vector(1);
        let (v, a) = courant_bracket(&fa, &x, &z, &y, &z);
        assert_eq!(v, fa.bracket(&x, &y));
        assert!(a.is_zero());
        let zv = vec![GR::zero(); 6];
        let (v, a) = courant_bracket(&fa, &zv, &Multivector::generator(6, 2), &zv, &Multivector::generator(6, 5));
        assert!(v.iter().all(GR::is_zero) && a.is_zero());
        // [T1, ω̄3] = −Ā ω̄1
        let (_, a) = courant_bracket(&fa, &x, &z, &zv, &Multivector::generator(6, 5));
        assert_eq!(a, Multivector::generator(6, 3).neg());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_f1(&eq([0, 1, 0, 1, 0, 0])).unwrap(), "h6");
        assert_eq!(classify_f1(&eq([1, 0, 0, 1, 0, 0])).unwrap(), "h3");
        assert_eq!(classify_f1(&eq([1, 1, 0, 0, 0, 0])).unwrap(), "h6");
        assert_eq!(crate::cplx::identify_underlying(&eq([1, 1, 0, 0, 0, 0])).unwrap(), "h15");
    }

    #[test]
    fn o_on_abelian() {
        let h = LieAlgebra::abelian(6);
        let o = Matrix::from_ints(&[
            &[0, 1, 0, 0, 0, 0],
            &[-1, 0, 0, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, -1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, -1, 0],
        ]);
        let d = dga_from_o(&h, &o).unwrap();
        assert!((0..6).all(|i| (0..6).all(|j| d.bracket_table(i, j).iter().all(GR::is_zero))));
        let phi = Matrix::identity(6);
        let (o, psi) = build_o(&h, &phi, &ComplexStructureEq::zero()).unwrap();
        let dho = dga_from_o(&h, &o).unwrap();
        assert!(build_f1(&ComplexStructureEq::zero()).unwrap().is_isomorphism(&dho, &psi));
    }
}
