//! Lie algebras presented by Chevalley–Eilenberg differentials, their
//! series, cohomology and an invariant fingerprint for catalog matching.

use alloc::vec;
use alloc::vec::Vec;

use crate::exterior::{annihilator, basis_masks, bits, span_basis, span_dim, Matrix, Multivector};
use crate::scalars::{sign, Rational, GR};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("de^{0} is not a 2-form")]
    NotTwoForm(usize),
    #[error("differential lives in dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("descending series stabilises at dimension {0}: not nilpotent")]
    NotNilpotent(usize),
}

/// Structure constants encoded by `de^k`, with `dα(x,y) = −α([x,y])`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    diffs: Vec<Multivector>,
    // br[i][j] = [e_i, e_j] as coordinates
    br: Vec<Vec<Vec<GR>>>,
}

impl LieAlgebra {
    pub fn new(diffs: Vec<Multivector>) -> Result<Self, LieError> {
        let dim = diffs.len();
        for (k, d) in diffs.iter().enumerate() {
            if d.dim() != dim {
                return Err(LieError::DimensionMismatch { expected: dim, found: d.dim() });
            }
            if !d.is_zero() && d.homogeneous_degree() != Some(2) {
                return Err(LieError::NotTwoForm(k + 1));
            }
        }
        let mut br = vec![vec![vec![GR::zero(); dim]; dim]; dim];
        for (k, d) in diffs.iter().enumerate() {
            for (m, c) in d.terms() {
                let ij = bits(m);
                let (i, j) = (ij[0], ij[1]);
                br[i][j][k] -= c;
                br[j][i][k] += c;
            }
        }
        Ok(LieAlgebra { dim, diffs, br })
    }

    /// Builds the algebra from brackets `[e_i, e_j]` given for `i < j`.
    pub fn from_brackets(dim: usize, bracket: impl Fn(usize, usize) -> Vec<GR>) -> Self {
        let mut diffs = vec![Multivector::zero(dim); dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = bracket(i, j);
                for (k, c) in v.iter().enumerate() {
                    diffs[k].add_term((1 << i) | (1 << j), -c.clone());
                }
            }
        }
        Self::new(diffs).expect("brackets give 2-forms")
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(vec![Multivector::zero(dim); dim]).expect("zero differentials")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn differentials(&self) -> &[Multivector] {
        &self.diffs
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[GR] {
        &self.br[i][j]
    }

    pub fn bracket(&self, x: &[GR], y: &[GR]) -> Vec<GR> {
        let mut out = vec![GR::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
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

    /// True when every structure constant is real.
    pub fn is_real(&self) -> bool {
        self.diffs.iter().all(|d| d.terms().all(|(_, c)| c.is_real()))
    }

    /// `de^k ∈ Λ²⟨e^1..e^{k-1}⟩` for every k.
    pub fn is_malcev(&self) -> bool {
        self.diffs.iter().enumerate().all(|(k, d)| d.terms().all(|(m, _)| (m >> k) == 0))
    }

    /// Chevalley–Eilenberg differential, extended by the graded Leibniz rule.
    pub fn d(&self, a: &Multivector) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for (m, c) in a.terms() {
            let idx = bits(m);
            for (pos, &i) in idx.iter().enumerate() {
                if self.diffs[i].is_zero() {
                    continue;
                }
                let left: u16 = idx[..pos].iter().map(|&b| 1u16 << b).sum();
                let right: u16 = idx[pos + 1..].iter().map(|&b| 1u16 << b).sum();
                let term = Multivector::monomial(self.dim, left, c.clone())
                    .wedge(&self.diffs[i])
                    .wedge(&Multivector::monomial(self.dim, right, GR::one()));
                out = if pos % 2 == 0 { out.add(&term) } else { out.sub(&term) };
            }
        }
        out
    }

    /// Matrix of `d : Λ^k → Λ^{k+1}` in the [`basis_masks`] bases.
    pub fn d_matrix(&self, k: usize) -> Matrix {
        let src = basis_masks(self.dim, k);
        let cols: Vec<Vec<GR>> = src
            .iter()
            .map(|&m| self.d(&Multivector::monomial(self.dim, m, GR::one())).coords(k + 1))
            .collect();
        Matrix::from_cols(&cols, basis_masks(self.dim, k + 1).len())
    }

    /// `d ∘ d = 0` on all generators, which is equivalent to Jacobi.
    pub fn check_jacobi(&self) -> bool {
        self.diffs.iter().all(|d| self.d(d).is_zero())
    }

    /// Jacobi identity checked directly on the bracket table.
    pub fn check_jacobi_brackets(&self) -> bool {
        let n = self.dim;
        let e = |i: usize| {
            let mut v = vec![GR::zero(); n];
            v[i] = GR::one();
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (e(i), e(j), e(k));
                    let s1 = self.bracket(&self.bracket(&a, &b), &c);
                    let s2 = self.bracket(&self.bracket(&b, &c), &a);
                    let s3 = self.bracket(&self.bracket(&c, &a), &b);
                    if (0..n).any(|t| !(&(&s1[t] + &s2[t]) + &s3[t]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn full_space(&self) -> Vec<Vec<GR>> {
        (0..self.dim)
            .map(|i| {
                let mut v = vec![GR::zero(); self.dim];
                v[i] = GR::one();
                v
            })
            .collect()
    }

    /// `{α : dα ∈ Λ²W}` for a subspace `W` of g*.
    fn forms_with_d_in(&self, w: &[Vec<GR>]) -> Vec<Vec<GR>> {
        let n = self.dim;
        let mut l2 = Vec::new();
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                let x = Multivector::from_vector(&w[a]).wedge(&Multivector::from_vector(&w[b]));
                l2.push(x.coords(2));
            }
        }
        let npairs = n * (n - 1) / 2;
        let l2 = span_basis(&l2);
        let ann = annihilator(&l2, npairs);
        if ann.is_empty() {
            return self.full_space();
        }
        let d1 = self.d_matrix(1);
        let cons = Matrix::from_rows(&ann).mul(&d1);
        cons.kernel()
    }

    /// Bases of the dual sequence `V_1 ⊂ V_2 ⊂ …` up to the whole dual.
    pub fn dual_sequence_spaces(&self) -> Result<Vec<Vec<Vec<GR>>>, LieError> {
        let mut out = Vec::new();
        let mut cur: Vec<Vec<GR>> = Vec::new();
        loop {
            let next = span_basis(&self.forms_with_d_in(&cur));
            if next.len() == cur.len() {
                return Err(LieError::NotNilpotent(cur.len()));
            }
            cur = next;
            out.push(cur.clone());
            if cur.len() == self.dim {
                return Ok(out);
            }
        }
    }

    /// `(n_1, n_2, …)`, ending with the dimension.
    pub fn dual_sequence(&self) -> Result<Vec<usize>, LieError> {
        Ok(self.dual_sequence_spaces()?.iter().map(Vec::len).collect())
    }

    fn bracket_span(&self, a: &[Vec<GR>], b: &[Vec<GR>]) -> Vec<Vec<GR>> {
        let mut v = Vec::new();
        for x in a {
            for y in b {
                let z = self.bracket(x, y);
                if z.iter().any(|c| !c.is_zero()) {
                    v.push(z);
                }
            }
        }
        span_basis(&v)
    }

    /// Bases of `g = g_0 ⊃ g_1 ⊃ … ⊃ 0`.
    pub fn lower_central_spaces(&self) -> Result<Vec<Vec<Vec<GR>>>, LieError> {
        let full = self.full_space();
        let mut out = vec![full.clone()];
        let mut cur = full.clone();
        while !cur.is_empty() {
            let next = self.bracket_span(&cur, &full);
            if next.len() == cur.len() {
                return Err(LieError::NotNilpotent(cur.len()));
            }
            cur = next;
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn lower_central(&self) -> Result<Vec<usize>, LieError> {
        Ok(self.lower_central_spaces()?.iter().map(Vec::len).collect())
    }

    /// Bases of the ascending series `D^1 ⊂ D^2 ⊂ …` up to the whole algebra.
    pub fn ascending_spaces(&self) -> Result<Vec<Vec<Vec<GR>>>, LieError> {
        let n = self.dim;
        let mut out = Vec::new();
        let mut cur: Vec<Vec<GR>> = Vec::new();
        loop {
            // x with [x, e_j] ∈ cur for all j
            let ann = annihilator(&cur, n);
            let mut rows = Vec::new();
            for j in 0..n {
                for f in &ann {
                    // row: x ↦ f([x, e_j])
                    let row: Vec<GR> = (0..n)
                        .map(|i| {
                            let mut acc = GR::zero();
                            for (k, c) in self.br[i][j].iter().enumerate() {
                                if !c.is_zero() && !f[k].is_zero() {
                                    acc += c * &f[k];
                                }
                            }
                            acc
                        })
                        .collect();
                    rows.push(row);
                }
            }
            let next = if rows.is_empty() { self.full_space() } else { Matrix::from_rows(&rows).kernel() };
            let next = span_basis(&next);
            if next.len() == cur.len() {
                return Err(LieError::NotNilpotent(cur.len()));
            }
            cur = next;
            out.push(cur.clone());
            if cur.len() == n {
                return Ok(out);
            }
        }
    }

    pub fn ascending_series(&self) -> Result<Vec<usize>, LieError> {
        Ok(self.ascending_spaces()?.iter().map(Vec::len).collect())
    }

    /// `g ⊃ [g,g] ⊃ …`, stopping at zero or when it stabilises.
    pub fn derived_series(&self) -> Vec<usize> {
        let mut cur = self.full_space();
        let mut out = vec![cur.len()];
        while !cur.is_empty() {
            let next = self.bracket_span(&cur, &cur);
            if next.len() == cur.len() {
                break;
            }
            cur = next;
            out.push(cur.len());
        }
        out
    }

    /// `dim ker d|Λ^k − rank d|Λ^{k−1}`.
    pub fn betti(&self, k: usize) -> usize {
        assert!(k <= self.dim);
        let size = basis_masks(self.dim, k).len();
        let rk_out = if k == self.dim { 0 } else { self.d_matrix(k).rank() };
        let rk_in = if k == 0 { 0 } else { self.d_matrix(k - 1).rank() };
        size - rk_out - rk_in
    }

    /// Basis of `B = d(Λ¹)` as 2-forms.
    pub fn exact_two_forms(&self) -> Vec<Multivector> {
        let v: Vec<Vec<GR>> = self.diffs.iter().map(|d| d.coords(2)).collect();
        span_basis(&v).iter().map(|c| Multivector::from_coords(self.dim, 2, c)).collect()
    }

    /// Rank of `Sym²B → Λ⁴`, `β ⊙ β' ↦ β∧β'`.
    pub fn wedge_pencil_rank(&self) -> usize {
        let b = self.exact_two_forms();
        let mut v = Vec::new();
        for i in 0..b.len() {
            for j in i..b.len() {
                v.push(b[i].wedge(&b[j]).coords(4));
            }
        }
        span_dim(&v)
    }

    /// The quadratic form `β ↦ β∧β` on `B`, read along the image line when
    /// the pencil image is one-dimensional.
    pub fn pencil_quadratic_form(&self) -> Option<PencilForm> {
        if self.wedge_pencil_rank() != 1 {
            return None;
        }
        let b = self.exact_two_forms();
        let m = b.len();
        let mut gram = vec![vec![Multivector::zero(self.dim); m]; m];
        let mut line: Option<Multivector> = None;
        for i in 0..m {
            for j in 0..m {
                gram[i][j] = b[i].wedge(&b[j]);
                if line.is_none() && !gram[i][j].is_zero() {
                    line = Some(gram[i][j].clone());
                }
            }
        }
        let line = line?;
        let (mask, lead) = line.terms().next().map(|(k, c)| (k, c.clone()))?;
        let q: Vec<Vec<GR>> = gram.iter().map(|r| r.iter().map(|w| &w.coeff(mask) / &lead).collect()).collect();
        let qm = Matrix::from_rows(&q);
        let rank = qm.rank();
        let abs_signature = if q.iter().flatten().all(GR::is_real) {
            let s = signature(&q.iter().map(|r| r.iter().map(|x| x.re.clone()).collect()).collect::<Vec<_>>());
            Some((s.0 as i64 - s.1 as i64).unsigned_abs() as usize)
        } else {
            None
        };
        Some(PencilForm { rank, abs_signature })
    }

    /// The invariant tuple used for catalog matching.
    pub fn fingerprint(&self) -> Result<Fingerprint, LieError> {
        let pf = self.pencil_quadratic_form();
        Ok(Fingerprint {
            dim: self.dim,
            dual: self.dual_sequence()?,
            lcs: self.lower_central()?,
            ucs: self.ascending_series()?,
            derived: self.derived_series(),
            betti: [self.betti(1), self.betti(2), self.betti(3)],
            exact_dim: self.exact_two_forms().len(),
            pencil_rank: self.wedge_pencil_rank(),
            pencil_form_rank: pf.map(|p| p.rank),
            pencil_form_abs_signature: if self.is_real() { pf.and_then(|p| p.abs_signature) } else { None },
        })
    }

    /// Applies a change of basis: new generator `f^i = Σ_j p[i][j] e^j`.
    pub fn change_basis(&self, p: &Matrix) -> Option<LieAlgebra> {
        let n = self.dim;
        let q = p.inverse()?;
        // e^j = Σ_i q[j][i] f^i
        let images: Vec<Multivector> = (0..n).map(|j| Multivector::from_vector(&q.row(j))).collect();
        let diffs = (0..n)
            .map(|i| {
                let mut de = Multivector::zero(n);
                for j in 0..n {
                    let c = p.get(i, j);
                    if !c.is_zero() {
                        de = de.add(&self.diffs[j].scale(c));
                    }
                }
                de.substitute(&images)
            })
            .collect();
        LieAlgebra::new(diffs).ok()
    }
}

/// Rank and |signature| of the pencil quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PencilForm {
    pub rank: usize,
    pub abs_signature: Option<usize>,
}

/// `(positive, negative)` inertia of a symmetric rational matrix.
pub fn signature(q: &[Vec<Rational>]) -> (usize, usize) {
    let mut a: Vec<Vec<Rational>> = q.to_vec();
    let (mut pos, mut neg) = (0, 0);
    while !a.is_empty() {
        let n = a.len();
        let piv = (0..n).find(|&i| sign(&a[i][i]) != 0);
        let k = match piv {
            Some(k) => k,
            None => {
                let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| sign(&a[i][j]) != 0)
                else {
                    break;
                };
                // e_i ← e_i + e_j makes the diagonal entry 2 a_ij
                for r in 0..n {
                    let x = a[r][j].clone();
                    a[r][i] += x;
                }
                for c in 0..n {
                    let x = a[j][c].clone();
                    a[i][c] += x;
                }
                i
            }
        };
        let p = a[k][k].clone();
        if sign(&p) > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        let mut next = Vec::new();
        for r in (0..n).filter(|&r| r != k) {
            let row = (0..n)
                .filter(|&c| c != k)
                .map(|c| &a[r][c] - &(&a[r][k] * &a[k][c] / &p))
                .collect();
            next.push(row);
        }
        a = next;
    }
    (pos, neg)
}

/// Isomorphism invariants; two algebras with different fingerprints are not
/// isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub dual: Vec<usize>,
    pub lcs: Vec<usize>,
    pub ucs: Vec<usize>,
    pub derived: Vec<usize>,
    pub betti: [usize; 3],
    pub exact_dim: usize,
    pub pencil_rank: usize,
    pub pencil_form_rank: Option<usize>,
    /// Real algebras only.
    pub pencil_form_abs_signature: Option<usize>,
}

impl Fingerprint {
    /// The part that survives complexification.
    pub fn complex_part(&self) -> Fingerprint {
        Fingerprint { pencil_form_abs_signature: None, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse;

    #[test]
    fn d_on_h6() {
        let g = parse("(0,0,0,0,12,13)").unwrap();
        let e56 = Multivector::word(6, &[5, 6]);
        let want = Multivector::word(6, &[1, 2, 6]).sub(&Multivector::word(6, &[5, 1, 3]));
        assert_eq!(g.d(&e56), want);
        let h1 = LieAlgebra::abelian(6);
        assert!(h1.d(&Multivector::word(6, &[1, 2])).is_zero());
        let h8 = parse("(0,0,0,0,0,12)").unwrap();
        assert_eq!(h8.d(&Multivector::word(6, &[6])), Multivector::word(6, &[1, 2]));
    }

    #[test]
    fn jacobi_examples() {
        assert!(parse("(0,0,0,12,13+42,14+23)").unwrap().check_jacobi());
        assert!(LieAlgebra::abelian(6).check_jacobi());
        // de^6 = e15 with de^5 = e34: d²e^6 = −e1∧e34 ≠ 0
        let bad = parse("(0,0,0,12,34,15)").unwrap();
        assert!(!bad.check_jacobi());
        assert!(!bad.check_jacobi_brackets());
    }

    #[test]
    fn series_examples() {
        let h9 = parse("(0,0,0,0,12,14+25)").unwrap();
        assert_eq!(h9.dual_sequence().unwrap(), vec![4, 5, 6]);
        assert_eq!(LieAlgebra::abelian(6).dual_sequence().unwrap(), vec![6]);
        let h7 = parse("(0,0,0,12,13,23)").unwrap();
        assert_eq!(h7.dual_sequence().unwrap(), vec![3, 6]);
        assert_eq!(h7.lower_central().unwrap(), vec![6, 3, 0]);
        assert_eq!(h7.derived_series(), vec![6, 3, 0]);
        let h8 = parse("(0,0,0,0,0,12)").unwrap();
        assert_eq!(h8.lower_central().unwrap(), vec![6, 1, 0]);
        assert_eq!(h8.derived_series(), vec![6, 1, 0]);
        assert_eq!(LieAlgebra::abelian(6).lower_central().unwrap(), vec![6, 0]);
        assert_eq!(LieAlgebra::abelian(6).ascending_series().unwrap(), vec![6]);
        assert_eq!(LieAlgebra::abelian(6).derived_series(), vec![6, 0]);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(LieAlgebra::abelian(6).betti(1), 6);
        assert_eq!(parse("(0,0,0,12,13,23)").unwrap().betti(1), 3);
        assert_eq!(parse("(0,0,0,0,0,12)").unwrap().betti(2), 11);
    }

    #[test]
    fn pencil_examples() {
        assert_eq!(parse("(0,0,0,0,0,12)").unwrap().wedge_pencil_rank(), 0);
        assert_eq!(parse("(0,0,0,0,12,34)").unwrap().wedge_pencil_rank(), 1);
        assert_eq!(LieAlgebra::abelian(6).wedge_pencil_rank(), 0);
    }

    #[test]
    fn not_nilpotent_reported() {
        // so(3): de1 = e23, de2 = e31, de3 = e12 in a non-Malcev order
        let d = vec![
            Multivector::word(3, &[2, 3]),
            Multivector::word(3, &[3, 1]),
            Multivector::word(3, &[1, 2]),
        ];
        let g = LieAlgebra::new(d).unwrap();
        assert!(g.check_jacobi());
        assert!(matches!(g.lower_central(), Err(LieError::NotNilpotent(3))));
        assert!(matches!(g.dual_sequence(), Err(LieError::NotNilpotent(0))));
    }

    #[test]
    fn signature_small() {
        use crate::scalars::rat;
        let q = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]];
        assert_eq!(signature(&q), (1, 1));
        let q = vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]];
        assert_eq!(signature(&q), (2, 0));
    }
}
