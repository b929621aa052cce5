//! Exterior algebra over a based space of dimension at most 8, plus the
//! exact matrix routines everything else leans on.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalars::GR;

pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("space mismatch: dimension {0} vs {1}")]
    SpaceMismatch(usize, usize),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("dimension {0} outside 1..=8")]
    BadDimension(usize),
    #[error("generator names must be distinct")]
    DuplicateName,
}

/// Named generators of a based space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpace {
    names: Vec<String>,
}

impl BasisSpace {
    pub fn new(names: Vec<String>) -> Result<Self, ExteriorError> {
        if names.is_empty() || names.len() > MAX_DIM {
            return Err(ExteriorError::BadDimension(names.len()));
        }
        let set: BTreeSet<&String> = names.iter().collect();
        if set.len() != names.len() {
            return Err(ExteriorError::DuplicateName);
        }
        Ok(BasisSpace { names })
    }

    /// `prefix1 .. prefixN`.
    pub fn numbered(prefix: &str, dim: usize) -> Result<Self, ExteriorError> {
        Self::new((1..=dim).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Renders `a` with these generator names, e.g. `2·e1∧e3 - e2∧e4`.
    pub fn render(&self, a: &Multivector) -> String {
        if a.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (&m, c)) in a.coeffs.iter().enumerate() {
            let word: Vec<&str> = bits(m).into_iter().map(|i| self.names[i].as_str()).collect();
            let word = if word.is_empty() { String::from("1") } else { word.join("∧") };
            push_term(&mut out, k == 0, c, &word);
        }
        out
    }
}

fn push_term(out: &mut String, first: bool, c: &GR, word: &str) {
    let neg_real = c.is_real() && c.re < num_rational::BigRational::from_integer(0.into());
    if neg_real {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    let mag = if neg_real { -c.clone() } else { c.clone() };
    if mag.is_one() {
        out.push_str(word);
    } else if mag.is_real() {
        out.push_str(&format!("{mag}·{word}"));
    } else {
        out.push_str(&format!("({mag})·{word}"));
    }
}

/// Indices of set bits, ascending.
pub fn bits(m: u16) -> Vec<usize> {
    (0..16).filter(|i| m >> i & 1 == 1).collect()
}

/// All subsets of `0..dim` of size `k`, as bitmasks in lexicographic order
/// of their sorted index lists.
pub fn basis_masks(dim: usize, k: usize) -> Vec<u16> {
    fn rec(start: usize, dim: usize, k: usize, acc: u16, out: &mut Vec<u16>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..dim {
            rec(i + 1, dim, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, 0, &mut out);
    out
}

/// Sign of `e_a ∧ e_b` relative to `e_{a|b}`; zero if they overlap.
pub fn merge_sign(a: u16, b: u16) -> i8 {
    if a & b != 0 {
        return 0;
    }
    // count pairs (i in a, j in b) with i > j
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let low = bb & bb.wrapping_neg();
        inv += (a & !((low << 1).wrapping_sub(1))).count_ones();
        bb ^= low;
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Element of Λ*V, stored as bitmask → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multivector {
    dim: usize,
    coeffs: BTreeMap<u16, GR>,
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Multivector { dim, coeffs: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: GR) -> Self {
        Self::monomial(dim, 0, c)
    }

    pub fn monomial(dim: usize, mask: u16, c: GR) -> Self {
        let mut m = Self::zero(dim);
        m.add_term(mask, c);
        m
    }

    /// Generator `e_{i+1}` (zero-based index `i`).
    pub fn generator(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        Self::monomial(dim, 1 << i, GR::one())
    }

    /// Wedge of generators given by one-based indices, in the given order.
    pub fn word(dim: usize, idx: &[usize]) -> Self {
        let mut acc = Self::scalar(dim, GR::one());
        for &i in idx {
            acc = acc.wedge(&Self::generator(dim, i - 1));
        }
        acc
    }

    /// Degree-1 element from a coordinate vector.
    pub fn from_vector(v: &[GR]) -> Self {
        Self::from_coords(v.len(), 1, v)
    }

    /// Degree-`k` element from coordinates along [`basis_masks`].
    pub fn from_coords(dim: usize, k: usize, v: &[GR]) -> Self {
        let mut m = Self::zero(dim);
        for (mask, c) in basis_masks(dim, k).into_iter().zip(v) {
            m.add_term(mask, c.clone());
        }
        m
    }

    /// Coordinates of the degree-`k` part along [`basis_masks`].
    pub fn coords(&self, k: usize) -> Vec<GR> {
        basis_masks(self.dim, k).into_iter().map(|m| self.coeff(m)).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (u16, &GR)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: u16) -> GR {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, mask: u16, c: GR) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(mask).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    /// Distinct degrees present.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.coeffs.keys().map(|m| m.count_ones()).collect()
    }

    /// The degree if homogeneous; zero counts as homogeneous of any degree
    /// and reports `None` here.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn degree_part(&self, k: u32) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.coeffs {
            if m.count_ones() == k {
                out.coeffs.insert(m, c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &GR) -> Self {
        let mut out = Self::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (&m, x) in &self.coeffs {
            out.coeffs.insert(m, x * c);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "space mismatch");
        let mut out = self.clone();
        for (&m, c) in &o.coeffs {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GR::one())
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.coeffs {
            out.coeffs.insert(m, c.conj());
        }
        out
    }

    pub fn checked_wedge(&self, o: &Self) -> Result<Self, ExteriorError> {
        if self.dim != o.dim {
            return Err(ExteriorError::SpaceMismatch(self.dim, o.dim));
        }
        let mut out = Self::zero(self.dim);
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &o.coeffs {
                let s = merge_sign(a, b);
                if s == 0 {
                    continue;
                }
                let c = ca * cb;
                out.add_term(a | b, if s > 0 { c } else { -c });
            }
        }
        Ok(out)
    }

    /// Panics on space mismatch; see [`Multivector::checked_wedge`].
    pub fn wedge(&self, o: &Self) -> Self {
        self.checked_wedge(o).expect("wedge of elements from different spaces")
    }

    /// Interior product with the basis vector dual to generator `i`.
    pub fn contract(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (&m, c) in &self.coeffs {
            if m >> i & 1 == 0 {
                continue;
            }
            let below = (m & ((1u16 << i) - 1)).count_ones();
            out.add_term(m ^ (1 << i), if below.is_multiple_of(2) { c.clone() } else { -c.clone() });
        }
        out
    }

    /// Applies a linear substitution of generators: generator `i` ↦ `images[i]`
    /// (degree-1 elements, possibly in a space of another dimension).
    pub fn substitute(&self, images: &[Multivector]) -> Multivector {
        assert_eq!(images.len(), self.dim);
        let target = images.first().map(|x| x.dim).unwrap_or(self.dim);
        let mut out = Multivector::zero(target);
        for (&m, c) in &self.coeffs {
            let mut acc = Multivector::scalar(target, c.clone());
            for i in bits(m) {
                acc = acc.wedge(&images[i]);
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multivector {
    /// Degree-2 elements use the shorthand `12+34`; others use `e1∧e2` words.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        let shorthand = self.homogeneous_degree() == Some(2) && self.dim <= 9;
        let mut terms: Vec<(Vec<usize>, &GR)> = self.coeffs.iter().map(|(&m, c)| (bits(m), c)).collect();
        terms.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        for (k, (idx, c)) in terms.into_iter().enumerate() {
            let word = if shorthand {
                idx.iter().map(|i| format!("{}", i + 1)).collect::<String>()
            } else if idx.is_empty() {
                String::from("1")
            } else {
                idx.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("∧")
            };
            if shorthand {
                let neg = c.is_real() && c.re < num_rational::BigRational::from_integer(0.into());
                let mag = if neg { -c.clone() } else { c.clone() };
                if neg {
                    out.push('-');
                } else if k > 0 {
                    out.push('+');
                }
                if !mag.is_one() {
                    if mag.is_real() {
                        out.push_str(&format!("{mag}"));
                    } else {
                        out.push_str(&format!("({mag})"));
                    }
                }
                out.push_str(&word);
            } else {
                push_term(&mut out, k == 0, c, &word);
            }
        }
        write!(f, "{out}")
    }
}

/// Dense matrix over Q(i). A `rows × cols` matrix maps column vectors of
/// length `cols` to length `rows`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GR>,
}

/// Linear maps are just matrices here.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GR::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GR::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<GR>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<GR>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<GR>> =
            rows.iter().map(|r| r.iter().map(|&x| GR::from_int(x)).collect()).collect();
        Self::from_rows(&v)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GR {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GR) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<GR> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<GR> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[GR]) -> Vec<GR> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = GR::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &(&f * rj);
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<GR>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GR::zero(); self.cols];
                v[f] = GR::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(k, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> GR {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = GR::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return GR::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let x = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, x);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, GR::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[GR]) -> Option<Vec<GR>> {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GR::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Some(x)
    }
}

/// Canonical (reduced echelon) basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<GR>]) -> Vec<Vec<GR>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors).rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

pub fn span_dim(vectors: &[Vec<GR>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_rows(vectors).rank()
    }
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<GR>], v: &[GR]) -> bool {
    if v.iter().all(GR::is_zero) {
        return true;
    }
    let mut all = basis.to_vec();
    let before = span_dim(&all);
    all.push(v.to_vec());
    span_dim(&all) == before
}

/// Functionals vanishing on the span of `vectors` (in an `n`-dim space).
pub fn annihilator(vectors: &[Vec<GR>], n: usize) -> Vec<Vec<GR>> {
    if vectors.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![GR::zero(); n];
                v[i] = GR::one();
                v
            })
            .collect();
    }
    Matrix::from_rows(vectors).kernel()
}

/// Intersection of two subspaces of an `n`-dim space.
pub fn intersect(a: &[Vec<GR>], b: &[Vec<GR>], n: usize) -> Vec<Vec<GR>> {
    let mut ann = annihilator(a, n);
    ann.extend(annihilator(b, n));
    // annihilator of the combined annihilators
    let ann = span_basis(&ann);
    annihilator(&ann, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(idx: &[usize]) -> Multivector {
        Multivector::word(6, idx)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(w(&[1]).wedge(&w(&[2])), w(&[1, 2]));
        assert!(w(&[1, 2]).wedge(&w(&[1, 2])).is_zero());
        let a = w(&[1, 3]).add(&w(&[4, 2]));
        assert_eq!(a.wedge(&a), w(&[1, 2, 3, 4]).scale(&GR::from_int(2)));
    }

    #[test]
    fn wedge_space_mismatch() {
        let a = Multivector::generator(4, 0);
        let b = Multivector::generator(5, 0);
        assert_eq!(a.checked_wedge(&b), Err(ExteriorError::SpaceMismatch(4, 5)));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(w(&[1, 2]).contract(0), w(&[2]));
        assert_eq!(w(&[1, 2]).contract(1), w(&[1]).neg());
        assert!(w(&[1, 2]).contract(2).is_zero());
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel().is_empty());
        assert_eq!(Matrix::zeros(3, 3).kernel().len(), 3);
        // d on Λ¹(h8): only e6 ↦ e12
        let mut d = Matrix::zeros(15, 6);
        d.set(0, 5, GR::one());
        let k = d.kernel();
        assert_eq!(k.len(), 5);
        assert!(k.iter().all(|v| v[5].is_zero()));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::from_ints(&[&[1, 0], &[0, 0]]).rank(), 1);
        assert_eq!(Matrix::from_ints(&[&[2, 3], &[5, 7]]).rank(), 2);
        assert_eq!(Matrix::from_ints(&[&[1, 0], &[0, 0]]).rank(), 1);
    }

    #[test]
    fn shorthand_display() {
        let a = w(&[1, 3]).add(&w(&[4, 2]));
        assert_eq!(format!("{a}"), "13-24");
        assert_eq!(format!("{}", w(&[1, 2, 3])), "e1∧e2∧e3");
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_ints(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant(), GR::one());
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn merge_sign_matches_word() {
        assert_eq!(merge_sign(0b10, 0b01), -1);
        assert_eq!(merge_sign(0b01, 0b10), 1);
        assert_eq!(merge_sign(0b11, 0b01), 0);
    }
}
