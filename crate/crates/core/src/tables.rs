//! Parameter samplers for the invariant tables and the sweeps that check
//! them.
//!
//! Every sampler produces exact structure equations satisfying one row's
//! constraints. Relations such as `|C| = |B − ρ|` are met exactly with
//! rational points on the unit circle.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cplx::{identify_underlying, classify_realified, ComplexStructureEq};
use crate::dga::classify_f1;
use crate::exterior::{span_dim, Matrix};
use crate::scalars::{rat, sign, Rational, GR};

/// One row of the `f¹` table: the class of `f¹` and the possible
/// underlying algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct F1Row {
    pub f1: &'static str,
    pub g: &'static [&'static str],
}

const fn r(f1: &'static str, g: &'static [&'static str]) -> F1Row {
    F1Row { f1, g }
}

pub const TAB_F1: [F1Row; 22] = [
    r("h1", &["h1"]),
    r("h8", &["h8"]),
    r("h8", &["h5"]),
    r("h6", &["h2", "h3", "h4", "h5"]),
    r("h8", &["h5"]),
    r("h6", &["h6"]),
    r("h6", &["h5"]),
    r("h7", &["h2"]),
    r("h7", &["h4"]),
    r("h7", &["h5"]),
    r("h3", &["h15"]),
    r("h17", &["h15"]),
    r("h9", &["h9"]),
    r("h9", &["h15"]),
    r("h6", &["h15"]),
    r("h4", &["h7", "h16"]),
    r("h4", &["h15"]),
    r("h10", &["h10"]),
    r("h10", &["h15"]),
    r("h11", &["h12", "h13"]),
    r("h11", &["h11", "h14"]),
    r("h11", &["h15"]),
];

/// Pairs `(g, f¹)` realised by some nilpotent complex structure on `g`.
pub const G_F1_INCIDENCE: [(&str, &str); 26] = [
    ("h1", "h1"),
    ("h2", "h6"),
    ("h2", "h7"),
    ("h3", "h6"),
    ("h4", "h6"),
    ("h4", "h7"),
    ("h5", "h6"),
    ("h5", "h7"),
    ("h5", "h8"),
    ("h6", "h6"),
    ("h7", "h4"),
    ("h8", "h8"),
    ("h9", "h9"),
    ("h10", "h10"),
    ("h11", "h11"),
    ("h12", "h11"),
    ("h13", "h11"),
    ("h14", "h11"),
    ("h15", "h3"),
    ("h15", "h4"),
    ("h15", "h6"),
    ("h15", "h9"),
    ("h15", "h10"),
    ("h15", "h11"),
    ("h15", "h17"),
    ("h16", "h4"),
];

/// The sixteen algebras with nilpotent complex structures, in classification-table order.
pub const TABLE1_ALGEBRAS: [&str; 16] =
    ["h1", "h8", "h3", "h6", "h4", "h2", "h5", "h9", "h7", "h10", "h11", "h12", "h16", "h13", "h14", "h15"];

/// Random exact parameters.
pub struct Sampler {
    rng: ChaCha8Rng,
}

fn z() -> GR {
    GR::zero()
}

fn sign_disc(eq: &ComplexStructureEq) -> i8 {
    let d1 = eq.delta1();
    let d2 = eq.delta2();
    sign(&(d1.abs2() - &d2 * &d2))
}

fn d_span(eq: &ComplexStructureEq) -> usize {
    let ds = eq.frame_algebra();
    let ds = ds.differentials();
    span_dim(&[ds[2].coords(2), ds[5].coords(2)])
}

fn eq6(v: [GR; 6]) -> ComplexStructureEq {
    let [e, r, a, b, c, d] = v;
    ComplexStructureEq { epsilon: e, rho: r, a, b, c, d }
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `p/q` with `p ∈ [lo, hi]`, `q ∈ [1, 3]`.
    pub fn rational(&mut self, lo: i64, hi: i64, nonzero: bool) -> Rational {
        loop {
            let v = rat(self.rng.gen_range(lo..=hi), self.rng.gen_range(1..=3));
            if !nonzero || v != rat(0, 1) {
                return v;
            }
        }
    }

    pub fn gaussian(&mut self, nonzero: bool) -> GR {
        loop {
            let v = GR::new(self.rational(-4, 4, false), self.rational(-4, 4, false));
            if !nonzero || !v.is_zero() {
                return v;
            }
        }
    }

    /// `(p² − q² + 2pq i)/(p² + q²)`, a rational point of modulus one.
    pub fn unit(&mut self) -> GR {
        loop {
            let p: i64 = self.rng.gen_range(-3..=3);
            let q: i64 = self.rng.gen_range(-3..=3);
            if p != 0 || q != 0 {
                let n = p * p + q * q;
                return GR::new(rat(p * p - q * q, n), rat(2 * p * q, n));
            }
        }
    }

    fn hermitian_multiple(&mut self, rank_one: bool) -> [GR; 4] {
        let nu = self.gaussian(true);
        let h = if rank_one {
            let v = [self.gaussian(true), self.gaussian(true)];
            let s = GR::from_rational(self.rational(-4, 4, true));
            [
                &v[0] * &v[0].conj() * &s,
                &v[0] * &v[1].conj() * &s,
                &v[1] * &v[0].conj() * &s,
                &v[1] * &v[1].conj() * &s,
            ]
        } else {
            loop {
                let a = GR::from_rational(self.rational(-4, 4, false));
                let d = GR::from_rational(self.rational(-4, 4, false));
                let b = self.gaussian(false);
                if !(&a * &d - &b * &b.conj()).is_zero() {
                    break [a, b.clone(), b.conj(), d];
                }
            }
        };
        h.map(|x| &nu * &x)
    }

    fn rank_two(&mut self) -> [GR; 4] {
        loop {
            let v = [self.gaussian(false), self.gaussian(false), self.gaussian(false), self.gaussian(false)];
            if !(&v[0] * &v[3] - &v[1] * &v[2]).is_zero() {
                return v;
            }
        }
    }

    /// `A, B, C, D` with `ε = 0` and `|Δ₁| = |Δ₂|`, for the given `ρ`.
    fn balanced(&mut self, rho: &GR) -> [GR; 4] {
        loop {
            let a = self.gaussian(true);
            let b = self.gaussian(false);
            let c = self.gaussian(false);
            let u = &a / &a.conj();
            let k = (b.abs2() + c.abs2() - rho.abs2()) * rat(1, 2) - (&u * &(&b * &c).conj()).re;
            if k == rat(0, 1) {
                continue;
            }
            let y = self.rational(-4, 4, true);
            let x = (&k * &k - &y * &y) / (&k * rat(2, 1));
            let delta = GR::new(x, y).conj() * &u;
            let d = (&delta + &(&b * &c)) / &a;
            return [a, b, c, d];
        }
    }

    fn reject(&mut self, gen: impl Fn(&mut Self) -> ComplexStructureEq, ok: impl Fn(&ComplexStructureEq) -> bool) -> ComplexStructureEq {
        loop {
            let eq = gen(self);
            if ok(&eq) {
                return eq;
            }
        }
    }

    /// Structure equations for row `row` (1-based) of the `f¹` table whose
    /// underlying algebra should be `g`.
    pub fn tab_f1(&mut self, row: usize, g: &str) -> ComplexStructureEq {
        let o = GR::one;
        match row {
            1 => ComplexStructureEq::zero(),
            2 => {
                let [a, b, c, d] = self.hermitian_multiple(true);
                eq6([z(), z(), a, b, c, d])
            }
            3 => self.reject(
                |s| {
                    let u = [s.gaussian(true), s.gaussian(true)];
                    let v = [s.gaussian(true), s.gaussian(true)];
                    eq6([z(), z(), &u[0] * &v[0], &u[0] * &v[1], &u[1] * &v[0], &u[1] * &v[1]])
                },
                |e| d_span(e) == 2,
            ),
            4 => match g {
                "h3" => {
                    let [a, b, c, d] = self.hermitian_multiple(false);
                    eq6([z(), z(), a, b, c, d])
                }
                "h4" => self.reject(
                    |s| {
                        let [a, b, c, d] = s.balanced(&z());
                        eq6([z(), z(), a, b, c, d])
                    },
                    |e| d_span(e) == 2,
                ),
                "h2" => self.reject(
                    |s| {
                        let [a, b, c, d] = s.rank_two();
                        eq6([z(), z(), a, b, c, d])
                    },
                    |e| sign_disc(e) == 1,
                ),
                _ => self.reject(
                    |s| {
                        let [a, b, c, d] = s.rank_two();
                        eq6([z(), z(), a, b, c, d])
                    },
                    |e| sign_disc(e) == -1,
                ),
            },
            5 => eq6([z(), self.gaussian(true), z(), z(), z(), z()]),
            6 | 7 => {
                // rank-one X with rows (p, q) and λ(p, q), in either order;
                // Δ₂ = ½(|q − λ̄p|² − |ρ|²) in the first order
                let p = self.gaussian(true);
                let lam = self.gaussian(true);
                let rho = self.gaussian(true);
                let q = if row == 6 {
                    &lam.conj() * &p + &rho * &self.unit()
                } else {
                    loop {
                        let q = self.gaussian(false);
                        if (&q - &(&lam.conj() * &p)).abs2() != rho.abs2() {
                            break q;
                        }
                    }
                };
                if self.rng.gen_bool(0.5) {
                    let (lp, lq) = (&lam * &p, &lam * &q);
                    eq6([z(), rho, p, q, lp, lq])
                } else {
                    let (lq, lp) = (&lam * &q, &lam * &p);
                    eq6([z(), rho, lq, lp, q, p])
                }
            }
            8 | 10 => {
                let want = if row == 8 { 1 } else { -1 };
                self.reject(
                    |s| {
                        let rho = s.gaussian(true);
                        let [a, b, c, d] = s.rank_two();
                        eq6([z(), rho, a, b, c, d])
                    },
                    |e| sign_disc(e) == want,
                )
            }
            9 => {
                let rho = self.gaussian(true);
                let [a, b, c, d] = self.balanced(&rho);
                eq6([z(), rho, a, b, c, d])
            }
            11 => eq6([o(), z(), z(), self.gaussian(true), z(), z()]),
            12 => eq6([o(), z(), z(), z(), self.gaussian(true), z()]),
            13 => {
                let b = self.gaussian(true);
                let c = &b * &self.unit();
                eq6([o(), z(), z(), b, c, z()])
            }
            14 => loop {
                let (b, c) = (self.gaussian(true), self.gaussian(true));
                if b.abs2() != c.abs2() {
                    break eq6([o(), z(), z(), b, c, z()]);
                }
            },
            15 => eq6([o(), self.gaussian(true), z(), z(), z(), z()]),
            16 => {
                let rho = self.gaussian(true);
                if g == "h7" {
                    return eq6([o(), rho.clone(), z(), rho, z(), z()]);
                }
                loop {
                    let u = self.unit();
                    if !u.is_one() {
                        break eq6([o(), rho.clone(), z(), &rho * &u, z(), z()]);
                    }
                }
            }
            17 => {
                let rho = self.gaussian(true);
                loop {
                    let b = self.gaussian(true);
                    if b.abs2() != rho.abs2() {
                        break eq6([o(), rho, z(), b, z(), z()]);
                    }
                }
            }
            18 => {
                let rho = self.gaussian(true);
                let c = &rho * &self.unit();
                eq6([o(), rho, z(), z(), c, z()])
            }
            19 => {
                let rho = self.gaussian(true);
                loop {
                    let c = self.gaussian(true);
                    if c.abs2() != rho.abs2() {
                        break eq6([o(), rho, z(), z(), c, z()]);
                    }
                }
            }
            20 => {
                if g == "h12" {
                    loop {
                        let rho = self.gaussian(true);
                        let s = GR::from_rational(self.rational(1, 4, true));
                        let b = &rho + &(&self.unit() * &s);
                        let c = &self.unit() * &s;
                        let e = eq6([o(), rho, z(), b, c, z()]);
                        if !e.b.is_zero() && sign_disc(&e) == 1 {
                            break e;
                        }
                    }
                } else {
                    self.reject(
                        |s| eq6([o(), s.gaussian(true), z(), s.gaussian(true), s.gaussian(true), z()]),
                        |e| sign_disc(e) == 1 && (&e.b - &e.rho).abs2() != e.c.abs2(),
                    )
                }
            }
            21 => {
                if g == "h11" {
                    loop {
                        let rho = self.gaussian(true);
                        let b = GR::from_rational(self.rational(-4, 4, true));
                        if b.is_one() {
                            continue;
                        }
                        let c = &rho * &(&b - &GR::one()) * &self.unit();
                        break eq6([o(), rho.clone(), z(), &rho * &b, c, z()]);
                    }
                } else {
                    loop {
                        let r1 = self.rational(1, 4, true);
                        let r2 = self.rational(1, 4, true);
                        let sum = self.rng.gen_bool(0.5);
                        let rr = if sum { &r1 + &r2 } else if r1 > r2 { &r1 - &r2 } else { &r2 - &r1 };
                        if rr == rat(0, 1) {
                            continue;
                        }
                        let b = self.unit().scale(&r1);
                        let c = self.unit().scale(&r2);
                        let rho = self.unit().scale(&rr);
                        let e = eq6([o(), rho, z(), b, c, z()]);
                        if (&e.b - &e.rho).abs2() != e.c.abs2() {
                            break e;
                        }
                    }
                }
            }
            22 => self.reject(
                |s| eq6([o(), s.gaussian(true), z(), s.gaussian(true), s.gaussian(true), z()]),
                |e| sign_disc(e) == -1,
            ),
            _ => panic!("the f¹ table has rows 1 to 22"),
        }
    }

    /// Structure equations whose underlying algebra should be `g`, drawn
    /// from a random `f¹`-table row listing `g`.
    pub fn for_algebra(&mut self, g: &str) -> ComplexStructureEq {
        let rows: Vec<usize> = (1..=22).filter(|&k| TAB_F1[k - 1].g.contains(&g)).collect();
        assert!(!rows.is_empty(), "no complex structures on {g}");
        let k = rows[self.rng.gen_range(0..rows.len())];
        self.tab_f1(k, g)
    }
}

/// One checked sample.
#[derive(Clone, Debug)]
pub struct SampleCheck {
    pub row: usize,
    pub eq: ComplexStructureEq,
    pub expected: String,
    pub got: Vec<String>,
    pub ok: bool,
}

/// Per-row results of a table sweep.
#[derive(Clone, Debug, Default)]
pub struct RowReport {
    pub row: usize,
    pub label: String,
    pub samples: usize,
    pub failures: Vec<SampleCheck>,
}

#[derive(Clone, Debug, Default)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    /// `(g, f¹)` pairs seen; filled by the `f¹` sweep only.
    pub incidence: BTreeSet<(String, String)>,
}

impl TableReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.failures.is_empty())
    }

    /// Whether the observed incidence set is exactly [`G_F1_INCIDENCE`].
    pub fn incidence_matches(&self) -> bool {
        let want: BTreeSet<(String, String)> = G_F1_INCIDENCE.iter().map(|(g, f)| (String::from(*g), String::from(*f))).collect();
        self.incidence == want
    }
}

fn name_or_err<T: core::fmt::Display>(r: &Result<&'static str, T>) -> String {
    match r {
        Ok(s) => String::from(*s),
        Err(e) => format!("error: {e}"),
    }
}

/// Samples every classification-table row and checks that both `identify_underlying`
/// and `classify ∘ realify` return the row's algebra.
pub fn verify_table1(seed: u64, per_row: usize) -> TableReport {
    let mut s = Sampler::new(seed);
    let mut out = TableReport::default();
    for (k, g) in TABLE1_ALGEBRAS.iter().enumerate() {
        let mut rep = RowReport { row: k + 1, label: String::from(*g), ..Default::default() };
        for _ in 0..per_row {
            let eq = s.for_algebra(g);
            let a = name_or_err(&identify_underlying(&eq));
            let b = name_or_err(&classify_realified(&eq));
            rep.samples += 1;
            if a != *g || b != *g {
                rep.failures.push(SampleCheck { row: k + 1, eq, expected: String::from(*g), got: vec_of(a, b), ok: false });
            }
        }
        out.rows.push(rep);
    }
    out
}

fn vec_of(a: String, b: String) -> Vec<String> {
    let mut v = Vec::new();
    v.push(a);
    v.push(b);
    v
}

/// Samples every `f¹`-table row, cycling through its underlying algebras,
/// and checks `classify_f1` and `identify_underlying`.
pub fn verify_tab_f1(seed: u64, per_row: usize) -> TableReport {
    let mut s = Sampler::new(seed);
    let mut out = TableReport::default();
    for (k, row) in TAB_F1.iter().enumerate() {
        let mut rep = RowReport { row: k + 1, label: format!("{} <- {}", row.f1, row.g.join(",")), ..Default::default() };
        let n = per_row.max(row.g.len());
        for t in 0..n {
            let g = row.g[t % row.g.len()];
            let eq = s.tab_f1(k + 1, g);
            let f = name_or_err(&classify_f1(&eq));
            let u = name_or_err(&identify_underlying(&eq));
            rep.samples += 1;
            out.incidence.insert((u.clone(), f.clone()));
            if f != row.f1 || !row.g.contains(&u.as_str()) {
                rep.failures.push(SampleCheck {
                    row: k + 1,
                    eq,
                    expected: format!("{} / {}", row.f1, row.g.join(",")),
                    got: vec_of(f, u),
                    ok: false,
                });
            }
        }
        out.rows.push(rep);
    }
    out
}

/// A random invertible `n×n` matrix with Gaussian-rational entries.
pub fn random_invertible(s: &mut Sampler, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<GR>> = (0..n).map(|_| (0..n).map(|_| s.gaussian(false)).collect()).collect();
        let m = Matrix::from_rows(&rows);
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_points_have_modulus_one() {
        let mut s = Sampler::new(9);
        for _ in 0..20 {
            assert_eq!(s.unit().abs2(), rat(1, 1));
        }
    }

    #[test]
    fn rows_are_admissible() {
        let mut s = Sampler::new(4);
        for (k, row) in TAB_F1.iter().enumerate() {
            for g in row.g {
                assert!(s.tab_f1(k + 1, g).validate().is_ok(), "row {}", k + 1);
            }
        }
    }

    #[test]
    fn small_sweeps() {
        let t1 = verify_table1(1, 2);
        assert!(t1.all_pass(), "{:?}", t1.rows.iter().flat_map(|r| &r.failures).collect::<Vec<_>>());
        let f1 = verify_tab_f1(1, 2);
        assert!(f1.all_pass(), "{:?}", f1.rows.iter().flat_map(|r| &r.failures).collect::<Vec<_>>());
    }
}
