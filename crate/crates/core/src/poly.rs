//! Sparse multivariate polynomials over the Gaussian rationals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalars::GR;

/// Exponent vector → coefficient; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, GR>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GR) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, GR::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &GR)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, e: Vec<u8>, c: GR) {
        if c.is_zero() {
            return;
        }
        let vanished = {
            let slot = self.terms.entry(e.clone()).or_insert_with(GR::zero);
            *slot += &c;
            slot.is_zero()
        };
        if vanished {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    /// The constant if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GR> {
        match self.degree() {
            None => Some(GR::zero()),
            Some(0) => Some(self.terms.values().next().expect("one term").clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, e: &[u8]) -> GR {
        self.terms.get(e).cloned().unwrap_or_else(GR::zero)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-GR::one())
    }

    pub fn scale(&self, c: &GR) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.nvars, GR::one()), |acc, _| acc.mul(self))
    }

    /// Coefficient-wise complex conjugation (variables are left alone).
    pub fn conj_coeffs(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v.conj())).collect() }
    }

    pub fn eval(&self, x: &[GR]) -> GR {
        let mut out = GR::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &x[i].pow(k as u32);
                }
            }
            out += &t;
        }
        out
    }

    /// Replaces variable `i` by `q`.
    pub fn substitute(&self, i: usize, q: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::constant(self.nvars, GR::one())];
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty").mul(q);
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let mut mono = Poly::zero(self.nvars);
            mono.add_term(rest, c.clone());
            out = out.add(&mono.mul(&powers[k]));
        }
        out
    }

    /// Writes `self = a·x_i + b` when `self` has degree ≤ 1 in `x_i`.
    pub fn split_linear(&self, i: usize) -> Option<(Poly, Poly)> {
        let mut a = Poly::zero(self.nvars);
        let mut b = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            match e[i] {
                0 => b.add_term(e.clone(), c.clone()),
                1 => {
                    let mut r = e.clone();
                    r[i] = 0;
                    a.add_term(r, c.clone());
                }
                _ => return None,
            }
        }
        Some((a, b))
    }

    /// Number of terms containing variable `i`.
    pub fn occurrences(&self, i: usize) -> usize {
        self.terms.keys().filter(|e| e[i] > 0).count()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl Poly {
    /// Text form with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("({c})"));
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => out.push_str(&format!("*{}", names[i])),
                    _ => out.push_str(&format!("*{}^{k}", names[i])),
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.eval(&[GR::from_int(2), GR::from_int(3)]), GR::from_int(25));
        assert!(x.sub(&x).is_zero());
        let q = p.substitute(1, &x.neg());
        assert!(q.is_zero());
        let (a, b) = x.mul(&y).add(&y).split_linear(0).unwrap();
        assert_eq!(a, y);
        assert_eq!(b, y);
        assert!(p.split_linear(0).is_none());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Poly::constant(2, GR::from_int(4)).as_constant(), Some(GR::from_int(4)));
    }
}
