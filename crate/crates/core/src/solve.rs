//! A small exact solver for sparse polynomial systems of low degree.
//!
//! Linear equations with a constant pivot are eliminated exactly; products
//! are split by branching on their factors; univariate quadratics are solved
//! when the discriminant is a square in `Q(i)`. Otherwise a variable is fixed
//! to a small value, with backtracking under a node budget. A leaf
//! is accepted only if the caller's `accept` check passes on the full
//! assignment, so answers are exact.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::scalars::{rat, GR};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    pub max_nodes: usize,
    /// How many of the candidate values are tried when a variable has to
    /// be fixed.
    pub fix_tries: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 1, max_nodes: 4000, fix_tries: 10 }
    }
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solution(Vec<GR>),
    /// No accepted solution. `exhausted` is true only when the tree was
    /// closed without guessing, so the system has no solution at all.
    NoSolution { reduced: Vec<Poly>, exhausted: bool },
}

struct State {
    eqs: Vec<Poly>,
    // value of each variable in terms of the remaining free ones
    subs: Vec<Option<Poly>>,
}

pub struct Solver<'a> {
    nvars: usize,
    opts: SolveOptions,
    rng: ChaCha8Rng,
    nodes: usize,
    out_of_budget: bool,
    guessed: bool,
    accept: &'a dyn Fn(&[GR]) -> bool,
}

impl<'a> Solver<'a> {
    pub fn new(nvars: usize, opts: SolveOptions, accept: &'a dyn Fn(&[GR]) -> bool) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(opts.seed);
        Solver { nvars, opts, rng, nodes: 0, out_of_budget: false, guessed: false, accept }
    }

    pub fn solve(&mut self, eqs: Vec<Poly>) -> SolveOutcome {
        let mut root = State { eqs, subs: vec![None; self.nvars] };
        if !simplify(&mut root) {
            return SolveOutcome::NoSolution { reduced: root.eqs, exhausted: true };
        }
        let reduced = root.eqs.clone();
        match self.search(root) {
            Some(x) => SolveOutcome::Solution(x),
            None => SolveOutcome::NoSolution { reduced, exhausted: !self.out_of_budget && !self.guessed },
        }
    }

    fn small_value(&mut self) -> GR {
        let mut v = 0;
        while v == 0 {
            v = self.rng.gen_range(-4i64..=4);
        }
        GR::from_int(v)
    }

    fn search(&mut self, mut st: State) -> Option<Vec<GR>> {
        self.nodes += 1;
        if self.nodes > self.opts.max_nodes {
            self.out_of_budget = true;
            return None;
        }
        if !simplify(&mut st) {
            return None;
        }
        if st.eqs.is_empty() {
            return self.leaf(&st);
        }
        // a common variable factor: x·q = 0
        for (k, e) in st.eqs.iter().enumerate() {
            if let Some(x) = common_variable(e) {
                let q = divide_by_var(e, x);
                let mut a = State { eqs: st.eqs.clone(), subs: st.subs.clone() };
                a.eqs[k] = q;
                if let Some(s) = self.search(a) {
                    return Some(s);
                }
                let mut b = State { eqs: st.eqs.clone(), subs: st.subs.clone() };
                assign(&mut b, x, &Poly::zero(self.nvars));
                return self.search(b);
            }
        }
        // univariate quadratic
        for e in &st.eqs {
            let vars = e.variables();
            if vars.len() == 1 && e.degree() == Some(2) {
                let x = vars[0];
                let mut ex = vec![0u8; self.nvars];
                ex[x] = 2;
                let a = e.coeff(&ex);
                ex[x] = 1;
                let b = e.coeff(&ex);
                let c = e.coeff(&vec![0u8; self.nvars]);
                let disc = &b * &b - &a * &c * GR::from_int(4);
                let Some(r) = disc.sqrt() else { continue };
                let two_a = a.scale(&rat(2, 1));
                let inv = two_a.inv().expect("degree two");
                let roots = [(-&b + &r) * &inv, (-&b - &r) * &inv];
                for root in roots {
                    let mut s = State { eqs: st.eqs.clone(), subs: st.subs.clone() };
                    assign(&mut s, x, &Poly::constant(self.nvars, root));
                    if let Some(sol) = self.search(s) {
                        return Some(sol);
                    }
                }
                return None;
            }
        }
        // fix the variable occurring in the most nonlinear terms
        let mut weight = vec![0usize; self.nvars];
        for e in &st.eqs {
            for (ex, _) in e.terms() {
                if ex.iter().map(|&k| k as u32).sum::<u32>() >= 2 {
                    for (i, &k) in ex.iter().enumerate() {
                        if k > 0 {
                            weight[i] += 1;
                        }
                    }
                }
            }
        }
        let x = (0..self.nvars).max_by_key(|&i| weight[i]).expect("variables");
        if weight[x] == 0 {
            return None;
        }
        self.guessed = true;
        let mut values: Vec<GR> = [1, -1, 2, -2, 3, -3, 4, -4].iter().map(|&k| GR::from_int(k)).collect();
        values.extend([GR::new(rat(1, 2), rat(0, 1)), GR::new(rat(-1, 2), rat(0, 1))]);
        values.shuffle(&mut self.rng);
        for v in values.into_iter().take(self.opts.fix_tries) {
            let mut s = State { eqs: st.eqs.clone(), subs: st.subs.clone() };
            assign(&mut s, x, &Poly::constant(self.nvars, v));
            if let Some(sol) = self.search(s) {
                return Some(sol);
            }
            if self.out_of_budget {
                return None;
            }
        }
        None
    }

    fn leaf(&mut self, st: &State) -> Option<Vec<GR>> {
        // zeros first, then ones, for readable answers
        for round in 0..6 {
            let free: Vec<GR> = match round {
                0 => vec![GR::zero(); self.nvars],
                1 => vec![GR::one(); self.nvars],
                _ => (0..self.nvars).map(|_| self.small_value()).collect(),
            };
            let x: Vec<GR> = (0..self.nvars)
                .map(|i| match &st.subs[i] {
                    Some(p) => p.eval(&free),
                    None => free[i].clone(),
                })
                .collect();
            if (self.accept)(&x) {
                return Some(x);
            }
        }
        None
    }
}

/// Substitutes `x_i = value` everywhere.
fn assign(st: &mut State, i: usize, value: &Poly) {
    for e in st.eqs.iter_mut() {
        if e.occurrences(i) > 0 {
            *e = e.substitute(i, value);
        }
    }
    for p in st.subs.iter_mut().flatten() {
        if p.occurrences(i) > 0 {
            *p = p.substitute(i, value);
        }
    }
    st.subs[i] = Some(value.clone());
}

/// Eliminates linear equations with constant pivots; false on inconsistency.
fn simplify(st: &mut State) -> bool {
    loop {
        st.eqs.retain(|e| !e.is_zero());
        if st.eqs.iter().any(|e| e.degree() == Some(0)) {
            return false;
        }
        let mut pivot = None;
        'outer: for (k, e) in st.eqs.iter().enumerate() {
            for x in e.variables() {
                if let Some((a, b)) = e.split_linear(x) {
                    if let Some(c) = a.as_constant() {
                        if !c.is_zero() {
                            let inv = c.inv().expect("nonzero");
                            pivot = Some((k, x, b.scale(&-inv)));
                            break 'outer;
                        }
                    }
                }
            }
        }
        match pivot {
            None => {
                dedup(&mut st.eqs);
                return true;
            }
            Some((k, x, value)) => {
                st.eqs.swap_remove(k);
                assign(st, x, &value);
            }
        }
    }
}

fn dedup(eqs: &mut Vec<Poly>) {
    let mut out: Vec<Poly> = Vec::new();
    for e in eqs.drain(..) {
        if !out.contains(&e) && !out.contains(&e.neg()) {
            out.push(e);
        }
    }
    *eqs = out;
}

fn common_variable(e: &Poly) -> Option<usize> {
    let n = e.nvars();
    (0..n).find(|&i| e.terms().all(|(ex, _)| ex[i] > 0))
}

fn divide_by_var(e: &Poly, x: usize) -> Poly {
    let mut out = Poly::zero(e.nvars());
    for (ex, c) in e.terms() {
        let mut r = ex.clone();
        r[x] -= 1;
        out.add_term(r, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_and_quadratic() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let one = Poly::constant(3, GR::one());
        // x + y = 1, y² = 4, xz = 3
        let eqs = vec![
            x.add(&y).sub(&one),
            y.mul(&y).sub(&one.scale(&GR::from_int(4))),
            x.mul(&z).sub(&one.scale(&GR::from_int(3))),
        ];
        let check = |v: &[GR]| eqs.iter().all(|e| e.eval(v).is_zero());
        let mut s = Solver::new(3, SolveOptions::default(), &check);
        match s.solve(eqs.clone()) {
            SolveOutcome::Solution(v) => assert!(check(&v)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent() {
        let x = Poly::var(1, 0);
        let one = Poly::constant(1, GR::one());
        let eqs = vec![x.sub(&one), x.add(&one)];
        let yes = |_: &[GR]| true;
        let mut s = Solver::new(1, SolveOptions::default(), &yes);
        assert!(matches!(s.solve(eqs), SolveOutcome::NoSolution { exhausted: true, .. }));
    }

    #[test]
    fn product_branches() {
        // xy = 0 with x ≠ 0 required
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let eqs = vec![x.mul(&y)];
        let acc = |v: &[GR]| !v[0].is_zero() && (&v[0] * &v[1]).is_zero();
        let mut s = Solver::new(2, SolveOptions::default(), &acc);
        match s.solve(eqs) {
            SolveOutcome::Solution(v) => assert!(v[1].is_zero()),
            other => panic!("{other:?}"),
        }
    }
}
