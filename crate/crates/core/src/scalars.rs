//! Exact Gaussian rationals and a small tolerance-carrying complex type.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational.
pub type Rational = BigRational;

/// Builds the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational square root, if the argument is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Short alias used throughout the crate.
pub type GR = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(rat(n, 1), Rational::zero())
    }

    /// `a + b i` with integer parts.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(rat(a, 1), rat(b, 1))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::new(q, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `z · conj(z)`.
    pub fn abs2(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.abs2();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.re * q, &self.im * q)
    }

    /// Square root inside Q(i), when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let r = rational_sqrt(&self.abs2())?;
        let two = rat(2, 1);
        let a = rational_sqrt(&((&r + &self.re) / &two))?;
        let b = rational_sqrt(&((&r - &self.re) / &two))?;
        let b = if self.im.is_negative() { -b } else { b };
        let cand = Self::new(a, b);
        if &cand * &cand == *self {
            Some(cand)
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Lossy conversion for numeric work.
    pub fn to_approx(&self, tol: f64) -> ApproxComplex {
        ApproxComplex::new(rational_to_f64(&self.re), rational_to_f64(&self.im), tol)
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}i", fmt_rational(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}i", fmt_rational(&self.re), fmt_rational(&-self.im.clone()))
        } else {
            write!(f, "{}+{}i", fmt_rational(&self.re), fmt_rational(&self.im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from [`GaussianRational::from_str`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed Gaussian rational {0:?}")]
pub struct ParseScalarError(pub String);

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl FromStr for GaussianRational {
    type Err = ParseScalarError;

    /// Accepts `p/q`, `p/q+r/si`, `p/q-r/si`, `r/si`, `i` and `-i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(&t).map(Self::from_rational).ok_or_else(err);
        };
        // split at the last sign that is not in leading position
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
        };
        let re = parse_rational(re).ok_or_else(err)?;
        Ok(Self::new(re, im))
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a GR> for &'a GR {
    type Output = GR;
    fn add(self, o: &GR) -> GR {
        GR::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GR> for &'a GR {
    type Output = GR;
    fn sub(self, o: &GR) -> GR {
        GR::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GR> for &'a GR {
    type Output = GR;
    fn mul(self, o: &GR) -> GR {
        GR::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GR> for &'a GR {
    type Output = GR;
    /// Panics on division by zero, like the integer types.
    fn div(self, o: &GR) -> GR {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &GR {
    type Output = GR;
    fn neg(self) -> GR {
        GR::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GR {
    type Output = GR;
    fn neg(self) -> GR {
        GR::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GR> for GR {
            type Output = GR;
            fn $m(self, o: GR) -> GR {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GR> for GR {
            type Output = GR;
            fn $m(self, o: &GR) -> GR {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GR> for &'a GR {
            type Output = GR;
            fn $m(self, o: GR) -> GR {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GR> for GR {
    fn add_assign(&mut self, o: &GR) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign<GR> for GR {
    fn add_assign(&mut self, o: GR) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&GR> for GR {
    fn sub_assign(&mut self, o: &GR) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GR> for GR {
    fn mul_assign(&mut self, o: &GR) {
        *self = &*self * o;
    }
}

impl Zero for GR {
    fn zero() -> Self {
        GR::zero()
    }
    fn is_zero(&self) -> bool {
        GR::is_zero(self)
    }
}

impl One for GR {
    fn one() -> Self {
        GR::one()
    }
}

/// Complex float with an absolute comparison threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

impl ApproxComplex {
    pub fn new(re: f64, im: f64, tol: f64) -> Self {
        ApproxComplex { re, im, tol }
    }

    /// True iff both components differ by less than `tol`.
    pub fn approx_eq(&self, other: &ApproxComplex) -> bool {
        fabs(self.re - other.re) < self.tol && fabs(self.im - other.im) < self.tol
    }

    pub fn add(&self, o: &ApproxComplex) -> ApproxComplex {
        ApproxComplex::new(self.re + o.re, self.im + o.im, self.tol)
    }

    pub fn mul(&self, o: &ApproxComplex) -> ApproxComplex {
        ApproxComplex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.tol,
        )
    }

    pub fn conj(&self) -> ApproxComplex {
        ApproxComplex::new(self.re, -self.im, self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GR {
        s.parse().unwrap()
    }

    #[test]
    fn conj_examples() {
        assert_eq!(g("1+2i").conj(), g("1-2i"));
        assert_eq!(GR::zero().conj(), GR::zero());
        let (z, w) = (g("1+i"), g("2-3i"));
        assert_eq!((&z * &w).conj(), &z.conj() * &w.conj());
        assert_eq!((&z * &w).conj(), g("5-i").conj().conj().conj());
    }

    #[test]
    fn abs2_examples() {
        assert_eq!(g("3+4i").abs2(), rat(25, 1));
        assert_eq!(GR::zero().abs2(), rat(0, 1));
        assert_eq!(g("1/2+1/2i").abs2(), rat(1, 2));
    }

    #[test]
    fn approx_examples() {
        let t = 1e-9;
        assert!(ApproxComplex::new(1.0, 0.0, t).approx_eq(&ApproxComplex::new(1.0 + 1e-12, 0.0, t)));
        assert!(!ApproxComplex::new(1.0, 0.0, t).approx_eq(&ApproxComplex::new(1.1, 0.0, t)));
        assert!(ApproxComplex::new(0.0, 0.0, t).approx_eq(&ApproxComplex::new(0.0, 1e-10, t)));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "3", "-1/2", "i", "-i", "2/3i", "1/2+1/2i", "-4-7/3i"] {
            let z = g(s);
            assert_eq!(g(&z.to_string()), z, "{s}");
        }
        assert_eq!(g("1/2+1/2i").to_string(), "1/2+1/2i");
        assert_eq!(g("-i").to_string(), "-1i");
        assert!("1/0".parse::<GR>().is_err());
        assert!("x".parse::<GR>().is_err());
    }

    #[test]
    fn sqrt_in_field() {
        assert_eq!(g("-1").sqrt().map(|r| &r * &r), Some(g("-1")));
        assert_eq!(g("3+4i").sqrt(), Some(g("2+i")));
        assert_eq!(g("2").sqrt(), None);
        assert_eq!(g("2i").sqrt(), Some(g("1+i")));
    }
}
