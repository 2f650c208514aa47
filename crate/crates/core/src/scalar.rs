//! Scalar fields for evaluation: complex doubles, and exact Gaussian rationals
//! for instances whose structure constants are rational (pointed categories).
//!
//! `Real` and `Coeff` are the storage form of a scalar in expressions and
//! instance files. They keep rationals exact so that a file written in exact
//! mode reads back bit for bit.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type C64 = Complex<f64>;
pub type QI = Complex<BigRational>;

/// A field the evaluator can compute in.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Exact arithmetic: zero tests are exact and tolerances are ignored.
    const EXACT: bool;

    fn from_c64(z: C64) -> Self;
    fn to_c64(&self) -> C64;
    fn from_coeff(c: &Coeff) -> Self;
    /// Storage form; exact values stay exact when they fit.
    fn to_coeff(&self) -> Coeff;
    fn from_int(n: i64) -> Self;
    fn conj(&self) -> Self;

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    fn negligible(&self, tol: f64) -> bool;

    /// Converts a floating value that is known to be a "nice" number. For exact
    /// fields this succeeds only for Gaussian rationals with small denominators.
    fn recognize(z: C64) -> Option<Self>;
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn from_c64(z: C64) -> Self {
        z
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn from_coeff(c: &Coeff) -> Self {
        c.to_c64()
    }
    fn to_coeff(&self) -> Coeff {
        let part = |x: f64| {
            if x.fract() == 0.0 && x.abs() < 1e15 {
                Real::int(x as i64)
            } else {
                Real::Float(x)
            }
        };
        Coeff::new(part(self.re), part(self.im))
    }
    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn recognize(z: C64) -> Option<Self> {
        (z.re.is_finite() && z.im.is_finite()).then_some(z)
    }
}

fn big_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

fn big_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for QI {
    const EXACT: bool = true;

    fn from_c64(z: C64) -> Self {
        Complex::new(big_from_f64(z.re), big_from_f64(z.im))
    }
    fn to_c64(&self) -> C64 {
        C64::new(big_to_f64(&self.re), big_to_f64(&self.im))
    }
    fn from_coeff(c: &Coeff) -> Self {
        Complex::new(c.re.to_big(), c.im.to_big())
    }
    fn to_coeff(&self) -> Coeff {
        let part = |x: &BigRational| {
            x.numer()
                .to_i64()
                .zip(x.denom().to_i64())
                .and_then(|(p, q)| Real::rat(p, q))
                .unwrap_or_else(|| Real::Float(big_to_f64(x)))
        };
        Coeff::new(part(&self.re), part(&self.im))
    }
    fn from_int(n: i64) -> Self {
        Complex::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn recognize(z: C64) -> Option<Self> {
        let part = |x: f64| -> Option<BigRational> {
            (1..=64i64).find_map(|d| {
                let scaled = x * d as f64;
                let r = scaled.round();
                ((scaled - r).abs() <= 1e-9 * d as f64)
                    .then(|| BigRational::new(BigInt::from(r as i64), BigInt::from(d)))
            })
        };
        Some(Complex::new(part(z.re)?, part(z.im)?))
    }
}

/// A real number kept either as a reduced fraction or as a double.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Real {
    Rat(i64, i64),
    Float(f64),
}

impl Real {
    pub fn int(n: i64) -> Real {
        Real::Rat(n, 1)
    }

    /// Reduced fraction p/q; `None` when q = 0.
    pub fn rat(p: i64, q: i64) -> Option<Real> {
        if q == 0 {
            return None;
        }
        let g = p.gcd(&q).max(1);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = p.checked_neg()?;
            q = q.checked_neg()?;
        }
        Some(Real::Rat(p, q))
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Real::Rat(p, q) => p as f64 / q as f64,
            Real::Float(x) => x,
        }
    }

    pub fn to_big(self) -> BigRational {
        match self {
            Real::Rat(p, q) => BigRational::new(BigInt::from(p), BigInt::from(q)),
            Real::Float(x) => big_from_f64(x),
        }
    }

    pub fn is_zero(self) -> bool {
        self.to_f64() == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }

    pub fn neg(self) -> Real {
        match self {
            Real::Rat(p, q) => p
                .checked_neg()
                .map_or(Real::Float(-(p as f64) / q as f64), |p| Real::Rat(p, q)),
            Real::Float(x) => Real::Float(-x),
        }
    }

    pub fn add(self, o: Real) -> Real {
        if let (Real::Rat(a, b), Real::Rat(c, d)) = (self, o) {
            let num = a
                .checked_mul(d)
                .and_then(|x| c.checked_mul(b).and_then(|y| x.checked_add(y)));
            if let (Some(n), Some(den)) = (num, b.checked_mul(d)) {
                if let Some(r) = Real::rat(n, den) {
                    return r;
                }
            }
        }
        Real::Float(self.to_f64() + o.to_f64())
    }

    pub fn mul(self, o: Real) -> Real {
        if let (Real::Rat(a, b), Real::Rat(c, d)) = (self, o) {
            if let (Some(n), Some(den)) = (a.checked_mul(c), b.checked_mul(d)) {
                if let Some(r) = Real::rat(n, den) {
                    return r;
                }
            }
        }
        Real::Float(self.to_f64() * o.to_f64())
    }

    /// Text form: `p`, `p/q`, or a float literal that always carries a `.` or
    /// an exponent, so the two kinds never collide on re-reading.
    pub fn render(self) -> String {
        match self {
            Real::Rat(p, 1) => p.to_string(),
            Real::Rat(p, q) => format!("{p}/{q}"),
            Real::Float(x) => format!("{x:?}"),
        }
    }

    pub fn parse(s: &str) -> Option<Real> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let floaty = s.contains(['.', 'e', 'E']);
        if floaty {
            let body = s.trim_start_matches(['+', '-']);
            if !body.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                return None;
            }
            let x: f64 = s.parse().ok()?;
            return x.is_finite().then_some(Real::Float(x));
        }
        if let Some((p, q)) = s.split_once('/') {
            return Real::rat(p.parse().ok()?, q.parse().ok()?);
        }
        Some(Real::int(s.parse().ok()?))
    }
}

/// A complex scalar in storage form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coeff {
    pub re: Real,
    pub im: Real,
}

impl Coeff {
    pub const ONE: Coeff = Coeff {
        re: Real::Rat(1, 1),
        im: Real::Rat(0, 1),
    };
    pub const ZERO: Coeff = Coeff {
        re: Real::Rat(0, 1),
        im: Real::Rat(0, 1),
    };

    pub fn new(re: Real, im: Real) -> Coeff {
        Coeff { re, im }
    }

    pub fn real(re: Real) -> Coeff {
        Coeff {
            re,
            im: Real::int(0),
        }
    }

    pub fn int(n: i64) -> Coeff {
        Coeff::real(Real::int(n))
    }

    /// 1/n, exact.
    pub fn recip(n: i64) -> Coeff {
        Coeff::real(Real::rat(1, n).expect("nonzero order"))
    }

    pub fn float(z: C64) -> Coeff {
        Coeff {
            re: Real::Float(z.re),
            im: Real::Float(z.im),
        }
    }

    pub fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_one(self) -> bool {
        self.re.to_f64() == 1.0 && self.im.is_zero()
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn mul(self, o: Coeff) -> Coeff {
        let re = self.re.mul(o.re).add(self.im.mul(o.im).neg());
        let im = self.re.mul(o.im).add(self.im.mul(o.re));
        Coeff { re, im }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re.render(), self.im.render())
    }
}

/// Formats a scalar for human-readable reports.
pub fn show<S: Scalar>(s: &S) -> String {
    let z = s.to_c64();
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else {
        format!("{re}{}{}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_text_forms_stay_distinct() {
        for r in [
            Real::int(2),
            Real::rat(-3, 6).unwrap(),
            Real::Float(2.0),
            Real::Float(1e-7),
            Real::Float(-0.25),
        ] {
            assert_eq!(Real::parse(&r.render()), Some(r), "{}", r.render());
        }
        assert_eq!(Real::parse("2.0"), Some(Real::Float(2.0)));
        assert_eq!(Real::parse("2"), Some(Real::Rat(2, 1)));
        assert_eq!(Real::parse("NaN"), None);
        assert_eq!(Real::parse("inf"), None);
        assert_eq!(Real::parse("1/0"), None);
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let third = Real::rat(1, 3).unwrap();
        assert_eq!(third.add(third).add(third), Real::int(1));
        assert_eq!(Coeff::recip(3).mul(Coeff::int(3)), Coeff::ONE);
        let q = QI::from_coeff(&Coeff::recip(3)) * QI::from_int(3);
        assert!(q.is_one());
    }

    #[test]
    fn recognize_finds_gaussian_rationals() {
        let z = QI::recognize(C64::new(0.5, -1.0)).unwrap();
        assert_eq!(z.to_c64(), C64::new(0.5, -1.0));
        assert!(QI::recognize(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).is_none());
    }
}
