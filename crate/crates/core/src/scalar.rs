//! Exact Gaussian rationals: elements `a + b i` of Q(i) with arbitrary precision.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An element of Q(i), always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// `p/q`; panics on `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        GaussRat {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn complex(re: GaussRat, im: GaussRat) -> Self {
        re + im * GaussRat::i()
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Real part as a Gaussian rational.
    pub fn real_part(&self) -> Self {
        GaussRat { re: self.re.clone(), im: BigRational::zero() }
    }

    /// Imaginary part as a Gaussian rational (a real number).
    pub fn imag_part(&self) -> Self {
        GaussRat { re: self.im.clone(), im: BigRational::zero() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        let (a, b) = self.to_f64_pair();
        num_complex::Complex64::new(a, b)
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // huge numerators or denominators: scale down through the decimal expansion
        let s = r.numer().to_string().len() as i32 - r.denom().to_string().len() as i32;
        let scale = BigInt::from(10).pow(s.unsigned_abs());
        let q = if s >= 0 {
            BigRational::new(r.numer().clone(), r.denom() * &scale)
        } else {
            BigRational::new(r.numer() * &scale, r.denom().clone())
        };
        let f = q.numer().to_f64().unwrap_or(0.0) / q.denom().to_f64().unwrap_or(1.0);
        f * 10f64.powi(s)
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::from_int(1)
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<BigRational> for GaussRat {
    fn from(r: BigRational) -> Self {
        GaussRat { re: r, im: BigRational::zero() }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $m(self, o: &'a GaussRat) -> GaussRat {
                let f: fn(&GaussRat, &GaussRat) -> GaussRat = $body;
                f(self, o)
            }
        }
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, o: GaussRat) -> GaussRat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, o: &'a GaussRat) -> GaussRat {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, |a, b| GaussRat { re: &a.re + &b.re, im: &a.im + &b.im });
binop!(Sub, sub, |a, b| GaussRat { re: &a.re - &b.re, im: &a.im - &b.im });
binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussRat { re: &a.re * &b.re, im: BigRational::zero() };
    }
    GaussRat {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
});
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero in GaussRat"));

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl AddAssign<GaussRat> for GaussRat {
    fn add_assign(&mut self, o: GaussRat) {
        *self += &o;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, o: &GaussRat) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl SubAssign<GaussRat> for GaussRat {
    fn sub_assign(&mut self, o: GaussRat) {
        *self -= &o;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, o: &GaussRat) {
        *self = &*self * o;
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: `p/q`, `p/q*i`, `p/q+r/s*i` or `p/q-r/s*i`; integers drop the denominator.
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_ratio(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_ratio(&self.im));
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*i", fmt_ratio(&self.re), sign, fmt_ratio(&self.im.abs()))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_ratio(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("malformed rational '{}'", s));
    if s.is_empty() {
        return Err(bad());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{}'", s)));
    }
    Ok(BigRational::new(n, d))
}

fn parse_imag(s: &str) -> Result<BigRational, Error> {
    let body = s.strip_suffix('i').ok_or_else(|| Error::Parse(format!("malformed imaginary '{}'", s)))?;
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => {
            let body = body.strip_suffix('*').ok_or_else(|| Error::Parse(format!("malformed imaginary '{}'", s)))?;
            let body = body.strip_prefix('+').unwrap_or(body);
            parse_ratio(body)
        }
    }
}

impl FromStr for GaussRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if !s.ends_with('i') {
            return Ok(GaussRat { re: parse_ratio(s)?, im: BigRational::zero() });
        }
        // split at the last sign that is not the leading one
        let split = s
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => Ok(GaussRat { re: parse_ratio(&s[..k])?, im: parse_imag(&s[k..])? }),
            None => Ok(GaussRat { re: BigRational::zero(), im: parse_imag(s)? }),
        }
    }
}

/// Shorthand for `GaussRat::frac`.
pub fn q(p: i64, d: i64) -> GaussRat {
    GaussRat::frac(p, d)
}

/// Shorthand for an integer scalar.
pub fn qi(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let cases = [
            ("3", q(3, 1)),
            ("-2/4", q(-1, 2)),
            ("3*i", qi(3) * GaussRat::i()),
            ("-1/3*i", q(-1, 3) * GaussRat::i()),
            ("1/2+5/7*i", q(1, 2) + q(5, 7) * GaussRat::i()),
            ("1/2-5/7*i", q(1, 2) - q(5, 7) * GaussRat::i()),
            ("-4-i", qi(-4) - GaussRat::i()),
            ("i", GaussRat::i()),
        ];
        for (s, v) in cases {
            assert_eq!(s.parse::<GaussRat>().unwrap(), v, "{}", s);
        }
    }

    #[test]
    fn display_canonical() {
        assert_eq!(q(6, -4).to_string(), "-3/2");
        assert_eq!((q(1, 2) - q(5, 7) * GaussRat::i()).to_string(), "1/2-5/7*i");
        assert_eq!(GaussRat::i().to_string(), "1*i");
        assert_eq!(GaussRat::zero().to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "x", "1/2*j", "1//2", "3*"] {
            assert!(s.parse::<GaussRat>().is_err(), "{}", s);
        }
    }

    #[test]
    fn i_squared() {
        assert_eq!(GaussRat::i() * GaussRat::i(), qi(-1));
        let z = q(3, 4) + q(-2, 5) * GaussRat::i();
        assert_eq!(&z * &z.inv().unwrap(), qi(1));
    }
}
