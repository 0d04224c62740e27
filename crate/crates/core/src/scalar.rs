//! Scalar abstractions shared by the matrix and series code.
//!
//! `Scalar` is a commutative ring with an embedding of the integers; `Field`
//! adds division. Both are implemented for `f64`, `Complex64` (float mode),
//! their double-double counterparts and `BigRational` (exact mode). `BiPoly` is only a `Scalar`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};

use crate::dd::Dd;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// `(-1)^k`.
    fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

pub trait Field: Scalar + Div<Output = Self> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}

impl Field for Complex64 {}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Field for f64 {}

impl Scalar for Dd {
    fn from_i64(v: i64) -> Self {
        Dd::from(v)
    }
}

impl Field for Dd {}

/// Double-double complex: about 32 significant digits.
pub type ComplexDd = Complex<Dd>;

impl Scalar for ComplexDd {
    fn from_i64(v: i64) -> Self {
        Complex::new(Dd::from(v), Dd::from(0.0))
    }
}

impl Field for ComplexDd {}

pub fn complex_to_dd(z: Complex64) -> ComplexDd {
    Complex::new(Dd::from(z.re), Dd::from(z.im))
}

pub fn dd_to_complex(z: &ComplexDd) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Pochhammer symbol `(c)_m = c (c+1) ... (c+m-1)` in any scalar ring.
pub fn pochhammer<S: Scalar>(c: &S, m: usize) -> S {
    let mut acc = S::one();
    for j in 0..m {
        acc = acc * (c.clone() + S::from_i64(j as i64));
    }
    acc
}

/// `m!` as a scalar.
pub fn factorial<S: Scalar>(m: usize) -> S {
    (1..=m as i64).fold(S::one(), |acc, j| acc * S::from_i64(j))
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn binomial_scalar<S: Scalar>(n: u64, k: u64) -> S {
    // Exact integer first; the f64 route would lose digits for n > 60.
    let b = binomial(n, k);
    match i64::try_from(&b) {
        Ok(v) => S::from_i64(v),
        Err(_) => {
            let mut acc = S::zero();
            let digits = b.to_u64_digits().1;
            let base = S::from_i64(1 << 32);
            for d in digits.iter().rev() {
                let hi = (d >> 32) as i64;
                let lo = (d & 0xffff_ffff) as i64;
                acc = acc * base.clone() * base.clone()
                    + S::from_i64(hi) * base.clone()
                    + S::from_i64(lo);
            }
            acc
        }
    }
}

pub fn rational_to_complex(r: &BigRational) -> Complex64 {
    Complex64::new(rational_to_f64(r), 0.0)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator individually overflow f64: scale by bit length
        let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
        let scaled = if shift > 0 {
            r / BigRational::from_integer(BigInt::one() << shift as usize)
        } else {
            r * BigRational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = digits.parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(num);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_double_keeps_low_order_bits() {
        let third = ComplexDd::from_ratio(1, 3);
        let back = third * ComplexDd::from_i64(3) - ComplexDd::one();
        assert!(back.re.to_f64().abs() < 1e-30);
        let one_plus = complex_to_dd(Complex64::new(1.0, 0.0)) + complex_to_dd(Complex64::new(1e-20, 0.0));
        assert!((one_plus.re - Dd::from(1.0)).to_f64() > 0.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        let big: BigRational = binomial_scalar(80, 40);
        assert_eq!(big.to_integer(), binomial(80, 40));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1/2"), Some(BigRational::from_ratio(-1, 2)));
        assert_eq!(parse_rational("0.3"), Some(BigRational::from_ratio(3, 10)));
        assert_eq!(parse_rational("-2"), Some(BigRational::from_ratio(-2, 1)));
        assert_eq!(parse_rational("2.5e-1"), Some(BigRational::from_ratio(1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn huge_rational_to_float() {
        let r = BigRational::from_integer(binomial(2000, 1000));
        let f = rational_to_f64(&r);
        assert!(f.is_infinite() || f > 1e300);
        let small = BigRational::new(binomial(600, 300), binomial(600, 300) * BigInt::from(4));
        assert!((rational_to_f64(&small) - 0.25).abs() < 1e-15);
    }

}
