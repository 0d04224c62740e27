//! Double-double floats: an unevaluated sum `hi + lo` of two `f64` with
//! `|lo| <= ulp(hi) / 2`, giving about 106 significant bits.

use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Num, One, Zero};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Nearest `f64`.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Self::renorm(p, e + self.lo * b)
    }
}

impl From<f64> for Dd {
    fn from(v: f64) -> Self {
        Self::from_f64(v)
    }
}

impl From<i64> for Dd {
    fn from(v: i64) -> Self {
        let hi = v as f64;
        // the rounding error of the conversion is exactly representable
        let lo = (v - hi as i64) as f64;
        Self::renorm(hi, lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Self::renorm(s, e + f)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Self::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        let q = self / b;
        let t = if q.hi.fract() == 0.0 {
            Self::renorm(q.hi, q.lo.trunc())
        } else {
            Dd::from_f64(q.hi.trunc())
        };
        self - t * b
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd::from_f64(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::from_f64(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, _radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Dd::from_f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn exact(v: Dd) -> BigRational {
        BigRational::from_float(v.hi).unwrap() + BigRational::from_float(v.lo).unwrap()
    }

    fn rel_gap(v: Dd, want: &BigRational) -> f64 {
        use num_traits::ToPrimitive;
        ((exact(v) - want) / want).to_f64().unwrap().abs()
    }

    #[test]
    fn division_keeps_the_low_word() {
        let third = Dd::from(1.0) / Dd::from(3.0);
        assert!(third.lo() != 0.0);
        assert!(rel_gap(third, &BigRational::new(1.into(), 3.into())) < 1e-31);
    }

    #[test]
    fn arithmetic_against_rationals() {
        let a = Dd::from(0.9) / Dd::from(7.0);
        let b = Dd::from(-2.5) / Dd::from(3.0);
        let (ra, rb) = (exact(a), exact(b));
        assert!(rel_gap(a * b, &(&ra * &rb)) < 1e-31);
        assert!(rel_gap(a + b, &(&ra + &rb)) < 1e-31);
        assert!(rel_gap(a - b, &(&ra - &rb)) < 1e-31);
        assert!(rel_gap(a / b, &(&ra / &rb)) < 1e-31);
    }

    #[test]
    fn large_integers_convert_exactly() {
        let v = (1i64 << 60) + 3;
        assert_eq!(exact(Dd::from(v)), BigRational::from_integer(BigInt::from(v)));
    }

    #[test]
    fn remainder() {
        let r = Dd::from(7.5) % Dd::from(2.0);
        assert_eq!(r.to_f64(), 1.5);
    }
}
