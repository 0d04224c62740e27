//! Exact rational scalars and sparse bivariate polynomials in `(x, nu)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{rational_to_complex, Field, Scalar};

/// Arbitrary-precision rational; always stored reduced with a positive denominator.
pub type ExactScalar = BigRational;

pub fn rational(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(v))
}

/// `a (a+1) ... (a+m-1)` for an integer `a`.
pub fn pochhammer_int(a: i64, m: usize) -> ExactScalar {
    let mut acc = BigInt::one();
    for j in 0..m as i64 {
        acc *= BigInt::from(a + j);
    }
    BigRational::from_integer(acc)
}

/// `(c nu)_m` expanded as a polynomial in `nu`.
pub fn pochhammer_linear(c: &ExactScalar, m: usize) -> BiPoly {
    let base = BiPoly::nu().scale(c);
    let mut acc = BiPoly::one();
    for j in 0..m as i64 {
        acc = &acc * &(&base + &BiPoly::constant(integer(j)));
    }
    acc
}

/// Sparse polynomial `sum c_{i,j} x^i nu^j` with exact rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty map
/// and equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), ExactScalar>,
}

impl BiPoly {
    pub fn constant(c: ExactScalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: ExactScalar, deg_x: u32, deg_nu: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((deg_x, deg_nu), c);
        }
        Self { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(ExactScalar::one(), 1, 0)
    }

    pub fn nu() -> Self {
        Self::monomial(ExactScalar::one(), 0, 1)
    }

    pub fn coeff(&self, deg_x: u32, deg_nu: u32) -> ExactScalar {
        self.coeffs
            .get(&(deg_x, deg_nu))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// Nonzero terms in ascending `(deg_x, deg_nu)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &ExactScalar)> {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_nu(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(_, j)| j).max()
    }

    /// Constant value if the polynomial has no `x` or `nu` dependence.
    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.coeffs.len() {
            0 => Some(ExactScalar::zero()),
            1 => self.coeffs.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    fn add_term(&mut self, key: (u32, u32), c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact evaluation at rational `(x0, nu0)`.
    pub fn eval(&self, x0: &ExactScalar, nu0: &ExactScalar) -> ExactScalar {
        self.eval_in(x0, nu0)
    }

    pub fn eval_complex(&self, x0: Complex64, nu0: Complex64) -> Complex64 {
        self.eval_in(&x0, &nu0)
    }

    /// Term-by-term substitution into any field containing the rationals.
    pub fn eval_in<S: Field + FromRational>(&self, x0: &S, nu0: &S) -> S {
        let mut xp: Vec<S> = vec![S::one()];
        let mut np: Vec<S> = vec![S::one()];
        let mut acc = S::zero();
        for (i, j, c) in self.terms() {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap().clone() * x0.clone();
                xp.push(next);
            }
            while np.len() <= j as usize {
                let next = np.last().unwrap().clone() * nu0.clone();
                np.push(next);
            }
            acc = acc + S::from_rational(c) * xp[i as usize].clone() * np[j as usize].clone();
        }
        acc
    }

    /// Substitute `nu = nu0`, leaving a polynomial in `x` only.
    pub fn partial_eval_nu(&self, nu0: &ExactScalar) -> Self {
        let mut out = Self::default();
        for (i, j, c) in self.terms() {
            out.add_term((i, 0), c * num_traits::pow(nu0.clone(), j as usize));
        }
        out
    }
}

/// Embedding of the exact rationals into a scalar type.
pub trait FromRational {
    fn from_rational(r: &ExactScalar) -> Self;
}

impl FromRational for ExactScalar {
    fn from_rational(r: &ExactScalar) -> Self {
        r.clone()
    }
}

impl FromRational for Complex64 {
    fn from_rational(r: &ExactScalar) -> Self {
        rational_to_complex(r)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            let neg = c < &ExactScalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || (i == 0 && j == 0) {
                write!(f, "{mag}")?;
            }
            let mut parts = Vec::new();
            match i {
                0 => {}
                1 => parts.push("x".to_string()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("nu".to_string()),
                _ => parts.push(format!("nu^{j}")),
            }
            if !parts.is_empty() {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, v) in &rhs.coeffs {
            out.add_term(k, v.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, v) in &rhs.coeffs {
            out.add_term(k, -v.clone());
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(i1, j1), a) in &self.coeffs {
            for (&(i2, j2), b) in &rhs.coeffs {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        Self::constant(ExactScalar::one())
    }
}

impl Scalar for BiPoly {
    fn from_i64(v: i64) -> Self {
        Self::constant(integer(v))
    }
}
