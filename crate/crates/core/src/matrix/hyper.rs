//! Hypergeometric-polynomial matrices `A(x, nu)`, `B(x, nu)` and the general
//! family built from coefficient sequences `a_{m;n,k}`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{integer, BiPoly, ExactScalar};
use crate::matrix::tri::TriMatrix;
use crate::scalar::{binomial_scalar, Field, Scalar};

/// Numeric terminating Gauss sum
/// `F(-d, b; c; x) = sum_{m=0}^{d} (-d)_m (b)_m / ((c)_m m!) x^m` with `neg_deg = -d <= 0`.
pub fn hyper_f_terminating<S: Field>(neg_deg: i64, b: &S, c: &S, x: &S) -> Result<S> {
    let depth = degree_from(neg_deg)?;
    let mut term = S::one();
    let mut sum = S::one();
    for m in 0..depth {
        let cm = c.clone() + S::from_i64(m as i64);
        if cm.is_zero() {
            return Err(Error::DegenerateParameter { c: format!("{c:?}"), m: m + 1 });
        }
        term = term * S::from_i64(neg_deg + m as i64) * (b.clone() + S::from_i64(m as i64)) * x.clone()
            / (cm * S::from_i64(m as i64 + 1));
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// Terminating Gauss sum with a polynomial upper parameter `b` and formal `x`;
/// returns a polynomial of degree `<= -neg_deg` in `x`.
pub fn hyper_f_terminating_poly(neg_deg: i64, b: &BiPoly, c: &ExactScalar) -> Result<BiPoly> {
    let depth = degree_from(neg_deg)?;
    let mut b_poch = BiPoly::one();
    let mut ratio = ExactScalar::one(); // (neg_deg)_m / ((c)_m m!)
    let mut sum = BiPoly::one();
    let mut x_pow = BiPoly::one();
    for m in 0..depth {
        let cm = c + integer(m as i64);
        if cm.is_zero() {
            return Err(Error::DegenerateParameter { c: c.to_string(), m: m + 1 });
        }
        ratio = ratio * integer(neg_deg + m as i64) / (cm * integer(m as i64 + 1));
        b_poch = &b_poch * &(b + &BiPoly::from_i64(m as i64));
        x_pow = &x_pow * &BiPoly::x();
        sum = &sum + &(&b_poch * &x_pow).scale(&ratio);
    }
    Ok(sum)
}

fn degree_from(neg_deg: i64) -> Result<usize> {
    if neg_deg > 0 {
        return Err(Error::InvalidArgument(format!(
            "first parameter must be a non-positive integer, got {neg_deg}"
        )));
    }
    Ok((-neg_deg) as usize)
}

/// Hypergeometric factor of `A_{n,k}`: `F(k-n, -n nu; -n; x)` as a polynomial.
///
/// Accepts any integers so that the `k <-> -n` substitution can be applied.
pub fn a_factor(n: i64, k: i64) -> Result<BiPoly> {
    hyper_f_terminating_poly(k - n, &BiPoly::nu().scale(&integer(-n)), &integer(-n))
}

/// Hypergeometric factor of `B_{n,k}`: `F(k-n, k nu; k; x)` as a polynomial.
pub fn b_factor(n: i64, k: i64) -> Result<BiPoly> {
    hyper_f_terminating_poly(k - n, &BiPoly::nu().scale(&integer(k)), &integer(k))
}

fn signed_binomial<S: Scalar>(n: usize, k: usize) -> S {
    S::sign(k as i64) * binomial_scalar::<S>(n as u64, k as u64)
}

/// `A_{n,k} = (-1)^k C(n,k) F(k-n, -n nu; -n; x)` evaluated in a field.
pub fn build_a<S: Field>(n_max: usize, x: &S, nu: &S) -> TriMatrix<S> {
    TriMatrix::from_fn(n_max, |n, k| {
        let n_s = S::from_i64(n as i64);
        let f = hyper_f_terminating(k as i64 - n as i64, &(-(n_s.clone() * nu.clone())), &(-n_s), x)
            .expect("(-n)_m never vanishes for m <= n - k < n");
        signed_binomial::<S>(n, k) * f
    })
}

/// `B_{n,k} = (-1)^k C(n,k) F(k-n, k nu; k; x)` evaluated in a field.
pub fn build_b<S: Field>(n_max: usize, x: &S, nu: &S) -> TriMatrix<S> {
    TriMatrix::from_fn(n_max, |n, k| {
        let k_s = S::from_i64(k as i64);
        let f = hyper_f_terminating(k as i64 - n as i64, &(k_s.clone() * nu.clone()), &k_s, x)
            .expect("(k)_m is positive for k >= 1");
        signed_binomial::<S>(n, k) * f
    })
}

/// `A(x, nu)` with entries as exact polynomials in `(x, nu)`.
pub fn build_a_exact(n_max: usize) -> TriMatrix<BiPoly> {
    TriMatrix::from_fn(n_max, |n, k| {
        let f = a_factor(n as i64, k as i64).expect("(-n)_m never vanishes for m <= n - k < n");
        f.scale(&signed_binomial::<ExactScalar>(n, k))
    })
}

/// `B(x, nu)` with entries as exact polynomials in `(x, nu)`.
pub fn build_b_exact(n_max: usize) -> TriMatrix<BiPoly> {
    TriMatrix::from_fn(n_max, |n, k| {
        let f = b_factor(n as i64, k as i64).expect("(k)_m is positive for k >= 1");
        f.scale(&signed_binomial::<ExactScalar>(n, k))
    })
}

/// Coefficient sequences `a_{m;n,k}` defining a matrix of the general family.
pub trait CoefficientFamily<S>: Sync {
    /// `a_{m;n,k}`; implementations must return one for `m = 0`.
    fn coeff(&self, m: usize, n: usize, k: usize) -> S;
}

impl<S, F> CoefficientFamily<S> for F
where
    F: Fn(usize, usize, usize) -> S + Sync,
{
    fn coeff(&self, m: usize, n: usize, k: usize) -> S {
        self(m, n, k)
    }
}

/// Family `a_{m;n} = (-n nu)_m / (-n)_m` reproducing `A(x, nu)`.
pub struct AFamily<S>(pub S);

/// Family `b_{m;k} = (k nu)_m / (k)_m` reproducing `B(x, nu)`.
pub struct BFamily<S>(pub S);

impl<S: Field> CoefficientFamily<S> for AFamily<S> {
    fn coeff(&self, m: usize, n: usize, _k: usize) -> S {
        let n = n as i64;
        (0..m as i64).fold(S::one(), |acc, j| {
            acc * (S::from_i64(j) - S::from_i64(n) * self.0.clone()) / S::from_i64(j - n)
        })
    }
}

impl<S: Field> CoefficientFamily<S> for BFamily<S> {
    fn coeff(&self, m: usize, _n: usize, k: usize) -> S {
        let k = k as i64;
        (0..m as i64).fold(S::one(), |acc, j| {
            acc * (S::from_i64(j) + S::from_i64(k) * self.0.clone()) / S::from_i64(j + k)
        })
    }
}

/// Entries `(-1)^k C(n,k) sum_{m=0}^{n-k} (k-n)_m a_{m;n,k} x^m / m!`.
pub fn build_general<S: Field, Fam: CoefficientFamily<S>>(fam: &Fam, n_max: usize, x: &S) -> TriMatrix<S> {
    TriMatrix::from_fn(n_max, |n, k| {
        let depth = n - k;
        let mut weight = S::one(); // (k-n)_m x^m / m!
        let mut sum = fam.coeff(0, n, k);
        for m in 0..depth {
            weight = weight * S::from_i64(k as i64 - n as i64 + m as i64) * x.clone() / S::from_i64(m as i64 + 1);
            sum = sum + weight.clone() * fam.coeff(m + 1, n, k);
        }
        signed_binomial::<S>(n, k) * sum
    })
}
