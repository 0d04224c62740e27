//! The change of variable `Xi(z) = z/(z-1) ((1-z)/(1-z(1-x)))^nu`, its
//! inverse `Omega`, and the ordinary generating function relations built on them.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::series::sigma::{radius_r, sigma_eval, sigma_series, SigmaMethod, DISK_SAFETY};
use crate::series::truncated::TruncatedSeries;

/// `Xi(z)` with the principal power, continuous from the value 1 of the base at `z = 0`.
pub fn xi_map(z: Complex64, x: Complex64, nu: Complex64) -> Result<Complex64> {
    let one = Complex64::one();
    let denom = one - z * (one - x);
    if z == one || denom.is_zero() {
        return Err(Error::PoleInput(z));
    }
    let base = (one - z) / denom;
    Ok(z / (z - one) * (nu * base.ln()).exp())
}

/// `Xi` as the series `-z (1-z)^{nu-1} (1-(1-x)z)^{-nu}`.
pub fn xi_series<S: Field>(x: &S, nu: &S, order: usize) -> TruncatedSeries<S> {
    let one_minus_z = TruncatedSeries::new(vec![S::one(), -S::one()], order);
    let second = TruncatedSeries::new(vec![S::one(), x.clone() - S::one()], order);
    let p1 = one_minus_z.pow(&(nu.clone() - S::one())).expect("base starts with 1");
    let p2 = second.pow(&(-nu.clone())).expect("base starts with 1");
    let minus_z = TruncatedSeries::new(vec![S::zero(), -S::one()], order);
    &(&minus_z * &p1) * &p2
}

/// `Omega(xi) = Sigma(x xi) / ((1 - x(1-nu)) Sigma(x xi) - x)`.
///
/// At `x = 0` the map `Xi` reduces to the involution `z/(z-1)`, so
/// `Omega(xi) = xi/(xi - 1)` there.
pub fn omega_map(xi: Complex64, x: Complex64, nu: Complex64) -> Result<Complex64> {
    let one = Complex64::one();
    if x.is_zero() {
        if xi == one {
            return Err(Error::PoleInput(xi));
        }
        return Ok(xi / (xi - one));
    }
    let w = x * xi;
    let limit = DISK_SAFETY * radius_r(nu);
    if w.norm() >= limit {
        return Err(Error::OutsideDisk { modulus: w.norm(), limit });
    }
    let s = sigma_eval(w, nu, SigmaMethod::Closed)?;
    Ok(s / ((one - x * (one - nu)) * s - x))
}

/// Series of `Omega`; built from the `Sigma` series for `x != 0` and by
/// compositional reversion of [`xi_series`] at `x = 0`.
pub fn omega_series<S: Field>(x: &S, nu: &S, order: usize) -> TruncatedSeries<S> {
    if x.is_zero() {
        return xi_series(x, nu, order).reversion().expect("[z^1] Xi = -1");
    }
    // Sigma(x xi): coefficients sigma_b x^b
    let mut x_pow = S::one();
    let sigma = sigma_series(nu, order);
    let s = TruncatedSeries::from_fn(order, |b| {
        let v = sigma.coeff(b) * x_pow.clone();
        x_pow = x_pow.clone() * x.clone();
        v
    });
    let c = S::one() - x.clone() * (S::one() - nu.clone());
    let denom = &s.scale(&c) - &TruncatedSeries::constant(x.clone(), order);
    s.div(&denom).expect("constant term -x is nonzero")
}

/// `(1-nu)/(1-z) + nu/(1-z(1-x))` as a series.
pub fn prefactor_series<S: Field>(x: &S, nu: &S, order: usize) -> TruncatedSeries<S> {
    let q = S::one() - x.clone();
    let mut q_pow = S::one();
    TruncatedSeries::from_fn(order, |_| {
        let v = (S::one() - nu.clone()) + nu.clone() * q_pow.clone();
        q_pow = q_pow.clone() * q.clone();
        v
    })
}

fn require_no_constant<S: Field>(g: &TruncatedSeries<S>) -> Result<()> {
    if !g.coeff(0).is_zero() {
        return Err(Error::SeriesPrecondition("generating series must have zero constant term".into()));
    }
    Ok(())
}

/// OGF of `S = B(x, nu) T` from the OGF of `T`: `P(z) G_T(Xi(z))`.
pub fn ogf_forward<S: Field>(g_t: &TruncatedSeries<S>, x: &S, nu: &S) -> Result<TruncatedSeries<S>> {
    require_no_constant(g_t)?;
    let order = g_t.order();
    let composed = g_t.compose(&xi_series(x, nu, order))?;
    Ok(&prefactor_series(x, nu, order) * &composed)
}

/// OGF of `T = A(x, nu) S` from the OGF of `S`: `G_S(Omega) / P(Omega)`.
pub fn ogf_inverse<S: Field>(g_s: &TruncatedSeries<S>, x: &S, nu: &S) -> Result<TruncatedSeries<S>> {
    require_no_constant(g_s)?;
    let order = g_s.order();
    let omega = omega_series(x, nu, order);
    let numer = g_s.compose(&omega)?;
    let denom = prefactor_series(x, nu, order).compose(&omega)?;
    numer.div(&denom)
}
