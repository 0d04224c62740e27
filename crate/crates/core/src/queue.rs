//! The queueing application: right-hand side `K_b` by quadrature, the
//! solution `E_b` of the triangular system through the inversion formula, and
//! integral representations of its generating functions.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::hyper::{build_b, hyper_f_terminating};
use crate::quadrature::{gauss_kronrod, tanh_sinh, Tolerance};
use crate::scalar::{binomial_scalar, rational_to_f64, Scalar};
use crate::series::sigma::{sigma_coeff, sigma_eval, SigmaMethod};
use crate::series::xi::xi_map;
use crate::special::{cospi_real, ln_gamma_real, sinpi_real};

/// Parameters `(U-, U+, nu, x)` of the queueing instance.
///
/// `profile_exponent` is the exponent of the first factor of `R(zeta)`; it
/// equals `nu` for genuine queueing instances and may differ only for
/// synthetic instances built with [`QueueParams::synthetic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueParams {
    pub u_minus: f64,
    pub u_plus: f64,
    pub nu: f64,
    pub x: f64,
    pub profile_exponent: f64,
}

impl QueueParams {
    pub fn new(u_minus: f64, u_plus: f64, nu: f64, x: f64) -> Result<Self> {
        if !(nu < 0.0) {
            return Err(Error::InvalidParams(format!("nu must be negative, got {nu}")));
        }
        Self::synthetic(u_minus, u_plus, nu, x, nu)
    }

    /// Instance with a profile exponent decoupled from the matrix parameter
    /// `nu`, for exercising representations valid when `0 < nu < 1`.
    pub fn synthetic(u_minus: f64, u_plus: f64, nu: f64, x: f64, profile_exponent: f64) -> Result<Self> {
        let all = [u_minus, u_plus, nu, x, profile_exponent];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(0.0 < u_minus && u_minus < u_plus) {
            return Err(Error::InvalidParams(format!("need 0 < u_minus < u_plus, got {u_minus}, {u_plus}")));
        }
        if u_minus >= 1.0 {
            return Err(Error::InvalidParams(format!(
                "u_minus must be below 1 so that 1/(1-zeta)^2 stays integrable, got {u_minus}"
            )));
        }
        if !(nu < 1.0) {
            return Err(Error::InvalidParams(format!("nu must be below 1, got {nu}")));
        }
        if !(profile_exponent < 0.0) {
            return Err(Error::InvalidParams(format!(
                "profile exponent must be negative, got {profile_exponent}"
            )));
        }
        if x == 0.0 || x == 1.0 {
            return Err(Error::InvalidParams(format!("x must differ from 0 and 1, got {x}")));
        }
        Ok(Self { u_minus, u_plus, nu, x, profile_exponent })
    }

    /// `R` evaluated from `gap = U- - zeta >= 0`, which keeps full relative
    /// precision of the vanishing factor near `zeta = U-`.
    fn frak_from_gap(&self, zeta: f64, gap: f64) -> f64 {
        let p = self.profile_exponent;
        (gap / self.u_minus).powf(-p) * (1.0 - zeta / self.u_plus).powf(p - 1.0)
    }
}

/// `R(zeta) = (1 - zeta/U-)^{-nu} (1 - zeta/U+)^{nu-1}` on `[0, U-]`.
pub fn frak_r(zeta: f64, p: &QueueParams) -> Result<f64> {
    if !(0.0..=p.u_minus).contains(&zeta) {
        return Err(Error::DomainError { value: zeta, lo: 0.0, hi: p.u_minus });
    }
    Ok(p.frak_from_gap(zeta, p.u_minus - zeta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadScheme {
    GaussKronrod,
    TanhSinh,
}

/// Relative tolerance requested from the quadrature of `K_b`.
pub const K_TOLERANCE: f64 = 1e-12;

fn k_integrand(b: usize, zeta: f64, gap: f64, p: &QueueParams) -> f64 {
    let one_m = 1.0 - zeta;
    let r = p.frak_from_gap(zeta, gap);
    ((b as f64 - 1.0) * one_m.powi(b as i32) + 1.0) * r.powi(b as i32) / (one_m * one_m)
}

/// `K_b = int_0^{U-} [(b-1)(1-zeta)^b + 1] R(zeta)^b dzeta / (1-zeta)^2`.
pub fn coeff_k(b: usize, p: &QueueParams, scheme: QuadScheme) -> Result<f64> {
    if b == 0 {
        return Err(Error::InvalidArgument("K_b is defined for b >= 1".into()));
    }
    let tol = Tolerance::relative(K_TOLERANCE);
    let est = match scheme {
        QuadScheme::GaussKronrod => {
            gauss_kronrod(|z: f64| k_integrand(b, z, p.u_minus - z, p), 0.0, p.u_minus, tol)?
        }
        QuadScheme::TanhSinh => tanh_sinh(|z: f64, _dl, dr| k_integrand(b, z, dr, p), 0.0, p.u_minus, tol)?,
    };
    Ok(est.value)
}

/// `Gamma(b - b nu) / (Gamma(b) Gamma(1 - b nu))` through log-Gamma values;
/// independent of the product form used by [`sigma_coeff`].
pub fn gamma_ratio(b: usize, nu: f64) -> f64 {
    let b_f = b as f64;
    let num = ln_gamma_real(b_f - b_f * nu);
    let den = ln_gamma_real(1.0 - b_f * nu);
    match (num, den) {
        (Some((ln_n, s_n)), Some((ln_d, s_d))) => {
            let ln_b = ln_gamma_real(b_f).expect("b >= 1").0;
            s_n * s_d * (ln_n - ln_d - ln_b).exp()
        }
        // a pole of Gamma(1 - b nu) alone makes the ratio vanish
        (Some(_), None) => 0.0,
        // both arguments at poles: fall back to the polynomial form
        _ => sigma_coeff(b, &nu),
    }
}

/// `K~_b = -sigma_b (1-x) x^{b-1} K_b`.
pub fn reduce_k(k_b: f64, b: usize, p: &QueueParams) -> f64 {
    -sigma_coeff(b, &p.nu) * (1.0 - p.x) * p.x.powi(b as i32 - 1) * k_b
}

/// `E_l = E~_l / (U-)^{l+1}`.
pub fn reduce_e_inverse(e_tilde: f64, l: usize, p: &QueueParams) -> f64 {
    e_tilde / p.u_minus.powi(l as i32 + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionE {
    /// `E_b`, `b = 1..=b_max`.
    pub e: Vec<f64>,
    /// Right-hand side `K_b` used.
    pub k: Vec<f64>,
    /// Relative residual of row `b` of the original system.
    pub residuals: Vec<f64>,
    /// Largest relative gap between the matrix path and direct summation.
    pub path_gap: f64,
}

impl SolutionE {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }
}

/// Solves the system for `b <= b_max` with `K_b` from [`coeff_k`].
pub fn solve_e(b_max: usize, p: &QueueParams) -> Result<SolutionE> {
    if b_max == 0 {
        return Err(Error::InvalidArgument("b_max must be at least 1".into()));
    }
    let k: Vec<f64> = (1..=b_max)
        .into_par_iter()
        .map(|b| coeff_k(b, p, QuadScheme::GaussKronrod))
        .collect::<Result<_>>()?;
    solve_e_with_k(&k, p)
}

/// Solves the system for a given right-hand side `K_1, ..., K_{b_max}`.
///
/// The reduced transform `E~ = B K~` suffers heavy cancellation, so it is
/// carried out exactly on the rational values of the floating-point inputs;
/// each `E_b` is rounded once at the end.
pub fn solve_e_with_k(k: &[f64], p: &QueueParams) -> Result<SolutionE> {
    let b_max = k.len();
    if b_max == 0 {
        return Err(Error::InvalidArgument("right-hand side is empty".into()));
    }
    let exact = |v: f64| BigRational::from_float(v).expect("finite by construction");
    let (x, nu, u) = (exact(p.x), exact(p.nu), exact(p.u_minus));
    let one = BigRational::one();
    let b_mat = build_b(b_max, &x, &nu);
    let k_tilde: Vec<BigRational> = k
        .par_iter()
        .enumerate()
        .map(|(i, &kb)| {
            let b = i + 1;
            -sigma_coeff(b, &nu) * (&one - &x) * x.pow(b as i32 - 1) * exact(kb)
        })
        .collect();
    let e_tilde = b_mat.transform(&k_tilde)?;
    let e: Vec<f64> = e_tilde
        .par_iter()
        .enumerate()
        .map(|(i, v)| rational_to_f64(&(v / u.pow(i as i32 + 2))))
        .collect();

    let direct = solve_e_direct(k, p);
    let path_gap = e
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);

    let residuals = (1..=b_max).map(|b| row_residual(b, &e, k[b - 1], p)).collect();
    Ok(SolutionE { e, k: k.to_vec(), residuals, path_gap })
}

/// Closed-form sum `E_b = (1-x)/U^{b+1} sum_l (-1)^{l-1} C(b,l) F(l-b, l nu; l; x) x^{l-1} ratio_l K_l`.
pub fn solve_e_direct(k: &[f64], p: &QueueParams) -> Vec<f64> {
    let (x, nu) = (p.x, p.nu);
    (1..=k.len())
        .map(|b| {
            let sum: f64 = (1..=b)
                .map(|l| {
                    let f = hyper_f_terminating(l as i64 - b as i64, &(l as f64 * nu), &(l as f64), &x)
                        .expect("(l)_m is positive");
                    let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
                    sign * binomial_scalar::<f64>(b as u64, l as u64) * f * x.powi(l as i32 - 1)
                        * gamma_ratio(l, nu)
                        * k[l - 1]
                })
                .sum();
            (1.0 - x) / p.u_minus.powi(b as i32 + 1) * sum
        })
        .collect()
}

/// Row `b` of the original system: `sum_l (-1)^l C(b,l) Q_{b,l} E_l = K_b`,
/// evaluated as a relative residual.
fn row_residual(b: usize, e: &[f64], k_b: f64, p: &QueueParams) -> f64 {
    let (x, nu, u) = (p.x, p.nu, p.u_minus);
    let ratio = gamma_ratio(b, nu);
    let lhs = if ratio != 0.0 {
        // Q_{b,l} = -(1/ratio) U^{l+1} x^{1-b} / (1-x) F(l-b, -b nu; -b; x)
        (1..=b)
            .map(|l| {
                let f = hyper_f_terminating(l as i64 - b as i64, &(-(b as f64) * nu), &(-(b as f64)), &x)
                    .expect("(-b)_m is nonzero for m < b");
                let q = -u.powi(l as i32 + 1) * x.powi(1 - b as i32) / ((1.0 - x) * ratio) * f;
                f64::sign(l as i64) * binomial_scalar::<f64>(b as u64, l as u64) * q * e[l - 1]
            })
            .sum::<f64>()
    } else {
        // singular Q row: compare the reduced row of A E~ with K~_b = 0
        return reduced_row(b, e, p).abs();
    };
    (lhs - k_b).abs() / k_b.abs().max(f64::MIN_POSITIVE)
}

fn reduced_row(b: usize, e: &[f64], p: &QueueParams) -> f64 {
    (1..=b)
        .map(|l| {
            let f = hyper_f_terminating(l as i64 - b as i64, &(-(b as f64) * p.nu), &(-(b as f64)), &p.x)
                .expect("(-b)_m is nonzero for m < b");
            f64::sign(l as i64) * binomial_scalar::<f64>(b as u64, l as u64) * f * e[l - 1] * p.u_minus.powi(l as i32 + 1)
        })
        .sum()
}

/// Relative tolerance of the integrals in the generating-function representations.
pub const GF_TOLERANCE: f64 = 1e-11;

fn ensure_no_failure(failure: &Cell<Option<Error>>) -> Result<()> {
    match failure.take() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Ordinary generating function of `E` via the `Sigma`-kernel integral.
///
/// Every `Sigma` argument met during quadrature is checked against the disk
/// of convergence; the first violation is returned as `OutsideDisk`.
pub fn ogf_e(z: Complex64, p: &QueueParams) -> Result<Complex64> {
    let (x, nu, u) = (p.x, p.nu, p.u_minus);
    let xc = Complex64::new(x, 0.0);
    let nuc = Complex64::new(nu, 0.0);
    let d1 = u - z;
    let d2 = u - (1.0 - x) * z;
    if d1.norm() == 0.0 || d2.norm() == 0.0 {
        return Err(Error::PoleInput(z));
    }
    let prefactor = (x - 1.0) / x * ((1.0 - nu) / d1 + nu / d2);
    let xi = xi_map(z / u, xc, nuc)?;
    let failure = Cell::new(None);
    let kernel = |zeta: f64, gap: f64| -> Complex64 {
        let g = x * p.frak_from_gap(zeta, gap) * xi;
        let g1 = (1.0 - zeta) * g;
        let s = sigma_eval(g, nuc, SigmaMethod::Closed);
        let s1 = sigma_eval(g1, nuc, SigmaMethod::Closed);
        match (s, s1) {
            (Ok(s), Ok(s1)) => {
                let one_m = 1.0 - zeta;
                (s + s1 * s1 * (1.0 - 2.0 * nu - nu * (1.0 - nu) * s1)) / (one_m * one_m)
            }
            (Err(e), _) | (_, Err(e)) => {
                let prev = failure.take();
                failure.set(prev.or(Some(e)));
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let est = gauss_kronrod(|zeta: f64| kernel(zeta, u - zeta), 0.0, u, Tolerance::relative(GF_TOLERANCE));
    ensure_no_failure(&failure)?;
    Ok(prefactor * est?.value)
}

/// `e^w - 1` without cancellation for small `|w|`.
fn expm1_c(w: Complex64) -> Complex64 {
    let (a, b) = (w.re, w.im);
    let half = (0.5 * b).sin();
    Complex64::new(a.exp_m1() * b.cos() - 2.0 * half * half, a.exp() * b.sin())
}

fn check_nu_unit(nu: f64) -> Result<()> {
    if !(0.0 < nu && nu < 1.0) {
        return Err(Error::BadNuDomain(Complex64::new(nu, 0.0)));
    }
    Ok(())
}

/// Exponential generating function of `E` by the real double integral
/// over `zeta in [0, U-]` and `t in [0, 1]`, valid for `0 < nu < 1`.
///
/// With `W = z h`, `W1 = (1-zeta) W`, `h = x R(zeta) t^nu (1-t)^{1-nu}`,
/// `c = cos(nu pi)`, `s = sin(nu pi)`, the kernel is
/// `H = e^{-cW} sin(sW) - e^{-cW1} sin(sW1) + W1 e^{-cW1} sin(nu pi - sW1)`
/// and the inner measure is `e^{-xzt} dt / (t(1-t))`.
pub fn egf_e_real(z: Complex64, p: &QueueParams) -> Result<Complex64> {
    check_nu_unit(p.nu)?;
    let (x, nu, u) = (p.x, p.nu, p.u_minus);
    let zs = z / u;
    let (c, s) = (cospi_real(nu), sinpi_real(nu));
    let nu_pi = nu * PI;
    let tol = Tolerance::relative(GF_TOLERANCE);
    let failure = Cell::new(None);
    let outer = |zeta: f64, gap: f64| -> Complex64 {
        let fr = x * p.frak_from_gap(zeta, gap);
        let one_m = 1.0 - zeta;
        let inner = |t: f64, t_left: f64, t_right: f64| -> Complex64 {
            let h = fr * t_left.powf(nu) * t_right.powf(1.0 - nu);
            let w = zs * h;
            let w1 = one_m * w;
            let e_w = (-c * w).exp();
            let e_w1 = (-c * w1).exp();
            let kernel = e_w * (s * w).sin() - e_w1 * (s * w1).sin() + w1 * e_w1 * (nu_pi - s * w1).sin();
            kernel * (-x * zs * t).exp() / t_left / t_right
        };
        match tanh_sinh(inner, 0.0, 1.0, tol) {
            Ok(est) => est.value / (one_m * one_m),
            Err(e) => {
                let prev = failure.take();
                failure.set(prev.or(Some(e)));
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let est = tanh_sinh(|zeta: f64, _dl, dr| outer(zeta, dr), 0.0, u, tol);
    ensure_no_failure(&failure)?;
    Ok((1.0 - x) / (PI * x * u) * zs.exp() * est?.value)
}

/// Exponential generating function of `E` by a loop integral in `t`, valid
/// for `nu < 1`.
///
/// The loop is `t = 1 - e^{i theta}`, `theta in [0, 2 pi]`: it starts and ends
/// at `t = 0` and winds once positively around `t = 1`. Along it
/// `arg t = theta/2 - pi/2` and `arg(t-1) = theta - pi`, both continuous and
/// principal where the loop crosses `(1, inf)`. With
/// `V = z x R(zeta) t^{1-nu} (t-1)^nu`, `V1 = (1-zeta) V` the kernel is
/// `J = (1 + V1) e^{-V1} - e^{-V}`, and the inner measure is
/// `e^{xzt} dt / (t(t-1)) = e^{xzt} i dtheta / t`.
pub fn egf_e_contour(z: Complex64, p: &QueueParams) -> Result<Complex64> {
    let (x, nu, u) = (p.x, p.nu, p.u_minus);
    if !(nu < 1.0) {
        return Err(Error::BadNuDomain(Complex64::new(nu, 0.0)));
    }
    let zs = z / u;
    let tol = Tolerance::relative(GF_TOLERANCE);
    let failure = Cell::new(None);
    let i = Complex64::i();
    let outer = |zeta: f64, gap: f64| -> Complex64 {
        let fr = x * p.frak_from_gap(zeta, gap);
        let one_m = 1.0 - zeta;
        let inner = |theta: f64, d_left: f64, d_right: f64| -> Complex64 {
            let d = d_left.min(d_right);
            let modulus = 2.0 * (0.5 * d).sin();
            let arg_t = if d_left <= d_right { 0.5 * d_left - 0.5 * PI } else { 0.5 * PI - 0.5 * d_right };
            let arg_t1 = theta - PI;
            let ln_t = Complex64::new(modulus.ln(), arg_t);
            let t = Complex64::from_polar(modulus, arg_t);
            let power = ((1.0 - nu) * ln_t + i * (nu * arg_t1)).exp();
            let v = zs * fr * power;
            let v1 = one_m * v;
            // (1 + V1) e^{-V1} - e^{-V} = e^{-V} (e^{V - V1} - 1) + V1 e^{-V1}
            let kernel = (-v).exp() * expm1_c(v - v1) + v1 * (-v1).exp();
            // i / t through the polar form: |t| may be too small for complex division
            kernel * (x * zs * t).exp() * i * Complex64::from_polar(1.0 / modulus, -arg_t)
        };
        match tanh_sinh(inner, 0.0, 2.0 * PI, tol) {
            Ok(est) => est.value / (one_m * one_m),
            Err(e) => {
                let prev = failure.take();
                failure.set(prev.or(Some(e)));
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let est = tanh_sinh(|zeta: f64, _dl, dr| outer(zeta, dr), 0.0, u, tol);
    ensure_no_failure(&failure)?;
    Ok((1.0 - x) / (2.0 * PI * i * x * u) * ((1.0 - x) * zs).exp() * est?.value)
}

/// `sum_{b} E_b z^b`.
pub fn ordinary_partial_sum(e: &[f64], z: Complex64) -> Complex64 {
    e.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &eb| (acc + eb) * z)
}

/// `sum_{b} E_b z^b / b!`.
pub fn exponential_partial_sum(e: &[f64], z: Complex64) -> Complex64 {
    let mut weight = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (i, &eb) in e.iter().enumerate() {
        weight *= z / (i + 1) as f64;
        sum += eb * weight;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> QueueParams {
        QueueParams::new(0.5, 2.0, -0.5, 0.3).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(QueueParams::new(1.2, 2.0, -0.5, 0.3).is_err());
        assert!(QueueParams::new(0.5, 0.4, -0.5, 0.3).is_err());
        assert!(QueueParams::new(0.5, 2.0, 0.5, 0.3).is_err());
        assert!(QueueParams::new(0.5, 2.0, -0.5, 0.0).is_err());
        assert!(QueueParams::new(0.5, 2.0, -0.5, 1.0).is_err());
        assert!(QueueParams::synthetic(0.5, 2.0, 0.4, 0.3, -0.5).is_ok());
        assert!(QueueParams::synthetic(0.5, 2.0, 0.4, 0.3, 0.4).is_err());
    }

    #[test]
    fn profile_values() {
        let p = reference();
        assert_eq!(frak_r(0.0, &p).unwrap(), 1.0);
        assert_eq!(frak_r(0.5, &p).unwrap(), 0.0);
        let expected = 0.5f64.sqrt() * 0.875f64.powf(-1.5);
        assert!((frak_r(0.25, &p).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.863_92).abs() < 1e-5);
        assert!(matches!(frak_r(0.6, &p), Err(Error::DomainError { .. })));
        assert!(frak_r(-0.1, &p).is_err());
    }

    #[test]
    fn k_first_coefficient() {
        let p = reference();
        let direct = gauss_kronrod(
            |z: f64| frak_r(z, &p).unwrap() / ((1.0 - z) * (1.0 - z)),
            0.0,
            0.5,
            Tolerance::relative(1e-13),
        )
        .unwrap()
        .value;
        assert!((coeff_k(1, &p, QuadScheme::GaussKronrod).unwrap() - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn k_schemes_agree() {
        let p = reference();
        for b in [1, 2, 5, 15] {
            let a = coeff_k(b, &p, QuadScheme::GaussKronrod).unwrap();
            let t = coeff_k(b, &p, QuadScheme::TanhSinh).unwrap();
            assert!((a - t).abs() <= 1e-9 * a.abs(), "b = {b}: {a} vs {t}");
        }
    }

    #[test]
    fn reductions() {
        let p = reference();
        assert!((reduce_k(2.0, 1, &p) + 0.7 * 2.0).abs() < 1e-15);
        assert!((gamma_ratio(2, -0.5) - 2.0).abs() < 1e-14);
        let unit = QueueParams::synthetic(0.999_999, 2.0, -0.5, 0.3, -0.5).unwrap();
        assert!((reduce_e_inverse(3.0, 4, &unit) - 3.0).abs() < 1e-4);
        for b in 1..20 {
            assert!((gamma_ratio(b, -0.5) - sigma_coeff(b, &-0.5)).abs() < 1e-12 * sigma_coeff(b, &-0.5));
        }
    }

    #[test]
    fn single_row_solution() {
        let p = reference();
        let sol = solve_e(1, &p).unwrap();
        let expected = 0.7 / 0.25 * sol.k[0];
        assert!((sol.e[0] - expected).abs() < 1e-14 * expected);
    }

    #[test]
    fn zero_rhs_gives_zero() {
        let p = reference();
        let sol = solve_e_with_k(&[0.0; 6], &p).unwrap();
        assert!(sol.e.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn generating_functions_vanish_at_origin() {
        let p = reference();
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(ogf_e(zero, &p).unwrap(), zero);
        assert_eq!(egf_e_contour(zero, &p).unwrap(), zero);
        let q = QueueParams::synthetic(0.5, 2.0, 0.4, 0.3, -0.5).unwrap();
        assert_eq!(egf_e_real(zero, &q).unwrap(), zero);
        assert!(matches!(egf_e_real(zero, &p), Err(Error::BadNuDomain(_))));
    }

    #[test]
    fn expm1_small_arguments() {
        let w = Complex64::new(1e-12, -3e-12);
        assert!((expm1_c(w) - (w + w * w / 2.0)).norm() < 1e-27);
        let big = Complex64::new(0.7, 2.0);
        assert!((expm1_c(big) - (big.exp() - 1.0)).norm() < 1e-15);
    }
}
