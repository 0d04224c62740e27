//! The series `Sigma(w) = sum_b sigma_b w^b`, its implicit-function form via
//! `Theta`, its convergence radius, and the Riccati-type ODE it satisfies.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{integer, BiPoly, ExactScalar};
use crate::scalar::{rational_to_f64, Field};
use crate::series::truncated::TruncatedSeries;

/// Disk preconditions use this fraction of the convergence radius.
pub const DISK_SAFETY: f64 = 0.95;

/// `sigma_b = Gamma(b(1-nu)) / (Gamma(b) Gamma(1-b nu))`, evaluated as the
/// polynomial `prod_{j=1}^{b-1} (b(1-nu) - j) / (b-1)!`.
///
/// The product form is total in `nu`, so no pole configuration can arise.
pub fn sigma_coeff<S: Field>(b: usize, nu: &S) -> S {
    assert!(b >= 1, "sigma_b is defined for b >= 1");
    let b_s = S::from_i64(b as i64);
    let base = b_s.clone() - b_s * nu.clone();
    (1..b as i64).fold(S::one(), |acc, j| acc * (base.clone() - S::from_i64(j)) / S::from_i64(j))
}

/// `sigma_b` as a polynomial in `nu` of degree `b - 1`.
pub fn sigma_poly(b: usize) -> BiPoly {
    assert!(b >= 1, "sigma_b is defined for b >= 1");
    let b_i = b as i64;
    let mut acc = BiPoly::one();
    for j in 1..b_i {
        // (b - j - b nu) / j
        let factor = &BiPoly::constant(integer(b_i - j)) - &BiPoly::monomial(integer(b_i), 0, 1);
        acc = (&acc * &factor).scale(&(ExactScalar::one() / integer(j)));
    }
    acc
}

/// Prefix `sum_{b=1}^{order} sigma_b w^b`.
pub fn sigma_series<S: Field>(nu: &S, order: usize) -> TruncatedSeries<S> {
    TruncatedSeries::from_fn(order, |b| if b == 0 { S::zero() } else { sigma_coeff(b, nu) })
}

/// Which of the three definitions of `psi(nu)` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuBranch {
    /// `nu` outside the half-line `[0, inf)`.
    Complement,
    /// real `0 <= nu < 1`.
    Unit,
    /// real `nu >= 1`.
    AboveOne,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuParameter {
    pub nu: Complex64,
    pub branch: NuBranch,
}

/// `a log a` with the continuous value 0 at `a = 0`.
fn xlogx(a: Complex64, arg: Complex64) -> Complex64 {
    if a.is_zero() {
        Complex64::zero()
    } else {
        a * arg.ln()
    }
}

impl NuParameter {
    pub fn new(nu: Complex64) -> Self {
        let branch = if nu.im != 0.0 || nu.re < 0.0 {
            NuBranch::Complement
        } else if nu.re < 1.0 {
            NuBranch::Unit
        } else {
            NuBranch::AboveOne
        };
        Self { nu, branch }
    }

    /// Exponential growth rate of `sigma_b`: `|sigma_b|^{1/b} -> |e^{psi}|`.
    pub fn psi(&self) -> Complex64 {
        let nu = self.nu;
        let one = Complex64::one();
        match self.branch {
            NuBranch::Complement => (one - nu) * (one - nu).ln() + nu * (-nu).ln(),
            NuBranch::Unit => xlogx(one - nu, one - nu) + xlogx(nu, nu),
            NuBranch::AboveOne => {
                let t = if nu == one { Complex64::zero() } else { (one - nu) * (nu - one).ln() };
                t + nu * nu.ln()
            }
        }
    }

    pub fn radius(&self) -> f64 {
        (-self.psi().re).exp()
    }
}

/// Convergence radius `R(nu) = |exp(-psi(nu))|` of `Sigma`.
pub fn radius_r(nu: Complex64) -> f64 {
    NuParameter::new(nu).radius()
}

fn check_disk(w: Complex64, nu: Complex64) -> Result<f64> {
    let r = radius_r(nu);
    let limit = DISK_SAFETY * r;
    if w.norm() >= limit {
        return Err(Error::OutsideDisk { modulus: w.norm(), limit });
    }
    Ok(r)
}

/// `log Theta(w)` on the branch through `Theta(0) = 1`.
///
/// Newton iteration on `1 - e^L + w e^{(1-nu)L} = 0`, continued along the ray
/// from 0 to `w` in 32 steps. Working with `L = log Theta` keeps the power
/// `Theta^{1-nu}` continuous along the path.
pub fn log_theta(w: Complex64, nu: Complex64) -> Result<Complex64> {
    check_disk(w, nu)?;
    const STEPS: usize = 32;
    const MAX_NEWTON: usize = 60;
    let one_m_nu = 1.0 - nu;
    let mut l = Complex64::zero();
    for j in 1..=STEPS {
        let wj = w * (j as f64 / STEPS as f64);
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let e = l.exp();
            let p = wj * (one_m_nu * l).exp();
            let f = 1.0 - e + p;
            let df = one_m_nu * p - e;
            let step = f / df;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            l -= step;
            if step.norm() <= 4.0 * f64::EPSILON * (1.0 + l.norm()) {
                converged = true;
                break;
            }
        }
        if !converged {
            let residual = (1.0 - l.exp() + wj * (one_m_nu * l).exp()).norm();
            return Err(Error::NoConvergence { w: wj, residual });
        }
    }
    Ok(l)
}

/// `Theta(w)`: the solution of `1 - Theta + w Theta^{1-nu} = 0` with `Theta(0) = 1`.
pub fn theta_eval(w: Complex64, nu: Complex64) -> Result<Complex64> {
    Ok(log_theta(w, nu)?.exp())
}

/// `|1 - Theta + w Theta^{1-nu}|` with the power taken on the continuous branch.
pub fn theta_residual(w: Complex64, nu: Complex64) -> Result<f64> {
    let l = log_theta(w, nu)?;
    Ok((1.0 - l.exp() + w * ((1.0 - nu) * l).exp()).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaMethod {
    Closed,
    Series,
}

pub fn sigma_eval(w: Complex64, nu: Complex64, method: SigmaMethod) -> Result<Complex64> {
    match method {
        SigmaMethod::Closed => sigma_closed(w, nu),
        SigmaMethod::Series => sigma_sum(w, nu),
    }
}

/// `(Theta - 1) / (nu Theta + 1 - nu)`, with `Theta - 1 = w Theta^{1-nu}`
/// substituted in the numerator to avoid cancellation near `w = 0`.
fn sigma_closed(w: Complex64, nu: Complex64) -> Result<Complex64> {
    let l = log_theta(w, nu)?;
    let theta = l.exp();
    Ok(w * ((1.0 - nu) * l).exp() / (nu * theta + 1.0 - nu))
}

/// `log(sigma_b w^b)`, or `None` when `sigma_b = 0`.
fn log_term(b: usize, w_ln: Complex64, nu: Complex64) -> Option<Complex64> {
    let b_f = b as f64;
    let mut acc = b_f * w_ln;
    for j in 1..b {
        let factor = (b_f - j as f64) - b_f * nu;
        if factor.is_zero() {
            return None;
        }
        acc += factor.ln() - (j as f64).ln();
    }
    Some(acc)
}

fn sigma_sum(w: Complex64, nu: Complex64) -> Result<Complex64> {
    let r = check_disk(w, nu)?;
    if w.is_zero() {
        return Ok(Complex64::zero());
    }
    const MAX_TERMS: usize = 20_000;
    const QUIET_RUN: usize = 8;
    let q = w.norm() / r;
    let tail_factor = 1.0 / (1.0 - q);
    let w_ln = w.ln();
    let mut sum = Complex64::zero();
    let mut quiet = 0;
    for b in 1..=MAX_TERMS {
        let term = log_term(b, w_ln, nu).map_or(Complex64::zero(), |l| l.exp());
        sum += term;
        if term.norm() * tail_factor <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= QUIET_RUN {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NoConvergence { w, residual: f64::NAN })
}

/// Result of the coefficient-wise check of `w Sigma' = Sigma (1 + (1-2nu) Sigma - nu(1-nu) Sigma^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeCheck {
    pub order: usize,
    /// First order at which the two sides differ, with `(lhs, rhs)` coefficients.
    pub failure: Option<(usize, ExactScalar, ExactScalar)>,
}

impl OdeCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Verifies the ODE for `Sigma` exactly in rational arithmetic.
pub fn ode_check_sigma(order: usize, nu: &ExactScalar) -> OdeCheck {
    let s = sigma_series(nu, order);
    ode_check_series(&s, nu)
}

/// The ODE check for an arbitrary candidate series.
pub fn ode_check_series(s: &TruncatedSeries<ExactScalar>, nu: &ExactScalar) -> OdeCheck {
    let order = s.order();
    let one = ExactScalar::one();
    let lhs = s.z_derivative();
    let c1 = &one - &(integer(2) * nu);
    let c2 = -(nu * (&one - nu));
    let s2 = s * s;
    let inner = &(&TruncatedSeries::one(order) + &s.scale(&c1)) + &s2.scale(&c2);
    let rhs = s * &inner;
    let failure = (0..=order).find_map(|i| {
        let (l, r) = (lhs.coeff(i), rhs.coeff(i));
        (l != r).then_some((i, l, r))
    });
    OdeCheck { order, failure }
}

/// Growth-rate estimate of the radius from exact `sigma_b`, `b <= b_max`:
/// `|sigma_p / sigma_q|^{1/(q-p)}` for the two largest indices with nonzero
/// coefficients.
pub fn ratio_test_radius(nu: &ExactScalar, b_max: usize) -> Option<f64> {
    let mut found: Vec<(usize, ExactScalar)> = Vec::new();
    for b in (1..=b_max).rev() {
        let s = sigma_coeff(b, nu);
        if !s.is_zero() {
            found.push((b, s));
            if found.len() == 2 {
                break;
            }
        }
    }
    let [(q, sq), (p, sp)] = <[_; 2]>::try_from(found).ok()?;
    let ratio = rational_to_f64(&(sp / sq)).abs();
    Some(ratio.powf(1.0 / (q - p) as f64))
}
