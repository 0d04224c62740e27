//! Kummer's confluent function and the exponential generating function of
//! `S = B(x, nu) T`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::special::is_nonpositive_integer;

/// `Phi(a; b; z) = sum_m (a)_m z^m / ((b)_m m!)`.
///
/// For `Re z < 0` the Kummer transform `e^z Phi(b-a; b; -z)` is summed
/// instead, which keeps the terms of one sign for real arguments.
pub fn confluent_phi(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(b) {
        return Err(Error::BadBParameter(b));
    }
    if z.re < 0.0 {
        return Ok(z.exp() * phi_series(b - a, b, -z)?);
    }
    phi_series(a, b, z)
}

/// Direct summation of the Kummer series, stopped once the remaining tail is
/// bounded below `1e-16` of the running sum.
pub fn phi_series(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(b) {
        return Err(Error::BadBParameter(b));
    }
    const MAX_TERMS: usize = 100_000;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 0..MAX_TERMS {
        let m_f = m as f64;
        let ratio = (a + m_f) * z / ((b + m_f) * (m_f + 1.0));
        term *= ratio;
        sum += term;
        if term.is_zero() {
            return Ok(sum);
        }
        // once |ratio| stays below 1/2 the tail is at most |term|
        let settled = m_f + 1.0 > 2.0 * (a.norm() + z.norm() + b.norm());
        if settled && term.norm() <= 1e-16 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence { w: z, residual: term.norm() })
}

/// `e^z sum_k (-1)^k T_k z^k/k! Phi(k nu; k; -x z)` for the prefix `T_1, T_2, ...`.
pub fn egf_s(t: &[Complex64], x: Complex64, nu: Complex64, z: Complex64) -> Result<Complex64> {
    let mut weight = Complex64::new(1.0, 0.0); // (-z)^k / k!
    let mut sum = Complex64::zero();
    for (i, tk) in t.iter().enumerate() {
        let k = (i + 1) as f64;
        weight *= -z / k;
        if tk.is_zero() || weight.is_zero() {
            continue;
        }
        let phi = confluent_phi(k * nu, Complex64::new(k, 0.0), -x * z)?;
        sum += tk * weight * phi;
    }
    Ok(z.exp() * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(confluent_phi(c(0.3, 0.2), c(1.5, 0.0), c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        for &z in &[c(0.7, 0.0), c(-2.5, 0.3), c(1.0, 4.0)] {
            let v = confluent_phi(c(1.0, 0.0), c(1.0, 0.0), z).unwrap();
            assert!((v - z.exp()).norm() < 1e-14 * z.exp().norm());
        }
    }

    #[test]
    fn kummer_transform_consistency() {
        for &(a, b, z) in &[
            (c(0.3, 0.1), c(1.7, 0.0), c(2.1, -0.5)),
            (c(-1.4, 0.0), c(2.0, 0.0), c(0.8, 0.9)),
            (c(2.0, 0.5), c(3.5, -0.2), c(-1.2, 0.4)),
        ] {
            let direct = phi_series(a, b, z).unwrap();
            let kummer = z.exp() * phi_series(b - a, b, -z).unwrap();
            assert!((direct - kummer).norm() < 1e-12 * direct.norm(), "{a} {b} {z}");
        }
    }

    #[test]
    fn terminating_case_is_a_polynomial() {
        // Phi(-2; b; z) = 1 - 2z/b + z^2/(b(b+1))
        let (b, z) = (c(3.0, 0.0), c(0.9, 0.0));
        let expected = 1.0 - 2.0 * z / b + z * z / (b * (b + 1.0));
        assert!((phi_series(c(-2.0, 0.0), b, z).unwrap() - expected).norm() < 1e-15);
    }

    #[test]
    fn bad_b_parameter() {
        assert!(matches!(confluent_phi(c(1.0, 0.0), c(-2.0, 0.0), c(0.1, 0.0)), Err(Error::BadBParameter(_))));
        assert!(matches!(confluent_phi(c(1.0, 0.0), c(0.0, 0.0), c(0.1, 0.0)), Err(Error::BadBParameter(_))));
    }

    #[test]
    fn egf_trivial_cases() {
        let t = [c(1.0, 0.0), c(-2.0, 0.5), c(0.3, 0.0)];
        assert_eq!(egf_s(&t, c(0.4, 0.0), c(-0.3, 0.0), c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let z = c(0.6, -0.2);
        let direct = z.exp() * (-z * t[0] + z * z / 2.0 * t[1] - z * z * z / 6.0 * t[2]);
        assert!((egf_s(&t, c(0.0, 0.0), c(0.7, 0.0), z).unwrap() - direct).norm() < 1e-15);
    }
}
