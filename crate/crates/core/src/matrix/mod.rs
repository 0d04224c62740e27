//! Lower-triangular hypergeometric matrices and their inversion.

pub mod criterion;
pub mod dn;
pub mod hyper;
pub mod tri;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{complex_to_dd, dd_to_complex, ComplexDd};

use crate::exact::BiPoly;

pub use criterion::{family_u_coefficient, inversion_criterion, verify_family_criterion};
pub use dn::{d_n, DnMethod};
pub use hyper::{
    a_factor, b_factor, build_a, build_a_exact, build_b, build_b_exact, build_general, hyper_f_terminating,
    hyper_f_terminating_poly, AFamily, BFamily, CoefficientFamily,
};
pub use tri::{transform, TriMatrix};

/// Working precision of the float-mode transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    /// Double-double entries and accumulation; inputs and outputs stay `Complex64`.
    DoubleDouble,
}

/// `B (A s)` for the first `n_max` terms of `s`.
///
/// The transform pair amplifies rounding of the intermediate `A s` by roughly
/// `max_n sum |B_{n,k}| |(A s)_k| / |s|`, which is near `1e10` at `n_max = 20`;
/// `Precision::DoubleDouble` keeps the recovered sequence at double accuracy.
pub fn float_roundtrip(
    n_max: usize,
    x: Complex64,
    nu: Complex64,
    s: &[Complex64],
    precision: Precision,
) -> Result<Vec<Complex64>> {
    if s.len() < n_max {
        return Err(Error::LengthMismatch { need: n_max, got: s.len() });
    }
    match precision {
        Precision::Double => build_b(n_max, &x, &nu).transform(&build_a(n_max, &x, &nu).transform(s)?),
        Precision::DoubleDouble => {
            let (x, nu) = (complex_to_dd(x), complex_to_dd(nu));
            let s: Vec<ComplexDd> = s.iter().map(|&v| complex_to_dd(v)).collect();
            let back = build_b(n_max, &x, &nu).transform(&build_a(n_max, &x, &nu).transform(&s)?)?;
            Ok(back.iter().map(dd_to_complex).collect())
        }
    }
}

/// `max |back - s| / max |s|` over the common prefix.
pub fn roundtrip_error(s: &[Complex64], back: &[Complex64]) -> f64 {
    let scale = s.iter().take(back.len()).map(|v| v.norm()).fold(0.0, f64::max);
    let err = back.iter().zip(s).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}

/// Outcome of an exact product check `M1 * M2 = Id`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseReport {
    pub n_max: usize,
    pub entries_checked: usize,
    /// First `(n, k)` in row-major order whose product entry is wrong, with its value.
    pub offending: Option<(usize, usize, BiPoly)>,
}

impl InverseReport {
    pub fn is_identity(&self) -> bool {
        self.offending.is_none()
    }
}

/// Checks that `lhs * rhs` is the identity with exact polynomial entries.
pub fn check_identity_product(lhs: &TriMatrix<BiPoly>, rhs: &TriMatrix<BiPoly>) -> InverseReport {
    let n_max = lhs.n_max();
    let product = lhs.mul(rhs).expect("matrices built with the same size");
    let offending = product.iter().find_map(|(n, k, p)| {
        let ok = if n == k { p.is_one() } else { p.is_zero() };
        (!ok).then(|| (n, k, p.clone()))
    });
    InverseReport { n_max, entries_checked: n_max * (n_max + 1) / 2, offending }
}

/// Exact verification that `A(x, nu) B(x, nu) = Id` as polynomials in `(x, nu)`.
pub fn verify_inverse_exact(n_max: usize) -> InverseReport {
    let (a, b) = rayon::join(|| build_a_exact(n_max), || build_b_exact(n_max));
    check_identity_product(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer;

    #[test]
    fn small_sizes_are_inverse() {
        assert!(verify_inverse_exact(1).is_identity());
        assert!(verify_inverse_exact(2).is_identity());
        assert!(verify_inverse_exact(9).is_identity());
    }

    #[test]
    fn reversed_order_also_inverse() {
        let a = build_a_exact(8);
        let b = build_b_exact(8);
        assert!(check_identity_product(&b, &a).is_identity());
    }

    #[test]
    fn perturbed_entry_is_reported() {
        let a = build_a_exact(4);
        let b = build_b_exact(4);
        let bad = TriMatrix::from_fn(4, |n, k| {
            if (n, k) == (3, 2) {
                b.at(n, k) + &BiPoly::constant(integer(1))
            } else {
                b.at(n, k).clone()
            }
        });
        let report = check_identity_product(&a, &bad);
        let (n, k, p) = report.offending.unwrap();
        assert_eq!((n, k), (3, 2));
        assert!(!p.is_zero());
    }
}
