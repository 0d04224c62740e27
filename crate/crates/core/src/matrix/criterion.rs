//! The power-series criterion `[x^j] f(-x) g(x) = delta(j)` for two matrices
//! of the general family to be mutually inverse.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{integer, pochhammer_int, pochhammer_linear, BiPoly, ExactScalar};
use crate::scalar::{factorial, Field};

/// Coefficients of `f(-x) g(x)` up to `x^order`.
pub fn reflected_product<S: Field>(f: &[S], g: &[S], order: usize) -> Result<Vec<S>> {
    let need = order + 1;
    for len in [f.len(), g.len()] {
        if len < need {
            return Err(Error::LengthMismatch { need, got: len });
        }
    }
    Ok((0..=order)
        .map(|j| (0..=j).fold(S::zero(), |acc, i| acc + S::sign(i as i64) * f[i].clone() * g[j - i].clone()))
        .collect())
}

/// True iff `[x^j] f(-x) g(x)` equals `delta(j)` for `0 <= j <= order`.
///
/// `f` and `g` are ordinary power-series coefficient prefixes.
pub fn inversion_criterion<S: Field>(f: &[S], g: &[S], order: usize) -> Result<bool> {
    let c = reflected_product(f, g, order)?;
    Ok(c.iter().enumerate().all(|(j, v)| if j == 0 { v.is_one() } else { v.is_zero() }))
}

/// `U^{(n,k)}_{n-k}`: the `x^{n-k}` coefficient of `f_n(-x) g_k(x)` for the
/// sequences `a_{m;n} = (-n nu)_m / (-n)_m` and `b_{m;k} = (k nu)_m / (k)_m`,
/// as a polynomial in `nu`.
pub fn family_u_coefficient(n: usize, k: usize) -> BiPoly {
    assert!(1 <= k && k <= n, "need 1 <= k <= n");
    u_coefficient(n as i64, k as i64, n - k)
}

/// `U^{(n,k)}_l` for arbitrary `l`.
pub fn u_coefficient(n: i64, k: i64, l: usize) -> BiPoly {
    (0..=l).fold(BiPoly::zero(), |acc, m| {
        let denom = pochhammer_int(-n, m)
            * factorial::<ExactScalar>(m)
            * pochhammer_int(k, l - m)
            * factorial::<ExactScalar>(l - m);
        let num = &pochhammer_linear(&integer(-n), m) * &pochhammer_linear(&integer(k), l - m);
        let sign = if m % 2 == 0 { ExactScalar::one() } else { -ExactScalar::one() };
        &acc + &num.scale(&(sign / denom))
    })
}

/// Checks `U^{(n,k)}_{n-k} = delta(n-k)` identically in `nu` for all `k <= n <= n_max`.
pub fn verify_family_criterion(n_max: usize) -> Option<(usize, usize, BiPoly)> {
    (1..=n_max)
        .flat_map(|n| (1..=n).map(move |k| (n, k)))
        .find_map(|(n, k)| {
            let u = family_u_coefficient(n, k);
            let ok = if n == k { u.is_one() } else { u.is_zero() };
            (!ok).then_some((n, k, u))
        })
}
