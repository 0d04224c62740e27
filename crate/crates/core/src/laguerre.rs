//! Laguerre specialization of the inversion pair: the `nu -> inf` limit of
//! `A(x/nu, nu)` and `B(x/nu, nu)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{integer, pochhammer_int, BiPoly, ExactScalar};
use crate::matrix::{build_a, build_b, check_identity_product, InverseReport, TriMatrix};
use crate::scalar::{factorial, pochhammer, Field};

/// Generalized Laguerre polynomial
/// `L_n^(alpha)(y) = sum_j (-1)^j C(n + alpha, n - j) y^j / j!`
/// with `C(n + alpha, n - j) = (alpha + j + 1)_{n-j} / (n - j)!`.
pub fn laguerre_l<S: Field>(n: usize, alpha: &S, y: &S) -> S {
    let mut sum = S::zero();
    let mut y_pow = S::one();
    for j in 0..=n {
        let binom = pochhammer(&(alpha.clone() + S::from_i64(j as i64 + 1)), n - j) / factorial::<S>(n - j);
        let term = binom * y_pow.clone() / factorial::<S>(j);
        sum = if j % 2 == 0 { sum + term } else { sum - term };
        y_pow = y_pow * y.clone();
    }
    sum
}

/// `L_n^(alpha)(c x)` as an exact polynomial in `x`, for integer `alpha`.
pub fn laguerre_l_poly(n: usize, alpha: i64, c: &ExactScalar) -> BiPoly {
    let mut sum = BiPoly::zero();
    for j in 0..=n {
        let binom = pochhammer_int(alpha + j as i64 + 1, n - j) / factorial::<ExactScalar>(n - j);
        let mut coeff = binom * num_traits::pow(c.clone(), j) / factorial::<ExactScalar>(j);
        if j % 2 == 1 {
            coeff = -coeff;
        }
        sum = sum + BiPoly::monomial(coeff, j as u32, 0);
    }
    sum
}

/// Terminating Kummer sum `M(-d; c; y) = sum_{m <= d} (-d)_m / (c)_m y^m / m!`.
pub fn kummer_terminating<S: Field>(neg_deg: i64, c: &S, y: &S) -> Result<S> {
    if neg_deg > 0 {
        return Err(Error::InvalidArgument(format!("upper parameter {neg_deg} is not a non-positive integer")));
    }
    let mut term = S::one();
    let mut sum = S::one();
    for m in 0..(-neg_deg) as usize {
        let cm = c.clone() + S::from_i64(m as i64);
        if cm.is_zero() {
            return Err(Error::DegenerateParameter { c: format!("{c:?}"), m: m + 1 });
        }
        term = term * S::from_i64(neg_deg + m as i64) * y.clone() / (cm * S::from_i64(m as i64 + 1));
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// The matrices `A~(x)`, `B~(x)` with
/// `A~_{n,k} = (-1)^n L_{n-k}^(-n-1)(-n x)` and `B~_{n,k} = (-1)^k (n/k) L_{n-k}^(k-1)(k x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreMatrixPair<S> {
    pub a_tilde: TriMatrix<S>,
    pub b_tilde: TriMatrix<S>,
    pub n_max: usize,
}

fn sign<S: Field>(k: usize) -> S {
    if k.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

pub fn build_laguerre_pair<S: Field>(n_max: usize, x: &S) -> LaguerreMatrixPair<S> {
    let a_tilde = TriMatrix::from_fn(n_max, |n, k| {
        let y = -(S::from_i64(n as i64) * x.clone());
        sign::<S>(n) * laguerre_l(n - k, &S::from_i64(-(n as i64) - 1), &y)
    });
    let b_tilde = TriMatrix::from_fn(n_max, |n, k| {
        let y = S::from_i64(k as i64) * x.clone();
        sign::<S>(k) * S::from_ratio(n as i64, k as i64) * laguerre_l(n - k, &S::from_i64(k as i64 - 1), &y)
    });
    LaguerreMatrixPair { a_tilde, b_tilde, n_max }
}

/// Pair with entries as exact polynomials in `x`.
pub fn build_laguerre_pair_exact(n_max: usize) -> LaguerreMatrixPair<BiPoly> {
    let (a_tilde, b_tilde) = rayon::join(
        || {
            TriMatrix::from_fn(n_max, |n, k| {
                let l = laguerre_l_poly(n - k, -(n as i64) - 1, &integer(-(n as i64)));
                if n % 2 == 0 { l } else { -l }
            })
        },
        || {
            TriMatrix::from_fn(n_max, |n, k| {
                let l = laguerre_l_poly(n - k, k as i64 - 1, &integer(k as i64));
                let s = ExactScalar::new((n as i64).into(), (k as i64).into());
                l.scale(&if k % 2 == 0 { s } else { -s })
            })
        },
    );
    LaguerreMatrixPair { a_tilde, b_tilde, n_max }
}

/// Exact check of `A~(x) B~(x) = Id` as polynomials in `x`.
pub fn verify_laguerre_exact(n_max: usize) -> InverseReport {
    let pair = build_laguerre_pair_exact(n_max);
    check_identity_product(&pair.a_tilde, &pair.b_tilde)
}

/// Entrywise max of `|A(x/nu, nu) - A~(x)|` and `|B(x/nu, nu) - B~(x)|`.
pub fn limit_gap(n_max: usize, x: f64, nu: f64) -> f64 {
    let scaled = x / nu;
    let a = build_a(n_max, &scaled, &nu);
    let b = build_b(n_max, &scaled, &nu);
    let pair = build_laguerre_pair(n_max, &x);
    let gap = |m: &TriMatrix<f64>, t: &TriMatrix<f64>| {
        m.iter().map(|(n, k, v)| (v - t.at(n, k)).abs()).fold(0.0, f64::max)
    };
    gap(&a, &pair.a_tilde).max(gap(&b, &pair.b_tilde))
}

/// `B~ (A~ s)` over the first `n_max` terms; recovers `s`.
pub fn laguerre_roundtrip<S: Field>(s: &[S], x: &S, n_max: usize) -> Result<Vec<S>> {
    if s.len() < n_max {
        return Err(Error::LengthMismatch { need: n_max, got: s.len() });
    }
    let pair = build_laguerre_pair(n_max, x);
    pair.b_tilde.transform(&pair.a_tilde.transform(s)?)
}

/// `A~ (B~ s)`; the reverse-order roundtrip.
pub fn laguerre_roundtrip_reverse<S: Field>(s: &[S], x: &S, n_max: usize) -> Result<Vec<S>> {
    if s.len() < n_max {
        return Err(Error::LengthMismatch { need: n_max, got: s.len() });
    }
    let pair = build_laguerre_pair(n_max, x);
    pair.a_tilde.transform(&pair.b_tilde.transform(s)?)
}

/// Checks `L_{n-k}^(-n-1)(-n x) = (-1)^{n-k} C(n,k) M(k-n; -n; -n x)` exactly
/// at the rational point `x` for all `1 <= k <= n <= n_max`; returns the first
/// failing `(n, k)`.
pub fn kummer_consistency(n_max: usize, x: &ExactScalar) -> Option<(usize, usize)> {
    (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, k))).find(|&(n, k)| {
        let y = -integer(n as i64) * x;
        let lhs = laguerre_l(n - k, &integer(-(n as i64) - 1), &y);
        let m = kummer_terminating(k as i64 - n as i64, &integer(-(n as i64)), &y).expect("(-n)_m nonzero for m < n");
        let binom = ExactScalar::from_integer(crate::scalar::binomial(n as u64, k as u64));
        let rhs = sign::<ExactScalar>(n - k) * binom * m;
        lhs != rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use num_traits::One;

    #[test]
    fn low_degree_values() {
        let y = rational(3, 7);
        let alpha = rational(-5, 2);
        assert!(laguerre_l(0, &alpha, &y).is_one());
        assert_eq!(laguerre_l(1, &alpha, &y), &alpha + integer(1) - &y);
        let x = rational(2, 5);
        let y = -integer(2) * &x;
        assert_eq!(laguerre_l(1, &integer(-3), &y), integer(-2) + integer(2) * &x);
    }

    #[test]
    fn polynomial_matches_pointwise() {
        let x0 = rational(-3, 11);
        for (n, alpha, c) in [(4usize, -7i64, 3i64), (6, 2, -5), (0, -1, 1)] {
            let p = laguerre_l_poly(n, alpha, &integer(c));
            let direct = laguerre_l(n, &integer(alpha), &(integer(c) * &x0));
            assert_eq!(p.eval(&x0, &ExactScalar::zero()), direct);
        }
    }

    #[test]
    fn small_entries() {
        let pair = build_laguerre_pair_exact(3);
        let x = BiPoly::x();
        let two = BiPoly::constant(integer(2));
        assert_eq!(*pair.a_tilde.at(2, 1), &(&two * &x) - &two);
        assert_eq!(*pair.b_tilde.at(2, 1), -(&two * &(&BiPoly::one() - &x)));
        assert!(pair.a_tilde.has_signed_unit_diagonal() && pair.b_tilde.has_signed_unit_diagonal());
    }

    #[test]
    fn exact_inverse_small() {
        assert!(verify_laguerre_exact(8).is_identity());
    }

    #[test]
    fn kummer_form() {
        assert_eq!(kummer_consistency(12, &rational(3, 10)), None);
        assert_eq!(kummer_consistency(12, &rational(-7, 4)), None);
    }

    #[test]
    fn zero_x_has_no_gap() {
        assert_eq!(limit_gap(10, 0.0, 1e3), 0.0);
    }

    #[test]
    fn subdiagonal_is_nu_independent() {
        let (x, nu) = (0.3, 1234.5);
        let a = build_a(6, &(x / nu), &nu);
        let pair = build_laguerre_pair(6, &x);
        for n in 2..=6 {
            let expected = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 } * n as f64 * (1.0 - x);
            assert!((a.at(n, n - 1) - expected).abs() < 1e-12);
            assert!((pair.a_tilde.at(n, n - 1) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn roundtrip_unit_vector() {
        let mut e1 = vec![0.0; 12];
        e1[0] = 1.0;
        let back = laguerre_roundtrip(&e1, &0.7, 12).unwrap();
        let rev = laguerre_roundtrip_reverse(&e1, &0.7, 12).unwrap();
        for i in 0..12 {
            assert!((back[i] - e1[i]).abs() < 1e-9 && (rev[i] - e1[i]).abs() < 1e-9);
        }
        assert!(matches!(laguerre_roundtrip(&e1, &0.7, 13), Err(Error::LengthMismatch { .. })));
    }
}
