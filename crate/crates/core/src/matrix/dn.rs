//! The alternating reciprocal-Gamma sum
//! `D_N(lambda, mu) = sum_{r=0}^{N-1} (-1)^r / (Gamma(1+r-lambda) Gamma(1-r+mu))`
//! by direct summation and in closed form.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::special::{cospi, digamma, rgamma, sinpi};

/// Below this separation the closed form switches to its `mu = lambda` limit.
pub const DIAGONAL_SWITCH: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DnMethod {
    Closed,
    Brute,
}

pub fn d_n(lambda: Complex64, mu: Complex64, n: usize, method: DnMethod) -> Complex64 {
    assert!(n >= 1, "N must be at least 1");
    match method {
        DnMethod::Brute => d_n_brute(lambda, mu, n),
        DnMethod::Closed if (mu - lambda).norm() < DIAGONAL_SWITCH => d_n_diagonal(lambda, n),
        DnMethod::Closed => d_n_off_diagonal(lambda, mu, n),
    }
}

pub fn d_n_brute(lambda: Complex64, mu: Complex64, n: usize) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for r in 0..n {
        let r_f = r as f64;
        let term = rgamma(1.0 + r_f - lambda) * rgamma(1.0 - r_f + mu);
        sum += if r % 2 == 0 { term } else { -term };
    }
    sum
}

/// Telescoped form, valid for `mu != lambda`.
pub fn d_n_off_diagonal(lambda: Complex64, mu: Complex64, n: usize) -> Complex64 {
    let n_f = n as f64;
    let head = rgamma(-lambda) * rgamma(1.0 + mu);
    let tail = rgamma(n_f - lambda) * rgamma(1.0 - n_f + mu);
    let tail = if n.is_multiple_of(2) { tail } else { -tail };
    (head - tail) / (mu - lambda)
}

/// `sin(pi lambda) psi(shift - lambda)`, rewritten through the reflection
/// formula when its argument lies in the left half-plane so that integer
/// `lambda` gives a finite value.
fn sin_psi(lambda: Complex64, shift: f64) -> Complex64 {
    let arg = shift - lambda;
    let s = sinpi(lambda);
    if arg.re >= 0.5 {
        s * digamma(arg)
    } else {
        // psi(z) = psi(1 - z) - pi cot(pi z), and cot(pi (shift - lambda)) = -cot(pi lambda)
        s * digamma(1.0 - arg) + PI * cospi(lambda)
    }
}

/// Limit `mu -> lambda`: `[sin(pi l) psi(-l) - sin(pi l) psi(N - l)] / pi`.
pub fn d_n_diagonal(lambda: Complex64, n: usize) -> Complex64 {
    (sin_psi(lambda, 0.0) - sin_psi(lambda, n as f64)) / PI
}

/// Worst disagreement between the closed form and direct summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DnComparison {
    pub cases: usize,
    pub worst_relative: f64,
    pub worst_case: (Complex64, Complex64, usize),
}

/// Compares both methods on seeded random `lambda, mu` with real parts in
/// `[-4, 4]`, imaginary parts in `[-2, 2]` and `1 <= N <= 20`.
pub fn random_comparison(cases: usize, seed: u64) -> DnComparison {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-2.0..2.0));
    let mut out = DnComparison { cases, worst_relative: 0.0, worst_case: (Complex64::default(), Complex64::default(), 1) };
    for _ in 0..cases {
        let lambda = draw(&mut rng);
        let mu = draw(&mut rng);
        let n = rng.gen_range(1..=20usize);
        let closed = d_n(lambda, mu, n, DnMethod::Closed);
        let brute = d_n(lambda, mu, n, DnMethod::Brute);
        let rel = (closed - brute).norm() / brute.norm().max(f64::MIN_POSITIVE);
        if rel > out.worst_relative {
            out.worst_relative = rel;
            out.worst_case = (lambda, mu, n);
        }
    }
    out
}

/// Integer cases `lambda = m`, `mu = N - 1 - m'` with `m, m' >= 0`: the closed
/// form must give exactly `0` when `m + m' < N - 1` and exactly `(-1)^m` when
/// `m + m' = N - 1`. Returns the offending `(m, m', N)` triples for `N <= n_max`.
pub fn degenerate_integer_failures(n_max: usize) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for n in 1..=n_max {
        for m in 0..n {
            for mp in 0..(n - m) {
                let lambda = Complex64::new(m as f64, 0.0);
                let mu = Complex64::new((n - 1 - mp) as f64, 0.0);
                let expected = if m + mp + 1 < n {
                    0.0
                } else if m % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                if d_n(lambda, mu, n, DnMethod::Closed) != Complex64::new(expected, 0.0) {
                    bad.push((m, mp, n));
                }
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_examples() {
        for method in [DnMethod::Closed, DnMethod::Brute] {
            assert_eq!(d_n(c(0.0, 0.0), c(1.0, 0.0), 1, method), c(1.0, 0.0));
            assert_eq!(d_n(c(0.0, 0.0), c(1.0, 0.0), 2, method), c(0.0, 0.0));
            assert_eq!(d_n(c(0.0, 0.0), c(0.0, 0.0), 2, method), c(1.0, 0.0));
        }
    }

    #[test]
    fn branches_agree_near_diagonal() {
        for &(l, n) in &[(c(0.3, 0.2), 5), (c(-1.7, 0.4), 9), (c(2.25, -0.6), 12), (c(-3.0, 0.0), 4)] {
            let mu = l + c(1e-6, 0.0);
            let near = d_n_off_diagonal(l, mu, n);
            let limit = d_n_diagonal(l, n);
            let brute = d_n_brute(l, mu, n);
            assert!((near - limit).norm() <= 1e-5 * limit.norm().max(1.0), "{l} {n}: {near} vs {limit}");
            // the telescoped quotient loses about eps / |mu - lambda| here
            assert!((near - brute).norm() <= 1e-8 * brute.norm().max(1.0), "{l} {n}: {near} vs {brute}");
        }
    }

    #[test]
    fn diagonal_integer_values() {
        // lambda = mu = m with N = m + m' + 1 gives (-1)^m
        for m in 0..6 {
            for mp in 0..5 {
                let l = c(m as f64, 0.0);
                let v = d_n(l, l, m + mp + 1, DnMethod::Closed);
                assert_eq!(v, c(if m % 2 == 0 { 1.0 } else { -1.0 }, 0.0));
            }
        }
    }

    #[test]
    fn degenerate_cases_are_exact() {
        assert!(degenerate_integer_failures(12).is_empty());
    }

    #[test]
    fn seeded_comparison_is_reproducible() {
        let a = random_comparison(50, 7);
        assert_eq!(a, random_comparison(50, 7));
        assert!(a.worst_relative < 1e-9);
    }
}
