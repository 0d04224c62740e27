//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

use std::time::{Duration, Instant};

use hyperinv::exact::rational;
use hyperinv::laguerre::{limit_gap, verify_laguerre_exact};
use hyperinv::matrix::dn::{degenerate_integer_failures, random_comparison};
use hyperinv::matrix::{build_b, float_roundtrip, roundtrip_error, verify_inverse_exact, Precision};
use hyperinv::queue::{
    egf_e_contour, egf_e_real, exponential_partial_sum, ogf_e, ordinary_partial_sum, solve_e, QueueParams,
};
use hyperinv::scalar::{complex_to_dd, dd_to_complex, rational_to_f64, ComplexDd};
use hyperinv::series::{
    egf_s, ode_check_sigma, ogf_forward, ogf_inverse, radius_r, ratio_test_radius, sigma_eval, theta_residual,
    SigmaMethod, TruncatedSeries,
};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    summary: String,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn exact_inversion() -> Outcome {
    let start = Instant::now();
    let report = verify_inverse_exact(25);
    let elapsed = start.elapsed();
    Outcome {
        passed: report.is_identity() && elapsed <= Duration::from_secs(60),
        summary: format!(
            "A(x,nu) B(x,nu) = Id for n_max = 25, {} entries, nonzero residuals: {}, {:.2?}",
            report.entries_checked,
            usize::from(report.offending.is_some()),
            elapsed
        ),
    }
}

fn float_roundtrip_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_dd: f64 = 0.0;
    let mut worst_double: f64 = 0.0;
    for (x, nu) in [(0.3, -0.7), (-0.5, 0.25), (0.9, 2.0)] {
        let (x, nu) = (c(x, 0.0), c(nu, 0.0));
        for _ in 0..100 {
            let s: Vec<Complex64> =
                (0..20).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let dd = float_roundtrip(20, x, nu, &s, Precision::DoubleDouble).unwrap();
            let double = float_roundtrip(20, x, nu, &s, Precision::Double).unwrap();
            worst_dd = worst_dd.max(roundtrip_error(&s, &dd));
            worst_double = worst_double.max(roundtrip_error(&s, &double));
        }
    }
    Outcome {
        passed: worst_dd <= 1e-8,
        summary: format!(
            "max ||B(A S) - S|| / ||S|| = {worst_dd:.2e} in double-double (plain double: {worst_double:.2e}), 300 samples"
        ),
    }
}

fn dn_criterion() -> Outcome {
    let cmp = random_comparison(1000, 11);
    let degenerate = degenerate_integer_failures(12);
    Outcome {
        passed: cmp.worst_relative <= 1e-12 && degenerate.is_empty(),
        summary: format!(
            "closed vs direct sum over 1000 cases: worst relative {:.2e}; integer zero/(-1)^m cases off: {}",
            cmp.worst_relative,
            degenerate.len()
        ),
    }
}

fn sigma_criterion() -> Outcome {
    let mut worst_theta: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    let mut failures = 0;
    for nu in [c(-1.0, 0.0), c(-0.5, 0.0), c(0.25, 0.0), c(0.5, 0.3)] {
        let r = radius_r(nu);
        for i in 1..=8 {
            for j in 0..16 {
                let w = Complex64::from_polar(0.8 * r * i as f64 / 8.0, std::f64::consts::TAU * j as f64 / 16.0);
                match (
                    theta_residual(w, nu),
                    sigma_eval(w, nu, SigmaMethod::Closed),
                    sigma_eval(w, nu, SigmaMethod::Series),
                ) {
                    (Ok(t), Ok(a), Ok(b)) => {
                        worst_theta = worst_theta.max(t);
                        worst_gap = worst_gap.max(rel(b, a));
                    }
                    _ => failures += 1,
                }
            }
        }
    }
    let r_minus_one = radius_r(c(-1.0, 0.0));
    let r_half = radius_r(c(0.5, 0.0));
    let est_minus_one = ratio_test_radius(&rational(-1, 1), 200).unwrap();
    let est_half = ratio_test_radius(&rational(1, 2), 200).unwrap();
    let within = |est: f64, r: f64| (est - r).abs() <= 0.02 * r;
    let passed = failures == 0
        && worst_theta <= 1e-12
        && worst_gap <= 1e-10
        && (r_minus_one - 0.25).abs() < 1e-15
        && (r_half - 2.0).abs() < 1e-15
        && within(est_minus_one, 0.25)
        && within(est_half, 2.0);
    Outcome {
        passed,
        summary: format!(
            "Theta residual {worst_theta:.2e}, closed vs series {worst_gap:.2e}, evaluation errors {failures}; \
             R(-1) = {r_minus_one}, ratio test {est_minus_one:.4}; R(1/2) = {r_half}, ratio test {est_half:.4}"
        ),
    }
}

fn ode_criterion() -> Outcome {
    let a = ode_check_sigma(30, &rational(-1, 2));
    let b = ode_check_sigma(30, &rational(1, 3));
    Outcome {
        passed: a.holds() && b.holds(),
        summary: format!("exact ODE to order 30: nu = -1/2 {}, nu = 1/3 {}", a.holds(), b.holds()),
    }
}

fn ogf_criterion() -> Outcome {
    const ORDER: usize = 25;
    let mut worst_forward: f64 = 0.0;
    let mut worst_inverse: f64 = 0.0;
    let mut worst_inverse_double: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (x, nu) in [(c(0.3, 0.0), c(-0.7, 0.0)), (c(-0.5, 0.0), c(0.25, 0.0)), (c(0.2, 0.1), c(0.5, -0.3))] {
        let b = build_b(ORDER, &x, &nu);
        let e1 = TruncatedSeries::variable(ORDER);
        let random: Vec<Complex64> = (0..=ORDER)
            .map(|i| if i == 0 { c(0.0, 0.0) } else { c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) })
            .collect();
        let random = TruncatedSeries::new(random, ORDER);
        for g_t in [e1, random] {
            let g_s = ogf_forward(&g_t, &x, &nu).unwrap();
            let s = b.transform(&g_t.coeffs()[1..]).unwrap();
            let scale = s.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for n in 1..=ORDER {
                worst_forward = worst_forward.max((g_s.coeff(n) - s[n - 1]).norm() / s[n - 1].norm().max(1e-3 * scale));
            }
            let scale_t = g_t.coeffs().iter().map(|v| v.norm()).fold(0.0, f64::max);
            let back = ogf_inverse(&g_s, &x, &nu).unwrap();
            for n in 0..=ORDER {
                worst_inverse_double = worst_inverse_double.max((back.coeff(n) - g_t.coeff(n)).norm() / scale_t);
            }
            // the inverse composition loses about cond(A) digits, so it runs in double-double
            let lift = |v: &Complex64| complex_to_dd(*v);
            let g_t_dd = TruncatedSeries::new(g_t.coeffs().iter().map(lift).collect::<Vec<ComplexDd>>(), ORDER);
            let (x_dd, nu_dd) = (lift(&x), lift(&nu));
            let back = ogf_inverse(&ogf_forward(&g_t_dd, &x_dd, &nu_dd).unwrap(), &x_dd, &nu_dd).unwrap();
            for n in 0..=ORDER {
                let got = dd_to_complex(&back.coeff(n));
                worst_inverse = worst_inverse.max((got - g_t.coeff(n)).norm() / scale_t);
            }
        }
    }
    Outcome {
        passed: worst_forward <= 1e-9 && worst_inverse <= 1e-9,
        summary: format!(
            "order 25: composed OGF vs B T coefficients {worst_forward:.2e}, inverse relation recovers G_T to {worst_inverse:.2e} in double-double (plain double: {worst_inverse_double:.2e})"
        ),
    }
}

/// Exact `S = B T` from the binary values of `x`, `nu` and `T`, rounded once.
fn exact_b_transform(n: usize, x: f64, nu: f64, t: &[f64]) -> Vec<f64> {
    let q = |v: f64| BigRational::from_float(v).unwrap();
    let b = build_b(n, &q(x), &q(nu));
    let mut padded: Vec<BigRational> = t.iter().map(|&v| q(v)).collect();
    padded.resize(n, q(0.0));
    b.transform(&padded).unwrap().iter().map(rational_to_f64).collect()
}

fn egf_criterion() -> Outcome {
    const TERMS: usize = 45;
    let (x, nu) = (0.3, -0.7);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut e1 = vec![0.0; 8];
    e1[0] = 1.0;
    let random: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut worst: f64 = 0.0;
    for t in [e1, random] {
        let s = exact_b_transform(TERMS, x, nu, &t);
        let tc: Vec<Complex64> = t.iter().map(|&v| c(v, 0.0)).collect();
        for z in [c(0.1, 0.0), c(0.3, 0.0), c(0.0, 0.5)] {
            let closed = egf_s(&tc, c(x, 0.0), c(nu, 0.0), z).unwrap();
            worst = worst.max(rel(closed, exponential_partial_sum(&s, z)));
        }
    }
    Outcome {
        passed: worst <= 1e-9,
        summary: format!("EGF formula vs exponential partial sums at z = 0.1, 0.3, 0.5i (T = e1 and random): {worst:.2e}"),
    }
}

fn queue_params() -> QueueParams {
    QueueParams::new(0.5, 2.0, -0.5, 0.3).unwrap()
}

fn queue_criterion() -> Outcome {
    let start = Instant::now();
    let sol = solve_e(15, &queue_params()).unwrap();
    let elapsed = start.elapsed();
    let worst = sol.max_residual();
    Outcome {
        passed: worst <= 1e-8 && elapsed <= Duration::from_secs(30),
        summary: format!(
            "p = (0.5, 2, -0.5, 0.3), b <= 15: max row residual {worst:.2e}, matrix vs direct path {:.2e}, {elapsed:.2?}",
            sol.path_gap
        ),
    }
}

fn integral_criterion() -> Outcome {
    let p = queue_params();
    let u = p.u_minus;
    let sol = solve_e(40, &p).unwrap();
    let mut ogf_gap: f64 = 0.0;
    for z in [c(0.05 * u, 0.0), c(0.0, 0.05 * u), c(-0.05 * u, 0.0)] {
        ogf_gap = ogf_gap.max(rel(ogf_e(z, &p).unwrap(), ordinary_partial_sum(&sol.e[..25], z)));
    }
    let mut contour_gap: f64 = 0.0;
    for z in [c(0.1 * u, 0.0), c(0.3 * u, 0.0), c(0.0, 0.5 * u)] {
        contour_gap = contour_gap.max(rel(egf_e_contour(z, &p).unwrap(), exponential_partial_sum(&sol.e, z)));
    }
    let q = QueueParams::synthetic(0.5, 2.0, 0.4, 0.3, -0.5).unwrap();
    let sol_q = solve_e(40, &q).unwrap();
    let mut real_gap: f64 = 0.0;
    let mut cross_gap: f64 = 0.0;
    for z in [c(0.1 * u, 0.0), c(0.3 * u, 0.0), c(0.0, 0.5 * u)] {
        let r = egf_e_real(z, &q).unwrap();
        let k = egf_e_contour(z, &q).unwrap();
        real_gap = real_gap.max(rel(r, exponential_partial_sum(&sol_q.e, z)));
        cross_gap = cross_gap.max(rel(r, k));
    }
    Outcome {
        passed: ogf_gap <= 1e-6 && contour_gap <= 1e-6 && real_gap <= 1e-6 && cross_gap <= 1e-8,
        summary: format!(
            "ogf vs partial sums {ogf_gap:.2e}, contour EGF vs partial sums {contour_gap:.2e}; \
             nu = 0.4: real EGF vs partial sums {real_gap:.2e}, real vs contour {cross_gap:.2e}"
        ),
    }
}

fn laguerre_criterion() -> Outcome {
    let report = verify_laguerre_exact(20);
    let gaps: Vec<f64> = [1e3, 2e3, 4e3].iter().map(|&nu| limit_gap(20, 0.3, nu)).collect();
    // gap(2 nu) should be gap(nu) / 2 within 20%
    let ratios = [gaps[1] / (gaps[0] / 2.0), gaps[2] / (gaps[1] / 2.0)];
    let halves = ratios.iter().all(|r| (0.8..=1.2).contains(r));
    Outcome {
        passed: report.is_identity() && halves,
        summary: format!(
            "exact A~ B~ = Id to n_max = 20: {}; limit gaps {:.4e}, {:.4e}, {:.4e} (halving ratios {:.4}, {:.4})",
            report.is_identity(),
            gaps[0],
            gaps[1],
            gaps[2],
            ratios[0],
            ratios[1]
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact inversion", exact_inversion),
        ("float roundtrip", float_roundtrip_criterion),
        ("D_N closed form", dn_criterion),
        ("Sigma and Theta", sigma_criterion),
        ("Sigma ODE", ode_criterion),
        ("OGF relation", ogf_criterion),
        ("EGF formula", egf_criterion),
        ("queue solve", queue_criterion),
        ("integral representations", integral_criterion),
        ("Laguerre limit", laguerre_criterion),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        if !outcome.passed {
            failed += 1;
        }
        println!("criterion {:>2} {tag} [{name}] {}", i + 1, outcome.summary);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
