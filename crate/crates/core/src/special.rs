//! Complex Gamma-family numerics: `ln Γ`, `1/Γ`, digamma, and `sin(πz)`/`cos(πz)`
//! with exact argument reduction.

use std::f64::consts::PI;

use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// True when `z` is exactly a non-positive integer.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `sin(pi x)` for real `x`, exact zeros at integers.
pub fn sinpi_real(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// `cos(pi x)` for real `x`, exact zeros at half-integers.
pub fn cospi_real(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    if r == 0.0 {
        return 1.0;
    }
    if r == 1.0 {
        return -1.0;
    }
    (PI * r).cos()
}

pub fn sinpi(z: Complex64) -> Complex64 {
    let (s, c) = (sinpi_real(z.re), cospi_real(z.re));
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

pub fn cospi(z: Complex64) -> Complex64 {
    let (s, c) = (sinpi_real(z.re), cospi_real(z.re));
    let y = PI * z.im;
    Complex64::new(c * y.cosh(), -s * y.sinh())
}

/// `ln Γ(z)` for `Re z >= 0.5` (Lanczos, g = 7).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `1/Γ(z)`, entire; exactly zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        if z.im == 0.0 && z.re.fract() == 0.0 && z.re <= 21.0 {
            // exact factorials for small positive integers
            let mut f = 1.0f64;
            for j in 2..(z.re as u64) {
                f *= j as f64;
            }
            return Complex64::new(1.0 / f, 0.0);
        }
        (-ln_gamma_right(z)).exp()
    } else {
        // 1/Γ(z) = sin(πz) Γ(1-z) / π
        sinpi(z) * ln_gamma_right(1.0 - z).exp() / PI
    }
}

pub fn gamma(z: Complex64) -> Complex64 {
    1.0 / rgamma(z)
}

/// Principal-ish `ln Γ(z)`: exact real part, imaginary part determined modulo 2π.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        ln_gamma_right(z)
    } else {
        Complex64::new(PI, 0.0).ln() - sinpi(z).ln() - ln_gamma_right(1.0 - z)
    }
}

/// Real `ln |Γ(x)|` and the sign of `Γ(x)`; `None` at poles.
pub fn ln_gamma_real(x: f64) -> Option<(f64, f64)> {
    if x <= 0.0 && x.fract() == 0.0 {
        return None;
    }
    if x >= 0.5 {
        return Some((ln_gamma_right(Complex64::new(x, 0.0)).re, 1.0));
    }
    let s = sinpi_real(x);
    let lg = (PI / s.abs()).ln() - ln_gamma_right(Complex64::new(1.0 - x, 0.0)).re;
    Some((lg, s.signum()))
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)` for `z` off the non-positive integers.
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ψ(z) = ψ(1-z) - π cot(πz)
        return digamma(1.0 - z) - PI * cospi(z) / sinpi(z);
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // Asymptotic series with Bernoulli numbers B_{2k}/(2k).
    const B: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let inv2 = 1.0 / (z * z);
    let mut pow = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for b in B {
        series += b * pow;
        pow *= inv2;
    }
    acc + z.ln() - 0.5 / z - series
}
