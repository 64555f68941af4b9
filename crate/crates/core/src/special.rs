//! Gamma function, high-order Hurwitz zeta tails and a few combinatorial
//! helpers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

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

/// Euler's Gamma function (Lanczos approximation with reflection).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::GammaPole(z.re));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return PI / (s * gamma_unchecked(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

/// Bernoulli numbers `B_2, B_4, ..., B_20`.
pub const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// `zeta(s, q) = sum_{k >= 0} (k + q)^{-s}` for `q > 0`, `s != 1`, by direct
/// summation up to a shift `q + M` followed by a tenth-order Euler-Maclaurin
/// correction. Returns the value and an error estimate (the first omitted
/// correction).
pub fn zeta_tail(s: Complex64, q: f64) -> Result<(Complex64, f64)> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    if !(q > 0.0) {
        return Err(Error::Domain(format!("Hurwitz parameter q = {q} must be positive")));
    }
    let shift = (20.0 + 2.0 * s.norm()).ceil();
    let m = (shift - q).max(0.0).ceil() as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for k in 0..m {
        let t = Complex64::new(k as f64 + q, 0.0).powc(-s);
        sum += t;
        mag += t.norm();
    }
    let a = q + m as f64;
    let ac = Complex64::new(a, 0.0);
    let integral = ac.powc(1.0 - s) / (s - 1.0);
    mag += integral.norm();
    let mut total = sum + integral + ac.powc(-s) * 0.5;
    // f^{(2j-1)}(a) for f(t) = t^{-s}: (-1)^{2j-1} (s)_{2j-1} a^{-s-2j+1}
    let mut poch = s;
    let mut fact = 2.0;
    let mut last = 0.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = poch * ac.powc(-s - (2 * j + 1) as f64) * (*b / fact);
        total += term;
        last = term.norm();
        let n = (2 * j + 1) as f64;
        poch = poch * (s + n) * (s + n + 1.0);
        fact *= (n + 2.0) * (n + 3.0);
    }
    Ok((total, last + 8.0 * f64::EPSILON * mag))
}

/// Binomial coefficient as `f64`.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Exact binomial coefficient.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
