//! Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use num_traits::Zero;

use crate::polylog::ApproxValue;
use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];

/// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            max_intervals: 4000,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig {
            abs_tol: tol,
            rel_tol: tol,
            ..QuadConfig::default()
        }
    }
}

struct Interval {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn eval(f: &mut dyn FnMut(f64) -> Result<Complex64>, x: f64) -> Result<Complex64> {
    let v = f(x)?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::EndpointSingularity(x));
    }
    Ok(v)
}

fn gk15(f: &mut dyn FnMut(f64) -> Result<Complex64>, a: f64, b: f64) -> Result<Interval> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = eval(f, c)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = h * x;
        let pair = eval(f, c - dx)? + eval(f, c + dx)?;
        kron += pair * wk;
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    let value = kron * h;
    let err = ((kron - gauss) * h).norm();
    Ok(Interval { a, b, value, err })
}

/// Integral of `f` over `[a, b]`; `err` is the sum of the Kronrod-Gauss
/// differences over the final partition plus a rounding allowance.
pub fn integrate(
    f: &mut dyn FnMut(f64) -> Result<Complex64>,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<ApproxValue> {
    if a == b {
        return Ok(ApproxValue::zero());
    }
    let mut heap = BinaryHeap::new();
    heap.push(gk15(f, a, b)?);
    let mut count = 1;
    loop {
        let (mut value, mut err, mut mag) = (Complex64::zero(), 0.0, 0.0);
        for iv in heap.iter() {
            value += iv.value;
            err += iv.err;
            mag += iv.value.norm();
        }
        let rounding = 50.0 * f64::EPSILON * mag;
        if err + rounding <= cfg.abs_tol.max(cfg.rel_tol * value.norm()) {
            return Ok(ApproxValue::new(value, err + rounding));
        }
        if count >= cfg.max_intervals {
            return Err(Error::Unconverged { terms: count, tail: err });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval below floating-point resolution
            return Ok(ApproxValue::new(value, err + rounding));
        }
        heap.push(gk15(f, worst.a, mid)?);
        heap.push(gk15(f, mid, worst.b)?);
        count += 1;
    }
}

/// Integral over `[a, oo)` through `x = a + t / (1 - t)`.
pub fn integrate_to_infinity(
    f: &mut dyn FnMut(f64) -> Result<Complex64>,
    a: f64,
    cfg: &QuadConfig,
) -> Result<ApproxValue> {
    let mut g = |t: f64| -> Result<Complex64> {
        let s = 1.0 - t;
        let x = a + t / s;
        if !x.is_finite() {
            return Ok(Complex64::zero());
        }
        Ok(f(x)? / (s * s))
    };
    integrate(&mut g, 0.0, 1.0, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn polynomials_are_exact() {
        let mut f = |x: f64| Ok(c(x.powi(8) - 3.0 * x));
        let v = integrate(&mut f, 0.0, 2.0, &QuadConfig::default()).unwrap();
        assert!((v.value.re - (512.0 / 9.0 - 6.0)).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_complex_integrand() {
        let k = 200.0;
        let mut f = |x: f64| Ok(Complex64::new(0.0, k * x).exp());
        let v = integrate(&mut f, 0.0, 1.0, &QuadConfig::default()).unwrap();
        let exact = (Complex64::new(0.0, k).exp() - 1.0) / Complex64::new(0.0, k);
        assert!((v.value - exact).norm() < 1e-12);
        assert!(v.contains(exact, 1e-15));
    }

    #[test]
    fn endpoint_singularity_integrable() {
        let mut f = |x: f64| Ok(c(x.ln()));
        let v = integrate(&mut f, 0.0, 1.0, &QuadConfig::with_tol(1e-10)).unwrap();
        assert!((v.value.re + 1.0).abs() < 1e-9);
    }

    #[test]
    fn semi_infinite() {
        let mut f = |x: f64| Ok(c(1.0 / (1.0 + x * x)));
        let v = integrate_to_infinity(&mut f, 0.0, &QuadConfig::default()).unwrap();
        assert!((v.value.re - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_finite_values_are_reported() {
        let mut f = |x: f64| Ok(c(1.0 / (x - 0.5)));
        assert!(matches!(
            integrate(&mut f, 0.0, 1.0, &QuadConfig::default()),
            Err(Error::EndpointSingularity(_)) | Err(Error::Unconverged { .. })
        ));
        let mut g = |_: f64| Ok(c(f64::NAN));
        assert!(matches!(
            integrate(&mut g, 0.0, 1.0, &QuadConfig::default()),
            Err(Error::EndpointSingularity(_))
        ));
    }

    #[test]
    fn budget_exhaustion() {
        let mut f = |x: f64| Ok(c((1.0 / x).sin() / x));
        let cfg = QuadConfig {
            max_intervals: 10,
            ..QuadConfig::default()
        };
        assert!(matches!(
            integrate(&mut f, 1e-6, 1.0, &cfg),
            Err(Error::Unconverged { .. })
        ));
    }
}
