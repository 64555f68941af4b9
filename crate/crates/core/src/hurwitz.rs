//! Hurwitz zeta, the generalized polylogarithm `L(s, z)`, Kummer's confluent
//! hypergeometric functions and the relations between them.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::polylog::{ApproxValue, Comparison, EvalConfig};
use crate::quad::{integrate, integrate_to_infinity, QuadConfig};
use crate::special::{binomial_u128, gamma, zeta_tail};
use crate::words::Coeff;
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;
const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn quad_config(cfg: &EvalConfig) -> QuadConfig {
    QuadConfig::with_tol((cfg.tol * 10.0).max(1e-13))
}

/// Bernoulli polynomials `B_0, ..., B_max` with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct BernoulliTable {
    /// `polys[n][k]` is the coefficient of `t^k` in `B_n(t)`.
    polys: Vec<Vec<Coeff>>,
}

impl BernoulliTable {
    pub const DEFAULT_MAX: usize = 8;

    pub fn new(max: usize) -> Self {
        // Bernoulli numbers with B_1 = -1/2
        let mut b: Vec<Coeff> = Vec::with_capacity(max + 1);
        b.push(Coeff::one());
        for n in 1..=max {
            let mut s = Coeff::zero();
            for (k, bk) in b.iter().enumerate() {
                s += *bk * binomial_u128(n as u64 + 1, k as u64) as i128;
            }
            b.push(-s / (n as i128 + 1));
        }
        let polys = (0..=max)
            .map(|n| {
                // B_n(t) = sum_k C(n, k) B_k t^(n-k)
                let mut p = vec![Coeff::zero(); n + 1];
                for (k, bk) in b.iter().enumerate().take(n + 1) {
                    p[n - k] = *bk * binomial_u128(n as u64, k as u64) as i128;
                }
                p
            })
            .collect();
        BernoulliTable { polys }
    }

    pub fn max(&self) -> usize {
        self.polys.len() - 1
    }

    /// Coefficients of `B_n(t)`, constant term first.
    pub fn poly(&self, n: usize) -> &[Coeff] {
        &self.polys[n]
    }

    /// Bernoulli number `B_n = B_n(0)`.
    pub fn number(&self, n: usize) -> Coeff {
        self.polys[n][0]
    }

    pub fn eval(&self, n: usize, t: f64) -> f64 {
        self.polys[n]
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().expect("small rational"))
    }

    /// Periodic extension `B_n(t - floor(t))`.
    pub fn periodic(&self, n: usize, t: f64) -> f64 {
        self.eval(n, t - t.floor())
    }
}

impl Default for BernoulliTable {
    fn default() -> Self {
        BernoulliTable::new(Self::DEFAULT_MAX)
    }
}

/// Partial Fourier sum `(1/pi^2) sum_{n=1}^{terms} cos(2 pi n t) / n^2` of the
/// periodic `B_2`.
pub fn b2_fourier(t: f64, terms: usize) -> f64 {
    let s: f64 = (1..=terms)
        .rev()
        .map(|n| {
            let nf = n as f64;
            (2.0 * PI * nf * t).cos() / (nf * nf)
        })
        .sum();
    s / (PI * PI)
}

/// `(s)_p`.
fn pochhammer(s: Complex64, p: usize) -> Complex64 {
    (0..p).fold(c(1.0), |acc, i| acc * (s + i as f64))
}

/// Hurwitz zeta by Euler-Maclaurin of order two:
///
/// ```text
/// zeta(s, z) = z^(1-s)/(s-1) + z^-s/2 + s z^(-s-1)/12
///            - int_0^oo B2(t - [t])/2 (d/dt)^2 (z + t)^-s dt,
/// ```
///
/// valid for `Re s > -2`. The integral is done interval by interval up to
/// `t = K`; past `K` it is replaced by its own Euler-Maclaurin expansion
/// `b4 f'''(K) + b6 f^(5)(K) + b8 f^(7)(K)` with `b_n = B_n / n!`.
pub fn hurwitz_zeta(s: Complex64, z: f64, cfg: &EvalConfig) -> Result<ApproxValue> {
    if s == c(1.0) {
        return Err(Error::PoleAtOne);
    }
    if s.re <= -2.0 {
        return Err(Error::StripExceeded(s.re));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("z = {z} must be positive")));
    }
    const K: usize = 64;
    let table = BernoulliTable::default();
    let zc = c(z);
    let mut value = zc.powc(1.0 - s) / (s - 1.0) + zc.powc(-s) * 0.5 + s * zc.powc(-s - 1.0) / 12.0;
    let mut err = 0.0;
    let qcfg = quad_config(cfg);
    let f2 = s * (s + 1.0);
    let mut integral = ApproxValue::zero();
    for k in 0..K {
        let mut g = |t: f64| -> Result<Complex64> {
            Ok(f2 * (zc + t).powc(-s - 2.0) * (table.eval(2, t - k as f64) * 0.5))
        };
        integral = integral + integrate(&mut g, k as f64, (k + 1) as f64, &qcfg)?;
    }
    let at = zc + K as f64;
    let deriv = |p: usize| -> Complex64 {
        let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
        pochhammer(s, p) * at.powc(-s - p as f64) * sign
    };
    let factorial = |n: usize| (1..=n).fold(1.0, |a, i| a * i as f64);
    let b = |n: usize| table.number(n).to_f64().expect("small rational") / factorial(n);
    let tail = deriv(3) * b(4) + deriv(5) * b(6) + deriv(7) * b(8);
    // next term b10 f^(9)(K), with B_10 = 5/66
    let next = (deriv(9) * (5.0 / 66.0 / factorial(10))).norm();
    integral = integral + ApproxValue::new(tail, next);
    value -= integral.value;
    err += integral.err + 8.0 * EPS * value.norm();
    Ok(ApproxValue::new(value, err))
}

/// `sum_{k=0}^{N-1} (k + z)^-s` plus the first Euler-Maclaurin corrections
/// at `N`; an oracle for `Re s > 1`.
pub fn hurwitz_zeta_direct(s: Complex64, z: f64, terms: usize) -> Result<ApproxValue> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("direct series needs Re s > 1, got {s}")));
    }
    let mut sum = c(0.0);
    for k in (0..terms).rev() {
        sum += c(k as f64 + z).powc(-s);
    }
    let a = c(terms as f64 + z);
    sum += a.powc(1.0 - s) / (s - 1.0) + a.powc(-s) * 0.5 + s * a.powc(-s - 1.0) / 12.0;
    let next = (pochhammer(s, 3) * a.powc(-s - 3.0)).norm() / 720.0;
    Ok(ApproxValue::new(sum, next + terms as f64 * EPS * sum.norm()))
}

/// Coefficients of `1 / (1 - w e^u) = sum_k c_k u^k`.
fn geometric_exp_coefficients(w: Complex64, n: usize) -> Vec<Complex64> {
    let inv = 1.0 / (1.0 - w);
    let mut cs = vec![inv];
    let mut fact = vec![1.0f64];
    for k in 1..=n {
        fact.push(fact[k - 1] * k as f64);
        let s: Complex64 = (1..=k).map(|j| cs[k - j] / fact[j]).sum();
        cs.push(w * s * inv);
    }
    cs
}

/// `L(s, z) = sum_{n >= 1} e^(2 pi i n z) / n^s` for `Re s > 1`.
///
/// The first `M - 1` terms are summed directly. The rest is
/// `w^M sum_k c_k g^(k)(M)` with `g(n) = n^-s` and `c_k` the Taylor
/// coefficients of `1 / (1 - w e^u)`. That series is asymptotic, with terms
/// shrinking roughly like `k! / (2 pi M dist(z, Z))^k`; `M` is chosen so
/// that they keep shrinking well beyond the order used, and the last two
/// terms give the error estimate.
pub fn lerch_l(s: Complex64, z: f64, cfg: &EvalConfig) -> Result<ApproxValue> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("L(s, z) needs Re s > 1, got {s}")));
    }
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::Domain(format!("z = {z} must lie in (0, 1]")));
    }
    if z == 1.0 {
        let (v, e) = zeta_tail(s, 1.0)?;
        return Ok(ApproxValue::new(v, e));
    }
    let dist = z.min(1.0 - z);
    let m = (40.0 / (2.0 * PI * dist)).ceil().max(64.0);
    if m > cfg.max_terms as f64 * 100.0 {
        return Err(Error::Unconverged { terms: m as usize, tail: dist });
    }
    let m = m as usize;
    let w = (I * (2.0 * PI * z)).exp();
    let mut head = c(0.0);
    let mut mag = 0.0;
    for n in (1..m).rev() {
        let t = (I * (2.0 * PI * z * n as f64)).exp() * c(n as f64).powc(-s);
        head += t;
        mag += t.norm();
    }
    // M * 2 pi dist >= 40 keeps the terms decreasing well past this order
    const ORDER: usize = 30;
    let cs = geometric_exp_coefficients(w, ORDER);
    let mf = m as f64;
    let base = c(mf).powc(-s);
    let mut tail = c(0.0);
    let mut poch = c(1.0);
    let mut prev = f64::INFINITY;
    let mut bound = f64::INFINITY;
    for (k, ck) in cs.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let t = ck * poch * base * (sign * mf.powi(-(k as i32)));
        let size = t.norm();
        tail += t;
        // some coefficients vanish (w = -1), so two small terms in a row
        bound = size + prev;
        if bound <= EPS * 1e-3 * (head.norm() + tail.norm()) {
            break;
        }
        prev = size;
        poch *= s + k as f64;
    }
    let phase = (I * (2.0 * PI * z * mf)).exp();
    let value = head + phase * tail;
    Ok(ApproxValue::new(value, bound + 8.0 * EPS * (mag + tail.norm())))
}

fn check_not_gamma_pole(g: Complex64, name: &str) -> Result<()> {
    if g.im == 0.0 && g.re <= 0.0 && g.re == g.re.round() {
        return Err(Error::GammaPole(g.re));
    }
    if !(g.re.is_finite() && g.im.is_finite()) {
        return Err(Error::Domain(format!("{name} = {g} is not finite")));
    }
    Ok(())
}

fn kummer_f_series(alpha: Complex64, gamma_: Complex64, x: Complex64, cfg: &EvalConfig) -> ApproxValue {
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut mag = 1.0f64;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        term *= (alpha + nf) * x / ((gamma_ + nf) * (nf + 1.0));
        n += 1;
        if !(term.re.is_finite() && term.im.is_finite()) || n > cfg.max_terms {
            return ApproxValue::new(sum, f64::INFINITY);
        }
        sum += term;
        mag = mag.max(term.norm());
        if term == c(0.0) {
            return ApproxValue::new(sum, 4.0 * EPS * mag * n as f64);
        }
        // from here on consecutive ratios stay below q
        let q = ((alpha + n as f64) * x / ((gamma_ + n as f64) * (n as f64 + 1.0))).norm();
        let decreasing = (n as f64) > x.norm() && (n as f64) > alpha.norm() && (n as f64) > gamma_.norm();
        if q < 0.5 && decreasing {
            let tail = term.norm() * q / (1.0 - q);
            if tail <= EPS * sum.norm() {
                return ApproxValue::new(sum, tail + 4.0 * EPS * mag * (n as f64).sqrt());
            }
        }
    }
}

/// `F(a, g; x)` from the Euler integral
/// `Gamma(g) / (Gamma(a) Gamma(g - a)) int_0^1 e^(x t) t^(a-1) (1-t)^(g-a-1) dt`,
/// split at `1/2` with `t = u^2` and `t = 1 - u^2` on the two halves.
fn kummer_f_integral(alpha: Complex64, gamma_: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    let pref = gamma(gamma_)? / (gamma(alpha)? * gamma(gamma_ - alpha)?);
    let qcfg = QuadConfig {
        max_intervals: 20_000,
        ..quad_config(cfg)
    };
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut lower = |u: f64| -> Result<Complex64> {
        let t = u * u;
        let w = (alpha * 2.0 - 1.0) * u.ln() + (gamma_ - alpha - 1.0) * (-t).ln_1p() + x * t;
        Ok(w.exp() * 2.0)
    };
    let mut upper = |u: f64| -> Result<Complex64> {
        let t = 1.0 - u * u;
        let w = (alpha - 1.0) * (-u * u).ln_1p() + (gamma_ - alpha - 1.0) * 2.0 * u.ln() + x * t;
        Ok(w.exp() * (2.0 * u))
    };
    let v = integrate(&mut lower, 0.0, r, &qcfg)? + integrate(&mut upper, 0.0, r, &qcfg)?;
    Ok(v.scale_complex(pref))
}

/// Confluent hypergeometric series `F(a, g; x) = sum (a)_n x^n / ((g)_n n!)`.
///
/// When cancellation makes the series inaccurate (large `|x|` away from the
/// positive axis) and `Re g > Re a > 0`, the Euler integral is used instead.
pub fn kummer_f(alpha: Complex64, gamma_: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    check_not_gamma_pole(gamma_, "gamma")?;
    let series = kummer_f_series(alpha, gamma_, x, cfg);
    let good = series.err <= cfg.tol.max(1e-12) * series.value.norm().max(1.0);
    if good {
        return Ok(series);
    }
    if gamma_.re > alpha.re && alpha.re > 0.0 {
        let integral = kummer_f_integral(alpha, gamma_, x, cfg)?;
        if integral.err < series.err {
            return Ok(integral);
        }
    }
    if series.err.is_finite() {
        Ok(series)
    } else {
        Err(Error::Unconverged {
            terms: cfg.max_terms,
            tail: series.err,
        })
    }
}

/// `U(a, g; x) = (1/Gamma(a)) int_0^oo e^(-x u) (1 + u)^(g-a-1) u^(a-1) du`
/// for `Re a > 0`, `Re x > 0`.
pub fn kummer_u(alpha: Complex64, gamma_: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    if !(alpha.re > 0.0) {
        return Err(Error::Domain(format!("U integral needs Re alpha > 0, got {alpha}")));
    }
    if !(x.re > 0.0) {
        return Err(Error::Domain(format!("U integral needs Re x > 0, got {x}")));
    }
    let qcfg = quad_config(cfg);
    // [0, 1] in u = v^2
    let mut near = |v: f64| -> Result<Complex64> {
        let u = v * v;
        let w = (alpha * 2.0 - 1.0) * v.ln() + (gamma_ - alpha - 1.0) * u.ln_1p() - x * u;
        Ok(w.exp() * 2.0)
    };
    let mut far = |u: f64| -> Result<Complex64> {
        let w = (alpha - 1.0) * u.ln() + (gamma_ - alpha - 1.0) * u.ln_1p() - x * u;
        Ok(w.exp())
    };
    let v = integrate(&mut near, 0.0, 1.0, &qcfg)? + integrate_to_infinity(&mut far, 1.0, &qcfg)?;
    Ok(v.scale_complex(1.0 / gamma(alpha)?))
}

/// Both readings of the connection formula for `U`.
#[derive(Clone, Copy, Debug)]
pub struct KummerConnection {
    /// `Gamma(1 - g) / Gamma(1 + a - g)` in the first coefficient.
    pub classical: Comparison,
    /// `Gamma(1 - g) / Gamma(1 + a)` in the first coefficient.
    pub printed: Comparison,
}

/// `U(a, g; x)` by its integral against
/// `Gamma(1-g)/Gamma(1+a-g) F(a, g; x) + Gamma(g-1)/Gamma(a) e^x x^(1-g) F(1-a, 2-g; -x)`
/// and against the same with `Gamma(1+a)` in the first denominator.
pub fn check_kummer_connection(
    alpha: Complex64,
    gamma_: Complex64,
    x: Complex64,
    cfg: &EvalConfig,
) -> Result<KummerConnection> {
    if gamma_.im == 0.0 && gamma_.re == gamma_.re.round() {
        return Err(Error::Domain(format!("gamma = {gamma_} must not be an integer")));
    }
    let u = kummer_u(alpha, gamma_, x, cfg)?;
    let f1 = kummer_f(alpha, gamma_, x, cfg)?;
    let f2 = kummer_f(1.0 - alpha, 2.0 - gamma_, -x, cfg)?;
    let second = f2.scale_complex(gamma(gamma_ - 1.0)? / gamma(alpha)? * x.exp() * x.powc(1.0 - gamma_));
    let g1 = gamma(1.0 - gamma_)?;
    let classical = f1.scale_complex(g1 / gamma(1.0 + alpha - gamma_)?) + second;
    let printed = f1.scale_complex(g1 / gamma(1.0 + alpha)?) + second;
    Ok(KummerConnection {
        classical: Comparison::new(u, classical),
        printed: Comparison::new(u, printed),
    })
}

fn check_strip(s: Complex64) -> Result<()> {
    if !(s.re < 0.0) {
        return Err(Error::Domain(format!("Re s = {} must be negative", s.re)));
    }
    if s.re <= -2.0 {
        return Err(Error::StripExceeded(s.re));
    }
    Ok(())
}

/// `zeta(s, z) = Gamma(1-s) [ (2 pi i)^(s-1) L(1-s, z) + (-2 pi i)^(s-1) L(1-s, 1-z) ]`
/// for `-2 < Re s < 0`, principal branches.
pub fn check_hurwitz_relation(s: Complex64, z: f64, cfg: &EvalConfig) -> Result<Comparison> {
    check_strip(s)?;
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("z = {z} must lie in (0, 1)")));
    }
    let lhs = hurwitz_zeta(s, z, cfg)?;
    let l1 = lerch_l(1.0 - s, z, cfg)?;
    let l2 = if z == 0.5 { l1 } else { lerch_l(1.0 - s, 1.0 - z, cfg)? };
    let ln2pi = (2.0 * PI).ln();
    let plus = ((s - 1.0) * (c(ln2pi) + I * (PI / 2.0))).exp();
    let minus = ((s - 1.0) * (c(ln2pi) - I * (PI / 2.0))).exp();
    let g = gamma(1.0 - s)?;
    let rhs = l1.scale_complex(g * plus) + l2.scale_complex(g * minus);
    Ok(Comparison::new(lhs, rhs))
}

/// `U(1, 1 - s; x) = (F(1, 1 - s; x) - Gamma(1 - s) x^s e^x) / s`, the
/// connection formula specialised to `a = 1`; usable on the imaginary axis.
pub fn kummer_u_one(s: Complex64, x: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    let f = kummer_f(c(1.0), 1.0 - s, x, cfg)?;
    let g = gamma(1.0 - s)?;
    let second = g * x.powc(s) * x.exp();
    Ok((f - ApproxValue::exact(second)).scale_complex(1.0 / s))
}

#[derive(Clone, Copy, Debug)]
pub struct Em2Check {
    pub terms: usize,
    /// `zeta(s, z)` against the sum truncated at `|l| <= terms`.
    pub raw: Comparison,
    /// Same, with the `|l| > terms` part estimated from `U(1, 1-s; x) ~ 1/x`.
    pub corrected: Comparison,
}

/// Euler-Maclaurin with the remainder expanded in `U`,
///
/// ```text
/// zeta(s, z) = z^(1-s)/(s-1) + z^-s/2
///            + (s z^-s / 2 pi i) sum_{l != 0} (1/l) U(1, 1-s; -2 pi i l z),
/// ```
///
/// for `-2 < Re s < 0`.
pub fn check_em2(s: Complex64, z: f64, terms: usize, cfg: &EvalConfig) -> Result<Em2Check> {
    check_strip(s)?;
    if !(z > 0.0 && z <= 1.0) {
        return Err(Error::Domain(format!("z = {z} must lie in (0, 1]")));
    }
    if terms == 0 {
        return Err(Error::InvalidConfig("need at least one term".into()));
    }
    let lhs = hurwitz_zeta(s, z, cfg)?;
    let zc = c(z);
    let mut sum = ApproxValue::zero();
    for l in 1..=terms {
        let lf = l as f64;
        let x = I * (-2.0 * PI * lf * z);
        let up = kummer_u_one(s, x, cfg)?;
        let down = kummer_u_one(s, -x, cfg)?;
        sum = sum + (up - down).scale(1.0 / lf);
    }
    let pref = s * zc.powc(-s) / (I * (2.0 * PI));
    let base = ApproxValue::exact(zc.powc(1.0 - s) / (s - 1.0) + zc.powc(-s) * 0.5);
    let raw = base + sum.scale_complex(pref);
    let (tail_sum, tail_err) = zeta_tail(c(2.0), terms as f64 + 1.0)?;
    let tail = pref * I / (PI * z) * tail_sum;
    let corrected = raw + ApproxValue::new(tail, tail_err * (pref / (PI * z)).norm());
    Ok(Em2Check {
        terms,
        raw: Comparison::new(lhs, raw),
        corrected: Comparison::new(lhs, corrected),
    })
}
