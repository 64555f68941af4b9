//! Mellin transforms on `(0, 1)` and the identities obtained by transforming
//! the Euler and Landen connection formulas: the (heart) binomial identity,
//! the sum formula `S(n, r) = zeta(n)` and the Landen lemma.
//!
//! Every check returns a [`Comparison`] whose two sides come from unrelated
//! code paths (quadrature against series, nested sums against the polylog
//! engine, elementary symmetric sums against the convolution MZV evaluator).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::mzv::{MzvEvaluator, ReflectedPolylog};
use crate::polylog::{ApproxValue, Comparison, EvalConfig, PolylogEvaluator};
use crate::quad::{integrate, QuadConfig};
use crate::special::{binomial, binomial_u128, zeta_tail};
use crate::words::{Letter, MultiIndex, Word};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

fn quad_config(cfg: &EvalConfig) -> QuadConfig {
    QuadConfig::with_tol((cfg.tol * 100.0).max(1e-12))
}

/// `int_0^1 f(z) z^(lambda - 1) dz`.
///
/// `f` receives both `z` and `1 - z` so that it can work near either endpoint
/// without cancellation. The interval is split at `1/2`; the lower half is
/// integrated in `z = t^2` and the upper half in `z = 1 - t^2`, which smooths
/// algebraic and logarithmic endpoint behaviour.
pub fn mellin_quadrature(
    f: &mut dyn FnMut(f64, f64) -> Result<Complex64>,
    lambda: Complex64,
    qcfg: &QuadConfig,
) -> Result<ApproxValue> {
    let lower = {
        let mut g = |t: f64| -> Result<Complex64> {
            let z = t * t;
            let weight = (lambda * 2.0 - 1.0) * t.ln();
            Ok(f(z, 1.0 - z)? * weight.exp() * 2.0)
        };
        integrate(&mut g, 0.0, FRAC_1_SQRT_2, qcfg)?
    };
    let upper = {
        let mut g = |t: f64| -> Result<Complex64> {
            let u = t * t;
            let z = 1.0 - u;
            let weight = (lambda - 1.0) * (-u).ln_1p();
            Ok(f(z, u)? * weight.exp() * (2.0 * t))
        };
        integrate(&mut g, 0.0, FRAC_1_SQRT_2, qcfg)?
    };
    Ok(lower + upper)
}

/// Mellin transform of `Li(w; z)` by quadrature. Near `z = 1` the polylog is
/// evaluated through the Euler connection formula.
pub fn mellin_word(w: Word, lambda: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    let mut worst = 0.0f64;
    let mut f = |z: f64, zc: f64| -> Result<Complex64> {
        let v = ReflectedPolylog::new(z, zc, *cfg)?.li_word(w)?;
        worst = worst.max(v.err);
        Ok(v.value)
    };
    let q = mellin_quadrature(&mut f, lambda, &quad_config(cfg))?;
    Ok(ApproxValue::new(q.value, q.err + worst))
}

fn is_positive_integer(l: Complex64) -> bool {
    l.im == 0.0 && l.re >= 1.0 && l.re == l.re.round()
}

/// `sum_{n >= 1} n^-a (n - lambda)^-b`.
///
/// The first `N` terms are added directly; the rest is expanded as
/// `sum_p C(b + p - 1, p) lambda^p zeta(a + b + p, N + 1)` with Hurwitz tails
/// from Euler-Maclaurin.
pub fn rational_series(a: u32, b: u32, lambda: Complex64) -> Result<ApproxValue> {
    if a + b < 2 {
        return Err(Error::Domain(format!("sum n^-{a} (n - lambda)^-{b} diverges")));
    }
    if b > 0 && is_positive_integer(lambda) {
        return Err(Error::PoleAtInteger(lambda.re));
    }
    let cutoff = 64 + (4.0 * lambda.norm()).ceil() as usize;
    let mut head = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for n in 1..=cutoff {
        let nf = n as f64;
        let t = (Complex64::new(nf, 0.0) - lambda).powi(-(b as i32)) * nf.powi(-(a as i32));
        head += t;
        mag += t.norm();
    }
    let q = (cutoff + 1) as f64;
    let mut tail = Complex64::new(0.0, 0.0);
    let mut err = 8.0 * EPS * mag;
    let mut lp = Complex64::new(1.0, 0.0);
    let mut p = 0u64;
    loop {
        let s = (a + b) as f64 + p as f64;
        let (z, ze) = zeta_tail(Complex64::new(s, 0.0), q)?;
        let c = binomial(b as u64 + p - 1, p) * lp.norm();
        let term = lp * z * binomial(b as u64 + p - 1, p);
        tail += term;
        err += c * ze;
        if b == 0 {
            break;
        }
        let bound = term.norm();
        if bound <= 1e-18 * (head + tail).norm() || bound == 0.0 {
            err += 2.0 * bound;
            break;
        }
        p += 1;
        if p > 400 {
            return Err(Error::Unconverged { terms: p as usize, tail: bound });
        }
        lp *= lambda;
    }
    Ok(ApproxValue::new(head + tail, err))
}

/// `M[Li_k](lambda)` in the series form `sum_n 1 / (n^k (n - lambda))`, i.e.
/// the transform with kernel `z^(-lambda - 1)`.
pub fn mellin_li_series(k: u32, lambda: Complex64) -> Result<ApproxValue> {
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} must be at least 2")));
    }
    rational_series(k, 1, lambda)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || lambda >= 1.0 {
        return Err(Error::Domain(format!("lambda = {lambda} must be below 1")));
    }
    if lambda == 0.0 {
        return Err(Error::Domain("lambda = 0 is a removable point; use a nonzero value".into()));
    }
    Ok(())
}

/// Transformed Euler connection formula:
///
/// ```text
/// sum_{j=0}^{k-1} sum_n 1 / (n^(k-j) (n - lambda)^(j+1))
///     = (1 / -lambda) sum_n (n^-k - (n - lambda)^-k).
/// ```
pub fn check_euler_mellin(k: u32, lambda: f64) -> Result<Comparison> {
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} must be at least 2")));
    }
    check_lambda(lambda)?;
    let l = Complex64::new(lambda, 0.0);
    let mut lhs = ApproxValue::zero();
    for j in 0..k {
        lhs = lhs + rational_series(k - j, j + 1, l)?;
    }
    let (zk, zerr) = zeta_tail(Complex64::new(k as f64, 0.0), 1.0)?;
    let shifted = rational_series(0, k, l)?;
    let rhs = (ApproxValue::new(zk, zerr) - shifted).scale(-1.0 / lambda);
    Ok(Comparison::new(lhs, rhs))
}

fn beta_word(k: u32) -> Word {
    Word::power(Letter::X, 1).concat(Word::power(Letter::Y, k as usize - 1))
}

/// Beta-integral step for the index `(2, 1, ..., 1)` of weight `k`:
///
/// ```text
/// int_0^1 Li_{2,1..1}(1 - z) z^(-lambda-1) dz
///     = sum_{n1 > ... > n_{k-1}} Gamma(-lambda) Gamma(n1 + 1)
///       / (n1^2 n2 ... n_{k-1} Gamma(n1 + 1 - lambda)).
/// ```
///
/// The left side is integrated numerically; the right side is summed with
/// the Gamma ratio built as a running product.
pub fn check_beta_term(k: u32, lambda: f64, cfg: &EvalConfig) -> Result<Comparison> {
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} must be at least 2")));
    }
    if !(lambda < 0.0) {
        return Err(Error::Domain(format!("lambda = {lambda} must be negative")));
    }
    let w = beta_word(k);
    let mut worst = 0.0f64;
    let mut f = |z: f64, zc: f64| -> Result<Complex64> {
        let v = ReflectedPolylog::new(zc, z, *cfg)?.li_word(w)?;
        worst = worst.max(v.err);
        Ok(v.value)
    };
    let q = mellin_quadrature(&mut f, Complex64::new(-lambda, 0.0), &quad_config(cfg))?;
    let lhs = ApproxValue::new(q.value, q.err + worst);
    Ok(Comparison::new(lhs, beta_series(k, lambda)?))
}

/// Right side of [`check_beta_term`].
pub fn beta_series(k: u32, lambda: f64) -> Result<ApproxValue> {
    const N: usize = 200_000;
    let r = (k - 2) as usize;
    // e[i] = e_i(1, 1/2, ..., 1/(n-1))
    let mut e = vec![0.0f64; r + 1];
    e[0] = 1.0;
    let mut ratio = 1.0 / -lambda;
    let mut sum = 0.0f64;
    for n in 1..=N {
        let nf = n as f64;
        ratio *= nf / (nf - lambda);
        sum += ratio * e[r] / (nf * nf);
        for i in (1..=r).rev() {
            e[i] += e[i - 1] / nf;
        }
    }
    // ratio ~ R(N) (n / N)^lambda and e_r ~ const beyond the cutoff
    let nf = N as f64;
    let tail = ratio * nf.powf(-lambda) * e[r] * (nf + 0.5).powf(lambda - 1.0) / (1.0 - lambda);
    let tail_err = tail.abs() * (r as f64 / ((1.0 - lambda) * nf.ln()) + 10.0 / nf);
    Ok(ApproxValue::real(sum + tail, tail_err + nf * EPS * sum.abs()))
}

/// `sum_{d=k-1}^{n-1} C(d-1, k-2) S(n, d) = C(n-1, k-1) zeta(n)` for
/// `2 <= k <= n`.
pub fn check_heart(n: usize, k: usize, cfg: &EvalConfig) -> Result<Comparison> {
    if !(2 <= k && k <= n && n <= 20) {
        return Err(Error::Domain(format!("need 2 <= k <= n <= 20, got n = {n}, k = {k}")));
    }
    let mzv = MzvEvaluator::shared(*cfg);
    let mut lhs = ApproxValue::zero();
    for d in (k - 1)..n {
        let c = binomial_u128(d as u64 - 1, k as u64 - 2) as f64;
        lhs = lhs + mzv.sum_weight_depth(n, d)?.scale(c);
    }
    let c = binomial_u128(n as u64 - 1, k as u64 - 1) as f64;
    let rhs = mzv.riemann(n as u32)?.scale(c);
    Ok(Comparison::new(lhs, rhs))
}

/// `S(n, r)` against `zeta(n)` for every depth `1 <= r <= n - 1`.
pub fn check_sum_formula(n: usize, cfg: &EvalConfig) -> Result<Vec<(usize, Comparison)>> {
    if !(2..=20).contains(&n) {
        return Err(Error::Domain(format!("weight n = {n} must lie in [2, 20]")));
    }
    let mzv = MzvEvaluator::shared(*cfg);
    let zeta = mzv.riemann(n as u32)?;
    (1..n)
        .map(|r| Ok((r, Comparison::new(mzv.sum_weight_depth(n, r)?, zeta))))
        .collect()
}

/// Running elementary symmetric sums `e_i(1, ..., 1/(a-1))` and complete
/// homogeneous sums `h_i(1, ..., 1/a)` as `a` increases.
struct HarmonicSymmetric {
    a: usize,
    e: Vec<f64>,
    h: Vec<f64>,
}

impl HarmonicSymmetric {
    fn new(order: usize) -> Self {
        let mut e = vec![0.0; order + 1];
        let mut h = vec![0.0; order + 1];
        e[0] = 1.0;
        h[0] = 1.0;
        HarmonicSymmetric { a: 0, e, h }
    }

    /// Moves to the next `a`; afterwards `e` covers `1..1/(a-1)` and `h`
    /// covers `1..1/a`.
    fn advance(&mut self) {
        if self.a > 0 {
            let x = 1.0 / self.a as f64;
            for i in (1..self.e.len()).rev() {
                self.e[i] += x * self.e[i - 1];
            }
        }
        self.a += 1;
        let x = 1.0 / self.a as f64;
        for i in 1..self.h.len() {
            self.h[i] += x * self.h[i - 1];
        }
    }

    /// Weight of `n_j = a` in the nested sum
    /// `sum 1 / (n1 prod_{i != j} (n_i - n_j))` over `n1 > ... > nm`.
    fn coefficient(&self, m: usize, j: usize) -> f64 {
        let sign = if (m - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * self.e[m - j] * self.h[j - 1] / self.a as f64
    }
}

/// Left side of the Landen lemma,
///
/// ```text
/// sum_{n1 > ... > nm > 0} z^{n_j} / (n1 prod_{i != j} (n_i - n_j)).
/// ```
///
/// Fixing `a = n_j`, the indices below `j` contribute
/// `(-1)^(m-j) e_{m-j}(1, ..., 1/(a-1))` and those above contribute
/// `h_{j-1}(1, ..., 1/a) / a`, leaving a single sum over `a`. Each summand is
/// bounded by `|z|^a (1 + ln a)^(m-1) / a`, which gives the tail bound.
pub fn landen_lemma_lhs(m: usize, j: usize, z: f64, cfg: &EvalConfig) -> Result<ApproxValue> {
    if !(1 <= j && j <= m) {
        return Err(Error::Domain(format!("need 1 <= j <= m, got m = {m}, j = {j}")));
    }
    let r = z.abs();
    if !(r < 1.0) {
        return Err(Error::Domain(format!("|z| = {r} must be below 1")));
    }
    let mut state = HarmonicSymmetric::new(m);
    let mut sum = 0.0f64;
    let mut zpow = 1.0f64;
    let g = |a: f64| (1.0 + a.ln()).powi(m as i32 - 1);
    for a in 1..=cfg.max_terms {
        state.advance();
        zpow *= z;
        sum += zpow * state.coefficient(m, j);
        let af = a as f64;
        let q = r * g(af + 2.0) / g(af + 1.0);
        if q < 1.0 {
            let bound = r.powi(a as i32 + 1) * g(af + 1.0) / (af + 1.0) / (1.0 - q);
            if bound <= cfg.tol * sum.abs().max(1e-300) || bound < 1e-300 {
                return Ok(ApproxValue::real(sum, bound + 4.0 * af * EPS * sum.abs()));
            }
        }
    }
    Err(Error::Unconverged {
        terms: cfg.max_terms,
        tail: r.powi(cfg.max_terms as i32),
    })
}

/// Landen lemma: the nested sum equals
/// `-sum_c Li_c(z / (z - 1))` over compositions `c` of `m` into `m - j + 1`
/// parts.
pub fn check_landen_lemma(m: usize, j: usize, z: f64, cfg: &EvalConfig) -> Result<Comparison> {
    if !(1 <= j && j <= m && m <= 12) {
        return Err(Error::Domain(format!("need 1 <= j <= m <= 12, got m = {m}, j = {j}")));
    }
    if !(z > 0.0 && z <= 0.5) {
        return Err(Error::Domain(format!("z = {z} must lie in (0, 1/2]")));
    }
    let lhs = landen_lemma_lhs(m, j, z, cfg)?;
    let ev = PolylogEvaluator::new(Complex64::new(z / (z - 1.0), 0.0), *cfg)?;
    let mut rhs = ApproxValue::zero();
    for c in MultiIndex::compositions(m, m - j + 1) {
        rhs = rhs - ev.li_word(c.to_word())?;
    }
    Ok(Comparison::new(lhs, rhs))
}

/// One Taylor coefficient in `lambda` of the transformed Landen formula.
#[derive(Clone, Copy, Debug)]
pub struct TaylorCoefficient {
    pub order: usize,
    /// `sum_a C_a a^-(order+1)` from the nested side.
    pub series: ApproxValue,
    /// `zeta(m + 1 + order)`, the coefficient of the left side.
    pub zeta: ApproxValue,
    /// `S(m + 1 + order, m)`.
    pub depth_sum: ApproxValue,
}

#[derive(Clone, Debug)]
pub struct MellinLanden {
    pub comparison: Comparison,
    pub taylor: Vec<TaylorCoefficient>,
}

/// Transformed Landen formula,
///
/// ```text
/// sum_n 1 / (n^m (n - lambda))
///     = sum_j sum_{n1 > ... > nm} 1 / (n1 prod_{i != j} (n_i - n_j) (n_j - lambda)),
/// ```
///
/// with the right side collapsed to `sum_a C_a / (a - lambda)`, plus the
/// Taylor coefficients at orders 0..=2 compared with `zeta(m + 1 + l)` and
/// `S(m + 1 + l, m)`.
pub fn check_mellin_landen(m: usize, lambda: f64, cfg: &EvalConfig) -> Result<MellinLanden> {
    const A: usize = 20_000;
    const ORDERS: usize = 3;
    if !(1..=10).contains(&m) {
        return Err(Error::Domain(format!("m = {m} must lie in [1, 10]")));
    }
    if !(lambda.abs() < 1.0) {
        return Err(Error::Domain(format!("|lambda| = {} must be below 1", lambda.abs())));
    }
    let lhs = rational_series(m as u32, 1, Complex64::new(lambda, 0.0))?;
    let mut state = HarmonicSymmetric::new(m);
    let mut rhs = 0.0f64;
    let mut taylor = [0.0f64; ORDERS];
    let mut mag = 0.0f64;
    let mut last = [0.0f64; ORDERS + 1];
    for a in 1..=A {
        state.advance();
        let af = a as f64;
        let c: f64 = (1..=m).map(|j| state.coefficient(m, j)).sum();
        let t = c / (af - lambda);
        rhs += t;
        mag += (1..=m).map(|j| state.coefficient(m, j).abs()).sum::<f64>() / af;
        last[0] = t;
        let mut ap = af;
        for l in 0..ORDERS {
            taylor[l] += c / ap;
            last[l + 1] = c / ap;
            ap *= af;
        }
    }
    // summands decay like a^-(m+1+l); the tail is about last * A / (m + l)
    let tail = |t: f64, extra: usize| 2.0 * t.abs() * A as f64 / (m + extra) as f64;
    let rounding = 8.0 * EPS * mag;
    let rhs = ApproxValue::real(rhs, tail(last[0], 0) + rounding);
    let mzv = MzvEvaluator::shared(*cfg);
    let mut coefficients = Vec::with_capacity(ORDERS);
    for l in 0..ORDERS {
        let n = m + 1 + l;
        coefficients.push(TaylorCoefficient {
            order: l,
            series: ApproxValue::real(taylor[l], tail(last[l + 1], l) + rounding),
            zeta: mzv.riemann(n as u32)?,
            depth_sum: mzv.sum_weight_depth(n, m)?,
        });
    }
    Ok(MellinLanden {
        comparison: Comparison::new(lhs, rhs),
        taylor: coefficients,
    })
}
