//! Multiple polylogarithms
//!
//! ```text
//! Li_{k1,...,km}(z) = sum_{n1 > ... > nm > 0} z^n1 / (n1^k1 ... nm^km)
//! ```
//!
//! evaluated by nested prefix sums, and extended to every word through the
//! decomposition into regularized cores with `Li(x; z) = log z` and
//! `Li(y; z) = -log(1 - z)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::RwLock;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::regularize::{reg_word, strip};
use crate::words::{Coeff, Letter, MultiIndex, NCPoly, Word};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// A complex value with a bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxValue {
    pub value: Complex64,
    pub err: f64,
}

impl ApproxValue {
    pub fn new(value: Complex64, err: f64) -> Self {
        ApproxValue { value, err }
    }

    pub fn exact(value: Complex64) -> Self {
        ApproxValue { value, err: 0.0 }
    }

    pub fn real(x: f64, err: f64) -> Self {
        ApproxValue::new(Complex64::new(x, 0.0), err)
    }

    pub fn zero() -> Self {
        ApproxValue::exact(Complex64::zero())
    }

    pub fn one() -> Self {
        ApproxValue::exact(Complex64::new(1.0, 0.0))
    }

    pub fn scale(self, c: f64) -> Self {
        ApproxValue::new(self.value * c, self.err * c.abs())
    }

    pub fn scale_complex(self, c: Complex64) -> Self {
        ApproxValue::new(self.value * c, self.err * c.norm())
    }

    /// Whether `target` lies within the error bound, after allowing `slack`.
    pub fn contains(&self, target: Complex64, slack: f64) -> bool {
        (self.value - target).norm() <= self.err + slack
    }
}

impl Add for ApproxValue {
    type Output = ApproxValue;
    fn add(self, rhs: ApproxValue) -> ApproxValue {
        let v = self.value + rhs.value;
        ApproxValue::new(v, self.err + rhs.err + EPS * v.norm())
    }
}

impl Sub for ApproxValue {
    type Output = ApproxValue;
    fn sub(self, rhs: ApproxValue) -> ApproxValue {
        self + (-rhs)
    }
}

impl Neg for ApproxValue {
    type Output = ApproxValue;
    fn neg(self) -> ApproxValue {
        ApproxValue::new(-self.value, self.err)
    }
}

impl Mul for ApproxValue {
    type Output = ApproxValue;
    fn mul(self, rhs: ApproxValue) -> ApproxValue {
        let v = self.value * rhs.value;
        let err = self.value.norm() * rhs.err + rhs.value.norm() * self.err + self.err * rhs.err;
        ApproxValue::new(v, err + 2.0 * EPS * v.norm())
    }
}

impl fmt::Display for ApproxValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.im == 0.0 {
            write!(f, "value={:.15e} err={:.3e}", self.value.re, self.err)
        } else {
            write!(
                f,
                "value={:.15e}{:+.15e}i err={:.3e}",
                self.value.re, self.value.im, self.err
            )
        }
    }
}

/// Two independently computed sides of an identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub lhs: ApproxValue,
    pub rhs: ApproxValue,
}

impl Comparison {
    pub fn new(lhs: ApproxValue, rhs: ApproxValue) -> Self {
        Comparison { lhs, rhs }
    }

    /// `|lhs - rhs|`.
    pub fn residual(&self) -> f64 {
        (self.lhs.value - self.rhs.value).norm()
    }

    /// Combined error estimate of both sides.
    pub fn err(&self) -> f64 {
        self.lhs.err + self.rhs.err
    }
}

/// Target accuracy and term budget for series evaluations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    pub tol: f64,
    pub max_terms: usize,
}

impl EvalConfig {
    pub const MIN_TOL: f64 = 1e-14;
    pub const MIN_TERMS: usize = 64;

    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol >= Self::MIN_TOL && tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol must be >= 1e-14, got {tol}")));
        }
        if max_terms < Self::MIN_TERMS {
            return Err(Error::InvalidConfig(format!(
                "max_terms must be >= 64, got {max_terms}"
            )));
        }
        Ok(EvalConfig { tol, max_terms })
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            tol: 1e-13,
            max_terms: 100_000,
        }
    }
}

fn coeff_f64(c: &Coeff) -> f64 {
    c.to_f64().expect("rational coefficient fits in f64")
}

/// Nested-sum series for an index in `h^1` (any `k1 >= 1`), `|z| < 1`.
pub fn li_index(k: &MultiIndex, z: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    let r = z.norm();
    if r >= 1.0 {
        return Err(Error::Domain(format!("|z| = {r} >= 1")));
    }
    let parts = k.parts();
    let m = parts.len();
    if r == 0.0 {
        return Ok(ApproxValue::zero());
    }
    let k1 = parts[0] as i32;
    // prefix[j] = sum_{n' < n} c^{(j)}_{n'}; prefix[m] is the empty product 1
    let mut prefix = vec![0.0f64; m + 1];
    prefix[m] = 1.0;
    let mut c = vec![0.0f64; m];
    let mut zn = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::zero();
    let mut abs_sum = 0.0;
    let g = |n: f64| (1.0 + n.ln()).powi(m as i32 - 1);
    for n in 1..=cfg.max_terms {
        let nf = n as f64;
        for j in 0..m {
            c[j] = prefix[j + 1] / nf.powi(parts[j] as i32);
        }
        for j in 0..m {
            prefix[j] += c[j];
        }
        zn *= z;
        let term = zn * c[0];
        sum += term;
        abs_sum += term.norm();
        // c^{(1)}_n <= (1 + ln n)^{m-1} / n^{k1}, and the ratio of successive
        // bounds times r is at most q < 1 from here on
        let n1 = nf + 1.0;
        let q = r * g(n1 + 1.0) / g(n1);
        if q < 1.0 {
            let tail = r.powf(n1) * g(n1) / n1.powi(k1) / (1.0 - q);
            let rounding = 4.0 * EPS * (abs_sum + nf * EPS * abs_sum);
            if tail + rounding <= cfg.tol || tail <= EPS * abs_sum * 1e-2 {
                return Ok(ApproxValue::new(sum, tail + rounding));
            }
        }
        if zn.norm() == 0.0 {
            return Ok(ApproxValue::new(sum, 4.0 * EPS * abs_sum));
        }
    }
    let n1 = cfg.max_terms as f64 + 1.0;
    Err(Error::Unconverged {
        terms: cfg.max_terms,
        tail: r.powf(n1) * g(n1) / n1.powi(k1),
    })
}

/// `Li_k(z)` for admissible `k`; the series also accepts `k1 = 1`.
pub fn li_admissible(k: &MultiIndex, z: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    li_index(k, z, cfg)
}

fn on_cut_one(z: Complex64) -> bool {
    z.im == 0.0 && z.re >= 1.0
}

fn on_cut_zero(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

/// `Li(y^j; z) = (-log(1 - z))^j / j!`, principal branch.
pub fn li_ones(j: usize, z: Complex64) -> Result<Complex64> {
    if j == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if on_cut_one(z) {
        return Err(Error::Domain(format!("z = {z} lies on the cut [1, oo)")));
    }
    let l = -(Complex64::new(1.0, 0.0) - z).ln();
    Ok(l.powi(j as i32) / factorial(j))
}

/// `Li(x^j; z) = (log z)^j / j!`, principal branch.
pub fn li_xs(j: usize, z: Complex64) -> Result<Complex64> {
    if j == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if on_cut_zero(z) {
        return Err(Error::Domain(format!("z = {z} lies on the cut (-oo, 0]")));
    }
    Ok(z.ln().powi(j as i32) / factorial(j))
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Caching evaluator of `Li(w; z)` at a fixed point `z`.
///
/// `log z` and `log(1 - z)` may be passed explicitly so that callers holding
/// `1 - z` exactly (for `z` close to 1) keep full relative precision.
pub struct PolylogEvaluator {
    z: Complex64,
    log_z: Option<Complex64>,
    log_1mz: Complex64,
    cfg: EvalConfig,
    cache: RwLock<HashMap<Word, ApproxValue>>,
}

impl PolylogEvaluator {
    pub fn new(z: Complex64, cfg: EvalConfig) -> Result<Self> {
        if z.norm() >= 1.0 {
            return Err(Error::Domain(format!("|z| = {} >= 1", z.norm())));
        }
        let log_z = (!on_cut_zero(z)).then(|| z.ln());
        let log_1mz = if z.im == 0.0 {
            Complex64::new((-z.re).ln_1p(), 0.0)
        } else {
            (Complex64::new(1.0, 0.0) - z).ln()
        };
        Ok(PolylogEvaluator {
            z,
            log_z,
            log_1mz,
            cfg,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Evaluator at real `x` in `[0, 1)` whose complement `1 - x` is known
    /// more precisely than `x` itself.
    pub fn with_complement(x: f64, one_minus_x: f64, cfg: EvalConfig) -> Result<Self> {
        if !(0.0..1.0).contains(&x) || one_minus_x <= 0.0 {
            return Err(Error::Domain(format!("x = {x} outside [0, 1)")));
        }
        let mut ev = PolylogEvaluator::new(Complex64::new(x, 0.0), cfg)?;
        // take each logarithm from whichever input is far from 1
        let log_1mz = if one_minus_x < 0.5 {
            one_minus_x.ln()
        } else {
            (-x).ln_1p()
        };
        ev.log_1mz = Complex64::new(log_1mz, 0.0);
        if x > 0.0 {
            let log_z = if x < 0.5 { x.ln() } else { (-one_minus_x).ln_1p() };
            ev.log_z = Some(Complex64::new(log_z, 0.0));
        }
        Ok(ev)
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    fn ones(&self, j: usize) -> ApproxValue {
        let v = (-self.log_1mz).powi(j as i32) / factorial(j);
        ApproxValue::new(v, 4.0 * (j as f64 + 1.0) * EPS * v.norm())
    }

    fn xs(&self, j: usize) -> Result<ApproxValue> {
        if j == 0 {
            return Ok(ApproxValue::one());
        }
        let lz = self.log_z.ok_or_else(|| {
            Error::Domain(format!("log z needed at z = {} on the cut (-oo, 0]", self.z))
        })?;
        let v = lz.powi(j as i32) / factorial(j);
        Ok(ApproxValue::new(v, 4.0 * (j as f64 + 1.0) * EPS * v.norm()))
    }

    fn series(&self, w: Word) -> Result<ApproxValue> {
        if w.is_empty() {
            return Ok(ApproxValue::one());
        }
        if w.count(Letter::X) == 0 {
            return Ok(self.ones(w.len()));
        }
        let k = MultiIndex::from_word(w)?;
        li_index(&k, self.z, &self.cfg)
    }

    /// `Li(w; z)` for any word.
    pub fn li_word(&self, w: Word) -> Result<ApproxValue> {
        if let Some(v) = self.cache.read().expect("polylog cache poisoned").get(&w) {
            return Ok(*v);
        }
        let v = self.li_word_uncached(w)?;
        self.cache
            .write()
            .expect("polylog cache poisoned")
            .insert(w, v);
        Ok(v)
    }

    fn li_word_uncached(&self, w: Word) -> Result<ApproxValue> {
        if w.is_h1() {
            return self.series(w);
        }
        let (m, w0, n) = strip(w);
        let mut total = ApproxValue::zero();
        for i in 0..=m {
            let yi = self.ones(i);
            for j in 0..=n {
                let core = reg_word(
                    Word::power(Letter::Y, m - i)
                        .concat(w0)
                        .concat(Word::power(Letter::X, n - j)),
                );
                if core.is_zero() {
                    continue;
                }
                let mut c = ApproxValue::zero();
                for (v, a) in core.terms() {
                    c = c + self.series(*v)?.scale(coeff_f64(a));
                }
                total = total + yi * c * self.xs(j)?;
            }
        }
        Ok(total)
    }

    /// Linear extension of [`Self::li_word`].
    pub fn li_poly(&self, p: &NCPoly) -> Result<ApproxValue> {
        let mut total = ApproxValue::zero();
        for (w, c) in p.terms() {
            total = total + self.li_word(*w)?.scale(coeff_f64(c));
        }
        Ok(total)
    }
}

fn check_word_domain(w: Word, z: Complex64) -> Result<()> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!("|z| = {} >= 1", z.norm())));
    }
    if !w.is_h1() && on_cut_zero(z) {
        return Err(Error::Domain(format!(
            "word {w} needs log z, undefined at z = {z}"
        )));
    }
    Ok(())
}

/// `Li(w; z)` for any word `w`, `0 < |z| < 1`; words with trailing `x`
/// additionally need `z` off `(-oo, 0]`.
pub fn li_word(w: Word, z: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    check_word_domain(w, z)?;
    PolylogEvaluator::new(z, *cfg)?.li_word(w)
}

pub fn li_poly(p: &NCPoly, z: Complex64, cfg: &EvalConfig) -> Result<ApproxValue> {
    for (w, _) in p.terms() {
        check_word_domain(*w, z)?;
    }
    PolylogEvaluator::new(z, *cfg)?.li_poly(p)
}
