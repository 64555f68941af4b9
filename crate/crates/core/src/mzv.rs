//! Multiple zeta values.
//!
//! The main evaluator uses the prefix/suffix convolution at `z = 1/2`,
//!
//! ```text
//! zeta^(reg w) = sum_{w1 w2 = w} Li(tau(w1); 1/2) Li(w2; 1/2),
//! ```
//!
//! where both factors converge like `2^-n`. [`zeta_direct`] is a plain nested
//! sum kept as an independent check.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::polylog::{ApproxValue, EvalConfig, PolylogEvaluator};
use crate::words::{tau_word, MultiIndex, NCPoly, Word};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Truncated nested sum over `n1 <= cutoff` plus a leading-order estimate of
/// the missing part.
///
/// The omitted terms split by how many leading indices exceed the cutoff `N`:
/// with `K_i = k_1 + ... + k_i`,
///
/// ```text
/// sum_{n1 > ... > nj > N} prod n_i^-k_i ~ (N + 1/2)^(j - K_j) / prod_{i<=j} (K_i - i)
/// ```
///
/// multiplied by the nested sum of the remaining parts up to `N`. The
/// relative error of that estimate is `O(K j / N)`, which is what `err`
/// carries.
pub fn zeta_direct(k: &MultiIndex, cutoff: usize) -> Result<ApproxValue> {
    if !k.is_admissible() {
        return Err(Error::NonAdmissible(k.to_string()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidConfig("cutoff must be positive".into()));
    }
    let parts = k.parts();
    let m = parts.len();
    let mut prefix = vec![0.0f64; m + 1];
    prefix[m] = 1.0;
    let mut c = vec![0.0f64; m];
    for n in 1..=cutoff {
        let nf = n as f64;
        for j in 0..m {
            c[j] = prefix[j + 1] / nf.powi(parts[j] as i32);
        }
        for j in 0..m {
            prefix[j] += c[j];
        }
    }
    let truncated = prefix[0];
    let nf = cutoff as f64;
    let weight = k.weight() as f64;
    let mut tail = 0.0;
    let mut tail_err = 0.0;
    let mut big_k = 0.0;
    let mut denom = 1.0;
    for j in 1..=m {
        big_k += parts[j - 1] as f64;
        denom *= big_k - j as f64;
        let t = (nf + 0.5).powf(j as f64 - big_k) / denom * prefix[j];
        tail += t;
        tail_err += t.abs() * 2.0 * weight * j as f64 / nf;
    }
    let value = truncated + tail;
    Ok(ApproxValue::real(value, tail_err + 2.0 * nf * EPS * value.abs()))
}

/// Caching evaluator of `zeta^(reg w)` for arbitrary words.
pub struct MzvEvaluator {
    half: PolylogEvaluator,
    cache: RwLock<HashMap<Word, ApproxValue>>,
}

impl MzvEvaluator {
    pub fn new(cfg: EvalConfig) -> Self {
        MzvEvaluator {
            half: PolylogEvaluator::new(Complex64::new(0.5, 0.0), cfg)
                .expect("1/2 lies in the unit disk"),
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Process-wide evaluator for a given configuration.
    pub fn shared(cfg: EvalConfig) -> Arc<MzvEvaluator> {
        type Pool = Mutex<HashMap<(u64, usize), Arc<MzvEvaluator>>>;
        static POOL: OnceLock<Pool> = OnceLock::new();
        let key = (cfg.tol.to_bits(), cfg.max_terms);
        POOL.get_or_init(Default::default)
            .lock()
            .expect("mzv pool poisoned")
            .entry(key)
            .or_insert_with(|| Arc::new(MzvEvaluator::new(cfg)))
            .clone()
    }

    pub fn config(&self) -> &EvalConfig {
        self.half.config()
    }

    /// `zeta^(reg w)`; equals `zeta(k)` when `w` is the admissible word of `k`.
    pub fn zeta_word(&self, w: Word) -> Result<ApproxValue> {
        if let Some(v) = self.cache.read().expect("mzv cache poisoned").get(&w) {
            return Ok(*v);
        }
        let mut total = ApproxValue::zero();
        for p in 0..=w.len() {
            let (w1, w2) = w.split_at(p);
            total = total + self.half.li_word(tau_word(w1))? * self.half.li_word(w2)?;
        }
        // the result is real; drop roundoff in the imaginary part
        total.value.im = 0.0;
        self.cache
            .write()
            .expect("mzv cache poisoned")
            .insert(w, total);
        Ok(total)
    }

    pub fn zeta_poly(&self, p: &NCPoly) -> Result<ApproxValue> {
        let mut total = ApproxValue::zero();
        for (w, c) in p.terms() {
            let c = c.to_f64().expect("coefficient fits in f64");
            total = total + self.zeta_word(*w)?.scale(c);
        }
        Ok(total)
    }

    pub fn zeta(&self, k: &MultiIndex) -> Result<ApproxValue> {
        if !k.is_admissible() {
            return Err(Error::NonAdmissible(k.to_string()));
        }
        self.zeta_word(k.to_word())
    }

    /// Riemann zeta at an integer `n >= 2`.
    pub fn riemann(&self, n: u32) -> Result<ApproxValue> {
        self.zeta(&MultiIndex::new(vec![n])?)
    }

    /// `S(n, r)`: sum of all MZVs of weight `n` and depth `r`.
    pub fn sum_weight_depth(&self, n: usize, r: usize) -> Result<ApproxValue> {
        if n < 2 || r < 1 || r >= n {
            return Err(Error::Domain(format!(
                "S(n, r) needs n >= 2 and 1 <= r <= n - 1, got n = {n}, r = {r}"
            )));
        }
        let mut total = ApproxValue::zero();
        for k in MultiIndex::admissible(n, r) {
            total = total + self.zeta(&k)?;
        }
        Ok(total)
    }
}

pub fn zeta_word(w: Word, cfg: &EvalConfig) -> Result<ApproxValue> {
    MzvEvaluator::shared(*cfg).zeta_word(w)
}

pub fn zeta_poly(p: &NCPoly, cfg: &EvalConfig) -> Result<ApproxValue> {
    MzvEvaluator::shared(*cfg).zeta_poly(p)
}

pub fn sum_weight_depth(n: usize, r: usize, cfg: &EvalConfig) -> Result<ApproxValue> {
    MzvEvaluator::shared(*cfg).sum_weight_depth(n, r)
}

/// `Li(w; x)` for real `x` in `[0, 1)` including the neighbourhood of 1.
///
/// For `x > 1/2` the value comes from the Euler connection formula solved for
/// the `w1 = 1` term,
///
/// ```text
/// Li(w; x) = zeta^(reg w) - sum_{w1 w2 = w, w1 != 1} Li(tau(w1); 1 - x) Li(w2; x),
/// ```
///
/// applied recursively to the shorter suffixes `w2`; all series then run at
/// `1 - x < 1/2`.
pub struct ReflectedPolylog {
    near: PolylogEvaluator,
    far: Option<PolylogEvaluator>,
    mzv: Arc<MzvEvaluator>,
    cache: RwLock<HashMap<Word, ApproxValue>>,
}

impl ReflectedPolylog {
    /// `x` together with its complement `1 - x`, either of which may be the
    /// more accurate input.
    pub fn new(x: f64, one_minus_x: f64, cfg: EvalConfig) -> Result<Self> {
        if !(0.0..1.0).contains(&x) || !(one_minus_x > 0.0 && one_minus_x <= 1.0) {
            return Err(Error::Domain(format!("x = {x} outside [0, 1)")));
        }
        Ok(ReflectedPolylog {
            near: PolylogEvaluator::with_complement(x, one_minus_x, cfg)?,
            far: if x > 0.5 {
                Some(PolylogEvaluator::with_complement(one_minus_x, x, cfg)?)
            } else {
                None
            },
            mzv: MzvEvaluator::shared(cfg),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn li_word(&self, w: Word) -> Result<ApproxValue> {
        let Some(far) = &self.far else {
            return self.near.li_word(w);
        };
        if let Some(v) = self.cache.read().expect("cache poisoned").get(&w) {
            return Ok(*v);
        }
        let mut total = self.mzv.zeta_word(w)?;
        for p in 1..=w.len() {
            let (w1, w2) = w.split_at(p);
            let rest = if w2.is_empty() {
                ApproxValue::one()
            } else {
                self.li_word(w2)?
            };
            total = total - far.li_word(tau_word(w1))? * rest;
        }
        self.cache.write().expect("cache poisoned").insert(w, total);
        Ok(total)
    }

    pub fn li_poly(&self, p: &NCPoly) -> Result<ApproxValue> {
        let mut total = ApproxValue::zero();
        for (w, c) in p.terms() {
            let c = c.to_f64().expect("coefficient fits in f64");
            total = total + self.li_word(*w)?.scale(c);
        }
        Ok(total)
    }
}
