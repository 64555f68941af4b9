//! Solutions of the formal KZ equation `dG = (X/z + Y/(1-z)) G dz` and the
//! Drinfeld associator `phi_KZ = sum_W zeta^(reg w) W`.
//!
//! Every `check_*` function returns the largest coefficient modulus of the
//! difference between the two sides of an identity, with both sides built by
//! separate evaluators.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::mzv::MzvEvaluator;
use crate::ncseries::{LetterMap, TruncSeries};
use crate::polylog::{EvalConfig, PolylogEvaluator};
use crate::regularize::reg_word;
use crate::words::{letter_subst_word, tau_word, Letter, Mobius, SubstRule, Word};
use crate::{Error, Result};

/// Side of the real axis: `Upper` for `Im z > 0`, `Lower` for `Im z < 0`.
/// Selects the sign in factors such as `exp(∓ X pi i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchSign {
    Upper,
    Lower,
}

impl BranchSign {
    pub const BOTH: [BranchSign; 2] = [BranchSign::Upper, BranchSign::Lower];

    pub fn sign(self) -> f64 {
        match self {
            BranchSign::Upper => 1.0,
            BranchSign::Lower => -1.0,
        }
    }
}

impl fmt::Display for BranchSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchSign::Upper => "+",
            BranchSign::Lower => "-",
        })
    }
}

impl FromStr for BranchSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "upper" | "+1" => Ok(BranchSign::Upper),
            "-" | "lower" | "-1" => Ok(BranchSign::Lower),
            other => Err(Error::Parse(format!("branch sign must be + or -, got {other:?}"))),
        }
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn ipi() -> Complex64 {
    Complex64::new(0.0, PI)
}

/// `G0(X, Y; z) = sum_W Li(w; z) W`.
pub fn g0(z: Complex64, order: usize, cfg: &EvalConfig) -> Result<TruncSeries> {
    let ev = PolylogEvaluator::new(z, *cfg)?;
    TruncSeries::try_from_fn(order, |w| Ok(ev.li_word(w)?.value))
}

/// `G0bar(X, Y; z) = sum_W Li(reg w; z) W`.
pub fn g0_bar(z: Complex64, order: usize, cfg: &EvalConfig) -> Result<TruncSeries> {
    let ev = PolylogEvaluator::new(z, *cfg)?;
    TruncSeries::try_from_fn(order, |w| Ok(ev.li_poly(&reg_word(w))?.value))
}

/// `pi(f) G0 = sum_W Li(f^*(w); f^{-1}(z)) W`.
pub fn pi_action(f: Mobius, z: Complex64, order: usize, cfg: &EvalConfig) -> Result<TruncSeries> {
    let ev = PolylogEvaluator::new(f.inverse().apply(z), *cfg)?;
    let rule = SubstRule::new(f);
    TruncSeries::try_from_fn(order, |w| Ok(ev.li_poly(&letter_subst_word(w, &rule))?.value))
}

/// `G1 = pi(1 - z) G0`, the solution normalized at `z = 1`.
pub fn g1(z: Complex64, order: usize, cfg: &EvalConfig) -> Result<TruncSeries> {
    pi_action(Mobius::OneMinus, z, order, cfg)
}

/// `phi_KZ(X, Y) = sum_W zeta^(reg w) W`.
pub fn phi(order: usize, cfg: &EvalConfig) -> Result<TruncSeries> {
    let ev = MzvEvaluator::shared(*cfg);
    TruncSeries::try_from_fn(order, |w| Ok(ev.zeta_word(w)?.value))
}

/// Residual of `G0 = (1 - z)^{-Y} G0bar z^X`.
pub fn check_goreg(z: Complex64, order: usize, cfg: &EvalConfig) -> Result<f64> {
    let lhs = g0(z, order, cfg)?;
    let log_1mz = (c(1.0) - z).ln();
    let left = TruncSeries::exp_letter(-log_1mz, Letter::Y, order);
    let right = TruncSeries::exp_letter(z.ln(), Letter::X, order);
    let rhs = left.mul(&g0_bar(z, order, cfg)?)?.mul(&right)?;
    lhs.max_abs_diff(&rhs)
}

/// Residual of `G1(z)^{-1} G0(z) = phi_KZ` for real `0 < z < 1`.
pub fn check_c10(z: Complex64, order: usize, cfg: &EvalConfig) -> Result<f64> {
    require_unit_interval(z)?;
    let ratio = g1(z, order, cfg)?.invert()?.mul(&g0(z, order, cfg)?)?;
    ratio.max_abs_diff(&phi(order, cfg)?)
}

/// Residuals of the duality `phi(X, Y) phi(-Y, -X) = 1` on series and of
/// `zeta^(reg w) = zeta^(reg tau w)` on every word up to the order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualityResidual {
    pub series: f64,
    pub words: f64,
}

impl DualityResidual {
    pub fn max(&self) -> f64 {
        self.series.max(self.words)
    }
}

pub fn check_duality(order: usize, cfg: &EvalConfig) -> Result<DualityResidual> {
    let p = phi(order, cfg)?;
    let swapped = p.subst(&LetterMap::pushforward(Mobius::OneMinus));
    let series = p.mul(&swapped)?.max_abs_diff(&TruncSeries::one(order))?;
    let ev = MzvEvaluator::shared(*cfg);
    let mut words: f64 = 0.0;
    for w in Word::all_up_to(order) {
        let d = ev.zeta_word(w)?.value - ev.zeta_word(tau_word(w))?.value;
        words = words.max(d.norm());
    }
    Ok(DualityResidual { series, words })
}

fn require_unit_interval(z: Complex64) -> Result<()> {
    if z.im != 0.0 || !(z.re > 0.0 && z.re < 1.0) {
        return Err(Error::Domain(format!("need real z in (0, 1), got {z}")));
    }
    Ok(())
}

/// Largest `|Li((z/(z-1))^* w; z/(z-1)) - Li(w; z)|` over nonempty words in
/// `h y` up to the given weight.
pub fn check_landen_words(z: Complex64, order: usize, cfg: &EvalConfig) -> Result<f64> {
    let image = PolylogEvaluator::new(Mobius::Landen.apply(z), *cfg)?;
    let base = PolylogEvaluator::new(z, *cfg)?;
    let rule = SubstRule::new(Mobius::Landen);
    let mut worst: f64 = 0.0;
    for w in Word::all_up_to(order).filter(|w| !w.is_empty() && w.is_h1()) {
        let lhs = image.li_poly(&letter_subst_word(w, &rule))?.value;
        let rhs = base.li_word(w)?.value;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Residual of `pi(z/(z-1)) G0 = G0 exp(-s X pi i)` for `z` off the real
/// axis, `s` the branch sign.
pub fn check_landen_series(
    z: Complex64,
    order: usize,
    sign: BranchSign,
    cfg: &EvalConfig,
) -> Result<f64> {
    let lhs = pi_action(Mobius::Landen, z, order, cfg)?;
    let factor = TruncSeries::exp_letter(ipi() * (-sign.sign()), Letter::X, order);
    let rhs = g0(z, order, cfg)?.mul(&factor)?;
    lhs.max_abs_diff(&rhs)
}

/// Largest residual of `sum_{w1 w2 = w} Li(tau w1; 1 - z) Li(w2; z) =
/// zeta^(reg w)` over all words up to the given weight. The right side comes
/// from the `z = 1/2` evaluator, the left from direct series at `z` and
/// `1 - z`.
pub fn check_euler_words(z: Complex64, order: usize, cfg: &EvalConfig) -> Result<f64> {
    require_unit_interval(z)?;
    let at_z = PolylogEvaluator::with_complement(z.re, 1.0 - z.re, *cfg)?;
    let at_1mz = PolylogEvaluator::with_complement(1.0 - z.re, z.re, *cfg)?;
    let ev = MzvEvaluator::shared(*cfg);
    let mut worst: f64 = 0.0;
    for w in Word::all_up_to(order) {
        let mut lhs = Complex64::new(0.0, 0.0);
        for p in 0..=w.len() {
            let (w1, w2) = w.split_at(p);
            lhs += at_1mz.li_word(tau_word(w1))?.value * at_z.li_word(w2)?.value;
        }
        worst = worst.max((lhs - ev.zeta_word(w)?.value).norm());
    }
    Ok(worst)
}

/// Both sides of the hexagon relation
///
/// ```text
/// exp(s X pi i) = phi(-X+Y, -X) exp(-s (-X+Y) pi i) phi(-X+Y, Y)^{-1} exp(s Y pi i) phi(X, Y)
/// ```
pub fn hexagon_sides(
    order: usize,
    sign: BranchSign,
    cfg: &EvalConfig,
) -> Result<(TruncSeries, TruncSeries)> {
    let s = sign.sign();
    let p = phi(order, cfg)?;
    let a = p.subst(&LetterMap::new([-1.0, 1.0], [-1.0, 0.0]));
    let b = p.subst(&LetterMap::new([-1.0, 1.0], [0.0, 1.0])).invert()?;
    let e_mid = TruncSeries::exp_linear(ipi() * s, ipi() * (-s), order);
    let e_y = TruncSeries::exp_letter(ipi() * s, Letter::Y, order);
    let rhs = a.mul(&e_mid)?.mul(&b)?.mul(&e_y)?.mul(&p)?;
    let lhs = TruncSeries::exp_letter(ipi() * s, Letter::X, order);
    Ok((lhs, rhs))
}

pub fn check_hexagon(order: usize, sign: BranchSign, cfg: &EvalConfig) -> Result<f64> {
    let (lhs, rhs) = hexagon_sides(order, sign, cfg)?;
    lhs.max_abs_diff(&rhs)
}
