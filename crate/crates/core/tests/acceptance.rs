//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use mzv_core::associator::{
    check_c10, check_duality, check_euler_words, check_hexagon, check_landen_words, g0, g1,
    BranchSign,
};
use mzv_core::hurwitz::{
    check_em2, check_hurwitz_relation, check_kummer_connection, hurwitz_zeta,
    hurwitz_zeta_direct, kummer_u,
};
use mzv_core::mellin_sum::{
    check_beta_term, check_euler_mellin, check_heart, check_landen_lemma, check_mellin_landen,
    check_sum_formula, mellin_word,
};
use mzv_core::mzv::{zeta_direct, MzvEvaluator};
use mzv_core::regularize::{decompose, reg, reg_word};
use mzv_core::words::{antipode, concat, shuffle, shuffle_words, tau};
use mzv_core::{Complex64, EvalConfig, MultiIndex, NCPoly, Result, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn p(w: Word) -> NCPoly {
    NCPoly::from(w)
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_index(len, rng.gen_range(0..1u64 << len))
}

fn exact_algebra() -> Result<Outcome> {
    let mut failures = Vec::new();
    let small: Vec<Word> = Word::all_up_to(5).collect();
    for &u in &small {
        for &v in &small {
            if shuffle_words(u, v) != shuffle_words(v, u) {
                failures.push(format!("commutativity {u} {v}"));
            }
        }
    }
    let tiny: Vec<Word> = Word::all_up_to(3).collect();
    for &u in &tiny {
        for &v in &tiny {
            let uv = shuffle_words(u, v);
            for &w in &tiny {
                if shuffle(&uv, &p(w)) != shuffle(&p(u), &shuffle_words(v, w)) {
                    failures.push(format!("associativity {u} {v} {w}"));
                }
            }
        }
    }
    for &u in &small {
        let pu = p(u);
        if antipode(&antipode(&pu)) != pu || tau(&tau(&pu)) != pu {
            failures.push(format!("involution {u}"));
        }
        if !u.is_empty() {
            // sum_{ab = u} a ш S(b) = 0
            let mut total = NCPoly::zero();
            for k in 0..=u.len() {
                let (a, b) = u.split_at(k);
                total = &total + &shuffle(&p(a), &antipode(&p(b)));
            }
            if !total.is_zero() {
                failures.push(format!("antipode identity {u}"));
            }
        }
        for &v in &small {
            let (pu, pv) = (p(u), p(v));
            let uv = concat(&pu, &pv);
            if antipode(&uv) != concat(&antipode(&pv), &antipode(&pu))
                || tau(&uv) != concat(&tau(&pv), &tau(&pu))
                || tau(&shuffle(&pu, &pv)) != shuffle(&tau(&pu), &tau(&pv))
            {
                failures.push(format!("anti-homomorphism {u} {v}"));
            }
        }
    }
    let mut words = 0;
    for w in Word::all_up_to(8) {
        words += 1;
        let r = reg_word(w);
        if decompose(w).reconstruct() != p(w) {
            failures.push(format!("decomposition {w}"));
        }
        if reg(&r) != r || r.terms().any(|(t, _)| !t.is_admissible()) {
            failures.push(format!("reg idempotence {w}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let (u, v) = (random_word(&mut rng, 6), random_word(&mut rng, 6));
        if reg(&shuffle_words(u, v)) != shuffle(&reg_word(u), &reg_word(v)) {
            failures.push(format!("reg homomorphism {u} {v}"));
        }
    }
    let detail = format!(
        "{} words up to weight 8, 200 random reg pairs, {} failures{}",
        words,
        failures.len(),
        failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
    );
    Ok(Outcome::new(failures.is_empty(), detail))
}

fn sum_formula() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in 2..=7 {
        for (_, cmp) in check_sum_formula(n, &cfg())? {
            worst = worst.max(cmp.residual());
        }
    }
    Ok(Outcome::new(worst <= 1e-7, format!("max |S(n,r) - zeta(n)| = {worst:.3e} (n <= 7)")))
}

fn heart() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in 2..=7 {
        for k in 2..=n {
            worst = worst.max(check_heart(n, k, &cfg())?.residual());
        }
    }
    Ok(Outcome::new(worst <= 1e-7, format!("max residual = {worst:.3e} (2 <= k <= n <= 7)")))
}

fn duality() -> Result<Outcome> {
    let d = check_duality(7, &cfg())?;
    Ok(Outcome::new(
        d.words <= 1e-8 && d.series <= 1e-8,
        format!("words = {:.3e}, series = {:.3e} (order 7)", d.words, d.series),
    ))
}

fn euler() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for z in [0.3, 0.7] {
        worst = worst.max(check_euler_words(c(z), 5, &cfg())?);
    }
    Ok(Outcome::new(worst <= 1e-8, format!("max residual = {worst:.3e} (weight <= 5, z = 0.3, 0.7)")))
}

fn landen() -> Result<Outcome> {
    let mut words: f64 = 0.0;
    for z in [0.25, 0.4] {
        words = words.max(check_landen_words(c(z), 5, &cfg())?);
    }
    let mut lemma: f64 = 0.0;
    for z in [0.25, 0.4] {
        for m in 1..=5 {
            for j in 1..=m {
                lemma = lemma.max(check_landen_lemma(m, j, z, &cfg())?.residual());
            }
        }
    }
    Ok(Outcome::new(
        words <= 1e-6 && lemma <= 1e-6,
        format!("words = {words:.3e}, lemma = {lemma:.3e}"),
    ))
}

fn connection_constant() -> Result<Outcome> {
    let zs = [0.2, 0.5, 0.8];
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    for z in zs {
        worst = worst.max(check_c10(c(z), 5, &cfg())?);
        ratios.push(g1(c(z), 5, &cfg())?.invert()?.mul(&g0(c(z), 5, &cfg())?)?);
    }
    let mut spread: f64 = 0.0;
    for i in 0..ratios.len() {
        for j in i + 1..ratios.len() {
            spread = spread.max(ratios[i].max_abs_diff(&ratios[j])?);
        }
    }
    Ok(Outcome::new(
        worst <= 1e-7 && spread <= 1e-8,
        format!("max residual = {worst:.3e}, z-spread = {spread:.3e} (order 5)"),
    ))
}

fn hexagon() -> Result<Outcome> {
    let up = check_hexagon(6, BranchSign::Upper, &cfg())?;
    let down = check_hexagon(6, BranchSign::Lower, &cfg())?;
    Ok(Outcome::new(
        up <= 1e-7 && down <= 1e-7,
        format!("upper = {up:.3e}, lower = {down:.3e} (order 6)"),
    ))
}

fn mellin() -> Result<Outcome> {
    let mut detail = String::new();
    let mut pass = true;
    let mut record = |label: &str, r: f64, limit: f64| {
        pass &= r <= limit;
        let _ = write!(detail, "{label}={r:.2e} ");
    };
    for (k, l) in [(2, -0.5), (4, 0.3)] {
        record(&format!("euler[{k},{l}]"), check_euler_mellin(k, l)?.residual(), 1e-7);
    }
    for (k, l) in [(2, -0.5), (3, -1.0)] {
        record(&format!("beta[{k},{l}]"), check_beta_term(k, l, &cfg())?.residual(), 1e-7);
    }
    for (m, l) in [(2, -0.4), (2, 0.0), (3, 0.25)] {
        let r = check_mellin_landen(m, l, &cfg())?;
        let taylor = r
            .taylor
            .iter()
            .map(|t| (t.series.value - t.zeta.value).norm())
            .fold(0.0, f64::max);
        record(&format!("landen[{m},{l}]"), r.comparison.residual(), 1e-7);
        record(&format!("taylor[{m}]"), taylor, 1e-7);
    }
    let q = mellin_word("xy".parse()?, c(1.0), &cfg())?;
    record("M[Li2](1)", (q.value.re - (ZETA2 - 1.0)).abs(), 1e-8);
    Ok(Outcome::new(pass, detail.trim_end().to_string()))
}

fn cross_evaluator() -> Result<Outcome> {
    let ev = MzvEvaluator::shared(cfg());
    let mut worst_ratio: f64 = 0.0;
    let mut worst_err: f64 = 0.0;
    let mut count = 0;
    for n in 2..=6 {
        for r in 1..n {
            for k in MultiIndex::admissible(n, r) {
                let a = ev.zeta(&k)?;
                let d = zeta_direct(&k, 1_000_000)?;
                worst_ratio = worst_ratio.max((a.value - d.value).norm() / d.err);
                worst_err = worst_err.max(d.err);
                count += 1;
            }
        }
    }
    Ok(Outcome::new(
        worst_ratio <= 1.0 && worst_err <= 1e-4,
        format!("{count} indices, max |diff|/err = {worst_ratio:.3}, max direct err = {worst_err:.3e}"),
    ))
}

fn hurwitz() -> Result<Outcome> {
    let mut relation: f64 = 0.0;
    for s in [-0.5, -1.5] {
        for z in [0.25, 1.0 / 3.0, 0.5, 0.75] {
            relation = relation.max(check_hurwitz_relation(c(s), z, &cfg())?.residual());
        }
    }
    let mut em1: f64 = 0.0;
    for s in [c(1.5), c(2.0), Complex64::new(3.0, 1.0)] {
        for z in [0.25, 0.5, 1.0] {
            let a = hurwitz_zeta(s, z, &cfg())?;
            let b = hurwitz_zeta_direct(s, z, 20_000)?;
            em1 = em1.max((a.value - b.value).norm());
        }
    }
    let asym = kummer_u(c(1.0), c(0.0), c(50.0), &cfg())?.value.re * 50.0;
    let mut em2: f64 = 0.0;
    let mut ratio = f64::INFINITY;
    for z in [1.0 / 3.0, 0.5] {
        let a = check_em2(c(-0.5), z, 200, &cfg())?;
        em2 = em2.max(a.raw.residual());
        if z == 1.0 / 3.0 {
            let b = check_em2(c(-0.5), z, 400, &cfg())?;
            ratio = a.raw.residual() / b.raw.residual();
        }
    }
    let pass = relation <= 1e-6
        && em1 <= 1e-9
        && (asym - 1.0).abs() <= 0.05
        && em2 <= 1e-3
        && (1.8..=4.5).contains(&ratio);
    Ok(Outcome::new(
        pass,
        format!(
            "relation = {relation:.3e}, em1 = {em1:.3e}, 50 U(1,0;50) = {asym:.4}, em2 = {em2:.3e}, doubling ratio = {ratio:.3}"
        ),
    ))
}

fn kummer() -> Result<Outcome> {
    let mut classical: f64 = 0.0;
    let mut printed: f64 = 0.0;
    for (a, g, x) in [(1.0, 0.5, 2.0), (1.0, -0.5, 5.0), (1.0, 0.5, 3.0)] {
        let k = check_kummer_connection(c(a), c(g), c(x), &cfg())?;
        classical = classical.max(k.classical.residual());
        printed = printed.max(k.printed.residual());
    }
    Ok(Outcome::new(
        classical <= 1e-8,
        format!("classical = {classical:.3e} (certified), Gamma(1+a) variant = {printed:.3e}"),
    ))
}

type Criterion = (u32, &'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "exact algebra", exact_algebra),
        (2, "sum formula", sum_formula),
        (3, "heart identity", heart),
        (4, "duality", duality),
        (5, "Euler connection", euler),
        (6, "Landen formula and lemma", landen),
        (7, "connection constant", connection_constant),
        (8, "hexagon", hexagon),
        (9, "Mellin suite", mellin),
        (10, "cross-evaluator MZV", cross_evaluator),
        (11, "Hurwitz relation", hurwitz),
        (12, "Kummer connection", kummer),
    ];
    let start = Instant::now();
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let out = f().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
                    (out, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failed = 0;
    for ((id, name, _), (out, secs)) in criteria.iter().zip(&results) {
        let status = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failed += 1;
        }
        println!("criterion {id:>2} {name:<26} {status}  [{secs:6.2}s] {}", out.detail);
    }
    println!(
        "acceptance: {} passed, {} failed in {:.1}s",
        criteria.len() - failed,
        failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
