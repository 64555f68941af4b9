//! The `verify` checks. Each produces one or more records; thresholds default
//! per check and are overridden by `--tol`.

use mzv_core::associator::{
    check_c10, check_duality, check_euler_words, check_goreg, check_hexagon, check_landen_series,
    check_landen_words, BranchSign,
};
use mzv_core::hurwitz::{check_em2, check_hurwitz_relation, check_kummer_connection};
use mzv_core::mellin_sum::{
    check_beta_term, check_euler_mellin, check_heart, check_landen_lemma, check_mellin_landen,
    check_sum_formula, mellin_word,
};
use mzv_core::{Complex64, Error, EvalConfig, Result};

use crate::report::{sci, Record};

pub struct Context {
    pub weight: usize,
    pub tol: Option<f64>,
    pub z: Complex64,
    pub cfg: EvalConfig,
    pub branch: Option<BranchSign>,
    pub lmax: usize,
}

impl Context {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn real_z(&self) -> Result<f64> {
        if self.z.im != 0.0 {
            return Err(Error::Domain(format!("this check needs a real z, got {}", self.z)));
        }
        Ok(self.z.re)
    }

    fn branches(&self) -> Vec<BranchSign> {
        match self.branch {
            Some(b) => vec![b],
            None => vec![BranchSign::Upper, BranchSign::Lower],
        }
    }
}

fn show(z: Complex64) -> String {
    if z.im == 0.0 {
        z.re.to_string()
    } else {
        z.to_string()
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub type CheckFn = fn(&Context) -> Result<Vec<Record>>;

/// All checks, sorted by name.
pub const ALL: [(&str, CheckFn); 13] = [
    ("c10", c10),
    ("duality", duality),
    ("em2", em2),
    ("euler", euler),
    ("goreg", goreg),
    ("heart", heart),
    ("hexagon", hexagon),
    ("hurwitz", hurwitz),
    ("kummer", kummer),
    ("landen", landen),
    ("landen-lemma", landen_lemma),
    ("mellin", mellin),
    ("sumformula", sumformula),
];

pub fn lookup(name: &str) -> Option<CheckFn> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, f)| *f)
}

/// Errors caused by the requested parameters rather than by a failed
/// computation.
pub fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Domain(_)
            | Error::InvalidConfig(_)
            | Error::NonAdmissible(_)
            | Error::NotInH1(_)
            | Error::StripExceeded(_)
            | Error::PoleAtOne
            | Error::PoleAtInteger(_)
            | Error::GammaPole(_)
            | Error::OutOfRange { .. }
    )
}

fn duality(ctx: &Context) -> Result<Vec<Record>> {
    let d = check_duality(ctx.weight, &ctx.cfg)?;
    Ok(vec![Record::new("duality", d.max(), ctx.tol(1e-8))
        .param("weight", ctx.weight)
        .extra("words", sci(d.words))
        .extra("series", sci(d.series))])
}

fn hexagon(ctx: &Context) -> Result<Vec<Record>> {
    ctx.branches()
        .into_iter()
        .map(|b| {
            let r = check_hexagon(ctx.weight, b, &ctx.cfg)?;
            Ok(Record::new("hexagon", r, ctx.tol(1e-7))
                .param("weight", ctx.weight)
                .param("branch", b))
        })
        .collect()
}

fn euler(ctx: &Context) -> Result<Vec<Record>> {
    let r = check_euler_words(ctx.z, ctx.weight, &ctx.cfg)?;
    Ok(vec![Record::new("euler", r, ctx.tol(1e-8))
        .param("weight", ctx.weight)
        .param("z", show(ctx.z))])
}

fn landen(ctx: &Context) -> Result<Vec<Record>> {
    let tol = ctx.tol(1e-6);
    let r = check_landen_words(ctx.z, ctx.weight, &ctx.cfg)?;
    let mut out = vec![Record::new("landen", r, tol)
        .param("form", "words")
        .param("weight", ctx.weight)
        .param("z", show(ctx.z))];
    // the series form lives off the real axis
    if ctx.z.im != 0.0 {
        let branch = if ctx.z.im > 0.0 { BranchSign::Upper } else { BranchSign::Lower };
        let r = check_landen_series(ctx.z, ctx.weight, branch, &ctx.cfg)?;
        out.push(
            Record::new("landen", r, tol)
                .param("form", "series")
                .param("weight", ctx.weight)
                .param("z", show(ctx.z))
                .param("branch", branch),
        );
    }
    Ok(out)
}

fn landen_lemma(ctx: &Context) -> Result<Vec<Record>> {
    let z = ctx.real_z()?;
    let mut out = Vec::new();
    for m in 1..=ctx.weight.min(12) {
        for j in 1..=m {
            let r = check_landen_lemma(m, j, z, &ctx.cfg)?;
            out.push(
                Record::new("landen-lemma", r.residual(), ctx.tol(1e-6))
                    .param("m", m)
                    .param("j", j)
                    .param("z", z),
            );
        }
    }
    Ok(out)
}

fn sumformula(ctx: &Context) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for n in 2..=ctx.weight {
        for (r, cmp) in check_sum_formula(n, &ctx.cfg)? {
            out.push(
                Record::new("sumformula", cmp.residual(), ctx.tol(1e-7))
                    .param("n", n)
                    .param("r", r),
            );
        }
    }
    Ok(out)
}

fn heart(ctx: &Context) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for n in 2..=ctx.weight {
        for k in 2..=n {
            let cmp = check_heart(n, k, &ctx.cfg)?;
            out.push(
                Record::new("heart", cmp.residual(), ctx.tol(1e-7))
                    .param("n", n)
                    .param("k", k),
            );
        }
    }
    Ok(out)
}

fn mellin(ctx: &Context) -> Result<Vec<Record>> {
    let tol = ctx.tol(1e-7);
    let mut out = Vec::new();
    for (k, l) in [(2, -0.5), (4, 0.3)] {
        let r = check_euler_mellin(k, l)?;
        out.push(
            Record::new("mellin", r.residual(), tol)
                .param("kind", "euler")
                .param("k", k)
                .param("lambda", l),
        );
    }
    for (k, l) in [(2, -0.5), (3, -1.0)] {
        let r = check_beta_term(k, l, &ctx.cfg)?;
        out.push(
            Record::new("mellin", r.residual(), tol)
                .param("kind", "beta")
                .param("k", k)
                .param("lambda", l),
        );
    }
    for (m, l) in [(2, -0.4), (3, 0.25)] {
        let r = check_mellin_landen(m, l, &ctx.cfg)?;
        let taylor = r
            .taylor
            .iter()
            .map(|t| (t.series.value - t.zeta.value).norm())
            .fold(0.0, f64::max);
        let sums = r
            .taylor
            .iter()
            .map(|t| (t.depth_sum.value - t.zeta.value).norm())
            .fold(0.0, f64::max);
        let residual = r.comparison.residual().max(taylor);
        out.push(
            Record::new("mellin", residual, tol)
                .param("kind", "landen")
                .param("m", m)
                .param("lambda", l)
                .extra("taylor", sci(taylor))
                .extra("depth_sums", sci(sums)),
        );
    }
    let q = mellin_word("xy".parse()?, c(1.0), &ctx.cfg)?;
    let exact = std::f64::consts::PI.powi(2) / 6.0 - 1.0;
    out.push(
        Record::new("mellin", (q.value.re - exact).abs(), ctx.tol(1e-8))
            .param("kind", "quadrature")
            .param("k", 2)
            .param("lambda", 1),
    );
    Ok(out)
}

fn c10(ctx: &Context) -> Result<Vec<Record>> {
    let r = check_c10(ctx.z, ctx.weight, &ctx.cfg)?;
    Ok(vec![Record::new("c10", r, ctx.tol(1e-7))
        .param("weight", ctx.weight)
        .param("z", show(ctx.z))])
}

fn goreg(ctx: &Context) -> Result<Vec<Record>> {
    let r = check_goreg(ctx.z, ctx.weight, &ctx.cfg)?;
    Ok(vec![Record::new("goreg", r, ctx.tol(1e-8))
        .param("weight", ctx.weight)
        .param("z", show(ctx.z))])
}

fn kummer(ctx: &Context) -> Result<Vec<Record>> {
    [(1.0, 0.5, 2.0), (1.0, -0.5, 5.0), (1.0, 0.5, 3.0)]
        .into_iter()
        .map(|(a, g, x)| {
            let k = check_kummer_connection(c(a), c(g), c(x), &ctx.cfg)?;
            Ok(Record::new("kummer", k.classical.residual(), ctx.tol(1e-8))
                .param("alpha", a)
                .param("gamma", g)
                .param("x", x)
                .extra("printed_residual", sci(k.printed.residual())))
        })
        .collect()
}

fn em2(ctx: &Context) -> Result<Vec<Record>> {
    let z = ctx.real_z()?;
    let s = c(-0.5);
    let a = check_em2(s, z, ctx.lmax, &ctx.cfg)?;
    let b = check_em2(s, z, 2 * ctx.lmax, &ctx.cfg)?;
    let ratio = a.raw.residual() / b.raw.residual();
    let mut rec = Record::new("em2", a.raw.residual(), ctx.tol(1e-3))
        .param("s", -0.5)
        .param("z", z)
        .param("lmax", ctx.lmax)
        .extra("corrected", sci(a.corrected.residual()))
        .extra("doubling_ratio", format!("{ratio:.3}"));
    rec.pass &= (1.8..=4.5).contains(&ratio);
    Ok(vec![rec])
}

fn hurwitz(ctx: &Context) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for s in [-0.5, -1.5] {
        for (label, z) in [("0.25", 0.25), ("1/3", 1.0 / 3.0), ("0.5", 0.5), ("0.75", 0.75)] {
            let r = check_hurwitz_relation(c(s), z, &ctx.cfg)?;
            out.push(
                Record::new("hurwitz", r.residual(), ctx.tol(1e-6))
                    .param("s", s)
                    .param("z", label),
            );
        }
    }
    Ok(out)
}
