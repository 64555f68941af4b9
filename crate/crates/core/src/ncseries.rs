//! Truncated noncommutative power series in `X, Y` with complex coefficients.
//!
//! Coefficients are stored densely per weight: weight `n` holds `2^n` values
//! indexed by the packed word (first letter in the high bit, `X = 0`,
//! `Y = 1`).

use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::words::{Letter, Mobius, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<Vec<Complex64>>,
}

/// Linear substitution `X -> a X + b Y`, `Y -> c X + d Y`, stored as images.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LetterMap {
    pub image_of_x: [Complex64; 2],
    pub image_of_y: [Complex64; 2],
}

impl LetterMap {
    pub fn new(image_of_x: [f64; 2], image_of_y: [f64; 2]) -> Self {
        let c = |v: [f64; 2]| [Complex64::new(v[0], 0.0), Complex64::new(v[1], 0.0)];
        LetterMap {
            image_of_x: c(image_of_x),
            image_of_y: c(image_of_y),
        }
    }

    pub fn identity() -> Self {
        LetterMap::new([1.0, 0.0], [0.0, 1.0])
    }

    /// The push-forward `f_*` dual to the letter substitution `f^*`: the
    /// coefficient of `V` in `f_*(W)` is the coefficient of `w` in `f^*(v)`.
    pub fn pushforward(f: Mobius) -> Self {
        let (fx, fy) = f.pullback();
        LetterMap::new(
            [fx[0] as f64, fy[0] as f64],
            [fx[1] as f64, fy[1] as f64],
        )
    }

    fn image(&self, l: usize) -> &[Complex64; 2] {
        if l == 0 {
            &self.image_of_x
        } else {
            &self.image_of_y
        }
    }

    /// `self ∘ other` as maps on series.
    pub fn compose(&self, other: &LetterMap) -> LetterMap {
        let apply = |img: &[Complex64; 2]| {
            let (a, b) = (self.image(0), self.image(1));
            [img[0] * a[0] + img[1] * b[0], img[0] * a[1] + img[1] * b[1]]
        };
        LetterMap {
            image_of_x: apply(&other.image_of_x),
            image_of_y: apply(&other.image_of_y),
        }
    }
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order < 24, "order too large for dense storage");
        TruncSeries {
            order,
            coeffs: (0..=order)
                .map(|n| vec![Complex64::zero(); 1 << n])
                .collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0][0] = Complex64::one();
        s
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(Word) -> Complex64) -> Self {
        let mut s = TruncSeries::zero(order);
        for (n, row) in s.coeffs.iter_mut().enumerate() {
            for (i, c) in row.iter_mut().enumerate() {
                *c = f(Word::from_index(n, i as u64));
            }
        }
        s
    }

    /// Fallible variant of [`TruncSeries::from_fn`].
    pub fn try_from_fn(order: usize, mut f: impl FnMut(Word) -> Result<Complex64>) -> Result<Self> {
        let mut s = TruncSeries::zero(order);
        for (n, row) in s.coeffs.iter_mut().enumerate() {
            for (i, c) in row.iter_mut().enumerate() {
                *c = f(Word::from_index(n, i as u64))?;
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, w: Word) -> Result<Complex64> {
        if w.weight() > self.order {
            return Err(Error::OutOfRange {
                weight: w.weight(),
                order: self.order,
            });
        }
        Ok(self.coeffs[w.weight()][w.index() as usize])
    }

    pub fn set_coeff(&mut self, w: Word, c: Complex64) -> Result<()> {
        if w.weight() > self.order {
            return Err(Error::OutOfRange {
                weight: w.weight(),
                order: self.order,
            });
        }
        self.coeffs[w.weight()][w.index() as usize] = c;
        Ok(())
    }

    /// Coefficients of weight `n`, indexed by packed word.
    pub fn graded(&self, n: usize) -> &[Complex64] {
        &self.coeffs[n]
    }

    pub fn terms(&self) -> impl Iterator<Item = (Word, Complex64)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .map(move |(i, c)| (Word::from_index(n, i as u64), *c))
        })
    }

    /// Lowers the order, dropping higher weights.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_order(&self, other: &TruncSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    fn zip(&self, other: &TruncSeries, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (ro, rb) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (a, b) in ro.iter_mut().zip(rb) {
                *a = f(*a, *b);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &TruncSeries) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().flatten().for_each(|a| *a *= c);
        out
    }

    /// Truncated product: the coefficient of `w` is the sum of `a(u) b(v)`
    /// over all splittings `w = uv`.
    pub fn mul(&self, other: &TruncSeries) -> Result<Self> {
        self.check_order(other)?;
        let mut out = TruncSeries::zero(self.order);
        for n in 0..=self.order {
            let row = &mut out.coeffs[n];
            for p in 0..=n {
                let q = n - p;
                let (ap, bq) = (&self.coeffs[p], &other.coeffs[q]);
                for (u, a) in ap.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let base = u << q;
                    for (v, b) in bq.iter().enumerate() {
                        row[base | v] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse, from `b_n = -(1/a_0) sum_{p >= 1} a_p b_{n-p}`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.coeffs[0][0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.inv();
        let mut out = TruncSeries::zero(self.order);
        out.coeffs[0][0] = inv0;
        for n in 1..=self.order {
            let mut row = vec![Complex64::zero(); 1 << n];
            for p in 1..=n {
                let q = n - p;
                for (u, a) in self.coeffs[p].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let base = u << q;
                    for (v, b) in out.coeffs[q].iter().enumerate() {
                        row[base | v] -= a * b;
                    }
                }
            }
            row.iter_mut().for_each(|c| *c *= inv0);
            out.coeffs[n] = row;
        }
        Ok(out)
    }

    /// `exp(a L) = sum a^n L^n / n!` for a single letter `L`.
    pub fn exp_letter(a: Complex64, letter: Letter, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        let mut c = Complex64::one();
        for n in 0..=order {
            if n > 0 {
                c = c * a / n as f64;
            }
            let idx = match letter {
                Letter::X => 0,
                Letter::Y => (1usize << n) - 1,
            };
            s.coeffs[n][idx] = c;
        }
        s
    }

    /// `exp(a X + b Y)`; the coefficient of a word with `i` letters X and `j`
    /// letters Y is `a^i b^j / (i + j)!`.
    pub fn exp_linear(a: Complex64, b: Complex64, order: usize) -> Self {
        let mut fact = 1.0;
        let mut s = TruncSeries::zero(order);
        for n in 0..=order {
            if n > 0 {
                fact *= n as f64;
            }
            for (idx, c) in s.coeffs[n].iter_mut().enumerate() {
                let j = idx.count_ones() as i32;
                *c = a.powi(n as i32 - j) * b.powi(j) / fact;
            }
        }
        s
    }

    /// Algebra homomorphism induced by a linear substitution of letters.
    pub fn subst(&self, m: &LetterMap) -> Self {
        // the coefficient of V in the image is sum_W a_W prod_i M[V_i][W_i],
        // with M[v][w] the coefficient of letter v in the image of letter w;
        // apply M on each tensor slot in turn
        let mat = [
            [m.image_of_x[0], m.image_of_y[0]],
            [m.image_of_x[1], m.image_of_y[1]],
        ];
        let mut out = self.clone();
        for n in 1..=self.order {
            let row = &mut out.coeffs[n];
            for bit in 0..n {
                let stride = 1usize << bit;
                for i in 0..row.len() {
                    if i & stride != 0 {
                        continue;
                    }
                    let (w0, w1) = (row[i], row[i | stride]);
                    row[i] = mat[0][0] * w0 + mat[0][1] * w1;
                    row[i | stride] = mat[1][0] * w0 + mat[1][1] * w1;
                }
            }
        }
        out
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &TruncSeries) -> Result<f64> {
        self.check_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .flatten()
            .zip(other.coeffs.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// One line `W: re+im i` per coefficient whose modulus exceeds
    /// `threshold`.
    pub fn render(&self, threshold: f64) -> String {
        let mut out = String::new();
        for (w, c) in self.terms() {
            if c.norm() > threshold {
                let _ = writeln!(out, "{}: {:.15e}{:+.15e}i", w.to_upper_string(), c.re, c.im);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn linear(order: usize, a0: f64, ax: f64, ay: f64) -> TruncSeries {
        let mut s = TruncSeries::zero(order);
        s.set_coeff(Word::EMPTY, c(a0)).unwrap();
        s.set_coeff(w("x"), c(ax)).unwrap();
        s.set_coeff(w("y"), c(ay)).unwrap();
        s
    }

    #[test]
    fn mul_examples() {
        let s = TruncSeries::from_fn(3, |v| c(v.index() as f64 + v.len() as f64));
        assert_eq!(TruncSeries::one(3).mul(&s).unwrap(), s);
        let p = linear(3, 1.0, 1.0, 0.0).mul(&linear(3, 1.0, 0.0, 1.0)).unwrap();
        for (word, expect) in [("1", 1.0), ("x", 1.0), ("y", 1.0), ("xy", 1.0), ("yx", 0.0)] {
            assert_eq!(p.coeff(w(word)).unwrap(), c(expect));
        }
        let geo = TruncSeries::from_fn(5, |v| {
            if v.count(Letter::Y) == 0 {
                c(if v.len() % 2 == 0 { 1.0 } else { -1.0 })
            } else {
                c(0.0)
            }
        });
        let prod = linear(5, 1.0, 1.0, 0.0).mul(&geo).unwrap();
        assert_eq!(prod, TruncSeries::one(5));
        assert!(matches!(
            TruncSeries::one(2).mul(&TruncSeries::one(3)),
            Err(Error::OrderMismatch(2, 3))
        ));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(TruncSeries::one(4).invert().unwrap(), TruncSeries::one(4));
        let inv = linear(5, 1.0, 1.0, 0.0).invert().unwrap();
        for n in 0..=5 {
            let expect = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(inv.coeff(Word::power(Letter::X, n)).unwrap(), c(expect));
        }
        let a = Complex64::new(0.3, -1.2);
        let e = TruncSeries::exp_letter(a, Letter::X, 6);
        let d = e.invert().unwrap().max_abs_diff(&TruncSeries::exp_letter(-a, Letter::X, 6));
        assert!(d.unwrap() < 1e-14);
        assert!(matches!(TruncSeries::zero(2).invert(), Err(Error::ZeroConstantTerm)));
    }

    #[test]
    fn exp_letter_examples() {
        assert_eq!(TruncSeries::exp_letter(c(0.0), Letter::X, 4), TruncSeries::one(4));
        let ipi = Complex64::new(0.0, PI);
        let e = TruncSeries::exp_letter(ipi, Letter::X, 2);
        assert_eq!(e.coeff(w("x")).unwrap(), ipi);
        assert!((e.coeff(w("xx")).unwrap() - c(-PI * PI / 2.0)).norm() < 1e-15);
        let a = Complex64::new(0.7, 0.2);
        let p = TruncSeries::exp_letter(a, Letter::Y, 6)
            .mul(&TruncSeries::exp_letter(-a, Letter::Y, 6))
            .unwrap();
        assert!(p.max_abs_diff(&TruncSeries::one(6)).unwrap() < 1e-15);
        assert_eq!(
            TruncSeries::exp_letter(a, Letter::X, 3).coeff(w("xx")).unwrap(),
            a * a / 2.0
        );
    }

    #[test]
    fn exp_linear_matches_substituted_letter_exponential() {
        let a = Complex64::new(0.0, PI);
        let direct = TruncSeries::exp_linear(-a, a, 6);
        let map = LetterMap::new([-1.0, 1.0], [0.0, 1.0]);
        let via = TruncSeries::exp_letter(a, Letter::X, 6).subst(&map);
        assert!(direct.max_abs_diff(&via).unwrap() < 1e-13);
    }

    #[test]
    fn subst_examples() {
        let refl = LetterMap::pushforward(Mobius::OneMinus);
        let x = linear(3, 0.0, 1.0, 0.0);
        assert_eq!(x.subst(&refl), linear(3, 0.0, 0.0, -1.0));
        assert_eq!(TruncSeries::one(3).subst(&refl), TruncSeries::one(3));
        let mut bracket = TruncSeries::zero(3);
        bracket.set_coeff(w("xy"), c(1.0)).unwrap();
        bracket.set_coeff(w("yx"), c(-1.0)).unwrap();
        let img = bracket.subst(&refl);
        assert_eq!(img, bracket.scale(c(-1.0)));
        let landen = LetterMap::pushforward(Mobius::Landen);
        assert_eq!(linear(2, 0.0, 0.0, 1.0).subst(&landen), linear(2, 0.0, 1.0, -1.0));
    }

    #[test]
    fn coeff_out_of_range() {
        assert_eq!(TruncSeries::one(2).coeff(Word::EMPTY).unwrap(), c(1.0));
        assert_eq!(linear(2, 0.0, 1.0, 0.0).coeff(w("y")).unwrap(), c(0.0));
        assert!(matches!(
            TruncSeries::one(2).coeff(w("xyx")),
            Err(Error::OutOfRange { weight: 3, order: 2 })
        ));
    }

    #[test]
    fn render_lists_nonzero_coefficients() {
        let s = linear(2, 1.0, 0.0, -2.0);
        let text = s.render(1e-12);
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("1: 1.000000000000000e0"));
        assert!(text.contains("Y: -2.000000000000000e0"));
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = TruncSeries> {
        let len = (1usize << (order + 1)) - 1;
        proptest::collection::vec((-2i32..=2, -2i32..=2), len).prop_map(move |v| {
            let mut it = v.into_iter();
            TruncSeries::from_fn(order, |_| {
                let (re, im) = it.next().unwrap();
                Complex64::new(re as f64, im as f64)
            })
        })
    }

    proptest! {
        #[test]
        fn pushforward_composes(s in series_strategy(5), f in 0usize..6, g in 0usize..6) {
            let (f, g) = (Mobius::ALL[f], Mobius::ALL[g]);
            let lhs = s.subst(&LetterMap::pushforward(g)).subst(&LetterMap::pushforward(f));
            let rhs = s.subst(&LetterMap::pushforward(f.compose(g)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_associative_with_unit(a in series_strategy(5), b in series_strategy(5), d in series_strategy(5)) {
            let one = TruncSeries::one(5);
            prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
            prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
            let l = a.mul(&b).unwrap().mul(&d).unwrap();
            let r = a.mul(&b.mul(&d).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn subst_is_multiplicative(a in series_strategy(4), b in series_strategy(4), f in 0usize..6) {
            let m = LetterMap::pushforward(Mobius::ALL[f]);
            let l = a.mul(&b).unwrap().subst(&m);
            let r = a.subst(&m).mul(&b.subst(&m)).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn inverse_is_two_sided(a in series_strategy(4)) {
            let mut a = a;
            a.set_coeff(Word::EMPTY, Complex64::new(1.0, 0.5)).unwrap();
            let inv = a.invert().unwrap();
            let one = TruncSeries::one(4);
            prop_assert!(a.mul(&inv).unwrap().max_abs_diff(&one).unwrap() < 1e-9);
            prop_assert!(inv.mul(&a).unwrap().max_abs_diff(&one).unwrap() < 1e-9);
        }
    }
}
