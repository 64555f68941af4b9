//! Exact arithmetic in the noncommutative polynomial algebra `Q<x, y>`.
//!
//! Words are packed into a `u64` (x = 0, y = 1) with the first letter in the
//! most significant of the `len` low bits, so that the derived ordering on
//! `(len, bits)` is graded lexicographic order with `x < y`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational coefficient.
pub type Coeff = Ratio<i128>;

/// Longest word that fits the packed representation.
pub const MAX_WEIGHT: usize = 63;

/// Default weight cap for exhaustive exact-algebra sweeps.
pub const DEFAULT_WEIGHT_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    fn bit(self) -> u64 {
        match self {
            Letter::X => 0,
            Letter::Y => 1,
        }
    }

    fn from_bit(b: u64) -> Self {
        if b & 1 == 0 {
            Letter::X
        } else {
            Letter::Y
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// A monomial over `{x, y}`; the empty word is the unit `1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    /// Word of length `len` whose letters are the binary digits of `index`
    /// (most significant first). Enumerating `0..2^len` gives every word of
    /// that weight in lexicographic order.
    pub fn from_index(len: usize, index: u64) -> Word {
        assert!(len <= MAX_WEIGHT, "word too long");
        debug_assert!(len == 64 || index < (1u64 << len));
        Word {
            len: len as u8,
            bits: index,
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        letters.into_iter().fold(Word::EMPTY, |w, l| w.pushed(l))
    }

    pub fn power(letter: Letter, n: usize) -> Word {
        Word::from_letters(std::iter::repeat_n(letter, n))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn weight(&self) -> usize {
        self.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed letters, usable as a dense index among words of equal weight.
    pub fn index(&self) -> u64 {
        self.bits
    }

    pub fn letter(&self, i: usize) -> Letter {
        assert!(i < self.len());
        Letter::from_bit(self.bits >> (self.len() - 1 - i))
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn first(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.letter(0))
    }

    pub fn last(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| Letter::from_bit(self.bits))
    }

    pub fn pushed(self, l: Letter) -> Word {
        assert!(self.len() < MAX_WEIGHT, "word too long");
        Word {
            len: self.len + 1,
            bits: (self.bits << 1) | l.bit(),
        }
    }

    pub fn concat(self, other: Word) -> Word {
        assert!(self.len() + other.len() <= MAX_WEIGHT, "word too long");
        Word {
            len: self.len + other.len,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    /// Splits into the prefix of length `p` and the remaining suffix.
    pub fn split_at(self, p: usize) -> (Word, Word) {
        assert!(p <= self.len());
        let s = self.len() - p;
        let mask = if s == 0 { 0 } else { (1u64 << s) - 1 };
        (
            Word {
                len: p as u8,
                bits: self.bits >> s,
            },
            Word {
                len: s as u8,
                bits: self.bits & mask,
            },
        )
    }

    pub fn reversed(self) -> Word {
        Word::from_letters(self.letters().rev())
    }

    /// Exchanges x and y letterwise.
    pub fn swapped(self) -> Word {
        let mask = if self.len == 0 {
            0
        } else {
            u64::MAX >> (64 - self.len as u32)
        };
        Word {
            len: self.len,
            bits: !self.bits & mask,
        }
    }

    pub fn count(&self, l: Letter) -> usize {
        let ones = self.bits.count_ones() as usize;
        match l {
            Letter::Y => ones,
            Letter::X => self.len() - ones,
        }
    }

    /// Member of the basis of `h^0`: empty, or starts with x and ends with y.
    pub fn is_admissible(&self) -> bool {
        self.is_empty() || (self.first() == Some(Letter::X) && self.last() == Some(Letter::Y))
    }

    /// Member of the basis of `h^1`: empty, or ends with y.
    pub fn is_h1(&self) -> bool {
        self.is_empty() || self.last() == Some(Letter::Y)
    }

    /// All words of weight exactly `n`, in lexicographic order.
    pub fn all_of_weight(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 64);
        (0..1u64 << n).map(move |i| Word::from_index(n, i))
    }

    /// All words of weight at most `n`, graded.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_weight)
    }

    /// Uppercase rendering used for the dual letters `X`, `Y`.
    pub fn to_upper_string(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.letters()
            .map(|l| match l {
                Letter::X => 'X',
                Letter::Y => 'Y',
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in self.letters() {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::EMPTY);
        }
        if s.len() > MAX_WEIGHT {
            return Err(Error::Parse(format!("word longer than {MAX_WEIGHT} letters")));
        }
        s.chars()
            .map(|c| match c {
                'x' | 'X' => Ok(Letter::X),
                'y' | 'Y' => Ok(Letter::Y),
                other => Err(Error::Parse(format!("unexpected letter {other:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }
}

/// Composition `(k1, ..., km)` of positive integers, in bijection with the
/// nonempty words `x^{k1-1} y ... x^{km-1} y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Parse(format!("invalid multi-index {parts:?}")));
        }
        Ok(MultiIndex(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_admissible(&self) -> bool {
        self.0[0] >= 2
    }

    pub fn to_word(&self) -> Word {
        self.0.iter().fold(Word::EMPTY, |w, &k| {
            w.concat(Word::power(Letter::X, k as usize - 1)).pushed(Letter::Y)
        })
    }

    pub fn from_word(w: Word) -> Result<Self> {
        if w.is_empty() || w.last() != Some(Letter::Y) {
            return Err(Error::NotInH1(w.to_string()));
        }
        let mut parts = Vec::new();
        let mut k = 1;
        for l in w.letters() {
            match l {
                Letter::X => k += 1,
                Letter::Y => {
                    parts.push(k);
                    k = 1;
                }
            }
        }
        Ok(MultiIndex(parts))
    }

    /// All compositions of `weight` into exactly `depth` positive parts.
    pub fn compositions(weight: usize, depth: usize) -> Vec<MultiIndex> {
        fn rec(rest: usize, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if slots == 0 {
                if rest == 0 {
                    out.push(MultiIndex(cur.clone()));
                }
                return;
            }
            for k in 1..=rest.saturating_sub(slots - 1) {
                cur.push(k as u32);
                rec(rest - k, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if depth >= 1 && depth <= weight {
            rec(weight, depth, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Admissible indices (`k1 >= 2`) of the given weight and depth.
    pub fn admissible(weight: usize, depth: usize) -> Vec<MultiIndex> {
        Self::compositions(weight, depth)
            .into_iter()
            .filter(|k| k.is_admissible())
            .collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad index part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(parts)
    }
}

/// Finitely supported map from words to rationals; zero coefficients are
/// never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Coeff>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::from(Word::EMPTY)
    }

    pub fn term(c: Coeff, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn letter(l: Letter) -> Self {
        NCPoly::from(Word::from_letters([l]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).copied().unwrap_or_else(Coeff::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scaled(&self, c: Coeff) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, a)| (*w, a * c)).collect(),
        }
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(Word::weight).max()
    }

    /// Restriction to the words of weight `n`.
    pub fn graded_part(&self, n: usize) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() == n)
                .map(|(w, c)| (*w, *c))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(Word::weight);
        match ws.next() {
            None => true,
            Some(n) => ws.all(|m| m == n),
        }
    }

    /// Applies a linear map defined on words.
    pub fn map_linear(&self, mut f: impl FnMut(Word) -> NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            for (v, d) in f(*w).terms {
                out.add_term(v, c * d);
            }
        }
        out
    }

    fn from_counts(counts: HashMap<Word, i128>) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, n) in counts {
            out.add_term(w, Coeff::from_integer(n));
        }
        out
    }
}

impl From<Word> for NCPoly {
    fn from(w: Word) -> Self {
        NCPoly::term(Coeff::one(), w)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, *c);
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, -*c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scaled(-Coeff::one())
    }
}

/// Concatenation product.
impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        concat(self, rhs)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly({self})")
    }
}

fn parse_coeff(s: &str) -> Result<Coeff> {
    let bad = |e: std::num::ParseIntError| Error::Parse(format!("bad coefficient {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i128 = d.trim().parse().map_err(bad)?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Coeff::new(n.trim().parse().map_err(bad)?, d))
        }
        None => Ok(Coeff::from_integer(s.trim().parse().map_err(bad)?)),
    }
}

/// Parses signed sums such as `2*xyy + yxy - xy` or `-3/2*xy + 1`.
impl FromStr for NCPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<NCPoly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = NCPoly::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let (c, w) = match term.split_once('*') {
                Some((c, w)) => (parse_coeff(c)?, w.parse::<Word>()?),
                None if term.starts_with(|c: char| c.is_ascii_digit()) && term != "1" => {
                    (parse_coeff(term)?, Word::EMPTY)
                }
                None => (Coeff::one(), term.parse::<Word>()?),
            };
            out.add_term(w, c * Coeff::from_integer(sign));
            rest = tail;
        }
        Ok(out)
    }
}

/// Shuffle product of two words, built by dynamic programming over prefix
/// lengths: the shuffles of `u[..i]` and `v[..j]` end either in `u[i-1]` or
/// in `v[j-1]`.
pub fn shuffle_words(u: Word, v: Word) -> NCPoly {
    assert!(u.len() + v.len() <= MAX_WEIGHT, "shuffle result too long");
    let b = v.len();
    let ul: Vec<Letter> = u.letters().collect();
    let vl: Vec<Letter> = v.letters().collect();
    // row[j] holds shuffles of u[..i] and v[..j]
    let mut row: Vec<HashMap<Word, i128>> = Vec::with_capacity(b + 1);
    let mut acc = HashMap::from([(Word::EMPTY, 1i128)]);
    row.push(acc.clone());
    for &l in &vl {
        acc = acc.into_iter().map(|(w, c)| (w.pushed(l), c)).collect();
        row.push(acc.clone());
    }
    for &lu in &ul {
        let mut next: Vec<HashMap<Word, i128>> = Vec::with_capacity(b + 1);
        for j in 0..=b {
            let mut cell: HashMap<Word, i128> = HashMap::new();
            for (w, c) in &row[j] {
                *cell.entry(w.pushed(lu)).or_insert(0) += c;
            }
            if j > 0 {
                for (w, c) in &next[j - 1] {
                    *cell.entry(w.pushed(vl[j - 1])).or_insert(0) += c;
                }
            }
            next.push(cell);
        }
        row = next;
    }
    NCPoly::from_counts(row.pop().unwrap_or_default())
}

/// Bilinear shuffle product.
pub fn shuffle(p: &NCPoly, q: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            let ab = a * b;
            for (w, c) in shuffle_words(*u, *v).terms {
                out.add_term(w, ab * c);
            }
        }
    }
    out
}

/// Shuffle of several polynomials, left to right; the empty product is `1`.
pub fn shuffle_all<'a>(ps: impl IntoIterator<Item = &'a NCPoly>) -> NCPoly {
    ps.into_iter().fold(NCPoly::one(), |acc, p| shuffle(&acc, p))
}

/// Bilinear concatenation product.
pub fn concat(p: &NCPoly, q: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            out.add_term(u.concat(*v), a * b);
        }
    }
    out
}

/// Antipode `S`: reverses every word and multiplies by `(-1)^weight`.
pub fn antipode(p: &NCPoly) -> NCPoly {
    p.map_linear(|w| {
        let sign = if w.len() % 2 == 0 { 1 } else { -1 };
        NCPoly::term(Coeff::from_integer(sign), w.reversed())
    })
}

/// Duality involution: reverse each word and exchange x and y.
pub fn tau(p: &NCPoly) -> NCPoly {
    p.map_linear(|w| NCPoly::from(tau_word(w)))
}

pub fn tau_word(w: Word) -> Word {
    w.reversed().swapped()
}

/// The six linear fractional transformations permuting `{0, 1, oo}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mobius {
    /// `z`
    Identity,
    /// `1 - z`
    OneMinus,
    /// `1 / z`
    Inverse,
    /// `z / (z - 1)`
    Landen,
    /// `1 / (1 - z)`
    InverseOneMinus,
    /// `(z - 1) / z`
    OneMinusInverse,
}

impl Mobius {
    pub const ALL: [Mobius; 6] = [
        Mobius::Identity,
        Mobius::OneMinus,
        Mobius::Inverse,
        Mobius::Landen,
        Mobius::InverseOneMinus,
        Mobius::OneMinusInverse,
    ];

    /// `[[a, b], [c, d]]` for `z -> (a z + b) / (c z + d)`.
    fn pgl2(self) -> [[i64; 2]; 2] {
        match self {
            Mobius::Identity => [[1, 0], [0, 1]],
            Mobius::OneMinus => [[-1, 1], [0, 1]],
            Mobius::Inverse => [[0, 1], [1, 0]],
            Mobius::Landen => [[1, 0], [1, -1]],
            Mobius::InverseOneMinus => [[0, 1], [-1, 1]],
            Mobius::OneMinusInverse => [[1, -1], [1, 0]],
        }
    }

    fn from_pgl2(m: [[i64; 2]; 2]) -> Mobius {
        *Mobius::ALL
            .iter()
            .find(|f| {
                let n = f.pgl2();
                // proportional as 4-vectors
                let a = [m[0][0], m[0][1], m[1][0], m[1][1]];
                let b = [n[0][0], n[0][1], n[1][0], n[1][1]];
                (0..4).all(|i| (0..4).all(|j| a[i] * b[j] == a[j] * b[i]))
            })
            .expect("the six transformations form a group")
    }

    /// `self ∘ other`, i.e. `z -> self(other(z))`.
    pub fn compose(self, other: Mobius) -> Mobius {
        let (f, g) = (self.pgl2(), other.pgl2());
        let mut m = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = (0..2).map(|k| f[i][k] * g[k][j]).sum();
            }
        }
        Mobius::from_pgl2(m)
    }

    pub fn inverse(self) -> Mobius {
        *Mobius::ALL
            .iter()
            .find(|g| self.compose(**g) == Mobius::Identity)
            .expect("group inverse")
    }

    pub fn apply(self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Mobius::Identity => z,
            Mobius::OneMinus => one - z,
            Mobius::Inverse => one / z,
            Mobius::Landen => z / (z - one),
            Mobius::InverseOneMinus => one / (one - z),
            Mobius::OneMinusInverse => (z - one) / z,
        }
    }

    /// Images `(f*(x), f*(y))` as coefficient pairs over `(x, y)`, from the
    /// pull-backs of `dlog z` and `-dlog(1 - z)`.
    pub fn pullback(self) -> ([i64; 2], [i64; 2]) {
        match self {
            Mobius::Identity => ([1, 0], [0, 1]),
            Mobius::OneMinus => ([0, -1], [-1, 0]),
            Mobius::Inverse => ([-1, 0], [1, 1]),
            Mobius::Landen => ([1, 1], [0, -1]),
            Mobius::InverseOneMinus => ([0, 1], [-1, -1]),
            Mobius::OneMinusInverse => ([-1, -1], [1, 0]),
        }
    }

    /// The matrix `A(f)` with `(f*(x), f*(y)) = (x, y) A(f)`.
    pub fn matrix(self) -> [[i64; 2]; 2] {
        let (fx, fy) = self.pullback();
        [[fx[0], fy[0]], [fx[1], fy[1]]]
    }

    pub fn label(self) -> &'static str {
        match self {
            Mobius::Identity => "z",
            Mobius::OneMinus => "1-z",
            Mobius::Inverse => "1/z",
            Mobius::Landen => "z/(z-1)",
            Mobius::InverseOneMinus => "1/(1-z)",
            Mobius::OneMinusInverse => "(z-1)/z",
        }
    }
}

/// Letter substitution `f*` on `h`, extended multiplicatively over
/// concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstRule {
    pub label: Mobius,
    pub image_of_x: NCPoly,
    pub image_of_y: NCPoly,
}

impl SubstRule {
    pub fn new(label: Mobius) -> Self {
        let lin = |c: [i64; 2]| {
            let mut p = NCPoly::zero();
            p.add_term(Word::from_letters([Letter::X]), Coeff::from_integer(c[0].into()));
            p.add_term(Word::from_letters([Letter::Y]), Coeff::from_integer(c[1].into()));
            p
        };
        let (fx, fy) = label.pullback();
        SubstRule {
            label,
            image_of_x: lin(fx),
            image_of_y: lin(fy),
        }
    }

    pub fn image(&self, l: Letter) -> &NCPoly {
        match l {
            Letter::X => &self.image_of_x,
            Letter::Y => &self.image_of_y,
        }
    }
}

pub fn letter_subst_word(w: Word, r: &SubstRule) -> NCPoly {
    w.letters()
        .fold(NCPoly::one(), |acc, l| concat(&acc, r.image(l)))
}

pub fn letter_subst(p: &NCPoly, r: &SubstRule) -> NCPoly {
    p.map_linear(|w| letter_subst_word(w, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NCPoly {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Brute force: choose which positions of the result carry `u`'s letters.
    fn shuffle_by_positions(u: Word, v: Word) -> NCPoly {
        let n = u.len() + v.len();
        let mut out = NCPoly::zero();
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != u.len() {
                continue;
            }
            let (mut iu, mut iv) = (0, 0);
            let mut word = Word::EMPTY;
            for pos in 0..n {
                if mask >> pos & 1 == 1 {
                    word = word.pushed(u.letter(iu));
                    iu += 1;
                } else {
                    word = word.pushed(v.letter(iv));
                    iv += 1;
                }
            }
            out.add_term(word, Coeff::one());
        }
        out
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle(&p("x"), &p("y")), p("xy + yx"));
        assert_eq!(shuffle(&p("x"), &p("x")), p("2*xx"));
        assert_eq!(shuffle(&p("xy"), &p("y")), p("2*xyy + yxy"));
        assert_eq!(shuffle(&p("1"), &p("xy")), p("xy"));
    }

    #[test]
    fn shuffle_matches_position_enumeration() {
        for u in Word::all_up_to(4) {
            for v in Word::all_up_to(3) {
                assert_eq!(shuffle_words(u, v), shuffle_by_positions(u, v), "{u} ш {v}");
            }
        }
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&p("x"), &p("y")), p("xy"));
        assert_eq!(concat(&p("1"), &p("xyx")), p("xyx"));
        assert_eq!(concat(&p("xy"), &p("y")), p("xyy"));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&p("xy")), p("yx"));
        assert_eq!(antipode(&p("x")), p("-x"));
        assert_eq!(antipode(&p("xxy")), p("-yxx"));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&p("xy")), p("xy"));
        assert_eq!(tau(&p("xxy")), p("xyy"));
        assert_eq!(tau(&p("1")), p("1"));
    }

    #[test]
    fn tau_preserves_admissible_words() {
        for w in Word::all_up_to(8).filter(Word::is_admissible) {
            assert!(tau_word(w).is_admissible(), "{w}");
            assert_eq!(tau_word(tau_word(w)), w);
        }
    }

    #[test]
    fn letter_subst_examples() {
        let landen = SubstRule::new(Mobius::Landen);
        assert_eq!(letter_subst(&p("xy"), &landen), p("-xy - yy"));
        let refl = SubstRule::new(Mobius::OneMinus);
        assert_eq!(letter_subst(&p("xy"), &refl), p("yx"));
        let id = SubstRule::new(Mobius::Identity);
        assert_eq!(letter_subst(&p("3*xyx - yy + 1"), &id), p("3*xyx - yy + 1"));
    }

    #[test]
    fn substitution_respects_composition() {
        // (f∘g)* = g* ∘ f*
        for f in Mobius::ALL {
            for g in Mobius::ALL {
                let fg = SubstRule::new(f.compose(g));
                let (rf, rg) = (SubstRule::new(f), SubstRule::new(g));
                for word in Word::all_up_to(4) {
                    let lhs = letter_subst(&letter_subst(&NCPoly::from(word), &rf), &rg);
                    assert_eq!(lhs, letter_subst(&NCPoly::from(word), &fg), "{f:?} {g:?} {word}");
                }
            }
        }
    }

    #[test]
    fn mobius_group_structure() {
        let z = Complex64::new(0.31, 0.17);
        for f in Mobius::ALL {
            for g in Mobius::ALL {
                let lhs = f.compose(g).apply(z);
                let rhs = f.apply(g.apply(z));
                assert!((lhs - rhs).norm() < 1e-12);
            }
            assert!((f.inverse().apply(f.apply(z)) - z).norm() < 1e-12);
        }
        // braid relation 1/z = (1-z)∘(z/(z-1))∘(1-z) = (z/(z-1))∘(1-z)∘(z/(z-1))
        let (s, l) = (Mobius::OneMinus, Mobius::Landen);
        assert_eq!(s.compose(l).compose(s), Mobius::Inverse);
        assert_eq!(l.compose(s).compose(l), Mobius::Inverse);
    }

    #[test]
    fn word_index_dictionary() {
        assert_eq!(MultiIndex::from_word(w("xy")).unwrap().parts(), &[2]);
        assert_eq!(MultiIndex::from_word(w("xyy")).unwrap().parts(), &[2, 1]);
        assert_eq!(MultiIndex::from_word(w("y")).unwrap().parts(), &[1]);
        assert!(matches!(MultiIndex::from_word(w("yx")), Err(Error::NotInH1(_))));
        assert!(MultiIndex::from_word(Word::EMPTY).is_err());
        for word in Word::all_up_to(8).filter(|w| !w.is_empty() && w.is_h1()) {
            assert_eq!(MultiIndex::from_word(word).unwrap().to_word(), word);
        }
        let k: MultiIndex = "3,1".parse().unwrap();
        assert_eq!(k.to_word(), w("xxyy"));
        assert_eq!(k.to_string(), "3,1");
    }

    #[test]
    fn admissible_counts() {
        for n in 2..=9 {
            for r in 1..n {
                let expected = binom(n - 2, r - 1);
                assert_eq!(MultiIndex::admissible(n, r).len(), expected);
            }
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn poly_text_round_trip() {
        let q = p("2*xyy + yxy - xy");
        assert_eq!(q.to_string(), "-xy + 2*xyy + yxy");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(p("-3/2*xy + 1").to_string(), "1 - 3/2*xy");
        assert_eq!(NCPoly::zero().to_string(), "0");
        assert!("2*xz".parse::<NCPoly>().is_err());
        assert!("x +".parse::<NCPoly>().is_err());
    }

    #[test]
    fn word_packing() {
        let word = w("xyyxy");
        assert_eq!(word.to_string(), "xyyxy");
        let (a, b) = word.split_at(2);
        assert_eq!((a.to_string(), b.to_string()), ("xy".into(), "yxy".into()));
        assert_eq!(a.concat(b), word);
        assert_eq!(word.reversed().to_string(), "yxyyx");
        assert_eq!(word.swapped().to_string(), "yxxyx");
        assert!(w("xy") < w("yx"));
        assert!(w("yy") < w("xxx"));
    }
}
