//! Shuffle regularization `reg : h -> h^0`.
//!
//! Every word factors as `y^m w0 x^n` with `w0` admissible, and
//!
//! ```text
//! reg(y^m w0 x^n) = sum_{i<=m, j<=n} (-1)^(i+j) y^i ш (y^(m-i) w0 x^(n-j)) ш x^j
//! y^m w0 x^n      = sum_{i<=m, j<=n} y^i ш reg(y^(m-i) w0 x^(n-j)) ш x^j
//! ```
//!
//! The second line is the decomposition `h = h^0[x, y]` made explicit.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::words::{shuffle, Coeff, Letter, NCPoly, Word};

/// Splits `w = y^m w0 x^n` with `m`, `n` maximal; `w0` is empty or admissible.
pub fn strip(w: Word) -> (usize, Word, usize) {
    let m = w.letters().take_while(|&l| l == Letter::Y).count();
    let (_, rest) = w.split_at(m);
    let n = rest.letters().rev().take_while(|&l| l == Letter::X).count();
    let (w0, _) = rest.split_at(rest.len() - n);
    (m, w0, n)
}

fn memo() -> &'static RwLock<HashMap<Word, NCPoly>> {
    static MEMO: OnceLock<RwLock<HashMap<Word, NCPoly>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn sandwich(m: usize, w0: Word, n: usize) -> Word {
    Word::power(Letter::Y, m)
        .concat(w0)
        .concat(Word::power(Letter::X, n))
}

fn reg_uncached(w: Word) -> NCPoly {
    let (m, w0, n) = strip(w);
    if m == 0 && n == 0 {
        return NCPoly::from(w);
    }
    let mut out = NCPoly::zero();
    for i in 0..=m {
        let yi = NCPoly::from(Word::power(Letter::Y, i));
        for j in 0..=n {
            let xj = NCPoly::from(Word::power(Letter::X, j));
            let mid = NCPoly::from(sandwich(m - i, w0, n - j));
            let term = shuffle(&shuffle(&yi, &mid), &xj);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            out = &out + &term.scaled(Coeff::from_integer(sign));
        }
    }
    out
}

/// `reg` on a single word; results are memoized process-wide.
pub fn reg_word(w: Word) -> NCPoly {
    if let Some(p) = memo().read().expect("reg memo poisoned").get(&w) {
        return p.clone();
    }
    let p = reg_uncached(w);
    memo()
        .write()
        .expect("reg memo poisoned")
        .insert(w, p.clone());
    p
}

/// Linear extension of [`reg_word`].
pub fn reg(p: &NCPoly) -> NCPoly {
    p.map_linear(reg_word)
}

/// One summand `y^i ш core ш x^j` of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub i: usize,
    pub j: usize,
    pub core: NCPoly,
}

/// Decomposition of a word into shuffles of regularized cores with powers of
/// `y` (on the left) and `x` (on the right). Pieces with zero core are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    /// Sum of `y^i ш core ш x^j` over all pieces.
    pub fn reconstruct(&self) -> NCPoly {
        self.pieces.iter().fold(NCPoly::zero(), |acc, p| {
            let yi = NCPoly::from(Word::power(Letter::Y, p.i));
            let xj = NCPoly::from(Word::power(Letter::X, p.j));
            &acc + &shuffle(&shuffle(&yi, &p.core), &xj)
        })
    }

    /// The `(0, 0)` core, which equals `reg` of the decomposed word.
    pub fn constant_part(&self) -> NCPoly {
        self.pieces
            .iter()
            .find(|p| p.i == 0 && p.j == 0)
            .map(|p| p.core.clone())
            .unwrap_or_default()
    }
}

pub fn decompose(w: Word) -> Decomposition {
    let (m, w0, n) = strip(w);
    let mut pieces = Vec::new();
    for i in 0..=m {
        for j in 0..=n {
            let core = reg_word(sandwich(m - i, w0, n - j));
            if !core.is_zero() {
                pieces.push(Piece { i, j, core });
            }
        }
    }
    Decomposition { pieces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn p(s: &str) -> NCPoly {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Independent evaluation of `reg` from `reg(x) = reg(y) = 0` and the
    /// homomorphism property alone: with `u` ending in y (or empty),
    /// `u x^k ш x = (k+1) u x^(k+1) + (insertions of x inside u) x^k`,
    /// and symmetrically for a leading block of y.
    fn reg_by_elimination(word: Word) -> NCPoly {
        let (m, _, n) = strip(word);
        if n > 0 {
            let (u, _) = word.split_at(word.len() - n);
            let k = n - 1;
            let tail = Word::power(Letter::X, k);
            let mut out = NCPoly::zero();
            for pos in 0..u.len() {
                let (a, b) = u.split_at(pos);
                let v = a.pushed(Letter::X).concat(b).concat(tail);
                out = &out - &reg_by_elimination(v);
            }
            return out.scaled(Coeff::new(1, n as i128));
        }
        if m > 0 {
            let (_, u) = word.split_at(m);
            let head = Word::power(Letter::Y, m - 1);
            let mut out = NCPoly::zero();
            for pos in 1..=u.len() {
                let (a, b) = u.split_at(pos);
                let v = head.concat(a).pushed(Letter::Y).concat(b);
                out = &out - &reg_by_elimination(v);
            }
            return out.scaled(Coeff::new(1, m as i128));
        }
        NCPoly::from(word)
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip(w("yx")), (1, Word::EMPTY, 1));
        assert_eq!(strip(w("xy")), (0, w("xy"), 0));
        assert_eq!(strip(w("yxyx")), (1, w("xy"), 1));
        assert_eq!(strip(w("xx")), (0, Word::EMPTY, 2));
        assert_eq!(strip(Word::EMPTY), (0, Word::EMPTY, 0));
    }

    #[test]
    fn reg_examples() {
        assert_eq!(reg(&p("xy")), p("xy"));
        assert!(reg(&p("y")).is_zero());
        assert!(reg(&p("x")).is_zero());
        assert_eq!(reg(&p("yx")), p("-xy"));
        assert_eq!(reg(&p("1")), p("1"));
    }

    #[test]
    fn reg_matches_elimination_oracle() {
        for word in Word::all_up_to(7) {
            assert_eq!(reg_word(word), reg_by_elimination(word), "{word}");
        }
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(w("xy"));
        assert_eq!(d.pieces, vec![Piece { i: 0, j: 0, core: p("xy") }]);
        let d = decompose(w("y"));
        assert_eq!(d.pieces, vec![Piece { i: 1, j: 0, core: p("1") }]);
        let d = decompose(w("yx"));
        assert_eq!(d.pieces.len(), 2);
        assert!(d.pieces.contains(&Piece { i: 1, j: 1, core: p("1") }));
        assert!(d.pieces.contains(&Piece { i: 0, j: 0, core: p("-xy") }));
        assert_eq!(d.reconstruct(), p("yx"));
    }

    #[test]
    fn reconstruction_and_constant_part() {
        for word in Word::all_up_to(8) {
            let d = decompose(word);
            assert_eq!(d.reconstruct(), NCPoly::from(word), "{word}");
            assert_eq!(d.constant_part(), reg_word(word), "{word}");
        }
    }

    #[test]
    fn reg_fixes_admissible_words() {
        for word in Word::all_up_to(8).filter(Word::is_admissible) {
            assert_eq!(reg_word(word), NCPoly::from(word));
        }
    }

    #[test]
    fn reg_output_is_admissible() {
        for word in Word::all_up_to(8) {
            assert!(reg_word(word).terms().all(|(v, _)| v.is_admissible()), "{word}");
        }
    }
}
