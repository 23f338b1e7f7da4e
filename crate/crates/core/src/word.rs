//! Letters and words over the four Gaussian ensembles.
//!
//! A [`Letter`] is a formal symbol `G_r`, `R_r`, `H_r` or `S_r` decorated by a
//! transpose flag and an entrywise-conjugation flag. The conjugate transpose
//! `*` is the pair `(transposed, conjugated) = (true, true)`. Letters are
//! always stored in normal form:
//!
//! - real Ginibre and GOE letters are never conjugated,
//! - GUE letters are never transposed (`H^t` is rewritten as `H~`),
//! - GOE letters are never transposed.
//!
//! The textual grammar (whitespace between tokens is ignored):
//!
//! ```text
//! word     := term+
//! term     := atom ("^" integer)?
//! atom     := letter | "(" word ")"
//! letter   := ("G" | "R" | "H" | "S") integer modifier*
//! modifier := "*" | "t" | "~"
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ensemble {
    GinibreComplex,
    GinibreReal,
    Gue,
    Goe,
}

impl Ensemble {
    pub fn symbol(self) -> char {
        match self {
            Ensemble::GinibreComplex => 'G',
            Ensemble::GinibreReal => 'R',
            Ensemble::Gue => 'H',
            Ensemble::Goe => 'S',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            'G' => Some(Ensemble::GinibreComplex),
            'R' => Some(Ensemble::GinibreReal),
            'H' => Some(Ensemble::Gue),
            'S' => Some(Ensemble::Goe),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub ensemble: Ensemble,
    pub index: u32,
    pub transposed: bool,
    pub conjugated: bool,
}

impl Letter {
    /// Builds a letter and brings it to normal form.
    pub fn new(ensemble: Ensemble, index: u32, transposed: bool, conjugated: bool) -> Self {
        Letter {
            ensemble,
            index,
            transposed,
            conjugated,
        }
        .normalized()
    }

    pub fn g(index: u32) -> Self {
        Letter::new(Ensemble::GinibreComplex, index, false, false)
    }

    pub fn g_star(index: u32) -> Self {
        Letter::new(Ensemble::GinibreComplex, index, true, true)
    }

    pub fn g_bar(index: u32) -> Self {
        Letter::new(Ensemble::GinibreComplex, index, false, true)
    }

    pub fn g_t(index: u32) -> Self {
        Letter::new(Ensemble::GinibreComplex, index, true, false)
    }

    fn normalized(mut self) -> Self {
        match self.ensemble {
            Ensemble::GinibreComplex => {}
            Ensemble::GinibreReal => self.conjugated = false,
            Ensemble::Gue => {
                // H^t = conj(H) because H is Hermitian.
                if self.transposed {
                    self.transposed = false;
                    self.conjugated = !self.conjugated;
                }
            }
            Ensemble::Goe => {
                self.transposed = false;
                self.conjugated = false;
            }
        }
        self
    }

    /// The conjugate transpose of the letter.
    pub fn adjoint(self) -> Self {
        Letter::new(self.ensemble, self.index, !self.transposed, !self.conjugated)
    }

    pub fn is_plain(self) -> bool {
        self.ensemble == Ensemble::GinibreComplex && !self.transposed && !self.conjugated
    }

    /// The letter's type: ensemble together with its index.
    pub fn kind(self) -> (Ensemble, u32) {
        (self.ensemble, self.index)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.ensemble.symbol(), self.index)?;
        match (self.transposed, self.conjugated) {
            (true, true) => f.write_str("*"),
            (true, false) => f.write_str("t"),
            (false, true) => f.write_str("~"),
            (false, false) => Ok(()),
        }
    }
}

/// A non-empty sequence of normalized letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self> {
        Word::new(letters)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters.into_iter().map(Letter::normalized).collect()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` repeated `k` times; `k` must be positive.
    pub fn pow(&self, k: usize) -> Word {
        assert!(k >= 1, "word power must be positive");
        Word(self.0.repeat(k))
    }

    /// Reverses the word and takes the conjugate transpose of every letter.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.adjoint()).collect())
    }

    /// Largest `k` such that the word is a `k`-th power.
    pub fn coperiod(&self) -> usize {
        let n = self.0.len();
        let fail = prefix_function(&self.0);
        let period = n - fail[n - 1];
        if n.is_multiple_of(period) {
            n / period
        } else {
            1
        }
    }

    /// Lexicographically least rotation (Booth's algorithm).
    pub fn cyclic_canonical(&self) -> Word {
        let start = least_rotation(&self.0);
        let mut letters = Vec::with_capacity(self.0.len());
        letters.extend_from_slice(&self.0[start..]);
        letters.extend_from_slice(&self.0[..start]);
        Word(letters)
    }

    pub fn is_star_free(&self) -> bool {
        self.0.iter().all(|l| l.is_plain())
    }

    /// Complex letters appear as often conjugated as not (per index); every
    /// other ensemble appears an even number of times per index.
    pub fn is_balanced(&self) -> bool {
        let mut counts: std::collections::BTreeMap<(Ensemble, u32), (usize, usize)> =
            Default::default();
        for l in &self.0 {
            let e = counts.entry(l.kind()).or_default();
            if l.conjugated {
                e.1 += 1;
            } else {
                e.0 += 1;
            }
        }
        counts.iter().all(|(&(ens, _), &(plain, conj))| match ens {
            Ensemble::GinibreComplex => plain == conj,
            _ => (plain + conj) % 2 == 0,
        })
    }

    pub fn is_star_stable(&self) -> bool {
        self.cyclic_canonical() == self.star().cyclic_canonical()
    }

    pub fn is_complex_ginibre(&self) -> bool {
        self.0.iter().all(|l| l.ensemble == Ensemble::GinibreComplex)
    }
}

/// `true` when the two words are not rotations of each other.
pub fn trace_distinct(a: &Word, b: &Word) -> bool {
    a.cyclic_canonical() != b.cyclic_canonical()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

fn prefix_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let at = |i: usize| &s[i % n];
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = fail[j - k - 1];
        while i != -1 && at(j) != at(k + i as usize + 1) {
            if at(j) < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && at(j) != at(k + i.wrapping_add(1) as usize) {
            if at(j) < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            chars,
            pos: 0,
            text,
        }
    }

    fn parse(mut self) -> Result<Word> {
        if self.chars.is_empty() {
            return Err(self.error("a letter"));
        }
        let letters = self.word()?;
        if self.pos < self.chars.len() {
            return Err(self.error("a letter, '(' or end of input"));
        }
        Word::new(letters)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.text.len())
    }

    fn error(&self, expected: &str) -> Error {
        Error::Syntax {
            position: self.offset(),
            expected: expected.to_string(),
        }
    }

    fn word(&mut self) -> Result<Vec<Letter>> {
        let mut letters = Vec::new();
        let mut terms = 0;
        while let Some(c) = self.peek() {
            if c == '(' || Ensemble::from_symbol(c).is_some() {
                letters.extend(self.term()?);
                terms += 1;
            } else {
                break;
            }
        }
        if terms == 0 {
            return Err(self.error("a letter or '('"));
        }
        Ok(letters)
    }

    fn term(&mut self) -> Result<Vec<Letter>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            let k = usize::try_from(k).map_err(|_| self.error("a smaller exponent"))?;
            if base.len().saturating_mul(k) > 1 << 20 {
                return Err(self.error("a smaller exponent"));
            }
            Ok(base.repeat(k))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Vec<Letter>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                if self.peek() != Some(')') {
                    return Err(self.error("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if Ensemble::from_symbol(c).is_some() => Ok(vec![self.letter()?]),
            _ => Err(self.error("a letter or '('")),
        }
    }

    fn letter(&mut self) -> Result<Letter> {
        let ensemble = self
            .peek()
            .and_then(Ensemble::from_symbol)
            .ok_or_else(|| self.error("one of G, R, H, S"))?;
        self.pos += 1;
        let index = self.integer()?;
        if index == 0 {
            return Err(Error::Syntax {
                position: self.offset().saturating_sub(1),
                expected: "a positive letter index".into(),
            });
        }
        let index = u32::try_from(index).map_err(|_| self.error("a smaller letter index"))?;
        let (mut transposed, mut conjugated) = (false, false);
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    transposed = !transposed;
                    conjugated = !conjugated;
                }
                't' => transposed = !transposed,
                '~' => conjugated = !conjugated,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Letter::new(ensemble, index, transposed, conjugated))
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| self.error("a smaller integer"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("an integer"));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("G1 G2*").letters(), &[Letter::g(1), Letter::g_star(2)]);
        assert_eq!(w("(G1 G2)^2"), w("G1 G2 G1 G2"));
        let h = w("H3t").letters()[0];
        assert_eq!(h, Letter::new(Ensemble::Gue, 3, false, true));
        assert!(!h.transposed && h.conjugated);
    }

    #[test]
    fn normalization_of_self_adjoint_ensembles() {
        assert_eq!(w("H1*"), w("H1"));
        assert_eq!(w("S2t"), w("S2"));
        assert_eq!(w("S2*"), w("S2"));
        assert_eq!(w("R1~"), w("R1"));
        assert_eq!(w("R1*"), w("R1t"));
        assert_eq!(w("G1**"), w("G1"));
        assert_eq!(w("G1t~"), w("G1*"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Word::parse("(G1)^0"), Err(Error::EmptyWord)));
        assert!(matches!(
            Word::parse("G1 X"),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(Word::parse("G"), Err(Error::Syntax { .. })));
        assert!(matches!(Word::parse("G0"), Err(Error::Syntax { .. })));
        assert!(matches!(Word::parse("(G1"), Err(Error::Syntax { .. })));
        assert!(matches!(Word::parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(Word::parse("G1^"), Err(Error::Syntax { .. })));
        // A zero power inside a longer word is fine.
        assert_eq!(w("(G1)^0 G2"), w("G2"));
    }

    #[test]
    fn star_examples() {
        assert_eq!(w("G1 G2").star(), w("G2* G1*"));
        assert_eq!(w("G1 G1*").star(), w("G1 G1*"));
        assert_eq!(w("S1 S2").star(), w("S2 S1"));
        assert_eq!(w("G1~").star(), w("G1t"));
        assert_eq!(w("H1 H2~").star(), w("H2~ H1"));
    }

    #[test]
    fn coperiod_examples() {
        assert_eq!(w("G1 G2 G1 G2").coperiod(), 2);
        assert_eq!(w("G1 G1 G2").coperiod(), 1);
        assert_eq!(w("G1^6").coperiod(), 6);
        assert_eq!(w("G1 G1*").coperiod(), 1);
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(w("G2 G1").cyclic_canonical(), w("G1 G2").cyclic_canonical());
        assert!(!trace_distinct(&w("G1 G2"), &w("G2 G1")));
        assert!(trace_distinct(&w("G1"), &w("G1*")));
    }

    #[test]
    fn predicate_examples() {
        assert!(w("G1 G2").is_star_free());
        assert!(!w("G1 G2*").is_star_free());
        assert!(w("G1 G1*").is_balanced());
        assert!(!w("G1 G1").is_balanced());
        assert!(w("S1 S1").is_balanced());
        assert!(!w("R1 R1 R1").is_balanced());
        assert!(w("G1 G1*").is_star_stable());
        assert!(!w("G1 G2").is_star_stable());
        // w* is a rotation of w.
        assert!(w("G1* G2 G2* G1").is_star_stable());
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        (0..4u8, 1..4u32, any::<bool>(), any::<bool>()).prop_map(|(e, i, t, c)| {
            let ens = [
                Ensemble::GinibreComplex,
                Ensemble::GinibreReal,
                Ensemble::Gue,
                Ensemble::Goe,
            ][e as usize];
            Letter::new(ens, i, t, c)
        })
    }

    pub(crate) fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(arb_letter(), 1..=max).prop_map(|v| Word::new(v).unwrap())
    }

    fn naive_canonical(w: &Word) -> Word {
        let n = w.len();
        (0..n)
            .map(|s| {
                let mut v = w.letters()[s..].to_vec();
                v.extend_from_slice(&w.letters()[..s]);
                Word::new(v).unwrap()
            })
            .min()
            .unwrap()
    }

    fn naive_coperiod(w: &Word) -> usize {
        let n = w.len();
        (1..=n)
            .rev()
            .find(|k| n.is_multiple_of(*k) && w.letters()[..n / k].repeat(*k) == w.letters())
            .unwrap()
    }

    proptest! {
        #[test]
        fn star_is_involution(word in arb_word(8)) {
            prop_assert_eq!(word.star().star(), word);
        }

        #[test]
        fn coperiod_of_powers(word in arb_word(6), k in 1usize..4) {
            prop_assert_eq!(word.pow(k).coperiod(), k * word.coperiod());
            prop_assert_eq!(word.star().coperiod(), word.coperiod());
            prop_assert_eq!(word.coperiod(), naive_coperiod(&word));
        }

        #[test]
        fn canonical_rotation(word in arb_word(8), r in 0usize..8) {
            let c = word.cyclic_canonical();
            prop_assert_eq!(c.cyclic_canonical(), c.clone());
            prop_assert_eq!(&c, &naive_canonical(&word));
            let r = r % word.len();
            let mut rot = word.letters()[r..].to_vec();
            rot.extend_from_slice(&word.letters()[..r]);
            prop_assert_eq!(Word::new(rot).unwrap().cyclic_canonical(), c);
        }

        #[test]
        fn render_round_trip(word in arb_word(8)) {
            prop_assert_eq!(Word::parse(&word.to_string()).unwrap(), word);
        }
    }
}
