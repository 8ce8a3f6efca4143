//! Freely reduced words in a free group.

use std::fmt;
use std::ops::Mul;

use num_traits::ToPrimitive;

use crate::{Error, Int, Result};

/// A freely reduced word. Letter `k > 0` is generator `k - 1`, letter `-k` its
/// inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

/// Maximum length a power may expand to.
const MAX_EXPANSION: usize = 1 << 24;

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as i32 + 1])
    }

    pub fn inverse_generator(index: usize) -> Self {
        Word(vec![-(index as i32 + 1)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "0 is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let k = n.unsigned_abs() as usize;
        Word::from_letters(std::iter::repeat_n(base.0, k).flatten())
    }

    /// Power with an arbitrary-precision exponent, refusing absurd lengths.
    pub fn pow_int(&self, n: &Int) -> Result<Self> {
        if self.is_identity() {
            return Ok(Word::identity());
        }
        let small = n
            .to_i64()
            .filter(|k| (k.unsigned_abs() as usize).saturating_mul(self.len()) <= MAX_EXPANSION)
            .ok_or_else(|| Error::ExponentTooLarge(n.clone()))?;
        Ok(self.pow(small))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a * b * a.inverse() * b.inverse()
    }

    pub fn conjugate_by(&self, g: &Word) -> Self {
        g * self * g.inverse()
    }

    /// Removes cancelling letters at the two ends.
    pub fn cyclically_reduced(&self) -> Self {
        let w = &self.0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    /// The image in `Z^generators`.
    pub fn exponent_sums(&self, generators: usize) -> Vec<Int> {
        let mut v = vec![0i64; generators];
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            v[g] += l.signum() as i64;
        }
        v.into_iter().map(Int::from).collect()
    }

    /// Largest generator index occurring, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(rhs.0.iter()).copied())
    }
}

impl Mul<&Word> for Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        &self * rhs
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

/// Writes a word with lowercase generator names and uppercase inverses;
/// the identity is written `1`.
pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for &l in &self.word.0 {
            let name = &self.names[l.unsigned_abs() as usize - 1];
            if l > 0 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{}", name.to_uppercase())?;
            }
        }
        Ok(())
    }
}

/// Parses the textual word syntax.
///
/// ```text
/// word  := item*
/// item  := atom ('^' integer)?
/// atom  := letter | '[' word ',' word ']' | '(' word ')' | '1'
/// ```
///
/// A lowercase letter is the named generator, the same letter in uppercase
/// its inverse. Whitespace and `*` are ignored.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut parser = Parser {
        chars: &chars,
        pos: 0,
        generators,
        source: text,
    };
    let w = parser.word()?;
    if parser.pos != chars.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(w)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    generators: &'a [String],
    source: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in word `{}`", self.pos, self.source))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if c == ',' || c == ']' || c == ')' {
                break;
            }
            let atom = self.atom()?;
            let atom = if self.peek() == Some('^') {
                self.pos += 1;
                let n = self.integer()?;
                atom.pow(n)
            } else {
                atom
            };
            w = w * atom;
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end"))?;
        self.pos += 1;
        match c {
            '1' => Ok(Word::identity()),
            '(' => {
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            '[' => {
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&a, &b))
            }
            c if c.is_ascii_alphabetic() => {
                let lower = c.to_ascii_lowercase().to_string();
                let idx = self
                    .generators
                    .iter()
                    .position(|g| *g == lower)
                    .ok_or_else(|| {
                        self.pos -= 1;
                        self.error(&format!("unknown generator `{lower}`"))
                    })?;
                Ok(if c.is_ascii_lowercase() {
                    Word::generator(idx)
                } else {
                    Word::inverse_generator(idx)
                })
            }
            _ => {
                self.pos -= 1;
                Err(self.error(&format!("unexpected `{c}`")))
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected an exponent"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn free_reduction() {
        let w = Word::from_letters([1, 2, -2, -1, 3]);
        assert_eq!(w.letters(), &[3]);
        assert_eq!((&Word::generator(0) * &Word::inverse_generator(0)), Word::identity());
        let c = Word::from_letters([-1, 2, 3, 1]);
        assert_eq!(c.cyclically_reduced().letters(), &[2, 3]);
        assert_eq!(Word::from_letters([1, 2, 1]).cyclically_reduced().letters(), &[1, 2, 1]);
    }

    #[test]
    fn parse_basic_and_commutator() {
        let g = names("abt");
        let w = parse_word("aabb", &g).unwrap();
        assert_eq!(w.letters(), &[1, 1, 2, 2]);
        let c = parse_word("[t,ab]", &g).unwrap();
        assert_eq!(c.letters(), &[3, 1, 2, -3, -2, -1]);
        assert_eq!(c.display(&g).to_string(), "tabTBA");
        assert_eq!(parse_word("t^3(ab)^-2", &g).unwrap().display(&g).to_string(), "tttBABA");
        assert_eq!(parse_word("1", &g).unwrap(), Word::identity());
        assert_eq!(parse_word("aA", &g).unwrap(), Word::identity());
        assert!(parse_word("ax", &g).is_err());
        assert!(parse_word("[a,b", &g).is_err());
    }

    #[test]
    fn exponent_sums_and_powers() {
        let g = names("abt");
        let w = parse_word("t^2 ab", &g).unwrap();
        assert_eq!(w.exponent_sums(3), vec![Int::from(1), Int::from(1), Int::from(2)]);
        assert_eq!(w.pow(-1), w.inverse());
        assert!(Word::generator(0).pow_int(&Int::from(10).pow(30)).is_err());
        assert_eq!(Word::identity().pow_int(&Int::from(10).pow(30)).unwrap(), Word::identity());
    }
}
