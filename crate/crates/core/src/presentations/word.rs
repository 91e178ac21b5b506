//! Reduced words in a free group.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A freely reduced word; letters are `(generator, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    /// Reduces `letters`; exponents other than `±1` are rejected.
    pub fn new(letters: impl IntoIterator<Item = (usize, i8)>) -> Result<Self> {
        let mut w = FreeWord::default();
        for (g, e) in letters {
            if e != 1 && e != -1 {
                return Err(Error::InvalidInput(format!(
                    "letter exponent {e} is not +1 or -1"
                )));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn generator(g: usize) -> Self {
        FreeWord {
            letters: vec![(g, 1)],
        }
    }

    /// `g^k` for any integer `k`.
    pub fn power(g: usize, k: i32) -> Self {
        let e = if k < 0 { -1 } else { 1 };
        FreeWord {
            letters: vec![(g, e); k.unsigned_abs() as usize],
        }
    }

    fn push(&mut self, g: usize, e: i8) {
        if self.letters.last() == Some(&(g, -e)) {
            self.letters.pop();
        } else {
            self.letters.push((g, e));
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// The first `k` letters (already reduced as a subword of a reduced word).
    pub fn prefix(&self, k: usize) -> Self {
        FreeWord {
            letters: self.letters[..k].to_vec(),
        }
    }

    /// Largest generator index plus one (0 for the empty word).
    pub fn alphabet_size(&self) -> usize {
        self.letters.iter().map(|&(g, _)| g + 1).max().unwrap_or(0)
    }

    /// Parses lowercase names as generators and uppercase as inverses.
    pub fn parse(s: &str, names: &[String]) -> Result<Self> {
        let mut w = FreeWord::default();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            let lower = ch.to_lowercase().to_string();
            let g = names
                .iter()
                .position(|n| *n == lower)
                .ok_or_else(|| Error::Parse(format!("unknown generator letter {ch:?}")))?;
            w.push(g, if ch.is_uppercase() { -1 } else { 1 });
        }
        Ok(w)
    }

    /// Text form using `names` (uppercase for inverses), or `x0`, `X0`, ...
    /// style names when no name is available.
    pub fn render(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).cloned().unwrap_or_else(|| format!("x{g}"));
                if e > 0 {
                    n
                } else {
                    n.to_uppercase()
                }
            })
            .collect()
    }
}

impl Mul<&FreeWord> for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &(g, e) in &rhs.letters {
            w.push(g, e);
        }
        w
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: FreeWord) -> FreeWord {
        &self * &rhs
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..26u8)
            .map(|i| ((b'a' + i) as char).to_string())
            .collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Total exponent sum: the image under the abelianization sending every
/// generator to `t`.
pub fn abelianization_exponent(w: &FreeWord) -> i64 {
    w.letters.iter().map(|&(_, e)| e as i64).sum()
}
