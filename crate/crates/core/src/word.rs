//! Signed-letter words and the occurrence calculus.
//!
//! A clasp-word records, along one link component, the ordered signed
//! intersections with the surfaces of the other components. Letters are
//! never cancelled implicitly: `1 1-` is a different word from the empty
//! word, even though it represents the trivial free-group element.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Orientation sign of a letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// A component index (1-based) with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    index: usize,
    sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Result<Letter> {
        if index == 0 {
            return Err(Error::InvalidLetter("component index must be >= 1".into()));
        }
        Ok(Letter { index, sign })
    }

    pub fn pos(index: usize) -> Letter {
        Letter::new(index, Sign::Pos).expect("index >= 1")
    }

    pub fn neg(index: usize) -> Letter {
        Letter::new(index, Sign::Neg).expect("index >= 1")
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "{}", self.index),
            Sign::Neg => write!(f, "{}-", self.index),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        let (digits, sign) = match s.strip_suffix('-') {
            Some(d) => (d, Sign::Neg),
            None => (s, Sign::Pos),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidLetter(format!("bad letter `{s}`")));
        }
        let index: usize = digits
            .parse()
            .map_err(|_| Error::InvalidLetter(format!("bad letter `{s}`")))?;
        Letter::new(index, sign)
    }
}

/// A finite sequence of letters read from a base point.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LinearWord {
    letters: Vec<Letter>,
}

impl LinearWord {
    pub fn new(letters: Vec<Letter>) -> LinearWord {
        LinearWord { letters }
    }

    pub fn empty() -> LinearWord {
        LinearWord::default()
    }

    /// Builds a word from signed indices: `3` is `3+`, `-3` is `3-`.
    ///
    /// Panics on zero, so only use it with literal data.
    pub fn from_signed(indices: &[i64]) -> LinearWord {
        LinearWord::new(
            indices
                .iter()
                .map(|&v| {
                    let sign = if v > 0 { Sign::Pos } else { Sign::Neg };
                    Letter::new(v.unsigned_abs() as usize, sign).expect("nonzero letter")
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `e_r`: signed number of occurrences of the letter `r`.
    pub fn signed_count(&self, r: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.index == r)
            .map(|l| l.sign.value())
            .sum()
    }

    /// `e_rs`: sum of `sign(a) * sign(b)` over positions `a < b` where the
    /// letter at `a` has index `r` and the letter at `b` has index `s`.
    ///
    /// Linear time: keep a running signed count of `r` and harvest it at
    /// every `s`. The harvest happens before the update so that `r == s`
    /// only counts strictly earlier positions.
    pub fn signed_pair_count(&self, r: usize, s: usize) -> i64 {
        let mut seen_r = 0i64;
        let mut total = 0i64;
        for l in &self.letters {
            if l.index == s {
                total += seen_r * l.sign.value();
            }
            if l.index == r {
                seen_r += l.sign.value();
            }
        }
        total
    }

    /// Signed count of `r` among the first `end` letters.
    pub fn signed_count_before(&self, r: usize, end: usize) -> i64 {
        self.letters[..end.min(self.len())]
            .iter()
            .filter(|l| l.index == r)
            .map(|l| l.sign.value())
            .sum()
    }

    pub fn concat(&self, other: &LinearWord) -> LinearWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        LinearWord { letters }
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index).max().unwrap_or(0)
    }
}

impl From<Vec<Letter>> for LinearWord {
    fn from(letters: Vec<Letter>) -> Self {
        LinearWord::new(letters)
    }
}

impl fmt::Display for LinearWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for LinearWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<LinearWord> {
        s.split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>>>()
            .map(LinearWord::new)
    }
}

/// A cyclic word together with a base point.
///
/// `letters` is stored in cyclic order; the base point sits just before
/// `letters[base_offset]`, so the linearization starts there.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
    base_offset: usize,
}

impl CyclicWord {
    pub fn new(letters: Vec<Letter>, base_offset: usize) -> Result<CyclicWord> {
        if base_offset >= letters.len().max(1) {
            return Err(Error::InvalidWord(format!(
                "base offset {base_offset} out of range for word of length {}",
                letters.len()
            )));
        }
        Ok(CyclicWord {
            letters,
            base_offset,
        })
    }

    /// A cyclic word whose base point precedes the first letter of `w`.
    pub fn from_linear(w: LinearWord) -> CyclicWord {
        CyclicWord {
            letters: w.letters,
            base_offset: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn base_offset(&self) -> usize {
        self.base_offset
    }

    pub fn cyclic_letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at position `pos` of the linearization (taken mod length).
    pub fn letter_at(&self, pos: usize) -> Letter {
        self.letters[(self.base_offset + pos) % self.len()]
    }

    pub fn linearize(&self) -> LinearWord {
        let mut letters = Vec::with_capacity(self.len());
        letters.extend_from_slice(&self.letters[self.base_offset..]);
        letters.extend_from_slice(&self.letters[..self.base_offset]);
        LinearWord { letters }
    }

    /// Moves the base point forward over `steps` letters (backwards when
    /// negative). The cyclic letter sequence is untouched.
    pub fn rotate(&self, steps: i64) -> CyclicWord {
        if self.is_empty() {
            return self.clone();
        }
        let len = self.len() as i64;
        let offset = (self.base_offset as i64 + steps).rem_euclid(len) as usize;
        CyclicWord {
            letters: self.letters.clone(),
            base_offset: offset,
        }
    }

    /// Whether the two letter sequences agree up to rotation.
    pub fn cyclically_equivalent(&self, other: &CyclicWord) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|shift| {
            (0..self.len()).all(|i| self.letters[(i + shift) % self.len()] == other.letters[i])
        })
    }

    /// Removes the letters at linear positions `pos` and `pos + 1` (mod
    /// length), which must be inverse to each other. The base point stays
    /// in the same gap of the surviving letters.
    pub fn cancel_adjacent_inverse(&self, pos: usize) -> Result<CyclicWord> {
        let len = self.len();
        if len < 2 || pos >= len {
            return Err(Error::NotInversePair { pos });
        }
        let a = (self.base_offset + pos) % len;
        let b = (a + 1) % len;
        if !self.letters[a].is_inverse_of(self.letters[b]) {
            return Err(Error::NotInversePair { pos });
        }
        let mut lin = self.linearize().letters;
        if pos + 1 < len {
            lin.drain(pos..pos + 2);
        } else {
            // pair straddles the base point: last and first letter
            lin.pop();
            lin.remove(0);
        }
        Ok(CyclicWord {
            letters: lin,
            base_offset: 0,
        })
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.linearize().fmt(f)
    }
}
