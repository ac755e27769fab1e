use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::letter::{format_letters, parse_letters, Letter};
use super::WordError;

/// A cyclic word, compared up to rotation, reversal and the order of the
/// `P`/`R` labels sharing one type-I arc.
///
/// The stored sequence keeps the order it was built with, so traces can refer
/// to positions; equality and hashing go through [`CyclicWord::canonicalize`].
#[derive(Clone, Debug, Default)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

/// A linear record of a sub-arc of a curve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialWord {
    letters: Vec<Letter>,
}

/// Puts every maximal run of type-I labels (between two saddle letters) into
/// P-block-before-R order. Runs that wrap around are handled by the caller.
fn normalize_runs(letters: &mut [Letter]) {
    let mut start = 0;
    while start < letters.len() {
        if letters[start].is_saddle_like() {
            start += 1;
            continue;
        }
        let mut end = start;
        while end < letters.len() && !letters[end].is_saddle_like() {
            end += 1;
        }
        // stable: keeps the relative order of the punctures themselves
        letters[start..end].sort_by_key(|l| !l.is_puncture());
        start = end;
    }
}

/// Lexicographically least rotation, brute force. Words here are short.
fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let mut best: Option<Vec<Letter>> = None;
    for k in 0..n {
        let rot: Vec<Letter> = letters[k..].iter().chain(&letters[..k]).copied().collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

/// Canonical form of one orientation: rotate so that a saddle letter comes
/// first (so no type-I run wraps), normalize runs, then take the least rotation.
fn orientation_canonical(letters: &[Letter]) -> Vec<Letter> {
    let mut seq = match letters.iter().position(|l| l.is_saddle_like()) {
        Some(k) => letters[k..].iter().chain(&letters[..k]).copied().collect(),
        None => {
            let mut all = letters.to_vec();
            all.sort_by_key(|l| !l.is_puncture());
            all
        }
    };
    normalize_runs(&mut seq);
    least_rotation(&seq)
}

impl CyclicWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        CyclicWord { letters }
    }

    pub fn empty() -> Self {
        CyclicWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length not counting puncture letters.
    pub fn parity_len(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| l.counts_for_parity())
            .count()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn has_punctures(&self) -> bool {
        self.letters.iter().any(|l| l.is_puncture())
    }

    pub fn rotate(&self, k: usize) -> CyclicWord {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        CyclicWord::new(
            self.letters[k..]
                .iter()
                .chain(&self.letters[..k])
                .copied()
                .collect(),
        )
    }

    pub fn reversed(&self) -> CyclicWord {
        CyclicWord::new(self.letters.iter().rev().copied().collect())
    }

    /// Least rotation over both orientations, after normalizing the order of
    /// labels on each type-I arc.
    pub fn canonicalize(&self) -> CyclicWord {
        CyclicWord::new(self.canonical_letters())
    }

    pub fn canonical_letters(&self) -> Vec<Letter> {
        let forward = orientation_canonical(&self.letters);
        let rev: Vec<Letter> = self.letters.iter().rev().copied().collect();
        let backward = orientation_canonical(&rev);
        forward.min(backward)
    }

    pub fn without_punctures(&self) -> CyclicWord {
        CyclicWord::new(
            self.letters
                .iter()
                .copied()
                .filter(|l| !l.is_puncture())
                .collect(),
        )
    }

    /// The letter sequence read from position `start`, as a linear word.
    pub fn cut_at(&self, start: usize) -> PartialWord {
        PartialWord::new(self.rotate(start).letters)
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical_letters() == other.canonical_letters()
    }
}

impl Eq for CyclicWord {}

impl Hash for CyclicWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_letters().hash(state);
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&format_letters(&self.letters))
        }
    }
}

impl FromStr for CyclicWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "∅" {
            return Ok(CyclicWord::empty());
        }
        Ok(CyclicWord::new(parse_letters(s)?))
    }
}

impl PartialWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        PartialWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn parity_len(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| l.counts_for_parity())
            .count()
    }

    pub fn without_punctures(&self) -> PartialWord {
        PartialWord::new(
            self.letters
                .iter()
                .copied()
                .filter(|l| !l.is_puncture())
                .collect(),
        )
    }
}

impl fmt::Display for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&format_letters(&self.letters))
        }
    }
}

impl FromStr for PartialWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "∅" {
            return Ok(PartialWord::default());
        }
        Ok(PartialWord::new(parse_letters(s)?))
    }
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
                s.serialize_str(&format_letters(&self.letters))
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<De: serde::Deserializer<'de>>(d: De) -> Result<Self, De::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(CyclicWord);
string_serde!(PartialWord);
