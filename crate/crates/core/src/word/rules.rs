use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cyclic::{CyclicWord, PartialWord};
use super::letter::{Letter, RCross, Saddle};
use super::WordError;

/// The rewriting rules on words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `R^{2i} -> ∅`
    I,
    /// `S^i R S^i -> R`
    II,
    /// `(SR)^{2i} S -> R`
    III,
    /// `P^i -> ∅`
    IV,
    /// `D{l} -> S^{2l+1}`
    V,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::I => "I",
            Rule::II => "II",
            Rule::III => "III",
            Rule::IV => "IV",
            Rule::V => "V",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "I" => Rule::I,
            "II" => Rule::II,
            "III" => Rule::III,
            "IV" => Rule::IV,
            "V" => Rule::V,
            _ => return Err(WordError::Parse(format!("unknown rule {s:?}"))),
        })
    }
}

impl Serialize for Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A rule occurrence: `len` consecutive letters starting at `start`
/// (wrapping around for cyclic words).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site {
    pub rule: Rule,
    pub start: usize,
    pub len: usize,
}

/// Which of rules I-IV matches a segment exactly, if any.
pub(crate) fn classify(seg: &[Letter]) -> Option<Rule> {
    let n = seg.len();
    match seg {
        [] => None,
        [Letter::Puncture(_)] => Some(Rule::IV),
        _ if n.is_multiple_of(2) && seg.iter().all(|&l| l == RCross) => Some(Rule::I),
        _ if n >= 3 && n % 2 == 1 && is_ii(seg) => Some(Rule::II),
        _ if n >= 5 && n % 4 == 1 && is_iii(seg) => Some(Rule::III),
        _ => None,
    }
}

fn is_ii(seg: &[Letter]) -> bool {
    let half = seg.len() / 2;
    seg[half] == RCross
        && seg[..half]
            .iter()
            .chain(&seg[half + 1..])
            .all(|&l| l == Saddle)
}

fn is_iii(seg: &[Letter]) -> bool {
    seg.iter()
        .enumerate()
        .all(|(k, &l)| l == if k % 2 == 0 { Saddle } else { RCross })
}

fn replacement(rule: Rule) -> &'static [Letter] {
    match rule {
        Rule::II | Rule::III => &[RCross],
        _ => &[],
    }
}

/// Common interface of cyclic and partial words for the rewriting engine.
pub trait Rewrite: Sized + Clone {
    fn letter_slice(&self) -> &[Letter];

    /// Every occurrence of rules I-IV.
    fn reduction_sites(&self) -> Vec<Site>;

    /// Rewrites one occurrence; fails with `InvalidSite` if the pattern does
    /// not match there.
    fn apply_rule(&self, site: Site) -> Result<Self, WordError>;

    fn from_letters(letters: Vec<Letter>) -> Self;
}

fn invalid(site: Site, word: &impl fmt::Display) -> WordError {
    WordError::InvalidSite {
        rule: site.rule,
        start: site.start,
        len: site.len,
        word: word.to_string(),
    }
}

impl Rewrite for CyclicWord {
    fn letter_slice(&self) -> &[Letter] {
        self.letters()
    }

    fn reduction_sites(&self) -> Vec<Site> {
        let letters = self.letters();
        let n = letters.len();
        let mut sites = Vec::new();
        let mut seg = Vec::with_capacity(n);
        for start in 0..n {
            seg.clear();
            for len in 1..=n {
                seg.push(letters[(start + len - 1) % n]);
                if let Some(rule) = classify(&seg) {
                    sites.push(Site { rule, start, len });
                }
            }
        }
        sites
    }

    fn apply_rule(&self, site: Site) -> Result<Self, WordError> {
        let letters = self.letters();
        let n = letters.len();
        if site.len == 0 || site.len > n || site.start >= n || site.rule == Rule::V {
            return Err(invalid(site, self));
        }
        let seg: Vec<Letter> = (0..site.len)
            .map(|k| letters[(site.start + k) % n])
            .collect();
        if classify(&seg) != Some(site.rule) {
            return Err(invalid(site, self));
        }
        let mut out = replacement(site.rule).to_vec();
        out.extend((site.len..n).map(|k| letters[(site.start + k) % n]));
        Ok(CyclicWord::new(out))
    }

    fn from_letters(letters: Vec<Letter>) -> Self {
        CyclicWord::new(letters)
    }
}

impl Rewrite for PartialWord {
    fn letter_slice(&self) -> &[Letter] {
        self.letters()
    }

    fn reduction_sites(&self) -> Vec<Site> {
        let letters = self.letters();
        let n = letters.len();
        let mut sites = Vec::new();
        for start in 0..n {
            for end in start + 1..=n {
                if let Some(rule) = classify(&letters[start..end]) {
                    sites.push(Site {
                        rule,
                        start,
                        len: end - start,
                    });
                }
            }
        }
        sites
    }

    fn apply_rule(&self, site: Site) -> Result<Self, WordError> {
        let letters = self.letters();
        let end = site.start + site.len;
        if site.len == 0 || end > letters.len() || site.rule == Rule::V {
            return Err(invalid(site, self));
        }
        if classify(&letters[site.start..end]) != Some(site.rule) {
            return Err(invalid(site, self));
        }
        let mut out = letters[..site.start].to_vec();
        out.extend_from_slice(replacement(site.rule));
        out.extend_from_slice(&letters[end..]);
        Ok(PartialWord::new(out))
    }

    fn from_letters(letters: Vec<Letter>) -> Self {
        PartialWord::new(letters)
    }
}

/// Replaces every `D{l}` in place by `2l+1` saddle letters.
pub fn l_reduce<W: Rewrite>(word: &W) -> W {
    let mut out = Vec::with_capacity(word.letter_slice().len());
    for &l in word.letter_slice() {
        match l {
            Letter::DeepSaddle(depth) => {
                out.extend(std::iter::repeat_n(Saddle, 2 * depth as usize + 1))
            }
            other => out.push(other),
        }
    }
    W::from_letters(out)
}
