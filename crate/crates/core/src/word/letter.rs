use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::WordError;

/// One label of a curve.
///
/// The derived ordering is the canonicalization order: `S < R < P < D`,
/// with ties broken by ascending multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// A type-II arc crossing a saddle.
    Saddle,
    /// A type-I arc whose two end bubbles lie on the same side of the curve.
    RCross,
    /// A type-I arc punctured `i >= 1` times by the link.
    Puncture(u32),
    /// A saddle with `l` saddles underneath it from the viewing side.
    DeepSaddle(u32),
}

pub use Letter::{DeepSaddle, Puncture, RCross, Saddle};

impl Letter {
    pub fn puncture(count: u32) -> Result<Letter, WordError> {
        if count == 0 {
            return Err(WordError::Parse(
                "puncture multiplicity must be at least 1".into(),
            ));
        }
        Ok(Puncture(count))
    }

    /// Letters that sit on a type-II arc (`S` and `D{l}`).
    pub fn is_saddle_like(self) -> bool {
        matches!(self, Saddle | DeepSaddle(_))
    }

    pub fn is_puncture(self) -> bool {
        matches!(self, Puncture(_))
    }

    /// Letters counted for length parity: everything except punctures.
    pub fn counts_for_parity(self) -> bool {
        !self.is_puncture()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Saddle => f.write_str("S"),
            RCross => f.write_str("R"),
            Puncture(i) => write!(f, "P{i}"),
            DeepSaddle(l) => write!(f, "D{l}"),
        }
    }
}

/// Parses the compact letter string used by files and the CLI, e.g.
/// `SP2RSRSPSSRSS` or `RD1RS`. A bare `P` means `P1`; a bare `D` means `D0`.
/// Whitespace is ignored. The empty string is the empty word.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>, WordError> {
    let mut out = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        let mut digits = String::new();
        while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
            digits.push(d);
            chars.next();
        }
        let number = if digits.is_empty() {
            None
        } else {
            Some(
                digits
                    .parse::<u32>()
                    .map_err(|e| WordError::Parse(e.to_string()))?,
            )
        };
        let letter = match (c, number) {
            ('S', None) => Saddle,
            ('R', None) => RCross,
            ('P', n) => Letter::puncture(n.unwrap_or(1))?,
            ('D', n) => DeepSaddle(n.unwrap_or(0)),
            ('S' | 'R', Some(_)) => {
                return Err(WordError::Parse(format!(
                    "letter {c} takes no multiplicity"
                )))
            }
            (other, _) => return Err(WordError::Parse(format!("unknown letter {other:?}"))),
        };
        out.push(letter);
    }
    Ok(out)
}

pub fn format_letters(letters: &[Letter]) -> String {
    letters.iter().map(ToString::to_string).collect()
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_letters(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(WordError::Parse(format!(
                "expected exactly one letter, got {s:?}"
            ))),
        }
    }
}

impl Serialize for Letter {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<De: serde::Deserializer<'de>>(deserializer: De) -> Result<Self, De::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_figure_word() {
        let w = parse_letters("SP2RSRSPSSRSS").unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(w[1], Puncture(2));
        assert_eq!(w[6], Puncture(1));
        assert_eq!(format_letters(&w), "SP2RSRSP1SSRSS");
    }

    #[test]
    fn ordering_is_s_r_p_d() {
        assert!(Saddle < RCross);
        assert!(RCross < Puncture(1));
        assert!(Puncture(1) < Puncture(2));
        assert!(Puncture(9) < DeepSaddle(0));
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(parse_letters("SX").is_err());
        assert!(parse_letters("P0").is_err());
        assert!(parse_letters("S2").is_err());
        assert_eq!(parse_letters("").unwrap(), vec![]);
    }
}
