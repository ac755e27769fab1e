//! Reference decider used to cross-check [`super::Decider`].
//!
//! Works on plain byte strings with its own pattern generator and no
//! memoization between branches, so it shares no code path with the
//! production search beyond the letter type.

use std::collections::BTreeSet;

use super::letter::Letter;
use super::WordError;

pub const DEFAULT_BOUND: usize = 16;

/// Which reducibility notion to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Cyclic word, reduce to the empty word with rules I-IV.
    Empty,
    /// Linear word, reduce to the single letter `R` with rules I-III
    /// (punctures may be deleted).
    SingleR,
}

fn encode(letters: &[Letter]) -> Vec<u8> {
    letters
        .iter()
        .map(|l| match l {
            Letter::Saddle => b'S',
            Letter::RCross => b'R',
            Letter::Puncture(_) => b'P',
            Letter::DeepSaddle(_) => b'D',
        })
        .collect()
}

/// All rule left-hand sides up to length `max_len`, with their right-hand sides.
fn patterns(max_len: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    let mut out = vec![(b"P".to_vec(), Vec::new())];
    for i in 1.. {
        if 2 * i > max_len {
            break;
        }
        out.push((vec![b'R'; 2 * i], Vec::new()));
    }
    for i in 1.. {
        if 2 * i + 1 > max_len {
            break;
        }
        let mut lhs = vec![b'S'; i];
        lhs.push(b'R');
        lhs.extend(vec![b'S'; i]);
        out.push((lhs, b"R".to_vec()));
    }
    for i in 1.. {
        if 4 * i + 1 > max_len {
            break;
        }
        let mut lhs = b"SR".repeat(2 * i);
        lhs.push(b'S');
        out.push((lhs, b"R".to_vec()));
    }
    out
}

fn successors(word: &[u8], cyclic: bool) -> BTreeSet<Vec<u8>> {
    let n = word.len();
    let mut out = BTreeSet::new();
    for (lhs, rhs) in patterns(n) {
        let m = lhs.len();
        if cyclic {
            for start in 0..n {
                if (0..m).all(|k| word[(start + k) % n] == lhs[k]) {
                    let mut next = rhs.clone();
                    next.extend((m..n).map(|k| word[(start + k) % n]));
                    out.insert(next);
                }
            }
        } else {
            for start in 0..=n - m {
                if word[start..start + m] == lhs[..] {
                    let mut next = word[..start].to_vec();
                    next.extend_from_slice(&rhs);
                    next.extend_from_slice(&word[start + m..]);
                    out.insert(next);
                }
            }
        }
    }
    out
}

fn reaches(word: &[u8], target: Target) -> bool {
    let done = match target {
        Target::Empty => word.is_empty(),
        Target::SingleR => word == b"R",
    };
    done || successors(word, target == Target::Empty)
        .iter()
        .any(|next| reaches(next, target))
}

/// Decides reducibility by plain exhaustive recursion. Fails if the word has
/// more than `bound` letters other than punctures.
pub fn brute_force_oracle(
    letters: &[Letter],
    target: Target,
    bound: usize,
) -> Result<bool, WordError> {
    let len = letters.iter().filter(|l| !l.is_puncture()).count();
    if len > bound {
        return Err(WordError::LengthBoundExceeded { len, bound });
    }
    Ok(reaches(&encode(letters), target))
}
