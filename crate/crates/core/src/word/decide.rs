use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cyclic::{CyclicWord, PartialWord};
use super::letter::{Letter, RCross};
use super::rules::{Rewrite, Rule, Site};
use super::WordError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep<W> {
    pub rule: Rule,
    pub site: Site,
    pub before: W,
    pub after: W,
}

/// Audit trail of a reduction: replaying the steps from `initial`
/// reproduces every intermediate word exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace<W> {
    pub initial: W,
    pub steps: Vec<TraceStep<W>>,
}

#[derive(Clone, Debug)]
pub struct Decision<W> {
    pub reducible: bool,
    pub trace: Option<ReductionTrace<W>>,
}

impl<W: Rewrite + fmt::Display> ReductionTrace<W> {
    pub fn final_word(&self) -> &W {
        self.steps.last().map_or(&self.initial, |s| &s.after)
    }

    /// Re-applies every step and checks it reproduces the recorded words.
    /// Returns the final word.
    pub fn replay(&self) -> Result<W, WordError> {
        let mut current = self.initial.clone();
        for (k, step) in self.steps.iter().enumerate() {
            if step.before.letter_slice() != current.letter_slice() {
                return Err(WordError::TraceMismatch {
                    step: k,
                    expected: step.before.to_string(),
                    found: current.to_string(),
                });
            }
            if step.site.rule != step.rule {
                return Err(WordError::TraceMismatch {
                    step: k,
                    expected: step.rule.to_string(),
                    found: step.site.rule.to_string(),
                });
            }
            let next = current.apply_rule(step.site)?;
            if next.letter_slice() != step.after.letter_slice() {
                return Err(WordError::TraceMismatch {
                    step: k,
                    expected: step.after.to_string(),
                    found: next.to_string(),
                });
            }
            current = next;
        }
        Ok(current)
    }
}

impl<W: fmt::Display> fmt::Display for ReductionTrace<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.initial)?;
        for step in &self.steps {
            write!(
                f,
                " ={}@{}+{}=> {}",
                step.rule, step.site.start, step.site.len, step.after
            )?;
        }
        Ok(())
    }
}

/// Key under which search results are memoized: equal keys must have equal
/// verdicts.
trait MemoKey {
    fn memo_key(&self) -> Vec<Letter>;
}

impl MemoKey for CyclicWord {
    fn memo_key(&self) -> Vec<Letter> {
        self.canonical_letters()
    }
}

impl MemoKey for PartialWord {
    // every rule pattern is a palindrome, so reversal preserves the verdict
    fn memo_key(&self) -> Vec<Letter> {
        let fwd = self.letters().to_vec();
        let rev: Vec<Letter> = fwd.iter().rev().copied().collect();
        fwd.min(rev)
    }
}

/// Exhaustive search over the rewrite graph, memoizing dead ends by
/// canonical form. Reusable across calls.
#[derive(Debug, Default)]
pub struct Decider {
    dead_cyclic: HashSet<Vec<Letter>>,
    dead_partial: HashSet<Vec<Letter>>,
    verdicts: HashMap<Vec<Letter>, bool>,
}

fn strip_punctures<W: Rewrite + Clone>(word: &W, steps: &mut Vec<TraceStep<W>>) -> W {
    let mut current = word.clone();
    while let Some(site) = current
        .reduction_sites()
        .into_iter()
        .find(|s| s.rule == Rule::IV)
    {
        let next = current
            .apply_rule(site)
            .expect("site taken from reduction_sites");
        steps.push(TraceStep {
            rule: Rule::IV,
            site,
            before: current,
            after: next.clone(),
        });
        current = next;
    }
    current
}

fn search<W>(
    word: &W,
    is_target: &dyn Fn(&W) -> bool,
    dead: &mut HashSet<Vec<Letter>>,
    path: &mut Vec<TraceStep<W>>,
) -> bool
where
    W: Rewrite + MemoKey,
{
    if is_target(word) {
        return true;
    }
    let key = word.memo_key();
    if dead.contains(&key) {
        return false;
    }
    for site in word.reduction_sites() {
        if site.rule == Rule::IV {
            continue;
        }
        let next = word
            .apply_rule(site)
            .expect("site taken from reduction_sites");
        path.push(TraceStep {
            rule: site.rule,
            site,
            before: word.clone(),
            after: next.clone(),
        });
        if search(&next, is_target, dead, path) {
            return true;
        }
        path.pop();
    }
    dead.insert(key);
    false
}

impl Decider {
    pub fn new() -> Self {
        Decider::default()
    }

    /// Whether the cyclic word rewrites to the empty word. Punctures are
    /// removed first (rule IV applies unconditionally); the remaining search
    /// uses rules I-III and explores every branch, so a non-confluent
    /// dead end in one order does not hide a reduction in another.
    pub fn omega(&mut self, word: &CyclicWord) -> Decision<CyclicWord> {
        let mut steps = Vec::new();
        let stripped = strip_punctures(word, &mut steps);
        let mut path = Vec::new();
        let found = search(
            &stripped,
            &|w: &CyclicWord| w.is_empty(),
            &mut self.dead_cyclic,
            &mut path,
        );
        if found {
            steps.extend(path);
            Decision {
                reducible: true,
                trace: Some(ReductionTrace {
                    initial: word.clone(),
                    steps,
                }),
            }
        } else {
            Decision {
                reducible: false,
                trace: None,
            }
        }
    }

    /// Verdict only, cached on the canonical form.
    pub fn is_reducible(&mut self, word: &CyclicWord) -> bool {
        let key = word.canonical_letters();
        if let Some(&v) = self.verdicts.get(&key) {
            return v;
        }
        let v = self.omega(word).reducible;
        self.verdicts.insert(key, v);
        v
    }

    /// Whether a partial word of odd length rewrites to the single letter `R`
    /// using rules I-III (punctures stripped first).
    pub fn r_omega(&mut self, word: &PartialWord) -> Result<Decision<PartialWord>, WordError> {
        let parity_len = word.parity_len();
        if parity_len.is_multiple_of(2) {
            return Err(WordError::EvenLengthPartial(parity_len));
        }
        let mut steps = Vec::new();
        let stripped = strip_punctures(word, &mut steps);
        let mut path = Vec::new();
        let is_r = |w: &PartialWord| w.letters() == [RCross];
        let found = search(&stripped, &is_r, &mut self.dead_partial, &mut path);
        Ok(if found {
            steps.extend(path);
            Decision {
                reducible: true,
                trace: Some(ReductionTrace {
                    initial: word.clone(),
                    steps,
                }),
            }
        } else {
            Decision {
                reducible: false,
                trace: None,
            }
        })
    }
}

pub fn is_omega_reducible(word: &CyclicWord) -> Decision<CyclicWord> {
    Decider::new().omega(word)
}

pub fn is_r_omega_reducible(word: &PartialWord) -> Result<Decision<PartialWord>, WordError> {
    Decider::new().r_omega(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    fn pw(s: &str) -> PartialWord {
        s.parse().unwrap()
    }

    #[test]
    fn figure_two_word_is_reducible_with_replayable_trace() {
        let d = is_omega_reducible(&cw("SP2RSRSPSSRSS"));
        assert!(d.reducible);
        let trace = d.trace.unwrap();
        assert!(trace.replay().unwrap().is_empty());
        assert_eq!(trace.steps[0].rule, Rule::IV);
        assert_eq!(trace.steps[1].rule, Rule::IV);
    }

    #[test]
    fn small_cyclic_cases() {
        assert!(!is_omega_reducible(&cw("SS")).reducible);
        assert!(is_omega_reducible(&cw("RR")).reducible);
        assert!(is_omega_reducible(&cw("")).reducible);
        assert!(is_omega_reducible(&cw("SRSR")).reducible);
        assert!(!is_omega_reducible(&cw("SR")).reducible);
    }

    #[test]
    fn deep_saddles_block_reduction() {
        assert!(!is_omega_reducible(&cw("D1RSR")).reducible);
    }

    #[test]
    fn partial_words_from_figures() {
        let d = is_r_omega_reducible(&pw("RSRSRSSRS")).unwrap();
        assert!(d.reducible);
        assert_eq!(d.trace.unwrap().replay().unwrap(), pw("R"));
        let d = is_r_omega_reducible(&pw("SSRSSSSRSSR")).unwrap();
        assert!(d.reducible);
        assert!(!is_r_omega_reducible(&pw("S")).unwrap().reducible);
    }

    #[test]
    fn even_partial_words_are_rejected() {
        assert!(matches!(
            is_r_omega_reducible(&pw("SR")),
            Err(WordError::EvenLengthPartial(2))
        ));
        // punctures do not count towards the length
        assert!(is_r_omega_reducible(&pw("SP1RS")).unwrap().reducible);
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let mut trace = is_omega_reducible(&cw("SRSR")).trace.unwrap();
        trace.steps[0].after = cw("RRR");
        assert!(matches!(
            trace.replay(),
            Err(WordError::TraceMismatch { step: 0, .. })
        ));
    }

    #[test]
    fn cached_verdicts_match_fresh_ones() {
        let mut d = Decider::new();
        for s in ["SRSR", "SS", "SSRSSR", "SSSRSR", "RSRS", "SRSRSSSRSS"] {
            assert_eq!(
                d.is_reducible(&cw(s)),
                is_omega_reducible(&cw(s)).reducible,
                "{s}"
            );
        }
    }
}
