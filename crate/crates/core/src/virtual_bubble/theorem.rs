use serde::Serialize;

use super::expand::{expand_virtual, DualStop, VirtualDiagram};
use super::pairing::pair_up_saddles;
use super::VirtualError;
use crate::diagram::{label_curve, Curve, DiagramError, Sphere, SurfacePresentation};
use crate::word::{CyclicWord, Decider, ReductionTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A dual loop passes one virtual bubble twice.
    SameVirtualBubble,
    /// A dual loop joins two virtual bubbles of the same origin without
    /// touching the curve in between.
    PairedSameOrigin,
}

/// Evidence that some opposite-sphere loop of the real diagram passes the
/// named bubble twice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridianWitness {
    pub kind: WitnessKind,
    pub bubble: usize,
    pub dual_loop: String,
    pub virtual_bubbles: [usize; 2],
}

/// Looks for a dual loop of `vd` that reveals a bubble met twice.
pub fn meridian_witness(vd: &VirtualDiagram) -> Option<MeridianWitness> {
    for l in &vd.dual {
        let ids: Vec<(usize, usize)> = l
            .stops
            .iter()
            .enumerate()
            .filter_map(|(k, s)| match *s {
                DualStop::Virtual(id) => Some((k, id)),
                _ => None,
            })
            .collect();
        for (i, &(_, a)) in ids.iter().enumerate() {
            if let Some(&(_, b)) = ids[i + 1..].iter().find(|&&(_, b)| b == a) {
                return Some(MeridianWitness {
                    kind: WitnessKind::SameVirtualBubble,
                    bubble: vd.bubbles[a].origin,
                    dual_loop: l.name.clone(),
                    virtual_bubbles: [a, b],
                });
            }
        }

        // consecutive stops inside met bubbles
        let blocking: Vec<usize> = (0..l.stops.len())
            .filter(|&k| !matches!(l.stops[k], DualStop::Outside(_)))
            .collect();
        let n = l.stops.len();
        for (i, &k1) in blocking.iter().enumerate() {
            let k2 = blocking[(i + 1) % blocking.len()];
            let (DualStop::Virtual(a), DualStop::Virtual(b)) = (l.stops[k1], l.stops[k2]) else {
                continue;
            };
            if a == b || vd.bubbles[a].origin != vd.bubbles[b].origin {
                continue;
            }
            let span = if k2 > k1 { k2 - k1 } else { k2 + n - k1 };
            if (0..span).all(|d| !vd.curve_arcs.contains(&l.arcs[(k1 + d) % n])) {
                return Some(MeridianWitness {
                    kind: WitnessKind::PairedSameOrigin,
                    bubble: vd.bubbles[a].origin,
                    dual_loop: l.name.clone(),
                    virtual_bubbles: [a, b],
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub sphere: Sphere,
    pub curve: String,
    pub virtual_word: CyclicWord,
    pub reducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ReductionTrace<CyclicWord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MeridianWitness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    /// One verdict per curve meeting at least one bubble, ordered by
    /// (sphere, curve id).
    pub verdicts: Vec<Verdict>,
    /// Curves meeting no bubble; their word is empty and they are not judged.
    pub empty_curves: Vec<String>,
}

impl MainTheoremReport {
    pub fn all_reducible(&self) -> bool {
        self.verdicts.iter().all(|v| v.reducible)
    }
}

pub fn curve_verdict(
    c: &Curve,
    p: &SurfacePresentation,
    decider: &mut Decider,
) -> Result<Verdict, DiagramError> {
    let (vd, word) = expand_virtual(c, p)?;
    let decision = decider.omega(&word);
    Ok(Verdict {
        sphere: c.sphere,
        curve: c.name.clone(),
        virtual_word: word,
        reducible: decision.reducible,
        trace: decision.trace,
        witness: meridian_witness(&vd),
    })
}

/// Computes the virtual word of every curve on both spheres and decides its
/// reducibility. An irreducible verdict shows the presentation cannot be a
/// normal-position picture of a separating sphere or essential surface.
pub fn check_main_theorem(p: &SurfacePresentation) -> Result<MainTheoremReport, DiagramError> {
    let mut decider = Decider::new();
    let mut report = MainTheoremReport::default();
    for r in p.curve_refs() {
        let c = p.curve(r);
        if c.visits.is_empty() {
            report.empty_curves.push(c.name.clone());
            continue;
        }
        report.verdicts.push(curve_verdict(c, p, &mut decider)?);
    }
    Ok(report)
}

/// If every saddle in the bubbles `c` meets is paired up, the curve's own
/// word must be reducible. Returns that verdict.
pub fn lemma35_crosscheck(c: &Curve, p: &SurfacePresentation) -> Result<bool, VirtualError> {
    let pairing = pair_up_saddles(c, p);
    let unpaired = pairing.unassigned();
    if !unpaired.is_empty() {
        return Err(VirtualError::PreconditionUnmet {
            curve: c.name.clone(),
            unpaired: unpaired
                .into_iter()
                .map(|s| p.saddles[s].name.clone())
                .collect(),
        });
    }
    Ok(Decider::new().is_reducible(&label_curve(c, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_presentation;
    use crate::virtual_bubble::{lambda_of, pair_up_saddles};

    fn fixture(text: &str) -> SurfacePresentation {
        parse_presentation(text).unwrap()
    }

    fn names(p: &SurfacePresentation, saddles: &[usize]) -> Vec<String> {
        saddles.iter().map(|&s| p.saddles[s].name.clone()).collect()
    }

    #[test]
    fn alternating_curve_has_witness_at_b1() {
        let p = fixture(include_str!("../../fixtures/fig3a_meridian.kw"));
        let report = check_main_theorem(&p).unwrap();
        let c = report.verdicts.iter().find(|v| v.curve == "C").unwrap();
        assert_eq!(c.virtual_word.to_string(), "SSSS");
        assert!(!c.reducible);
        let w = c.witness.as_ref().unwrap();
        assert_eq!(p.diagram.bubbles[w.bubble].name, "B1");
        assert_eq!(w.dual_loop, "M1");
        assert_eq!(w.kind, WitnessKind::SameVirtualBubble);
    }

    #[test]
    fn paired_fixture_classes() {
        let p = fixture(include_str!("../../fixtures/fig4_paired.kw"));
        let c = &p.curves_plus[0];
        assert_eq!(lambda_of(c, &p).len(), 8);
        let pairing = pair_up_saddles(c, &p);
        let classes: Vec<Vec<String>> = pairing.classes().iter().map(|k| names(&p, k)).collect();
        assert_eq!(
            classes,
            vec![vec!["s1a", "s1b", "s1c"], vec!["s2a", "s2b", "s2c", "s2d"]]
        );
        assert_eq!(names(&p, &pairing.unassigned()), vec!["s3"]);
    }

    #[test]
    fn crosscheck_needs_every_saddle_paired() {
        let p = fixture(include_str!("../../fixtures/fig4_paired.kw"));
        match lemma35_crosscheck(&p.curves_plus[0], &p) {
            Err(VirtualError::PreconditionUnmet { unpaired, .. }) => {
                assert_eq!(unpaired, vec!["s3"])
            }
            other => panic!("expected PreconditionUnmet, got {other:?}"),
        }
    }

    #[test]
    fn stacked_fixture_is_reducible_without_witness() {
        let p = fixture(include_str!("../../fixtures/fig8_stacked.kw"));
        let report = check_main_theorem(&p).unwrap();
        assert!(report.all_reducible());
        assert!(report.verdicts.iter().all(|v| v.witness.is_none()));
        let c = &report.verdicts[0];
        assert_eq!(
            (c.curve.as_str(), c.virtual_word.to_string()),
            ("C", "SSSRSSSR".to_string())
        );
    }
}
