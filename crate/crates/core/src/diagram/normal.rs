use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::label::label_type_one_arc;
use super::{Boundary, Curve, Sphere, SurfacePresentation};
use crate::word::Letter;

/// A single failed normal-position condition, naming the objects involved.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyWord {
        curve: String,
    },
    BubbleMetTwice {
        curve: String,
        bubble: String,
    },
    ArcRepeated {
        curve: String,
        arc: String,
    },
    ArcShared {
        curve: String,
        other: String,
        arc: String,
    },
    CornerShared {
        curve: String,
        other: String,
        saddle: String,
    },
    BubbleAndIncidentStrand {
        curve: String,
        bubble: String,
        strand: String,
    },
    ComponentTwice {
        curve: String,
        component: String,
    },
    AdjacentArcs {
        curve: String,
        other: String,
        arcs: [String; 2],
    },
}

impl Violation {
    pub fn curve(&self) -> &str {
        match self {
            Violation::EmptyWord { curve }
            | Violation::BubbleMetTwice { curve, .. }
            | Violation::ArcRepeated { curve, .. }
            | Violation::ArcShared { curve, .. }
            | Violation::CornerShared { curve, .. }
            | Violation::BubbleAndIncidentStrand { curve, .. }
            | Violation::ComponentTwice { curve, .. }
            | Violation::AdjacentArcs { curve, .. } => curve,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub condition: u8,
    pub status: Status,
    pub violations: Vec<Violation>,
}

impl ConditionVerdict {
    fn from_violations(condition: u8, mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| a.curve().cmp(b.curve()).then_with(|| a.cmp(b)));
        violations.dedup();
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        ConditionVerdict {
            condition,
            status,
            violations,
        }
    }

    fn skipped(condition: u8) -> Self {
        ConditionVerdict {
            condition,
            status: Status::Skipped,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Verdicts for conditions (1) through (6), in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalPositionReport {
    pub conditions: Vec<ConditionVerdict>,
}

impl NormalPositionReport {
    pub fn passes(&self) -> bool {
        self.conditions.iter().all(ConditionVerdict::passed)
    }

    pub fn condition(&self, n: u8) -> &ConditionVerdict {
        &self.conditions[usize::from(n) - 1]
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.conditions.iter().flat_map(|c| &c.violations)
    }
}

fn all_curves(p: &SurfacePresentation) -> impl Iterator<Item = &Curve> {
    p.curves_plus.iter().chain(&p.curves_minus)
}

fn empty_words(p: &SurfacePresentation) -> Vec<Violation> {
    all_curves(p)
        .filter(|c| c.visits.is_empty())
        .map(|c| Violation::EmptyWord {
            curve: c.name.clone(),
        })
        .collect()
}

fn bubbles_met_twice(p: &SurfacePresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    for c in all_curves(p) {
        let mut seen = BTreeMap::<usize, usize>::new();
        for v in &c.visits {
            *seen.entry(p.bubble_of(v.saddle)).or_default() += 1;
        }
        for (b, k) in seen {
            if k > 1 {
                out.push(Violation::BubbleMetTwice {
                    curve: c.name.clone(),
                    bubble: p.diagram.bubbles[b].name.clone(),
                });
            }
        }
    }
    out
}

/// Combinatorial shadow of "each curve bounds a disk": curves on one sphere
/// are simple and pairwise disjoint, so no arc or saddle corner pair is used
/// twice on the same side.
fn crossing_curves(p: &SurfacePresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    for sphere in [Sphere::Plus, Sphere::Minus] {
        let mut arc_owner: BTreeMap<usize, &Curve> = BTreeMap::new();
        let mut corner_owner: BTreeMap<(usize, u8, u8), &Curve> = BTreeMap::new();
        for c in p.curves(sphere) {
            let mut own = BTreeSet::new();
            for &a in &c.arcs {
                if !own.insert(a) {
                    out.push(Violation::ArcRepeated {
                        curve: c.name.clone(),
                        arc: p.arcs[a].name.clone(),
                    });
                } else if let Some(other) = arc_owner.insert(a, c) {
                    let (x, y) = ordered(&c.name, &other.name);
                    out.push(Violation::ArcShared {
                        curve: x,
                        other: y,
                        arc: p.arcs[a].name.clone(),
                    });
                }
            }
            for v in &c.visits {
                let Some((i, j)) = v.corners else { continue };
                if let Some(other) = corner_owner.insert((v.saddle, i.min(j), i.max(j)), c) {
                    let (x, y) = ordered(&c.name, &other.name);
                    out.push(Violation::CornerShared {
                        curve: x,
                        other: y,
                        saddle: p.saddles[v.saddle].name.clone(),
                    });
                }
            }
        }
    }
    out
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn bubble_and_incident_strand(p: &SurfacePresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    for c in all_curves(p) {
        let met: BTreeSet<usize> = c.visits.iter().map(|v| p.bubble_of(v.saddle)).collect();
        for &a in &c.arcs {
            for &s in &p.arcs[a].punctures {
                let strand = &p.diagram.strands[s];
                for b in strand.ends {
                    if met.contains(&b) {
                        out.push(Violation::BubbleAndIncidentStrand {
                            curve: c.name.clone(),
                            bubble: p.diagram.bubbles[b].name.clone(),
                            strand: strand.name.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

fn component_twice(p: &SurfacePresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    for c in all_curves(p) {
        let mut hits = BTreeMap::<&str, usize>::new();
        for &a in &c.arcs {
            for &s in &p.arcs[a].punctures {
                *hits
                    .entry(p.diagram.strands[s].component.as_str())
                    .or_default() += 1;
            }
        }
        for (component, k) in hits {
            if k > 1 {
                out.push(Violation::ComponentTwice {
                    curve: c.name.clone(),
                    component: component.to_string(),
                });
            }
        }
    }
    out
}

fn arc_end_saddles(p: &SurfacePresentation, a: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for c in all_curves(p) {
        for (k, &b) in c.arcs.iter().enumerate() {
            if a == b {
                let (x, y) = c.arc_ends(k);
                out.insert(x);
                out.insert(y);
            }
        }
    }
    out
}

fn adjacent_arc_pairs(p: &SurfacePresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    for alpha in &p.curves_plus {
        for beta in &p.curves_minus {
            let shared: BTreeSet<usize> = alpha
                .arcs
                .iter()
                .copied()
                .filter(|a| beta.arcs.contains(a))
                .collect();
            let shared: Vec<usize> = shared.into_iter().collect();
            for (i, &a) in shared.iter().enumerate() {
                for &b in &shared[i + 1..] {
                    let (Some(ra), Some(rb)) = (p.arcs[a].region, p.arcs[b].region) else {
                        continue;
                    };
                    if !p.diagram.regions_adjacent(ra, rb) {
                        continue;
                    }
                    if arc_end_saddles(p, a).is_disjoint(&arc_end_saddles(p, b)) {
                        out.push(Violation::AdjacentArcs {
                            curve: alpha.name.clone(),
                            other: beta.name.clone(),
                            arcs: [p.arcs[a].name.clone(), p.arcs[b].name.clone()],
                        });
                    }
                }
            }
        }
    }
    out
}

/// Runs conditions (1)-(6). The puncture conditions (4)-(6) only apply to
/// presentations declaring meridional boundary; otherwise they are skipped.
pub fn check_normal_position(p: &SurfacePresentation) -> NormalPositionReport {
    let mut conditions = vec![
        ConditionVerdict::from_violations(1, empty_words(p)),
        ConditionVerdict::from_violations(2, bubbles_met_twice(p)),
        ConditionVerdict::from_violations(3, crossing_curves(p)),
    ];
    if p.boundary == Boundary::Meridional {
        conditions.push(ConditionVerdict::from_violations(
            4,
            bubble_and_incident_strand(p),
        ));
        conditions.push(ConditionVerdict::from_violations(5, component_twice(p)));
        conditions.push(ConditionVerdict::from_violations(6, adjacent_arc_pairs(p)));
    } else {
        conditions.extend((4..=6).map(ConditionVerdict::skipped));
    }
    NormalPositionReport { conditions }
}

/// Everything that keeps the plus and minus curve systems from describing
/// the same saddles and type-I arcs. Empty means consistent.
pub fn dual_inconsistencies(p: &SurfacePresentation) -> Vec<String> {
    let mut errs = Vec::new();
    if p.curves_plus.is_empty() != p.curves_minus.is_empty() {
        errs.push("only one side of the surface is given".to_string());
        return errs;
    }

    // saddle -> visits (curve, index) per side
    let mut visits: BTreeMap<(Sphere, usize), Vec<(&Curve, usize)>> = BTreeMap::new();
    // arc -> occurrences (curve, index) per side
    let mut arcs: BTreeMap<(Sphere, usize), Vec<(&Curve, usize)>> = BTreeMap::new();
    for c in all_curves(p) {
        for (k, v) in c.visits.iter().enumerate() {
            visits.entry((c.sphere, v.saddle)).or_default().push((c, k));
        }
        for (k, &a) in c.arcs.iter().enumerate() {
            arcs.entry((c.sphere, a)).or_default().push((c, k));
        }
    }

    for (s, saddle) in p.saddles.iter().enumerate() {
        for sphere in [Sphere::Plus, Sphere::Minus] {
            let n = visits.get(&(sphere, s)).map_or(0, Vec::len);
            if n != 2 {
                errs.push(format!(
                    "saddle {} has {n} {sphere} type-II arcs, expected 2",
                    saddle.name
                ));
            }
        }
    }

    let arc_ids: BTreeSet<usize> = arcs.keys().map(|&(_, a)| a).collect();
    for &a in &arc_ids {
        let name = &p.arcs[a].name;
        let (Some(plus), Some(minus)) =
            (arcs.get(&(Sphere::Plus, a)), arcs.get(&(Sphere::Minus, a)))
        else {
            errs.push(format!("arc {name} lies on one side only"));
            continue;
        };
        if plus.len() != 1 || minus.len() != 1 {
            errs.push(format!(
                "arc {name} is used {} times on S2+ and {} times on S2-",
                plus.len(),
                minus.len()
            ));
            continue;
        }
        let ((cp, kp), (cm, km)) = (plus[0], minus[0]);
        let ends = |c: &Curve, k: usize| {
            let (x, y) = c.arc_ends(k);
            (x.min(y), x.max(y))
        };
        if ends(cp, kp) != ends(cm, km) {
            errs.push(format!(
                "arc {name} joins different saddles on the two sides"
            ));
            continue;
        }
        let corner_ends = |c: &Curve, k: usize| -> Option<[(usize, u8); 2]> {
            let n = c.visits.len();
            let (v0, v1) = (c.visits[k], c.visits[(k + 1) % n]);
            let mut e = [(v0.saddle, v0.corners?.1), (v1.saddle, v1.corners?.0)];
            e.sort();
            Some(e)
        };
        if let (Some(ep), Some(em)) = (corner_ends(cp, kp), corner_ends(cm, km)) {
            if ep != em {
                errs.push(format!(
                    "arc {name} ends at different saddle corners on the two sides"
                ));
            }
        }
        let r_label = |c: &Curve, k: usize| {
            label_type_one_arc(c, k, p)
                .ok()
                .map(|ls| ls.contains(&Letter::RCross))
        };
        if let (Some(rp), Some(rm)) = (r_label(cp, kp), r_label(cm, km)) {
            if rp != rm {
                errs.push(format!("arc {name} is labeled R on one side only"));
            }
        }
    }

    // a minus type-II arc joins one arc end of each plus type-II arc
    let arc_pair = |c: &Curve, k: usize| {
        let n = c.arcs.len();
        [c.arcs[(k + n - 1) % n], c.arcs[k]]
    };
    for (s, saddle) in p.saddles.iter().enumerate() {
        let (Some(plus), Some(minus)) = (
            visits.get(&(Sphere::Plus, s)),
            visits.get(&(Sphere::Minus, s)),
        ) else {
            continue;
        };
        if plus.len() != 2 || minus.len() != 2 {
            continue;
        }
        let (p0, p1) = (
            arc_pair(plus[0].0, plus[0].1),
            arc_pair(plus[1].0, plus[1].1),
        );
        for &(c, k) in minus {
            let [a, b] = arc_pair(c, k);
            let ok = (p0.contains(&a) && p1.contains(&b)) || (p0.contains(&b) && p1.contains(&a));
            if !ok {
                errs.push(format!(
                    "minus curve {} at saddle {} does not join the two plus arcs",
                    c.name, saddle.name
                ));
            }
        }
    }
    errs
}

/// True when the plus and minus curve systems agree on every saddle corner
/// and every type-I arc.
pub fn dual_consistency(p: &SurfacePresentation) -> bool {
    dual_inconsistencies(p).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_presentation;

    /// One saddle: the plus curve runs 0>1, a1, 2>3, a2; the minus loops are
    /// 1>2 with a1 and 3>0 with a2.
    const ONE_SADDLE: &str = r#"{
      "diagram": {"bubbles": [{"id": "B", "saddles": ["s"]}]},
      "surface": {
        "curves_plus": [{"id": "P", "path": ["s@0>1", "a1", "s@2>3", "a2"]}],
        "curves_minus": [{"id": "M1", "path": ["s@2>1", "a1"]}, {"id": "M2", "path": ["s@0>3", "a2"]}]
      }
    }"#;

    #[test]
    fn single_saddle_corner_incidence_is_consistent() {
        let p = parse_presentation(ONE_SADDLE).unwrap();
        assert_eq!(dual_inconsistencies(&p), Vec::<String>::new());
        assert!(dual_consistency(&p));
    }

    #[test]
    fn deleting_a_minus_curve_breaks_consistency() {
        let text = ONE_SADDLE.replace(r#", {"id": "M2", "path": ["s@0>3", "a2"]}"#, "");
        let p = parse_presentation(&text).unwrap();
        assert!(!dual_consistency(&p));
    }

    #[test]
    fn wrong_corner_is_inconsistent() {
        let text = ONE_SADDLE
            .replace("s@2>1", "s@3>0_")
            .replace("s@0>3", "s@1>2")
            .replace("s@3>0_", "s@3>0");
        let p = parse_presentation(&text).unwrap();
        assert!(!dual_consistency(&p));
    }

    #[test]
    fn one_saddle_plus_curve_meets_its_bubble_twice() {
        let p = parse_presentation(ONE_SADDLE).unwrap();
        let report = check_normal_position(&p);
        assert_eq!(
            report.condition(2).violations,
            vec![Violation::BubbleMetTwice {
                curve: "P".into(),
                bubble: "B".into()
            }]
        );
        assert!(report.condition(1).passed());
        assert_eq!(report.condition(4).status, Status::Skipped);
    }

    #[test]
    fn empty_curve_fails_condition_one() {
        let p = parse_presentation(r#"{"surface": {"curves_plus": [{"id": "C", "path": []}]}}"#)
            .unwrap();
        let report = check_normal_position(&p);
        assert!(!report.condition(1).passed());
        assert!(!report.passes());
    }

    #[test]
    fn shared_arc_on_one_side_fails_condition_three() {
        let text = r#"{
          "diagram": {"bubbles": [{"id": "B1", "saddles": ["s1"]}, {"id": "B2", "saddles": ["s2"]}]},
          "surface": {"curves_plus": [
            {"id": "C1", "path": ["s1:L", "a", "s2:L", "b"]},
            {"id": "C2", "path": ["s1:L", "a", "s2:L", "c"]}
          ]}
        }"#;
        let p = parse_presentation(text).unwrap();
        let report = check_normal_position(&p);
        assert_eq!(
            report.condition(3).violations,
            vec![Violation::ArcShared {
                curve: "C1".into(),
                other: "C2".into(),
                arc: "a".into()
            }]
        );
    }
}
