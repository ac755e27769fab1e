use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagram::{Curve, SurfacePresentation};

/// Connecting-operation labels on the saddles of `Λ_C`. Labels start at 1 and
/// are numbered by first appearance along the curve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairingPartition {
    /// Every saddle in a bubble met by the curve.
    pub lambda: BTreeSet<usize>,
    /// Saddle to label; unpaired saddles are absent.
    pub assignment: BTreeMap<usize, u32>,
}

impl PairingPartition {
    pub fn label(&self, saddle: usize) -> Option<u32> {
        self.assignment.get(&saddle).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Saddles grouped by label, in label order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut by_label: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (&s, &l) in &self.assignment {
            by_label.entry(l).or_default().push(s);
        }
        by_label.into_values().collect()
    }

    /// Saddles of `Λ_C` carrying no label.
    pub fn unassigned(&self) -> Vec<usize> {
        self.lambda
            .iter()
            .copied()
            .filter(|s| !self.assignment.contains_key(s))
            .collect()
    }
}

fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
    let mut root = x;
    while let Some(&p) = parent.get(&root) {
        if p == root {
            break;
        }
        root = p;
    }
    let mut cur = x;
    while cur != root {
        let next = parent[&cur];
        parent.insert(cur, root);
        cur = next;
    }
    root
}

/// All saddles in the bubbles `c` meets.
pub fn lambda_of(c: &Curve, p: &SurfacePresentation) -> BTreeSet<usize> {
    c.visits
        .iter()
        .flat_map(|v| {
            p.diagram.bubbles[p.bubble_of(v.saddle)]
                .stack
                .iter()
                .copied()
        })
        .collect()
}

/// Two saddles met by `c` get a common label when a curve on the opposite
/// sphere runs from one to the other without touching `c` or any other
/// saddle of `Λ_C` in between. Labels are merged transitively.
pub fn pair_up_saddles(c: &Curve, p: &SurfacePresentation) -> PairingPartition {
    let lambda = lambda_of(c, p);
    let met: BTreeSet<usize> = c.visits.iter().map(|v| v.saddle).collect();
    let own_arcs: BTreeSet<usize> = c.arcs.iter().copied().collect();
    let mut parent: BTreeMap<usize, usize> = met.iter().map(|&s| (s, s)).collect();

    for m in p.curves(c.sphere.opposite()) {
        let stops: Vec<usize> = (0..m.visits.len())
            .filter(|&k| lambda.contains(&m.visits[k].saddle))
            .collect();
        let n = m.visits.len();
        for (i, &k1) in stops.iter().enumerate() {
            let k2 = stops[(i + 1) % stops.len()];
            let (x, y) = (m.visits[k1].saddle, m.visits[k2].saddle);
            if x == y || !met.contains(&x) || !met.contains(&y) {
                continue;
            }
            // arcs strictly between the two visits
            let span = if k2 > k1 { k2 - k1 } else { k2 + n - k1 };
            let clean = (0..span).all(|d| !own_arcs.contains(&m.arcs[(k1 + d) % n]));
            if clean {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent.insert(rx.max(ry), rx.min(ry));
                }
            }
        }
    }

    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in &met {
        *class_size.entry(find(&mut parent, s)).or_default() += 1;
    }
    let mut root_label: BTreeMap<usize, u32> = BTreeMap::new();
    let mut assignment = BTreeMap::new();
    for v in &c.visits {
        let root = find(&mut parent, v.saddle);
        if class_size[&root] < 2 {
            continue;
        }
        let next = root_label.len() as u32 + 1;
        let label = *root_label.entry(root).or_insert(next);
        assignment.insert(v.saddle, label);
    }
    PairingPartition { lambda, assignment }
}
