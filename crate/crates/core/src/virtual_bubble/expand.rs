use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::diagram::{label_curve, Curve, DiagramError, Side, Sphere, SurfacePresentation};
use crate::word::{l_reduce, CyclicWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualBubble {
    /// Real bubble this one was manifested from.
    pub origin: usize,
    /// Position of the curve visit that produced it.
    pub visit: usize,
    /// Index `0..=2l` along the curve; `l` is the central one.
    pub index: usize,
    pub side: Side,
}

/// One type-I arc of the virtual curve: either an original arc or one of the
/// `2l` new `∅` arcs between consecutive virtual bubbles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arc", rename_all = "snake_case")]
pub enum VirtualArc {
    Original(usize),
    New,
}

/// Where a stop of an opposite-sphere loop lands after the expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum DualStop {
    Virtual(usize),
    /// A saddle of a met bubble lying beyond the met saddle; it has no
    /// virtual copy on the curve.
    Residual(usize),
    /// A saddle of a bubble the curve does not meet.
    Outside(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualLoop {
    pub name: String,
    pub stops: Vec<DualStop>,
    /// `arcs[k]` joins `stops[k]` and `stops[k + 1]`.
    pub arcs: Vec<usize>,
}

/// Bookkeeping diagram of one curve with every met bubble replaced by its
/// virtual bubbles, together with the induced opposite-sphere loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualDiagram {
    pub curve: String,
    pub sphere: Sphere,
    pub bubbles: Vec<VirtualBubble>,
    /// Virtual bubbles in the order the curve meets them.
    pub stops: Vec<usize>,
    /// `arcs[k]` follows `stops[k]`.
    pub arcs: Vec<VirtualArc>,
    pub dual: Vec<DualLoop>,
    /// Arcs of the real curve, for telling dual arcs apart from it.
    pub curve_arcs: Vec<usize>,
}

impl VirtualDiagram {
    /// The virtual word read directly off the expanded curve: `S` at every
    /// virtual bubble; punctures and `R` on original arcs as in the real
    /// diagram, with `R` decided by the sides of the flanking virtual bubbles.
    pub fn read_word(&self, p: &SurfacePresentation) -> CyclicWord {
        let n = self.stops.len();
        let mut letters = Vec::new();
        for k in 0..n {
            letters.push(Letter::Saddle);
            if let VirtualArc::Original(a) = self.arcs[k] {
                let punctures = p.arcs[a].punctures.len() as u32;
                if punctures > 0 {
                    letters.push(Letter::Puncture(punctures));
                }
            }
            let (here, next) = (
                &self.bubbles[self.stops[k]],
                &self.bubbles[self.stops[(k + 1) % n]],
            );
            if here.side == next.side {
                letters.push(Letter::RCross);
            }
        }
        CyclicWord::new(letters)
    }

    /// Number of virtual bubbles manifested from a real bubble.
    pub fn count_from(&self, bubble: usize) -> usize {
        self.bubbles.iter().filter(|b| b.origin == bubble).count()
    }

    /// DOT rendering of the virtual curve and its dual loops.
    pub fn to_dot(&self, p: &SurfacePresentation) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", self.curve);
        let _ = writeln!(out, "  layout=neato;");
        for (i, b) in self.bubbles.iter().enumerate() {
            let _ = writeln!(
                out,
                "  v{i} [label=\"{}.{}{}\" shape=circle];",
                p.diagram.bubbles[b.origin].name, b.index, b.side
            );
        }
        let node = |s: &DualStop| match *s {
            DualStop::Virtual(i) => format!("v{i}"),
            DualStop::Residual(s) | DualStop::Outside(s) => format!("s{s}"),
        };
        let mut extra = BTreeMap::new();
        for l in &self.dual {
            for s in &l.stops {
                if let DualStop::Residual(x) | DualStop::Outside(x) = *s {
                    extra.insert(x, matches!(s, DualStop::Residual(_)));
                }
            }
        }
        for (s, residual) in extra {
            let style = if residual { "dashed" } else { "solid" };
            let _ = writeln!(
                out,
                "  s{s} [label=\"{}\" shape=box style={style}];",
                p.saddles[s].name
            );
        }
        let n = self.stops.len();
        for k in 0..n {
            let label = match self.arcs[k] {
                VirtualArc::Original(a) => p.arcs[a].name.clone(),
                VirtualArc::New => String::new(),
            };
            let _ = writeln!(
                out,
                "  v{} -- v{} [color=red label=\"{label}\"];",
                self.stops[k],
                self.stops[(k + 1) % n]
            );
        }
        for l in &self.dual {
            let m = l.stops.len();
            for k in 0..m {
                let _ = writeln!(
                    out,
                    "  {} -- {} [style=dotted label=\"{}:{}\"];",
                    node(&l.stops[k]),
                    node(&l.stops[(k + 1) % m]),
                    l.name,
                    p.arcs[l.arcs[k]].name
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Side of virtual bubble `index`: the outermost ones keep the original side
/// and the rest alternate.
fn virtual_side(original: Side, index: usize) -> Side {
    if index.is_multiple_of(2) {
        original
    } else {
        original.flipped()
    }
}

/// Replaces every bubble met by `c` with `2l + 1` virtual bubbles, where `l`
/// is the depth of the met saddle. Returns the diagram and the virtual word
/// obtained by l-reduction of the curve's labeled word.
pub fn expand_virtual(
    c: &Curve,
    p: &SurfacePresentation,
) -> Result<(VirtualDiagram, CyclicWord), DiagramError> {
    let word = l_reduce(&label_curve(c, p)?);

    let mut bubbles = Vec::new();
    let mut stops = Vec::new();
    let mut arcs = Vec::new();
    // (visit, index) -> virtual bubble id
    let mut id_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, v) in c.visits.iter().enumerate() {
        let side = v
            .side
            .ok_or_else(|| DiagramError::MissingSideData(c.name.clone()))?;
        let l = p.depth(v.saddle, c.sphere);
        for index in 0..=2 * l {
            let id = bubbles.len();
            bubbles.push(VirtualBubble {
                origin: p.bubble_of(v.saddle),
                visit: k,
                index,
                side: virtual_side(side, index),
            });
            id_of.insert((k, index), id);
            stops.push(id);
            arcs.push(if index == 2 * l {
                VirtualArc::Original(c.arcs[k])
            } else {
                VirtualArc::New
            });
        }
    }

    // Which virtual bubble each opposite-side visit of a met-bubble saddle
    // lands on. The met saddle itself maps to the central bubble; a saddle
    // `j` steps beneath it maps to indices `l - j` and `l + j`, one per
    // opposite-side arc in (curve id, position) order.
    let mut first_visit_of_bubble: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, v) in c.visits.iter().enumerate() {
        first_visit_of_bubble
            .entry(p.bubble_of(v.saddle))
            .or_insert(k);
    }
    let opposite = c.sphere.opposite();
    let mut others: Vec<&Curve> = p.curves(opposite).iter().collect();
    others.sort_by(|a, b| a.name.cmp(&b.name));
    let mut seen_below: BTreeMap<usize, usize> = BTreeMap::new();
    let mut dual = Vec::new();
    for m in others {
        let mut dual_stops = Vec::new();
        for v in &m.visits {
            let u = v.saddle;
            let stop = match first_visit_of_bubble.get(&p.bubble_of(u)) {
                None => DualStop::Outside(u),
                Some(&k) => {
                    let sigma = c.visits[k].saddle;
                    let (du, ds) = (p.depth(u, c.sphere), p.depth(sigma, c.sphere));
                    if u == sigma {
                        DualStop::Virtual(id_of[&(k, ds)])
                    } else if du < ds {
                        let j = ds - du;
                        let nth = seen_below.entry(u).or_default();
                        let index = if *nth == 0 { ds - j } else { ds + j };
                        *nth += 1;
                        DualStop::Virtual(id_of[&(k, index)])
                    } else {
                        DualStop::Residual(u)
                    }
                }
            };
            dual_stops.push(stop);
        }
        dual.push(DualLoop {
            name: m.name.clone(),
            stops: dual_stops,
            arcs: m.arcs.clone(),
        });
    }

    let vd = VirtualDiagram {
        curve: c.name.clone(),
        sphere: c.sphere,
        bubbles,
        stops,
        arcs,
        dual,
        curve_arcs: c.arcs.clone(),
    };
    Ok((vd, word))
}
