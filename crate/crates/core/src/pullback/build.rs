use std::collections::{BTreeMap, VecDeque};

use super::map::{vertex_of, Map};
use super::{PullbackError, PullbackGraph};
use crate::diagram::{
    dual_inconsistencies, label_type_one_arc, Curve, Sphere, SurfacePresentation,
};
use crate::word::Letter;

/// An arc end: the arc and whether it is the end where the plus curve
/// leaves the arc (`true`) or enters it (`false`).
type End = (usize, bool);

fn assembly(msg: impl Into<String>) -> PullbackError {
    PullbackError::Assembly(msg.into())
}

/// Glues the plus and minus disks of a closed presentation into its pullback
/// graph. Vertex `v` is saddle `v`; faces are named after their curves.
pub fn build_pullback(p: &SurfacePresentation) -> Result<PullbackGraph, PullbackError> {
    if p.has_punctures() {
        return Err(PullbackError::PuncturedPresentation);
    }
    if let Some(first) = dual_inconsistencies(p).into_iter().next() {
        return Err(assembly(first));
    }
    let ns = p.saddles.len();

    // where each arc sits on its plus curve
    let mut plus_pos: BTreeMap<usize, (&Curve, usize)> = BTreeMap::new();
    for c in &p.curves_plus {
        for (k, &a) in c.arcs.iter().enumerate() {
            plus_pos.insert(a, (c, k));
        }
    }
    let end_saddle = |e: End| {
        let (c, k) = plus_pos[&e.0];
        let (x, y) = c.arc_ends(k);
        if e.1 {
            y
        } else {
            x
        }
    };
    let end_corner = |e: End| {
        let (c, k) = plus_pos[&e.0];
        let n = c.visits.len();
        if e.1 {
            c.visits[(k + 1) % n].corners.map(|(i, _)| i)
        } else {
            c.visits[k].corners.map(|(_, o)| o)
        }
    };

    // wedge partners per saddle: plus[e] / minus[e]
    let mut plus_partner: BTreeMap<End, End> = BTreeMap::new();
    for c in &p.curves_plus {
        let n = c.visits.len();
        for k in 0..n {
            let a_in = (c.arcs[(k + n - 1) % n], true);
            let a_out = (c.arcs[k], false);
            plus_partner.insert(a_in, a_out);
            plus_partner.insert(a_out, a_in);
        }
    }
    let mut minus_partner: BTreeMap<End, End> = BTreeMap::new();
    for c in &p.curves_minus {
        let n = c.visits.len();
        for k in 0..n {
            let x = c.visits[k].saddle;
            let resolve = |arc: usize, corner: Option<u8>| -> Result<End, PullbackError> {
                let cands: Vec<End> = [(arc, false), (arc, true)]
                    .into_iter()
                    .filter(|&e| end_saddle(e) == x)
                    .collect();
                match cands.as_slice() {
                    [one] => Ok(*one),
                    [_, _] => {
                        let corner = corner.ok_or_else(|| {
                            assembly(format!(
                                "arc {} returns to saddle {} and no corners are given",
                                p.arcs[arc].name, p.saddles[x].name
                            ))
                        })?;
                        cands
                            .iter()
                            .copied()
                            .find(|&e| end_corner(e) == Some(corner))
                            .ok_or_else(|| {
                                assembly(format!(
                                    "corner data at saddle {} does not match",
                                    p.saddles[x].name
                                ))
                            })
                    }
                    _ => Err(assembly(format!(
                        "arc {} does not end at saddle {}",
                        p.arcs[arc].name, p.saddles[x].name
                    ))),
                }
            };
            let e_in = resolve(c.arcs[(k + n - 1) % n], c.visits[k].corners.map(|(i, _)| i))?;
            let e_out = resolve(c.arcs[k], c.visits[k].corners.map(|(_, o)| o))?;
            minus_partner.insert(e_in, e_out);
            minus_partner.insert(e_out, e_in);
        }
    }

    // cyclic corner order around each saddle
    let mut around: Vec<[End; 4]> = Vec::with_capacity(ns);
    for x in 0..ns {
        let a = *plus_partner
            .keys()
            .find(|&&e| end_saddle(e) == x)
            .ok_or_else(|| assembly(format!("saddle {} has no arcs", p.saddles[x].name)))?;
        let b = plus_partner[&a];
        let c = *minus_partner
            .get(&b)
            .ok_or_else(|| assembly("minus side incomplete"))?;
        let d = plus_partner[&c];
        if minus_partner.get(&d) != Some(&a) {
            return Err(assembly(format!(
                "arcs around saddle {} do not alternate",
                p.saddles[x].name
            )));
        }
        around.push([a, b, c, d]);
    }
    let corner_of = |x: usize, flip: bool, e: End| -> u32 {
        let pos = around[x]
            .iter()
            .position(|&f| f == e)
            .expect("end at saddle") as u32;
        if flip {
            pos ^ 1
        } else {
            pos
        }
    };

    // choose orientations so every edge joins an even and an odd corner
    let mut flip: Vec<Option<bool>> = vec![None; ns];
    for root in 0..ns {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let fx = flip[x].unwrap();
            for e in around[x] {
                let other = (e.0, !e.1);
                let y = end_saddle(other);
                let px = corner_of(x, fx, e) & 1;
                let want = corner_of(y, false, other) & 1 == px;
                match flip[y] {
                    None => {
                        flip[y] = Some(want);
                        queue.push_back(y);
                    }
                    Some(f) if f != want => return Err(assembly("surface is not orientable")),
                    Some(_) => {}
                }
            }
        }
    }
    let half = |e: End| {
        let x = end_saddle(e);
        4 * x as u32 + corner_of(x, flip[x].unwrap(), e)
    };

    let mut sigma = vec![0u32; 4 * ns];
    let mut marks = vec![false; 4 * ns];
    for (&a, &(c, k)) in &plus_pos {
        let (h0, h1) = (half((a, false)), half((a, true)));
        let r = label_type_one_arc(c, k, p)?.contains(&Letter::RCross);
        sigma[h0 as usize] = h1;
        sigma[h1 as usize] = h0;
        marks[h0 as usize] = r;
        marks[h1 as usize] = r;
    }
    let map = Map::new(sigma, marks).map_err(|e| assembly(e.to_string()))?;

    // name faces after the curves with the same arcs
    let mut arc_of = vec![0usize; 4 * ns];
    for &a in plus_pos.keys() {
        arc_of[half((a, false)) as usize] = a;
        arc_of[half((a, true)) as usize] = a;
    }
    let mut by_arcs: BTreeMap<(Sphere, Vec<usize>), &str> = BTreeMap::new();
    for c in p.curves_plus.iter().chain(&p.curves_minus) {
        let mut arcs = c.arcs.clone();
        arcs.sort_unstable();
        by_arcs.insert((c.sphere, arcs), &c.name);
    }
    let faces = map.faces();
    let mut face_names = Vec::with_capacity(faces.len());
    for f in &faces {
        let mut arcs: Vec<usize> = f.half_edges.iter().map(|&h| arc_of[h as usize]).collect();
        arcs.sort_unstable();
        let name = by_arcs.get(&(f.sign, arcs)).ok_or_else(|| {
            assembly(format!(
                "a face through saddle {} matches no curve",
                p.saddles[vertex_of(f.half_edges[0]) as usize].name
            ))
        })?;
        face_names.push(name.to_string());
    }
    if faces.len() != p.curves_plus.len() + p.curves_minus.len() {
        return Err(assembly("curves meeting no saddle have no face"));
    }

    Ok(PullbackGraph {
        map,
        vertex_names: p.saddles.iter().map(|s| s.name.clone()).collect(),
        faces,
        face_names,
    })
}
