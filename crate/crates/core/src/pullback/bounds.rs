use std::collections::BTreeSet;

use serde::Serialize;

use super::map::vertex_of;
use super::{euler, PullbackError, PullbackGraph};
use crate::diagram::{label_curve, Curve, DiagramError, Side, Sphere, SurfacePresentation};
use crate::word::Letter;

/// The `|R|` bounds of one pullback graph, with margins (bound minus value;
/// negative means violated).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub r: usize,
    pub s: usize,
    pub faces: usize,
    pub max_face: usize,
    pub chi: i64,
    /// Fewest `R` edges on any face; must be at least 2.
    pub min_face_r: usize,
    /// Faces with fewer than two `R` edges.
    pub faces_short_of_r: Vec<String>,
    pub margin_face_r: i64,
    pub margin_max_face: i64,
    pub margin_face_count: i64,
    pub margin_chi: i64,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.margin_face_r >= 0
            && self.margin_max_face >= 0
            && self.margin_face_count >= 0
            && self.margin_chi >= 0
    }
}

/// Checks: every face has at least two `R` edges; the largest face has at
/// most `|R| - 2` vertices; there are at most `|R|` faces; `χ <= |R| - |S|`.
pub fn check_bounds(g: &PullbackGraph) -> Result<BoundReport, PullbackError> {
    let chi = euler(g)?;
    let r = g.r_count();
    let s = g.vertex_count();
    let per_face: Vec<usize> = (0..g.face_count()).map(|f| g.face_r_count(f)).collect();
    let min_face_r = per_face.iter().copied().min().unwrap_or(0);
    let faces_short_of_r = per_face
        .iter()
        .enumerate()
        .filter(|&(_, &k)| k < 2)
        .map(|(f, _)| g.face_names[f].clone())
        .collect();
    let max_face = g.max_face_size();
    Ok(BoundReport {
        r,
        s,
        faces: g.face_count(),
        max_face,
        chi,
        min_face_r,
        faces_short_of_r,
        margin_face_r: min_face_r as i64 - 2,
        margin_max_face: r as i64 - 2 - max_face as i64,
        margin_face_count: r as i64 - g.face_count() as i64,
        margin_chi: r as i64 - s as i64 - chi,
    })
}

/// Outcome of the region count for one curve and one side of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionBound {
    pub curve: String,
    pub sphere: Sphere,
    pub side: Side,
    /// Saddles met by the curve whose bubbles lie on this side.
    pub m0: usize,
    /// `R` labels on the curves found on this side.
    pub found_r: usize,
    /// False when some group of curves touches the curve from both sides,
    /// which no planar picture allows.
    pub consistent: bool,
}

impl RegionBound {
    pub fn holds(&self) -> bool {
        self.found_r >= self.m0
    }
}

/// One curve reduced to what the region count needs.
#[derive(Clone, Debug)]
pub(crate) struct CurveSides {
    pub visits: Vec<(usize, Side)>,
    pub r: usize,
}

/// Peels the region on `side` of curve `c` layer by layer: first the curves
/// sharing a saddle with `c` on that side, then the curves sharing a saddle
/// with those, and so on, adding up their `R` labels.
pub(crate) fn region_core(curves: &[CurveSides], c: usize, side: Side) -> (usize, usize, bool) {
    let m0 = curves[c].visits.iter().filter(|&&(_, s)| s == side).count();
    let n = curves.len();
    let touches = |a: usize, b: usize| {
        curves[a]
            .visits
            .iter()
            .any(|&(v, _)| curves[b].visits.iter().any(|&(w, _)| v == w))
    };
    // side of `c` at each of its saddles
    let side_at = |v: usize| {
        curves[c]
            .visits
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, s)| s)
    };

    let mut seen = vec![false; n];
    seen[c] = true;
    let mut found_r = 0;
    let mut consistent = true;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // one group of curves connected through shared saddles, avoiding c
        let mut group = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < group.len() {
            let a = group[head];
            head += 1;
            for b in 0..n {
                if !seen[b] && touches(a, b) {
                    seen[b] = true;
                    group.push(b);
                }
            }
        }
        let attach: BTreeSet<Side> = group
            .iter()
            .flat_map(|&a| curves[a].visits.iter().filter_map(|&(v, _)| side_at(v)))
            .collect();
        if attach.len() > 1 {
            consistent = false;
        }
        if attach.contains(&side) {
            found_r += group.iter().map(|&a| curves[a].r).sum::<usize>();
        }
    }
    (m0, found_r, consistent)
}

fn presentation_curves(
    p: &SurfacePresentation,
    sphere: Sphere,
) -> Result<Vec<CurveSides>, DiagramError> {
    p.curves(sphere)
        .iter()
        .map(|c| {
            let visits = c
                .visits
                .iter()
                .map(|v| {
                    Ok((
                        v.saddle,
                        v.side
                            .ok_or_else(|| DiagramError::MissingSideData(c.name.clone()))?,
                    ))
                })
                .collect::<Result<Vec<_>, DiagramError>>()?;
            let r = label_curve(c, p)?.count(Letter::RCross);
            Ok(CurveSides { visits, r })
        })
        .collect()
}

/// The region count for the side `side` of curve `c`: `m0` saddles of `c`
/// lie there, and the curves inside should carry at least `m0` `R` labels.
pub fn region_r_lower_bound(
    c: &Curve,
    p: &SurfacePresentation,
    side: Option<Side>,
) -> Result<RegionBound, PullbackError> {
    let side = side.ok_or(PullbackError::RegionAmbiguous)?;
    let curves = presentation_curves(p, c.sphere)?;
    let idx = p
        .curves(c.sphere)
        .iter()
        .position(|d| d.name == c.name)
        .ok_or_else(|| {
            PullbackError::Assembly(format!("curve {} is not part of the presentation", c.name))
        })?;
    let (m0, found_r, consistent) = region_core(&curves, idx, side);
    Ok(RegionBound {
        curve: c.name.clone(),
        sphere: c.sphere,
        side,
        m0,
        found_r,
        consistent,
    })
}

/// Region counts for both sides of every face of a pullback graph, with
/// sides read from the orientation colouring. `None` when the `R` marks
/// admit no colouring.
pub fn graph_region_bounds(g: &PullbackGraph) -> Option<Vec<RegionBound>> {
    let colour = g.map.orientation_colouring()?;
    let mut out = Vec::new();
    for sphere in [Sphere::Plus, Sphere::Minus] {
        let ids: Vec<usize> = (0..g.face_count())
            .filter(|&f| g.faces[f].sign == sphere)
            .collect();
        let curves: Vec<CurveSides> = ids
            .iter()
            .map(|&f| CurveSides {
                visits: g.faces[f]
                    .half_edges
                    .iter()
                    .map(|&h| {
                        let v = vertex_of(h) as usize;
                        (v, if colour[v] { Side::Left } else { Side::Right })
                    })
                    .collect(),
                r: g.face_r_count(f),
            })
            .collect();
        for (i, &f) in ids.iter().enumerate() {
            for side in [Side::Left, Side::Right] {
                let (m0, found_r, consistent) = region_core(&curves, i, side);
                out.push(RegionBound {
                    curve: g.face_names[f].clone(),
                    sphere,
                    side,
                    m0,
                    found_r,
                    consistent,
                });
            }
        }
    }
    Some(out)
}
