//! Pullback graphs: saddles collapsed to vertices, type-I arcs as edges
//! (marked when labeled `R`), and the disks of `F ∩ B³±` as `+`/`-` faces.

mod bounds;
mod build;
mod enumerate;
mod export;
pub mod map;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{DiagramError, Sphere};

pub use bounds::{
    check_bounds, graph_region_bounds, region_r_lower_bound, BoundReport, RegionBound,
};
pub use build::build_pullback;
pub use enumerate::{
    enumerate_configurations, Configuration, EnumerationOptions, EnumerationReport,
};
pub use export::{map_to_presentation, to_dot};
pub use map::{Map, MapFace};

#[derive(Debug, Error)]
pub enum PullbackError {
    #[error("presentation has punctured arcs; pullback graphs are built for closed surfaces only")]
    PuncturedPresentation,
    #[error("census mismatch: V - E + F = {direct}, census gives {census}")]
    CensusMismatch { direct: i64, census: i64 },
    #[error("graph has no faces")]
    EmptyGraph,
    #[error("odd Euler characteristic {0} cannot come from a closed orientable surface")]
    OddEuler(i64),
    #[error("Euler characteristic {0} exceeds 2")]
    EulerTooLarge(i64),
    #[error("no side given for the region")]
    RegionAmbiguous,
    #[error("r = {0} is out of range (even, 4 <= r <= 12)")]
    ROutOfRange(usize),
    #[error("cannot assemble a pullback graph: {0}")]
    Assembly(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A pullback graph with names for its vertices and faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackGraph {
    pub map: Map,
    pub vertex_names: Vec<String>,
    /// Faces of `map`, in [`Map::faces`] order.
    pub faces: Vec<MapFace>,
    /// Curve each face came from (or a generated name).
    pub face_names: Vec<String>,
}

impl PullbackGraph {
    /// Wraps a bare map, naming vertices `s1, s2, ...` and faces `P1, ...` /
    /// `M1, ...` by sign.
    pub fn from_map(map: Map) -> PullbackGraph {
        let faces = map.faces();
        let mut counters = [0usize; 2];
        let face_names = faces
            .iter()
            .map(|f| {
                let (slot, prefix) = if f.sign == Sphere::Plus {
                    (0, 'P')
                } else {
                    (1, 'M')
                };
                counters[slot] += 1;
                format!("{prefix}{}", counters[slot])
            })
            .collect();
        let vertex_names = (0..map.vertex_count())
            .map(|v| format!("s{}", v + 1))
            .collect();
        PullbackGraph {
            map,
            vertex_names,
            faces,
            face_names,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.map.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.map.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn r_count(&self) -> usize {
        self.map.r_count()
    }

    /// `n -> F_n`.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut c = BTreeMap::new();
        for f in &self.faces {
            *c.entry(f.len()).or_default() += 1;
        }
        c
    }

    pub fn max_face_size(&self) -> usize {
        self.faces.iter().map(MapFace::len).max().unwrap_or(0)
    }

    /// Number of `R` edges on a face boundary.
    pub fn face_r_count(&self, f: usize) -> usize {
        self.faces[f]
            .half_edges
            .iter()
            .filter(|&&h| self.map.is_marked(h))
            .count()
    }

    /// Face word: `S` per vertex, `R` after each marked edge.
    pub fn face_word(&self, f: usize) -> crate::word::CyclicWord {
        let mut letters = Vec::new();
        for &h in &self.faces[f].half_edges {
            letters.push(crate::word::Letter::Saddle);
            if self.map.is_marked(h) {
                letters.push(crate::word::Letter::RCross);
            }
        }
        crate::word::CyclicWord::new(letters)
    }

    pub fn checkerboard_ok(&self) -> bool {
        // every edge has a + face on one side and a - face on the other
        let mut sign_of = vec![Sphere::Plus; 4 * self.vertex_count()];
        for f in &self.faces {
            for &h in &f.half_edges {
                sign_of[h as usize] = f.sign;
            }
        }
        // the faces on the two sides of edge {h, σh} are those through h and σh
        self.map
            .edges()
            .iter()
            .all(|&(a, b)| sign_of[a as usize] != sign_of[b as usize])
    }
}

/// Euler characteristic, computed as `V - E + F` and as `ΣF_n - Σ(n/4)F_n`;
/// the two must agree.
pub fn euler(g: &PullbackGraph) -> Result<i64, PullbackError> {
    if g.faces.is_empty() {
        return Err(PullbackError::EmptyGraph);
    }
    let direct = g.vertex_count() as i64 - g.edge_count() as i64 + g.face_count() as i64;
    let census = g.census();
    let corners: usize = census.iter().map(|(n, k)| n * k).sum();
    let faces: usize = census.values().sum();
    if !corners.is_multiple_of(4) || corners / 4 != g.vertex_count() {
        return Err(PullbackError::CensusMismatch {
            direct,
            census: faces as i64 - (corners / 4) as i64,
        });
    }
    let via_census = faces as i64 - (corners / 4) as i64;
    if via_census != direct {
        return Err(PullbackError::CensusMismatch {
            direct,
            census: via_census,
        });
    }
    Ok(direct)
}

/// Genus of the closed orientable surface with Euler characteristic `chi`.
pub fn classify(chi: i64) -> Result<u32, PullbackError> {
    if chi % 2 != 0 {
        return Err(PullbackError::OddEuler(chi));
    }
    if chi > 2 {
        return Err(PullbackError::EulerTooLarge(chi));
    }
    Ok(((2 - chi) / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_from_chi() {
        assert_eq!(classify(2).unwrap(), 0);
        assert_eq!(classify(0).unwrap(), 1);
        assert_eq!(classify(-2).unwrap(), 2);
        assert!(matches!(classify(1), Err(PullbackError::OddEuler(1))));
        assert!(classify(4).is_err());
    }

    #[test]
    fn empty_graph_has_no_euler_characteristic() {
        let g = PullbackGraph::from_map(Map::empty());
        assert!(euler(&g).is_err());
    }
}
