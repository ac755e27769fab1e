//! Crossing-ball diagrams and surface presentations.
//!
//! A presentation records, for each sphere `S²₊`/`S²₋`, the closed curves of
//! `F ∩ S²±` as cyclic paths that alternate between saddle visits (type-II
//! arcs) and type-I arcs. Every type-I arc lies on `S²₊ ∩ S²₋`, so in a
//! complete presentation it occurs in exactly one plus curve and one minus
//! curve; every saddle is crossed by two plus and two minus type-II arcs.
//!
//! Saddle corners are numbered 0..4 counter-clockwise seen from `B³₊`. The
//! plus arcs of a saddle join corners `{0,1}` and `{2,3}`, the minus arcs
//! `{1,2}` and `{3,0}`.

mod format;
mod label;
mod normal;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use format::{parse_presentation, read_presentation, Document};
pub use label::{label_curve, label_type_one_arc};
pub use normal::{
    check_normal_position, dual_consistency, dual_inconsistencies, ConditionVerdict,
    NormalPositionReport, Status, Violation,
};

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("dangling reference: {0}")]
    DanglingReference(String),
    #[error("non-planar rotation system: {0}")]
    NonPlanarRotation(String),
    #[error("curve {0} has a saddle visit without side data")]
    MissingSideData(String),
    #[error("i/o error")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sphere {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sphere {
    pub fn opposite(self) -> Sphere {
        match self {
            Sphere::Plus => Sphere::Minus,
            Sphere::Minus => Sphere::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sphere::Plus => '+',
            Sphere::Minus => '-',
        }
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S2{}", self.symbol())
    }
}

/// Which side of an oriented curve a bubble lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// Side of the bubble for a type-II arc running from corner `from` to
    /// corner `to`: the bubble lies to the left when the step is
    /// counter-clockwise.
    pub fn from_corners(from: u8, to: u8) -> Side {
        if (from + 1) % 4 == to {
            Side::Left
        } else {
            Side::Right
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bubble {
    pub name: String,
    /// Saddle indices, bottom to top.
    pub stack: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub name: String,
    pub ends: [usize; 2],
    pub component: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub strands: Vec<usize>,
}

/// The link projection with a ball at every crossing. Strands and regions are
/// optional; when present they must form a connected 4-valent graph on the
/// sphere.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingBallDiagram {
    pub bubbles: Vec<Bubble>,
    pub strands: Vec<Strand>,
    pub regions: Vec<Region>,
}

impl CrossingBallDiagram {
    pub fn regions_adjacent(&self, a: usize, b: usize) -> bool {
        a != b
            && self.regions[a]
                .strands
                .iter()
                .any(|s| self.regions[b].strands.contains(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saddle {
    pub name: String,
    pub bubble: usize,
    /// Position in the bubble stack, 0 = bottom.
    pub level: usize,
}

/// A type-I arc.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeOneArc {
    pub name: String,
    /// Strands of the link crossed by the arc, one entry per puncture.
    pub punctures: Vec<usize>,
    /// Region of `S²₊ ∩ S²₋ − L` containing the arc, when known.
    pub region: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub saddle: usize,
    /// Side of the curve the bubble lies on. Derived from `corners` when only
    /// those are given.
    pub side: Option<Side>,
    /// Entry and exit corner of the type-II arc.
    pub corners: Option<(u8, u8)>,
}

/// A simple closed curve of `F ∩ S²±`. `arcs[k]` runs from `visits[k]` to
/// `visits[k + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub sphere: Sphere,
    pub visits: Vec<Visit>,
    pub arcs: Vec<usize>,
}

impl Curve {
    /// The saddles at the two ends of `arcs[k]`.
    pub fn arc_ends(&self, k: usize) -> (usize, usize) {
        let n = self.visits.len();
        (self.visits[k].saddle, self.visits[(k + 1) % n].saddle)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Closed,
    Meridional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveRef {
    pub sphere: Sphere,
    pub index: usize,
}

/// Combinatorial encoding of `F ∩ S²±` together with its diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    pub name: String,
    pub boundary: Boundary,
    pub diagram: CrossingBallDiagram,
    pub saddles: Vec<Saddle>,
    pub arcs: Vec<TypeOneArc>,
    pub curves_plus: Vec<Curve>,
    pub curves_minus: Vec<Curve>,
}

impl SurfacePresentation {
    pub fn curves(&self, sphere: Sphere) -> &[Curve] {
        match sphere {
            Sphere::Plus => &self.curves_plus,
            Sphere::Minus => &self.curves_minus,
        }
    }

    pub fn curve(&self, r: CurveRef) -> &Curve {
        &self.curves(r.sphere)[r.index]
    }

    /// Every curve, plus sphere first, then minus, each in id order.
    pub fn curve_refs(&self) -> Vec<CurveRef> {
        let mut out = Vec::new();
        for sphere in [Sphere::Plus, Sphere::Minus] {
            let curves = self.curves(sphere);
            let mut idx: Vec<usize> = (0..curves.len()).collect();
            idx.sort_by(|&a, &b| curves[a].name.cmp(&curves[b].name));
            out.extend(idx.into_iter().map(|index| CurveRef { sphere, index }));
        }
        out
    }

    pub fn find_curve(&self, name: &str) -> Option<CurveRef> {
        self.curve_refs()
            .into_iter()
            .find(|r| self.curve(*r).name == name)
    }

    pub fn bubble_of(&self, saddle: usize) -> usize {
        self.saddles[saddle].bubble
    }

    /// Saddles lying between the given one and the viewer's ball: below it
    /// for `S²₊`, above it for `S²₋`.
    pub fn depth(&self, saddle: usize, sphere: Sphere) -> usize {
        let s = &self.saddles[saddle];
        match sphere {
            Sphere::Plus => s.level,
            Sphere::Minus => self.diagram.bubbles[s.bubble].stack.len() - 1 - s.level,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == Boundary::Closed
    }

    /// Saddle name to index.
    pub fn saddle_index(&self) -> BTreeMap<&str, usize> {
        self.saddles
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name.as_str(), i))
            .collect()
    }

    pub fn has_punctures(&self) -> bool {
        self.arcs.iter().any(|a| !a.punctures.is_empty())
    }
}
