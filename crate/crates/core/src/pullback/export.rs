use std::fmt::Write as _;

use super::map::{vertex_of, Map};
use super::{PullbackError, PullbackGraph};
use crate::diagram::{
    Boundary, Bubble, CrossingBallDiagram, Curve, Saddle, Sphere, SurfacePresentation, TypeOneArc,
    Visit,
};

/// Projection corner of map corner `i` at a vertex of orientation `positive`.
fn projected(i: u32, positive: bool) -> u8 {
    let c = if positive { i & 3 } else { (5 - (i & 3)) & 3 };
    c as u8
}

/// A closed presentation realizing the map: one saddle per vertex, bubbles
/// given by `stacks` (bottom to top; vertices not listed get a bubble of
/// their own), one type-I arc per edge, one curve per face. Visits carry
/// corners, so sides and `R` labels follow from them.
pub fn map_to_presentation(
    map: &Map,
    name: &str,
    stacks: &[Vec<usize>],
) -> Result<SurfacePresentation, PullbackError> {
    let colour = map
        .orientation_colouring()
        .ok_or_else(|| PullbackError::Assembly("R marks admit no orientation colouring".into()))?;
    let nv = map.vertex_count();
    let mut bubble_of = vec![None; nv];
    let mut bubbles = Vec::new();
    for stack in stacks {
        for &v in stack {
            if v >= nv || bubble_of[v].is_some() {
                return Err(PullbackError::Assembly(format!(
                    "vertex {v} is stacked twice or out of range"
                )));
            }
            bubble_of[v] = Some(bubbles.len());
        }
        bubbles.push(Bubble {
            name: format!("B{}", bubbles.len() + 1),
            stack: stack.clone(),
        });
    }
    for v in 0..nv {
        if bubble_of[v].is_none() {
            bubble_of[v] = Some(bubbles.len());
            bubbles.push(Bubble {
                name: format!("B{}", bubbles.len() + 1),
                stack: vec![v],
            });
        }
    }
    let saddles: Vec<Saddle> = (0..nv)
        .map(|v| {
            let b = bubble_of[v].unwrap();
            let level = bubbles[b].stack.iter().position(|&w| w == v).unwrap();
            Saddle {
                name: format!("s{}", v + 1),
                bubble: b,
                level,
            }
        })
        .collect();
    let edge_index = map.edge_index();
    let arcs: Vec<TypeOneArc> = (0..map.edge_count())
        .map(|e| TypeOneArc {
            name: format!("a{}", e + 1),
            ..Default::default()
        })
        .collect();

    let mut curves_plus = Vec::new();
    let mut curves_minus = Vec::new();
    for f in map.faces() {
        let visits = f
            .half_edges
            .iter()
            .map(|&h| {
                let v = vertex_of(h) as usize;
                let (i, o) = (projected(h + 3, colour[v]), projected(h, colour[v]));
                Visit {
                    saddle: v,
                    side: Some(crate::diagram::Side::from_corners(i, o)),
                    corners: Some((i, o)),
                }
            })
            .collect();
        let arcs = f
            .half_edges
            .iter()
            .map(|&h| edge_index[h as usize])
            .collect();
        let (list, prefix) = match f.sign {
            Sphere::Plus => (&mut curves_plus, 'P'),
            Sphere::Minus => (&mut curves_minus, 'M'),
        };
        list.push(Curve {
            name: format!("{prefix}{}", list.len() + 1),
            sphere: f.sign,
            visits,
            arcs,
        });
    }

    Ok(SurfacePresentation {
        name: name.to_string(),
        boundary: Boundary::Closed,
        diagram: CrossingBallDiagram {
            bubbles,
            strands: Vec::new(),
            regions: Vec::new(),
        },
        saddles,
        arcs,
        curves_plus,
        curves_minus,
    })
}

/// DOT rendering: `R` edges red, faces listed in the graph label.
pub fn to_dot(g: &PullbackGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{name}\" {{");
    for v in &g.vertex_names {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (a, b) in g.map.edges() {
        let (va, vb) = (
            &g.vertex_names[vertex_of(a) as usize],
            &g.vertex_names[vertex_of(b) as usize],
        );
        let colour = if g.map.is_marked(a) { "red" } else { "black" };
        let _ = writeln!(
            out,
            "  \"{va}\" -- \"{vb}\" [color={colour} taillabel=\"{}\" headlabel=\"{}\"];",
            a % 4,
            b % 4
        );
    }
    let faces: Vec<String> = g
        .faces
        .iter()
        .zip(&g.face_names)
        .map(|(f, n)| {
            let vs: Vec<&str> = f
                .vertices()
                .map(|v| g.vertex_names[v as usize].as_str())
                .collect();
            format!("{n}{}: {}", f.sign.symbol(), vs.join(" "))
        })
        .collect();
    let _ = writeln!(out, "  label=\"{}\";", faces.join("\\l"));
    out.push_str("}\n");
    out
}
