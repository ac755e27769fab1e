use std::io::Write;

use anyhow::Context;
use serde::Serialize;

use super::{load, CheckArgs, EulerArgs};
use crate::diagram::{check_normal_position, Side, Sphere, Status, SurfacePresentation, Violation};
use crate::pullback::{
    build_pullback, check_bounds, classify, euler, region_r_lower_bound, RegionBound,
};
use crate::virtual_bubble::{check_main_theorem, expand_virtual};

fn describe(v: &Violation) -> String {
    match v {
        Violation::EmptyWord { curve } => format!("{curve} meets no bubble"),
        Violation::BubbleMetTwice { curve, bubble } => {
            format!("{curve} meets bubble {bubble} more than once")
        }
        Violation::ArcRepeated { curve, arc } => format!("{curve} runs along arc {arc} twice"),
        Violation::ArcShared { curve, other, arc } => {
            format!("{curve} and {other} share arc {arc}")
        }
        Violation::CornerShared {
            curve,
            other,
            saddle,
        } => {
            format!("{curve} and {other} use the same corners of saddle {saddle}")
        }
        Violation::BubbleAndIncidentStrand {
            curve,
            bubble,
            strand,
        } => {
            format!(
                "{curve} meets bubble {bubble} and is punctured by strand {strand} ending there"
            )
        }
        Violation::ComponentTwice { curve, component } => {
            format!("{curve} is punctured more than once by component {component}")
        }
        Violation::AdjacentArcs { curve, other, arcs } => {
            format!(
                "{curve} and {other} share arcs {} and {} in adjacent regions",
                arcs[0], arcs[1]
            )
        }
    }
}

fn file_stem(sphere: Sphere, name: &str) -> String {
    let clean: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let prefix = if sphere == Sphere::Plus {
        "plus"
    } else {
        "minus"
    };
    format!("{prefix}_{clean}")
}

#[derive(Serialize)]
struct CheckJson<'a> {
    presentation: &'a str,
    boundary: crate::diagram::Boundary,
    normal_position: &'a crate::diagram::NormalPositionReport,
    theorem: &'a crate::virtual_bubble::MainTheoremReport,
    pass: bool,
}

pub(super) fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let p = load(&a.file)?;
    let np = check_normal_position(&p);
    let theorem = check_main_theorem(&p)?;
    writeln!(out, "presentation: {} ({})", p.name, boundary_name(&p))?;
    writeln!(out, "normal position:")?;
    for c in &np.conditions {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        writeln!(out, "  ({}) {status}", c.condition)?;
        for v in &c.violations {
            writeln!(out, "      {}", describe(v))?;
        }
    }
    writeln!(out, "virtual words:")?;
    for v in &theorem.verdicts {
        let verdict = if v.reducible {
            "reducible"
        } else {
            "irreducible"
        };
        write!(
            out,
            "  {} {}  {}  {verdict}",
            v.sphere.symbol(),
            v.curve,
            v.virtual_word
        )?;
        if let Some(w) = &v.witness {
            write!(
                out,
                "  witness: bubble {} via {}",
                p.diagram.bubbles[w.bubble].name, w.dual_loop
            )?;
        }
        writeln!(out)?;
    }
    if !theorem.empty_curves.is_empty() {
        writeln!(
            out,
            "curves meeting no bubble: {}",
            theorem.empty_curves.join(", ")
        )?;
    }
    let pass = np.passes() && theorem.all_reducible();
    writeln!(out, "result: {}", if pass { "PASS" } else { "FAIL" })?;

    if let Some(dir) = &a.emit_virtual {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for r in p.curve_refs() {
            let c = p.curve(r);
            if c.visits.is_empty() {
                continue;
            }
            let (vd, _) = expand_virtual(c, &p)?;
            let path = dir.join(format!("{}.dot", file_stem(c.sphere, &c.name)));
            std::fs::write(&path, vd.to_dot(&p))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        writeln!(out, "virtual diagrams written to {}", dir.display())?;
    }

    let json = CheckJson {
        presentation: &p.name,
        boundary: p.boundary,
        normal_position: &np,
        theorem: &theorem,
        pass,
    };
    writeln!(
        out,
        "```json\n{}\n```",
        serde_json::to_string_pretty(&json)?
    )?;
    Ok(if pass { 0 } else { 1 })
}

fn boundary_name(p: &SurfacePresentation) -> &'static str {
    if p.is_closed() {
        "closed"
    } else {
        "meridional"
    }
}

#[derive(Serialize)]
struct EulerJson<'a> {
    presentation: &'a str,
    vertices: usize,
    edges: usize,
    faces: usize,
    census: std::collections::BTreeMap<usize, usize>,
    chi: i64,
    genus: u32,
    bounds: &'a crate::pullback::BoundReport,
    regions: &'a [RegionBound],
    pass: bool,
}

pub(super) fn cmd_euler(a: &EulerArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let p = load(&a.file)?;
    let g = build_pullback(&p)?;
    let chi = euler(&g)?;
    let genus = classify(chi)?;
    let bounds = check_bounds(&g)?;
    let mut regions = Vec::new();
    for sphere in [Sphere::Plus, Sphere::Minus] {
        for c in p.curves(sphere) {
            for side in [Side::Left, Side::Right] {
                regions.push(region_r_lower_bound(c, &p, Some(side))?);
            }
        }
    }
    let census = g.census();
    writeln!(out, "presentation: {}", p.name)?;
    writeln!(
        out,
        "V = {}, E = {}, F = {}",
        g.vertex_count(),
        g.edge_count(),
        g.face_count()
    )?;
    let census_text: Vec<String> = census.iter().map(|(n, k)| format!("F{n}={k}")).collect();
    writeln!(out, "census: {}", census_text.join(" "))?;
    writeln!(out, "chi = {chi} (V - E + F and sum F_n - |S| agree)")?;
    writeln!(out, "genus: {genus}")?;
    writeln!(out, "|R| = {}, |S| = {}", bounds.r, bounds.s)?;
    writeln!(out, "bounds:")?;
    writeln!(
        out,
        "  fewest R on a face: {} (margin {})",
        bounds.min_face_r, bounds.margin_face_r
    )?;
    writeln!(
        out,
        "  largest face: {} <= |R| - 2 (margin {})",
        bounds.max_face, bounds.margin_max_face
    )?;
    writeln!(
        out,
        "  faces: {} <= |R| (margin {})",
        bounds.faces, bounds.margin_face_count
    )?;
    writeln!(
        out,
        "  chi: {} <= |R| - |S| (margin {})",
        bounds.chi, bounds.margin_chi
    )?;
    writeln!(out, "regions:")?;
    for b in &regions {
        let state = match (b.consistent, b.holds()) {
            (false, _) => "inconsistent",
            (true, true) => "ok",
            (true, false) => "violated",
        };
        writeln!(
            out,
            "  {} {} {}: m0 = {}, found R = {}  {state}",
            b.sphere.symbol(),
            b.curve,
            b.side,
            b.m0,
            b.found_r
        )?;
    }
    let pass = bounds.holds() && regions.iter().all(|b| b.consistent && b.holds());
    writeln!(out, "result: {}", if pass { "PASS" } else { "FAIL" })?;
    let json = EulerJson {
        presentation: &p.name,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces: g.face_count(),
        census,
        chi,
        genus,
        bounds: &bounds,
        regions: &regions,
        pass,
    };
    writeln!(
        out,
        "```json\n{}\n```",
        serde_json::to_string_pretty(&json)?
    )?;
    Ok(if pass { 0 } else { 1 })
}
