//! Regenerates the closed-surface fixtures in `fixtures/` from enumerated
//! pullback graphs. Run with `cargo run --release --example gen_fixtures`.

use std::path::{Path, PathBuf};

use knotword::diagram::{check_normal_position, dual_consistency, Document, SurfacePresentation};
use knotword::pullback::{
    build_pullback, check_bounds, enumerate_configurations, graph_region_bounds,
    map_to_presentation, EnumerationOptions, Map,
};
use knotword::virtual_bubble::{check_main_theorem, expand_virtual, meridian_witness};

/// Like [`configurations`], but face words need not be reducible.
fn relaxed_configurations(r: usize, genus: u32) -> Vec<Map> {
    let opts = EnumerationOptions {
        r,
        genus_max: Some(1),
        skip_word_filter: true,
        ..Default::default()
    };
    let report = enumerate_configurations(&opts).unwrap();
    report
        .configurations
        .into_iter()
        .filter(|c| c.genus == genus)
        .map(|c| c.graph.map)
        .collect()
}

fn configurations(r: usize, genus: u32) -> Vec<Map> {
    let opts = EnumerationOptions {
        r,
        genus_max: Some(1),
        ..Default::default()
    };
    let report = enumerate_configurations(&opts).unwrap();
    report
        .configurations
        .into_iter()
        .filter(|c| c.genus == genus)
        .map(|c| c.graph.map)
        .collect()
}

/// Everything a valid closed fixture must satisfy.
fn admissible(p: &SurfacePresentation) -> bool {
    if !check_normal_position(p).passes() || !dual_consistency(p) {
        return false;
    }
    let Ok(g) = build_pullback(p) else {
        return false;
    };
    if !check_bounds(&g).is_ok_and(|b| b.holds()) {
        return false;
    }
    if !graph_region_bounds(&g).is_some_and(|b| b.iter().all(|b| b.consistent && b.holds())) {
        return false;
    }
    let Ok(report) = check_main_theorem(p) else {
        return false;
    };
    if !report.all_reducible() {
        return false;
    }
    p.curves_plus
        .iter()
        .chain(&p.curves_minus)
        .all(|c| expand_virtual(c, p).is_ok_and(|(vd, _)| meridian_witness(&vd).is_none()))
}

fn has_deep_visit(p: &SurfacePresentation) -> bool {
    p.curves_plus
        .iter()
        .chain(&p.curves_minus)
        .any(|c| c.visits.iter().any(|v| p.depth(v.saddle, c.sphere) > 0))
}

/// First admissible way of stacking two vertices of `map` into one bubble.
fn stacked(map: &Map, name: &str) -> Option<SurfacePresentation> {
    let faces = map.faces();
    let n = map.vertex_count();
    let share = |a: usize, b: usize| {
        faces
            .iter()
            .any(|f| f.vertices().any(|v| v as usize == a) && f.vertices().any(|v| v as usize == b))
    };
    for lower in 0..n {
        for upper in 0..n {
            if lower == upper || share(lower, upper) {
                continue;
            }
            let Ok(p) = map_to_presentation(map, name, &[vec![lower, upper]]) else {
                continue;
            };
            if has_deep_visit(&p) && admissible(&p) {
                return Some(p);
            }
        }
    }
    None
}

fn write(dir: &Path, file: &str, p: &SurfacePresentation, description: &str) {
    let mut doc = Document::from_presentation(p);
    doc.meta.description = Some(description.to_string());
    std::fs::write(dir.join(file), doc.to_json()).unwrap();
    println!("wrote {file}");
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();

    let sphere4 = &configurations(4, 0)[0];
    let p = map_to_presentation(sphere4, "sphere_two_saddles", &[]).unwrap();
    assert!(admissible(&p));
    write(
        &dir,
        "sphere_two_saddles.kw",
        &p,
        "Sphere with two saddles and four R arcs on each side.",
    );

    let sphere6 = &configurations(6, 0)[0];
    let p = map_to_presentation(sphere6, "sphere_r6", &[]).unwrap();
    assert!(admissible(&p));
    write(
        &dir,
        "sphere_r6.kw",
        &p,
        "Sphere with four saddles and six R arcs on each side.",
    );

    for (k, t) in configurations(8, 1).iter().enumerate() {
        let name = format!("torus_r8_{}", k + 1);
        let p = map_to_presentation(t, &name, &[]).unwrap();
        assert!(admissible(&p));
        write(
            &dir,
            &format!("{name}.kw"),
            &p,
            "Torus with eight R arcs on each side.",
        );
    }

    // Stacking search; slow past r = 10, so the radii come from the command line.
    let mut found = false;
    let radii: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let radii = if radii.is_empty() { vec![8, 10] } else { radii };
    for r in radii {
        let candidates = relaxed_configurations(r, 1);
        println!("r = {r}: {} relaxed tori", candidates.len());
        if let Some(p) = candidates.iter().find_map(|t| stacked(t, "torus_stacked")) {
            write(
                &dir,
                "torus_stacked.kw",
                &p,
                "Torus with one bubble holding two saddles.",
            );
            found = true;
            break;
        }
    }
    if !found {
        println!("no admissible stacked torus");
    }
}
