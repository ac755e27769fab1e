use std::path::PathBuf;

use knotword::diagram::{
    check_normal_position, dual_consistency, label_curve, parse_presentation, read_presentation,
    Curve, DiagramError, Document, Side, Sphere, Status, SurfacePresentation, Visit,
};

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn fixture(name: &str) -> SurfacePresentation {
    read_presentation(path(name)).unwrap()
}

fn failing(p: &SurfacePresentation) -> Vec<u8> {
    check_normal_position(p)
        .conditions
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.condition)
        .collect()
}

#[test]
fn closed_fixtures_are_in_normal_position() {
    for name in [
        "sphere_two_saddles.kw",
        "sphere_r6.kw",
        "torus_r8_1.kw",
        "torus_r8_2.kw",
    ] {
        let p = fixture(name);
        assert!(p.is_closed(), "{name}");
        let report = check_normal_position(&p);
        assert!(report.passes(), "{name}");
        for n in 4..=6 {
            assert_eq!(report.condition(n).status, Status::Skipped, "{name} ({n})");
        }
        assert!(dual_consistency(&p), "{name}");
    }
}

#[test]
fn each_counter_fixture_fails_exactly_its_condition() {
    assert_eq!(failing(&fixture("meridional_clean.kw")), Vec::<u8>::new());
    assert_eq!(failing(&fixture("violates_4.kw")), vec![4]);
    assert_eq!(failing(&fixture("violates_5.kw")), vec![5]);
    assert_eq!(failing(&fixture("violates_6.kw")), vec![6]);
    assert_eq!(failing(&fixture("fig3a_meridian.kw")), vec![2]);
    assert_eq!(failing(&fixture("fig2_word.kw")), vec![4, 5]);
    assert_eq!(failing(&fixture("fig4_paired.kw")), Vec::<u8>::new());
    assert_eq!(failing(&fixture("fig8_stacked.kw")), Vec::<u8>::new());
}

#[test]
fn word_fixture_reads_its_word() {
    let p = fixture("fig2_word.kw");
    let c = p.find_curve("C").map(|r| p.curve(r)).unwrap();
    assert_eq!(label_curve(c, &p).unwrap().to_string(), "SP2RSRSP1SSRSS");
}

#[test]
fn documents_round_trip() {
    for name in [
        "sphere_r6.kw",
        "torus_r8_2.kw",
        "fig2_word.kw",
        "fig4_paired.kw",
        "violates_6.kw",
        "fig8_stacked.kw",
    ] {
        let p = fixture(name);
        let text = Document::from_presentation(&p).to_json();
        let again = parse_presentation(&text).unwrap();
        assert_eq!(
            Document::from_presentation(&again).to_json(),
            text,
            "{name}"
        );
        assert_eq!(
            check_normal_position(&again),
            check_normal_position(&p),
            "{name}"
        );
    }
}

#[test]
fn bad_documents_are_rejected() {
    assert!(matches!(
        read_presentation(path("errors/not_json.kw")),
        Err(DiagramError::Malformed(_))
    ));
    assert!(matches!(
        read_presentation(path("errors/unknown_saddle.kw")),
        Err(DiagramError::DanglingReference(_))
    ));
    assert!(read_presentation(path("errors/side_conflict.kw")).is_err());
    assert!(matches!(
        read_presentation(path("errors/missing.kw")),
        Err(DiagramError::Io(_))
    ));
}

const ALL: &[&str] = &[
    "sphere_two_saddles.kw",
    "sphere_r6.kw",
    "torus_r8_1.kw",
    "torus_r8_2.kw",
    "fig2_word.kw",
    "fig3a_meridian.kw",
    "fig4_paired.kw",
    "fig8_stacked.kw",
    "meridional_clean.kw",
    "violates_4.kw",
    "violates_5.kw",
    "violates_6.kw",
];

/// The same curve traversed backwards: sides flip and corners swap.
fn reversed(c: &Curve) -> Curve {
    let n = c.visits.len();
    let visits = c
        .visits
        .iter()
        .rev()
        .map(|v| Visit {
            saddle: v.saddle,
            side: v.side.map(Side::flipped),
            corners: v.corners.map(|(a, b)| (b, a)),
        })
        .collect();
    let arcs = (0..n).map(|j| c.arcs[(2 * n - 2 - j) % n]).collect();
    Curve {
        visits,
        arcs,
        ..c.clone()
    }
}

fn rotated(c: &Curve, k: usize) -> Curve {
    let mut out = c.clone();
    out.visits.rotate_left(k);
    out.arcs.rotate_left(k);
    out
}

#[test]
fn labels_do_not_depend_on_the_starting_point() {
    for name in ALL {
        let p = fixture(name);
        for r in p.curve_refs() {
            let c = p.curve(r);
            let base = label_curve(c, &p).unwrap().canonicalize();
            for k in 0..c.visits.len() {
                let c2 = rotated(c, k);
                assert_eq!(label_curve(&c2, &p).unwrap().canonicalize(), base, "{name}");
                let c3 = reversed(&c2);
                assert_eq!(label_curve(&c3, &p).unwrap().canonicalize(), base, "{name}");
            }
        }
    }
}

#[test]
fn report_does_not_depend_on_curve_order() {
    for name in ALL {
        let p = fixture(name);
        let mut q = p.clone();
        q.curves_plus.reverse();
        q.curves_minus.reverse();
        assert_eq!(
            check_normal_position(&p),
            check_normal_position(&q),
            "{name}"
        );
    }
}

#[test]
fn deleting_a_curve_adds_no_violations() {
    for name in ALL {
        let p = fixture(name);
        let before = check_normal_position(&p);
        for r in p.curve_refs() {
            let mut q = p.clone();
            match r.sphere {
                Sphere::Plus => q.curves_plus.remove(r.index),
                Sphere::Minus => q.curves_minus.remove(r.index),
            };
            let after = check_normal_position(&q);
            for n in [2, 4, 5] {
                for v in &after.condition(n).violations {
                    assert!(
                        before.condition(n).violations.contains(v),
                        "{name} without {}: new {v:?}",
                        p.curve(r).name
                    );
                }
            }
        }
    }
}

#[test]
fn closed_saddles_meet_two_arcs_per_sphere() {
    for name in [
        "sphere_two_saddles.kw",
        "sphere_r6.kw",
        "torus_r8_1.kw",
        "torus_r8_2.kw",
    ] {
        let p = fixture(name);
        for sphere in [Sphere::Plus, Sphere::Minus] {
            for s in 0..p.saddles.len() {
                let hits: usize = p
                    .curves(sphere)
                    .iter()
                    .map(|c| c.visits.iter().filter(|v| v.saddle == s).count())
                    .sum();
                assert_eq!(hits, 2, "{name} {} on {sphere}", p.saddles[s].name);
            }
        }
    }
}
