mod common;

use common::fixture;
use knotword::diagram::{
    check_normal_position, label_curve, parse_presentation, SurfacePresentation,
};
use knotword::virtual_bubble::{
    check_main_theorem, expand_virtual, lemma35_crosscheck, pair_up_saddles,
};
use knotword::word::l_reduce;

const FIXTURES: &[&str] = &[
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

fn presentation(bubbles: &str, plus: &str, minus: &str) -> SurfacePresentation {
    let text = format!(
        r#"{{"meta": {{"name": "t"}}, "diagram": {{"bubbles": [{bubbles}]}},
            "surface": {{"curves_plus": [{plus}], "curves_minus": [{minus}]}}}}"#
    );
    parse_presentation(&text).unwrap()
}

fn single_bubbles(names: &[&str]) -> String {
    names
        .iter()
        .enumerate()
        .map(|(k, s)| format!(r#"{{"id": "B{k}", "saddles": ["{s}"]}}"#))
        .collect::<Vec<_>>()
        .join(", ")
}

#[test]
fn single_saddle_curve_has_no_pairs() {
    let p = presentation(
        &single_bubbles(&["s1", "t1"]),
        r#"{"id": "C", "path": ["s1:L", "a1"]}"#,
        r#"{"id": "M", "path": ["s1:L", "b1", "t1:L", "b2"]}"#,
    );
    let pairing = pair_up_saddles(&p.curves_plus[0], &p);
    assert!(pairing.is_empty());
    assert_eq!(pairing.unassigned().len(), 1);
}

#[test]
fn dual_arcs_through_the_curve_do_not_pair() {
    // both arcs of M from s1 to s2 are arcs of C itself
    let p = presentation(
        &single_bubbles(&["s1", "s2"]),
        r#"{"id": "C", "path": ["s1:L", "a1", "s2:L", "a2"]}"#,
        r#"{"id": "M", "path": ["s1:L", "a2", "s2:L", "a1"]}"#,
    );
    assert!(pair_up_saddles(&p.curves_plus[0], &p).is_empty());

    let clean = presentation(
        &single_bubbles(&["s1", "s2"]),
        r#"{"id": "C", "path": ["s1:L", "a1", "s2:L", "a2"]}"#,
        r#"{"id": "M", "path": ["s1:L", "a2", "s2:L", "b1"]}"#,
    );
    let pairing = pair_up_saddles(&clean.curves_plus[0], &clean);
    assert_eq!(pairing.classes(), vec![vec![0, 1]]);
}

#[test]
fn paired_srsr_passes_the_crosscheck() {
    let p = presentation(
        &single_bubbles(&["s1", "s2"]),
        r#"{"id": "C", "path": ["s1:L", "a1", "s2:L", "a2"]}"#,
        r#"{"id": "M", "path": ["s1:L", "b1", "s2:L", "b2"]}"#,
    );
    let c = &p.curves_plus[0];
    assert_eq!(label_curve(c, &p).unwrap().to_string(), "SRSR");
    assert!(lemma35_crosscheck(c, &p).unwrap());
}

#[test]
fn fully_paired_curve_passes_the_crosscheck() {
    let p = presentation(
        &single_bubbles(&["s1a", "s2a", "s1b", "s2b"]),
        r#"{"id": "C", "path": ["s1a:L", "a1", "s2a:R", "a2", "s1b:R", "a3", "s2b:L", "a4"]}"#,
        r#"{"id": "M1", "path": ["s1a:L", "b1", "s1b:L", "b2"]},
           {"id": "M2", "path": ["s2a:L", "c1", "s2b:L", "c2"]}"#,
    );
    let c = &p.curves_plus[0];
    assert!(pair_up_saddles(c, &p).unassigned().is_empty());
    assert_eq!(label_curve(c, &p).unwrap().to_string(), "SSRSSR");
    assert!(lemma35_crosscheck(c, &p).unwrap());
}

#[test]
fn expanded_word_is_the_l_reduction_of_the_labels() {
    for name in FIXTURES {
        let p = fixture(name);
        for r in p.curve_refs() {
            let c = p.curve(r);
            let (vd, word) = expand_virtual(c, &p).unwrap();
            let labels = label_curve(c, &p).unwrap();
            assert_eq!(word, l_reduce(&labels), "{name} {}", c.name);
            assert_eq!(vd.read_word(&p), word, "{name} {}", c.name);
        }
    }
}

#[test]
fn witnesses_point_at_a_real_loop_meeting_the_bubble_twice() {
    let mut fired = 0;
    for name in FIXTURES {
        let p = fixture(name);
        for v in check_main_theorem(&p).unwrap().verdicts {
            let Some(w) = v.witness else { continue };
            fired += 1;
            let dual = p.curves(v.sphere.opposite());
            let m = dual.iter().find(|m| m.name == w.dual_loop).unwrap();
            let hits = m
                .visits
                .iter()
                .filter(|x| p.bubble_of(x.saddle) == w.bubble)
                .count();
            assert!(
                hits >= 2,
                "{name} {}: {} meets the bubble {hits} times",
                v.curve,
                m.name
            );
        }
    }
    assert!(fired > 0);
}

#[test]
fn normal_position_fixtures_have_reducible_words() {
    for name in FIXTURES {
        let p = fixture(name);
        if !check_normal_position(&p).passes() {
            continue;
        }
        let report = check_main_theorem(&p).unwrap();
        for v in &report.verdicts {
            assert!(v.reducible, "{name} {}: {}", v.curve, v.virtual_word);
        }
    }
}

#[test]
fn mirrored_sides_give_the_same_words() {
    for name in FIXTURES {
        let text = std::fs::read_to_string(common::fixture_path(name)).unwrap();
        if text.contains('@') {
            continue;
        }
        let mirrored = text
            .replace(":L\"", ":X\"")
            .replace(":R\"", ":L\"")
            .replace(":X\"", ":R\"");
        let (p, q) = (fixture(name), parse_presentation(&mirrored).unwrap());
        for r in p.curve_refs() {
            let a = expand_virtual(p.curve(r), &p).unwrap().1;
            let b = expand_virtual(q.curve(r), &q).unwrap().1;
            assert_eq!(a.canonicalize(), b.canonicalize(), "{name}");
        }
    }
}
