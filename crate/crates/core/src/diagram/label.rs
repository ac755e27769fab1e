use super::{Curve, DiagramError, Side, SurfacePresentation};
use crate::word::{CyclicWord, Letter};

fn side_at(c: &Curve, k: usize) -> Result<Side, DiagramError> {
    c.visits[k]
        .side
        .ok_or_else(|| DiagramError::MissingSideData(c.name.clone()))
}

/// Labels of `c.arcs[k]`: the puncture letter (if any) followed by `R` when
/// the bubbles at both ends lie on the same side of `c`. An `∅` arc yields
/// nothing.
pub fn label_type_one_arc(
    c: &Curve,
    k: usize,
    p: &SurfacePresentation,
) -> Result<Vec<Letter>, DiagramError> {
    let n = c.visits.len();
    let mut out = Vec::new();
    let punctures = p.arcs[c.arcs[k]].punctures.len() as u32;
    if punctures > 0 {
        out.push(Letter::Puncture(punctures));
    }
    if side_at(c, k)? == side_at(c, (k + 1) % n)? {
        out.push(Letter::RCross);
    }
    Ok(out)
}

/// The cyclic word of a curve, read in path order. A saddle with `l > 0`
/// saddles between it and the viewing ball is written `D{l}`.
pub fn label_curve(c: &Curve, p: &SurfacePresentation) -> Result<CyclicWord, DiagramError> {
    let mut letters = Vec::new();
    for (k, v) in c.visits.iter().enumerate() {
        letters.push(match p.depth(v.saddle, c.sphere) {
            0 => Letter::Saddle,
            l => Letter::DeepSaddle(l as u32),
        });
        letters.extend(label_type_one_arc(c, k, p)?);
    }
    Ok(CyclicWord::new(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_presentation;

    fn ring(sides: &str, stack_of_first: usize) -> SurfacePresentation {
        // one curve through `sides.len()` single-saddle bubbles, except the
        // first bubble which carries `stack_of_first` extra saddles below
        let mut bubbles = Vec::new();
        let mut path = Vec::new();
        for (i, s) in sides.chars().enumerate() {
            let mut saddles: Vec<String> = Vec::new();
            if i == 0 {
                saddles.extend((0..stack_of_first).map(|j| format!("\"u{j}\"")));
            }
            saddles.push(format!("\"s{i}\""));
            bubbles.push(format!(
                "{{\"id\": \"B{i}\", \"saddles\": [{}]}}",
                saddles.join(",")
            ));
            path.push(format!("\"s{i}:{s}\""));
            path.push(format!("\"a{i}\""));
        }
        let text = format!(
            "{{\"diagram\": {{\"bubbles\": [{}]}}, \"surface\": {{\"curves_plus\": [{{\"id\": \"C\", \"path\": [{}]}}]}}}}",
            bubbles.join(","),
            path.join(",")
        );
        parse_presentation(&text).unwrap()
    }

    #[test]
    fn all_inside_gives_all_r() {
        let p = ring("LLLL", 0);
        let w = label_curve(&p.curves_plus[0], &p).unwrap();
        assert_eq!(w, "SRSRSRSR".parse().unwrap());
    }

    #[test]
    fn alternating_sides_give_no_r() {
        let p = ring("LRLRLR", 0);
        let w = label_curve(&p.curves_plus[0], &p).unwrap();
        assert_eq!(w, "SSSSSS".parse().unwrap());
    }

    #[test]
    fn deep_saddle_letter() {
        let p = ring("LLR", 2);
        let w = label_curve(&p.curves_plus[0], &p).unwrap();
        assert_eq!(w.to_string(), "D2RSS");
    }

    #[test]
    fn missing_side_is_an_error() {
        let text = r#"{"diagram": {"bubbles": [{"id": "B", "saddles": ["s"]}]},
            "surface": {"curves_plus": [{"id": "C", "path": ["s", "a"]}]}}"#;
        let p = parse_presentation(text).unwrap();
        assert!(matches!(
            label_curve(&p.curves_plus[0], &p),
            Err(DiagramError::MissingSideData(_))
        ));
    }

    #[test]
    fn curve_without_bubbles_reads_empty() {
        let text = r#"{"surface": {"curves_plus": [{"id": "C", "path": []}]}}"#;
        let p = parse_presentation(text).unwrap();
        assert!(label_curve(&p.curves_plus[0], &p).unwrap().is_empty());
    }
}
