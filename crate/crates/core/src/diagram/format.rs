use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    Boundary, Bubble, CrossingBallDiagram, Curve, DiagramError, Region, Saddle, Side, Sphere,
    Strand, SurfacePresentation, TypeOneArc, Visit,
};

/// On-disk shape of a `.kw` document (JSON).
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub meta: MetaDoc,
    #[serde(default)]
    pub diagram: DiagramDoc,
    #[serde(default)]
    pub surface: SurfaceDoc,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetaDoc {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub boundary: Boundary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    #[serde(default)]
    pub bubbles: Vec<BubbleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strands: Vec<StrandDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<RegionDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubbleDoc {
    pub id: String,
    /// Bottom to top.
    #[serde(default)]
    pub saddles: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrandDoc {
    pub id: String,
    pub ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDoc {
    pub id: String,
    pub strands: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arcs: Vec<ArcDoc>,
    #[serde(default)]
    pub curves_plus: Vec<CurveDoc>,
    #[serde(default)]
    pub curves_minus: Vec<CurveDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub punctures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
}

/// `path` alternates saddle-visit tokens and arc ids, starting with a visit.
/// A visit token is `name`, optionally followed by `@a>b` (entry and exit
/// corner) and/or `:L` / `:R` (side of the bubble).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub id: String,
    #[serde(default)]
    pub path: Vec<String>,
}

fn malformed(msg: impl Into<String>) -> DiagramError {
    DiagramError::Malformed(msg.into())
}

fn dangling(msg: impl Into<String>) -> DiagramError {
    DiagramError::DanglingReference(msg.into())
}

fn index_names<'a, I>(kind: &str, names: I) -> Result<HashMap<String, usize>, DiagramError>
where
    I: IntoIterator<Item = &'a String>,
{
    let mut map = HashMap::new();
    for (i, name) in names.into_iter().enumerate() {
        if map.insert(name.clone(), i).is_some() {
            return Err(malformed(format!("duplicate {kind} id {name:?}")));
        }
    }
    Ok(map)
}

struct VisitToken<'a> {
    saddle: &'a str,
    corners: Option<(u8, u8)>,
    side: Option<Side>,
}

fn parse_visit_token(tok: &str) -> Result<VisitToken<'_>, DiagramError> {
    let (rest, side) = match tok.rsplit_once(':') {
        Some((rest, "L")) => (rest, Some(Side::Left)),
        Some((rest, "R")) => (rest, Some(Side::Right)),
        Some(_) => return Err(malformed(format!("bad side in visit {tok:?}"))),
        None => (tok, None),
    };
    let (saddle, corners) = match rest.split_once('@') {
        Some((name, spec)) => {
            let (a, b) = spec
                .split_once('>')
                .ok_or_else(|| malformed(format!("bad corner spec in visit {tok:?}")))?;
            let parse = |x: &str| -> Result<u8, DiagramError> {
                x.parse::<u8>()
                    .ok()
                    .filter(|&c| c < 4)
                    .ok_or_else(|| malformed(format!("corner out of range in visit {tok:?}")))
            };
            (name, Some((parse(a)?, parse(b)?)))
        }
        None => (rest, None),
    };
    if saddle.is_empty() {
        return Err(malformed(format!("empty saddle name in visit {tok:?}")));
    }
    Ok(VisitToken {
        saddle,
        corners,
        side,
    })
}

fn corner_pair_allowed(sphere: Sphere, (a, b): (u8, u8)) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    match sphere {
        Sphere::Plus => (lo, hi) == (0, 1) || (lo, hi) == (2, 3),
        Sphere::Minus => (lo, hi) == (1, 2) || (lo, hi) == (0, 3),
    }
}

fn check_projection(d: &CrossingBallDiagram) -> Result<(), DiagramError> {
    if d.strands.is_empty() {
        return Ok(());
    }
    let nb = d.bubbles.len();
    let mut degree = vec![0usize; nb];
    let mut adj = vec![Vec::new(); nb];
    for s in &d.strands {
        degree[s.ends[0]] += 1;
        degree[s.ends[1]] += 1;
        adj[s.ends[0]].push(s.ends[1]);
        adj[s.ends[1]].push(s.ends[0]);
    }
    if let Some(b) = degree.iter().position(|&k| k != 4) {
        return Err(DiagramError::NonPlanarRotation(format!(
            "bubble {} has {} strand ends, expected 4",
            d.bubbles[b].name, degree[b]
        )));
    }
    let mut seen = vec![false; nb];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(b) = stack.pop() {
        for &c in &adj[b] {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(DiagramError::NonPlanarRotation(
            "projection is not connected".into(),
        ));
    }
    if d.regions.is_empty() {
        return Ok(());
    }
    let mut uses = vec![0usize; d.strands.len()];
    for region in &d.regions {
        let n = region.strands.len();
        for k in 0..n {
            let (a, b) = (
                &d.strands[region.strands[k]],
                &d.strands[region.strands[(k + 1) % n]],
            );
            uses[region.strands[k]] += 1;
            let shared = a.ends.iter().any(|e| b.ends.contains(e));
            if !shared {
                return Err(DiagramError::NonPlanarRotation(format!(
                    "region {}: strands {} and {} do not meet",
                    region.name, a.name, b.name
                )));
            }
        }
    }
    if let Some(s) = uses.iter().position(|&u| u != 2) {
        return Err(DiagramError::NonPlanarRotation(format!(
            "strand {} borders {} region sides, expected 2",
            d.strands[s].name, uses[s]
        )));
    }
    let chi = nb as i64 - d.strands.len() as i64 + d.regions.len() as i64;
    if chi != 2 {
        return Err(DiagramError::NonPlanarRotation(format!(
            "V - E + F = {chi}, expected 2"
        )));
    }
    Ok(())
}

impl Document {
    pub fn into_presentation(self) -> Result<SurfacePresentation, DiagramError> {
        let bubble_ix = index_names("bubble", self.diagram.bubbles.iter().map(|b| &b.id))?;
        let strand_ix = index_names("strand", self.diagram.strands.iter().map(|s| &s.id))?;
        let region_ix = index_names("region", self.diagram.regions.iter().map(|r| &r.id))?;

        let mut saddles = Vec::new();
        let mut saddle_ix = HashMap::new();
        let mut bubbles = Vec::new();
        for (bi, b) in self.diagram.bubbles.iter().enumerate() {
            let mut stack = Vec::new();
            for (level, name) in b.saddles.iter().enumerate() {
                if saddle_ix.insert(name.clone(), saddles.len()).is_some() {
                    return Err(malformed(format!("saddle {name:?} declared twice")));
                }
                stack.push(saddles.len());
                saddles.push(Saddle {
                    name: name.clone(),
                    bubble: bi,
                    level,
                });
            }
            bubbles.push(Bubble {
                name: b.id.clone(),
                stack,
            });
        }

        let strands = self
            .diagram
            .strands
            .iter()
            .map(|s| {
                let end = |name: &String| {
                    bubble_ix.get(name).copied().ok_or_else(|| {
                        dangling(format!("strand {} ends at unknown bubble {name:?}", s.id))
                    })
                };
                Ok(Strand {
                    name: s.id.clone(),
                    ends: [end(&s.ends[0])?, end(&s.ends[1])?],
                    component: s.component.clone().unwrap_or_else(|| s.id.clone()),
                })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let regions = self
            .diagram
            .regions
            .iter()
            .map(|r| {
                let strands = r
                    .strands
                    .iter()
                    .map(|s| {
                        strand_ix.get(s).copied().ok_or_else(|| {
                            dangling(format!("region {} uses unknown strand {s:?}", r.id))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Region {
                    name: r.id.clone(),
                    strands,
                })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let diagram = CrossingBallDiagram {
            bubbles,
            strands,
            regions,
        };
        check_projection(&diagram)?;

        let mut arcs = Vec::new();
        let mut arc_ix = index_names("arc", self.surface.arcs.iter().map(|a| &a.id))?;
        for a in &self.surface.arcs {
            let punctures = a
                .punctures
                .iter()
                .map(|s| {
                    strand_ix.get(s).copied().ok_or_else(|| {
                        dangling(format!("arc {} punctured by unknown strand {s:?}", a.id))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let region = match &a.region {
                Some(r) => Some(region_ix.get(r).copied().ok_or_else(|| {
                    dangling(format!("arc {} lies in unknown region {r:?}", a.id))
                })?),
                None => None,
            };
            arcs.push(TypeOneArc {
                name: a.id.clone(),
                punctures,
                region,
            });
        }

        let mut curve_names = BTreeSet::new();
        let mut build = |docs: &[CurveDoc], sphere: Sphere| -> Result<Vec<Curve>, DiagramError> {
            let mut out = Vec::new();
            let mut saddle_uses: BTreeMap<usize, usize> = BTreeMap::new();
            for c in docs {
                if !curve_names.insert(c.id.clone()) {
                    return Err(malformed(format!("duplicate curve id {:?}", c.id)));
                }
                if c.path.len() % 2 != 0 {
                    return Err(malformed(format!(
                        "curve {}: path must alternate visits and arcs and close up",
                        c.id
                    )));
                }
                let mut visits = Vec::new();
                let mut curve_arcs = Vec::new();
                for pair in c.path.chunks(2) {
                    let tok = parse_visit_token(&pair[0])?;
                    let saddle = *saddle_ix.get(tok.saddle).ok_or_else(|| {
                        dangling(format!(
                            "curve {} visits unknown saddle {:?}",
                            c.id, tok.saddle
                        ))
                    })?;
                    let mut side = tok.side;
                    if let Some(corners) = tok.corners {
                        if !corner_pair_allowed(sphere, corners) {
                            return Err(malformed(format!(
                                "curve {}: corners {}>{} are not a {} arc of {}",
                                c.id, corners.0, corners.1, sphere, tok.saddle
                            )));
                        }
                        let derived = Side::from_corners(corners.0, corners.1);
                        if side.is_some_and(|s| s != derived) {
                            return Err(malformed(format!(
                                "curve {}: side {} at {} contradicts corners {}>{}",
                                c.id,
                                side.unwrap(),
                                tok.saddle,
                                corners.0,
                                corners.1
                            )));
                        }
                        side = Some(derived);
                    }
                    let uses = saddle_uses.entry(saddle).or_default();
                    *uses += 1;
                    if *uses > 2 {
                        return Err(dangling(format!(
                            "saddle {} is referenced by more than two {} type-II arcs",
                            tok.saddle, sphere
                        )));
                    }
                    visits.push(Visit {
                        saddle,
                        side,
                        corners: tok.corners,
                    });
                    let arc_name = &pair[1];
                    let arc = *arc_ix.entry(arc_name.clone()).or_insert_with(|| {
                        arcs.push(TypeOneArc {
                            name: arc_name.clone(),
                            ..Default::default()
                        });
                        arcs.len() - 1
                    });
                    curve_arcs.push(arc);
                }
                out.push(Curve {
                    name: c.id.clone(),
                    sphere,
                    visits,
                    arcs: curve_arcs,
                });
            }
            Ok(out)
        };
        let curves_plus = build(&self.surface.curves_plus, Sphere::Plus)?;
        let curves_minus = build(&self.surface.curves_minus, Sphere::Minus)?;

        Ok(SurfacePresentation {
            name: self.meta.name,
            boundary: self.meta.boundary,
            diagram,
            saddles,
            arcs,
            curves_plus,
            curves_minus,
        })
    }

    /// Inverse of [`Document::into_presentation`]. Sides are written
    /// explicitly; corners when known.
    pub fn from_presentation(p: &SurfacePresentation) -> Document {
        let d = &p.diagram;
        let visit_token = |v: &Visit| {
            let mut tok = p.saddles[v.saddle].name.clone();
            if let Some((a, b)) = v.corners {
                tok.push_str(&format!("@{a}>{b}"));
            }
            if let Some(side) = v.side {
                tok.push_str(&format!(":{side}"));
            }
            tok
        };
        let curve_doc = |c: &Curve| CurveDoc {
            id: c.name.clone(),
            path: c
                .visits
                .iter()
                .zip(&c.arcs)
                .flat_map(|(v, &a)| [visit_token(v), p.arcs[a].name.clone()])
                .collect(),
        };
        Document {
            meta: MetaDoc {
                name: p.name.clone(),
                boundary: p.boundary,
                description: None,
            },
            diagram: DiagramDoc {
                bubbles: d
                    .bubbles
                    .iter()
                    .map(|b| BubbleDoc {
                        id: b.name.clone(),
                        saddles: b.stack.iter().map(|&s| p.saddles[s].name.clone()).collect(),
                    })
                    .collect(),
                strands: d
                    .strands
                    .iter()
                    .map(|s| StrandDoc {
                        id: s.name.clone(),
                        ends: [
                            d.bubbles[s.ends[0]].name.clone(),
                            d.bubbles[s.ends[1]].name.clone(),
                        ],
                        component: (s.component != s.name).then(|| s.component.clone()),
                    })
                    .collect(),
                regions: d
                    .regions
                    .iter()
                    .map(|r| RegionDoc {
                        id: r.name.clone(),
                        strands: r
                            .strands
                            .iter()
                            .map(|&s| d.strands[s].name.clone())
                            .collect(),
                    })
                    .collect(),
            },
            surface: SurfaceDoc {
                arcs: p
                    .arcs
                    .iter()
                    .filter(|a| !a.punctures.is_empty() || a.region.is_some())
                    .map(|a| ArcDoc {
                        id: a.name.clone(),
                        punctures: a
                            .punctures
                            .iter()
                            .map(|&s| d.strands[s].name.clone())
                            .collect(),
                        region: a.region.map(|r| d.regions[r].name.clone()),
                    })
                    .collect(),
                curves_plus: p.curves_plus.iter().map(curve_doc).collect(),
                curves_minus: p.curves_minus.iter().map(curve_doc).collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

pub fn parse_presentation(text: &str) -> Result<SurfacePresentation, DiagramError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    doc.into_presentation()
}

pub fn read_presentation(path: impl AsRef<Path>) -> Result<SurfacePresentation, DiagramError> {
    let text = std::fs::read_to_string(path)?;
    parse_presentation(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_vacuous() {
        let p =
            parse_presentation(r#"{"surface": {"curves_plus": [], "curves_minus": []}}"#).unwrap();
        assert!(p.curves_plus.is_empty() && p.curves_minus.is_empty());
        assert!(p.saddles.is_empty());
    }

    #[test]
    fn overused_saddle_is_a_dangling_reference() {
        let text = r#"{
          "diagram": {"bubbles": [{"id": "B1", "saddles": ["s1"]}, {"id": "B2", "saddles": ["s2"]}]},
          "surface": {"curves_plus": [
            {"id": "C1", "path": ["s1:L", "a1", "s2:L", "a2"]},
            {"id": "C2", "path": ["s1:L", "a3", "s2:L", "a4"]},
            {"id": "C3", "path": ["s1:L", "a5", "s2:L", "a6"]}
          ]}
        }"#;
        assert!(matches!(
            parse_presentation(text),
            Err(DiagramError::DanglingReference(_))
        ));
    }

    #[test]
    fn unknown_saddle_is_dangling() {
        let text = r#"{"surface": {"curves_plus": [{"id": "C", "path": ["s9:L", "a1"]}]}}"#;
        assert!(matches!(
            parse_presentation(text),
            Err(DiagramError::DanglingReference(_))
        ));
    }

    #[test]
    fn side_and_corner_disagreement_fails_loudly() {
        let text = r#"{
          "diagram": {"bubbles": [{"id": "B1", "saddles": ["s1"]}]},
          "surface": {"curves_plus": [{"id": "C", "path": ["s1@0>1:R", "a1"]}]}
        }"#;
        assert!(matches!(
            parse_presentation(text),
            Err(DiagramError::Malformed(_))
        ));
        let ok = text.replace("0>1:R", "0>1:L");
        let p = parse_presentation(&ok).unwrap();
        assert_eq!(p.curves_plus[0].visits[0].side, Some(Side::Left));
        let derived = text.replace("0>1:R", "1>0");
        let p = parse_presentation(&derived).unwrap();
        assert_eq!(p.curves_plus[0].visits[0].side, Some(Side::Right));
    }

    #[test]
    fn minus_corner_pairs_are_checked() {
        let text = r#"{
          "diagram": {"bubbles": [{"id": "B1", "saddles": ["s1"]}]},
          "surface": {"curves_minus": [{"id": "C", "path": ["s1@0>1", "a1"]}]}
        }"#;
        assert!(matches!(
            parse_presentation(text),
            Err(DiagramError::Malformed(_))
        ));
    }

    #[test]
    fn projection_checks() {
        // one crossing with two loops: V=1, E=2, F=3 on the sphere
        let good = r#"{"diagram": {
            "bubbles": [{"id": "B", "saddles": []}],
            "strands": [{"id": "k1", "ends": ["B", "B"]}, {"id": "k2", "ends": ["B", "B"]}],
            "regions": [{"id": "f1", "strands": ["k1"]}, {"id": "f2", "strands": ["k2"]},
                        {"id": "f3", "strands": ["k1", "k2"]}]
        }}"#;
        parse_presentation(good).unwrap();
        let bad = good.replace(r#"{"id": "f2", "strands": ["k2"]},"#, "");
        assert!(matches!(
            parse_presentation(&bad),
            Err(DiagramError::NonPlanarRotation(_))
        ));
        let three_valent = r#"{"diagram": {
            "bubbles": [{"id": "B", "saddles": []}, {"id": "C", "saddles": []}],
            "strands": [{"id": "k1", "ends": ["B", "C"]}, {"id": "k2", "ends": ["B", "C"]},
                        {"id": "k3", "ends": ["B", "C"]}]
        }}"#;
        assert!(matches!(
            parse_presentation(three_valent),
            Err(DiagramError::NonPlanarRotation(_))
        ));
    }

    #[test]
    fn unknown_fields_are_malformed() {
        assert!(matches!(
            parse_presentation(r#"{"surfaces": {}}"#),
            Err(DiagramError::Malformed(_))
        ));
        assert!(matches!(
            parse_presentation("not json"),
            Err(DiagramError::Malformed(_))
        ));
    }
}
