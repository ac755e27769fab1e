use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{EnumerateArgs, VERSION_LINE};
use crate::diagram::Document;
use crate::pullback::{
    enumerate_configurations, map_to_presentation, to_dot, EnumerationOptions, EnumerationReport,
};

#[derive(Serialize)]
struct ConfigJson {
    index: usize,
    vertices: usize,
    edges: usize,
    faces: usize,
    chi: i64,
    genus: u32,
    max_face: usize,
    census: BTreeMap<usize, usize>,
    face_words: Vec<String>,
}

#[derive(Serialize)]
struct EnumerateJson<'a> {
    summary: &'a EnumerationReport,
    configurations: Vec<ConfigJson>,
}

#[derive(Serialize)]
struct Manifest {
    version: &'static str,
    r: usize,
    genus_max: Option<u32>,
    files: Vec<ManifestEntry>,
}

#[derive(Serialize)]
struct ManifestEntry {
    path: String,
    sha256: String,
}

fn summary_text(report: &EnumerationReport, configs: &[ConfigJson]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "r = {}", report.r);
    if let Some(g) = report.genus_max {
        let _ = writeln!(s, "genus at most {g}");
    }
    let _ = writeln!(
        s,
        "configurations: {} ({} up to exchanging + and -)",
        report.count, report.count_modulo_sign_swap
    );
    let _ = writeln!(s, "genus  count");
    for (g, k) in &report.counts_by_genus {
        let _ = writeln!(s, "{g:<6} {k}");
    }
    let chi: Vec<String> = report
        .chi_distribution
        .iter()
        .map(|(c, k)| format!("{c}:{k}"))
        .collect();
    let _ = writeln!(s, "chi distribution: {}", chi.join(" "));
    let _ = writeln!(s, "max face size: {}", report.max_face_size);
    let _ = writeln!(s, "#    V   E   F   chi  genus  census");
    for c in configs {
        let census: Vec<String> = c.census.iter().map(|(n, k)| format!("F{n}={k}")).collect();
        let _ = writeln!(
            s,
            "{:<4} {:<3} {:<3} {:<3} {:<4} {:<6} {}",
            c.index,
            c.vertices,
            c.edges,
            c.faces,
            c.chi,
            c.genus,
            census.join(" ")
        );
    }
    s
}

pub(super) fn cmd_enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let opts = EnumerationOptions {
        r: a.r,
        genus_max: a.genus_max,
        jobs: a.jobs,
        ..Default::default()
    };
    let report = enumerate_configurations(&opts)?;
    let configs: Vec<ConfigJson> = report
        .configurations
        .iter()
        .enumerate()
        .map(|(k, c)| ConfigJson {
            index: k + 1,
            vertices: c.graph.vertex_count(),
            edges: c.graph.edge_count(),
            faces: c.graph.face_count(),
            chi: c.chi,
            genus: c.genus,
            max_face: c.graph.max_face_size(),
            census: c.graph.census(),
            face_words: (0..c.graph.face_count())
                .map(|f| format!("{}{}", c.graph.faces[f].sign.symbol(), c.graph.face_word(f)))
                .collect(),
        })
        .collect();
    let summary = summary_text(&report, &configs);
    out.write_all(summary.as_bytes())?;

    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut files: Vec<(String, String)> = Vec::new();
        for (k, c) in report.configurations.iter().enumerate() {
            let name = format!("r{}_config_{:03}", report.r, k + 1);
            files.push((format!("{name}.dot"), to_dot(&c.graph, &name)));
            let p = map_to_presentation(&c.graph.map, &name, &[])?;
            files.push((
                format!("{name}.kw"),
                Document::from_presentation(&p).to_json(),
            ));
        }
        files.push((
            "summary.txt".to_string(),
            format!("{VERSION_LINE}\n{summary}"),
        ));
        let mut entries = Vec::new();
        for (path, body) in &files {
            let full = dir.join(path);
            std::fs::write(&full, body).with_context(|| format!("writing {}", full.display()))?;
            entries.push(ManifestEntry {
                path: path.clone(),
                sha256: hex::encode(Sha256::digest(body.as_bytes())),
            });
        }
        entries.sort_by(|x, y| x.path.cmp(&y.path));
        let manifest = Manifest {
            version: VERSION_LINE,
            r: report.r,
            genus_max: report.genus_max,
            files: entries,
        };
        let manifest_path = dir.join("manifest.json");
        std::fs::write(
            &manifest_path,
            serde_json::to_string_pretty(&manifest)? + "\n",
        )
        .with_context(|| format!("writing {}", manifest_path.display()))?;
        writeln!(
            out,
            "{} files written to {}",
            files.len() + 1,
            dir.display()
        )?;
    }

    let json = EnumerateJson {
        summary: &report,
        configurations: configs,
    };
    writeln!(
        out,
        "```json\n{}\n```",
        serde_json::to_string_pretty(&json)?
    )?;
    Ok(0)
}
