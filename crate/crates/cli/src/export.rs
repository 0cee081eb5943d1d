//! Graph export: the `p`/`e` edge-list format with a CSV label file, or JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hhkit::families::{complete_graph, hh_graph, kneser_graph, shift_graph};
use hhkit::{FamilyParams, Graph, Label};
use serde_json::json;

use crate::{Family, Format};

pub fn build(family: Family, n: u8, r: Option<u8>) -> Result<Graph, String> {
    let need_r = || {
        let r = r.ok_or_else(|| format!("{family:?} needs r"))?;
        FamilyParams::new(n, r).map_err(|e| e.to_string())
    };
    let g = match family {
        Family::Hh => hh_graph(need_r()?),
        Family::Kneser => kneser_graph(need_r()?),
        Family::Complete => complete_graph(n),
        Family::Shift => shift_graph(n),
    };
    g.map_err(|e| e.to_string())
}

/// Header `p <vertices> <edges>`, then `e <u> <v>` per edge, 1-based.
pub fn edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

fn head_and_tail(l: Label) -> (String, String) {
    match l {
        Label::Hh(v) => (v.head.to_string(), v.tail.to_string()),
        Label::Subset(s) => (String::new(), s.to_string()),
        Label::Element(e) => (e.to_string(), String::new()),
    }
}

/// CSV `index,head,tail` with 1-based indices.
pub fn labels_csv(g: &Graph) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "head", "tail"]).map_err(|e| e.to_string())?;
    for (i, l) in g.labels().unwrap_or(&[]).iter().enumerate() {
        let (head, tail) = head_and_tail(*l);
        w.write_record([(i + 1).to_string(), head, tail]).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

pub fn json_graph(g: &Graph, family: Family, n: u8, r: Option<u8>) -> serde_json::Value {
    let labels: Vec<_> = g
        .labels()
        .unwrap_or(&[])
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let (head, tail) = head_and_tail(*l);
            json!({ "index": i + 1, "head": head, "tail": tail })
        })
        .collect();
    json!({
        "family": format!("{family:?}").to_lowercase(),
        "n": n,
        "r": r,
        "vertices": g.vertex_count(),
        "edges": g.edges().map(|(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
        "labels": labels,
    })
}

pub fn labels_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".labels.csv");
    PathBuf::from(s)
}

pub fn gen(family: Family, n: u8, r: Option<u8>, out: Option<&Path>, format: Format) -> Result<String, String> {
    let g = build(family, n, r)?;
    let body = match format {
        Format::Edges => edge_list(&g),
        Format::Json => serde_json::to_string_pretty(&json_graph(&g, family, n, r)).map_err(|e| e.to_string())? + "\n",
    };
    let Some(path) = out else {
        return Ok(body);
    };
    let write = |p: &Path, s: &str| std::fs::write(p, s).map_err(|e| format!("cannot write {}: {e}", p.display()));
    write(path, &body)?;
    let mut msg = format!("wrote {} ({} vertices, {} edges)\n", path.display(), g.vertex_count(), g.edge_count());
    if format == Format::Edges {
        let lp = labels_path(path);
        write(&lp, &labels_csv(&g)?)?;
        let _ = writeln!(msg, "wrote {}", lp.display());
    }
    Ok(msg)
}
