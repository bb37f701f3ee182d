//! JSON, DOT and SVG renderings of a constructed level.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construct::SubtypingGraph;
use crate::error::{Error, Result};
use crate::poset::{Poset, Provenance};
use crate::types::TypeTerm;

#[derive(Clone, Copy, Debug, Default)]
pub struct ExportOptions {
    pub no_null: bool,
    /// Only covering pairs instead of the whole strict order.
    pub hasse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub depth: usize,
    pub table: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: usize,
    pub text: String,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub sub: usize,
    pub sup: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub meta: Meta,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl GraphExport {
    /// The deepest level, nodes sorted by rendered text with dense ids,
    /// edges sorted by `(sub, sup)`.
    pub fn from_graph(g: &SubtypingGraph, opts: ExportOptions) -> Self {
        let level = g.last();
        let mut order: Vec<(String, usize)> = level
            .nodes()
            .iter()
            .enumerate()
            .filter(|(_, t)| !(opts.no_null && t.is_null()))
            .map(|(i, t)| (t.to_string(), i))
            .collect();
        order.sort();
        let id_of: HashMap<usize, usize> = order.iter().enumerate().map(|(id, &(_, i))| (i, id)).collect();
        let nodes = order
            .iter()
            .enumerate()
            .map(|(id, (text, i))| NodeRecord {
                id,
                text: text.clone(),
                level: g.level_of(&level.nodes()[*i]).unwrap_or(g.depth()),
            })
            .collect();
        let pairs = if opts.hasse {
            hasse_without(level, opts.no_null)
        } else {
            level.strict_pairs()
        };
        let mut edges: Vec<EdgeRecord> = pairs
            .into_iter()
            .filter_map(|(i, j)| {
                Some(EdgeRecord {
                    sub: *id_of.get(&i)?,
                    sup: *id_of.get(&j)?,
                    provenance: level.provenance(i, j),
                })
            })
            .collect();
        edges.sort_by_key(|e| (e.sub, e.sup));
        GraphExport {
            meta: Meta {
                depth: g.depth(),
                table: g.table_name.clone(),
            },
            nodes,
            edges,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Parses and checks ids are dense and edges point at declared nodes.
    pub fn from_json(s: &str) -> Result<Self> {
        let g: GraphExport =
            serde_json::from_str(s).map_err(|e| Error::InvalidPresentation(format!("graph JSON: {e}")))?;
        for (k, n) in g.nodes.iter().enumerate() {
            if n.id != k {
                return Err(Error::InvalidPresentation(format!("node ids are not dense at {k}")));
            }
        }
        if let Some(e) = g.edges.iter().find(|e| e.sub >= g.nodes.len() || e.sup >= g.nodes.len()) {
            return Err(Error::InvalidPresentation(format!("edge {} -> {} names a missing node", e.sub, e.sup)));
        }
        Ok(g)
    }

    /// The order the edges generate, on rendered texts.
    pub fn to_poset(&self) -> Result<Poset<String>> {
        let text = |i: usize| self.nodes[i].text.clone();
        Poset::from_pairs(
            self.nodes.iter().map(|n| n.text.clone()),
            self.edges.iter().map(|e| (text(e.sub), text(e.sup))),
        )
        .map_err(|c| Error::QuotientNotAntisymmetric(c.0, c.1))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_id(&format!("{} depth {}", self.meta.table, self.meta.depth)));
        s.push_str("  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
        for n in &self.nodes {
            let _ = writeln!(s, "  {};", dot_id(&n.text));
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -> {} [color={}];",
                dot_id(&self.nodes[e.sub].text),
                dot_id(&self.nodes[e.sup].text),
                color(e.provenance)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Covering pairs, computed after dropping `Null` when asked so that the
/// minimal types do not lose their edges.
fn hasse_without(level: &Poset<TypeTerm>, no_null: bool) -> Vec<(usize, usize)> {
    if !no_null {
        return level.hasse();
    }
    let kept = level.restrict(|t| !t.is_null());
    kept.hasse()
        .into_iter()
        .map(|(i, j)| {
            let f = |k: usize| level.index_of(&kept.nodes()[k]).expect("restricted");
            (f(i), f(j))
        })
        .collect()
}

pub fn color(p: Provenance) -> &'static str {
    match p {
        Provenance::Copy => "blue",
        Provenance::Flip => "red",
        Provenance::Merge => "green",
        Provenance::Superclass => "black",
        Provenance::Flatten | Provenance::Closure => "gray",
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Hasse diagram drawn in layers, `Null` at the bottom. Nodes in a layer are
/// ordered by the mean position of their lower covers.
pub fn layered_svg(g: &GraphExport) -> String {
    let n = g.nodes.len();
    let covers: Vec<(usize, usize, Provenance)> = match g.to_poset() {
        Ok(p) => {
            let id: HashMap<&str, usize> = g.nodes.iter().map(|x| (x.text.as_str(), x.id)).collect();
            let prov: HashMap<(usize, usize), Provenance> =
                g.edges.iter().map(|e| ((e.sub, e.sup), e.provenance)).collect();
            p.hasse()
                .into_iter()
                .map(|(i, j)| {
                    let (a, b) = (id[p.nodes()[i].as_str()], id[p.nodes()[j].as_str()]);
                    (a, b, prov.get(&(a, b)).copied().unwrap_or(Provenance::Closure))
                })
                .collect()
        }
        Err(_) => g.edges.iter().map(|e| (e.sub, e.sup, e.provenance)).collect(),
    };
    // longest chain from below
    let mut rank = vec![0usize; n];
    for _ in 0..n {
        let mut changed = false;
        for &(a, b, _) in &covers {
            if rank[b] < rank[a] + 1 {
                rank[b] = rank[a] + 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let layers = rank.iter().max().map_or(0, |m| m + 1);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); layers];
    for i in 0..n {
        rows[rank[i]].push(i);
    }
    let mut x = vec![0f64; n];
    for row in rows.iter_mut() {
        let key = |i: usize| {
            let below: Vec<f64> = covers.iter().filter(|c| c.1 == i).map(|c| x[c.0]).collect();
            if below.is_empty() {
                0.0
            } else {
                below.iter().sum::<f64>() / below.len() as f64
            }
        };
        let mut keyed: Vec<(f64, usize)> = row.iter().map(|&i| (key(i), i)).collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        *row = keyed.into_iter().map(|(_, i)| i).collect();
        for (k, &i) in row.iter().enumerate() {
            x[i] = k as f64 - (row.len() as f64 - 1.0) / 2.0;
        }
    }

    let widest = rows.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let label_w = g.nodes.iter().map(|v| v.text.chars().count()).max().unwrap_or(4) as f64 * 7.2 + 16.0;
    let (dx, dy, pad) = (label_w.max(60.0) + 12.0, 70.0, 20.0);
    let width = widest as f64 * dx + 2.0 * pad;
    let height = layers as f64 * dy + 2.0 * pad;
    let pos = |i: usize| {
        let px = width / 2.0 + x[i] * dx;
        let py = height - pad - dy / 2.0 - rank[i] as f64 * dy;
        (px, py)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="monospace" font-size="12">"#
    );
    for &(a, b, p) in &covers {
        let ((x1, y1), (x2, y2)) = (pos(a), pos(b));
        let _ = writeln!(
            s,
            r#"<line x1="{x1:.1}" y1="{:.1}" x2="{x2:.1}" y2="{:.1}" stroke="{}" stroke-width="1.2"><title>{} ({})</title></line>"#,
            y1 - 10.0,
            y2 + 10.0,
            color(p),
            xml_escape(&format!("{} <: {}", g.nodes[a].text, g.nodes[b].text)),
            p
        );
    }
    let per_level: BTreeMap<usize, &str> = BTreeMap::from([(0, "#f4f4f4"), (1, "#e3eefc"), (2, "#fdf0d8")]);
    for v in &g.nodes {
        let (px, py) = pos(v.id);
        let w = v.text.chars().count() as f64 * 7.2 + 12.0;
        let fill = per_level.get(&v.level).copied().unwrap_or("#f7e1f0");
        let _ = writeln!(
            s,
            r##"<g class="node" data-id="{}"><rect x="{:.1}" y="{:.1}" width="{w:.1}" height="20" rx="4" fill="{fill}" stroke="#555"/><text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text></g>"##,
            v.id,
            px - w / 2.0,
            py - 10.0,
            py + 4.0,
            xml_escape(&v.text)
        );
    }
    s.push_str("</svg>\n");
    s
}
