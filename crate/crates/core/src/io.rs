//! Text and JSON formats.
//!
//! Graph files are line based; `#` starts a comment:
//!
//! ```text
//! v <vertex>                  declare a vertex (endpoints are declared implicitly)
//! a <arc> <tail> <head>       directed arc
//! e <edge> <u> <v>            undirected edge (stored endpoint order u, v)
//! rot <vertex> <end> ...      cyclic order at a vertex; <end> is <arc>+ for
//!                             the tail end and <arc>- for the head end
//! ```
//!
//! A file uses either `a` or `e` records, not both.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::flows::{CoefficientTable, ConformalCount, VertexMap, ZpMap};
use crate::four_flow::KleinMap;
use crate::graph::{ArcEnd, Digraph, Direction, End, Multigraph, RotationSystem, UndirectedGraph};
use crate::group::Klein;
use crate::structure::{ColoringReport, OrientationCertificate, PlanarReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    /// `true` for `a` records, `false` for `e` records (or no links at all).
    pub directed: bool,
    digraph: Digraph,
    pub rotation: Option<RotationSystem>,
}

impl GraphFile {
    /// The arcs as written; edges are taken in their stored order.
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn undirected(&self) -> UndirectedGraph {
        self.digraph.underlying()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut vertices: Vec<String> = Vec::new();
    let mut declared = HashSet::new();
    let mut links: Vec<(String, String, String)> = Vec::new();
    let mut link_line: HashMap<String, usize> = HashMap::new();
    let mut kind: Option<(char, usize)> = None;
    let mut rot_lines: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let fields: Vec<&str> = content(raw).split_whitespace().collect();
        let Some((&tag, rest)) = fields.split_first() else {
            continue;
        };
        match tag {
            "v" => {
                let [id] = rest else {
                    return Err(parse_err(line, "expected `v <vertex>`"));
                };
                if !declared.insert(id.to_string()) {
                    return Err(parse_err(line, format!("duplicate vertex `{id}`")));
                }
                vertices.push(id.to_string());
            }
            "a" | "e" => {
                let [id, u, v] = rest else {
                    return Err(parse_err(line, format!("expected `{tag} <id> <u> <v>`")));
                };
                let t = tag.chars().next().unwrap();
                match kind {
                    Some((k, first)) if k != t => {
                        return Err(parse_err(
                            line,
                            format!("`{tag}` record mixed with `{k}` records (first on line {first})"),
                        ))
                    }
                    None => kind = Some((t, line)),
                    _ => {}
                }
                if let Some(prev) = link_line.insert(id.to_string(), line) {
                    return Err(parse_err(line, format!("duplicate arc `{id}` (first on line {prev})")));
                }
                links.push((id.to_string(), u.to_string(), v.to_string()));
            }
            "rot" => {
                let Some((v, ends)) = rest.split_first() else {
                    return Err(parse_err(line, "expected `rot <vertex> <arc>+|<arc>- ...`"));
                };
                if rot_lines.iter().any(|(_, w, _)| w == v) {
                    return Err(parse_err(line, format!("second `rot` record for `{v}`")));
                }
                rot_lines.push((line, v.to_string(), ends.iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }

    let digraph = Digraph::new(vertices, links).map_err(|e| parse_err(0, e.to_string()))?;
    let rotation = if rot_lines.is_empty() {
        None
    } else {
        let mut rot = RotationSystem::new();
        for (line, v, ends) in &rot_lines {
            let vi = digraph
                .vertex_index(v)
                .ok_or_else(|| parse_err(*line, format!("unknown vertex `{v}`")))?;
            let mut list = Vec::new();
            for end in ends {
                let (id, which) = if let Some(id) = end.strip_suffix('+') {
                    (id, End::Tail)
                } else if let Some(id) = end.strip_suffix('-') {
                    (id, End::Head)
                } else {
                    return Err(parse_err(*line, format!("arc end `{end}` must end in `+` or `-`")));
                };
                let ai = digraph
                    .link_index(id)
                    .ok_or_else(|| parse_err(*line, format!("unknown arc `{id}`")))?;
                let arc = &digraph.arcs()[ai];
                let at = if which == End::Tail { arc.tail } else { arc.head };
                if at != vi {
                    return Err(parse_err(*line, format!("`{end}` is not incident to `{v}`")));
                }
                list.push(ArcEnd {
                    arc: id.to_string(),
                    end: which,
                });
            }
            rot.set(v.clone(), list);
        }
        let last = rot_lines.last().map_or(0, |r| r.0);
        rot.validate(&digraph).map_err(|e| parse_err(last, e.to_string()))?;
        Some(rot)
    };
    Ok(GraphFile {
        directed: matches!(kind, Some(('a', _))),
        digraph,
        rotation,
    })
}

/// Record tag used when writing a graph.
pub trait GraphText: Multigraph {
    const TAG: &'static str;
}

impl GraphText for Digraph {
    const TAG: &'static str = "a";
}

impl GraphText for UndirectedGraph {
    const TAG: &'static str = "e";
}

fn end_text(e: &ArcEnd) -> String {
    match e.end {
        End::Tail => format!("{}+", e.arc),
        End::Head => format!("{}-", e.arc),
    }
}

pub fn write_graph<G: GraphText + ?Sized>(g: &G, rotation: Option<&RotationSystem>) -> String {
    let mut out = String::new();
    let vs = g.vertex_ids();
    for v in vs {
        out.push_str(&format!("v {v}\n"));
    }
    for l in g.links() {
        out.push_str(&format!("{} {} {} {}\n", G::TAG, l.id, vs[l.tail], vs[l.head]));
    }
    if let Some(rot) = rotation {
        let mut keys: Vec<&String> = rot.order.keys().collect();
        keys.sort_by(|a, b| crate::graph::natural_cmp(a, b));
        for v in keys {
            let ends: Vec<String> = rot.order[v].iter().map(end_text).collect();
            out.push_str(&format!("rot {v} {}\n", ends.join(" ")));
        }
    }
    out
}

/// Reads `p=3; e1=1; e2=2` (separators `;` or newlines, `#` comments) or
/// `{"p":3,"values":{"e1":1,...}}`. If `p` is given by the caller it must
/// match the file's `p` when both are present.
pub fn parse_zp_map<M: Multigraph + ?Sized>(text: &str, g: &M, p: Option<u32>) -> Result<ZpMap> {
    let (file_p, pairs) = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let file_p = v.get("p").and_then(Value::as_u64).map(|x| x as u32);
        let values = v
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Format("missing `values` object".into()))?;
        let pairs = values
            .iter()
            .map(|(k, x)| {
                x.as_u64()
                    .map(|x| (k.clone(), x as u32))
                    .ok_or_else(|| Error::Format(format!("value of `{k}` is not a nonnegative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        (file_p, pairs)
    } else {
        let mut file_p = None;
        let mut pairs = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            for item in content(raw).split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, x) = item
                    .split_once('=')
                    .ok_or_else(|| parse_err(n + 1, format!("expected `key=value`, got `{item}`")))?;
                let x: u32 = x
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(n + 1, format!("`{}` is not a nonnegative integer", x.trim())))?;
                match k.trim() {
                    "p" => file_p = Some(x),
                    id => pairs.push((id.to_string(), x)),
                }
            }
        }
        (file_p, pairs)
    };
    let p = match (file_p, p) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Format(format!("map is over Z_{a} but p = {b} was requested")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Format("no modulus `p` given".into())),
    };
    ZpMap::from_ids(g, p, pairs)
}

pub fn zp_map_text<M: Multigraph + ?Sized>(g: &M, phi: &ZpMap) -> String {
    let mut parts = vec![format!("p={}", phi.modulus())];
    for (l, v) in g.links().iter().zip(phi.values()) {
        parts.push(format!("{}={v}", l.id));
    }
    parts.join("; ")
}

fn zp_values<M: Multigraph + ?Sized>(g: &M, values: &[u8]) -> Value {
    let mut m = Map::new();
    for (l, v) in g.links().iter().zip(values) {
        m.insert(l.id.clone(), json!(v));
    }
    Value::Object(m)
}

pub fn zp_map_json<M: Multigraph + ?Sized>(g: &M, phi: &ZpMap) -> Value {
    json!({"p": phi.modulus(), "values": zp_values(g, phi.values())})
}

pub fn vertex_map_json<M: Multigraph + ?Sized>(g: &M, w: &VertexMap) -> Value {
    let mut m = Map::new();
    for (v, x) in g.vertex_ids().iter().zip(&w.values) {
        m.insert(v.clone(), json!(x));
    }
    Value::Object(m)
}

/// `{"values":{"e1":[0,1],...}}`.
pub fn klein_map_json<M: Multigraph + ?Sized>(g: &M, phi: &KleinMap) -> Value {
    let mut m = Map::new();
    for (l, &c) in g.links().iter().zip(phi.codes()) {
        let (a, b) = Klein::decode(c);
        m.insert(l.id.clone(), json!([a, b]));
    }
    json!({ "values": m })
}

pub fn parse_klein_map<M: Multigraph + ?Sized>(text: &str, g: &M) -> Result<KleinMap> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let values = v
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Format("missing `values` object".into()))?;
    let entries = values
        .iter()
        .map(|(k, x)| {
            let pair = x
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_u64()? as u8, a[1].as_u64()? as u8)))
                .ok_or_else(|| Error::Format(format!("value of `{k}` is not a pair")))?;
            Ok((k.clone(), pair))
        })
        .collect::<Result<Vec<_>>>()?;
    KleinMap::from_ids(g, entries)
}

pub fn counts_json(c: &ConformalCount) -> Value {
    json!({"even": c.even, "odd": c.odd, "coefficient": c.coefficient()})
}

/// `{"p":3,"entries":[{"psi":{"e1":0,...},"c":1},...]}`, ψ in lexicographic
/// order. `p` is omitted for Klein tables, whose ψ values are pairs.
pub fn coefficient_table_json<M: Multigraph + ?Sized>(g: &M, p: Option<u32>, table: &CoefficientTable) -> Value {
    let entries: Vec<Value> = table
        .iter()
        .map(|(psi, c)| {
            let psi = match p {
                Some(_) => zp_values(g, psi),
                None => {
                    let mut m = Map::new();
                    for (l, &code) in g.links().iter().zip(psi) {
                        let (a, b) = Klein::decode(code);
                        m.insert(l.id.clone(), json!([a, b]));
                    }
                    Value::Object(m)
                }
            };
            json!({"psi": psi, "c": c})
        })
        .collect();
    let mut obj = Map::new();
    if let Some(p) = p {
        obj.insert("p".into(), json!(p));
    }
    obj.insert("entries".into(), Value::Array(entries));
    Value::Object(obj)
}

pub fn coefficient_table_text<M: Multigraph + ?Sized>(g: &M, klein: bool, table: &CoefficientTable) -> String {
    let mut out = String::new();
    for (psi, c) in table {
        let parts: Vec<String> = g
            .links()
            .iter()
            .zip(psi)
            .map(|(l, &code)| {
                if klein {
                    let (a, b) = Klein::decode(code);
                    format!("{}=({a},{b})", l.id)
                } else {
                    format!("{}={code}", l.id)
                }
            })
            .collect();
        out.push_str(&format!("{}  c={c}\n", parts.join(" ")));
    }
    out
}

fn signed(id: &str, d: Direction) -> String {
    match d {
        Direction::Forward => format!("+{id}"),
        Direction::Backward => format!("-{id}"),
    }
}

pub fn certificate_json(cert: &OrientationCertificate) -> Value {
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|s| {
            json!({
                "circuit": s.circuit,
                "orientation": s.orientation.iter().map(|(id, d)| signed(id, *d)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut directions = Map::new();
    for (id, d) in cert.directions() {
        directions.insert(
            id,
            json!(match d {
                Direction::Forward => "+",
                Direction::Backward => "-",
            }),
        );
    }
    let vs = cert.digraph.vertices();
    let arcs: Vec<Value> = cert
        .digraph
        .arcs()
        .iter()
        .map(|a| json!({"id": a.id, "tail": vs[a.tail], "head": vs[a.head]}))
        .collect();
    json!({
        "steps": steps,
        "directions": directions,
        "arcs": arcs,
        "verified": cert.verified,
    })
}

pub fn planar_report_json(r: &PlanarReport) -> Value {
    json!({
        "p": r.p,
        "nz_flow": r.nz_flow,
        "dual_witness_psi": r.dual_witness_psi.as_ref().map(|psi| zp_values(&r.dual, psi.values())),
        "counts": counts_json(&r.counts),
        "bijection": r.bijection,
        "agrees": r.agrees,
    })
}

pub fn coloring_report_json<M: Multigraph + ?Sized>(g: &M, r: &ColoringReport) -> Value {
    let coloring = r.coloring.as_ref().map(|c| {
        let m: BTreeMap<usize, &String> = BTreeMap::new();
        drop(m);
        let mut obj = Map::new();
        for (v, x) in g.vertex_ids().iter().zip(c) {
            obj.insert(v.clone(), json!(x));
        }
        Value::Object(obj)
    });
    json!({
        "p": r.p,
        "colorable": r.colorable,
        "dual_flow": r.dual_flow.as_ref().map(|phi| zp_values(g, phi.values())),
        "coloring": coloring,
        "agrees": r.agrees,
    })
}
