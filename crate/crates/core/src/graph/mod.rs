//! Directed and undirected multigraphs with stable, string-valued ids.
//!
//! Vertices and arcs are kept sorted by id (natural order, so `v2 < v10`),
//! which makes every index-based iteration in the crate deterministic and
//! equal to ascending-id order. Loops and parallel arcs are allowed.

mod algo;
mod embedding;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub use algo::{
    circuits, connected_components, find_small_circuit, is_bridgeless, is_chordal, kappa,
    Circuit, SpanningForest,
};
pub(crate) use algo::{first_bridge, simple_adjacency};
pub use embedding::{plane_dual, ArcEnd, End, PlaneDual, RotationSystem};

/// Compare ids so that embedded digit runs order numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a.as_bytes(), b.as_bytes());
    loop {
        match (a.first(), b.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let da = a.iter().take_while(|c| c.is_ascii_digit()).count();
                let db = b.iter().take_while(|c| c.is_ascii_digit()).count();
                let (na, nb) = (trim_zeros(&a[..da]), trim_zeros(&b[..db]));
                let ord = na.len().cmp(&nb.len()).then_with(|| na.cmp(nb)).then(da.cmp(&db));
                if ord != Ordering::Equal {
                    return ord;
                }
                a = &a[da..];
                b = &b[db..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                a = &a[1..];
                b = &b[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let nz = digits.iter().position(|&c| c != b'0').unwrap_or(digits.len());
    &digits[nz..]
}

/// Orientation of an edge or circuit step relative to its stored endpoint order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// An arc (or an undirected edge, read as `tail = u`, `head = v`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Link {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Link {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite `v`; `v` itself for a loop.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// Common read-only view shared by [`Digraph`] and [`UndirectedGraph`].
pub trait Multigraph {
    fn vertex_ids(&self) -> &[String];
    fn links(&self) -> &[Link];

    fn vertex_count(&self) -> usize {
        self.vertex_ids().len()
    }

    fn link_count(&self) -> usize {
        self.links().len()
    }

    fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids()
            .binary_search_by(|v| natural_cmp(v, id))
            .ok()
    }

    fn link_index(&self, id: &str) -> Option<usize> {
        self.links()
            .binary_search_by(|l| natural_cmp(&l.id, id))
            .ok()
    }

    /// Links incident to each vertex; a loop is listed once.
    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count()];
        for (i, l) in self.links().iter().enumerate() {
            inc[l.tail].push(i);
            if !l.is_loop() {
                inc[l.head].push(i);
            }
        }
        inc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Parts {
    vertices: Vec<String>,
    links: Vec<Link>,
}

impl Parts {
    fn build<V, S, L>(vertices: V, links: L) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        L: IntoIterator<Item = (String, String, String)>,
    {
        let mut names: Vec<String> = Vec::new();
        let mut seen = HashSet::new();
        for v in vertices {
            let v = v.into();
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v));
            }
            names.push(v);
        }
        let raw: Vec<(String, String, String)> = links.into_iter().collect();
        for (_, t, h) in &raw {
            for v in [t, h] {
                if seen.insert(v.clone()) {
                    names.push(v.clone());
                }
            }
        }
        names.sort_by(|a, b| natural_cmp(a, b));
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();

        let mut ids = HashSet::new();
        let mut out = Vec::with_capacity(raw.len());
        for (id, t, h) in &raw {
            if !ids.insert(id.as_str()) {
                return Err(Error::DuplicateArc(id.clone()));
            }
            out.push(Link {
                id: id.clone(),
                tail: index[t.as_str()],
                head: index[h.as_str()],
            });
        }
        out.sort_by(|a, b| natural_cmp(&a.id, &b.id));
        Ok(Parts {
            vertices: names,
            links: out,
        })
    }

    fn contract(&self, ids: &[&str]) -> Result<Parts> {
        let view = PartsView(self);
        let mut drop = vec![false; self.links.len()];
        for id in ids {
            let i = view.link_index(id).ok_or_else(|| Error::UnknownArc(id.to_string()))?;
            drop[i] = true;
        }
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, l) in self.links.iter().enumerate() {
            if drop[i] {
                let (a, b) = (find(&mut parent, l.tail), find(&mut parent, l.head));
                // Vertex indices follow id order, so the smaller index is the smaller id.
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        let reps: Vec<usize> = (0..self.vertices.len())
            .map(|v| find(&mut parent, v))
            .collect();
        let vertices = (0..self.vertices.len())
            .filter(|&v| reps[v] == v)
            .map(|v| self.vertices[v].clone());
        let links = self
            .links
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop[*i])
            .map(|(_, l)| {
                (
                    l.id.clone(),
                    self.vertices[reps[l.tail]].clone(),
                    self.vertices[reps[l.head]].clone(),
                )
            });
        Parts::build(vertices.collect::<Vec<_>>(), links.collect::<Vec<_>>())
    }
}

struct PartsView<'a>(&'a Parts);

impl Multigraph for PartsView<'_> {
    fn vertex_ids(&self) -> &[String] {
        &self.0.vertices
    }
    fn links(&self) -> &[Link] {
        &self.0.links
    }
}

/// A directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    parts: Parts,
}

impl Digraph {
    /// Builds a digraph from explicit vertices plus `(id, tail, head)` arcs.
    /// Endpoints not listed in `vertices` are added implicitly.
    pub fn new<V, S, A, I, T, H>(vertices: V, arcs: A) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        A: IntoIterator<Item = (I, T, H)>,
        I: Into<String>,
        T: Into<String>,
        H: Into<String>,
    {
        let arcs = arcs
            .into_iter()
            .map(|(i, t, h)| (i.into(), t.into(), h.into()));
        Ok(Digraph {
            parts: Parts::build(vertices, arcs)?,
        })
    }

    pub fn from_arcs<A, I, T, H>(arcs: A) -> Result<Self>
    where
        A: IntoIterator<Item = (I, T, H)>,
        I: Into<String>,
        T: Into<String>,
        H: Into<String>,
    {
        Self::new(Vec::<String>::new(), arcs)
    }

    pub fn vertices(&self) -> &[String] {
        &self.parts.vertices
    }

    pub fn arcs(&self) -> &[Link] {
        &self.parts.links
    }

    pub fn arc_ids(&self) -> Vec<String> {
        self.arcs().iter().map(|a| a.id.clone()).collect()
    }

    /// Arcs with head `v` (δ⁻).
    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs()
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.head == v)
            .map(|(i, _)| i)
    }

    /// Arcs with tail `v` (δ⁺).
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs()
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.tail == v)
            .map(|(i, _)| i)
    }

    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph {
            parts: self.parts.clone(),
        }
    }

    /// Reverses every arc whose index is flagged in `reverse`.
    pub fn reorient(&self, reverse: &[bool]) -> Digraph {
        let mut parts = self.parts.clone();
        for (l, &r) in parts.links.iter_mut().zip(reverse) {
            if r {
                std::mem::swap(&mut l.tail, &mut l.head);
            }
        }
        Digraph { parts }
    }

    pub fn contract(&self, arc_ids: &[&str]) -> Result<Digraph> {
        Ok(Digraph {
            parts: self.parts.contract(arc_ids)?,
        })
    }
}

impl Multigraph for Digraph {
    fn vertex_ids(&self) -> &[String] {
        &self.parts.vertices
    }
    fn links(&self) -> &[Link] {
        &self.parts.links
    }
}

/// An undirected multigraph. Each edge still records its endpoints in a
/// fixed order, which is the reference for [`Direction`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    parts: Parts,
}

impl UndirectedGraph {
    pub fn new<V, S, E, I, A, B>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (I, A, B)>,
        I: Into<String>,
        A: Into<String>,
        B: Into<String>,
    {
        let edges = edges
            .into_iter()
            .map(|(i, a, b)| (i.into(), a.into(), b.into()));
        Ok(UndirectedGraph {
            parts: Parts::build(vertices, edges)?,
        })
    }

    pub fn from_edges<E, I, A, B>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (I, A, B)>,
        I: Into<String>,
        A: Into<String>,
        B: Into<String>,
    {
        Self::new(Vec::<String>::new(), edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.parts.vertices
    }

    pub fn edges(&self) -> &[Link] {
        &self.parts.links
    }

    /// Orients every edge; `Forward` keeps the stored `u -> v` order.
    pub fn orient(&self, choice: &HashMap<String, Direction>) -> Result<Digraph> {
        for id in choice.keys() {
            if self.link_index(id).is_none() {
                return Err(Error::UnknownArc(id.clone()));
            }
        }
        let mut reverse = Vec::with_capacity(self.edges().len());
        for e in self.edges() {
            match choice.get(&e.id) {
                Some(d) => reverse.push(*d == Direction::Backward),
                None => return Err(Error::MissingDirection(e.id.clone())),
            }
        }
        Ok(self.orient_forward().reorient(&reverse))
    }

    /// The orientation that directs every edge `u -> v` as stored.
    pub fn orient_forward(&self) -> Digraph {
        Digraph {
            parts: self.parts.clone(),
        }
    }

    pub fn contract(&self, edge_ids: &[&str]) -> Result<UndirectedGraph> {
        Ok(UndirectedGraph {
            parts: self.parts.contract(edge_ids)?,
        })
    }
}

impl Multigraph for UndirectedGraph {
    fn vertex_ids(&self) -> &[String] {
        &self.parts.vertices
    }
    fn links(&self) -> &[Link] {
        &self.parts.links
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_vertex_graph() -> Digraph {
        Digraph::from_arcs([("e1", "v1", "v2"), ("e2", "v2", "v1"), ("e3", "v1", "v2")]).unwrap()
    }

    #[test]
    fn natural_order() {
        assert_eq!(natural_cmp("e2", "e10"), Ordering::Less);
        assert_eq!(natural_cmp("e10", "e9"), Ordering::Greater);
        assert_eq!(natural_cmp("a", "b"), Ordering::Less);
        assert_eq!(natural_cmp("v01", "v1"), Ordering::Greater);
        assert_eq!(natural_cmp("x", "x"), Ordering::Equal);
    }

    #[test]
    fn ids_sorted_naturally() {
        let g = Digraph::from_arcs([("e10", "v10", "v2"), ("e2", "v2", "v1")]).unwrap();
        assert_eq!(g.vertices(), ["v1", "v2", "v10"]);
        assert_eq!(g.arc_ids(), ["e2", "e10"]);
        assert_eq!(g.vertex_index("v10"), Some(2));
        assert_eq!(g.link_index("e10"), Some(1));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let e = Digraph::from_arcs([("e1", "a", "b"), ("e1", "b", "a")]).unwrap_err();
        assert_eq!(e, Error::DuplicateArc("e1".into()));
        let e = Digraph::new(["a", "a"], Vec::<(&str, &str, &str)>::new()).unwrap_err();
        assert_eq!(e, Error::DuplicateVertex("a".into()));
    }

    #[test]
    fn orient_single_edge() {
        let g = UndirectedGraph::from_edges([("e", "u", "v")]).unwrap();
        let d = g.orient(&HashMap::from([("e".to_string(), Direction::Forward)])).unwrap();
        assert_eq!((d.arcs()[0].tail, d.arcs()[0].head), (0, 1));
        let d = g.orient(&HashMap::from([("e".to_string(), Direction::Backward)])).unwrap();
        assert_eq!((d.arcs()[0].tail, d.arcs()[0].head), (1, 0));
    }

    #[test]
    fn orient_cyclic_triangle() {
        let g = UndirectedGraph::from_edges([("a", "1", "2"), ("b", "3", "2"), ("c", "3", "1")]).unwrap();
        let choice = HashMap::from([
            ("a".to_string(), Direction::Forward),
            ("b".to_string(), Direction::Backward),
            ("c".to_string(), Direction::Forward),
        ]);
        let d = g.orient(&choice).unwrap();
        for v in 0..3 {
            assert_eq!(d.in_arcs(v).count(), 1);
            assert_eq!(d.out_arcs(v).count(), 1);
        }
    }

    #[test]
    fn orient_two_vertex_example() {
        let g = UndirectedGraph::from_edges([("e1", "v1", "v2"), ("e2", "v1", "v2"), ("e3", "v1", "v2")])
            .unwrap();
        let choice = HashMap::from([
            ("e1".to_string(), Direction::Forward),
            ("e2".to_string(), Direction::Backward),
            ("e3".to_string(), Direction::Forward),
        ]);
        assert_eq!(g.orient(&choice).unwrap(), two_vertex_graph());
    }

    #[test]
    fn orient_errors() {
        let g = UndirectedGraph::from_edges([("e", "u", "v")]).unwrap();
        let bad = HashMap::from([
            ("e".to_string(), Direction::Forward),
            ("zz".to_string(), Direction::Forward),
        ]);
        assert_eq!(g.orient(&bad).unwrap_err(), Error::UnknownArc("zz".into()));
        assert_eq!(
            g.orient(&HashMap::new()).unwrap_err(),
            Error::MissingDirection("e".into())
        );
    }

    #[test]
    fn reorientation_is_involution() {
        let g = two_vertex_graph();
        let r = [true, false, true];
        assert_eq!(g.reorient(&r).reorient(&r), g);
        assert_ne!(g.reorient(&r), g);
    }

    #[test]
    fn contract_triangle_edge() {
        let g = UndirectedGraph::from_edges([("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]).unwrap();
        let h = g.contract(&["a"]).unwrap();
        assert_eq!(h.vertices(), ["1", "3"]);
        assert_eq!(h.edges().len(), 2);
        assert!(h.edges().iter().all(|e| !e.is_loop()));
    }

    #[test]
    fn contract_k4_triangle() {
        let g = UndirectedGraph::from_edges([
            ("e1", "1", "2"),
            ("e2", "1", "3"),
            ("e3", "1", "4"),
            ("e4", "2", "3"),
            ("e5", "2", "4"),
            ("e6", "3", "4"),
        ])
        .unwrap();
        let h = g.contract(&["e1", "e2", "e4"]).unwrap();
        assert_eq!(h.vertices().len(), g.vertices().len() - 2);
        assert_eq!(h.edges().len(), g.edges().len() - 3);
        assert_eq!(h.vertices(), ["1", "4"]);
        let ids: Vec<_> = h.edges().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["e3", "e5", "e6"]);
    }

    #[test]
    fn contract_keeps_directions_and_loops() {
        let g = two_vertex_graph();
        assert_eq!(g.contract(&[]).unwrap(), g);
        let h = g.contract(&["e1"]).unwrap();
        assert_eq!(h.vertices(), ["v1"]);
        assert!(h.arcs().iter().all(|a| a.is_loop()));
        assert_eq!(h.arc_ids(), ["e2", "e3"]);
        assert_eq!(g.contract(&["nope"]).unwrap_err(), Error::UnknownArc("nope".into()));
    }
}
