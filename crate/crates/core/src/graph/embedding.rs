//! Combinatorial plane embeddings and face tracing.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{algo::kappa, natural_cmp, Digraph, Multigraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ArcEnd {
    pub arc: String,
    pub end: End,
}

impl ArcEnd {
    pub fn tail(arc: impl Into<String>) -> Self {
        ArcEnd {
            arc: arc.into(),
            end: End::Tail,
        }
    }

    pub fn head(arc: impl Into<String>) -> Self {
        ArcEnd {
            arc: arc.into(),
            end: End::Head,
        }
    }
}

/// Cyclic order of arc-ends around each vertex, keyed by vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RotationSystem {
    pub order: BTreeMap<String, Vec<ArcEnd>>,
}

impl RotationSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, vertex: impl Into<String>, ends: Vec<ArcEnd>) {
        self.order.insert(vertex.into(), ends);
    }

    /// Successor of every dart (dart `2i` is the tail end of arc `i`,
    /// `2i + 1` its head end) in its vertex's cyclic order.
    fn successors(&self, g: &Digraph) -> Result<Vec<usize>> {
        let darts = 2 * g.arcs().len();
        let mut succ = vec![usize::MAX; darts];
        let mut placed = 0;
        for (vertex, ends) in &self.order {
            let v = g
                .vertex_index(vertex)
                .ok_or_else(|| Error::InvalidRotation(format!("unknown vertex `{vertex}`")))?;
            let mut ds = Vec::with_capacity(ends.len());
            for e in ends {
                let a = g
                    .link_index(&e.arc)
                    .ok_or_else(|| Error::InvalidRotation(format!("unknown arc `{}`", e.arc)))?;
                let arc = &g.arcs()[a];
                let (d, at) = match e.end {
                    End::Tail => (2 * a, arc.tail),
                    End::Head => (2 * a + 1, arc.head),
                };
                if at != v {
                    return Err(Error::InvalidRotation(format!(
                        "end {} of `{}` is not at vertex `{vertex}`",
                        end_symbol(e.end),
                        e.arc
                    )));
                }
                ds.push(d);
            }
            for (k, &d) in ds.iter().enumerate() {
                if succ[d] != usize::MAX {
                    return Err(Error::InvalidRotation(format!(
                        "arc end `{}{}` listed twice",
                        g.arcs()[d / 2].id,
                        end_symbol(if d % 2 == 0 { End::Tail } else { End::Head })
                    )));
                }
                succ[d] = ds[(k + 1) % ds.len()];
                placed += 1;
            }
        }
        if placed != darts {
            let missing = succ.iter().position(|&s| s == usize::MAX).unwrap();
            return Err(Error::InvalidRotation(format!(
                "arc end `{}{}` missing",
                g.arcs()[missing / 2].id,
                end_symbol(if missing % 2 == 0 { End::Tail } else { End::Head })
            )));
        }
        Ok(succ)
    }

    pub fn validate(&self, g: &Digraph) -> Result<()> {
        self.successors(g).map(|_| ())
    }
}

pub(crate) fn end_symbol(end: End) -> char {
    match end {
        End::Tail => '+',
        End::Head => '-',
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneDual {
    /// Dual digraph; dual arcs reuse the primal arc ids, faces are `f1, f2, ...`.
    pub graph: Digraph,
    /// Rotation of the dual induced by the face boundary walks.
    pub rotation: RotationSystem,
    /// Primal arc id to dual arc id.
    pub arc_map: Vec<(String, String)>,
}

/// Traces the faces of an embedded connected digraph and builds its dual.
///
/// The face of a dart is found by repeatedly stepping to the rotation
/// successor of the twin dart. The dual arc of `e` runs from the face traced
/// by `e`'s tail dart (the face on its left) to the face traced by its head
/// dart (the face on its right).
pub fn plane_dual(g: &Digraph, rot: &RotationSystem) -> Result<PlaneDual> {
    if kappa(g) != 1 {
        return Err(Error::NotConnected);
    }
    let succ = rot.successors(g)?;
    let darts = succ.len();
    let mut face = vec![usize::MAX; darts];
    let mut walks: Vec<Vec<usize>> = Vec::new();
    for start in 0..darts {
        if face[start] != usize::MAX {
            continue;
        }
        let f = walks.len();
        let mut walk = Vec::new();
        let mut d = start;
        while face[d] == usize::MAX {
            face[d] = f;
            walk.push(d);
            d = succ[d ^ 1];
        }
        if d != start {
            return Err(Error::InvalidRotation("face walk does not close".into()));
        }
        walks.push(walk);
    }
    let faces = walks.len().max(1);
    let expected = g.arcs().len() + 2 - g.vertices().len();
    if faces != expected {
        return Err(Error::EulerViolation { faces, expected });
    }

    let name = |f: usize| format!("f{}", f + 1);
    let arcs: Vec<(String, String, String)> = g
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id.clone(), name(face[2 * i]), name(face[2 * i + 1])))
        .collect();
    let graph = Digraph::new((0..faces).map(name), arcs)?;

    let mut rotation = RotationSystem::new();
    for (f, walk) in walks.iter().enumerate() {
        let ends = walk
            .iter()
            .map(|&d| {
                let id = g.arcs()[d / 2].id.clone();
                if d % 2 == 0 {
                    ArcEnd::tail(id)
                } else {
                    ArcEnd::head(id)
                }
            })
            .collect();
        rotation.set(name(f), ends);
    }
    let mut arc_map: Vec<(String, String)> =
        g.arcs().iter().map(|a| (a.id.clone(), a.id.clone())).collect();
    arc_map.sort_by(|a, b| natural_cmp(&a.0, &b.0));
    Ok(PlaneDual {
        graph,
        rotation,
        arc_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_vertex_embedded() -> (Digraph, RotationSystem) {
        let g = Digraph::from_arcs([("e1", "v1", "v2"), ("e2", "v2", "v1"), ("e3", "v1", "v2")]).unwrap();
        let mut rot = RotationSystem::new();
        rot.set("v1", vec![ArcEnd::tail("e1"), ArcEnd::head("e2"), ArcEnd::tail("e3")]);
        rot.set("v2", vec![ArcEnd::head("e3"), ArcEnd::tail("e2"), ArcEnd::head("e1")]);
        (g, rot)
    }

    fn edge_pairs(d: &Digraph) -> Vec<(usize, usize)> {
        d.arcs()
            .iter()
            .map(|a| (a.tail.min(a.head), a.tail.max(a.head)))
            .collect()
    }

    #[test]
    fn two_vertex_dual_is_a_triangle() {
        let (g, rot) = two_vertex_embedded();
        let dual = plane_dual(&g, &rot).unwrap();
        assert_eq!(dual.graph.vertices().len(), 3);
        assert_eq!(dual.graph.arcs().len(), 3);
        let mut pairs = edge_pairs(&dual.graph);
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 3, "three distinct dual edges form a triangle");
        // e1*, e2* share a face, as do e1*, e3* and e2*, e3*
        let ends = edge_pairs(&dual.graph);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (a, b) = (ends[i], ends[j]);
            assert!(a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1);
        }
    }

    #[test]
    fn loop_dual() {
        let g = Digraph::from_arcs([("e", "v", "v")]).unwrap();
        let mut rot = RotationSystem::new();
        rot.set("v", vec![ArcEnd::tail("e"), ArcEnd::head("e")]);
        let dual = plane_dual(&g, &rot).unwrap();
        assert_eq!(dual.graph.vertices().len(), 2);
        assert_eq!(dual.graph.arcs().len(), 1);
        assert!(!dual.graph.arcs()[0].is_loop());
    }

    #[test]
    fn directed_triangle_dual() {
        let g = Digraph::from_arcs([("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]).unwrap();
        let mut rot = RotationSystem::new();
        rot.set("1", vec![ArcEnd::tail("a"), ArcEnd::head("c")]);
        rot.set("2", vec![ArcEnd::tail("b"), ArcEnd::head("a")]);
        rot.set("3", vec![ArcEnd::tail("c"), ArcEnd::head("b")]);
        let dual = plane_dual(&g, &rot).unwrap();
        assert_eq!(dual.graph.vertices().len(), 2);
        let first = (dual.graph.arcs()[0].tail, dual.graph.arcs()[0].head);
        assert_ne!(first.0, first.1);
        assert!(dual.graph.arcs().iter().all(|a| (a.tail, a.head) == first));
    }

    #[test]
    fn single_vertex_dual() {
        let g = Digraph::new(["v"], Vec::<(&str, &str, &str)>::new()).unwrap();
        let dual = plane_dual(&g, &RotationSystem::new()).unwrap();
        assert_eq!(dual.graph.vertices(), ["f1"]);
    }

    #[test]
    fn double_dual_recovers_the_graph() {
        let (g, rot) = two_vertex_embedded();
        let once = plane_dual(&g, &rot).unwrap();
        let twice = plane_dual(&once.graph, &once.rotation).unwrap();
        assert_eq!(twice.graph.arc_ids(), g.arc_ids());
        // A vertex bijection exists under which every arc is preserved, or
        // under which every arc is reversed.
        let consistent = |reversed: bool| {
            let mut map = vec![usize::MAX; g.vertices().len()];
            for (a, b) in g.arcs().iter().zip(twice.graph.arcs()) {
                let (t, h) = if reversed { (b.head, b.tail) } else { (b.tail, b.head) };
                for (x, y) in [(a.tail, t), (a.head, h)] {
                    if map[x] == usize::MAX {
                        map[x] = y;
                    } else if map[x] != y {
                        return false;
                    }
                }
            }
            true
        };
        assert!(consistent(false) || consistent(true));
    }

    #[test]
    fn rotation_errors() {
        let (g, mut rot) = two_vertex_embedded();
        rot.set("v2", vec![ArcEnd::head("e3"), ArcEnd::tail("e2")]);
        assert!(matches!(plane_dual(&g, &rot), Err(Error::InvalidRotation(_))));
        let (g, mut rot) = two_vertex_embedded();
        rot.set("v2", vec![ArcEnd::head("e3"), ArcEnd::tail("e2"), ArcEnd::tail("e1")]);
        assert!(matches!(plane_dual(&g, &rot), Err(Error::InvalidRotation(_))));
    }

    #[test]
    fn non_planar_rotation_fails_euler() {
        // v2 listed in the same cyclic order as v1: this embeds on a torus.
        let (g, mut rot) = two_vertex_embedded();
        rot.set("v2", vec![ArcEnd::head("e1"), ArcEnd::tail("e2"), ArcEnd::head("e3")]);
        assert!(matches!(
            plane_dual(&g, &rot),
            Err(Error::EulerViolation { faces: 1, expected: 3 })
        ));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Digraph::from_arcs([("a", "1", "1"), ("b", "2", "2")]).unwrap();
        assert_eq!(plane_dual(&g, &RotationSystem::new()).unwrap_err(), Error::NotConnected);
    }
}
