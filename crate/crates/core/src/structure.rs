//! Chordal orientations with a uniqueness certificate, and the planar duality
//! and coloring correspondences as executable cross-checks.

use std::collections::HashMap;

use crate::algebra::has_nz_flow_membership;
use crate::error::{Error, Result};
use crate::flows::{
    coloring_from_dual_flow, count_conformal_flows, enumerate_dual_flows, enumerate_flows, find_nz_dual_flow,
    flow_coefficient_table, for_each_tension_in, is_p_colorable, is_proper_coloring, ConformalCount,
    ConformalMethod, ZpMap,
};
use crate::graph::{
    find_small_circuit, first_bridge, is_chordal, plane_dual, Digraph, Direction, Multigraph, RotationSystem,
    UndirectedGraph,
};
use crate::group::Cyclic;
use crate::io::write_graph;
use crate::Limits;

/// One contraction step: the circuit chosen in the current contracted graph,
/// and the directed-cycle orientation given to its edges (in cycle order,
/// relative to each edge's stored endpoint order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationStep {
    pub circuit: Vec<String>,
    pub orientation: Vec<(String, Direction)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationCertificate {
    pub steps: Vec<OrientationStep>,
    pub digraph: Digraph,
    /// Whether `φ ≡ 0` is the only dual 4-flow with values in `{0, 3}`;
    /// `None` when that check exceeds the enumeration bound.
    pub verified: Option<bool>,
}

impl OrientationCertificate {
    /// Final direction of every edge, in edge-id order.
    pub fn directions(&self) -> Vec<(String, Direction)> {
        let mut map: Vec<(String, Direction)> = self.steps.iter().flat_map(|s| s.orientation.clone()).collect();
        map.sort_by(|a, b| crate::graph::natural_cmp(&a.0, &b.0));
        map
    }

    /// Re-runs the trace on `g`: every step must be a directed closed walk in
    /// the current contraction, the trace must exhaust the edges, and the
    /// recorded digraph must be the orientation it describes.
    pub fn replay(&self, g: &UndirectedGraph) -> Result<bool> {
        let mut current = g.clone();
        for step in &self.steps {
            if !is_directed_closed_walk(&current, &step.orientation)? {
                return Ok(false);
            }
            let ids: Vec<&str> = step.circuit.iter().map(String::as_str).collect();
            current = current.contract(&ids)?;
        }
        if current.link_count() != 0 {
            return Ok(false);
        }
        let choice: HashMap<String, Direction> = self.directions().into_iter().collect();
        Ok(g.orient(&choice)? == self.digraph)
    }
}

fn is_directed_closed_walk(g: &UndirectedGraph, steps: &[(String, Direction)]) -> Result<bool> {
    let mut start = None;
    let mut at = None;
    for (id, dir) in steps {
        let i = g.link_index(id).ok_or_else(|| Error::UnknownArc(id.clone()))?;
        let e = &g.edges()[i];
        let (from, to) = match dir {
            Direction::Forward => (e.tail, e.head),
            Direction::Backward => (e.head, e.tail),
        };
        if at.is_some_and(|a| a != from) {
            return Ok(false);
        }
        start.get_or_insert(from);
        at = Some(to);
    }
    Ok(!steps.is_empty() && start == at)
}

/// Orients a bridgeless chordal graph by repeatedly choosing a loop, a
/// parallel pair or a triangle, making it a directed cycle and contracting it.
/// Loops are taken forward, a parallel pair keeps the lower id's stored
/// direction and opposes the other, and a triangle runs through its vertices
/// in ascending id order.
pub fn chordal_orientation(g: &UndirectedGraph, limits: Limits) -> Result<OrientationCertificate> {
    if let Some(b) = first_bridge(g) {
        return Err(Error::NotBridgeless(g.edges()[b].id.clone()));
    }
    if !is_chordal(g) {
        return Err(Error::NotChordal);
    }
    let mut steps = Vec::new();
    let mut current = g.clone();
    while current.link_count() > 0 {
        let circuit = find_small_circuit(&current).ok_or_else(|| Error::NoSmallCircuit {
            graph: write_graph(&current, None),
        })?;
        let orientation = if circuit.len() == 3 {
            ascending_triangle(&current, &circuit.arc_ids())
        } else {
            circuit.steps.clone()
        };
        let ids = circuit.arc_ids();
        steps.push(OrientationStep {
            circuit: ids.iter().map(|s| s.to_string()).collect(),
            orientation,
        });
        current = current.contract(&ids)?;
    }
    let choice: HashMap<String, Direction> = steps.iter().flat_map(|s| s.orientation.clone()).collect();
    let digraph = g.orient(&choice)?;
    let verified = match verify_unique_zero_conformal(&digraph, limits) {
        Ok(v) => Some(v),
        Err(Error::BoundExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(OrientationCertificate {
        steps,
        digraph,
        verified,
    })
}

/// The triangle `x -> y -> z -> x` on its vertices `x < y < z`.
fn ascending_triangle(g: &UndirectedGraph, ids: &[&str]) -> Vec<(String, Direction)> {
    let edges: Vec<_> = ids.iter().map(|id| &g.edges()[g.link_index(id).expect("circuit edge")]).collect();
    let mut vs: Vec<usize> = edges.iter().flat_map(|e| [e.tail, e.head]).collect();
    vs.sort_unstable();
    vs.dedup();
    let cycle = [(vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])];
    cycle
        .iter()
        .map(|&(a, b)| {
            let (k, e) = edges
                .iter()
                .enumerate()
                .find(|(_, e)| (e.tail, e.head) == (a, b) || (e.tail, e.head) == (b, a))
                .expect("triangle edge");
            let dir = if e.tail == a {
                Direction::Forward
            } else {
                Direction::Backward
            };
            (ids[k].to_string(), dir)
        })
        .collect()
}

/// True iff `φ ≡ 0` is the only dual 4-flow of `d` with values in `{0, 3}`,
/// i.e. the only ψ-conformal one for `ψ ≡ 0`.
pub fn verify_unique_zero_conformal(d: &Digraph, limits: Limits) -> Result<bool> {
    let z4 = Cyclic::new(4)?;
    let mut count = 0u64;
    for_each_tension_in(d, z4, limits, |phi| {
        if phi.iter().all(|&v| v == 0 || v == 3) {
            count += 1;
        }
    })?;
    Ok(count == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarReport {
    pub p: u32,
    /// Nowhere-zero flow existence on the primal, by the membership test.
    pub nz_flow: bool,
    /// The lexicographically first ψ on the dual whose even and odd conformal
    /// flow counts differ.
    pub dual_witness_psi: Option<ZpMap>,
    pub counts: ConformalCount,
    /// Dual flows of the primal coincide with flows of the dual, arc by arc.
    pub bijection: bool,
    pub agrees: bool,
    pub dual: Digraph,
}

/// A plane digraph has a nowhere-zero `p`-flow iff its plane dual has a
/// nowhere-`(p-1)` ψ with unequal even/odd conformal flow counts.
pub fn check_planar_duality(
    g: &Digraph,
    rot: &RotationSystem,
    p: u32,
    limits: Limits,
) -> Result<PlanarReport> {
    let dual = plane_dual(g, rot)?.graph;
    let nz_flow = has_nz_flow_membership(g, p, limits)?;
    let table = flow_coefficient_table(&dual, p, limits)?;
    let dual_witness_psi = match table.keys().next() {
        Some(psi) => Some(ZpMap::new(p, psi.clone())?),
        None => None,
    };
    let counts = match &dual_witness_psi {
        Some(psi) => count_conformal_flows(&dual, psi, limits, ConformalMethod::Auto)?,
        None => ConformalCount::default(),
    };
    let mut tensions = enumerate_dual_flows(g, p, limits)?;
    let mut flows = enumerate_flows(&dual, p, limits)?;
    tensions.sort();
    flows.sort();
    let bijection = tensions == flows;
    let agrees = bijection && nz_flow == dual_witness_psi.is_some();
    Ok(PlanarReport {
        p,
        nz_flow,
        dual_witness_psi,
        counts,
        bijection,
        agrees,
        dual,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringReport {
    pub p: u32,
    pub colorable: bool,
    /// A nowhere-zero dual flow on the forward orientation, when one exists.
    pub dual_flow: Option<ZpMap>,
    /// The coloring recovered from `dual_flow`.
    pub coloring: Option<Vec<u8>>,
    pub agrees: bool,
}

/// `p`-colorability against nowhere-zero dual `p`-flow existence on the
/// forward orientation; a found dual flow is turned back into a coloring.
pub fn check_coloring_correspondence(g: &UndirectedGraph, p: u32, limits: Limits) -> Result<ColoringReport> {
    let colorable = is_p_colorable(g, p, limits)?;
    let d = g.orient_forward();
    let dual_flow = find_nz_dual_flow(&d, p, limits)?;
    let coloring = match &dual_flow {
        Some(phi) => Some(coloring_from_dual_flow(&d, phi)?.values),
        None => None,
    };
    let proper = coloring.as_ref().is_none_or(|c| is_proper_coloring(g, c));
    Ok(ColoringReport {
        p,
        colorable,
        agrees: proper && colorable == dual_flow.is_some(),
        dual_flow,
        coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ArcEnd;

    const L: Limits = Limits::DEFAULT;

    fn und(edges: &[(&str, &str, &str)]) -> UndirectedGraph {
        UndirectedGraph::from_edges(edges.iter().copied()).unwrap()
    }

    fn k4() -> UndirectedGraph {
        und(&[
            ("e1", "1", "2"),
            ("e2", "1", "3"),
            ("e3", "1", "4"),
            ("e4", "2", "3"),
            ("e5", "2", "4"),
            ("e6", "3", "4"),
        ])
    }

    #[test]
    fn triangle_becomes_directed_cycle() {
        let g = und(&[("a", "1", "2"), ("b", "3", "2"), ("c", "1", "3")]);
        let cert = chordal_orientation(&g, L).unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(
            cert.steps[0].orientation,
            [
                ("a".to_string(), Direction::Forward),
                ("b".to_string(), Direction::Backward),
                ("c".to_string(), Direction::Backward)
            ]
        );
        assert_eq!(cert.verified, Some(true));
        assert!(cert.replay(&g).unwrap());
    }

    #[test]
    fn k4_orientation() {
        let g = k4();
        let cert = chordal_orientation(&g, L).unwrap();
        let circuits: Vec<Vec<String>> = cert.steps.iter().map(|s| s.circuit.clone()).collect();
        assert_eq!(circuits[0], ["e1", "e4", "e2"]);
        assert_eq!(cert.verified, Some(true));
        assert!(cert.replay(&g).unwrap());
        assert!(has_nz_flow_membership(&cert.digraph, 4, L).unwrap());
    }

    #[test]
    fn edgeless_and_rejections() {
        let g = UndirectedGraph::new(["v"], Vec::<(&str, &str, &str)>::new()).unwrap();
        let cert = chordal_orientation(&g, L).unwrap();
        assert!(cert.steps.is_empty());
        assert_eq!(cert.verified, Some(true));

        let path = und(&[("a", "1", "2"), ("b", "2", "3")]);
        assert_eq!(chordal_orientation(&path, L).unwrap_err(), Error::NotBridgeless("a".into()));
        let c4 = und(&[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1")]);
        assert_eq!(chordal_orientation(&c4, L).unwrap_err(), Error::NotChordal);
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let g = k4();
        let mut cert = chordal_orientation(&g, L).unwrap();
        let d = &mut cert.steps[0].orientation[0].1;
        *d = d.flip();
        assert!(!cert.replay(&g).unwrap());
    }

    #[test]
    fn unique_zero_conformal() {
        let c4 = Digraph::from_arcs([("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1")]).unwrap();
        // potentials (0,3,2,1) give the tension 3 on every arc
        assert!(!verify_unique_zero_conformal(&c4, L).unwrap());
        let lp = Digraph::from_arcs([("a", "1", "1")]).unwrap();
        assert!(verify_unique_zero_conformal(&lp, L).unwrap());
    }

    #[test]
    fn planar_check_on_the_worked_example() {
        let g = Digraph::from_arcs([("e1", "v1", "v2"), ("e2", "v2", "v1"), ("e3", "v1", "v2")]).unwrap();
        let mut rot = RotationSystem::new();
        rot.set("v1", vec![ArcEnd::tail("e1"), ArcEnd::head("e2"), ArcEnd::tail("e3")]);
        rot.set("v2", vec![ArcEnd::head("e3"), ArcEnd::tail("e2"), ArcEnd::head("e1")]);
        let r = check_planar_duality(&g, &rot, 3, L).unwrap();
        assert!(r.nz_flow && r.dual_witness_psi.is_some() && r.bijection && r.agrees);
        assert_ne!(r.counts.even, r.counts.odd);
    }

    #[test]
    fn planar_check_on_k4() {
        let g = k4().orient_forward();
        let mut rot = RotationSystem::new();
        // straight-line drawing with 4 inside triangle 1,2,3
        rot.set("1", vec![ArcEnd::tail("e1"), ArcEnd::tail("e3"), ArcEnd::tail("e2")]);
        rot.set("2", vec![ArcEnd::tail("e4"), ArcEnd::tail("e5"), ArcEnd::head("e1")]);
        rot.set("3", vec![ArcEnd::head("e2"), ArcEnd::tail("e6"), ArcEnd::head("e4")]);
        rot.set("4", vec![ArcEnd::head("e3"), ArcEnd::head("e5"), ArcEnd::head("e6")]);
        let r = check_planar_duality(&g, &rot, 3, L).unwrap();
        assert_eq!(r.dual.vertices().len(), 4);
        assert!(!r.nz_flow && r.dual_witness_psi.is_none() && r.agrees);
    }

    #[test]
    fn coloring_correspondence() {
        let tri = und(&[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]);
        let r = check_coloring_correspondence(&tri, 3, L).unwrap();
        assert!(r.colorable && r.dual_flow.is_some() && r.agrees);
        let r = check_coloring_correspondence(&k4(), 3, L).unwrap();
        assert!(!r.colorable && r.dual_flow.is_none() && r.agrees);
    }
}
