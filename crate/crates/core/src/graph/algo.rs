use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Direction, Multigraph, UndirectedGraph};

/// BFS spanning forest. Each component is rooted at its smallest vertex and
/// explored in ascending link order.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    /// Vertices in BFS order; every vertex appears after its parent.
    pub order: Vec<usize>,
    /// `(parent vertex, link index)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub component: Vec<usize>,
    pub roots: Vec<usize>,
    pub in_tree: Vec<bool>,
}

impl SpanningForest {
    pub fn new<G: Multigraph + ?Sized>(g: &G) -> Self {
        let n = g.vertex_count();
        let inc = g.incidence();
        let links = g.links();
        let mut parent = vec![None; n];
        let mut component = vec![usize::MAX; n];
        let mut in_tree = vec![false; links.len()];
        let mut order = Vec::with_capacity(n);
        let mut roots = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if component[root] != usize::MAX {
                continue;
            }
            let c = roots.len();
            roots.push(root);
            component[root] = c;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &l in &inc[v] {
                    let w = links[l].other(v);
                    if component[w] == usize::MAX {
                        component[w] = c;
                        parent[w] = Some((v, l));
                        in_tree[l] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest {
            order,
            parent,
            component,
            roots,
            in_tree,
        }
    }

    pub fn kappa(&self) -> usize {
        self.roots.len()
    }
}

pub fn connected_components<G: Multigraph + ?Sized>(g: &G) -> Vec<Vec<String>> {
    let f = SpanningForest::new(g);
    let mut parts = vec![Vec::new(); f.kappa()];
    for (v, &c) in f.component.iter().enumerate() {
        parts[c].push(g.vertex_ids()[v].clone());
    }
    parts
}

pub fn kappa<G: Multigraph + ?Sized>(g: &G) -> usize {
    SpanningForest::new(g).kappa()
}

/// A circuit as a cyclic walk; the flag says whether each arc is traversed
/// from its tail (stored `u`) to its head (stored `v`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Circuit {
    pub steps: Vec<(String, Direction)>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn arc_ids(&self) -> Vec<&str> {
        self.steps.iter().map(|(id, _)| id.as_str()).collect()
    }
}

fn walk<G: Multigraph + ?Sized>(g: &G, start: usize, path: &[usize]) -> Circuit {
    let links = g.links();
    let mut at = start;
    let steps = path
        .iter()
        .map(|&l| {
            let link = &links[l];
            let dir = if link.tail == at {
                Direction::Forward
            } else {
                Direction::Backward
            };
            at = link.other(at);
            (link.id.clone(), dir)
        })
        .collect();
    Circuit { steps }
}

/// A loop, else a parallel pair, else a triangle; each chosen by smallest
/// edge ids.
pub fn find_small_circuit(g: &UndirectedGraph) -> Option<Circuit> {
    let edges = g.edges();
    if let Some(i) = edges.iter().position(|e| e.is_loop()) {
        return Some(walk(g, edges[i].tail, &[i]));
    }
    let same_ends = |a: usize, b: usize| {
        let (x, y) = (&edges[a], &edges[b]);
        (x.tail == y.tail && x.head == y.head) || (x.tail == y.head && x.head == y.tail)
    };
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if same_ends(i, j) {
                return Some(walk(g, edges[i].tail, &[i, j]));
            }
        }
    }
    for i in 0..edges.len() {
        let (a, b) = (edges[i].tail, edges[i].head);
        for j in i + 1..edges.len() {
            let ej = &edges[j];
            let c = if ej.tail == b && ej.head != a {
                ej.head
            } else if ej.head == b && ej.tail != a {
                ej.tail
            } else if ej.tail == a && ej.head != b {
                ej.head
            } else if ej.head == a && ej.tail != b {
                ej.tail
            } else {
                continue;
            };
            // j touches a or b; the third edge closes c back to the other one.
            let shared = if ej.tail == b || ej.head == b { b } else { a };
            let far = if shared == b { a } else { b };
            for k in j + 1..edges.len() {
                let ek = &edges[k];
                if (ek.tail == c && ek.head == far) || (ek.head == c && ek.tail == far) {
                    let path = if shared == b { [i, j, k] } else { [i, k, j] };
                    return Some(walk(g, a, &path));
                }
            }
        }
    }
    None
}

/// All circuits, each once, starting at its smallest arc traversed forward.
/// Exponential; meant for small graphs.
pub fn circuits<G: Multigraph + ?Sized>(g: &G, max_len: Option<usize>) -> Vec<Circuit> {
    let links = g.links();
    let inc = g.incidence();
    let max_len = max_len.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];

    #[allow(clippy::too_many_arguments)]
    fn extend<G: Multigraph + ?Sized>(
        g: &G,
        inc: &[Vec<usize>],
        first: usize,
        target: usize,
        at: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        max_len: usize,
        out: &mut Vec<Circuit>,
    ) {
        let links = g.links();
        for &l in &inc[at] {
            if l <= first || links[l].is_loop() || path.contains(&l) {
                continue;
            }
            let w = links[l].other(at);
            if w == target {
                path.push(l);
                out.push(walk(g, links[first].tail, path));
                path.pop();
            } else if !on_path[w] && path.len() + 1 < max_len {
                on_path[w] = true;
                path.push(l);
                extend(g, inc, first, target, w, path, on_path, max_len, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    for (first, link) in links.iter().enumerate() {
        if link.is_loop() {
            if max_len >= 1 {
                out.push(walk(g, link.tail, &[first]));
            }
            continue;
        }
        if max_len < 2 {
            continue;
        }
        on_path[link.tail] = true;
        on_path[link.head] = true;
        let mut path = vec![first];
        extend(
            g,
            &inc,
            first,
            link.tail,
            link.head,
            &mut path,
            &mut on_path,
            max_len,
            &mut out,
        );
        on_path[link.tail] = false;
        on_path[link.head] = false;
    }
    out
}

/// True iff no edge is a cut-edge. Loops never are.
pub fn is_bridgeless<G: Multigraph + ?Sized>(g: &G) -> bool {
    first_bridge(g).is_none()
}

pub(crate) fn first_bridge<G: Multigraph + ?Sized>(g: &G) -> Option<usize> {
    let n = g.vertex_count();
    let inc = g.incidence();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut bridges = Vec::new();

    fn dfs<G: Multigraph + ?Sized>(
        g: &G,
        inc: &[Vec<usize>],
        v: usize,
        via: Option<usize>,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        bridges: &mut Vec<usize>,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        for &l in &inc[v] {
            let link = &g.links()[l];
            if link.is_loop() || Some(l) == via {
                continue;
            }
            let w = link.other(v);
            if disc[w] == usize::MAX {
                dfs(g, inc, w, Some(l), disc, low, time, bridges);
                low[v] = low[v].min(low[w]);
                if low[w] > disc[v] {
                    bridges.push(l);
                }
            } else {
                low[v] = low[v].min(disc[w]);
            }
        }
    }

    for v in 0..n {
        if disc[v] == usize::MAX {
            dfs(g, &inc, v, None, &mut disc, &mut low, &mut time, &mut bridges);
        }
    }
    bridges.into_iter().min()
}

pub(crate) fn simple_adjacency<G: Multigraph + ?Sized>(g: &G) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.vertex_count()];
    for l in g.links() {
        if !l.is_loop() {
            adj[l.tail].insert(l.head);
            adj[l.head].insert(l.tail);
        }
    }
    adj
}

/// Chordality of the underlying simple graph, via maximum cardinality search
/// and a perfect-elimination check.
pub fn is_chordal<G: Multigraph + ?Sized>(g: &G) -> bool {
    let adj = simple_adjacency(g);
    let n = adj.len();
    let mut weight = vec![0usize; n];
    let mut position = vec![usize::MAX; n];
    let mut visit = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| position[v] == usize::MAX)
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex");
        position[v] = step;
        visit.push(v);
        for &w in &adj[v] {
            if position[w] == usize::MAX {
                weight[w] += 1;
            }
        }
    }
    // Reverse visit order is a perfect elimination ordering iff, for every v,
    // its earlier neighbours minus the latest one are adjacent to that one.
    for &v in &visit {
        let earlier: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| position[w] < position[v])
            .collect();
        if let Some(&u) = earlier.iter().max_by_key(|&&w| position[w]) {
            if earlier.iter().any(|&w| w != u && !adj[u].contains(&w)) {
                return false;
            }
        }
    }
    true
}
