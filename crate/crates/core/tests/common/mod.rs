//! Brute-force oracles and graph families shared by the integration tests.
//! Nothing here calls the library's enumerators.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use nzflow::graph::{Digraph, Multigraph, UndirectedGraph};
use nzflow::io::parse_graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A multigraph on vertices `0..n` with edges `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mg {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Mg {
    pub fn digraph(&self) -> Digraph {
        Digraph::new(
            (1..=self.n).map(|v| format!("v{v}")),
            self.edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| (format!("e{}", i + 1), format!("v{}", a + 1), format!("v{}", b + 1))),
        )
        .unwrap()
    }

    pub fn undirected(&self) -> UndirectedGraph {
        self.digraph().underlying()
    }

    pub fn union(&self, other: &Mg) -> Mg {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        Mg {
            n: self.n + other.n,
            edges,
        }
    }

    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] == x {
                x
            } else {
                let r = find(p, p[x]);
                p[x] = r;
                r
            }
        }
        let mut k = self.n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                k -= 1;
            }
        }
        k
    }
}

/// Index form of any digraph, arcs in the library's storage order.
pub fn arcs_of<M: Multigraph + ?Sized>(g: &M) -> (usize, Vec<(usize, usize)>) {
    (g.vertex_count(), g.links().iter().map(|l| (l.tail, l.head)).collect())
}

fn odometer(len: usize, base: u32, mut f: impl FnMut(&[u8])) {
    let mut v = vec![0u8; len];
    loop {
        f(&v);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if (v[i] as u32) + 1 < base {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
    }
}

/// All `Z_p` flows, by checking conservation on each of the `p^m` maps.
pub fn flows(n: usize, arcs: &[(usize, usize)], p: u32) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    odometer(arcs.len(), p, |phi| {
        let mut net = vec![0u32; n];
        for (&(t, h), &x) in arcs.iter().zip(phi) {
            net[h] = (net[h] + x as u32) % p;
            net[t] = (net[t] + p - x as u32) % p;
        }
        if net.iter().all(|&s| s == 0) {
            out.push(phi.to_vec());
        }
    });
    out
}

pub fn has_nz_flow(n: usize, arcs: &[(usize, usize)], p: u32) -> bool {
    let mut found = false;
    odometer(arcs.len(), p - 1, |phi| {
        if found {
            return;
        }
        let mut net = vec![0u32; n];
        for (&(t, h), &x) in arcs.iter().zip(phi) {
            let x = x as u32 + 1;
            net[h] = (net[h] + x) % p;
            net[t] = (net[t] + p - x) % p;
        }
        found = net.iter().all(|&s| s == 0);
    });
    found
}

/// All `Z_p` tensions, as `pot(head) - pot(tail)` over every potential.
pub fn tensions(n: usize, arcs: &[(usize, usize)], p: u32) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    odometer(n, p, |pot| {
        out.insert(
            arcs.iter()
                .map(|&(t, h)| ((pot[h] as u32 + p - pot[t] as u32) % p) as u8)
                .collect(),
        );
    });
    out
}

/// All Klein tensions, codes `2a + b`.
pub fn klein_tensions(n: usize, arcs: &[(usize, usize)]) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    odometer(n, 4, |pot| {
        out.insert(arcs.iter().map(|&(t, h)| pot[h] ^ pot[t]).collect());
    });
    out
}

/// `c(ψ)` for every ψ avoiding `max`: each dual flow φ adds `±1` to every ψ
/// it is conformal to, the sign being the parity of `|φ^{-1}(max)|`.
pub fn coefficient_table(duals: &BTreeSet<Vec<u8>>, max: u8) -> BTreeMap<Vec<u8>, i64> {
    let mut table: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for phi in duals {
        let free: Vec<usize> = (0..phi.len()).filter(|&i| phi[i] == max).collect();
        let sign = if free.len().is_multiple_of(2) { 1 } else { -1 };
        odometer(free.len(), max as u32, |choice| {
            let mut psi = phi.clone();
            for (&i, &c) in free.iter().zip(choice) {
                psi[i] = c;
            }
            *table.entry(psi).or_default() += sign;
        });
    }
    table.retain(|_, c| *c != 0);
    table
}

pub fn is_proper(arcs: &[(usize, usize)], colors: &[u8]) -> bool {
    arcs.iter().all(|&(a, b)| colors[a] != colors[b])
}

pub fn colorable(n: usize, arcs: &[(usize, usize)], p: u32) -> bool {
    let mut found = false;
    odometer(n, p, |c| {
        if !found && is_proper(arcs, c) {
            found = true;
        }
    });
    found
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|pi| {
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (pi[a].min(pi[b]), pi[a].max(pi[b])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap()
}

/// Every connected multigraph (loops and parallel edges allowed) with at
/// most `max_edges` edges, one per isomorphism class, edges oriented from
/// the smaller to the larger endpoint.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Mg> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    out.push(Mg { n: 1, edges: vec![] });
    for m in 1..=max_edges {
        for n in 1..=m + 1 {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
            let perms = permutations(n);
            let mut pick = vec![0usize; m];
            loop {
                let edges: Vec<(usize, usize)> = pick.iter().map(|&i| pairs[i]).collect();
                let g = Mg { n, edges };
                if g.components() == 1 {
                    let c = canonical(&g.edges, &perms);
                    if seen.insert((n, c.clone())) {
                        out.push(Mg { n, edges: c });
                    }
                }
                // next nondecreasing index sequence
                let mut i = m;
                while i > 0 && pick[i - 1] + 1 == pairs.len() {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                pick[i - 1] += 1;
                let v = pick[i - 1];
                pick[i..].fill(v);
            }
        }
    }
    out
}

/// Random digraphs on up to 5 vertices with 1 to `max_edges` arcs, loops allowed.
pub fn random_digraphs(count: usize, max_edges: usize, seed: u64) -> Vec<Mg> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=max_edges);
            let edges = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            Mg { n, edges }
        })
        .collect()
}

/// Disjoint unions with 2 and 3 components drawn from small connected
/// graphs, plus unions with an isolated vertex.
pub fn disjoint_unions(max_edges: usize) -> Vec<Mg> {
    let small: Vec<Mg> = connected_multigraphs(3)
        .into_iter()
        .filter(|g| !g.edges.is_empty() && g.n <= 3)
        .collect();
    let point = Mg { n: 1, edges: vec![] };
    let mut out = Vec::new();
    for (i, a) in small.iter().enumerate() {
        out.push(a.union(&point));
        for b in small.iter().skip(i).step_by(3) {
            let ab = a.union(b);
            if ab.edges.len() <= max_edges {
                out.push(ab.clone());
            }
            let c = &small[(i * 7 + b.edges.len()) % small.len()];
            let abc = ab.union(c);
            if abc.edges.len() <= max_edges && abc.n <= 7 {
                out.push(abc);
            }
        }
    }
    out
}

pub fn corpus() -> Vec<(String, nzflow::io::GraphFile)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "g"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let g = parse_graph(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (name, g)
        })
        .collect()
}
