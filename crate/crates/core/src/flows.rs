//! Group-valued arc maps: flows, dual flows (tensions), conformal counts and
//! the coloring correspondence.
//!
//! The enumerators are generic over [`Group`] so the four-flow variant can
//! reuse them with `Z_2 x Z_2`; the public surface here is the `Z_p` one.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    simple_adjacency, circuits, Digraph, Direction, Multigraph, SpanningForest, UndirectedGraph,
};
use crate::group::{Cyclic, Group};
use crate::Limits;

/// An assignment of a value in `Z_p` to every arc, in ascending arc-id order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZpMap {
    p: u32,
    values: Vec<u8>,
}

impl ZpMap {
    pub fn new(p: u32, values: Vec<u8>) -> Result<Self> {
        Cyclic::new(p)?;
        if let Some(i) = values.iter().position(|&v| v as u32 >= p) {
            return Err(Error::ValueOutOfRange {
                arc: format!("#{i}"),
                value: values[i] as u32,
                p,
            });
        }
        Ok(ZpMap { p, values })
    }

    pub fn zero(p: u32, len: usize) -> Result<Self> {
        Self::new(p, vec![0; len])
    }

    /// Builds a map from `(arc id, value)` pairs; every arc must be covered.
    pub fn from_ids<M, I, S>(g: &M, p: u32, pairs: I) -> Result<Self>
    where
        M: Multigraph + ?Sized,
        I: IntoIterator<Item = (S, u32)>,
        S: AsRef<str>,
    {
        Cyclic::new(p)?;
        let mut values = vec![None; g.link_count()];
        for (id, v) in pairs {
            let id = id.as_ref();
            let i = g.link_index(id).ok_or_else(|| Error::UnknownArc(id.to_string()))?;
            if v >= p {
                return Err(Error::ValueOutOfRange {
                    arc: id.to_string(),
                    value: v,
                    p,
                });
            }
            values[i] = Some(v as u8);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingDirection(g.links()[i].id.clone())))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| match e {
                Error::MissingDirection(id) => Error::Format(format!("no value for arc `{id}`")),
                e => e,
            })?;
        Ok(ZpMap { p, values })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.values[i] as u32
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    pub fn parity(&self) -> Parity {
        parity(self)
    }

    fn group(&self) -> Cyclic {
        Cyclic::new(self.p).expect("validated modulus")
    }
}

/// Values indexed by vertex (potentials ω, surpluses s).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    pub p: u32,
    pub values: Vec<u8>,
}

pub type PotentialMap = VertexMap;
pub type SurplusVector = VertexMap;

impl VertexMap {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Numbers of even and odd conformal maps; their difference is `c(ψ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ConformalCount {
    pub even: u64,
    pub odd: u64,
}

impl ConformalCount {
    pub fn coefficient(&self) -> i64 {
        self.even as i64 - self.odd as i64
    }

    fn record(&mut self, maximal_count: usize) {
        if maximal_count.is_multiple_of(2) {
            self.even += 1;
        } else {
            self.odd += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConformalMethod {
    /// Pick whichever of the two enumerations visits fewer states.
    #[default]
    Auto,
    /// Enumerate the sets `S` of arcs carrying the maximal label.
    Subsets,
    /// Enumerate all (dual) flows and filter the conformal ones.
    Enumerate,
}

/// Nonzero `c(ψ)` values keyed by `ψ` (one code per arc).
pub type CoefficientTable = BTreeMap<Vec<u8>, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Flow,
    Tension,
}

// ---------------------------------------------------------------------------
// Generic machinery

pub(crate) fn check_len<M: Multigraph + ?Sized>(g: &M, len: usize) -> Result<()> {
    if len != g.link_count() {
        return Err(Error::DomainMismatch {
            expected: g.link_count(),
            got: len,
        });
    }
    Ok(())
}

pub(crate) fn state_count(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

pub(crate) fn surplus_codes<M: Multigraph + ?Sized, G: Group>(g: &M, grp: G, values: &[u8]) -> Vec<u8> {
    let mut s = vec![0u8; g.vertex_count()];
    for (l, &v) in g.links().iter().zip(values) {
        s[l.head] = grp.add(s[l.head], v);
        s[l.tail] = grp.sub(s[l.tail], v);
    }
    s
}

/// Potentials with value 0 at every forest root such that
/// `φ(e) = ω(head) - ω(tail)`; `Err(arc)` names the first arc violating it.
pub(crate) fn potentials<M: Multigraph + ?Sized, G: Group>(
    g: &M,
    grp: G,
    forest: &SpanningForest,
    values: &[u8],
) -> std::result::Result<Vec<u8>, usize> {
    let links = g.links();
    let mut omega = vec![0u8; g.vertex_count()];
    for &v in &forest.order {
        if let Some((u, l)) = forest.parent[v] {
            omega[v] = if links[l].head == v {
                grp.add(omega[u], values[l])
            } else {
                grp.sub(omega[u], values[l])
            };
        }
    }
    for (i, l) in links.iter().enumerate() {
        if grp.sub(omega[l.head], omega[l.tail]) != values[i] {
            return Err(i);
        }
    }
    Ok(omega)
}

fn odometer(digits: &mut [u8], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        if (*d as usize) + 1 < base {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Visits every flow, free (non-forest) arcs running lexicographically in
/// ascending arc order.
pub(crate) fn for_each_flow_in<M, G, F>(g: &M, grp: G, limits: Limits, mut visit: F) -> Result<()>
where
    M: Multigraph + ?Sized,
    G: Group,
    F: FnMut(&[u8]),
{
    let forest = SpanningForest::new(g);
    let links = g.links();
    let free: Vec<usize> = (0..links.len()).filter(|&l| !forest.in_tree[l]).collect();
    let needed = state_count(grp.order(), free.len());
    if needed > limits.states as u128 {
        return Err(Error::bound("flow enumeration", needed, limits.states));
    }
    let mut digits = vec![0u8; free.len()];
    let mut values = vec![0u8; links.len()];
    loop {
        for (&l, &d) in free.iter().zip(&digits) {
            values[l] = d;
        }
        let mut s = vec![0u8; g.vertex_count()];
        for &l in &free {
            let link = &links[l];
            s[link.head] = grp.add(s[link.head], values[l]);
            s[link.tail] = grp.sub(s[link.tail], values[l]);
        }
        for &v in forest.order.iter().rev() {
            if let Some((u, l)) = forest.parent[v] {
                if links[l].head == v {
                    values[l] = grp.neg(s[v]);
                    s[u] = grp.sub(s[u], values[l]);
                } else {
                    values[l] = s[v];
                    s[u] = grp.add(s[u], values[l]);
                }
                s[v] = 0;
            }
        }
        visit(&values);
        if !odometer(&mut digits, grp.order()) {
            return Ok(());
        }
    }
}

/// Visits every tension, potentials of non-root vertices running
/// lexicographically in ascending vertex order.
pub(crate) fn for_each_tension_in<M, G, F>(g: &M, grp: G, limits: Limits, mut visit: F) -> Result<()>
where
    M: Multigraph + ?Sized,
    G: Group,
    F: FnMut(&[u8]),
{
    let forest = SpanningForest::new(g);
    let links = g.links();
    let free: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| forest.parent[v].is_some())
        .collect();
    let needed = state_count(grp.order(), free.len());
    if needed > limits.states as u128 {
        return Err(Error::bound("dual flow enumeration", needed, limits.states));
    }
    let mut digits = vec![0u8; free.len()];
    let mut omega = vec![0u8; g.vertex_count()];
    let mut values = vec![0u8; links.len()];
    loop {
        for (&v, &d) in free.iter().zip(&digits) {
            omega[v] = d;
        }
        for (val, l) in values.iter_mut().zip(links) {
            *val = grp.sub(omega[l.head], omega[l.tail]);
        }
        visit(&values);
        if !odometer(&mut digits, grp.order()) {
            return Ok(());
        }
    }
}

pub(crate) fn for_each_in<M, G, F>(g: &M, grp: G, kind: Kind, limits: Limits, visit: F) -> Result<()>
where
    M: Multigraph + ?Sized,
    G: Group,
    F: FnMut(&[u8]),
{
    match kind {
        Kind::Flow => for_each_flow_in(g, grp, limits, visit),
        Kind::Tension => for_each_tension_in(g, grp, limits, visit),
    }
}

fn enumeration_states<M: Multigraph + ?Sized, G: Group>(g: &M, grp: G, kind: Kind) -> u128 {
    let forest = SpanningForest::new(g);
    let rank = g.vertex_count() - forest.kappa();
    match kind {
        Kind::Flow => state_count(grp.order(), g.link_count() - rank),
        Kind::Tension => state_count(grp.order(), rank),
    }
}

pub(crate) fn check_psi<M: Multigraph + ?Sized, G: Group>(g: &M, grp: G, psi: &[u8]) -> Result<()> {
    check_len(g, psi.len())?;
    if let Some(i) = psi.iter().position(|&v| v == grp.maximal()) {
        return Err(Error::PsiHasMaximal(g.links()[i].id.clone()));
    }
    Ok(())
}

pub(crate) fn conformal_count_in<M, G>(
    g: &M,
    grp: G,
    psi: &[u8],
    kind: Kind,
    limits: Limits,
    method: ConformalMethod,
) -> Result<ConformalCount>
where
    M: Multigraph + ?Sized,
    G: Group,
{
    check_psi(g, grp, psi)?;
    let m = g.link_count();
    let subsets = state_count(2, m);
    let method = match method {
        ConformalMethod::Auto if subsets < enumeration_states(g, grp, kind) => ConformalMethod::Subsets,
        ConformalMethod::Auto => ConformalMethod::Enumerate,
        other => other,
    };
    let max = grp.maximal();
    let mut count = ConformalCount::default();
    match method {
        ConformalMethod::Subsets => {
            if subsets > limits.states as u128 {
                return Err(Error::bound("conformal subset enumeration", subsets, limits.states));
            }
            let forest = SpanningForest::new(g);
            let mut phi = psi.to_vec();
            for mask in 0u64..(1u64 << m) {
                for (i, v) in phi.iter_mut().enumerate() {
                    *v = if mask >> i & 1 == 1 { max } else { psi[i] };
                }
                let ok = match kind {
                    Kind::Flow => surplus_codes(g, grp, &phi).iter().all(|&s| s == 0),
                    Kind::Tension => potentials(g, grp, &forest, &phi).is_ok(),
                };
                if ok {
                    count.record(mask.count_ones() as usize);
                }
            }
        }
        _ => {
            for_each_in(g, grp, kind, limits, |phi| {
                if phi.iter().zip(psi).all(|(&f, &s)| f == s || f == max) {
                    count.record(phi.iter().filter(|&&f| f == max).count());
                }
            })?;
        }
    }
    Ok(count)
}

/// Largest ψ space stored as a dense array by [`conformal_table_in`].
const DENSE_TABLE_MAX: u128 = 1 << 25;

/// Distributes the sign `(-1)^{#maximal}` of every (dual) flow onto each ψ it
/// is conformal to.
pub(crate) fn conformal_table_in<M, G>(g: &M, grp: G, kind: Kind, limits: Limits) -> Result<CoefficientTable>
where
    M: Multigraph + ?Sized,
    G: Group,
{
    conformal_table_with(g, grp, kind, limits, DENSE_TABLE_MAX)
}

fn conformal_table_with<M, G>(g: &M, grp: G, kind: Kind, limits: Limits, dense_max: u128) -> Result<CoefficientTable>
where
    M: Multigraph + ?Sized,
    G: Group,
{
    let max = grp.maximal();
    let basis = grp.order() - 1;
    let m = g.link_count();
    let space = state_count(basis, m);
    if space <= dense_max {
        // ψ as a base-(order-1) numeral, first arc most significant, so index
        // order is lexicographic order.
        let mut place = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            place[i] = place[i + 1] * basis;
        }
        let mut dense = vec![0i64; space as usize];
        let mut slots = Vec::new();
        let mut digits = Vec::new();
        for_each_in(g, grp, kind, limits, |phi| {
            slots.clear();
            let mut idx = 0;
            for (i, &v) in phi.iter().enumerate() {
                if v == max {
                    slots.push(i);
                } else {
                    idx += v as usize * place[i];
                }
            }
            let sign = if slots.len() % 2 == 0 { 1 } else { -1 };
            digits.clear();
            digits.resize(slots.len(), 0usize);
            'spread: loop {
                dense[idx] += sign;
                for j in (0..slots.len()).rev() {
                    if digits[j] + 1 < basis {
                        digits[j] += 1;
                        idx += place[slots[j]];
                        continue 'spread;
                    }
                    idx -= digits[j] * place[slots[j]];
                    digits[j] = 0;
                }
                break;
            }
        })?;
        let mut table = CoefficientTable::new();
        for (idx, &c) in dense.iter().enumerate() {
            if c != 0 {
                let psi = (0..m).map(|i| (idx / place[i] % basis) as u8).collect();
                table.insert(psi, c);
            }
        }
        return Ok(table);
    }

    let mut table: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    let mut overflow = false;
    for_each_in(g, grp, kind, limits, |phi| {
        if overflow {
            return;
        }
        let slots: Vec<usize> = (0..phi.len()).filter(|&i| phi[i] == max).collect();
        let sign = if slots.len().is_multiple_of(2) { 1 } else { -1 };
        let mut psi = phi.to_vec();
        let mut digits = vec![0u8; slots.len()];
        loop {
            for (&i, &d) in slots.iter().zip(&digits) {
                psi[i] = d;
            }
            *table.entry(psi.clone()).or_insert(0) += sign;
            if !odometer(&mut digits, basis) {
                break;
            }
        }
        if table.len() > limits.terms {
            overflow = true;
        }
    })?;
    if overflow {
        return Err(Error::bound("coefficient table", table.len() as u128, limits.terms as u128));
    }
    table.retain(|_, c| *c != 0);
    Ok(table)
}

// ---------------------------------------------------------------------------
// Z_p surface

fn modulus_of(phi: &ZpMap, g: &Digraph) -> Result<Cyclic> {
    check_len(g, phi.len())?;
    Ok(phi.group())
}

pub fn surplus(g: &Digraph, phi: &ZpMap) -> Result<SurplusVector> {
    let grp = modulus_of(phi, g)?;
    Ok(VertexMap {
        p: phi.p,
        values: surplus_codes(g, grp, &phi.values),
    })
}

pub fn is_flow(g: &Digraph, phi: &ZpMap) -> Result<bool> {
    Ok(surplus(g, phi)?.is_zero())
}

pub fn is_dual_flow(g: &Digraph, phi: &ZpMap) -> Result<bool> {
    let grp = modulus_of(phi, g)?;
    let forest = SpanningForest::new(g);
    let ok = potentials(g, grp, &forest, &phi.values).is_ok();
    #[cfg(feature = "crosscheck")]
    if g.link_count() <= 12 {
        assert_eq!(ok, is_dual_flow_by_circuits(g, phi)?, "tension test disagrees with circuit sums");
    }
    Ok(ok)
}

/// The definition itself: the signed sum around every circuit vanishes.
pub fn is_dual_flow_by_circuits(g: &Digraph, phi: &ZpMap) -> Result<bool> {
    let grp = modulus_of(phi, g)?;
    Ok(circuits(g, None).iter().all(|c| {
        c.steps.iter().fold(0u8, |acc, (id, dir)| {
            let v = phi.values[g.link_index(id).expect("circuit arc")];
            match dir {
                Direction::Forward => grp.add(acc, v),
                Direction::Backward => grp.sub(acc, v),
            }
        }) == 0
    }))
}

fn collect(p: u32, run: impl FnOnce(&mut dyn FnMut(&[u8])) -> Result<()>) -> Result<Vec<ZpMap>> {
    let mut out = Vec::new();
    run(&mut |v: &[u8]| {
        out.push(ZpMap {
            p,
            values: v.to_vec(),
        })
    })?;
    Ok(out)
}

/// All `p^(|E|-|V|+κ)` flows.
pub fn enumerate_flows(g: &Digraph, p: u32, limits: Limits) -> Result<Vec<ZpMap>> {
    let grp = Cyclic::new(p)?;
    collect(p, |f| for_each_flow_in(g, grp, limits, f))
}

/// All `p^(|V|-κ)` dual flows.
pub fn enumerate_dual_flows(g: &Digraph, p: u32, limits: Limits) -> Result<Vec<ZpMap>> {
    let grp = Cyclic::new(p)?;
    collect(p, |f| for_each_tension_in(g, grp, limits, f))
}

pub fn parity(phi: &ZpMap) -> Parity {
    let max = (phi.p - 1) as u8;
    if phi.values.iter().filter(|&&v| v == max).count() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn is_conformal(phi: &ZpMap, psi: &ZpMap) -> Result<bool> {
    if phi.p != psi.p || phi.len() != psi.len() {
        return Err(Error::DomainMismatch {
            expected: phi.len(),
            got: psi.len(),
        });
    }
    let max = (phi.p - 1) as u8;
    if let Some(i) = psi.values.iter().position(|&v| v == max) {
        return Err(Error::PsiHasMaximal(format!("#{i}")));
    }
    Ok(phi
        .values
        .iter()
        .zip(&psi.values)
        .all(|(&f, &s)| f == s || f == max))
}

pub fn count_conformal_dual_flows(
    g: &Digraph,
    psi: &ZpMap,
    limits: Limits,
    method: ConformalMethod,
) -> Result<ConformalCount> {
    let grp = modulus_of(psi, g)?;
    conformal_count_in(g, grp, &psi.values, Kind::Tension, limits, method)
}

pub fn count_conformal_flows(
    g: &Digraph,
    psi: &ZpMap,
    limits: Limits,
    method: ConformalMethod,
) -> Result<ConformalCount> {
    let grp = modulus_of(psi, g)?;
    conformal_count_in(g, grp, &psi.values, Kind::Flow, limits, method)
}

/// `c(ψ)` for every ψ with a nonzero value, from the dual flows of `g`.
pub fn coefficient_table(g: &Digraph, p: u32, limits: Limits) -> Result<CoefficientTable> {
    conformal_table_in(g, Cyclic::new(p)?, Kind::Tension, limits)
}

/// Same as [`coefficient_table`] but counting conformal flows instead.
pub fn flow_coefficient_table(g: &Digraph, p: u32, limits: Limits) -> Result<CoefficientTable> {
    conformal_table_in(g, Cyclic::new(p)?, Kind::Flow, limits)
}

/// First nowhere-zero flow in enumeration order, if any.
pub fn find_nz_flow(g: &Digraph, p: u32, limits: Limits) -> Result<Option<ZpMap>> {
    find_nowhere_zero(g, p, Kind::Flow, limits)
}

/// First nowhere-zero dual flow in enumeration order, if any.
pub fn find_nz_dual_flow(g: &Digraph, p: u32, limits: Limits) -> Result<Option<ZpMap>> {
    find_nowhere_zero(g, p, Kind::Tension, limits)
}

fn find_nowhere_zero(g: &Digraph, p: u32, kind: Kind, limits: Limits) -> Result<Option<ZpMap>> {
    let grp = Cyclic::new(p)?;
    let mut found = None;
    for_each_in(g, grp, kind, limits, |v| {
        if found.is_none() && v.iter().all(|&x| x != 0) {
            found = Some(ZpMap { p, values: v.to_vec() });
        }
    })?;
    Ok(found)
}

/// Potentials of a nowhere-zero dual flow, zero at the smallest vertex of each
/// component; adjacent vertices receive distinct values.
pub fn coloring_from_dual_flow(g: &Digraph, phi: &ZpMap) -> Result<PotentialMap> {
    let grp = modulus_of(phi, g)?;
    if let Some(i) = phi.values.iter().position(|&v| v == 0) {
        return Err(Error::HasZero(g.arcs()[i].id.clone()));
    }
    let forest = SpanningForest::new(g);
    let omega = potentials(g, grp, &forest, &phi.values)
        .map_err(|i| Error::NotDualFlow(g.arcs()[i].id.clone()))?;
    Ok(VertexMap {
        p: phi.p,
        values: omega,
    })
}

pub fn is_proper_coloring<M: Multigraph + ?Sized>(g: &M, colors: &[u8]) -> bool {
    g.links().iter().all(|l| colors[l.tail] != colors[l.head])
}

/// Exhaustive proper `p`-coloring search.
pub fn is_p_colorable(g: &UndirectedGraph, p: u32, limits: Limits) -> Result<bool> {
    Cyclic::new(p)?;
    let n = g.vertex_count();
    let needed = state_count(p as usize, n);
    if needed > limits.states as u128 {
        return Err(Error::bound("coloring search", needed, limits.states));
    }
    if g.edges().iter().any(|e| e.is_loop()) {
        return Ok(false);
    }
    let adj = simple_adjacency(g);
    let mut color = vec![u8::MAX; n];

    fn place(v: usize, p: u8, adj: &[std::collections::BTreeSet<usize>], color: &mut [u8]) -> bool {
        if v == color.len() {
            return true;
        }
        // The first vertex of a fresh component can take color 0 only.
        let top = if adj[v].iter().all(|&w| w > v) { 1 } else { p };
        for c in 0..top {
            if adj[v].iter().all(|&w| color[w] != c) {
                color[v] = c;
                if place(v + 1, p, adj, color) {
                    return true;
                }
            }
        }
        color[v] = u8::MAX;
        false
    }
    Ok(place(0, p as u8, &adj, &mut color))
}
