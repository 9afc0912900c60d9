//! Four-flows on undirected multigraphs with values in `Z_2 x Z_2`.
//!
//! Every element of the Klein group is its own inverse, so neither flows nor
//! dual flows depend on an orientation; the stored endpoint order of each
//! edge is ignored. A loop meets its vertex twice and contributes nothing.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{flow_normal_form_in, PairQuotientPoly, RawPoly};
use crate::error::{Error, Result};
use crate::flows::{
    check_len, conformal_count_in, conformal_table_in, for_each_flow_in, for_each_tension_in, potentials,
    surplus_codes, CoefficientTable, ConformalCount, ConformalMethod, Kind, Parity,
};
use crate::graph::{kappa, Multigraph, SpanningForest, UndirectedGraph};
use crate::group::{Group, Klein};
use crate::Limits;

/// A `Z_2 x Z_2` value on every edge, in ascending edge-id order, stored as
/// codes `2a + b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KleinMap {
    values: Vec<u8>,
}

impl KleinMap {
    pub fn from_pairs(pairs: &[(u8, u8)]) -> Result<Self> {
        if let Some(i) = pairs.iter().position(|&(a, b)| a > 1 || b > 1) {
            return Err(Error::ValueOutOfRange {
                arc: format!("#{i}"),
                value: pairs[i].0.max(pairs[i].1) as u32,
                p: 2,
            });
        }
        Ok(KleinMap {
            values: pairs.iter().map(|&p| Klein::encode(p)).collect(),
        })
    }

    pub fn from_codes(values: Vec<u8>) -> Result<Self> {
        if let Some(i) = values.iter().position(|&c| c > 3) {
            return Err(Error::Format(format!("Klein code {} at position {i}", values[i])));
        }
        Ok(KleinMap { values })
    }

    /// Builds a map from `(edge id, pair)` entries; every edge must be covered.
    pub fn from_ids<M, I, S>(g: &M, entries: I) -> Result<Self>
    where
        M: Multigraph + ?Sized,
        I: IntoIterator<Item = (S, (u8, u8))>,
        S: AsRef<str>,
    {
        let mut pairs = vec![None; g.link_count()];
        for (id, pair) in entries {
            let id = id.as_ref();
            let i = g.link_index(id).ok_or_else(|| Error::UnknownArc(id.to_string()))?;
            pairs[i] = Some(pair);
        }
        let pairs = pairs
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| Error::Format(format!("no value for edge `{}`", g.links()[i].id))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(&pairs).map_err(|e| match e {
            Error::ValueOutOfRange { arc, value, p } => Error::ValueOutOfRange {
                arc: arc
                    .strip_prefix('#')
                    .and_then(|i| i.parse::<usize>().ok())
                    .map_or(arc.clone(), |i| g.links()[i].id.clone()),
                value,
                p,
            },
            e => e,
        })
    }

    pub fn codes(&self) -> &[u8] {
        &self.values
    }

    pub fn pairs(&self) -> Vec<(u8, u8)> {
        self.values.iter().map(|&c| Klein::decode(c)).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|&c| c != 0)
    }

    /// Parity of the number of edges labelled `(1,1)`.
    pub fn parity(&self) -> Parity {
        if self.values.iter().filter(|&&c| c == Klein.maximal()).count() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

pub fn is_four_flow(g: &UndirectedGraph, phi: &KleinMap) -> Result<bool> {
    check_len(g, phi.len())?;
    Ok(surplus_codes(g, Klein, &phi.values).iter().all(|&s| s == 0))
}

pub fn is_dual_four_flow(g: &UndirectedGraph, phi: &KleinMap) -> Result<bool> {
    check_len(g, phi.len())?;
    let forest = SpanningForest::new(g);
    Ok(potentials(g, Klein, &forest, &phi.values).is_ok())
}

fn pair_vars(edges: &[String]) -> Vec<String> {
    edges.iter().flat_map(|e| [format!("x_{e}"), format!("y_{e}")]).collect()
}

fn edge_ids<M: Multigraph + ?Sized>(g: &M) -> Vec<String> {
    g.links().iter().map(|l| l.id.clone()).collect()
}

/// `[x^a y^b]` for a single edge `e`.
pub fn reduce_pair_power(a: u64, b: u64) -> PairQuotientPoly {
    let code = Klein::encode(((a % 2) as u8, (b % 2) as u8));
    PairQuotientPoly::from_terms(Klein, vec!["e".into()], [(vec![code], BigInt::one())]).expect("one variable")
}

/// `prod_v (prod_{e in δ(v)} x_e + 1)(prod_{e in δ(v)} y_e + 1)` with
/// variables `x_e, y_e` per edge; a loop appears squared.
pub fn four_flow_polynomial(g: &UndirectedGraph, limits: Limits) -> Result<RawPoly> {
    let vars = pair_vars(&edge_ids(g));
    let mut acc = RawPoly::constant(vars.clone(), 1);
    for v in 0..g.vertex_count() {
        let mut deg = vec![0u32; g.link_count()];
        for (i, l) in g.edges().iter().enumerate() {
            deg[i] += (l.tail == v) as u32 + (l.head == v) as u32;
        }
        let terms = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(a, b)| {
            let e: Vec<u32> = deg.iter().flat_map(|&d| [a * d, b * d]).collect();
            (e, BigInt::one())
        });
        acc = acc.mul(&RawPoly::from_terms(vars.clone(), terms)?, limits)?;
    }
    Ok(acc)
}

/// Reduces a polynomial over variables `x_e1, y_e1, x_e2, y_e2, ...`.
pub fn normalize_pair(f: &RawPoly) -> Result<PairQuotientPoly> {
    let vars = f.vars();
    if !vars.len().is_multiple_of(2) {
        return Err(Error::Format("expected variables in x/y pairs".into()));
    }
    let edges = vars
        .chunks(2)
        .map(|c| match (c[0].strip_prefix("x_"), c[1].strip_prefix("y_")) {
            (Some(a), Some(b)) if a == b => Ok(a.to_string()),
            _ => Err(Error::Format(format!("`{}`, `{}` is not an x/y pair", c[0], c[1]))),
        })
        .collect::<Result<Vec<_>>>()?;
    PairQuotientPoly::from_terms(
        Klein,
        edges,
        f.iter().map(|(e, c)| {
            let codes = e
                .chunks(2)
                .map(|p| Klein::encode(((p[0] % 2) as u8, (p[1] % 2) as u8)))
                .collect();
            (codes, c.clone())
        }),
    )
}

pub fn four_flow_polynomial_normal_form(g: &UndirectedGraph, limits: Limits) -> Result<PairQuotientPoly> {
    flow_normal_form_in(g, Klein, limits)
}

/// `4^κ * sum_ψ c(ψ) x^ψ` from conformal dual four-flow counts.
pub fn four_conformal_expansion(g: &UndirectedGraph, limits: Limits) -> Result<PairQuotientPoly> {
    let table = four_flow_coefficient_table(g, limits)?;
    let scale = BigInt::from(4).pow(kappa(g) as u32);
    PairQuotientPoly::from_terms(Klein, edge_ids(g), table.into_iter().map(|(psi, c)| (psi, &scale * c)))
}

/// `c(ψ)` for every nowhere-`(1,1)` ψ with a nonzero value; keys are codes.
pub fn four_flow_coefficient_table(g: &UndirectedGraph, limits: Limits) -> Result<CoefficientTable> {
    conformal_table_in(g, Klein, Kind::Tension, limits)
}

pub fn count_conformal_dual_four_flows(
    g: &UndirectedGraph,
    psi: &KleinMap,
    limits: Limits,
    method: ConformalMethod,
) -> Result<ConformalCount> {
    conformal_count_in(g, Klein, &psi.values, Kind::Tension, limits, method)
}

pub fn enumerate_four_flows(g: &UndirectedGraph, limits: Limits) -> Result<Vec<KleinMap>> {
    let mut out = Vec::new();
    for_each_flow_in(g, Klein, limits, |v| out.push(KleinMap { values: v.to_vec() }))?;
    Ok(out)
}

pub fn enumerate_dual_four_flows(g: &UndirectedGraph, limits: Limits) -> Result<Vec<KleinMap>> {
    let mut out = Vec::new();
    for_each_tension_in(g, Klein, limits, |v| out.push(KleinMap { values: v.to_vec() }))?;
    Ok(out)
}

/// First nowhere-zero four-flow in enumeration order.
pub fn find_nz_four_flow(g: &UndirectedGraph, limits: Limits) -> Result<Option<KleinMap>> {
    let mut found = None;
    for_each_flow_in(g, Klein, limits, |v| {
        if found.is_none() && v.iter().all(|&c| c != 0) {
            found = Some(KleinMap { values: v.to_vec() });
        }
    })?;
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FourFlowMethod {
    /// `[f_G] != 0`.
    Membership,
    /// Some nowhere-`(1,1)` ψ has unequal even and odd conformal counts.
    Conformal,
    /// Exhaustive search over the cycle space.
    Brute,
}

pub fn has_nz_four_flow(g: &UndirectedGraph, method: FourFlowMethod, limits: Limits) -> Result<bool> {
    match method {
        FourFlowMethod::Membership => Ok(!four_flow_polynomial_normal_form(g, limits)?.is_zero()),
        FourFlowMethod::Conformal => Ok(!four_flow_coefficient_table(g, limits)?.is_empty()),
        FourFlowMethod::Brute => Ok(find_nz_four_flow(g, limits)?.is_some()),
    }
}

/// The point `(a_e, b_e) = ((-1)^φ1, (-1)^φ2)` for a Klein map.
pub fn klein_point(phi: &KleinMap) -> Vec<(i8, i8)> {
    phi.pairs()
        .into_iter()
        .map(|(a, b)| (1 - 2 * a as i8, 1 - 2 * b as i8))
        .collect()
}

fn check_point(vars: usize, point: &[(i8, i8)]) -> Result<()> {
    if point.len() != vars {
        return Err(Error::DomainMismatch {
            expected: vars,
            got: point.len(),
        });
    }
    if let Some(i) = point
        .iter()
        .position(|&p| !matches!(p, (1, -1) | (-1, 1) | (-1, -1)))
    {
        return Err(Error::Format(format!("point {:?} at position {i} is not a zero of the ideal", point[i])));
    }
    Ok(())
}

/// Exact value of a polynomial over `x_e, y_e` pairs at a nowhere-`(1,1)`
/// sign point.
pub fn klein_eval(f: &RawPoly, point: &[(i8, i8)]) -> Result<BigInt> {
    if !f.vars().len().is_multiple_of(2) {
        return Err(Error::Format("expected variables in x/y pairs".into()));
    }
    check_point(f.vars().len() / 2, point)?;
    let mut total = BigInt::zero();
    for (e, c) in f.iter() {
        let negative = e
            .chunks(2)
            .zip(point)
            .filter(|(k, &(a, b))| (a < 0 && k[0] % 2 == 1) != (b < 0 && k[1] % 2 == 1))
            .count()
            % 2
            == 1;
        if negative {
            total -= c;
        } else {
            total += c;
        }
    }
    Ok(total)
}

/// Same evaluation on a normal form.
pub fn klein_eval_normal_form(f: &PairQuotientPoly, point: &[(i8, i8)]) -> Result<BigInt> {
    check_point(f.vars().len(), point)?;
    let mut total = BigInt::zero();
    for (k, c) in f.iter() {
        let negative = k
            .iter()
            .zip(point)
            .filter(|(&code, &(a, b))| {
                let (x, y) = Klein::decode(code);
                (a < 0 && x == 1) != (b < 0 && y == 1)
            })
            .count()
            % 2
            == 1;
        if negative {
            total -= c;
        } else {
            total += c;
        }
    }
    Ok(total)
}
