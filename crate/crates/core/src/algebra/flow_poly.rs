//! The flow polynomial `f_G^p = prod_v sum_{i<p} (prod_in x_e * prod_out x_e^(p-1))^i`,
//! its normal form, and evaluation at roots of unity.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicInt;
use super::raw::RawPoly;
use super::reduced::{reduced_product, QuotientPoly, ReducedPoly};
use crate::error::{Error, Result};
use crate::flows::{self, coefficient_table, ZpMap};
use crate::graph::{kappa, Digraph, Multigraph};
use crate::group::{Cyclic, Group};
use crate::Limits;

/// `[x^exponent]` in the single variable `x`.
pub fn reduce_power(p: u32, exponent: u64) -> Result<QuotientPoly> {
    let grp = Cyclic::new(p)?;
    QuotientPoly::from_terms(grp, vec!["x".into()], [(vec![grp.reduce(exponent)], BigInt::one())])
}

/// `[f]`: every exponent is taken mod `p` and a residue `p - 1` is replaced
/// by `-(1 + x + ... + x^(p-2))`.
pub fn normalize(f: &RawPoly, p: u32) -> Result<QuotientPoly> {
    let grp = Cyclic::new(p)?;
    QuotientPoly::from_terms(
        grp,
        f.vars().to_vec(),
        f.iter()
            .map(|(e, c)| (e.iter().map(|&k| grp.reduce(k as u64)).collect(), c.clone())),
    )
}

pub fn is_in_ideal(f: &RawPoly, p: u32) -> Result<bool> {
    Ok(normalize(f, p)?.is_zero())
}

fn link_ids<M: Multigraph + ?Sized>(g: &M) -> Vec<String> {
    g.links().iter().map(|l| l.id.clone()).collect()
}

/// The unreduced product. Its size grows like `p^|V|`, so this is for small
/// graphs and cross-checks only.
pub fn flow_polynomial(g: &Digraph, p: u32, limits: Limits) -> Result<RawPoly> {
    Cyclic::new(p)?;
    let vars = link_ids(g);
    let mut acc = RawPoly::constant(vars.clone(), 1);
    for v in 0..g.vertex_count() {
        let mut base = vec![0u32; vars.len()];
        for (i, l) in g.arcs().iter().enumerate() {
            if l.head == v {
                base[i] += 1;
            }
            if l.tail == v {
                base[i] += p - 1;
            }
        }
        let factor = RawPoly::from_terms(
            vars.clone(),
            (0..p).map(|i| (base.iter().map(|&b| b * i).collect(), BigInt::one())),
        )?;
        acc = acc.mul(&factor, limits)?;
    }
    Ok(acc)
}

/// Order in which vertex factors are multiplied: starting from the first
/// vertex, repeatedly take the vertex with the most links back into the
/// processed set (ties to the smaller id). Keeping the frontier small keeps
/// the reduced partial products small.
pub(crate) fn frontier_order<M: Multigraph + ?Sized>(g: &M) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let inc = g.incidence();
    let links = g.links();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("vertex left");
        done[v] = true;
        order.push(v);
        for &l in &inc[v] {
            if !links[l].is_loop() {
                weight[links[l].other(v)] += 1;
            }
        }
    }
    order
}

/// `prod_v sum_{g in G} prod_{e in δ(v)} X_e^(±g)` with a reduction after
/// every vertex factor. Arcs entering `v` take `+g`, arcs leaving take `-g`;
/// loops contribute `X^(g-g) = 1` and are skipped.
pub(crate) fn flow_normal_form_in<M, G>(g: &M, grp: G, limits: Limits) -> Result<ReducedPoly<G>>
where
    M: Multigraph + ?Sized,
    G: Group,
{
    let links = g.links();
    let inc = g.incidence();
    let order = frontier_order(g);
    let factors = || {
        order.iter().map(|&v| {
            (0..grp.order() as u8)
                .map(|code| {
                    inc[v]
                        .iter()
                        .filter(|&&l| !links[l].is_loop())
                        .map(|&l| (l, if links[l].head == v { code } else { grp.neg(code) }))
                        .collect()
                })
                .collect()
        })
    };
    reduced_product(grp, link_ids(g), factors, limits)
}

pub fn flow_polynomial_normal_form(g: &Digraph, p: u32, limits: Limits) -> Result<QuotientPoly> {
    flow_normal_form_in(g, Cyclic::new(p)?, limits)
}

/// Nowhere-zero flow existence as `[f_G^p] != 0`.
pub fn has_nz_flow_membership(g: &Digraph, p: u32, limits: Limits) -> Result<bool> {
    Ok(!flow_polynomial_normal_form(g, p, limits)?.is_zero())
}

/// `p^κ * sum_ψ c(ψ) x^ψ` assembled from conformal dual flow counts; equal to
/// the normal form of the flow polynomial.
pub fn conformal_expansion(g: &Digraph, p: u32, limits: Limits) -> Result<QuotientPoly> {
    let grp = Cyclic::new(p)?;
    let table = coefficient_table(g, p, limits)?;
    let scale = BigInt::from(p).pow(kappa(g) as u32);
    QuotientPoly::from_terms(
        grp,
        link_ids(g),
        table.into_iter().map(|(psi, c)| (psi, &scale * c)),
    )
}

fn check_assignment(vars: &[String], assignment: &[u32], p: u32) -> Result<()> {
    if assignment.len() != vars.len() {
        return Err(Error::DomainMismatch {
            expected: vars.len(),
            got: assignment.len(),
        });
    }
    if let Some(i) = assignment.iter().position(|&k| k == 0 || k >= p) {
        return Err(Error::ValueOutOfRange {
            arc: vars[i].clone(),
            value: assignment[i],
            p,
        });
    }
    Ok(())
}

fn eval_powers<'a, I>(terms: I, assignment: &[u32], p: u32) -> CyclotomicInt
where
    I: Iterator<Item = (Vec<u64>, &'a BigInt)>,
{
    let mut buckets = vec![BigInt::zero(); p as usize];
    for (e, c) in terms {
        let k = e
            .iter()
            .zip(assignment)
            .fold(0u64, |acc, (&x, &a)| (acc + x % p as u64 * a as u64) % p as u64);
        buckets[k as usize] += c;
    }
    CyclotomicInt::from_powers(p, buckets)
}

/// `f(ρ^a_1, ..., ρ^a_m)` exactly, for exponents `a_e` in `1..p`.
pub fn cyclotomic_eval(f: &RawPoly, assignment: &[u32], p: u32) -> Result<CyclotomicInt> {
    Cyclic::new(p)?;
    check_assignment(f.vars(), assignment, p)?;
    Ok(eval_powers(
        f.iter().map(|(e, c)| (e.iter().map(|&x| x as u64).collect(), c)),
        assignment,
        p,
    ))
}

/// Same evaluation for a normal form; agrees with the unreduced polynomial
/// because every generator vanishes at these points.
pub fn cyclotomic_eval_normal_form(f: &QuotientPoly, assignment: &[u32]) -> Result<CyclotomicInt> {
    let p = f.group().modulus();
    check_assignment(f.vars(), assignment, p)?;
    Ok(eval_powers(
        f.iter().map(|(e, c)| (e.iter().map(|&x| x as u64).collect(), c)),
        assignment,
        p,
    ))
}

/// `f_G^p(ρ^φ)` without polynomial arithmetic: `p^|V|` when `φ` is a flow and
/// 0 otherwise.
pub fn surplus_eval(g: &Digraph, phi: &ZpMap) -> Result<BigInt> {
    if let Some(i) = phi.values().iter().position(|&v| v == 0) {
        let id = g.arcs().get(i).map_or_else(|| format!("#{i}"), |a| a.id.clone());
        return Err(Error::HasZero(id));
    }
    if flows::is_flow(g, phi)? {
        Ok(BigInt::from(phi.modulus()).pow(g.vertex_count() as u32))
    } else {
        Ok(BigInt::zero())
    }
}
