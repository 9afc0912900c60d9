//! Sparse polynomials in normal form over a group-indexed monomial basis.
//!
//! A key holds one code per variable (arc). A code `c` below the maximal
//! label stands for the basic monomial `x^c` (or `x^a y^b` in the Klein
//! case). Whenever an operation produces the maximal code in a coordinate,
//! that coordinate is rewritten as minus the sum of all basic codes, which is
//! exactly the reduction rule of the ideal.

use std::borrow::Borrow;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::{Cyclic, Group, Klein};
use crate::Limits;

/// How a group code is printed as a monomial factor and serialized.
pub trait Basis: Group {
    fn push_factors(&self, var: &str, code: u8, out: &mut Vec<String>);
    fn code_json(&self, code: u8) -> Value;
    fn header(&self, obj: &mut Map<String, Value>);
}

impl Basis for Cyclic {
    fn push_factors(&self, var: &str, code: u8, out: &mut Vec<String>) {
        match code {
            0 => {}
            1 => out.push(var.to_string()),
            k => out.push(format!("{var}^{k}")),
        }
    }

    fn code_json(&self, code: u8) -> Value {
        json!(code)
    }

    fn header(&self, obj: &mut Map<String, Value>) {
        obj.insert("p".into(), json!(self.modulus()));
    }
}

impl Basis for Klein {
    fn push_factors(&self, var: &str, code: u8, out: &mut Vec<String>) {
        let (a, b) = Klein::decode(code);
        if a == 1 {
            out.push(format!("x_{var}"));
        }
        if b == 1 {
            out.push(format!("y_{var}"));
        }
    }

    fn code_json(&self, code: u8) -> Value {
        let (a, b) = Klein::decode(code);
        json!([a, b])
    }

    fn header(&self, obj: &mut Map<String, Value>) {
        obj.insert("group".into(), json!("Z2xZ2"));
    }
}

#[derive(Clone, Debug)]
pub struct ReducedPoly<G: Group> {
    group: G,
    vars: Vec<String>,
    terms: Terms<BigInt>,
}

/// Normal forms modulo the ideal generated by `1 + x_e + ... + x_e^(p-1)`.
pub type QuotientPoly = ReducedPoly<Cyclic>;
/// Normal forms modulo `(x_e^2 - 1, y_e^2 - 1, (x_e + 1)(y_e + 1))`.
pub type PairQuotientPoly = ReducedPoly<Klein>;

impl<G: Group> PartialEq for ReducedPoly<G> {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.vars == other.vars && self.terms == other.terms
    }
}

impl<G: Group> Eq for ReducedPoly<G> {}

pub(crate) type Terms<C, K = Box<[u8]>> = FxHashMap<K, C>;

/// Storage for an exponent-code vector. Fixed arrays avoid an allocation per
/// term for graphs with few arcs; unused trailing bytes stay zero.
pub(crate) trait KeyBuf: Hash + Eq + Clone + Borrow<[u8]> + AsRef<[u8]> + AsMut<[u8]> {
    fn zeroed(n: usize) -> Self;
}

impl KeyBuf for Box<[u8]> {
    fn zeroed(n: usize) -> Self {
        vec![0; n].into()
    }
}

impl<const N: usize> KeyBuf for [u8; N] {
    fn zeroed(n: usize) -> Self {
        assert!(n <= N, "key of {n} codes in a buffer of {N}");
        [0; N]
    }
}

/// Coefficient arithmetic; the machine-word version reports overflow so the
/// caller can redo the work with big integers.
pub(crate) trait Coeff: Clone + Zero {
    #[must_use]
    fn add_to(&mut self, other: &Self) -> bool;
    fn negated(&self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn add_to(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }

    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
}

impl Coeff for i64 {
    fn add_to(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }

    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
}

#[derive(Debug)]
pub(crate) enum ProductError {
    Overflow,
    Bound(Error),
}

/// Adds `coeff * x^key` to `map`, expanding every maximal coordinate listed
/// in `maximal` into `-(sum of basic codes)`. Returns `false` on overflow.
#[must_use]
fn add_expanded<C: Coeff, K: KeyBuf>(
    map: &mut Terms<C, K>,
    key: &mut K,
    maximal: &[usize],
    basis: u8,
    coeff: &C,
) -> bool {
    if maximal.is_empty() {
        return add_term(map, key, coeff);
    }
    let negated;
    let coeff = if maximal.len() % 2 == 1 {
        match coeff.negated() {
            Some(n) => negated = n,
            None => return false,
        }
        &negated
    } else {
        coeff
    };
    for &i in maximal {
        key.as_mut()[i] = 0;
    }
    'outer: loop {
        if !add_term(map, key, coeff) {
            return false;
        }
        let codes = key.as_mut();
        for &i in maximal.iter().rev() {
            if codes[i] + 1 < basis {
                codes[i] += 1;
                continue 'outer;
            }
            codes[i] = 0;
        }
        return true;
    }
}

#[must_use]
fn add_term<C: Coeff, K: KeyBuf>(map: &mut Terms<C, K>, key: &K, coeff: &C) -> bool {
    match map.get_mut(key.borrow()) {
        Some(c) => c.add_to(coeff),
        None => {
            map.insert(key.clone(), coeff.clone());
            true
        }
    }
}

/// `[prod_j (m_j1 + ... + m_jk)]`, one factor per entry of `factors`, reduced
/// after every factor. Each `m` is a group monomial given sparsely as
/// `(variable index, code)` pairs with distinct indices.
pub(crate) fn product_of_group_sums<G: Group, C: Coeff, K: KeyBuf>(
    grp: G,
    nvars: usize,
    factors: impl Iterator<Item = Vec<Vec<(usize, u8)>>>,
    limits: Limits,
    one: C,
) -> std::result::Result<Terms<C, K>, ProductError> {
    let max = grp.maximal();
    let mut acc: Terms<C, K> = FxHashMap::default();
    acc.insert(K::zeroed(nvars), one);
    let mut maximal = Vec::new();
    for monomials in factors {
        let mut out: Terms<C, K> = FxHashMap::default();
        out.reserve(acc.len());
        for (k, c) in &acc {
            let mut key = k.clone();
            let base = k.as_ref();
            for m in &monomials {
                maximal.clear();
                let codes = key.as_mut();
                for &(i, code) in m {
                    codes[i] = grp.add(base[i], code);
                    if codes[i] == max {
                        maximal.push(i);
                    }
                }
                if !add_expanded(&mut out, &mut key, &maximal, max, c) {
                    return Err(ProductError::Overflow);
                }
                let codes = key.as_mut();
                for &(i, _) in m {
                    codes[i] = base[i];
                }
            }
            if out.len() > limits.terms {
                return Err(ProductError::Bound(Error::bound(
                    "normal form",
                    out.len() as u128,
                    limits.terms as u128,
                )));
            }
        }
        out.retain(|_, c| !c.is_zero());
        acc = out;
    }
    Ok(acc)
}

/// Runs [`product_of_group_sums`] with the cheapest key and coefficient
/// types that can hold the result, falling back to big integers on overflow.
pub(crate) fn reduced_product<G: Group, F, I>(
    grp: G,
    vars: Vec<String>,
    factors: F,
    limits: Limits,
) -> Result<ReducedPoly<G>>
where
    F: Fn() -> I,
    I: Iterator<Item = Vec<Vec<(usize, u8)>>>,
{
    fn run<G: Group, K: KeyBuf, I: Iterator<Item = Vec<Vec<(usize, u8)>>>>(
        grp: G,
        n: usize,
        factors: &dyn Fn() -> I,
        limits: Limits,
    ) -> Result<Terms<BigInt>> {
        let small = product_of_group_sums::<G, i64, K>(grp, n, factors(), limits, 1);
        let big = match small {
            Ok(t) => {
                return Ok(t
                    .into_iter()
                    .map(|(k, c)| (k.as_ref()[..n].into(), BigInt::from(c)))
                    .collect())
            }
            Err(ProductError::Bound(e)) => return Err(e),
            Err(ProductError::Overflow) => {
                product_of_group_sums::<G, BigInt, K>(grp, n, factors(), limits, BigInt::one())
            }
        };
        match big {
            Ok(t) => Ok(t.into_iter().map(|(k, c)| (k.as_ref()[..n].into(), c)).collect()),
            Err(ProductError::Bound(e)) => Err(e),
            Err(ProductError::Overflow) => unreachable!("big integers do not overflow"),
        }
    }
    let n = vars.len();
    let terms = match n {
        0..=16 => run::<G, [u8; 16], I>(grp, n, &factors, limits)?,
        17..=32 => run::<G, [u8; 32], I>(grp, n, &factors, limits)?,
        33..=64 => run::<G, [u8; 64], I>(grp, n, &factors, limits)?,
        _ => run::<G, Box<[u8]>, I>(grp, n, &factors, limits)?,
    };
    Ok(ReducedPoly::from_term_map(grp, vars, terms))
}

impl<G: Group> ReducedPoly<G> {
    pub fn zero(group: G, vars: Vec<String>) -> Self {
        ReducedPoly {
            group,
            vars,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(group: G, vars: Vec<String>, c: impl Into<BigInt>) -> Self {
        let key = vec![0u8; vars.len()];
        Self::from_terms(group, vars, [(key, c.into())]).expect("constant key")
    }

    /// Sums `coeff * x^codes`; codes may include the maximal label, which is
    /// reduced on the way in.
    pub fn from_terms<I>(group: G, vars: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u8>, BigInt)>,
    {
        let mut p = Self::zero(group, vars);
        let max = group.maximal();
        for (key, coeff) in terms {
            if key.len() != p.vars.len() {
                return Err(Error::DomainMismatch {
                    expected: p.vars.len(),
                    got: key.len(),
                });
            }
            if let Some(&c) = key.iter().find(|&&c| c as usize >= group.order()) {
                return Err(Error::Format(format!("exponent code {c} out of range")));
            }
            let maximal: Vec<usize> = (0..key.len()).filter(|&i| key[i] == max).collect();
            let mut key: Box<[u8]> = key.into();
            let ok = add_expanded(&mut p.terms, &mut key, &maximal, max, &coeff);
            debug_assert!(ok);
        }
        p.prune();
        Ok(p)
    }

    pub(crate) fn from_term_map(group: G, vars: Vec<String>, terms: Terms<BigInt>) -> Self {
        let mut p = ReducedPoly { group, vars, terms };
        p.prune();
        p
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn group(&self) -> G {
        self.group
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, codes: &[u8]) -> BigInt {
        self.terms.get(codes).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u8], &BigInt)> {
        self.terms.iter().map(|(k, c)| (&**k, c))
    }

    /// Terms in canonical order: exponent vectors in decreasing
    /// lexicographic order (variables in id order).
    pub fn sorted_terms(&self) -> Vec<(&[u8], &BigInt)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_unstable_by(|a, b| b.0.cmp(a.0));
        v
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group || self.vars != other.vars {
            return Err(Error::Format("polynomials over different variables or groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let ok = add_term(&mut out.terms, k, c);
            debug_assert!(ok);
        }
        out.prune();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out.prune();
        out
    }

    /// `[fg]` for normal forms `f`, `g`.
    pub fn mul(&self, other: &Self, limits: Limits) -> Result<Self> {
        self.check_compatible(other)?;
        let grp = self.group;
        let max = grp.maximal();
        let mut out = Self::zero(grp, self.vars.clone());
        let mut key: Box<[u8]> = Box::zeroed(self.vars.len());
        let mut maximal = Vec::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                maximal.clear();
                for i in 0..key.len() {
                    key[i] = grp.add(ka[i], kb[i]);
                    if key[i] == max {
                        maximal.push(i);
                    }
                }
                let ok = add_expanded(&mut out.terms, &mut key, &maximal, max, &(ca * cb));
                debug_assert!(ok);
            }
            out.check_size(limits)?;
        }
        out.prune();
        Ok(out)
    }

    fn check_size(&self, limits: Limits) -> Result<()> {
        if self.terms.len() > limits.terms {
            return Err(Error::bound("normal form", self.terms.len() as u128, limits.terms as u128));
        }
        Ok(())
    }
}

impl<G: Basis> ReducedPoly<G> {
    /// `{"p":3,"terms":[{"coeff":"3","exps":{"e1":1,"e2":1}}, ...]}`; the
    /// Klein form replaces `p` by `"group":"Z2xZ2"` and exponents by pairs.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        self.group.header(&mut obj);
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(k, c)| {
                let mut exps = Map::new();
                for (var, &code) in self.vars.iter().zip(k) {
                    if code != 0 {
                        exps.insert(var.clone(), self.group.code_json(code));
                    }
                }
                json!({"coeff": c.to_string(), "exps": exps})
            })
            .collect();
        obj.insert("terms".into(), Value::Array(terms));
        Value::Object(obj)
    }
}

impl<G: Basis> fmt::Display for ReducedPoly<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in terms.into_iter().enumerate() {
            let mut factors = Vec::new();
            for (var, &code) in self.vars.iter().zip(k) {
                self.group.push_factors(var, code, &mut factors);
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            match (n, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
