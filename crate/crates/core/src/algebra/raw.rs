//! Sparse integer polynomials with unbounded exponents.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPoly {
    vars: Vec<String>,
    terms: FxHashMap<Vec<u32>, BigInt>,
}

impl RawPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        RawPoly {
            vars,
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(vars: Vec<String>, c: impl Into<BigInt>) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(vec![0; n], c.into())]).expect("constant key")
    }

    /// The single variable `vars[i]`.
    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::from_terms(vars, [(e, BigInt::one())]).expect("variable key")
    }

    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::DomainMismatch {
                    expected: p.vars.len(),
                    got: e.len(),
                });
            }
            *p.terms.entry(e).or_default() += c;
        }
        p.prune();
        Ok(p)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
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

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Terms by decreasing lexicographic exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&[u32], &BigInt)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_unstable_by(|a, b| b.0.cmp(a.0));
        v
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::Format("polynomials over different variables".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            *out.terms.entry(e.clone()).or_default() += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out.prune();
        out
    }

    pub fn mul(&self, other: &Self, limits: Limits) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *out.terms.entry(e).or_default() += ca * cb;
            }
            if out.terms.len() > limits.terms {
                return Err(Error::bound("raw polynomial", out.terms.len() as u128, limits.terms as u128));
            }
        }
        out.prune();
        Ok(out)
    }
}

impl fmt::Display for RawPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let factors: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
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
