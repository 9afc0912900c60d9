//! Exact arithmetic in `Z[z] / Φ_n(z)`, where `z` stands for a primitive
//! `n`-th root of unity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

/// Coefficients of `Φ_n`, lowest degree first, from
/// `z^n - 1 = prod over d | n of Φ_d(z)`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact quotient by a monic divisor.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division is exact");
    q
}

/// An element `sum c_k ρ^k` with `k < deg Φ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicInt {
    n: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    /// Reduces `sum buckets[k] ρ^k` (any length) modulo `Φ_n`.
    pub fn from_powers(n: u32, buckets: Vec<BigInt>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut c = buckets;
        for i in (deg..c.len()).rev() {
            let lead = std::mem::take(&mut c[i]);
            if lead.is_zero() {
                continue;
            }
            for (j, &f) in phi[..deg].iter().enumerate() {
                if f != 0 {
                    c[i - deg + j] -= &lead * f;
                }
            }
        }
        c.resize(deg, BigInt::zero());
        CyclotomicInt { n, coeffs: c }
    }

    pub fn from_integer(n: u32, v: impl Into<BigInt>) -> Self {
        Self::from_powers(n, vec![v.into()])
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as an ordinary integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*r"),
                _ => format!("{c}*r^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), [-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), [1, 1]);
        assert_eq!(cyclotomic_polynomial(3), [1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), [1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), [1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), [1, 0, -1, 0, 1]);
        // the first coefficient outside {-1, 0, 1}
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn power_sums_vanish() {
        for n in 2..20u32 {
            let all = CyclotomicInt::from_powers(n, vec![BigInt::from(1); n as usize]);
            assert!(all.is_zero(), "1 + r + ... + r^(n-1) = 0 for n = {n}");
            let mut b = vec![BigInt::zero(); n as usize + 1];
            b[n as usize] = BigInt::from(1);
            assert_eq!(CyclotomicInt::from_powers(n, b).to_integer(), Some(BigInt::from(1)));
        }
    }

    #[test]
    fn non_primitive_powers_are_not_one() {
        // r^2 for n = 4 is -1
        let mut b = vec![BigInt::zero(); 3];
        b[2] = BigInt::from(1);
        assert_eq!(CyclotomicInt::from_powers(4, b).to_integer(), Some(BigInt::from(-1)));
    }
}
