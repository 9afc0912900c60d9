//! Finite abelian groups used as arc labels.
//!
//! Elements are encoded as `u8` codes `0..order`. Code `0` is the identity
//! and the last code `order - 1` is the *maximal* label: `p - 1` in `Z_p`,
//! `(1,1)` in `Z_2 x Z_2`. The remaining codes index the basic monomials of
//! the corresponding quotient algebra.

use std::fmt::Debug;

use crate::error::{Error, Result};

pub trait Group: Copy + Debug + PartialEq + Eq + Send + Sync + 'static {
    fn order(&self) -> usize;
    fn add(&self, a: u8, b: u8) -> u8;
    fn neg(&self, a: u8) -> u8;

    fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    fn maximal(&self) -> u8 {
        (self.order() - 1) as u8
    }
}

/// The cyclic group `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cyclic {
    p: u8,
}

impl Cyclic {
    pub const MAX_MODULUS: u32 = 255;

    pub fn new(p: u32) -> Result<Self> {
        if (2..=Self::MAX_MODULUS).contains(&p) {
            Ok(Cyclic { p: p as u8 })
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p as u32
    }

    /// Residue of an arbitrary exponent.
    pub fn reduce(&self, k: u64) -> u8 {
        (k % self.p as u64) as u8
    }
}

impl Group for Cyclic {
    fn order(&self) -> usize {
        self.p as usize
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        (s % self.p as u16) as u8
    }

    fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
}

/// The Klein four-group `Z_2 x Z_2`, coded as `2a + b` so that code order is
/// the lexicographic order of pairs: `(0,1) = 1`, `(1,0) = 2`, `(1,1) = 3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Klein;

impl Klein {
    pub fn encode(pair: (u8, u8)) -> u8 {
        ((pair.0 & 1) << 1) | (pair.1 & 1)
    }

    pub fn decode(code: u8) -> (u8, u8) {
        ((code >> 1) & 1, code & 1)
    }
}

impl Group for Klein {
    fn order(&self) -> usize {
        4
    }

    fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    fn neg(&self, a: u8) -> u8 {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_arithmetic() {
        let z5 = Cyclic::new(5).unwrap();
        assert_eq!(z5.add(3, 4), 2);
        assert_eq!(z5.neg(2), 3);
        assert_eq!(z5.sub(1, 3), 3);
        assert_eq!(z5.maximal(), 4);
        assert_eq!(z5.reduce(13), 3);
        assert_eq!(Cyclic::new(1).unwrap_err(), Error::InvalidModulus(1));
        assert_eq!(Cyclic::new(256).unwrap_err(), Error::InvalidModulus(256));
        let big = Cyclic::new(255).unwrap();
        assert_eq!(big.add(254, 254), 253);
    }

    #[test]
    fn klein_arithmetic() {
        let k = Klein;
        assert_eq!(Klein::encode((1, 1)), k.maximal());
        assert_eq!(k.add(Klein::encode((0, 1)), Klein::encode((1, 0))), 3);
        for a in 0..4 {
            assert_eq!(k.add(a, k.neg(a)), 0);
            assert_eq!(Klein::encode(Klein::decode(a)), a);
        }
    }
}
