//! Nowhere-zero flows on directed multigraphs through polynomial ideals.
//!
//! * [`graph`]: multigraphs with string ids, contraction, circuits, faces.
//! * [`flows`]: `Z_p` flows and dual flows, conformal counts, colorings.
//! * [`algebra`]: the flow polynomial, its normal form modulo the
//!   cyclotomic-type ideal, and evaluation at roots of unity.
//! * [`four_flow`]: the same story over `Z_2 x Z_2`.
//! * [`structure`]: chordal orientations and the planar duality checks.
//! * [`io`]: text and JSON formats.

pub mod algebra;
pub mod error;
pub mod flows;
pub mod four_flow;
pub mod graph;
pub mod group;
pub mod io;
pub mod structure;

pub use error::{Error, Result};

/// Caps on exhaustive work. Every enumerator checks its state count against
/// `states` before starting; polynomial products check their term count
/// against `terms`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub states: u64,
    pub terms: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        states: 1 << 20,
        terms: 1 << 23,
    };

    pub fn with_states(states: u64) -> Self {
        Limits {
            states,
            ..Self::DEFAULT
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}
