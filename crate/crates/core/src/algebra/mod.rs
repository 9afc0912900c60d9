//! Polynomial side: the flow polynomial, normal forms modulo the ideal whose
//! zeros are the nowhere-zero maps, and exact evaluation at roots of unity.

mod cyclotomic;
mod flow_poly;
mod raw;
mod reduced;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};
pub use flow_poly::{
    conformal_expansion, cyclotomic_eval, cyclotomic_eval_normal_form, flow_polynomial,
    flow_polynomial_normal_form, has_nz_flow_membership, is_in_ideal, normalize, reduce_power,
    surplus_eval,
};
pub(crate) use flow_poly::flow_normal_form_in;
pub use raw::RawPoly;
pub use reduced::{Basis, PairQuotientPoly, QuotientPoly, ReducedPoly};
