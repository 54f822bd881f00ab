//! Exact computations for functions on determinantal space curves.

// dense matrix code reads best with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod curve_model;
pub mod deform_solver;
pub mod elimination;
pub mod error;
pub mod genericity;
pub mod invariants;
pub mod linalg;
pub mod ll_map;
pub mod local_algebra;
pub mod modp;
pub mod poly;
pub mod upoly;

pub use error::{Error, Result};
pub use local_algebra::{
    normal_form, quotient_dimension, standard_basis, LocalOrder, ModuleElement, ModuleOrder,
    QuotientDim, StandardBasis, StandardMonomial,
};
pub use poly::{parse_polynomial, Polynomial, Rational, VarList};
pub use upoly::UPoly;
