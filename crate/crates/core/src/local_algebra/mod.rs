//! Computations in free modules over the local ring of germs at the origin:
//! local monomial orders, Mora normal forms and standard bases, and the
//! dimension of local quotient modules.

mod module;
mod order;
mod standard_basis;

pub use module::ModuleElement;
pub use order::{LocalOrder, ModuleOrder};
pub use standard_basis::{
    normal_form, quotient_dimension, standard_basis, QuotientDim, StandardBasis, StandardMonomial,
};
