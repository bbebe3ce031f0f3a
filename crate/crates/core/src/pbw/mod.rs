//! Exact arithmetic in U(gl(3)): PBW normal forms, parameter polynomials and
//! truncated exponential and logarithm series.

mod elem;
mod monomial;
mod poly;

pub use elem::{straighten, tensor, tensor_12, tensor_21, Elem, UElem};
pub use monomial::{
    mul_generator, mul_monomials, straighten_by_rewriting, straighten_word, IntExpansion, PBWMonomial, SwapStrategy,
};
pub use poly::{PExp, ParamPoly};

/// Total-degree truncation used when none is requested.
pub const DEFAULT_DEGREE: u32 = 6;
