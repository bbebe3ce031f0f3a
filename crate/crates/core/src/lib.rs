//! Exact computer algebra for the elementary parabolic twist of `U(sl(3))`.
//!
//! The building blocks are generic over a [`Scalar`]; the aliases below fix
//! the scalar to arbitrary-precision rationals, which is what every
//! verification routine uses.

pub mod error;
pub mod expr;
pub mod hopf;
pub mod liealg;
pub mod pbw;
pub mod repmat;
pub mod scalar;
mod sparse;
pub mod twists;

pub use error::{AlgebraError, ParseError};
pub use scalar::Scalar;

pub type Q = num_rational::BigRational;
pub type LieElem = liealg::LieElem<Q>;
pub type WedgeElem = liealg::WedgeElem<Q>;
pub type ParamPoly = pbw::ParamPoly<Q>;
pub type UElem = pbw::UElem<Q>;
pub type TensorElem2 = pbw::Elem<Q, 2>;
pub type TensorElem3 = pbw::Elem<Q, 3>;
