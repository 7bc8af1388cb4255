//! Exact arithmetic: Gaussian-rational scalars, sparse multivariate
//! polynomials over them, and simple radical extensions used by symbolic
//! witnesses.

mod poly;
mod radical;
mod ring;
mod scalar;

pub use poly::{Exponents, MultiPoly};
pub use radical::RadicalElem;
pub use ring::Ring;
pub use scalar::{ArithOp, QiScalar};
