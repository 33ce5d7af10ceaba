//! Exact coefficient arithmetic: rationals, polynomials in the deformation
//! symbols, and sparse polynomials in `x` or `p`.

pub mod multi_index;
pub mod poly;
pub mod rational;
pub mod theta;

pub use multi_index::MultiIndex;
pub use poly::{PPolynomial, PVars, Poly, VarFamily, XPolynomial, XVars};
pub use rational::Rational;
pub use theta::{MatrixRole, SymMonomial, SymbolTable, ThetaScalar};
