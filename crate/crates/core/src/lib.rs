//! Contou-Carrère symbols of Laurent series over local artinian ℂ-algebras,
//! Chen iterated integrals of logarithmic forms, and numerical/exact
//! verification of the reciprocity laws on the Riemann sphere.

pub mod algebra;
pub mod chen;
pub mod error;
pub mod laurent;
pub mod parse;
pub mod ratfunc;
pub mod report;
pub mod scalar;
pub mod symbol;
pub mod verify;

pub use algebra::{AlgebraSpec, Elem, ExactElem, FloatElem, Signature};
pub use error::{Error, Result};
pub use laurent::{CanonicalFactorization, LaurentSeries};
pub use ratfunc::{rf_support, Divisor, Perturbation, RationalFunction, SpherePoint};
pub use scalar::{Backend, GaussRat, Scalar};
pub use symbol::{cc_symbol, cc_symbol_series, steinberg_value, tame_symbol, SymbolValue};
