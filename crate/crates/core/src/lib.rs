//! Exact partition functions of square ice (six-vertex) models.
//!
//! * [`cyclo`]: exact numbers in `Q(ω6)` and Laurent polynomials in a
//!   symbolic `a`.
//! * [`laurent`]: sparse multivariate Laurent polynomials over either.
//! * [`ice`]: ice graphs (domain-wall grid, half-turn quotients, local
//!   tangles), state enumeration and the ASM bijection.
//! * [`partition`]: vertex weights and the two summation engines.
//! * [`verifier`]: executable checks of the model identities.
//! * [`cli`]: the `square-ice` command-line front end.

pub mod cli;
pub mod cyclo;
pub mod error;
pub mod ice;
pub mod int;
pub mod laurent;
pub mod partition;
pub mod verifier;

pub use cyclo::{CoeffMode, CycNum, CycScalar, GenericCoeff};
pub use error::{Error, Result};
pub use laurent::{AnyPoly, Coefficient, EvalPoint, GenericPoly, LaurentPoly, Omega6Poly, VarId};
