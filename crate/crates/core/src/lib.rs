//! Exact tools for the Hessian families `E_{q,t}: y^2 = x^3 + q^2 x^2 + 3 q^3 x + 3 q^6 t`
//! and their Hessian curves `H_{q,t}`: Weierstrass invariants and minimal
//! models, Tate's algorithm, Hessian construction, classical modular
//! polynomials, and checkers for sufficient conditions for 3-Selmer
//! companionship and for non-isogeny.

pub mod companions;
pub mod curves;
pub mod exactmath;
pub mod hessian;
pub mod localred;
pub mod modpoly;
pub(crate) mod serde_util;

pub use curves::{CurveError, CurveInvariants, ModelMap, WeierstrassCurve};
pub use exactmath::{ExactInt, ExactRat, MathError, Prime};
pub use localred::{KodairaType, LocalData, ReductionKind};
