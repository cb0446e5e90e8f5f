//! Operational calculus on causal functions.
//!
//! Every time-domain object handled here is either *causal* (identically zero
//! for `t < 0`, carrying the unit connect function at `t = 0` when it jumps
//! there) or a bilateral *d-function* (ordinarily differentiable everywhere).
//! The Laplace transform of either is computed as the transform of its causal
//! companion `u(t)·f(t)`, and inverse transforms are always causal.
//!
//! Module map:
//!
//! - [`polyalg`]: polynomials and rational functions in `s`, roots, partial fractions
//! - [`causalfn`]: causal functions, d-functions, the dud/iud theorems
//! - [`ltransform`]: forward/inverse transforms, shifting, convolution
//! - [`odesolver`]: evoked + spontaneous solution of linear constant-coefficient ODEs
//! - [`fractional`]: generalized (real-order) derivation and integration
//! - [`discrete`]: Fourier-series based discrete Fourier/Laplace transforms
//! - [`oracles`]: brute-force numerical checkers used by tests and reports
//! - [`text`]: compact expression parsers and the human-readable renderer

pub mod causalfn;
pub mod discrete;
mod error;
pub mod fractional;
pub mod ltransform;
pub mod odesolver;
pub mod oracles;
pub mod polyalg;
pub mod special;
pub mod text;

pub use error::{Error, Result};

pub use causalfn::{CausalFunction, CausalTerm, DFunction, DTerm, ImpulseTerm, SpecialKind, SpecialTerm, Trig};
pub use ltransform::{SpecialTransform, TransformExpr};
pub use num_complex::Complex64;
pub use polyalg::{Polynomial, RationalLT, RootSet};
