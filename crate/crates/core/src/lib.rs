//! Free relativistic spinning particle in flat spacetime.
//!
//! The crate evaluates four equivalent formulations of the motion of a free
//! spinning top and cross-checks them numerically: the third-order Mathisson
//! equation, its spin-vector form, the Euler–Poisson equation produced by an
//! explicit second-order Lagrangian, and an autoparallel second-order
//! connection that can be integrated as an ODE.
//!
//! ```
//! use mathisson_top::prelude::*;
//!
//! let g = Signature::LORENTZIAN;
//! let u = FourVector::new(1.0, 0.0, 0.0, 0.0);
//! let s = FourVector::new(0.0, 0.0, 0.0, 0.8);
//! assert_eq!(dot(&s, &u, &g), 0.0);
//! assert!((norm_abs(&s, &g) - 0.8).abs() < 1e-15);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod integrator;
pub mod minkowski;
pub mod output;
pub mod sampling;
pub mod symmetry;
pub mod variational;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/conventions.md")]
    pub struct Conventions;
    #[doc = include_str!("../../../book/src/formulations.md")]
    pub struct Formulations;
    #[doc = include_str!("../../../book/src/variational.md")]
    pub struct Variational;
    #[doc = include_str!("../../../book/src/integration.md")]
    pub struct Integration;
    #[doc = include_str!("../../../book/src/symmetry.md")]
    pub struct Symmetry;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::minkowski::{
        dot, hodge_quad, hodge_triple, norm_abs, spin_tensor_to_vector, spin_vector_to_tensor, wedge_norm_sq, CoVector,
        FourVector, LorentzMatrix, Signature, SkewTensor, SpinTensor,
    };
}
