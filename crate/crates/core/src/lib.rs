//! Third-order scale-independent WENO-Z reconstruction and the
//! finite-difference solvers used to exercise it.
//!
//! * [`kernels`]: undivided differences and smoothness indicators.
//! * [`weights`]: nonlinear weights for the JS/Z/F3/NP3/NN3/PZ3/ZM/ES family.
//! * [`reconstruction`]: interface values for both wind directions.
//! * [`advect1d`]: scalar advection and convergence studies.
//! * [`euler1d`], [`euler2d`]: Steger–Warming split, characteristic-wise
//!   Euler solvers with TVD-RK3.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod advect1d;
pub mod error;
pub mod euler1d;
pub mod euler2d;
pub mod kernels;
pub mod reconstruction;
pub mod timestep;
pub mod weights;

pub use error::{Result, WenoError};
pub use kernels::{BetaPair, Difference, EsVariant, StencilWindow, TauKind};
pub use reconstruction::{reconstruct_minus, reconstruct_plus, InterfaceValue};
pub use weights::{Beta1Extension, SchemeId, SchemeParams, SchemeSpec, WeightSet};
