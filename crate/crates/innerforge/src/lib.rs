//! Constructive meromorphic inner functions with locally doubling phase
//! control, and the two pipelines they drive: zero-set certificates for
//! Toeplitz kernels with unimodular real-analytic symbols, and
//! Beurling-Malliavin admissible-majorant witnesses for model spaces.
//!
//! The central object is an inner function `J` built from a lattice via the
//! Krein shift formula
//! `(1+J)/(1-J) = exp( int (1/(t-z) - t/(1+t^2)) u(t) dt )` with
//! `u = 1_U - 1/2` on the union `U` of left half-gaps. The library exposes
//! `J`, its increasing argument, and `|J'|` through Clark-measure residue
//! products, together with weight regularity diagnostics, alpha-Beurling
//! densities, lattice regularization, and the certificate pipelines.
//!
//! See the `examples/` directory for one runnable example per capability and
//! the `innerforge` binary for the file-driven command-line interface.

// negated comparisons are NaN guards throughout the numeric code
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod conjugation;
pub mod inner;
pub mod lattice;
pub mod majorant;
pub mod toeplitz;
pub mod weights;

pub use conjugation::{
    GrowthClass, HalfIndicator, SampledFunction, TailMode, TailPolicy,
};
pub use inner::{BlaschkeInner, InnerJ};
pub use lattice::{Lattice, PhaseFunction, RegularizationResult};
pub use weights::{Family, Weight, Window};
