//! Complex-valued adaptive filters: normalized complex LMS, its widely-linear
//! (augmented) form, complex kernel LMS variants with novelty-criterion
//! sparsification, and two neural baselines, plus a Monte-Carlo harness for
//! nonlinear channel equalization.

pub mod baselines;
pub mod channel;
pub mod error;
pub mod filter;
pub mod harness;
pub mod kernel_filter;
pub mod kernels;
pub mod linear;
pub mod rng;
pub mod types;

pub use error::{Error, Result};
pub use filter::AdaptiveFilter;
pub use num_complex::Complex64;
