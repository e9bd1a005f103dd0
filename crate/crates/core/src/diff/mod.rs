//! Differentiation substrate: second-order dual numbers as the primary path,
//! central differences as an independent cross-check.

mod dual;
mod jet;

pub use dual::{dot, lift, Dual2, Scalar};
pub use jet::{concat, directional, grad_x, grad_x_central, gradient_central, jet2, jet2_central, Jet2};
