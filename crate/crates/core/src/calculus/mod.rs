//! Gradients, measures, S-curvature and Laplacians.

mod field;
mod laplacian;
mod legendre;
mod measure;

pub use field::{
    AffineField, FnField, FunkHyperplaneLevel, FunkSphereLevel, HalfSquareField, NormSphereField, ProductField,
    ScalarField, SphereField,
};
pub use laplacian::{divergence, gradient_field, laplacian_dmu, laplacian_osculating, normalized_affine};
pub use legendre::{legendre_gradient, legendre_solve_from, lorentz_seeds};
pub use measure::{bh_density, distortion, halton, s_curvature, unit_ball_volume, MeasureDescriptor};
