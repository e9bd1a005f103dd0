//! Geodesic sprays, geodesics, homothetic flows and the geodesic
//! correspondence under homothetic navigation.

mod correspondence;
mod flow;
mod geodesic;
mod spray;

pub use correspondence::{
    attach_wind, navigated_geodesic, orthogonality_transport_residual, restriction_identity_residual, wind_inner,
};
pub use flow::{alpha_c, alpha_c_inv, fit_dilation, homothety_residual, tensor_homothety_residual, FlowMap};
pub use geodesic::{integrate_geodesic, GeodesicRecord, GeodesicSample};
pub use spray::{acceleration, spray_coeffs};
