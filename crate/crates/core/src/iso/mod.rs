//! Transnormal and isoparametric checks and the level-set correspondence
//! `f ↦ f̃` under homothetic navigation.

mod checks;
mod context;
mod levelset;
mod report;

pub use checks::{
    isoparametric_residual, psi_levelmap_jacobian_sign, transnormal_residual, verify_gradient_correspondence,
    verify_laplacian_relation_dmu, verify_laplacian_relation_osc, verify_theorem, LaplacianVariant, TheoremReport,
};
pub use context::{
    correspond_value, levelmap_determinant, orient_field, CorrespondedField, CorrespondenceContext, NegatedField,
    DEFAULT_REGION_RADIUS, RADIAL_BAND, SCAN_CELLS, T_MAX,
};
pub use levelset::{project_to_level, sample_level_set, LevelSetSample, SamplingRegion};
pub use report::{std_dev, VerificationReport};
