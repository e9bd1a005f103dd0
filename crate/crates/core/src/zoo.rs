//! Concrete metrics used throughout the examples and checks.

use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::metric::{MetricDescriptor, MetricKind, Model};
use crate::navigation;
use crate::wind::VectorFieldSpec;

/// Radial working region `[inner, outer]` for metrics defined on `|x| > 1`.
pub const FUNK_REGION: (f64, f64) = (1.1, 10.0);

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(GeomError::InvalidConfig(format!("dimension must be >= 2, got {n}")));
    }
    Ok(())
}

fn check_wind(n: usize, wind: &VectorFieldSpec) -> Result<()> {
    if !wind.check_dim(n) {
        return Err(GeomError::InvalidConfig(format!("wind field does not match dimension {n}")));
    }
    Ok(())
}

/// `F(x, y) = |y|`
pub fn euclidean(n: usize) -> MetricDescriptor {
    assert!(n >= 2, "dimension must be >= 2");
    MetricDescriptor::new(n, Model::Euclidean)
}

/// `F(y) = (Σ yᵢ⁴)^{1/4}`
pub fn minkowski_quartic(n: usize) -> MetricDescriptor {
    assert!(n >= 2, "dimension must be >= 2");
    MetricDescriptor::new(n, Model::MinkowskiQuartic)
}

/// `F(x, y) = |x|^k F_base(x, y)` on `x ≠ 0`. For a Minkowski base the field
/// `V(x) = -x` is homothetic with dilation `(k + 1)/2`, and the S-curvature of
/// the Busemann-Hausdorff measure is generally nonzero.
pub fn power_scaled(base: MetricDescriptor, exponent: f64) -> Result<MetricDescriptor> {
    if base.kind() != MetricKind::FinslerPositiveDefinite {
        return Err(GeomError::KindViolation);
    }
    if !exponent.is_finite() {
        return Err(GeomError::InvalidConfig("exponent must be finite".into()));
    }
    Ok(MetricDescriptor::new(base.dim(), Model::PowerScaled { base: Box::new(base), exponent }))
}

/// Randers metric obtained by navigating the Euclidean metric with a weak wind.
pub fn randers_navigation(n: usize, wind: VectorFieldSpec) -> Result<MetricDescriptor> {
    check_dim(n)?;
    check_wind(n, &wind)?;
    Ok(MetricDescriptor::new(n, Model::Randers { wind }))
}

/// Lorentz Funk metric on `{|x| > 1}`.
pub fn lorentz_funk(n: usize) -> MetricDescriptor {
    assert!(n >= 2, "dimension must be >= 2");
    MetricDescriptor::new(n, Model::LorentzFunk)
}

/// Lorentz-Finsler metric induced by strong-wind navigation of `base` by
/// `wind`. Construction fails if `F(x, -V(x)) <= 1` at any of `probes`.
pub fn navigation_induced(
    base: MetricDescriptor,
    wind: VectorFieldSpec,
    probes: &[Vec<f64>],
    cfg: &NumericsConfig,
) -> Result<MetricDescriptor> {
    if base.kind() != MetricKind::FinslerPositiveDefinite {
        return Err(GeomError::KindViolation);
    }
    check_wind(base.dim(), &wind)?;
    for x in probes {
        if x.len() != base.dim() {
            return Err(GeomError::InvalidConfig("probe dimension mismatch".into()));
        }
        navigation::check_strong_wind(&base, &wind, x)?;
    }
    let n = base.dim();
    Ok(MetricDescriptor::new(n, Model::Navigation { base: Box::new(base), wind, solver: *cfg }))
}
