use super::field::{AffineField, ScalarField};
use super::legendre::legendre_gradient;
use super::measure::MeasureDescriptor;
use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{tensor_matrix, MetricDescriptor};

/// `(1/σ) Σᵢ ∂ᵢ(σXⁱ)` by second-order central differences; `probe` returns
/// `(σ(p), X(p))`.
fn weighted_divergence<P>(x: &[f64], cfg: &NumericsConfig, probe: P) -> Result<f64>
where
    P: Fn(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    let h = cfg.fd_step_at(x);
    let (sigma, _) = probe(x)?;
    let mut total = 0.0;
    for i in 0..x.len() {
        let e = linalg::unit(x.len(), i);
        let (sp, xp) = probe(&linalg::axpy(x, h, &e))?;
        let (sm, xm) = probe(&linalg::axpy(x, -h, &e))?;
        total += (sp * xp[i] - sm * xm[i]) / (2.0 * h);
    }
    let div = total / sigma;
    if div.is_finite() {
        Ok(div)
    } else {
        Err(GeomError::NonFiniteEvaluation { context: "divergence" })
    }
}

/// `div_{dμ} X = (1/σ) Σᵢ ∂ᵢ(σXⁱ)`
pub fn divergence<X>(mu: &MeasureDescriptor, field: X, x: &[f64], cfg: &NumericsConfig) -> Result<f64>
where
    X: Fn(&[f64]) -> Result<Vec<f64>>,
{
    weighted_divergence(x, cfg, |p| Ok((mu.density(p)?, field(p)?)))
}

/// `∇f(x) = 𝓛⁻¹(df(x))`
pub fn gradient_field(
    m: &MetricDescriptor,
    f: &dyn ScalarField,
    x: &[f64],
    cfg: &NumericsConfig,
    init: Option<&[f64]>,
) -> Result<Vec<f64>> {
    let df = f.differential(x, cfg)?;
    legendre_gradient(m, x, &df, cfg, init)
}

/// `Δ_{dμ} f = div_{dμ} ∇f`
pub fn laplacian_dmu(
    m: &MetricDescriptor,
    mu: &MeasureDescriptor,
    f: &dyn ScalarField,
    x: &[f64],
    cfg: &NumericsConfig,
) -> Result<f64> {
    if !mu.is_smooth() {
        return Err(GeomError::InvalidConfig(format!(
            "measure {} has no analytic density and cannot be differentiated",
            mu.label
        )));
    }
    let center = gradient_field(m, f, x, cfg, None)?;
    divergence(mu, |p| gradient_field(m, f, p, cfg, Some(&center)), x, cfg)
}

/// `Δf`: the Laplacian for the measure `√|det g(x, ∇f(x))| dx` of the
/// osculating metric.
pub fn laplacian_osculating(m: &MetricDescriptor, f: &dyn ScalarField, x: &[f64], cfg: &NumericsConfig) -> Result<f64> {
    let center = gradient_field(m, f, x, cfg, None)?;
    weighted_divergence(x, cfg, |p| {
        let grad = gradient_field(m, f, p, cfg, Some(&center))?;
        let det = tensor_matrix(m, p, &grad)?.determinant();
        Ok((det.abs().sqrt(), grad))
    })
}

/// The affine function `s(⟨w, x⟩ − ⟨w, x₀⟩)` with `s > 0` chosen so that
/// `F(x₀, ∇f) = 1` and `f(x₀) = 0`.
pub fn normalized_affine(
    m: &MetricDescriptor,
    covector: &[f64],
    x0: &[f64],
    cfg: &NumericsConfig,
) -> Result<AffineField> {
    let y = legendre_gradient(m, x0, covector, cfg, None)?;
    let s = 1.0 / m.checked_value(x0, &y, cfg)?;
    let w = linalg::scale(covector, s);
    let offset = linalg::dot(&w, x0);
    Ok(AffineField { covector: w, offset })
}
