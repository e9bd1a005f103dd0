use super::flow::{alpha_c, FlowMap};
use super::geodesic::{integrate_geodesic, GeodesicRecord, GeodesicSample};
use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{tensor_matrix, MetricDescriptor, MetricKind};
use crate::navigation::NavigationDatum;
use crate::wind::VectorFieldSpec;

const DRIFT_LIMIT: f64 = 1e-4;

fn require_unit_speed(m: &MetricDescriptor, geo: &GeodesicRecord) -> Result<()> {
    let s0 = m.value(&geo.start().x, &geo.start().v);
    let drift = geo.speed_drift(m);
    if (s0 - 1.0).abs() > DRIFT_LIMIT || drift > DRIFT_LIMIT {
        return Err(GeomError::HypothesisViolation(format!(
            "curve is not a unit speed geodesic (initial speed {s0}, drift {drift:e})"
        )));
    }
    Ok(())
}

/// `⟨V(x), y⟩^F_y`
pub fn wind_inner(m: &MetricDescriptor, wind: &VectorFieldSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    let g = tensor_matrix(m, x, y)?;
    Ok(linalg::quad_form(&g, &wind.at(x), y))
}

/// Records `c₀ = ⟨V(γ(0)), γ̇(0)⟩^F_{γ̇(0)}` on the geodesic.
pub fn attach_wind(m: &MetricDescriptor, wind: &VectorFieldSpec, mut geo: GeodesicRecord) -> Result<GeodesicRecord> {
    geo.c0 = Some(wind_inner(m, wind, &geo.start().x, &geo.start().v)?);
    Ok(geo)
}

/// `max_t |⟨V(γ(t)), γ̇(t)⟩^F_{γ̇(t)} − (c₀ − 2ct)|` along a unit speed geodesic.
pub fn restriction_identity_residual(
    m: &MetricDescriptor,
    wind: &VectorFieldSpec,
    c: f64,
    geo: &GeodesicRecord,
) -> Result<f64> {
    require_unit_speed(m, geo)?;
    let c0 = wind_inner(m, wind, &geo.start().x, &geo.start().v)?;
    let mut worst: f64 = 0.0;
    for s in &geo.samples {
        let value = wind_inner(m, wind, &s.x, &s.v)?;
        worst = worst.max((value - (c0 - 2.0 * c * s.t)).abs());
    }
    Ok(worst)
}

fn dilation(d: &NavigationDatum) -> Result<f64> {
    d.dilation_c.ok_or_else(|| GeomError::HypothesisViolation("wind field has no known dilation".into()))
}

/// The base geodesic through the normalized initial data of `geo`, covering
/// parameters up to `span`; `geo` is reused when it already does.
fn covering_geodesic(
    d: &NavigationDatum,
    geo: &GeodesicRecord,
    span: f64,
    cfg: &NumericsConfig,
) -> Result<(GeodesicRecord, f64)> {
    let start = geo.start();
    let f = d.base.checked_value(&start.x, &start.v, cfg)?;
    if (f - 1.0).abs() > DRIFT_LIMIT || geo.speed_drift(&d.base) > DRIFT_LIMIT {
        return Err(GeomError::HypothesisViolation(format!("input geodesic is not unit speed (initial speed {f})")));
    }
    let y0 = linalg::scale(&start.v, 1.0 / f);
    let c0 = wind_inner(&d.base, &d.wind, &start.x, &y0)?;
    if !(c0 < -1.0) {
        return Err(GeomError::HypothesisViolation(format!("c0 = {c0} must be < -1")));
    }
    let end = geo.end().t;
    let covers = start.t == 0.0 && (if span >= 0.0 { end >= span } else { end <= span }) && f == 1.0;
    let base = if covers {
        geo.clone()
    } else {
        integrate_geodesic(&d.base, &start.x, &y0, if span == 0.0 { 0.0 } else { span }, cfg)?
    };
    Ok((base, c0))
}

fn base_state(
    d: &NavigationDatum,
    base: &GeodesicRecord,
    s: f64,
    cfg: &NumericsConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if s == 0.0 {
        return Ok((base.start().x.clone(), base.start().v.clone()));
    }
    base.state_at(&d.base, s, cfg)
}

/// `γ̃(t) = Ψ_t(γ(α_c(t)))` on `[0, horizon]` with velocity
/// `V(γ̃) + e^{2ct}(Ψ_t)_* γ̇(α_c(t))`.
pub fn navigated_geodesic(
    d: &NavigationDatum,
    geo: &GeodesicRecord,
    horizon: f64,
    cfg: &NumericsConfig,
) -> Result<GeodesicRecord> {
    let c = dilation(d)?;
    let (base, c0) = covering_geodesic(d, geo, alpha_c(c, horizon), cfg)?;
    let flow = FlowMap::new(d.wind.clone());
    let steps = (horizon.abs() / cfg.ode_step).ceil().max(1.0) as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = if k == steps { horizon } else { horizon * k as f64 / steps as f64 };
        let (x, v) = base_state(d, &base, alpha_c(c, t), cfg)?;
        let xt = flow.apply(t, &x)?;
        let pushed = flow.tangent(t, &x, &v)?;
        let vt = linalg::axpy(&d.wind.at(&xt), (2.0 * c * t).exp(), &pushed);
        samples.push(GeodesicSample { t, x: xt, v: vt });
    }
    Ok(GeodesicRecord { samples, metric_kind: MetricKind::LorentzCone, c0: Some(c0) })
}

/// Residual of the transported tensor relation
/// `⟨Ψ_*v₁, Ψ_*v₂⟩^F̃_{γ̃̇(t)} = e^{−2ct}/(c₀ + 1) ⟨v₁, v₂⟩^F_{γ̇(α_c(t))}`
/// together with the transported orthogonality `⟨Ψ_*vᵢ, γ̃̇(t)⟩^F̃ = 0`.
pub fn orthogonality_transport_residual(
    d: &NavigationDatum,
    geo: &GeodesicRecord,
    t: f64,
    v1: &[f64],
    v2: &[f64],
    cfg: &NumericsConfig,
) -> Result<f64> {
    let c = dilation(d)?;
    let s = alpha_c(c, t);
    let (base, c0) = covering_geodesic(d, geo, s, cfg)?;
    let (x, v) = base_state(d, &base, s, cfg)?;
    let g = tensor_matrix(&d.base, &x, &v)?;
    for u in [v1, v2] {
        let inner = linalg::quad_form(&g, u, &v);
        if inner.abs() > 1e-6 * (1.0 + linalg::norm(u)) {
            return Err(GeomError::HypothesisViolation(format!(
                "vector {u:?} is not orthogonal to the geodesic velocity (inner {inner:e})"
            )));
        }
    }
    let flow = FlowMap::new(d.wind.clone());
    let xt = flow.apply(t, &x)?;
    let vt = linalg::axpy(&d.wind.at(&xt), (2.0 * c * t).exp(), &flow.tangent(t, &x, &v)?);
    let induced = d.induced_metric(cfg);
    induced.require(&xt, &vt, cfg)?;
    let gt = tensor_matrix(&induced, &xt, &vt)?;
    let p1 = flow.tangent(t, &x, v1)?;
    let p2 = flow.tangent(t, &x, v2)?;
    let lhs = linalg::quad_form(&gt, &p1, &p2);
    let rhs = (-2.0 * c * t).exp() / (c0 + 1.0) * linalg::quad_form(&g, v1, v2);
    Ok((lhs - rhs).abs().max(linalg::quad_form(&gt, &p1, &vt).abs()).max(linalg::quad_form(&gt, &p2, &vt).abs()))
}
