use crate::calculus::{gradient_field, laplacian_dmu, laplacian_osculating, MeasureDescriptor, ScalarField};
use crate::config::NumericsConfig;
use crate::dynamics::alpha_c;
use crate::error::{GeomError, Result};
use crate::iso::context::{levelmap_determinant, CorrespondenceContext};
use crate::iso::levelset::{sample_level_set, LevelSetSample, SamplingRegion};
use crate::iso::report::{std_dev, VerificationReport};
use crate::linalg;
use crate::metric::MetricDescriptor;

pub const TRANSNORMAL_TOL: f64 = 1e-5;
pub const ISOPARAMETRIC_TOL: f64 = 1e-3;
pub const ZERO_LEVEL_TOL: f64 = 1e-8;

/// Which Laplacian an isoparametric check uses.
#[derive(Debug, Clone)]
pub enum LaplacianVariant {
    Dmu(MeasureDescriptor),
    Osculating,
}

impl LaplacianVariant {
    fn tag(&self) -> &'static str {
        match self {
            Self::Dmu(_) => "dmu",
            Self::Osculating => "osc",
        }
    }

    fn eval(&self, m: &MetricDescriptor, f: &dyn ScalarField, x: &[f64], cfg: &NumericsConfig) -> Result<f64> {
        match self {
            Self::Dmu(mu) => laplacian_dmu(m, mu, f, x, cfg),
            Self::Osculating => laplacian_osculating(m, f, x, cfg),
        }
    }
}

fn sample_levels(
    f: &dyn ScalarField,
    levels: &[f64],
    region: &SamplingRegion,
    count: usize,
    cfg: &NumericsConfig,
) -> Result<Vec<LevelSetSample>> {
    levels.iter().map(|&l| sample_level_set(f, l, region, count, cfg)).collect()
}

/// Per-level spread of `values(p)`, reported at the sample farthest from the level mean.
fn per_level_spread(
    identity: String,
    tolerance: f64,
    samples: &[LevelSetSample],
    mut value: impl FnMut(&[f64]) -> Result<f64>,
) -> Result<VerificationReport> {
    let mut rows = Vec::with_capacity(samples.len());
    let mut total = 0;
    for s in samples {
        let values = s.points.iter().map(|p| value(p)).collect::<Result<Vec<_>>>()?;
        let dev = std_dev(&values);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let worst = values
            .iter()
            .enumerate()
            .max_by(|a, b| (a.1 - mean).abs().total_cmp(&(b.1 - mean).abs()))
            .map(|(i, _)| s.points[i].clone())
            .unwrap_or_default();
        rows.push((worst, dev));
        total += s.points.len();
    }
    let mut report = VerificationReport::from_residuals(identity, tolerance, &rows);
    report.n_samples = total;
    Ok(report)
}

fn gradient_norm(m: &MetricDescriptor, f: &dyn ScalarField, p: &[f64], cfg: &NumericsConfig) -> Result<f64> {
    let grad = gradient_field(m, f, p, cfg, None)?;
    m.checked_value(p, &grad, cfg)
}

/// Per-level standard deviation of `F(x, ∇f(x))`; passes when every level
/// stays within 1e-5.
pub fn transnormal_residual(
    m: &MetricDescriptor,
    f: &dyn ScalarField,
    levels: &[f64],
    samples_per_level: usize,
    region: &SamplingRegion,
    cfg: &NumericsConfig,
) -> Result<VerificationReport> {
    let samples = sample_levels(f, levels, region, samples_per_level, cfg)?;
    per_level_spread("transnormal".into(), TRANSNORMAL_TOL, &samples, |p| gradient_norm(m, f, p, cfg))
}

/// Per-level standard deviation of the chosen Laplacian; passes within 1e-3.
/// Fails with `HypothesisViolation` when `f` is not transnormal.
pub fn isoparametric_residual(
    m: &MetricDescriptor,
    f: &dyn ScalarField,
    levels: &[f64],
    samples_per_level: usize,
    variant: &LaplacianVariant,
    region: &SamplingRegion,
    cfg: &NumericsConfig,
) -> Result<VerificationReport> {
    let samples = sample_levels(f, levels, region, samples_per_level, cfg)?;
    let transnormal =
        per_level_spread("transnormal".into(), TRANSNORMAL_TOL, &samples, |p| gradient_norm(m, f, p, cfg))?;
    if !transnormal.pass {
        return Err(GeomError::HypothesisViolation(format!(
            "{} is not transnormal: level deviation {:e}",
            f.label(),
            transnormal.max_residual
        )));
    }
    per_level_spread(format!("isoparametric-{}", variant.tag()), ISOPARAMETRIC_TOL, &samples, |p| {
        variant.eval(m, f, p, cfg)
    })
}

/// `det Ψ_* = 1 + ⟨∇f(x), V(x)⟩_{∇f}` at a point of the zero level; errors
/// unless it is negative.
pub fn psi_levelmap_jacobian_sign(ctx: &CorrespondenceContext, x: &[f64], cfg: &NumericsConfig) -> Result<f64> {
    let f0 = ctx.base_field.eval(x)?;
    if f0.abs() > ZERO_LEVEL_TOL {
        return Err(GeomError::InvalidConfig(format!("{x:?} is not on the zero level (f = {f0:e})")));
    }
    let det = levelmap_determinant(&ctx.datum.base, &ctx.datum.wind, ctx.base_field.as_ref(), x, cfg)?;
    if det < 0.0 {
        Ok(det)
    } else {
        Err(GeomError::HypothesisViolation(format!("level map is not orientation reversing at {x:?}: det = {det}")))
    }
}

/// Checks `x ∈ M_{α_c(t)}` and returns `f(x)`.
fn level_value(ctx: &CorrespondenceContext, x: &[f64], t: f64) -> Result<f64> {
    let s = ctx.base_field.eval(x)?;
    let target = alpha_c(ctx.c, t);
    if (s - target).abs() > 1e-8 * (1.0 + target.abs()) {
        return Err(GeomError::InvalidConfig(format!("{x:?} is on level {s}, not on alpha_c(t) = {target}")));
    }
    Ok(s)
}

/// `|∇̃f̃(Ψ_t x) − Ψ_*((2cf(x) + 1)∇f(x))|`, the left side from a Legendre
/// solve for `F̃` on the implicitly defined `f̃`.
pub fn verify_gradient_correspondence(
    ctx: &CorrespondenceContext,
    x: &[f64],
    t: f64,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let s = level_value(ctx, x, t)?;
    let x_tilde = ctx.flow.apply(t, x)?;
    let lhs = gradient_field(&ctx.tilde_metric(cfg), &ctx.corresponded_field(), &x_tilde, cfg, None)?;
    let grad = gradient_field(&ctx.datum.base, ctx.base_field.as_ref(), x, cfg, None)?;
    let pushed = ctx.flow.tangent(t, x, &linalg::scale(&grad, 2.0 * ctx.c * s + 1.0))?;
    let rhs = linalg::add(&pushed, &ctx.datum.wind_at(&x_tilde));
    Ok(linalg::dist(&lhs, &rhs))
}

/// `|Δ̃_{dμ} f̃(Ψ_t x) − [(2cf(x) + 1)Δ_{dμ} f(x) − 2cn]|` with `dμ` the
/// Busemann-Hausdorff measure of `F`.
pub fn verify_laplacian_relation_dmu(
    ctx: &CorrespondenceContext,
    x: &[f64],
    t: f64,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let s = level_value(ctx, x, t)?;
    let mu = ctx.measure(cfg)?;
    let x_tilde = ctx.flow.apply(t, x)?;
    let lhs = laplacian_dmu(&ctx.tilde_metric(cfg), &mu, &ctx.corresponded_field(), &x_tilde, cfg)?;
    let base = laplacian_dmu(&ctx.datum.base, &mu, ctx.base_field.as_ref(), x, cfg)?;
    let rhs = (2.0 * ctx.c * s + 1.0) * base - 2.0 * ctx.c * ctx.dim() as f64;
    Ok((lhs - rhs).abs())
}

/// `|Δ̃f̃(Ψ_t x) − [(2cf(x) + 1)Δf(x) − (n − 1)c]|` for the osculating Laplacians.
pub fn verify_laplacian_relation_osc(
    ctx: &CorrespondenceContext,
    x: &[f64],
    t: f64,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let s = level_value(ctx, x, t)?;
    let x_tilde = ctx.flow.apply(t, x)?;
    let lhs = laplacian_osculating(&ctx.tilde_metric(cfg), &ctx.corresponded_field(), &x_tilde, cfg)?;
    let base = laplacian_osculating(&ctx.datum.base, ctx.base_field.as_ref(), x, cfg)?;
    let rhs = (2.0 * ctx.c * s + 1.0) * base - (ctx.dim() as f64 - 1.0) * ctx.c;
    Ok((lhs - rhs).abs())
}

/// The composite check and its parts.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub summary: VerificationReport,
    pub parts: Vec<VerificationReport>,
    /// Errors of parts that could not be evaluated, as `(identity, message)`.
    pub errors: Vec<(String, String)>,
}

/// Checks that `f̃` is a normalized transnormal function for `F̃`, that it is
/// isoparametric for both Laplacians, and that `f̃⁻¹(0) = f⁻¹(0)`. Parts are
/// evaluated independently; a part that errors fails without stopping the
/// others. The summary residual is the largest part residual in units of
/// that part's tolerance.
pub fn verify_theorem(
    ctx: &CorrespondenceContext,
    levels: &[f64],
    samples: usize,
    cfg: &NumericsConfig,
) -> TheoremReport {
    let tilde = ctx.tilde_metric(cfg);
    let f_tilde = ctx.corresponded_field();
    let mut parts = Vec::new();
    let mut errors = Vec::new();
    let mut record = |identity: &str, tol: f64, result: Result<VerificationReport>| match result {
        Ok(r) => parts.push(r),
        Err(e) => {
            errors.push((identity.to_string(), e.to_string()));
            parts.push(VerificationReport::errored(identity, tol));
        }
    };

    let level_samples = sample_levels(&f_tilde, levels, &ctx.region, samples, cfg);
    match &level_samples {
        Ok(ls) => {
            let mut norms = Vec::new();
            let transnormal = per_level_spread("transnormal".into(), TRANSNORMAL_TOL, ls, |p| {
                let v = gradient_norm(&tilde, &f_tilde, p, cfg)?;
                norms.push((p.to_vec(), (v - 1.0).abs()));
                Ok(v)
            });
            let normalized = transnormal
                .as_ref()
                .map(|_| VerificationReport::from_residuals("normalization", TRANSNORMAL_TOL, &norms))
                .map_err(Clone::clone);
            record("transnormal", TRANSNORMAL_TOL, transnormal);
            record("normalization", TRANSNORMAL_TOL, normalized);
            let variants = ctx.measure(cfg).map(|mu| [LaplacianVariant::Dmu(mu), LaplacianVariant::Osculating]);
            match variants {
                Ok(vs) => {
                    for v in vs {
                        let id = format!("isoparametric-{}", v.tag());
                        let r =
                            per_level_spread(id.clone(), ISOPARAMETRIC_TOL, ls, |p| v.eval(&tilde, &f_tilde, p, cfg));
                        record(&id, ISOPARAMETRIC_TOL, r);
                    }
                }
                Err(e) => {
                    for id in ["isoparametric-dmu", "isoparametric-osc"] {
                        record(id, ISOPARAMETRIC_TOL, Err(e.clone()));
                    }
                }
            }
        }
        Err(e) => {
            for (id, tol) in [
                ("transnormal", TRANSNORMAL_TOL),
                ("normalization", TRANSNORMAL_TOL),
                ("isoparametric-dmu", ISOPARAMETRIC_TOL),
                ("isoparametric-osc", ISOPARAMETRIC_TOL),
            ] {
                record(id, tol, Err(e.clone()));
            }
        }
    }

    let zero = (|| {
        let mut rows = Vec::new();
        let base_zero = sample_level_set(ctx.base_field.as_ref(), 0.0, &ctx.region, samples, cfg)?;
        for p in base_zero.points {
            let v = f_tilde.eval(&p)?.abs();
            rows.push((p, v));
        }
        let tilde_zero = sample_level_set(&f_tilde, 0.0, &ctx.region, samples, cfg)?;
        for p in tilde_zero.points {
            let v = ctx.base_field.eval(&p)?.abs();
            rows.push((p, v));
        }
        Ok(VerificationReport::from_residuals("zero-level", ZERO_LEVEL_TOL, &rows))
    })();
    record("zero-level", ZERO_LEVEL_TOL, zero);

    let n_samples = parts.iter().map(|p| p.n_samples).sum();
    let scaled_max = parts.iter().map(|p| p.max_residual / p.tolerance).fold(0.0, |acc: f64, r| {
        if r.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(r)
        }
    });
    let scaled_mean = parts.iter().map(|p| p.mean_residual / p.tolerance).sum::<f64>() / parts.len() as f64;
    let summary = VerificationReport {
        identity: "theorem".into(),
        n_samples,
        max_residual: scaled_max,
        mean_residual: scaled_mean,
        tolerance: 1.0,
        pass: parts.iter().all(|p| p.pass),
        worst_sample: None,
    };
    TheoremReport { summary, parts, errors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{FnField, SphereField};
    use crate::navigation::NavigationDatum;
    use crate::zoo;
    use std::sync::Arc;

    #[test]
    fn euclidean_sphere_is_isoparametric() {
        let cfg = NumericsConfig::default();
        let m = zoo::euclidean(2);
        let f = SphereField::origin(2, 2.0);
        let region = SamplingRegion::ball(vec![2.0, 0.0], 0.4, 1);
        let t = transnormal_residual(&m, &f, &[-0.1, 0.0, 0.1], 10, &region, &cfg).unwrap();
        assert!(t.pass && t.max_residual < 1e-12, "{t:?}");
        let i = isoparametric_residual(
            &m,
            &f,
            &[-0.1, 0.1],
            10,
            &LaplacianVariant::Dmu(MeasureDescriptor::lebesgue()),
            &region,
            &cfg,
        )
        .unwrap();
        assert!(i.max_residual <= 1e-4, "{i:?}");
    }

    #[test]
    fn product_is_not_transnormal() {
        let cfg = NumericsConfig::default();
        let m = zoo::euclidean(2);
        let f = FnField::new(2, "x1*x2", |x| Ok(x[0] * x[1]));
        let region = SamplingRegion::ball(vec![1.0, 1.0], 0.5, 3);
        let t = transnormal_residual(&m, &f, &[1.0], 20, &region, &cfg).unwrap();
        assert!(!t.pass && t.max_residual > 1e-2);
        assert!(isoparametric_residual(&m, &f, &[1.0], 20, &LaplacianVariant::Osculating, &region, &cfg).is_err());
    }

    #[test]
    fn funk_sphere_spot_values() {
        let cfg = NumericsConfig::default();
        let ctx = CorrespondenceContext::with_defaults(
            NavigationDatum::funk(2),
            Arc::new(SphereField::origin(2, 2.0)),
            vec![2.0, 0.0],
            &cfg,
        )
        .unwrap();
        assert!((psi_levelmap_jacobian_sign(&ctx, &[2.0, 0.0], &cfg).unwrap() + 1.0).abs() < 1e-12);
        assert!(verify_gradient_correspondence(&ctx, &[2.0, 0.0], 0.0, &cfg).unwrap() < 1e-6);
        let x = [0.0, alpha_c(0.5, 0.3) + 2.0];
        assert!(verify_gradient_correspondence(&ctx, &x, 0.3, &cfg).unwrap() < 1e-5);
        assert!(verify_laplacian_relation_dmu(&ctx, &[2.0, 0.0], 0.0, &cfg).unwrap() < 1e-3);
        assert!(verify_laplacian_relation_osc(&ctx, &[2.0, 0.0], 0.0, &cfg).unwrap() < 1e-3);
        assert!(verify_laplacian_relation_dmu(&ctx, &[2.1, 0.0], 0.0, &cfg).is_err());
    }
}
