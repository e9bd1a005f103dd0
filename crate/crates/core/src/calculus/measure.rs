use crate::config::NumericsConfig;
use crate::dynamics::integrate_geodesic;
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{fundamental_tensor, MetricDescriptor, MetricKind, Model};

/// Volume of the Euclidean unit ball in ℝⁿ.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % b) as f64 * inv;
        i /= b;
        inv /= base as f64;
    }
    out
}

/// The `i`-th point of the Halton sequence in `[0, 1)ⁿ`.
pub fn halton(i: u64, n: usize) -> Vec<f64> {
    assert!(n <= PRIMES.len(), "halton sequence supports up to {} dimensions", PRIMES.len());
    PRIMES[..n].iter().map(|&p| radical_inverse(i, p)).collect()
}

/// Largest Euclidean radius of the indicatrix body `{F(x, ·) ≤ 1}`, probed
/// along the axes and a Halton set of directions.
fn body_radius(m: &MetricDescriptor, x: &[f64]) -> f64 {
    let n = m.dim();
    let mut r: f64 = 0.0;
    for i in 0..n {
        let e = linalg::unit(n, i);
        r = r.max(1.0 / m.value(x, &e)).max(1.0 / m.value(x, &linalg::scale(&e, -1.0)));
    }
    for k in 1..=256 * n as u64 {
        let u: Vec<f64> = halton(k, n).iter().map(|c| 2.0 * c - 1.0).collect();
        let len = linalg::norm(&u);
        if len > 1e-3 {
            r = r.max(len / m.value(x, &u));
        }
    }
    r
}

/// Busemann-Hausdorff density `σ(x) = Vol(B₁ⁿ) / Vol{y : F(x, y) ≤ 1}`, the
/// volume taken by low-discrepancy quadrature over a box around the body.
pub fn bh_density(m: &MetricDescriptor, x: &[f64], cfg: &NumericsConfig) -> Result<f64> {
    if m.kind() != MetricKind::FinslerPositiveDefinite {
        return Err(GeomError::KindViolation);
    }
    m.check_point(x, cfg)?;
    if matches!(m.model, Model::Euclidean) {
        return Ok(1.0);
    }
    let n = m.dim();
    let half = 1.1 * body_radius(m, x);
    if !half.is_finite() {
        return Err(GeomError::NonFiniteEvaluation { context: "indicatrix extent" });
    }
    let mut inside = 0usize;
    for k in 1..=cfg.quad_samples as u64 {
        let y: Vec<f64> = halton(k, n).iter().map(|c| half * (2.0 * c - 1.0)).collect();
        if m.value(x, &y) <= 1.0 {
            inside += 1;
        }
    }
    let volume = (2.0 * half).powi(n as i32) * inside as f64 / cfg.quad_samples as f64;
    Ok(unit_ball_volume(n) / volume)
}

#[derive(Debug, Clone)]
enum Density {
    Constant(f64),
    /// `scale · |x|^exponent`
    PowerLaw {
        scale: f64,
        exponent: f64,
    },
    /// Quadrature at every point; not smooth enough for finite differences.
    Sampled {
        metric: MetricDescriptor,
        cfg: NumericsConfig,
    },
}

/// A smooth measure `dμ = σ(x) dx¹⋯dxⁿ`.
#[derive(Debug, Clone)]
pub struct MeasureDescriptor {
    pub label: String,
    density: Density,
}

impl MeasureDescriptor {
    pub fn constant(sigma: f64) -> Self {
        Self { label: format!("constant({sigma})"), density: Density::Constant(sigma) }
    }

    pub fn lebesgue() -> Self {
        Self::constant(1.0)
    }

    /// `σ(x) = scale · |x|^exponent`
    pub fn power_law(scale: f64, exponent: f64) -> Self {
        Self { label: format!("power-law({scale}, {exponent})"), density: Density::PowerLaw { scale, exponent } }
    }

    /// The Busemann-Hausdorff measure of a Finsler metric. Minkowski metrics
    /// get a constant density and `|x|^k`-scaled Minkowski metrics the exact
    /// scaling `|x|^{kn}σ`; anything else falls back to pointwise quadrature.
    pub fn busemann_hausdorff(m: &MetricDescriptor, cfg: &NumericsConfig) -> Result<Self> {
        if m.kind() != MetricKind::FinslerPositiveDefinite {
            return Err(GeomError::KindViolation);
        }
        let label = format!("bh({})", m.name());
        let density = match &m.model {
            _ if m.is_minkowski() => Density::Constant(bh_density(m, &vec![0.0; m.dim()], cfg)?),
            Model::PowerScaled { base, exponent } if base.is_minkowski() => Density::PowerLaw {
                scale: bh_density(base, &vec![0.0; m.dim()], cfg)?,
                exponent: exponent * m.dim() as f64,
            },
            _ => Density::Sampled { metric: m.clone(), cfg: *cfg },
        };
        Ok(Self { label, density })
    }

    pub fn density(&self, x: &[f64]) -> Result<f64> {
        let sigma = match &self.density {
            Density::Constant(s) => *s,
            Density::PowerLaw { scale, exponent } => scale * linalg::norm(x).powf(*exponent),
            Density::Sampled { metric, cfg } => bh_density(metric, x, cfg)?,
        };
        if sigma.is_finite() && sigma > 0.0 {
            Ok(sigma)
        } else {
            Err(GeomError::NonFiniteEvaluation { context: "measure density" })
        }
    }

    /// True when the density is an analytic expression in `x`.
    pub fn is_smooth(&self) -> bool {
        !matches!(self.density, Density::Sampled { .. })
    }
}

/// `τ(x, y) = ln(√|det g(x, y)| / σ(x))`
pub fn distortion(
    m: &MetricDescriptor,
    mu: &MeasureDescriptor,
    x: &[f64],
    y: &[f64],
    cfg: &NumericsConfig,
) -> Result<f64> {
    let g = fundamental_tensor(m, x, y, cfg)?;
    Ok(0.5 * g.det().abs().ln() - mu.density(x)?.ln())
}

/// `S(x, y) = d/dt τ(γ(t), γ̇(t))` at `t = 0` along the geodesic with
/// `γ̇(0) = y`: symmetric differences over geodesic steps of `F`-length
/// `h` and `h/2`, `h = ode_step`, combined by Richardson extrapolation.
pub fn s_curvature(
    m: &MetricDescriptor,
    mu: &MeasureDescriptor,
    x: &[f64],
    y: &[f64],
    cfg: &NumericsConfig,
) -> Result<f64> {
    let speed = m.checked_value(x, y, cfg)?;
    let central = |h: f64| -> Result<f64> {
        let single = NumericsConfig { ode_step: h, ..*cfg };
        let fwd = integrate_geodesic(m, x, y, h, &single)?;
        let bwd = integrate_geodesic(m, x, y, -h, &single)?;
        let (p, q) = (fwd.end(), bwd.end());
        Ok((distortion(m, mu, &p.x, &p.v, cfg)? - distortion(m, mu, &q.x, &q.v, cfg)?) / (2.0 * h))
    };
    let h = cfg.ode_step / speed;
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
