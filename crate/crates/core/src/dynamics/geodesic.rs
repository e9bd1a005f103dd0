use super::spray::acceleration;
use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{MetricDescriptor, MetricKind};

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSample {
    pub t: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

/// A sampled geodesic `t ↦ (γ(t), γ̇(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicRecord {
    pub samples: Vec<GeodesicSample>,
    pub metric_kind: MetricKind,
    /// `⟨V(γ(0)), γ̇(0)⟩^F_{γ̇(0)}` when a wind field has been attached.
    pub c0: Option<f64>,
}

impl GeodesicRecord {
    pub fn start(&self) -> &GeodesicSample {
        &self.samples[0]
    }

    pub fn end(&self) -> &GeodesicSample {
        self.samples.last().expect("non-empty record")
    }

    /// `max |F(x(t), v(t)) / F(x(0), v(0)) − 1|`
    pub fn speed_drift(&self, m: &MetricDescriptor) -> f64 {
        let s0 = m.value(&self.start().x, &self.start().v);
        self.samples.iter().map(|s| (m.value(&s.x, &s.v) / s0 - 1.0).abs()).fold(0.0, |a: f64, b| {
            if b.is_nan() {
                f64::INFINITY
            } else {
                a.max(b)
            }
        })
    }

    /// Position and velocity at time `t` by cubic Hermite interpolation of
    /// both, using the velocity and the spray acceleration as derivatives.
    pub fn state_at(&self, m: &MetricDescriptor, t: f64, cfg: &NumericsConfig) -> Result<(Vec<f64>, Vec<f64>)> {
        let (t0, t1) = (self.start().t, self.end().t);
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        let slack = 1e-12 * (1.0 + hi.abs().max(lo.abs()));
        if t < lo - slack || t > hi + slack {
            return Err(GeomError::HypothesisViolation(format!("time {t} outside the sampled range [{lo}, {hi}]")));
        }
        if self.samples.len() == 1 {
            return Ok((self.start().x.clone(), self.start().v.clone()));
        }
        let forward = t1 >= t0;
        let k = self
            .samples
            .windows(2)
            .position(|w| if forward { t <= w[1].t } else { t >= w[1].t })
            .unwrap_or(self.samples.len() - 2);
        let (a, b) = (&self.samples[k], &self.samples[k + 1]);
        let h = b.t - a.t;
        let s = (t - a.t) / h;
        let acc_a = acceleration(m, &a.x, &a.v, cfg)?;
        let acc_b = acceleration(m, &b.x, &b.v, cfg)?;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s),
            s * (1.0 - s) * (1.0 - s),
            s * s * (3.0 - 2.0 * s),
            s * s * (s - 1.0),
        );
        let hermite = |p0: &[f64], d0: &[f64], p1: &[f64], d1: &[f64]| -> Vec<f64> {
            (0..p0.len()).map(|i| h00 * p0[i] + h10 * h * d0[i] + h01 * p1[i] + h11 * h * d1[i]).collect()
        };
        Ok((hermite(&a.x, &a.v, &b.x, &b.v), hermite(&a.v, &acc_a, &b.v, &acc_b)))
    }

    /// Rows `t, x₁…xₙ, v₁…vₙ, speed` for export.
    pub fn rows(&self, m: &MetricDescriptor) -> Vec<Vec<f64>> {
        self.samples
            .iter()
            .map(|s| {
                let mut row = Vec::with_capacity(2 * s.x.len() + 2);
                row.push(s.t);
                row.extend(&s.x);
                row.extend(&s.v);
                row.push(m.value(&s.x, &s.v));
                row
            })
            .collect()
    }

    pub fn header(n: usize) -> Vec<String> {
        let mut h = vec!["t".to_string()];
        h.extend((1..=n).map(|i| format!("x{i}")));
        h.extend((1..=n).map(|i| format!("v{i}")));
        h.push("speed".into());
        h
    }
}

/// Integrates `ẍ = −2G(x, ẋ)` on `[0, horizon]` (or `[horizon, 0]`) with the
/// classical fourth-order Runge-Kutta scheme and step `cfg.ode_step`, shrunk
/// so that the horizon is hit exactly.
pub fn integrate_geodesic(
    m: &MetricDescriptor,
    x0: &[f64],
    y0: &[f64],
    horizon: f64,
    cfg: &NumericsConfig,
) -> Result<GeodesicRecord> {
    if !horizon.is_finite() {
        return Err(GeomError::InvalidConfig(format!("horizon {horizon} must be finite")));
    }
    if m.require(x0, y0, cfg).is_err() {
        return Err(GeomError::DomainExit { time: 0.0 });
    }
    let steps = (horizon.abs() / cfg.ode_step).ceil().max(1.0) as usize;
    let h = horizon / steps as f64;
    let mut x = x0.to_vec();
    let mut v = y0.to_vec();
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(GeodesicSample { t: 0.0, x: x.clone(), v: v.clone() });
    let accel = |x: &[f64], v: &[f64], time: f64| -> Result<Vec<f64>> {
        acceleration(m, x, v, cfg).map_err(|e| match e {
            GeomError::DomainViolation { .. }
            | GeomError::DegenerateTensor { .. }
            | GeomError::NonFiniteEvaluation { .. } => GeomError::DomainExit { time },
            other => other,
        })
    };
    for k in 0..steps {
        let t = k as f64 * h;
        let k1x = v.clone();
        let k1v = accel(&x, &v, t)?;
        let x2 = linalg::axpy(&x, 0.5 * h, &k1x);
        let v2 = linalg::axpy(&v, 0.5 * h, &k1v);
        let k2v = accel(&x2, &v2, t + 0.5 * h)?;
        let x3 = linalg::axpy(&x, 0.5 * h, &v2);
        let v3 = linalg::axpy(&v, 0.5 * h, &k2v);
        let k3v = accel(&x3, &v3, t + 0.5 * h)?;
        let x4 = linalg::axpy(&x, h, &v3);
        let v4 = linalg::axpy(&v, h, &k3v);
        let k4v = accel(&x4, &v4, t + h)?;
        for i in 0..x.len() {
            x[i] += h / 6.0 * (k1x[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
            v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
        let t_next = if k + 1 == steps { horizon } else { (k + 1) as f64 * h };
        if m.require(&x, &v, cfg).is_err() {
            return Err(GeomError::DomainExit { time: t_next });
        }
        samples.push(GeodesicSample { t: t_next, x: x.clone(), v: v.clone() });
    }
    Ok(GeodesicRecord { samples, metric_kind: m.kind(), c0: None })
}
