use nalgebra::{DMatrix, DVector};

use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{tensor_matrix, MetricDescriptor};
use crate::wind::VectorFieldSpec;

/// `α_c(t) = (e^{2ct} − 1)/(2c)`, with `α_0(t) = t`.
pub fn alpha_c(c: f64, t: f64) -> f64 {
    if c == 0.0 {
        t
    } else {
        (2.0 * c * t).exp_m1() / (2.0 * c)
    }
}

/// Inverse of [`alpha_c`]; `None` where `1 + 2cs ≤ 0`.
pub fn alpha_c_inv(c: f64, s: f64) -> Option<f64> {
    if c == 0.0 {
        return Some(s);
    }
    let arg = 2.0 * c * s;
    (arg > -1.0).then(|| arg.ln_1p() / (2.0 * c))
}

/// The one-parameter group `Ψ_t` generated by a wind field.
#[derive(Debug, Clone)]
pub struct FlowMap {
    pub generator: VectorFieldSpec,
    pub dilation_c: Option<f64>,
    /// Radial bounds `[inner, outer]` the flow must respect.
    pub region: Option<(f64, f64)>,
}

impl FlowMap {
    pub fn new(generator: VectorFieldSpec) -> Self {
        Self { generator, dilation_c: None, region: None }
    }

    pub fn with_dilation(mut self, c: f64) -> Self {
        self.dilation_c = Some(c);
        self
    }

    pub fn with_region(mut self, inner: f64, outer: f64) -> Self {
        self.region = Some((inner, outer));
        self
    }

    fn raw_apply(&self, t: f64, x: &[f64]) -> Option<Vec<f64>> {
        let out = match &self.generator {
            VectorFieldSpec::Constant { v } => linalg::axpy(x, t, v),
            VectorFieldSpec::RadialNegative => linalg::scale(x, (-t).exp()),
            VectorFieldSpec::Linear { .. } => {
                let e = self.linear_exp(t, x.len());
                linalg::mat_vec(&e, x)
            }
            VectorFieldSpec::Quadratic { coeff } => {
                let denom = 1.0 + coeff * t * x[0];
                if !(denom > 0.0) {
                    return None;
                }
                let mut out = x.to_vec();
                out[0] = x[0] / denom;
                out
            }
        };
        out.iter().all(|c| c.is_finite()).then_some(out)
    }

    fn linear_exp(&self, t: f64, n: usize) -> DMatrix<f64> {
        match &self.generator {
            VectorFieldSpec::Linear { matrix } => (DMatrix::from_fn(n, n, |i, j| matrix[i][j]) * t).exp(),
            _ => unreachable!(),
        }
    }

    fn inside(&self, x: &[f64]) -> bool {
        self.region.map_or(true, |(lo, hi)| {
            let r = linalg::norm(x);
            r >= lo && r <= hi
        })
    }

    /// `Ψ_t(x)`. Intermediate times are probed so that an excursion out of
    /// the region and back is still reported.
    pub fn apply(&self, t: f64, x: &[f64]) -> Result<Vec<f64>> {
        const PROBES: usize = 16;
        for k in 1..=PROBES {
            let s = t * k as f64 / PROBES as f64;
            match self.raw_apply(s, x) {
                Some(p) if self.inside(&p) => {}
                _ => return Err(GeomError::FlowEscape { time: s }),
            }
        }
        self.raw_apply(t, x).ok_or(GeomError::FlowEscape { time: t })
    }

    /// The Jacobian `∂Ψ_t/∂x` at `x`.
    pub fn jacobian(&self, t: f64, x: &[f64]) -> Result<DMatrix<f64>> {
        let n = x.len();
        Ok(match &self.generator {
            VectorFieldSpec::Constant { .. } => DMatrix::identity(n, n),
            VectorFieldSpec::RadialNegative => DMatrix::identity(n, n) * (-t).exp(),
            VectorFieldSpec::Linear { .. } => self.linear_exp(t, n),
            VectorFieldSpec::Quadratic { coeff } => {
                let denom = 1.0 + coeff * t * x[0];
                if !(denom > 0.0) {
                    return Err(GeomError::FlowEscape { time: t });
                }
                let mut j = DMatrix::identity(n, n);
                j[(0, 0)] = 1.0 / (denom * denom);
                j
            }
        })
    }

    /// `(Ψ_t)_* u` at `x`.
    pub fn tangent(&self, t: f64, x: &[f64], u: &[f64]) -> Result<Vec<f64>> {
        let j = self.jacobian(t, x)?;
        Ok((j * DVector::from_column_slice(u)).as_slice().to_vec())
    }
}

/// Relative residual of `F(Ψ_t x, (Ψ_t)_* y) = e^{−2ct} F(x, y)`.
pub fn homothety_residual(
    m: &MetricDescriptor,
    flow: &FlowMap,
    c: f64,
    x: &[f64],
    y: &[f64],
    t: f64,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let f = m.checked_value(x, y, cfg)?;
    let px = flow.apply(t, x)?;
    let py = flow.tangent(t, x, y)?;
    let fp = m.checked_value(&px, &py, cfg)?;
    let expected = (-2.0 * c * t).exp() * f;
    Ok((fp - expected).abs() / expected)
}

/// Residual of `⟨Ψ_*u, Ψ_*v⟩_{Ψ_*y} = e^{−4ct}⟨u, v⟩_y`.
#[allow(clippy::too_many_arguments)]
pub fn tensor_homothety_residual(
    m: &MetricDescriptor,
    flow: &FlowMap,
    c: f64,
    x: &[f64],
    y: &[f64],
    u: &[f64],
    v: &[f64],
    t: f64,
    cfg: &NumericsConfig,
) -> Result<f64> {
    m.require(x, y, cfg)?;
    let g = tensor_matrix(m, x, y)?;
    let px = flow.apply(t, x)?;
    let py = flow.tangent(t, x, y)?;
    m.require(&px, &py, cfg)?;
    let gp = tensor_matrix(m, &px, &py)?;
    let lhs = linalg::quad_form(&gp, &flow.tangent(t, x, u)?, &flow.tangent(t, x, v)?);
    let rhs = (-4.0 * c * t).exp() * linalg::quad_form(&g, u, v);
    Ok((lhs - rhs).abs())
}

/// Least-squares dilation from `ln F(Ψ_t x, Ψ_* y) − ln F(x, y) = −2ct` over
/// the given flags.
pub fn fit_dilation(
    m: &MetricDescriptor,
    flow: &FlowMap,
    flags: &[(Vec<f64>, Vec<f64>)],
    t: f64,
    cfg: &NumericsConfig,
) -> Result<f64> {
    if flags.is_empty() || t == 0.0 {
        return Err(GeomError::InvalidConfig("dilation fit needs flags and t ≠ 0".into()));
    }
    let mut sum = 0.0;
    for (x, y) in flags {
        let f = m.checked_value(x, y, cfg)?;
        let fp = m.checked_value(&flow.apply(t, x)?, &flow.tangent(t, x, y)?, cfg)?;
        sum += -(fp / f).ln() / (2.0 * t);
    }
    Ok(sum / flags.len() as f64)
}
