use std::sync::Arc;

use crate::calculus::{gradient_field, MeasureDescriptor, ScalarField};
use crate::config::NumericsConfig;
use crate::dynamics::{alpha_c, alpha_c_inv, wind_inner, FlowMap};
use crate::error::{GeomError, Result};
use crate::iso::levelset::SamplingRegion;
use crate::linalg;
use crate::metric::{MetricDescriptor, Model};
use crate::navigation::NavigationDatum;
use crate::wind::VectorFieldSpec;
use crate::zoo;

/// Half-width of the bracket searched by [`CorrespondedField::eval`].
pub const T_MAX: f64 = 2.0;
/// Number of cells in the sign scan over `[-T_MAX, T_MAX]`.
pub const SCAN_CELLS: usize = 64;
/// Default radius of the verification ball around `x0`.
pub const DEFAULT_REGION_RADIUS: f64 = 0.4;
/// Radial band kept for the radial wind `V(x) = -x`.
pub const RADIAL_BAND: (f64, f64) = (1.2, 5.0);

/// `-f`
#[derive(Clone)]
pub struct NegatedField(pub Arc<dyn ScalarField>);

impl ScalarField for NegatedField {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        Ok(-self.0.eval(x)?)
    }

    fn differential(&self, x: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
        Ok(linalg::scale(&self.0.differential(x, cfg)?, -1.0))
    }

    fn label(&self) -> String {
        format!("-{}", self.0.label())
    }
}

/// `det Ψ_* = 1 + ⟨∇f(x), V(x)⟩_{∇f(x)}` for the level map at a point of
/// the zero level.
pub fn levelmap_determinant(
    base: &MetricDescriptor,
    wind: &VectorFieldSpec,
    f: &dyn ScalarField,
    x: &[f64],
    cfg: &NumericsConfig,
) -> Result<f64> {
    let grad = gradient_field(base, f, x, cfg, None)?;
    Ok(1.0 + wind_inner(base, wind, x, &grad)?)
}

/// Picks whichever of `f` and `-f` satisfies `⟨∇f, V⟩_{∇f} < -1` at `x0`.
pub fn orient_field(
    datum: &NavigationDatum,
    f: Arc<dyn ScalarField>,
    x0: &[f64],
    cfg: &NumericsConfig,
) -> Result<Arc<dyn ScalarField>> {
    let plus = levelmap_determinant(&datum.base, &datum.wind, f.as_ref(), x0, cfg)?;
    if plus < 0.0 {
        return Ok(f);
    }
    let minus: Arc<dyn ScalarField> = Arc::new(NegatedField(f));
    let det = levelmap_determinant(&datum.base, &datum.wind, minus.as_ref(), x0, cfg)?;
    if det < 0.0 {
        Ok(minus)
    } else {
        Err(GeomError::HypothesisViolation(format!("neither sign of {} has <grad f, V> < -1 at {x0:?}", minus.label())))
    }
}

/// The hypotheses of the level-set correspondence: a navigation datum with a
/// homothetic wind of dilation `c`, and a normalized function `f` with
/// `f(x0) = 0` and `⟨∇f, V⟩_{∇f} < -1` near `x0`.
#[derive(Clone)]
pub struct CorrespondenceContext {
    pub datum: NavigationDatum,
    pub base_field: Arc<dyn ScalarField>,
    pub flow: FlowMap,
    pub c: f64,
    pub x0: Vec<f64>,
    pub region: SamplingRegion,
}

impl std::fmt::Debug for CorrespondenceContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CorrespondenceContext")
            .field("datum", &self.datum)
            .field("base_field", &self.base_field.label())
            .field("c", &self.c)
            .field("x0", &self.x0)
            .field("region", &self.region)
            .finish()
    }
}

impl CorrespondenceContext {
    /// Checks the hypotheses at `x0` and at the `2n` axis points of the
    /// region boundary that lie in the region.
    pub fn new(
        datum: NavigationDatum,
        base_field: Arc<dyn ScalarField>,
        x0: Vec<f64>,
        radius: f64,
        seed: u64,
        cfg: &NumericsConfig,
    ) -> Result<Self> {
        let n = datum.dim();
        if base_field.dim() != n || x0.len() != n {
            return Err(GeomError::InvalidConfig("dimension mismatch between datum, field and x0".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::InvalidConfig(format!("region radius must be positive, got {radius}")));
        }
        let c = datum.dilation_c.ok_or_else(|| {
            GeomError::HypothesisViolation("wind has no known dilation; supply one explicitly".into())
        })?;
        let annulus = matches!(datum.wind, VectorFieldSpec::RadialNegative).then_some(RADIAL_BAND);
        let region = SamplingRegion { center: x0.clone(), radius, annulus, seed };
        if !region.contains(&x0) {
            return Err(GeomError::InvalidConfig(format!("x0 = {x0:?} lies outside the working band")));
        }

        let f0 = base_field.eval(&x0)?;
        if f0.abs() > 1e-7 {
            return Err(GeomError::HypothesisViolation(format!("f(x0) = {f0:e}, expected 0")));
        }
        let grad = gradient_field(&datum.base, base_field.as_ref(), &x0, cfg, None)?;
        let norm = datum.base.checked_value(&x0, &grad, cfg)?;
        if (norm - 1.0).abs() > 1e-7 {
            return Err(GeomError::HypothesisViolation(format!("F(grad f) = {norm} at x0, expected 1")));
        }

        let mut probes = vec![x0.clone()];
        for i in 0..n {
            for s in [-1.0, 1.0] {
                let p = linalg::axpy(&x0, s * radius, &linalg::unit(n, i));
                if region.contains(&p) {
                    probes.push(p);
                }
            }
        }
        for p in &probes {
            datum.regime(p).and_then(|r| match r {
                crate::navigation::WindRegime::Strong => Ok(()),
                crate::navigation::WindRegime::Weak => {
                    Err(GeomError::NavigationRegimeViolation { x: p.clone(), value: datum.wind_strength(p) })
                }
            })?;
            let det = levelmap_determinant(&datum.base, &datum.wind, base_field.as_ref(), p, cfg)?;
            if !(det < 0.0) {
                return Err(GeomError::HypothesisViolation(format!(
                    "1 + <grad f, V> = {det} at {p:?}; must be negative"
                )));
            }
        }

        let flow = FlowMap::new(datum.wind.clone()).with_dilation(c);
        Ok(Self { datum, base_field, flow, c, x0, region })
    }

    /// [`CorrespondenceContext::new`] with the default radius and seed 0.
    pub fn with_defaults(
        datum: NavigationDatum,
        base_field: Arc<dyn ScalarField>,
        x0: Vec<f64>,
        cfg: &NumericsConfig,
    ) -> Result<Self> {
        Self::new(datum, base_field, x0, DEFAULT_REGION_RADIUS, 0, cfg)
    }

    pub fn dim(&self) -> usize {
        self.datum.dim()
    }

    pub fn base_metric(&self) -> &MetricDescriptor {
        &self.datum.base
    }

    /// `F̃`: the closed-form Funk metric for the Euclidean radial datum and
    /// numerical inverse navigation otherwise.
    pub fn tilde_metric(&self, cfg: &NumericsConfig) -> MetricDescriptor {
        match (&self.datum.base.model, &self.datum.wind) {
            (Model::Euclidean, VectorFieldSpec::RadialNegative) => zoo::lorentz_funk(self.dim()),
            _ => self.datum.induced_metric(cfg),
        }
    }

    /// The Busemann-Hausdorff measure of `F`.
    pub fn measure(&self, cfg: &NumericsConfig) -> Result<MeasureDescriptor> {
        MeasureDescriptor::busemann_hausdorff(&self.datum.base, cfg)
    }

    /// `f̃`, defined implicitly by `f(Ψ_{-t} x̃) = α_c(t)`.
    pub fn corresponded_field(&self) -> CorrespondedField {
        CorrespondedField { field: self.base_field.clone(), flow: self.flow.clone(), c: self.c }
    }

    /// `Ψ(x) = Ψ_t(x)` with `α_c(t) = f(x)`.
    pub fn level_map(&self, x: &[f64]) -> Result<Vec<f64>> {
        let s = self.base_field.eval(x)?;
        let t = alpha_c_inv(self.c, s)
            .ok_or_else(|| GeomError::HypothesisViolation(format!("level {s} is outside the range of alpha_c")))?;
        self.flow.apply(t, x)
    }
}

/// `f̃(x̃) = t` where `f(Ψ_{-t} x̃) = α_c(t)`.
#[derive(Clone)]
pub struct CorrespondedField {
    field: Arc<dyn ScalarField>,
    flow: FlowMap,
    c: f64,
}

impl CorrespondedField {
    fn residual(&self, t: f64, x: &[f64]) -> Option<f64> {
        let p = self.flow.apply(-t, x).ok()?;
        let v = self.field.eval(&p).ok()? - alpha_c(self.c, t);
        v.is_finite().then_some(v)
    }

    /// `∂/∂t [f(Ψ_{-t} x̃) − α_c(t)] = df(p)(−V(p)) − e^{2ct}` with `p = Ψ_{-t} x̃`.
    fn residual_slope(&self, t: f64, p: &[f64], cfg: &NumericsConfig) -> Result<f64> {
        let df = self.field.differential(p, cfg)?;
        Ok(-linalg::dot(&df, &self.flow.generator.at(p)) - (2.0 * self.c * t).exp())
    }
}

impl ScalarField for CorrespondedField {
    fn dim(&self) -> usize {
        self.field.dim()
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        if self.field.eval(x)? == 0.0 {
            return Ok(0.0);
        }
        let h = 2.0 * T_MAX / SCAN_CELLS as f64;
        let grid: Vec<(f64, Option<f64>)> = (0..=SCAN_CELLS)
            .map(|k| {
                let t = -T_MAX + h * k as f64;
                (t, self.residual(t, x))
            })
            .collect();
        let mut brackets = Vec::new();
        for w in grid.windows(2) {
            if let ((a, Some(ga)), (b, Some(gb))) = (w[0], w[1]) {
                if ga == 0.0 {
                    brackets.push((a, a));
                } else if ga * gb < 0.0 {
                    brackets.push((a, b));
                }
            }
        }
        if let Some((t, Some(g))) = grid.last() {
            if *g == 0.0 {
                brackets.push((*t, *t));
            }
        }
        let (mut lo, mut hi) = match brackets.as_slice() {
            [] => return Err(GeomError::RootNotBracketed { lo: -T_MAX, hi: T_MAX }),
            [one] => *one,
            many => return Err(GeomError::MultipleRoots { lo: -T_MAX, hi: T_MAX, count: many.len() }),
        };
        if lo == hi {
            return Ok(lo);
        }
        let mut g_lo = self.residual(lo, x).expect("scanned");
        while hi - lo > 1e-9 {
            let mid = 0.5 * (lo + hi);
            let Some(g) = self.residual(mid, x) else { break };
            if g == 0.0 {
                return Ok(mid);
            }
            if (g < 0.0) == (g_lo < 0.0) {
                lo = mid;
                g_lo = g;
            } else {
                hi = mid;
            }
        }
        let cfg = NumericsConfig::default();
        let mut t = 0.5 * (lo + hi);
        for _ in 0..4 {
            let p = self.flow.apply(-t, x)?;
            let g = self.field.eval(&p)? - alpha_c(self.c, t);
            let slope = self.residual_slope(t, &p, &cfg)?;
            let next = t - g / slope;
            if !(next >= lo && next <= hi) {
                break;
            }
            t = next;
        }
        Ok(t)
    }

    /// Implicit differentiation: `df̃ = −df(p)·∂Ψ_{-t}/∂x̃ / G_t`.
    fn differential(&self, x: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
        let t = self.eval(x)?;
        let p = self.flow.apply(-t, x)?;
        let df = self.field.differential(&p, cfg)?;
        let jac = self.flow.jacobian(-t, x)?;
        let slope = self.residual_slope(t, &p, cfg)?;
        if !(slope.abs() > 1e-12) {
            return Err(GeomError::HypothesisViolation(format!("level equation is degenerate at {x:?}")));
        }
        let n = x.len();
        Ok((0..n).map(|j| -(0..n).map(|i| df[i] * jac[(i, j)]).sum::<f64>() / slope).collect())
    }

    fn label(&self) -> String {
        format!("corresponded({})", self.field.label())
    }
}

/// `f̃(x̃)`
pub fn correspond_value(ctx: &CorrespondenceContext, x_tilde: &[f64]) -> Result<f64> {
    ctx.corresponded_field().eval(x_tilde)
}
