//! Zermelo navigation: the map `y ↦ y + F(x, y)V(x)`, its inverse, the
//! admissible cone of the induced metric and the tensor relations between
//! `F` and `F̃`.

use crate::config::NumericsConfig;
use crate::diff::{directional, lift, Dual2};
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{tensor_matrix, MetricDescriptor, MetricKind, Model};
use crate::wind::VectorFieldSpec;
use crate::zoo;

/// A navigation datum `(F, V)` with the dilation of `V` when it is homothetic.
#[derive(Debug, Clone)]
pub struct NavigationDatum {
    pub base: MetricDescriptor,
    pub wind: VectorFieldSpec,
    pub dilation_c: Option<f64>,
}

/// Which branch of navigation applies at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindRegime {
    /// `F(x, -V(x)) < 1`: the induced metric is Finsler.
    Weak,
    /// `F(x, -V(x)) > 1`: the induced metric is Lorentz-Finsler.
    Strong,
}

impl NavigationDatum {
    /// Builds a datum, filling in the dilation for the homothetic pairs the
    /// crate knows in closed form.
    pub fn new(base: MetricDescriptor, wind: VectorFieldSpec) -> Result<Self> {
        if base.kind() != MetricKind::FinslerPositiveDefinite {
            return Err(GeomError::KindViolation);
        }
        if !wind.check_dim(base.dim()) {
            return Err(GeomError::InvalidConfig(format!("wind field does not match dimension {}", base.dim())));
        }
        let dilation_c = known_dilation(&base, &wind);
        Ok(Self { base, wind, dilation_c })
    }

    pub fn with_dilation(mut self, c: f64) -> Self {
        self.dilation_c = Some(c);
        self
    }

    /// Euclidean metric with `V(x) = -x`, which induces the Lorentz Funk metric.
    pub fn funk(n: usize) -> Self {
        Self::new(zoo::euclidean(n), VectorFieldSpec::RadialNegative).expect("valid datum")
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn wind_at(&self, x: &[f64]) -> Vec<f64> {
        self.wind.at(x)
    }

    /// `F(x, -V(x))`
    pub fn wind_strength(&self, x: &[f64]) -> f64 {
        self.base.value(x, &linalg::scale(&self.wind.at(x), -1.0))
    }

    pub fn regime(&self, x: &[f64]) -> Result<WindRegime> {
        let s = self.wind_strength(x);
        if s > 1.0 {
            Ok(WindRegime::Strong)
        } else if s < 1.0 {
            Ok(WindRegime::Weak)
        } else {
            Err(GeomError::NavigationRegimeViolation { x: x.to_vec(), value: s })
        }
    }

    /// The strong-wind metric `F̃`, evaluated by numerical inverse navigation.
    pub fn induced_metric(&self, cfg: &NumericsConfig) -> MetricDescriptor {
        MetricDescriptor::new(
            self.dim(),
            Model::Navigation { base: Box::new(self.base.clone()), wind: self.wind.clone(), solver: *cfg },
        )
    }

    /// The metric `F̃` in the regime that holds at `x`. Weak wind is available
    /// for a Euclidean base only, through the Randers closed form.
    pub fn induced_metric_at(&self, x: &[f64], cfg: &NumericsConfig) -> Result<MetricDescriptor> {
        match self.regime(x)? {
            WindRegime::Strong => Ok(self.induced_metric(cfg)),
            WindRegime::Weak => match self.base.model {
                Model::Euclidean => zoo::randers_navigation(self.dim(), self.wind.clone()),
                _ => Err(GeomError::InvalidConfig(
                    "weak-wind induced metric is only available over a Euclidean base".into(),
                )),
            },
        }
    }
}

fn known_dilation(base: &MetricDescriptor, wind: &VectorFieldSpec) -> Option<f64> {
    match (&base.model, wind) {
        (Model::Euclidean | Model::MinkowskiQuartic, VectorFieldSpec::RadialNegative) => Some(0.5),
        (Model::Euclidean | Model::MinkowskiQuartic, VectorFieldSpec::Constant { .. }) => Some(0.0),
        (Model::PowerScaled { base, exponent }, VectorFieldSpec::RadialNegative) if base.is_minkowski() => {
            Some(0.5 * (exponent + 1.0))
        }
        _ => None,
    }
}

/// Errors unless `F(x, -V(x)) > 1`.
pub fn check_strong_wind(base: &MetricDescriptor, wind: &VectorFieldSpec, x: &[f64]) -> Result<()> {
    let value = base.value(x, &linalg::scale(&wind.at(x), -1.0));
    if value > 1.0 {
        Ok(())
    } else {
        Err(GeomError::NavigationRegimeViolation { x: x.to_vec(), value })
    }
}

/// Solution `t = F̃(x, ỹ)` of `t = ψ(t) = F(x, ỹ - tW)` and the slope `ψ'(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NavigationRoot {
    pub t: f64,
    pub slope: f64,
}

fn psi(base: &MetricDescriptor, xd: &[Dual2], x: &[f64], y: &[f64], w: &[f64], t: f64) -> Result<(f64, f64)> {
    let _ = x;
    let arg = linalg::axpy(y, -t, w);
    let minus_w = linalg::scale(w, -1.0);
    directional(|z: &[Dual2]| base.eval(xd, z), &arg, &minus_w)
}

fn newton_root(
    base: &MetricDescriptor,
    x: &[f64],
    y: &[f64],
    w: &[f64],
    start: f64,
    strong: bool,
    cfg: &NumericsConfig,
) -> Result<NavigationRoot> {
    let xd: Vec<Dual2> = lift(x);
    let cone = || GeomError::ConeViolation { x: x.to_vec(), y: y.to_vec() };
    let mut t = start;
    let mut residual = f64::INFINITY;
    for _ in 0..cfg.newton_max_iter {
        let (p, dp) = psi(base, &xd, x, y, w, t).map_err(|_| cone())?;
        let h = p - t;
        let dh = dp - 1.0;
        residual = h.abs();
        if residual <= cfg.newton_tol * t.abs().max(1.0) {
            if t > 0.0 && (!strong || dh > 0.0) {
                return Ok(NavigationRoot { t, slope: dp });
            }
            return Err(cone());
        }
        // from the right of the larger root the iterates decrease monotonically
        if strong && !(dh > 0.0) {
            return Err(cone());
        }
        if !strong && !(dh < 0.0) {
            return Err(cone());
        }
        let next = t - h / dh;
        if !next.is_finite() || next <= 0.0 {
            return Err(cone());
        }
        t = next;
    }
    Err(GeomError::NewtonDivergence { iterations: cfg.newton_max_iter, residual })
}

/// Strong-wind root. `ψ` is convex and `h(t) = ψ(t) - t` is positive for
/// `t > F(-ỹ)/(F(-W) - 1)`, so Newton started there converges from the right
/// to the larger root, the one on which `h' > 0`. Absence of such a root means
/// `ỹ` is outside the admissible cone.
pub fn lorentz_root(
    base: &MetricDescriptor,
    x: &[f64],
    y: &[f64],
    w: &[f64],
    cfg: &NumericsConfig,
) -> Result<NavigationRoot> {
    let strength = base.value(x, &linalg::scale(w, -1.0));
    if !(strength > 1.0) {
        return Err(GeomError::NavigationRegimeViolation { x: x.to_vec(), value: strength });
    }
    if linalg::norm(y) == 0.0 || y.iter().any(|c| !c.is_finite()) {
        return Err(GeomError::ConeViolation { x: x.to_vec(), y: y.to_vec() });
    }
    let bound = base.value(x, &linalg::scale(y, -1.0)) / (strength - 1.0);
    newton_root(base, x, y, w, bound * (1.0 + 1e-3), true, cfg)
}

/// Weak-wind root: `h` is convex and decreasing with `h(0) > 0`, so Newton
/// from `t = 0` increases monotonically to the unique root.
fn weak_root(base: &MetricDescriptor, x: &[f64], y: &[f64], w: &[f64], cfg: &NumericsConfig) -> Result<NavigationRoot> {
    if linalg::norm(y) == 0.0 {
        return Err(GeomError::ConeViolation { x: x.to_vec(), y: y.to_vec() });
    }
    // h(0) = F(y) > 0 and h'(0) < 0; one explicit step avoids t = 0
    let xd: Vec<Dual2> = lift(x);
    let (p0, dp0) = psi(base, &xd, x, y, w, 0.0)?;
    newton_root(base, x, y, w, p0 / (1.0 - dp0), false, cfg)
}

/// Strict cone membership `ỹ ∈ 𝒜ₓ` for strong wind.
pub fn in_cone(base: &MetricDescriptor, wind: &VectorFieldSpec, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> bool {
    let w = wind.at(x);
    if matches!(base.model, Model::Euclidean) {
        return euclidean_cone(&w, y);
    }
    lorentz_root(base, x, y, &w, cfg).is_ok()
}

/// `|ỹ - tW| < t` for some `t > 0` with `|W| > 1`: the quadratic
/// `(|W|² - 1)t² - 2⟨ỹ,W⟩t + |ỹ|²` must have two positive roots.
fn euclidean_cone(w: &[f64], y: &[f64]) -> bool {
    let a = linalg::dot(w, w) - 1.0;
    let yw = linalg::dot(y, w);
    a > 0.0 && yw > 0.0 && yw * yw - a * linalg::dot(y, y) > 0.0
}

/// `⟨y, V(x)⟩^F_y`
pub fn pre_cone_inner(d: &NavigationDatum, x: &[f64], y: &[f64]) -> Result<f64> {
    let g = tensor_matrix(&d.base, x, y)?;
    Ok(linalg::quad_form(&g, y, &d.wind.at(x)))
}

/// `ỹ = y + F(x, y)V(x)`. Under strong wind `y` must satisfy
/// `⟨y, V⟩^F_y < -F(x, y)`.
pub fn forward_map(d: &NavigationDatum, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
    let f = d.base.checked_value(x, y, cfg)?;
    let w = d.wind.at(x);
    if d.regime(x)? == WindRegime::Strong {
        let inner = pre_cone_inner(d, x, y)?;
        if !(inner < -f) {
            return Err(GeomError::PreConeViolation { inner, bound: -f });
        }
    }
    Ok(linalg::axpy(y, f, &w))
}

/// Inverse of [`forward_map`] through the scalar fixed point
/// `t = F(x, ỹ - tV(x))`, returning `y = ỹ - tV(x)`.
pub fn inverse_map(d: &NavigationDatum, x: &[f64], y_tilde: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
    d.base.check_point(x, cfg)?;
    let w = d.wind.at(x);
    let root = match d.regime(x)? {
        WindRegime::Strong => {
            if !cone_membership(d, x, y_tilde, cfg) {
                return Err(GeomError::ConeViolation { x: x.to_vec(), y: y_tilde.to_vec() });
            }
            lorentz_root(&d.base, x, y_tilde, &w, cfg)?
        }
        WindRegime::Weak => weak_root(&d.base, x, y_tilde, &w, cfg)?,
    };
    Ok(linalg::axpy(y_tilde, -root.t, &w))
}

/// Membership of `ỹ` in the admissible cone at `x`, shrunk by the boundary
/// margin: `ỹ` and each `ỹ ± margin·|ỹ|·eᵢ` must be strictly inside.
pub fn cone_membership(d: &NavigationDatum, x: &[f64], y_tilde: &[f64], cfg: &NumericsConfig) -> bool {
    if d.base.check_point(x, cfg).is_err() || y_tilde.len() != d.dim() {
        return false;
    }
    let Ok(regime) = d.regime(x) else { return false };
    if linalg::norm(y_tilde) == 0.0 || y_tilde.iter().any(|c| !c.is_finite()) {
        return false;
    }
    if regime == WindRegime::Weak {
        return true;
    }
    let strict = |y: &[f64]| in_cone(&d.base, &d.wind, x, y, cfg);
    let h = cfg.cone_margin * linalg::norm(y_tilde);
    strict(y_tilde)
        && (0..d.dim()).all(|i| {
            let e = linalg::unit(d.dim(), i);
            strict(&linalg::axpy(y_tilde, h, &e)) && strict(&linalg::axpy(y_tilde, -h, &e))
        })
}

/// Projects `u` onto the tangent space of the indicatrix at `y`, the
/// `⟨·, y⟩^F_y`-orthogonal complement of `y`.
pub fn indicatrix_tangent(base: &MetricDescriptor, x: &[f64], y: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    let g = tensor_matrix(base, x, y)?;
    let s = linalg::quad_form(&g, u, y) / linalg::quad_form(&g, y, y);
    Ok(linalg::axpy(u, -s, y))
}

/// Largest violation of the two tensor relations
/// `⟨u,v⟩^F̃_ỹ = ⟨u,v⟩^F_y / (1 + ⟨y,V⟩^F_y)` and
/// `⟨u,v⟩^F_y = ⟨u,v⟩^F̃_ỹ / (1 - ⟨ỹ,V⟩^F̃_ỹ)`
/// over the given pairs after projecting them to the indicatrix tangent
/// space. `y` is rescaled to `F(x, y) = 1` first.
pub fn tensor_relation_residual_pairs(
    d: &NavigationDatum,
    x: &[f64],
    y: &[f64],
    pairs: &[(Vec<f64>, Vec<f64>)],
    cfg: &NumericsConfig,
) -> Result<f64> {
    let f = d.base.checked_value(x, y, cfg)?;
    let y = linalg::scale(y, 1.0 / f);
    let yt = forward_map(d, x, &y, cfg)?;
    let induced = d.induced_metric_at(x, cfg)?;
    induced.require(x, &yt, cfg)?;
    let g = tensor_matrix(&d.base, x, &y)?;
    let gt = tensor_matrix(&induced, x, &yt)?;
    let w = d.wind.at(x);
    let forward_factor = 1.0 + linalg::quad_form(&g, &y, &w);
    let backward_factor = 1.0 - linalg::quad_form(&gt, &yt, &w);
    let mut worst: f64 = 0.0;
    for (u, v) in pairs {
        let u = indicatrix_tangent(&d.base, x, &y, u)?;
        let v = indicatrix_tangent(&d.base, x, &y, v)?;
        let base_uv = linalg::quad_form(&g, &u, &v);
        let induced_uv = linalg::quad_form(&gt, &u, &v);
        worst = worst
            .max((induced_uv - base_uv / forward_factor).abs())
            .max((base_uv - induced_uv / backward_factor).abs());
    }
    if !worst.is_finite() {
        return Err(GeomError::NonFiniteEvaluation { context: "tensor relation" });
    }
    Ok(worst)
}

/// [`tensor_relation_residual_pairs`] over all pairs and pairwise sums of the
/// coordinate axes.
pub fn tensor_relation_residual(d: &NavigationDatum, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<f64> {
    let n = d.dim();
    let mut dirs: Vec<Vec<f64>> = (0..n).map(|i| linalg::unit(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            dirs.push(linalg::add(&dirs[i], &dirs[j]));
        }
    }
    let mut pairs = Vec::new();
    for (i, u) in dirs.iter().enumerate() {
        for v in &dirs[i..] {
            pairs.push((u.clone(), v.clone()));
        }
    }
    tensor_relation_residual_pairs(d, x, y, &pairs, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    #[test]
    fn forward_funk_example() {
        let d = NavigationDatum::funk(2);
        let yt = forward_map(&d, &[2.0, 0.0], &[1.0, 0.0], &cfg()).unwrap();
        assert_eq!(yt, vec![-1.0, 0.0]);
        assert_abs_diff_eq!(pre_cone_inner(&d, &[2.0, 0.0], &[1.0, 0.0]).unwrap(), -2.0, epsilon = 1e-14);
        let err = forward_map(&d, &[2.0, 0.0], &[-1.0, 0.0], &cfg()).unwrap_err();
        assert!(matches!(err, GeomError::PreConeViolation { .. }));
    }

    #[test]
    fn zero_wind_is_identity() {
        let d = NavigationDatum::new(zoo::euclidean(2), VectorFieldSpec::zero(2)).unwrap();
        let y = [0.3, -0.4];
        assert_eq!(forward_map(&d, &[1.0, 1.0], &y, &cfg()).unwrap(), y.to_vec());
        let back = inverse_map(&d, &[1.0, 1.0], &y, &cfg()).unwrap();
        assert!(linalg::dist(&back, &y) < 1e-14);
        assert!(tensor_relation_residual(&d, &[1.0, 1.0], &y, &cfg()).unwrap() <= 1e-10);
    }

    #[test]
    fn inverse_funk_example() {
        let d = NavigationDatum::funk(2);
        let y = inverse_map(&d, &[2.0, 0.0], &[-1.0, 0.0], &cfg()).unwrap();
        assert!(linalg::dist(&y, &[1.0, 0.0]) < 1e-13);
        let boundary = [-1.0, 1.0 / 3f64.sqrt()];
        let err = inverse_map(&d, &[2.0, 0.0], &boundary, &cfg()).unwrap_err();
        assert!(matches!(err, GeomError::ConeViolation { .. }));
    }

    #[test]
    fn membership_examples() {
        let d = NavigationDatum::funk(2);
        let x = [2.0, 0.0];
        assert!(cone_membership(&d, &x, &[-1.0, 0.0], &cfg()));
        assert!(!cone_membership(&d, &x, &[1.0, 0.0], &cfg()));
        assert!(cone_membership(&d, &x, &[-2.0, 0.0], &cfg()));
        // generic path agrees with the discriminant
        let quad = NavigationDatum::new(zoo::minkowski_quartic(2), VectorFieldSpec::RadialNegative).unwrap();
        assert!(cone_membership(&quad, &x, &[-1.0, 0.0], &cfg()));
        assert!(!cone_membership(&quad, &x, &[1.0, 0.0], &cfg()));
    }

    #[test]
    fn weak_wind_inverse_matches_randers() {
        let w = VectorFieldSpec::Constant { v: vec![0.5, 0.0] };
        let d = NavigationDatum::new(zoo::euclidean(2), w.clone()).unwrap();
        let randers = zoo::randers_navigation(2, w).unwrap();
        let x = [0.3, 0.1];
        for yt in [[1.0, 0.0], [-1.0, 0.2], [0.1, -2.0]] {
            let y = inverse_map(&d, &x, &yt, &cfg()).unwrap();
            assert_abs_diff_eq!(zoo::euclidean(2).value(&x, &y), randers.value(&x, &yt), epsilon = 1e-13);
        }
        assert!(tensor_relation_residual(&d, &x, &[0.2, 1.0], &cfg()).unwrap() <= 1e-7);
    }

    #[test]
    fn funk_tensor_relation() {
        let d = NavigationDatum::funk(2);
        let r = tensor_relation_residual(&d, &[2.0, 0.0], &[1.0, 0.0], &cfg()).unwrap();
        assert!(r <= 1e-7, "{r}");
        let r = tensor_relation_residual(&d, &[1.5, -0.7], &[0.6, -0.2], &cfg()).unwrap();
        assert!(r <= 1e-7, "{r}");
    }

    #[test]
    fn dilations() {
        assert_eq!(NavigationDatum::funk(3).dilation_c, Some(0.5));
        let ps = zoo::power_scaled(zoo::euclidean(2), 2.0).unwrap();
        assert_eq!(NavigationDatum::new(ps, VectorFieldSpec::RadialNegative).unwrap().dilation_c, Some(1.5));
        let q = NavigationDatum::new(zoo::euclidean(2), VectorFieldSpec::Quadratic { coeff: 1.0 }).unwrap();
        assert_eq!(q.dilation_c, None);
    }
}
