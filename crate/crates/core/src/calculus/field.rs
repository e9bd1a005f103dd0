use std::fmt;
use std::sync::Arc;

use crate::config::NumericsConfig;
use crate::diff::{directional, gradient_central, lift, Dual2};
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::MetricDescriptor;

/// A smooth real function on a chart of ℝⁿ.
pub trait ScalarField: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> Result<f64>;

    /// `df(x)`; central differences unless overridden.
    fn differential(&self, x: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
        gradient_central(|p| self.eval(p), x, cfg)
    }

    fn label(&self) -> String;
}

fn finite(value: f64, context: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(GeomError::NonFiniteEvaluation { context })
    }
}

/// `f(x) = s(|x − o| − a)` with `s = ±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereField {
    pub center: Vec<f64>,
    pub radius: f64,
    pub sign: f64,
}

impl SphereField {
    pub fn origin(n: usize, radius: f64) -> Self {
        Self { center: vec![0.0; n], radius, sign: 1.0 }
    }
}

impl ScalarField for SphereField {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        finite(self.sign * (linalg::dist(x, &self.center) - self.radius), "sphere field")
    }

    fn differential(&self, x: &[f64], _: &NumericsConfig) -> Result<Vec<f64>> {
        let d = linalg::sub(x, &self.center);
        let r = linalg::norm(&d);
        if r == 0.0 {
            return Err(GeomError::NonFiniteEvaluation { context: "sphere field differential at its center" });
        }
        Ok(linalg::scale(&d, self.sign / r))
    }

    fn label(&self) -> String {
        format!("sphere(a={})", self.radius)
    }
}

/// `f(x) = ⟨w, x⟩ − b`
#[derive(Debug, Clone, PartialEq)]
pub struct AffineField {
    pub covector: Vec<f64>,
    pub offset: f64,
}

impl AffineField {
    /// `f(x) = x¹ − a`
    pub fn hyperplane(n: usize, a: f64) -> Self {
        Self { covector: linalg::unit(n, 0), offset: a }
    }
}

impl ScalarField for AffineField {
    fn dim(&self) -> usize {
        self.covector.len()
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        finite(linalg::dot(&self.covector, x) - self.offset, "affine field")
    }

    fn differential(&self, _: &[f64], _: &NumericsConfig) -> Result<Vec<f64>> {
        Ok(self.covector.clone())
    }

    fn label(&self) -> String {
        format!("affine(w={:?}, b={})", self.covector, self.offset)
    }
}

/// `f(x) = F(x − o) − a` for a Minkowski metric `F`: the distance spheres
/// about `o`.
#[derive(Debug, Clone)]
pub struct NormSphereField {
    pub metric: MetricDescriptor,
    pub center: Vec<f64>,
    pub radius: f64,
}

impl NormSphereField {
    pub fn new(metric: MetricDescriptor, center: Vec<f64>, radius: f64) -> Result<Self> {
        if !metric.is_minkowski() || center.len() != metric.dim() {
            return Err(GeomError::InvalidConfig("norm spheres need a Minkowski metric of matching dimension".into()));
        }
        Ok(Self { metric, center, radius })
    }
}

impl ScalarField for NormSphereField {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        let d = linalg::sub(x, &self.center);
        finite(self.metric.value(&self.center, &d) - self.radius, "norm sphere field")
    }

    fn differential(&self, x: &[f64], _: &NumericsConfig) -> Result<Vec<f64>> {
        let d = linalg::sub(x, &self.center);
        let o: Vec<Dual2> = lift(&self.center);
        (0..d.len())
            .map(|i| directional(|z: &[Dual2]| self.metric.eval(&o, z), &d, &linalg::unit(d.len(), i)).map(|(_, g)| g))
            .collect()
    }

    fn label(&self) -> String {
        format!("{}-sphere(a={})", self.metric.name(), self.radius)
    }
}

/// `f(x) = x¹x²`, transnormal for no metric in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductField {
    pub dim: usize,
}

impl ScalarField for ProductField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        Ok(x[0] * x[1])
    }

    fn differential(&self, x: &[f64], _: &NumericsConfig) -> Result<Vec<f64>> {
        let mut d = vec![0.0; x.len()];
        d[0] = x[1];
        d[1] = x[0];
        Ok(d)
    }

    fn label(&self) -> String {
        "product".into()
    }
}

/// `f(x) = ½|x|²`
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSquareField {
    pub dim: usize,
}

impl ScalarField for HalfSquareField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        Ok(0.5 * linalg::dot(x, x))
    }

    fn differential(&self, x: &[f64], _: &NumericsConfig) -> Result<Vec<f64>> {
        Ok(x.to_vec())
    }

    fn label(&self) -> String {
        "half-square".into()
    }
}

/// `f̃(x) = ln((a − 1)/(|x| − 1))` on `|x| > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunkSphereLevel {
    pub dim: usize,
    pub a: f64,
}

impl ScalarField for FunkSphereLevel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        let r = linalg::norm(x);
        if r <= 1.0 {
            return Err(GeomError::DomainViolation { x: x.to_vec(), y: None });
        }
        finite(((self.a - 1.0) / (r - 1.0)).ln(), "funk sphere level")
    }

    fn differential(&self, x: &[f64], _: &NumericsConfig) -> Result<Vec<f64>> {
        let r = linalg::norm(x);
        if r <= 1.0 {
            return Err(GeomError::DomainViolation { x: x.to_vec(), y: None });
        }
        Ok(linalg::scale(x, -1.0 / (r * (r - 1.0))))
    }

    fn label(&self) -> String {
        format!("funk-sphere-level(a={})", self.a)
    }
}

/// `f̃(x) = ln((a − 1)/(x¹ − 1))` on `x¹ > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunkHyperplaneLevel {
    pub dim: usize,
    pub a: f64,
}

impl ScalarField for FunkHyperplaneLevel {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        if x[0] <= 1.0 {
            return Err(GeomError::DomainViolation { x: x.to_vec(), y: None });
        }
        finite(((self.a - 1.0) / (x[0] - 1.0)).ln(), "funk hyperplane level")
    }

    fn differential(&self, x: &[f64], _: &NumericsConfig) -> Result<Vec<f64>> {
        if x[0] <= 1.0 {
            return Err(GeomError::DomainViolation { x: x.to_vec(), y: None });
        }
        let mut d = vec![0.0; x.len()];
        d[0] = -1.0 / (x[0] - 1.0);
        Ok(d)
    }

    fn label(&self) -> String {
        format!("funk-hyperplane-level(a={})", self.a)
    }
}

type EvalFn = dyn Fn(&[f64]) -> Result<f64> + Send + Sync;

/// A field given by a closure, differentiated by central differences.
#[derive(Clone)]
pub struct FnField {
    dim: usize,
    label: String,
    f: Arc<EvalFn>,
}

impl FnField {
    pub fn new(
        dim: usize,
        label: impl Into<String>,
        f: impl Fn(&[f64]) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        Self { dim, label: label.into(), f: Arc::new(f) }
    }
}

impl fmt::Debug for FnField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnField").field("dim", &self.dim).field("label", &self.label).finish()
    }
}

impl ScalarField for FnField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        (self.f)(x)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn assert_matches_fd(field: &dyn ScalarField, x: &[f64]) {
        let cfg = NumericsConfig::default();
        let analytic = field.differential(x, &cfg).unwrap();
        let fd = gradient_central(|p| field.eval(p), x, &cfg).unwrap();
        let scale = 1.0 + linalg::norm(&analytic);
        assert!(linalg::dist(&analytic, &fd) <= 1e-6 * scale, "{} {analytic:?} {fd:?}", field.label());
    }

    #[test]
    fn analytic_differentials_match_central_differences() {
        let x = [1.7, -0.6];
        assert_matches_fd(&SphereField::origin(2, 2.0), &x);
        assert_matches_fd(&AffineField { covector: vec![0.3, -2.0], offset: 1.0 }, &x);
        assert_matches_fd(&ProductField { dim: 2 }, &x);
        assert_matches_fd(&HalfSquareField { dim: 2 }, &x);
        assert_matches_fd(&FunkSphereLevel { dim: 2, a: 2.0 }, &x);
        assert_matches_fd(&FunkHyperplaneLevel { dim: 2, a: 2.0 }, &x);
        let quartic = NormSphereField::new(zoo::minkowski_quartic(2), vec![0.1, 0.2], 1.0).unwrap();
        assert_matches_fd(&quartic, &x);
    }

    #[test]
    fn closed_form_levels() {
        let f = FunkSphereLevel { dim: 2, a: 2.0 };
        assert!((f.eval(&[1.5, 0.0]).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(f.eval(&[2.0, 0.0]).unwrap(), 0.0);
        assert!(f.eval(&[0.5, 0.0]).is_err());
    }
}
