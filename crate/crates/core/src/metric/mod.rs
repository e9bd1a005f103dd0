//! Metric abstraction: Finsler and Lorentz-Finsler metrics on a chart of ℝⁿ.

mod tensor;

pub use tensor::{
    fundamental_tensor, homogeneity_residual, inner, legendre_map, signature, tensor_matrix, TensorValue,
};

use crate::config::NumericsConfig;
use crate::diff::{dot, Scalar};
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::navigation;
use crate::wind::VectorFieldSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MetricKind {
    /// Defined on every nonzero vector; positive definite fundamental tensor.
    FinslerPositiveDefinite,
    /// Defined on an open convex cone; fundamental tensor of signature (1, n-1).
    LorentzCone,
}

#[derive(Debug, Clone)]
pub(crate) enum Model {
    Euclidean,
    MinkowskiQuartic,
    /// `|x|^k · F_base(x, y)`
    PowerScaled {
        base: Box<MetricDescriptor>,
        exponent: f64,
    },
    /// Closed-form Randers navigation of the Euclidean metric by a weak wind.
    Randers {
        wind: VectorFieldSpec,
    },
    /// Closed-form Lorentz Funk metric on `|x| > 1`.
    LorentzFunk,
    /// Strong-wind navigation of an arbitrary Finsler metric, solved numerically.
    Navigation {
        base: Box<MetricDescriptor>,
        wind: VectorFieldSpec,
        solver: NumericsConfig,
    },
}

/// A Finsler or Lorentz-Finsler metric: a positively 1-homogeneous function
/// `F(x, y)` together with the cone of vectors on which it is defined.
#[derive(Debug, Clone)]
pub struct MetricDescriptor {
    dim: usize,
    pub(crate) model: Model,
}

impl MetricDescriptor {
    pub(crate) fn new(dim: usize, model: Model) -> Self {
        Self { dim, model }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> MetricKind {
        match self.model {
            Model::LorentzFunk | Model::Navigation { .. } => MetricKind::LorentzCone,
            _ => MetricKind::FinslerPositiveDefinite,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.model {
            Model::Euclidean => "euclidean",
            Model::MinkowskiQuartic => "minkowski-quartic",
            Model::PowerScaled { .. } => "power-scaled",
            Model::Randers { .. } => "randers",
            Model::LorentzFunk => "lorentz-funk",
            Model::Navigation { .. } => "navigation",
        }
    }

    /// True when `F` does not depend on the base point.
    pub fn is_minkowski(&self) -> bool {
        match &self.model {
            Model::Euclidean | Model::MinkowskiQuartic => true,
            Model::Randers { wind } => matches!(wind, VectorFieldSpec::Constant { .. }),
            _ => false,
        }
    }

    /// The navigation datum `(F, V)` that produces this metric, when known.
    pub fn navigation_datum(&self) -> Option<(MetricDescriptor, VectorFieldSpec)> {
        match &self.model {
            Model::Randers { wind } => Some((MetricDescriptor::new(self.dim, Model::Euclidean), wind.clone())),
            Model::LorentzFunk => {
                Some((MetricDescriptor::new(self.dim, Model::Euclidean), VectorFieldSpec::RadialNegative))
            }
            Model::Navigation { base, wind, .. } => Some(((**base).clone(), wind.clone())),
            _ => None,
        }
    }

    /// `F(x, y)` in any scalar type. Returns NaN where the metric is undefined.
    pub fn eval<T: Scalar>(&self, x: &[T], y: &[T]) -> T {
        match &self.model {
            Model::Euclidean => dot(y, y).sqrt(),
            Model::MinkowskiQuartic => {
                let s = y.iter().fold(T::cst(0.0), |acc, &c| {
                    let c2 = c * c;
                    acc + c2 * c2
                });
                s.sqrt().sqrt()
            }
            Model::PowerScaled { base, exponent } => dot(x, x).powf(0.5 * exponent) * base.eval(x, y),
            Model::Randers { wind } => {
                let w = wind.eval(x);
                let a = -dot(&w, &w) + 1.0;
                let yw = dot(y, &w);
                ((a * dot(y, y) + yw * yw).sqrt() - yw) / a
            }
            Model::LorentzFunk => {
                let xy = dot(x, y);
                let r2 = dot(x, x) - 1.0;
                ((xy * xy - r2 * dot(y, y)).sqrt() - xy) / r2
            }
            Model::Navigation { base, wind, solver } => eval_navigation(base, wind, solver, x, y),
        }
    }

    pub fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        self.eval::<f64>(x, y)
    }

    /// Validates the base point against the metric's working region.
    pub fn check_point(&self, x: &[f64], cfg: &NumericsConfig) -> Result<()> {
        if x.len() != self.dim || x.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::DomainViolation { x: x.to_vec(), y: None });
        }
        match &self.model {
            Model::Euclidean | Model::MinkowskiQuartic => Ok(()),
            Model::PowerScaled { base, .. } => {
                if linalg::norm(x) <= cfg.cone_margin {
                    return Err(GeomError::DomainViolation { x: x.to_vec(), y: None });
                }
                base.check_point(x, cfg)
            }
            Model::Randers { wind } => {
                let w = wind.at(x);
                let speed = linalg::norm(&w);
                if speed >= 1.0 {
                    Err(GeomError::NavigationRegimeViolation { x: x.to_vec(), value: speed })
                } else {
                    Ok(())
                }
            }
            Model::LorentzFunk => {
                if linalg::norm(x) <= 1.0 + cfg.cone_margin {
                    Err(GeomError::DomainViolation { x: x.to_vec(), y: None })
                } else {
                    Ok(())
                }
            }
            Model::Navigation { base, wind, .. } => {
                base.check_point(x, cfg)?;
                navigation::check_strong_wind(base, wind, x)
            }
        }
    }

    /// Strict membership of `y` in the admissible cone at `x`, without margin.
    pub fn admissible(&self, x: &[f64], y: &[f64]) -> bool {
        if y.len() != self.dim || y.iter().any(|c| !c.is_finite()) || linalg::norm(y) == 0.0 {
            return false;
        }
        match &self.model {
            Model::LorentzFunk => {
                let r2 = linalg::dot(x, x) - 1.0;
                let xy = linalg::dot(x, y);
                r2 > 0.0 && xy < 0.0 && xy * xy - r2 * linalg::dot(y, y) > 0.0
            }
            Model::Navigation { base, wind, solver } => navigation::in_cone(base, wind, x, y, solver),
            _ => self.check_point(x, &NumericsConfig::default()).is_ok(),
        }
    }

    /// Membership with the relative boundary margin `cfg.cone_margin`: `y`
    /// and every perturbation `y ± margin·|y|·eᵢ` must be admissible.
    pub fn admissible_with_margin(&self, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> bool {
        if self.check_point(x, cfg).is_err() || !self.admissible(x, y) {
            return false;
        }
        if self.kind() == MetricKind::FinslerPositiveDefinite {
            return true;
        }
        let h = cfg.cone_margin * linalg::norm(y);
        (0..self.dim).all(|i| {
            let e = linalg::unit(self.dim, i);
            self.admissible(x, &linalg::axpy(y, h, &e)) && self.admissible(x, &linalg::axpy(y, -h, &e))
        })
    }

    /// Errors unless `(x, y)` is admissible with margin.
    pub fn require(&self, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<()> {
        self.check_point(x, cfg)?;
        if self.admissible_with_margin(x, y, cfg) {
            Ok(())
        } else {
            Err(GeomError::DomainViolation { x: x.to_vec(), y: Some(y.to_vec()) })
        }
    }

    /// `F(x, y)` after checking admissibility.
    pub fn checked_value(&self, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<f64> {
        self.require(x, y, cfg)?;
        let f = self.value(x, y);
        if f.is_finite() && f > 0.0 {
            Ok(f)
        } else {
            Err(GeomError::NonFiniteEvaluation { context: "metric value" })
        }
    }
}

/// Evaluates the strong-wind navigation metric. The scalar root is found in
/// real arithmetic, then lifted to `T` by chord iterations whose slope is the
/// converged real derivative; each iteration gains one derivative order.
fn eval_navigation<T: Scalar>(
    base: &MetricDescriptor,
    wind: &VectorFieldSpec,
    solver: &NumericsConfig,
    x: &[T],
    y: &[T],
) -> T {
    let xr: Vec<f64> = x.iter().map(|c| c.re()).collect();
    let yr: Vec<f64> = y.iter().map(|c| c.re()).collect();
    let w = wind.at(&xr);
    let Ok(root) = navigation::lorentz_root(base, &xr, &yr, &w, solver) else {
        return T::cst(f64::NAN);
    };
    let wt = wind.eval(x);
    let denom = 1.0 - root.slope;
    let mut t = T::cst(root.t);
    for _ in 0..3 {
        let arg: Vec<T> = y.iter().zip(&wt).map(|(&yi, &wi)| yi - t * wi).collect();
        let psi = base.eval(x, &arg);
        t = t - (t - psi) / denom;
    }
    t
}
