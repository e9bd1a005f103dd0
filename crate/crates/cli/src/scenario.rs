//! Scenario files: a JSON description of a metric, a navigation datum, a
//! field and the checks to run on them.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use finsler_nav::calculus::{normalized_affine, AffineField, NormSphereField, ScalarField, SphereField};
use finsler_nav::iso::{orient_field, CorrespondenceContext, DEFAULT_REGION_RADIUS};
use finsler_nav::navigation::NavigationDatum;
use finsler_nav::{zoo, GeomError, MetricDescriptor, NumericsConfig, VectorFieldSpec};

pub const SCHEMA: &str = "finsler-nav/scenario/v1";

const MAX_DIM: usize = 8;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MetricSpec {
    Euclidean {
        dim: usize,
    },
    MinkowskiQuartic {
        dim: usize,
    },
    /// `|x|^exponent F_base`
    PowerScaled {
        base: Box<MetricSpec>,
        exponent: f64,
    },
    Randers {
        dim: usize,
        wind: VectorFieldSpec,
    },
    LorentzFunk {
        dim: usize,
    },
    Navigation {
        base: Box<MetricSpec>,
        wind: VectorFieldSpec,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FieldSpec {
    /// `|x − center| − a`
    Sphere {
        a: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    /// `x¹ − a`
    Hyperplane { a: f64 },
    /// `⟨w, x − x0⟩`, rescaled so that `F(∇f) = 1` at `x0`.
    Affine { covector: Vec<f64> },
    /// `F(x − center) − radius` for a Minkowski base metric.
    NormSphere { center: Vec<f64>, radius: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    pub radius: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicSpec {
    pub x0: Vec<f64>,
    pub y0: Vec<f64>,
    pub horizon: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// File name stem; defaults to the scenario name.
    pub prefix: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    pub metric: MetricSpec,
    /// Overrides the closed-form dilation of the datum.
    #[serde(default)]
    pub dilation: Option<f64>,
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub x0: Option<Vec<f64>>,
    #[serde(default)]
    pub region: Option<RegionSpec>,
    #[serde(default)]
    pub numerics: NumericsConfig,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    /// Values of `t`: `f̃` is sampled on `f̃ = t` and `f` on `f = α_c(t)`.
    #[serde(default = "default_levels")]
    pub levels: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples_per_level: usize,
    #[serde(default)]
    pub geodesics: Vec<GeodesicSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_checks() -> Vec<String> {
    vec!["theorem".into()]
}

fn default_levels() -> Vec<f64> {
    vec![-0.2, 0.0, 0.2]
}

fn default_samples() -> usize {
    20
}

pub const CHECKS: [&str; 5] =
    ["theorem", "gradient-correspondence", "laplacian-relation-dmu", "laplacian-relation-osc", "jacobian-sign"];

/// A configuration problem; the CLI exits with status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<GeomError> for ConfigError {
    fn from(e: GeomError) -> Self {
        Self(e.to_string())
    }
}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

fn check_dim(dim: usize) -> Result<usize, ConfigError> {
    if (2..=MAX_DIM).contains(&dim) {
        Ok(dim)
    } else {
        Err(bad(format!("dimension must lie in 2..={MAX_DIM}, got {dim}")))
    }
}

impl MetricSpec {
    pub fn dim(&self) -> Result<usize, ConfigError> {
        match self {
            Self::Euclidean { dim }
            | Self::MinkowskiQuartic { dim }
            | Self::Randers { dim, .. }
            | Self::LorentzFunk { dim } => check_dim(*dim),
            Self::PowerScaled { base, .. } | Self::Navigation { base, .. } => base.dim(),
        }
    }

    pub fn build(&self, probes: &[Vec<f64>], cfg: &NumericsConfig) -> Result<MetricDescriptor, ConfigError> {
        let n = self.dim()?;
        Ok(match self {
            Self::Euclidean { .. } => zoo::euclidean(n),
            Self::MinkowskiQuartic { .. } => zoo::minkowski_quartic(n),
            Self::PowerScaled { base, exponent } => zoo::power_scaled(base.build(probes, cfg)?, *exponent)?,
            Self::Randers { wind, .. } => zoo::randers_navigation(n, wind.clone())?,
            Self::LorentzFunk { .. } => zoo::lorentz_funk(n),
            Self::Navigation { base, wind } => {
                zoo::navigation_induced(base.build(probes, cfg)?, wind.clone(), probes, cfg)?
            }
        })
    }

    /// The navigation datum behind a Lorentz metric, if it has one.
    pub fn datum(&self, cfg: &NumericsConfig) -> Result<Option<NavigationDatum>, ConfigError> {
        match self {
            Self::LorentzFunk { dim } => Ok(Some(NavigationDatum::funk(check_dim(*dim)?))),
            Self::Navigation { base, wind } => Ok(Some(NavigationDatum::new(base.build(&[], cfg)?, wind.clone())?)),
            _ => Ok(None),
        }
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        let scenario: Self = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.schema != SCHEMA {
            return Err(bad(format!("unsupported schema {:?}, expected {SCHEMA:?}", self.schema)));
        }
        self.numerics.validate()?;
        let n = self.metric.dim()?;
        if let Some(x0) = &self.x0 {
            if x0.len() != n {
                return Err(bad(format!("x0 has {} components, metric has dimension {n}", x0.len())));
            }
        }
        for check in &self.checks {
            if !CHECKS.contains(&check.as_str()) {
                return Err(bad(format!("unknown check {check:?}; known checks: {}", CHECKS.join(", "))));
            }
        }
        if self.levels.iter().any(|t| !t.is_finite()) {
            return Err(bad("levels must be finite"));
        }
        if self.samples_per_level == 0 {
            return Err(bad("samples_per_level must be positive"));
        }
        for g in &self.geodesics {
            if g.x0.len() != n || g.y0.len() != n || !g.horizon.is_finite() {
                return Err(bad(format!("geodesic {g:?} does not match dimension {n}")));
            }
        }
        if let Some(p) = &self.output.prefix {
            if p.is_empty() || p.contains(['/', '\\']) {
                return Err(bad(format!("output prefix {p:?} must be a plain file name")));
            }
        }
        Ok(())
    }

    pub fn prefix(&self) -> &str {
        self.output.prefix.as_deref().unwrap_or(&self.name)
    }

    pub fn datum(&self) -> Result<NavigationDatum, ConfigError> {
        let datum = self
            .metric
            .datum(&self.numerics)?
            .ok_or_else(|| bad("this command needs a \"navigation\" or \"lorentz-funk\" metric"))?;
        Ok(match self.dilation {
            Some(c) => datum.with_dilation(c),
            None => datum,
        })
    }

    fn base_field(&self, datum: &NavigationDatum, x0: &[f64]) -> Result<Arc<dyn ScalarField>, ConfigError> {
        let n = datum.dim();
        let spec = self.field.as_ref().ok_or_else(|| bad("missing \"field\""))?;
        let field: Arc<dyn ScalarField> = match spec {
            FieldSpec::Sphere { a, center } => {
                let center = center.clone().unwrap_or_else(|| vec![0.0; n]);
                if center.len() != n {
                    return Err(bad("sphere center does not match the dimension"));
                }
                Arc::new(SphereField { center, radius: *a, sign: 1.0 })
            }
            FieldSpec::Hyperplane { a } => Arc::new(AffineField::hyperplane(n, *a)),
            FieldSpec::Affine { covector } => {
                if covector.len() != n {
                    return Err(bad("affine covector does not match the dimension"));
                }
                Arc::new(normalized_affine(&datum.base, covector, x0, &self.numerics)?)
            }
            FieldSpec::NormSphere { center, radius } => {
                Arc::new(NormSphereField::new(datum.base.clone(), center.clone(), *radius)?)
            }
        };
        Ok(field)
    }

    /// The correspondence context, with `f` or `−f` chosen by the sign
    /// condition at `x0`. Hypothesis failures are not configuration errors.
    pub fn context(&self) -> Result<finsler_nav::Result<CorrespondenceContext>, ConfigError> {
        let datum = self.datum()?;
        let x0 = self.x0.clone().ok_or_else(|| bad("missing \"x0\""))?;
        let radius = self.region.as_ref().map_or(DEFAULT_REGION_RADIUS, |r| r.radius);
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(bad(format!("region radius must be positive, got {radius}")));
        }
        let field = self.base_field(&datum, &x0)?;
        let cfg = self.numerics;
        match orient_field(&datum, field, &x0, &cfg)
            .and_then(|f| CorrespondenceContext::new(datum, f, x0, radius, self.seed, &cfg))
        {
            Err(GeomError::InvalidConfig(msg)) => Err(bad(msg)),
            other => Ok(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Scenario, ConfigError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    #[test]
    fn minimal_scenario() {
        let s = parse(
            r#"{"schema": "finsler-nav/scenario/v1", "name": "m", "metric": {"name": "lorentz-funk", "dim": 2}}"#,
        )
        .unwrap();
        assert_eq!(s.checks, vec!["theorem"]);
        assert_eq!(s.prefix(), "m");
        assert_eq!(s.datum().unwrap().dilation_c, Some(0.5));
    }

    #[test]
    fn rejects_bad_input() {
        let base = r#""schema": "finsler-nav/scenario/v1", "name": "m""#;
        for body in [
            r#""metric": {"name": "lorentz-funk", "dim": 1}"#,
            r#""metric": {"name": "hyperbolic", "dim": 2}"#,
            r#""metric": {"name": "euclidean", "dim": 2}, "checks": ["everything"]"#,
            r#""metric": {"name": "euclidean", "dim": 2}, "x0": [1.0]"#,
            r#""metric": {"name": "euclidean", "dim": 2}, "colour": 3"#,
        ] {
            assert!(parse(&format!("{{{base}, {body}}}")).is_err(), "{body}");
        }
        let wrong = r#"{"schema": "finsler-nav/scenario/v0", "name": "m", "metric": {"name": "euclidean", "dim": 2}}"#;
        assert!(parse(wrong).is_err());
    }

    #[test]
    fn navigation_datum_with_claimed_dilation() {
        let s = parse(
            r#"{"schema": "finsler-nav/scenario/v1", "name": "q", "dilation": 0.5,
                "metric": {"name": "navigation", "base": {"name": "euclidean", "dim": 2},
                           "wind": {"kind": "quadratic", "coeff": 1.0}}}"#,
        )
        .unwrap();
        assert_eq!(s.datum().unwrap().dilation_c, Some(0.5));
    }
}
