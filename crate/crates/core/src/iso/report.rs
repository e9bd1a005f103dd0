use serde::{Deserialize, Serialize, Serializer};

fn finite_or_null<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
    if value.is_finite() {
        s.serialize_f64(*value)
    } else {
        s.serialize_none()
    }
}

fn nan_if_null<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

/// Residual statistics for one identity over a set of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub n_samples: usize,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "nan_if_null")]
    pub max_residual: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "nan_if_null")]
    pub mean_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Point attaining `max_residual`.
    #[serde(skip)]
    pub worst_sample: Option<Vec<f64>>,
}

impl VerificationReport {
    /// Builds a report from `(sample point, residual)` pairs. A report with
    /// no samples or a non-finite residual fails.
    pub fn from_residuals(identity: impl Into<String>, tolerance: f64, residuals: &[(Vec<f64>, f64)]) -> Self {
        let n = residuals.len();
        let mut max = if n == 0 { f64::NAN } else { f64::NEG_INFINITY };
        let mut worst = None;
        let mut sum = 0.0;
        for (point, r) in residuals {
            sum += r;
            if r.is_nan() || *r > max {
                max = if r.is_nan() { f64::NAN } else { *r };
                worst = Some(point.clone());
                if r.is_nan() {
                    break;
                }
            }
        }
        let mean = if n == 0 { f64::NAN } else { sum / n as f64 };
        Self {
            identity: identity.into(),
            n_samples: n,
            max_residual: max,
            mean_residual: mean,
            tolerance,
            pass: n > 0 && max.is_finite() && mean.is_finite() && max <= tolerance,
            worst_sample: worst,
        }
    }

    /// A failed report for a check that could not be evaluated.
    pub fn errored(identity: impl Into<String>, tolerance: f64) -> Self {
        Self {
            identity: identity.into(),
            n_samples: 0,
            max_residual: f64::NAN,
            mean_residual: f64::NAN,
            tolerance,
            pass: false,
            worst_sample: None,
        }
    }

    /// One line for terminal output.
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "{} {}: max {:.3e}, mean {:.3e}, tol {:.1e}, n = {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.identity,
            self.max_residual,
            self.mean_residual,
            self.tolerance,
            self.n_samples
        );
        if !self.pass {
            if let Some(p) = &self.worst_sample {
                line.push_str(&format!(", worst at {p:?}"));
            }
        }
        line
    }
}

/// Population standard deviation.
pub fn std_dev(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt()
}
