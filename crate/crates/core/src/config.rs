use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Step sizes and tolerances shared by every solver in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericsConfig {
    /// Relative central-difference step; the absolute step is `fd_step * (1 + |base|)`.
    pub fd_step: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    pub ode_step: f64,
    /// Number of low-discrepancy points used for indicatrix volumes.
    pub quad_samples: usize,
    /// Relative distance kept from the boundary of an admissible cone.
    pub cone_margin: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            fd_step: 1e-5,
            newton_tol: 1e-13,
            newton_max_iter: 100,
            ode_step: 1e-3,
            quad_samples: 200_000,
            cone_margin: 1e-3,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("fd_step", self.fd_step),
            ("newton_tol", self.newton_tol),
            ("ode_step", self.ode_step),
            ("cone_margin", self.cone_margin),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(GeomError::InvalidConfig(format!("{name} must be strictly positive, got {value}")));
            }
        }
        if self.newton_max_iter == 0 {
            return Err(GeomError::InvalidConfig("newton_max_iter must be >= 1".into()));
        }
        if self.quad_samples < 1000 {
            return Err(GeomError::InvalidConfig(format!("quad_samples must be >= 1000, got {}", self.quad_samples)));
        }
        if self.cone_margin >= 0.5 {
            return Err(GeomError::InvalidConfig(format!(
                "cone_margin must lie in (0, 0.5), got {}",
                self.cone_margin
            )));
        }
        Ok(())
    }

    /// Absolute central-difference step around `base`.
    pub fn fd_step_at(&self, base: &[f64]) -> f64 {
        self.fd_step * (1.0 + crate::linalg::norm(base))
    }
}
