use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::ScalarField;
use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::linalg;

/// Where level sets are sampled: a ball around `center`, optionally
/// intersected with the annulus `inner < |x| < outer`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingRegion {
    pub center: Vec<f64>,
    pub radius: f64,
    pub annulus: Option<(f64, f64)>,
    pub seed: u64,
}

impl SamplingRegion {
    pub fn ball(center: Vec<f64>, radius: f64, seed: u64) -> Self {
        Self { center, radius, annulus: None, seed }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        linalg::dist(x, &self.center) <= self.radius
            && self.annulus.map_or(true, |(lo, hi)| {
                let r = linalg::norm(x);
                r > lo && r < hi
            })
    }
}

/// Points on `f⁻¹(level)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSetSample {
    pub level: f64,
    pub points: Vec<Vec<f64>>,
    pub field: String,
}

/// Moves `p` onto `f⁻¹(level)` by Newton steps along the coordinate gradient.
pub fn project_to_level(f: &dyn ScalarField, level: f64, p: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
    let tol = 1e-12 * (1.0 + level.abs());
    let mut x = p.to_vec();
    let mut residual = f64::INFINITY;
    for _ in 0..60 {
        residual = f.eval(&x)? - level;
        if residual.abs() <= tol {
            return Ok(x);
        }
        let df = f.differential(&x, cfg)?;
        let n2 = linalg::dot(&df, &df);
        if !(n2 > 0.0) {
            break;
        }
        x = linalg::axpy(&x, -residual / n2, &df);
    }
    Err(GeomError::NewtonDivergence { iterations: 60, residual: residual.abs() })
}

/// Samples `count` points of `f⁻¹(level)` inside `region`: uniform seeds in
/// the ball are projected onto the level set, and projections that leave the
/// region are discarded.
pub fn sample_level_set(
    f: &dyn ScalarField,
    level: f64,
    region: &SamplingRegion,
    count: usize,
    cfg: &NumericsConfig,
) -> Result<LevelSetSample> {
    let n = region.center.len();
    let mut rng = ChaCha8Rng::seed_from_u64(region.seed ^ level.to_bits());
    let mut points = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count && attempts < 50 * count.max(1) {
        attempts += 1;
        let offset: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if linalg::norm(&offset) > 1.0 {
            continue;
        }
        let seed = linalg::axpy(&region.center, region.radius, &offset);
        if let Ok(p) = project_to_level(f, level, &seed, cfg) {
            if region.contains(&p) {
                points.push(p);
            }
        }
    }
    if points.is_empty() {
        return Err(GeomError::EmptyLevel { level });
    }
    Ok(LevelSetSample { level, points, field: f.label() })
}
