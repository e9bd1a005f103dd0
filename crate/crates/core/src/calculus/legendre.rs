use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{tensor_matrix, MetricDescriptor, MetricKind};
use crate::wind::VectorFieldSpec;

/// `‖g(x, y) y − ω‖` and the tensor at `y`.
fn residual(
    m: &MetricDescriptor,
    x: &[f64],
    y: &[f64],
    omega: &[f64],
) -> Result<(f64, nalgebra::DMatrix<f64>, Vec<f64>)> {
    let g = tensor_matrix(m, x, y)?;
    let r = linalg::sub(&linalg::mat_vec(&g, y), omega);
    let norm = linalg::norm(&r);
    if !norm.is_finite() {
        return Err(GeomError::NonFiniteEvaluation { context: "legendre residual" });
    }
    Ok((norm, g, r))
}

/// Damped Newton for `g(x, y) y = ω` from `seed`. Steps are halved until the
/// iterate stays admissible and the residual decreases.
pub fn legendre_solve_from(
    m: &MetricDescriptor,
    x: &[f64],
    omega: &[f64],
    seed: &[f64],
    cfg: &NumericsConfig,
) -> Result<Vec<f64>> {
    if !m.admissible(x, seed) {
        return Err(GeomError::DomainViolation { x: x.to_vec(), y: Some(seed.to_vec()) });
    }
    let target = cfg.newton_tol * (1.0 + linalg::norm(omega));
    let floor = 1e3 * target;
    let mut y = seed.to_vec();
    let (mut res, mut g, mut r) = residual(m, x, &y, omega)?;
    for _ in 0..cfg.newton_max_iter {
        if res <= target {
            break;
        }
        let Some(step) = linalg::solve(&g, &r) else {
            return Err(GeomError::DegenerateTensor { det: g.determinant(), scale: g.amax() });
        };
        let mut lambda = 1.0;
        let mut accepted = None;
        while lambda > 1e-12 {
            let trial = linalg::axpy(&y, -lambda, &step);
            if m.admissible(x, &trial) {
                if let Ok(next) = residual(m, x, &trial, omega) {
                    if next.0 < res {
                        accepted = Some((trial, next));
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((trial, next)) => {
                y = trial;
                (res, g, r) = next;
            }
            None if res <= floor => break,
            None => return Err(GeomError::NewtonDivergence { iterations: cfg.newton_max_iter, residual: res }),
        }
    }
    if res > floor {
        return Err(GeomError::NewtonDivergence { iterations: cfg.newton_max_iter, residual: res });
    }
    if !m.admissible_with_margin(x, &y, cfg) {
        return Err(GeomError::DomainViolation { x: x.to_vec(), y: Some(y) });
    }
    Ok(y)
}

/// Rescales a direction `e` so that `ω(se) = F(se)²`, which the solution satisfies.
fn scaled_seed(m: &MetricDescriptor, x: &[f64], omega: &[f64], e: &[f64]) -> Option<Vec<f64>> {
    if !m.admissible(x, e) {
        return None;
    }
    let f = m.value(x, e);
    let s = linalg::dot(omega, e) / (f * f);
    Some(linalg::scale(e, if s > 0.0 && s.is_finite() { s } else { 1.0 }))
}

/// Seed from the dual description of navigation: if `F̃` comes from `(F, V)`
/// then `L̃(y + V) = L_F(y)/(1 + ⟨y, V⟩^F_y)` for `F`-unit `y`, so `y` is
/// proportional to `L_F⁻¹(−ω)`.
fn navigation_seed(
    base: &MetricDescriptor,
    wind: &VectorFieldSpec,
    x: &[f64],
    omega: &[f64],
    cfg: &NumericsConfig,
) -> Option<Vec<f64>> {
    let y = legendre_gradient(base, x, &linalg::scale(omega, -1.0), cfg, None).ok()?;
    let y = linalg::scale(&y, 1.0 / base.value(x, &y));
    let w = wind.at(x);
    let g = tensor_matrix(base, x, &y).ok()?;
    let lf = linalg::mat_vec(&g, &y);
    let factor = 1.0 + linalg::dot(&lf, &w);
    if !(factor < 0.0) {
        return None;
    }
    let lt = linalg::scale(&lf, 1.0 / factor);
    let s = linalg::dot(omega, &lt) / linalg::dot(&lt, &lt);
    (s > 0.0).then(|| linalg::scale(&linalg::add(&y, &w), s))
}

/// Admissible starting points for the Lorentz solve, in order of preference.
pub fn lorentz_seeds(
    m: &MetricDescriptor,
    x: &[f64],
    omega: &[f64],
    init: Option<&[f64]>,
    cfg: &NumericsConfig,
) -> Vec<Vec<f64>> {
    let mut seeds = Vec::new();
    if let Some(y) = init.filter(|y| m.admissible(x, y)) {
        seeds.push(y.to_vec());
    }
    if let Some((base, wind)) = m.navigation_datum() {
        if let Some(y) = navigation_seed(&base, &wind, x, omega, cfg) {
            seeds.push(y);
        }
        let v = wind.at(x);
        let h = 0.3 * linalg::norm(&v);
        let mut rays = vec![v.clone()];
        for i in 0..m.dim() {
            let e = linalg::unit(m.dim(), i);
            rays.push(linalg::axpy(&v, h, &e));
            rays.push(linalg::axpy(&v, -h, &e));
        }
        seeds.extend(rays.iter().filter_map(|e| scaled_seed(m, x, omega, e)));
    }
    seeds
}

/// The gradient vector `∇f = 𝓛⁻¹(df)`: the `y` with `⟨u, y⟩_y = df(u)` for all `u`.
/// For a Lorentz metric the solution inside the cone is unique, and the seeds
/// are tried in turn until one converges to it.
pub fn legendre_gradient(
    m: &MetricDescriptor,
    x: &[f64],
    df: &[f64],
    cfg: &NumericsConfig,
    init: Option<&[f64]>,
) -> Result<Vec<f64>> {
    m.check_point(x, cfg)?;
    if df.len() != m.dim() || df.iter().any(|c| !c.is_finite()) {
        return Err(GeomError::NonFiniteEvaluation { context: "legendre_gradient covector" });
    }
    let out_of_range = || GeomError::LegendreOutOfRange { x: x.to_vec(), covector: df.to_vec() };
    match m.kind() {
        MetricKind::FinslerPositiveDefinite => {
            if linalg::norm(df) == 0.0 {
                return Ok(vec![0.0; m.dim()]);
            }
            let mut last = None;
            let natural = scaled_seed(m, x, df, df).unwrap_or_else(|| df.to_vec());
            for seed in init.into_iter().map(|s| s.to_vec()).chain(std::iter::once(natural)) {
                match legendre_solve_from(m, x, df, &seed, cfg) {
                    Ok(y) => return Ok(y),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.unwrap_or_else(out_of_range))
        }
        MetricKind::LorentzCone => {
            if linalg::norm(df) == 0.0 {
                return Err(out_of_range());
            }
            for seed in lorentz_seeds(m, x, df, init, cfg) {
                if let Ok(y) = legendre_solve_from(m, x, df, &seed, cfg) {
                    return Ok(y);
                }
            }
            Err(out_of_range())
        }
    }
}
