use super::dual::Dual2;
use crate::config::NumericsConfig;
use crate::error::{GeomError, Result};
use crate::linalg;

/// Value and directional derivatives of a scalar map at a point, along two
/// directions `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    /// Derivative along `u`.
    pub d1: f64,
    /// Derivative along `v`.
    pub d2: f64,
    pub d11: f64,
    pub d12: f64,
    pub d22: f64,
}

impl Jet2 {
    fn is_finite(&self) -> bool {
        [self.value, self.d1, self.d2, self.d11, self.d12, self.d22].iter().all(|x| x.is_finite())
    }
}

fn seed(base: &[f64], u: &[f64], v: &[f64]) -> Vec<Dual2> {
    base.iter().zip(u.iter().zip(v)).map(|(&b, (&du, &dv))| Dual2::seeded(b, du, dv)).collect()
}

/// Forward-mode jet of `map` at `base` along `u` and `v`.
pub fn jet2<F>(map: F, base: &[f64], u: &[f64], v: &[f64]) -> Result<Jet2>
where
    F: Fn(&[Dual2]) -> Dual2,
{
    debug_assert!(base.len() == u.len() && base.len() == v.len());
    let out = map(&seed(base, u, v));
    if !out.is_finite() {
        return Err(GeomError::NonFiniteEvaluation { context: "jet2" });
    }
    Ok(Jet2 { value: out.v, d1: out.ds, d2: out.dt, d11: out.dss, d12: out.dst, d22: out.dtt })
}

/// Value and first derivative along `dir`.
pub fn directional<F>(map: F, base: &[f64], dir: &[f64]) -> Result<(f64, f64)>
where
    F: Fn(&[Dual2]) -> Dual2,
{
    let zero = vec![0.0; base.len()];
    let j = jet2(map, base, dir, &zero)?;
    Ok((j.value, j.d1))
}

/// Central-difference jet. `map` is only ever evaluated at real points, and
/// every probe is checked against `domain` first.
pub fn jet2_central<F, D>(map: F, domain: D, base: &[f64], u: &[f64], v: &[f64], cfg: &NumericsConfig) -> Result<Jet2>
where
    F: Fn(&[f64]) -> f64,
    D: Fn(&[f64]) -> bool,
{
    let h = cfg.fd_step_at(base);
    let eval = |a: f64, b: f64| -> Result<f64> {
        let p: Vec<f64> =
            base.iter().zip(u.iter().zip(v)).map(|(&x, (&du, &dv))| x + a * h * du + b * h * dv).collect();
        if !domain(&p) {
            return Err(GeomError::DomainViolation { x: p, y: None });
        }
        let value = map(&p);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(GeomError::NonFiniteEvaluation { context: "jet2_central" })
        }
    };
    let f0 = eval(0.0, 0.0)?;
    let (fu_p, fu_m) = (eval(1.0, 0.0)?, eval(-1.0, 0.0)?);
    let (fv_p, fv_m) = (eval(0.0, 1.0)?, eval(0.0, -1.0)?);
    let (fpp, fpm) = (eval(1.0, 1.0)?, eval(1.0, -1.0)?);
    let (fmp, fmm) = (eval(-1.0, 1.0)?, eval(-1.0, -1.0)?);
    let jet = Jet2 {
        value: f0,
        d1: (fu_p - fu_m) / (2.0 * h),
        d2: (fv_p - fv_m) / (2.0 * h),
        d11: (fu_p - 2.0 * f0 + fu_m) / (h * h),
        d12: (fpp - fpm - fmp + fmm) / (4.0 * h * h),
        d22: (fv_p - 2.0 * f0 + fv_m) / (h * h),
    };
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(GeomError::NonFiniteEvaluation { context: "jet2_central" })
    }
}

/// Split a map of `(x, y)` into a map of the concatenated vector `[x, y]`.
pub fn concat(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().chain(y).copied().collect()
}

/// `∂map/∂x` of a map of `(x, y)`, forward mode.
pub fn grad_x<F>(map: F, x: &[f64], y: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(&[Dual2], &[Dual2]) -> Dual2,
{
    let n = x.len();
    let base = concat(x, y);
    let joined = |z: &[Dual2]| map(&z[..n], &z[n..]);
    (0..n)
        .map(|l| {
            let dir = concat(&linalg::unit(n, l), &vec![0.0; n]);
            directional(joined, &base, &dir).map(|(_, d)| d)
        })
        .collect()
}

/// `∂map/∂x` by central differences; `domain` rejects probe points.
pub fn grad_x_central<F, D>(map: F, domain: D, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &[f64]) -> f64,
    D: Fn(&[f64], &[f64]) -> bool,
{
    let h = cfg.fd_step_at(x);
    let probe = |p: Vec<f64>| -> Result<f64> {
        if !domain(&p, y) {
            return Err(GeomError::DomainViolation { x: p, y: Some(y.to_vec()) });
        }
        let value = map(&p, y);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(GeomError::NonFiniteEvaluation { context: "grad_x_central" })
        }
    };
    (0..x.len())
        .map(|l| {
            let e = linalg::unit(x.len(), l);
            let plus = probe(linalg::axpy(x, h, &e))?;
            let minus = probe(linalg::axpy(x, -h, &e))?;
            Ok((plus - minus) / (2.0 * h))
        })
        .collect()
}

/// Central-difference gradient of a real function.
pub fn gradient_central<F>(f: F, x: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let h = cfg.fd_step_at(x);
    (0..x.len())
        .map(|i| {
            let e = linalg::unit(x.len(), i);
            let plus = f(&linalg::axpy(x, h, &e))?;
            let minus = f(&linalg::axpy(x, -h, &e))?;
            let d = (plus - minus) / (2.0 * h);
            if d.is_finite() {
                Ok(d)
            } else {
                Err(GeomError::NonFiniteEvaluation { context: "gradient_central" })
            }
        })
        .collect()
}
