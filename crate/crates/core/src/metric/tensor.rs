use nalgebra::{DMatrix, SymmetricEigen};

use super::MetricDescriptor;
use crate::config::NumericsConfig;
use crate::diff::{jet2, lift, Dual2};
use crate::error::{GeomError, Result};
use crate::linalg;

/// The fundamental tensor `g_ij(x, y) = ½ ∂²F²/∂yⁱ∂yʲ` at a flag `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorValue {
    pub matrix: DMatrix<f64>,
    pub base_x: Vec<f64>,
    pub base_y: Vec<f64>,
}

impl TensorValue {
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        linalg::quad_form(&self.matrix, u, v)
    }

    pub fn det(&self) -> f64 {
        self.matrix.determinant()
    }
}

/// Hessian of `F²/2` in `y`, without admissibility checks.
pub fn tensor_matrix(m: &MetricDescriptor, x: &[f64], y: &[f64]) -> Result<DMatrix<f64>> {
    let n = m.dim();
    let xd: Vec<Dual2> = lift(x);
    let f2 = |z: &[Dual2]| {
        let f = m.eval(&xd, z);
        f * f
    };
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let jet = jet2(f2, y, &linalg::unit(n, i), &linalg::unit(n, j))?;
            if i == j {
                g[(i, i)] = 0.5 * jet.d11;
            } else {
                g[(i, j)] = 0.5 * jet.d12;
                g[(j, i)] = 0.5 * jet.d12;
            }
        }
    }
    Ok(g)
}

fn check_degenerate(g: &DMatrix<f64>) -> Result<f64> {
    let n = g.nrows() as i32;
    let det = g.determinant();
    let scale = g.amax().powi(n);
    if !(det.abs() >= 1e-12 * scale) || scale == 0.0 {
        return Err(GeomError::DegenerateTensor { det, scale });
    }
    Ok(det)
}

pub fn fundamental_tensor(m: &MetricDescriptor, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<TensorValue> {
    m.require(x, y, cfg)?;
    let matrix = tensor_matrix(m, x, y)?;
    check_degenerate(&matrix)?;
    Ok(TensorValue { matrix, base_x: x.to_vec(), base_y: y.to_vec() })
}

/// `⟨u, v⟩_y = g_ij(x, y) uⁱ vʲ`
pub fn inner(m: &MetricDescriptor, x: &[f64], y: &[f64], u: &[f64], v: &[f64], cfg: &NumericsConfig) -> Result<f64> {
    Ok(fundamental_tensor(m, x, y, cfg)?.inner(u, v))
}

/// Counts of positive and negative eigenvalues of the fundamental tensor.
pub fn signature(m: &MetricDescriptor, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<(usize, usize)> {
    let g = fundamental_tensor(m, x, y, cfg)?;
    let threshold = 1e-10 * g.matrix.norm();
    let eig = SymmetricEigen::new(g.matrix.clone());
    let mut p = 0;
    let mut q = 0;
    for &lambda in eig.eigenvalues.iter() {
        if lambda > threshold {
            p += 1;
        } else if lambda < -threshold {
            q += 1;
        } else {
            return Err(GeomError::DegenerateTensor { det: g.det(), scale: g.matrix.norm() });
        }
    }
    Ok((p, q))
}

/// `max_λ |F(x, λy) − λF(x, y)| / (λF(x, y))`
pub fn homogeneity_residual(
    m: &MetricDescriptor,
    x: &[f64],
    y: &[f64],
    lambdas: &[f64],
    cfg: &NumericsConfig,
) -> Result<f64> {
    let f = m.checked_value(x, y, cfg)?;
    let mut worst: f64 = 0.0;
    for &lambda in lambdas {
        if !(lambda > 0.0) {
            return Err(GeomError::InvalidConfig(format!("scale {lambda} must be positive")));
        }
        let scaled = m.value(x, &linalg::scale(y, lambda));
        if !scaled.is_finite() {
            return Err(GeomError::NonFiniteEvaluation { context: "homogeneity_residual" });
        }
        worst = worst.max((scaled - lambda * f).abs() / (lambda * f));
    }
    Ok(worst)
}

/// The Legendre map `y ↦ ⟨·, y⟩_y`, i.e. `g(x, y) y`.
pub fn legendre_map(m: &MetricDescriptor, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let g = tensor_matrix(m, x, y)?;
    Ok(linalg::mat_vec(&g, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use approx::assert_abs_diff_eq;

    #[test]
    fn euclidean_tensor_is_identity() {
        let cfg = NumericsConfig::default();
        let m = zoo::euclidean(3);
        let g = fundamental_tensor(&m, &[0.1, 2.0, -1.0], &[1.0, 2.0, 3.0], &cfg).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(g.matrix[(i, j)], if i == j { 1.0 } else { 0.0 }, epsilon = 1e-14);
            }
        }
        assert_eq!(signature(&m, &[0.0; 3], &[1.0, 0.0, 0.0], &cfg).unwrap(), (3, 0));
        assert_abs_diff_eq!(
            inner(&m, &[0.0; 3], &[1.0, 1.0, 0.0], &[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &cfg).unwrap(),
            32.0,
            epsilon = 1e-13
        );
    }

    #[test]
    fn funk_spot_values() {
        let cfg = NumericsConfig::default();
        let m = zoo::lorentz_funk(2);
        let (x, y) = ([2.0, 0.0], [-1.0, 0.0]);
        let g = fundamental_tensor(&m, &x, &y, &cfg).unwrap();
        assert_abs_diff_eq!(g.inner(&[0.0, 1.0], &[0.0, 1.0]), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.inner(&y, &y), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.inner(&[0.0, -1.0], &y), -g.inner(&[0.0, 1.0], &y), epsilon = 1e-15);
        assert_eq!(signature(&m, &x, &y, &cfg).unwrap(), (1, 1));
        let scaled = fundamental_tensor(&m, &x, &[-3.0, 0.0], &cfg).unwrap();
        assert!((scaled.matrix - g.matrix).amax() < 1e-12);
        assert!(homogeneity_residual(&m, &x, &y, &[0.5, 2.0, 10.0], &cfg).unwrap() <= 1e-12);
    }

    #[test]
    fn outside_cone_is_domain_violation() {
        let cfg = NumericsConfig::default();
        let m = zoo::lorentz_funk(2);
        let err = fundamental_tensor(&m, &[2.0, 0.0], &[1.0, 0.0], &cfg).unwrap_err();
        assert!(matches!(err, GeomError::DomainViolation { .. }));
    }
}
