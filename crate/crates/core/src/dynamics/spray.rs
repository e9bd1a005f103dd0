use crate::config::NumericsConfig;
use crate::diff::{concat, jet2, Dual2};
use crate::error::{GeomError, Result};
use crate::linalg;
use crate::metric::{fundamental_tensor, MetricDescriptor};

/// Geodesic spray coefficients
/// `Gⁱ = ¼ g^{il}([F²]_{x^k y^l} yᵏ − [F²]_{x^l})`.
pub fn spray_coeffs(m: &MetricDescriptor, x: &[f64], y: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
    let g = fundamental_tensor(m, x, y, cfg)?;
    let n = m.dim();
    let base = concat(x, y);
    let f2 = |z: &[Dual2]| {
        let f = m.eval(&z[..n], &z[n..]);
        f * f
    };
    let along_y = concat(y, &vec![0.0; n]);
    let mut rhs = vec![0.0; n];
    for (l, r) in rhs.iter_mut().enumerate() {
        let mixed = jet2(f2, &base, &along_y, &concat(&vec![0.0; n], &linalg::unit(n, l)))?;
        let dx = jet2(f2, &base, &concat(&linalg::unit(n, l), &vec![0.0; n]), &along_y)?;
        *r = 0.25 * (mixed.d12 - dx.d1);
    }
    linalg::solve(&g.matrix, &rhs).ok_or(GeomError::DegenerateTensor { det: g.det(), scale: g.matrix.amax() })
}

/// `ẍ = −2G(x, ẋ)`
pub fn acceleration(m: &MetricDescriptor, x: &[f64], v: &[f64], cfg: &NumericsConfig) -> Result<Vec<f64>> {
    Ok(linalg::scale(&spray_coeffs(m, x, v, cfg)?, -2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn minkowski_sprays_vanish() {
        let cfg = NumericsConfig::default();
        let g = spray_coeffs(&zoo::euclidean(2), &[2.0, 0.0], &[-1.0, 0.0], &cfg).unwrap();
        assert!(linalg::max_abs(&g) == 0.0);
        let g = spray_coeffs(&zoo::minkowski_quartic(3), &[1.0, 2.0, 0.0], &[0.3, -1.0, 0.5], &cfg).unwrap();
        assert!(linalg::max_abs(&g) < 1e-14);
    }

    #[test]
    fn spray_is_two_homogeneous() {
        let cfg = NumericsConfig::default();
        let m = zoo::lorentz_funk(2);
        let (x, y) = ([2.0, 0.3], [-1.0, 0.1]);
        let g1 = spray_coeffs(&m, &x, &y, &cfg).unwrap();
        let g2 = spray_coeffs(&m, &x, &linalg::scale(&y, 3.0), &cfg).unwrap();
        assert!(linalg::max_abs(&g1) > 1e-3);
        assert!(linalg::dist(&g2, &linalg::scale(&g1, 9.0)) < 1e-11);
    }
}
