use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::diff::Scalar;

/// A wind (navigation) vector field on a coordinate chart of ℝⁿ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VectorFieldSpec {
    /// `V(x) = v`
    Constant { v: Vec<f64> },
    /// `V(x) = A x`, `A` given row by row.
    Linear { matrix: Vec<Vec<f64>> },
    /// `V(x) = -x`
    RadialNegative,
    /// `V(x) = (-k (x¹)², 0, …, 0)`; not homothetic for any Minkowski metric.
    Quadratic { coeff: f64 },
}

impl VectorFieldSpec {
    pub fn eval<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        match self {
            Self::Constant { v } => v.iter().map(|&c| T::cst(c)).collect(),
            Self::Linear { matrix } => {
                matrix.iter().map(|row| row.iter().zip(x).fold(T::cst(0.0), |acc, (&a, &xi)| acc + xi * a)).collect()
            }
            Self::RadialNegative => x.iter().map(|&xi| -xi).collect(),
            Self::Quadratic { coeff } => {
                let mut out = vec![T::cst(0.0); x.len()];
                out[0] = -(x[0] * x[0]) * *coeff;
                out
            }
        }
    }

    pub fn at(&self, x: &[f64]) -> Vec<f64> {
        self.eval::<f64>(x)
    }

    /// `∂Vⁱ/∂xʲ`
    pub fn jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let n = x.len();
        match self {
            Self::Constant { .. } => DMatrix::zeros(n, n),
            Self::Linear { matrix } => DMatrix::from_fn(n, n, |i, j| matrix[i][j]),
            Self::RadialNegative => -DMatrix::identity(n, n),
            Self::Quadratic { coeff } => {
                let mut j = DMatrix::zeros(n, n);
                j[(0, 0)] = -2.0 * coeff * x[0];
                j
            }
        }
    }

    /// Dimension the field is pinned to, if any.
    pub fn fixed_dim(&self) -> Option<usize> {
        match self {
            Self::Constant { v } => Some(v.len()),
            Self::Linear { matrix } => Some(matrix.len()),
            Self::RadialNegative | Self::Quadratic { .. } => None,
        }
    }

    pub fn check_dim(&self, n: usize) -> bool {
        match self {
            Self::Linear { matrix } => matrix.len() == n && matrix.iter().all(|r| r.len() == n),
            _ => self.fixed_dim().map_or(true, |d| d == n),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::Constant { v: vec![0.0; n] }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Constant { v } => v.iter().all(|&c| c == 0.0),
            Self::Linear { matrix } => matrix.iter().flatten().all(|&c| c == 0.0),
            Self::RadialNegative => false,
            Self::Quadratic { coeff } => *coeff == 0.0,
        }
    }
}
