//! Finsler and Lorentz-Finsler geometry under Zermelo navigation.

pub mod calculus;
pub mod config;
pub mod diff;
pub mod dynamics;
pub mod error;
pub mod iso;
pub mod linalg;
pub mod metric;
pub mod navigation;
pub mod wind;
pub mod zoo;

pub use config::NumericsConfig;
pub use error::{GeomError, Result};
pub use metric::{MetricDescriptor, MetricKind};
pub use wind::VectorFieldSpec;
