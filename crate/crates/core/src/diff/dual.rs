//! Second-order forward-mode numbers in two directions.
//!
//! A [`Dual2`] carries the truncated Taylor expansion of a scalar map along
//! `base + s*u + t*v`: the value, the two first derivatives in `s` and `t`,
//! and the three second derivatives `d/ds²`, `d/ds dt`, `d/dt²`. Pushing one
//! through a smooth map therefore yields a full 2×2 directional Hessian in a
//! single evaluation.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic shared by `f64` and [`Dual2`] so that metric formulas are written once.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(value: f64) -> Self;
    /// Real part (the plain value).
    fn re(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn powf(self, p: f64) -> Self;
    fn recip(self) -> Self;
}

impl Scalar for f64 {
    fn cst(value: f64) -> Self {
        value
    }
    fn re(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::cst(0.0), |acc, (&x, &y)| acc + x * y)
}

pub fn lift<T: Scalar>(v: &[f64]) -> Vec<T> {
    v.iter().map(|&x| T::cst(x)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual2 {
    pub v: f64,
    pub ds: f64,
    pub dt: f64,
    pub dss: f64,
    pub dst: f64,
    pub dtt: f64,
}

impl Dual2 {
    pub const fn constant(v: f64) -> Self {
        Self { v, ds: 0.0, dt: 0.0, dss: 0.0, dst: 0.0, dtt: 0.0 }
    }

    /// A coordinate seeded with direction components `du` (along `s`) and `dv` (along `t`).
    pub const fn seeded(v: f64, du: f64, dv: f64) -> Self {
        Self { v, ds: du, dt: dv, dss: 0.0, dst: 0.0, dtt: 0.0 }
    }

    /// Chain rule for a unary map with derivatives `d1 = φ'(v)` and `d2 = φ''(v)`.
    fn chain(self, value: f64, d1: f64, d2: f64) -> Self {
        Self {
            v: value,
            ds: d1 * self.ds,
            dt: d1 * self.dt,
            dss: d2 * self.ds * self.ds + d1 * self.dss,
            dst: d2 * (self.ds * self.dt) + d1 * self.dst,
            dtt: d2 * self.dt * self.dt + d1 * self.dtt,
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.v, self.ds, self.dt, self.dss, self.dst, self.dtt].iter().all(|x| x.is_finite())
    }
}

impl Scalar for Dual2 {
    fn cst(value: f64) -> Self {
        Self::constant(value)
    }
    fn re(self) -> f64 {
        self.v
    }
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.v.ln(), 1.0 / self.v, -1.0 / (self.v * self.v))
    }
    fn powf(self, p: f64) -> Self {
        let value = self.v.powf(p);
        self.chain(value, p * self.v.powf(p - 1.0), p * (p - 1.0) * self.v.powf(p - 2.0))
    }
    fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }
}

impl Add for Dual2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            v: self.v + o.v,
            ds: self.ds + o.ds,
            dt: self.dt + o.dt,
            dss: self.dss + o.dss,
            dst: self.dst + o.dst,
            dtt: self.dtt + o.dtt,
        }
    }
}

impl Sub for Dual2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Dual2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, ds: -self.ds, dt: -self.dt, dss: -self.dss, dst: -self.dst, dtt: -self.dtt }
    }
}

impl Mul for Dual2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            ds: self.ds * o.v + self.v * o.ds,
            dt: self.dt * o.v + self.v * o.dt,
            dss: self.dss * o.v + 2.0 * self.ds * o.ds + self.v * o.dss,
            dst: self.dst * o.v + (self.ds * o.dt + self.dt * o.ds) + self.v * o.dst,
            dtt: self.dtt * o.v + 2.0 * self.dt * o.dt + self.v * o.dtt,
        }
    }
}

impl Div for Dual2 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Add<f64> for Dual2 {
    type Output = Self;
    fn add(mut self, o: f64) -> Self {
        self.v += o;
        self
    }
}

impl Sub<f64> for Dual2 {
    type Output = Self;
    fn sub(mut self, o: f64) -> Self {
        self.v -= o;
        self
    }
}

impl Mul<f64> for Dual2 {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Self {
            v: self.v * o,
            ds: self.ds * o,
            dt: self.dt * o,
            dss: self.dss * o,
            dst: self.dst * o,
            dtt: self.dtt * o,
        }
    }
}

impl Div<f64> for Dual2 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: f64) -> Self {
        self * (1.0 / o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn along(v: f64) -> Dual2 {
        Dual2::seeded(v, 1.0, 1.0)
    }

    #[test]
    fn unary_rules_match_closed_forms() {
        let x = 1.7;
        let cases: [(fn(Dual2) -> Dual2, f64, f64, f64); 5] = [
            (|d| d.sqrt(), x.sqrt(), 0.5 / x.sqrt(), -0.25 * x.powf(-1.5)),
            (|d| d.exp(), x.exp(), x.exp(), x.exp()),
            (|d| d.ln(), x.ln(), 1.0 / x, -1.0 / (x * x)),
            (|d| d.powf(0.25), x.powf(0.25), 0.25 * x.powf(-0.75), -0.1875 * x.powf(-1.75)),
            (|d| d.recip(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)),
        ];
        for (f, v, d1, d2) in cases {
            let r = f(along(x));
            assert_relative_eq!(r.v, v, max_relative = 1e-14);
            assert_relative_eq!(r.ds, d1, max_relative = 1e-14);
            assert_relative_eq!(r.dst, d2, max_relative = 1e-14);
            assert_relative_eq!(r.dss, d2, max_relative = 1e-14);
        }
    }

    #[test]
    fn product_and_quotient_rules() {
        // s and t seeded on separate variables: f = a*b, g = a/b
        let a = Dual2::seeded(3.0, 1.0, 0.0);
        let b = Dual2::seeded(2.0, 0.0, 1.0);
        let p = a * b;
        assert_eq!((p.v, p.ds, p.dt, p.dss, p.dst, p.dtt), (6.0, 2.0, 3.0, 0.0, 1.0, 0.0));
        let q = a / b;
        assert_relative_eq!(q.v, 1.5);
        assert_relative_eq!(q.ds, 0.5);
        assert_relative_eq!(q.dt, -0.75);
        assert_relative_eq!(q.dst, -0.25);
        assert_relative_eq!(q.dtt, 0.75);
    }
}
