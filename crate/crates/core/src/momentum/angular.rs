//! Angular factors Theta(theta) of the separated solutions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Scalar;

/// Theta = c1 theta + c2 for lambda = 0, else c1 sin(lambda theta) + c2 cos(lambda theta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularFactor<T> {
    pub lambda: T,
    pub c1: T,
    pub c2: T,
}

impl<T: Scalar> AngularFactor<T> {
    pub fn new(lambda: T, c1: T, c2: T) -> Result<Self> {
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(Error::Parameter { func: "AngularFactor", detail: format!("lambda = {lambda}") });
        }
        if c1 == T::zero() && c2 == T::zero() {
            return Err(Error::Parameter { func: "AngularFactor", detail: "c1 = c2 = 0".into() });
        }
        Ok(Self { lambda, c1, c2 })
    }

    /// cos(lambda theta).
    pub fn cos(lambda: T) -> Self {
        Self { lambda, c1: T::zero(), c2: T::one() }
    }

    /// sin(lambda theta).
    pub fn sin(lambda: T) -> Self {
        Self { lambda, c1: T::one(), c2: T::zero() }
    }

    pub fn value(&self, theta: T) -> T {
        if self.lambda == T::zero() {
            return self.c1 * theta + self.c2;
        }
        let (s, c) = (self.lambda * theta).sin_cos();
        self.c1 * s + self.c2 * c
    }

    pub fn deriv(&self, theta: T) -> T {
        if self.lambda == T::zero() {
            return self.c1;
        }
        let (s, c) = (self.lambda * theta).sin_cos();
        self.lambda * (self.c1 * c - self.c2 * s)
    }

    pub fn deriv2(&self, theta: T) -> T {
        -self.lambda * self.lambda * self.value(theta)
    }

    /// Upsilon = Theta'/Theta; node error where Theta vanishes.
    pub fn logderiv(&self, theta: T) -> Result<T> {
        let v = self.value(theta);
        let scale = if self.lambda == T::zero() {
            (self.c1 * theta).abs() + self.c2.abs()
        } else {
            self.c1.abs() + self.c2.abs()
        };
        if v.abs() <= T::c(64.0) * T::epsilon() * scale {
            return Err(Error::Node("angular factor"));
        }
        Ok(self.deriv(theta) / v)
    }

    /// Angle of the j-th extremum, (pi/2 + pi j - theta0)/lambda with
    /// tan theta0 = c2/c1. None for lambda = 0, which has no extrema.
    pub fn extremum_angle(&self, j: i64) -> Option<T> {
        if self.lambda == T::zero() {
            return None;
        }
        let theta0 = self.c2.atan2(self.c1);
        Some((T::FRAC_PI_2() + T::PI() * T::c(j as f64) - theta0) / self.lambda)
    }
}

/// Free-function spelling of [`AngularFactor::value`].
pub fn angular_theta<T: Scalar>(fac: &AngularFactor<T>, theta: T) -> T {
    fac.value(theta)
}

/// Free-function spelling of [`AngularFactor::logderiv`].
pub fn angular_logderiv<T: Scalar>(fac: &AngularFactor<T>, theta: T) -> Result<T> {
    fac.logderiv(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn sin_three_theta() {
        let f = AngularFactor::sin(3.0);
        assert_relative_eq!(f.logderiv(PI / 12.0).unwrap(), 3.0, max_relative = 1e-12);
        assert!(matches!(f.logderiv(PI / 3.0), Err(Error::Node(_))));
    }

    #[test]
    fn extremum_is_stationary() {
        for &(lam, c1, c2) in &[(3.0f64, 1.0f64, 0.0f64), (2.0, 0.3, -1.2), (1.5, -0.7, 0.4), (2.0, 0.0, 1.0)] {
            let f = AngularFactor::new(lam, c1, c2).unwrap();
            for j in -2..3 {
                let te = f.extremum_angle(j).unwrap();
                assert!(f.deriv(te).abs() < 1e-12 * lam * (c1 * c1 + c2 * c2).sqrt());
            }
        }
    }

    #[test]
    fn logderiv_matches_finite_difference() {
        let f = AngularFactor::<f64>::new(2.5, 0.8, 0.3).unwrap();
        let g = AngularFactor::new(0.0, 1.5, 0.2).unwrap();
        for fac in [f, g] {
            for &t in &[0.1f64, 0.4, 1.0] {
                let h = 1e-5;
                let fd = (fac.value(t + h).abs().ln() - fac.value(t - h).abs().ln()) / (2.0 * h);
                assert_relative_eq!(fac.logderiv(t).unwrap(), fd, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn rejects_trivial_factor() {
        assert!(AngularFactor::new(1.0, 0.0, 0.0).is_err());
        assert!(AngularFactor::new(-1.0, 1.0, 0.0).is_err());
    }
}
