//! Central finite differences.

use crate::error::Result;
use crate::Scalar;

/// Derivative order supported by the stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

/// Step for a central first difference: eps^(1/3) * scale.
pub fn step_first<T: Scalar>(scale: T) -> T {
    T::epsilon().cbrt() * scale.abs().max(T::min_positive_value())
}

/// Step for a central second difference: eps^(1/4) * scale.
pub fn step_second<T: Scalar>(scale: T) -> T {
    T::epsilon().sqrt().sqrt() * scale.abs().max(T::min_positive_value())
}

/// Three-point central difference of the given order, O(h^2) truncation.
pub fn fd_derivative<T, F>(mut f: F, x: T, order: Order, h: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let fp = f(x + h)?;
    let fm = f(x - h)?;
    Ok(match order {
        Order::First => (fp - fm) / (T::c(2.0) * h),
        Order::Second => {
            let f0 = f(x)?;
            (fp - T::c(2.0) * f0 + fm) / (h * h)
        }
    })
}

/// Five-point central difference of the given order, O(h^4) truncation.
pub fn fd_derivative5<T, F>(mut f: F, x: T, order: Order, h: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let two = T::c(2.0);
    let (m2, m1, p1, p2) = (f(x - two * h)?, f(x - h)?, f(x + h)?, f(x + two * h)?);
    Ok(match order {
        Order::First => (m2 - T::c(8.0) * m1 + T::c(8.0) * p1 - p2) / (T::c(12.0) * h),
        Order::Second => {
            let c = f(x)?;
            (-m2 + T::c(16.0) * m1 - T::c(30.0) * c + T::c(16.0) * p1 - p2) / (T::c(12.0) * h * h)
        }
    })
}

/// Relative roundoff floor of a three-point second difference taken at a
/// step that is `h_rel` times the natural length scale.
pub fn noise_floor_second<T: Scalar>(h_rel: T) -> T {
    T::c(64.0) * T::epsilon() / (h_rel * h_rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::expint_ei;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_first_derivative() {
        let d = fd_derivative(|x: f64| Ok(x * x * x), 2.0, Order::First, 1e-5).unwrap();
        assert!((d - 12.0).abs() < 1e-6);
    }

    #[test]
    fn sine_second_derivative() {
        let d = fd_derivative(|x: f64| Ok(x.sin()), 0.7, Order::Second, 1e-4).unwrap();
        assert!((d + 0.7_f64.sin()).abs() < 1e-5);
    }

    #[test]
    fn exponential_integral_slope() {
        let d = fd_derivative(expint_ei, 1.0_f64, Order::First, 1e-5).unwrap();
        assert_relative_eq!(d, core::f64::consts::E, max_relative = 1e-6);
    }

    #[test]
    fn five_point_is_sharper() {
        let h = 1e-2;
        let d3 = fd_derivative(|x: f64| Ok(x.exp()), 0.3, Order::Second, h).unwrap();
        let d5 = fd_derivative5(|x: f64| Ok(x.exp()), 0.3, Order::Second, h).unwrap();
        let e = 0.3_f64.exp();
        assert!((d5 - e).abs() < (d3 - e).abs() / 100.0);
    }
}
