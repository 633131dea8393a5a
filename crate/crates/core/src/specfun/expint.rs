use super::{SeriesControl, SeriesSum};
use crate::error::{Error, Result};
use crate::Scalar;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral Ei(x) (principal value for x > 0) with default control.
pub fn expint_ei<T: Scalar>(x: T) -> Result<T> {
    expint_ei_with(x, &SeriesControl::default())
}

/// Ei(x) = gamma_e + ln|x| + sum_{k>=1} x^k / (k * k!).
///
/// For x < -1 the series cancels badly, so Ei(x) = -E1(-x) is taken from a
/// continued fraction instead.
pub fn expint_ei_with<T: Scalar>(x: T, ctrl: &SeriesControl<T>) -> Result<T> {
    if x == T::zero() {
        return Err(Error::Domain { func: "expint_ei", detail: "x = 0".into() });
    }
    if x < -T::one() {
        return Ok(-expint_e1(-x)?);
    }
    let mut power = x;
    let mut acc = SeriesSum::new(x);
    let mut k = 1usize;
    loop {
        if k >= ctrl.max_terms {
            return Err(Error::SeriesLimit { func: "expint_ei", terms: k });
        }
        k += 1;
        power = power * x / T::of(k);
        if acc.push(power / T::of(k), ctrl.rel_tol) {
            break;
        }
    }
    let val = T::c(EULER_GAMMA) + x.abs().ln() + acc.sum;
    if !val.is_finite() {
        return Err(Error::Overflow("expint_ei"));
    }
    Ok(val)
}

/// E1(x) for x > 1 by the modified Lentz continued fraction.
pub fn expint_e1<T: Scalar>(x: T) -> Result<T> {
    if x <= T::one() {
        return Err(Error::Domain { func: "expint_e1", detail: "continued fraction needs x > 1".into() });
    }
    let tiny = T::min_positive_value() / T::epsilon();
    let mut b = x + T::one();
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..500usize {
        let an = -T::of(i * i);
        b = b + T::c(2.0);
        d = T::one() / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h = h * del;
        if (del - T::one()).abs() <= T::epsilon() {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::NoConvergence("expint_e1 continued fraction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn leading_order_near_zero() {
        let x = 1e-8_f64;
        let rest = expint_ei(x).unwrap() - x.ln() - EULER_GAMMA;
        assert!(rest.abs() < 1e-7);
    }

    #[test]
    fn derivative_is_exp_over_x() {
        let h = 1e-5_f64;
        let d = (expint_ei(1.0 + h).unwrap() - expint_ei(1.0 - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(d, core::f64::consts::E, max_relative = 1e-6);
    }

    #[test]
    fn branches_meet_at_minus_one() {
        // Series at -1 - 1e-9 against the continued fraction just past it.
        let a = expint_ei(-1.0_f64 + 1e-9).unwrap();
        let b = expint_ei(-1.0_f64 - 1e-9).unwrap();
        assert!((a - b).abs() < 1e-8);
        assert_relative_eq!(expint_ei(-1.0_f64).unwrap(), -0.219_383_934_395_520_3, max_relative = 1e-13);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(expint_ei(0.0_f64).is_err());
    }

    #[test]
    fn large_positive_argument() {
        // Ei(x) ~ e^x/x (1 + 1/x + 2/x^2 + 6/x^3 + ...) at x = 40.
        let x = 40.0_f64;
        let mut s = 0.0;
        let mut t = 1.0;
        for k in 0..20 {
            s += t;
            t *= (k + 1) as f64 / x;
        }
        assert_relative_eq!(expint_ei(x).unwrap(), x.exp() / x * s, max_relative = 1e-9);
    }
}
