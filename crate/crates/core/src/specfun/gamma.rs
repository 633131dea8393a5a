use crate::error::{Error, Result};
use crate::scalar::near_integer;
use crate::Scalar;

const LANCZOS_G: f64 = 7.0;
// Published coefficients, kept digit for digit.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole<T: Scalar>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// sin(pi x) with the argument reduced to [-1, 1] first.
fn sin_pi<T: Scalar>(x: T) -> T {
    let two = T::c(2.0);
    let r = x - two * (x / two).round();
    (T::PI() * r).sin()
}

/// Lanczos sum for x >= 0.5, returned as (ln of the power part, series factor).
fn lanczos_parts<T: Scalar>(x: T) -> (T, T) {
    let xm = x - T::one();
    let mut acc = T::c(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::c(c) / (xm + T::of(i));
    }
    let t = xm + T::c(LANCZOS_G) + T::c(0.5);
    let half_ln_2pi = T::c(0.918_938_533_204_672_7);
    (half_ln_2pi + (xm + T::c(0.5)) * t.ln() - t, acc)
}

/// Gamma function on the real line.
///
/// Reflection handles `x < 0.5`. Fails with [`Error::Pole`] at `0, -1, -2, ...`.
pub fn gamma<T: Scalar>(x: T) -> Result<T> {
    if is_pole(x) {
        return Err(Error::Pole(x.f64()));
    }
    if x < T::c(0.5) {
        let g = gamma(T::one() - x)?;
        return Ok(T::PI() / (sin_pi(x) * g));
    }
    // Small positive integers are exact factorials.
    if let Some(k) = near_integer(x, T::zero()) {
        if (1..=25).contains(&k) {
            let mut f = T::one();
            for i in 2..k {
                f = f * T::c(i as f64);
            }
            return Ok(f);
        }
    }
    let (ln_pow, series) = lanczos_parts(x);
    Ok(ln_pow.exp() * series)
}

/// Reciprocal gamma, zero at the poles of gamma.
pub fn rgamma<T: Scalar>(x: T) -> T {
    if is_pole(x) {
        return T::zero();
    }
    match gamma(x) {
        Ok(g) => T::one() / g,
        Err(_) => T::zero(),
    }
}

/// ln|Gamma(x)|, usable where gamma itself would overflow.
pub fn ln_gamma_abs<T: Scalar>(x: T) -> Result<T> {
    if is_pole(x) {
        return Err(Error::Pole(x.f64()));
    }
    if x < T::c(0.5) {
        let l = ln_gamma_abs(T::one() - x)?;
        return Ok(T::PI().ln() - sin_pi(x).abs().ln() - l);
    }
    let (ln_pow, series) = lanczos_parts(x);
    Ok(ln_pow + series.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn factorials_and_half_integer() {
        assert_eq!(gamma(5.0_f64).unwrap(), 24.0);
        assert_relative_eq!(gamma(0.5_f64).unwrap(), core::f64::consts::PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(-0.5_f64).unwrap(), -2.0 * core::f64::consts::PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn recurrence_holds_across_range() {
        let mut x = -19.7_f64;
        while x < 49.0 {
            if (x - x.round()).abs() > 1e-3 {
                let lhs = gamma(x + 1.0).unwrap();
                let rhs = x * gamma(x).unwrap();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
            x += 0.37;
        }
        assert_relative_eq!(gamma(3.7_f64).unwrap(), gamma(4.7_f64).unwrap() / 3.7, max_relative = 1e-13);
    }

    #[test]
    fn large_argument_matches_factorial() {
        // 49! computed as an exact product in f64 is accurate to a few ulps.
        let mut f = 1.0_f64;
        for i in 2..50 {
            f *= i as f64;
        }
        assert_relative_eq!(gamma(50.0_f64).unwrap(), f, max_relative = 1e-13);
        assert_relative_eq!(gamma(49.5_f64).unwrap() * 49.5, gamma(50.5_f64).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn poles_are_errors() {
        for k in 0..5 {
            assert!(matches!(gamma(-(k as f64)), Err(Error::Pole(_))));
            assert_eq!(rgamma(-(k as f64)), 0.0);
        }
    }

    #[test]
    fn ln_gamma_agrees() {
        for &x in &[0.3_f64, 2.5, 17.25, -3.5] {
            assert_relative_eq!(ln_gamma_abs(x).unwrap(), gamma(x).unwrap().abs().ln(), max_relative = 1e-12);
        }
        assert_relative_eq!(ln_gamma_abs(200.0_f64).unwrap(), 857.933_669_825_857_5, max_relative = 1e-13);
    }

    #[test]
    fn works_in_single_precision() {
        assert!((gamma(4.5_f32).unwrap() - 11.631_728).abs() < 1e-4);
    }
}
