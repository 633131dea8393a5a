use super::{gamma, rgamma, SeriesControl, SeriesSum};
use crate::error::{Error, Result};
use crate::scalar::near_integer;
use crate::Scalar;

/// Value of a Kummer series together with the sum of absolute terms, which
/// measures how much cancellation went into the value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerSum<T> {
    pub value: T,
    pub abs_sum: T,
}

const POLY_TOL: f64 = 1e-12;

fn check_b<T: Scalar>(b: T, func: &'static str) -> Result<()> {
    if b <= T::zero() && near_integer(b, T::c(POLY_TOL)).is_some() {
        return Err(Error::Parameter { func, detail: format!("b = {b} is a non-positive integer") });
    }
    Ok(())
}

/// Kummer's function M(a, b, z) = sum (a)_k z^k / ((b)_k k!) with default control.
pub fn kummer_m<T: Scalar>(a: T, b: T, z: T) -> Result<T> {
    kummer_m_with(a, b, z, &SeriesControl::default()).map(|s| s.value)
}

/// M(a, b, z) for 0 <= z <= z_max.
///
/// When `a` is within 1e-12 of a non-positive integer `-k` the series is
/// summed as the exact degree-k polynomial.
pub fn kummer_m_with<T: Scalar>(a: T, b: T, z: T, ctrl: &SeriesControl<T>) -> Result<KummerSum<T>> {
    check_b(b, "kummer_m")?;
    if z < T::zero() || z > ctrl.z_max {
        return Err(Error::Domain {
            func: "kummer_m",
            detail: format!("z = {z} outside [0, {}]", ctrl.z_max),
        });
    }
    let degree = match near_integer(a, T::c(POLY_TOL)) {
        Some(k) if k <= 0 => Some((-k) as usize),
        _ => None,
    };
    let a = degree.map_or(a, |k| -T::of(k));
    let mut term = T::one();
    let mut acc = SeriesSum::new(term);
    let mut k = 0usize;
    loop {
        if degree == Some(k) {
            break;
        }
        if k + 1 >= ctrl.max_terms {
            return Err(Error::SeriesLimit { func: "kummer_m", terms: k + 1 });
        }
        let kk = T::of(k);
        term = term * (a + kk) * z / ((b + kk) * (kk + T::one()));
        k += 1;
        let done = acc.push(term, ctrl.rel_tol);
        if !acc.sum.is_finite() || !acc.abs_sum.is_finite() {
            return Err(Error::Overflow("kummer_m"));
        }
        if done && degree.is_none() {
            break;
        }
    }
    Ok(KummerSum { value: acc.sum, abs_sum: acc.abs_sum })
}

/// Derivative d^order/dz^order M(a, b, z) via M' = (a/b) M(a+1, b+1, z).
pub fn kummer_m_deriv<T: Scalar>(a: T, b: T, z: T, order: usize) -> Result<T> {
    let mut coef = T::one();
    for j in 0..order {
        let jj = T::of(j);
        coef = coef * (a + jj) / (b + jj);
    }
    if coef == T::zero() {
        return Ok(T::zero());
    }
    let o = T::of(order);
    Ok(coef * kummer_m(a + o, b + o, z)?)
}

/// Logarithmic derivative d/dz ln M(a, b, z) = (a/b) M(a+1, b+1, z) / M(a, b, z).
pub fn kummer_logderiv<T: Scalar>(a: T, b: T, z: T) -> Result<T> {
    kummer_logderiv_with(a, b, z, &SeriesControl::default())
}

/// As [`kummer_logderiv`]; fails with [`Error::Node`] when M(a, b, z) is
/// indistinguishable from zero at working precision.
pub fn kummer_logderiv_with<T: Scalar>(a: T, b: T, z: T, ctrl: &SeriesControl<T>) -> Result<T> {
    let m = kummer_m_with(a, b, z, ctrl)?;
    if m.value.abs() <= T::c(64.0) * T::epsilon() * m.abs_sum {
        return Err(Error::Node("Kummer M"));
    }
    if a == T::zero() {
        return Ok(T::zero());
    }
    let up = kummer_m_with(a + T::one(), b + T::one(), z, ctrl)?;
    Ok(a / b * up.value / m.value)
}

/// Tricomi's function with default control.
pub fn tricomi_psi<T: Scalar>(a: T, b: T, z: T) -> Result<T> {
    tricomi_psi_with(a, b, z, &SeriesControl::default())
}

/// Tricomi's Psi(a, b, z) for non-integer b and z > 0 through
/// Psi = G(1-b)/G(a+1-b) M(a,b,z) + G(b-1)/G(a) z^(1-b) M(a+1-b, 2-b, z).
///
/// Integer b (the logarithmic limit) is rejected.
pub fn tricomi_psi_with<T: Scalar>(a: T, b: T, z: T, ctrl: &SeriesControl<T>) -> Result<T> {
    if near_integer(b, T::c(POLY_TOL)).is_some() {
        return Err(Error::Parameter { func: "tricomi_psi", detail: format!("integer b = {b} not supported") });
    }
    if z <= T::zero() {
        return Err(Error::Domain { func: "tricomi_psi", detail: format!("z = {z} must be positive") });
    }
    let one = T::one();
    let w1 = gamma(one - b)? * rgamma(a + one - b);
    let w2 = gamma(b - one)? * rgamma(a);
    let mut val = T::zero();
    if w1 != T::zero() {
        val = val + w1 * kummer_m_with(a, b, z, ctrl)?.value;
    }
    if w2 != T::zero() {
        val = val + w2 * z.powf(one - b) * kummer_m_with(a + one - b, T::c(2.0) - b, z, ctrl)?.value;
    }
    Ok(val)
}

/// Derivative of Psi(a, b, z) via Psi' = -a Psi(a+1, b+1, z).
pub fn tricomi_psi_deriv<T: Scalar>(a: T, b: T, z: T, order: usize) -> Result<T> {
    let mut coef = T::one();
    for j in 0..order {
        coef = -coef * (a + T::of(j));
    }
    if coef == T::zero() {
        return Ok(T::zero());
    }
    let o = T::of(order);
    Ok(coef * tricomi_psi(a + o, b + o, z)?)
}
