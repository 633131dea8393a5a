//! The Hill substitution zeta(rho), its coefficient G, and the
//! angle-independent hyperbolic solution Omega(mu+).

use crate::error::{Error, Result};
use crate::maxwell::ModelParams;
use crate::scalar::near_integer;
use crate::specfun::{expint_ei_with, SeriesControl};
use crate::Scalar;

/// Tolerance of the integer test on ell / n selecting the recurrence branch.
pub const BRANCH_TOL: f64 = 1e-9;

/// Largest rho_bar^n accepted by the power-series branch.
pub const SERIES_CAP: f64 = 50.0;

/// k with ell = n k, if ell / n is a non-negative integer.
pub fn ell_multiple<T: Scalar>(p: &ModelParams<T>) -> Option<usize> {
    match near_integer(p.ell / p.n, T::c(BRANCH_TOL)) {
        Some(k) if k >= 0 => Some(k as usize),
        _ => None,
    }
}

/// beta_{n,k} = k + 1/n.
fn beta<T: Scalar>(n: T, k: usize) -> T {
    T::of(k) + n.recip()
}

/// J_{n,k}(x), an antiderivative of exp(beta_k x^n) / x^(kn+1), built from
/// J_{n,0}(x) = Ei(beta_0 x^n) / n by the downward recurrence.
pub fn j_nk<T: Scalar>(n: T, k: usize, x: T, ctrl: &SeriesControl<T>) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain { func: "j_nk", detail: format!("x = {x} must be positive") });
    }
    if k == 0 {
        return Ok(expint_ei_with(beta(n, 0) * x.powf(n), ctrl)? / n);
    }
    let bk = beta(n, k);
    let bk1 = beta(n, k - 1);
    let kk = T::of(k);
    let coef = bk.powf(kk) / (kk * bk1.powf(kk - T::one()));
    let inner = j_nk(n, k - 1, x * (bk / bk1).powf(n.recip()), ctrl)?;
    let tail = (bk * x.powf(n)).exp() / (kk * n * x.powf(kk * n));
    Ok(coef * inner - tail)
}

/// I_{n,k}(X), an antiderivative of exp(beta_k X) / X^(k+1), from I_{n,0}(X) = Ei(X/n).
pub fn i_nk<T: Scalar>(n: T, k: usize, x: T, ctrl: &SeriesControl<T>) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain { func: "i_nk", detail: format!("X = {x} must be positive") });
    }
    if k == 0 {
        return expint_ei_with(beta(n, 0) * x, ctrl);
    }
    let bk = beta(n, k);
    let bk1 = beta(n, k - 1);
    let kk = T::of(k);
    let coef = bk.powf(kk) / (kk * bk1.powf(kk - T::one()));
    let inner = i_nk(n, k - 1, bk * x / bk1, ctrl)?;
    Ok(coef * inner - (bk * x).exp() / (kk * x.powf(kk)))
}

/// Sum over k of c^k x^(k+s) / ((k+s) k!) where no k + s vanishes; the
/// term-by-term antiderivative of x^(s-1) e^(c x).
fn shifted_exp_series<T: Scalar>(c: T, s: T, x: T, ctrl: &SeriesControl<T>, func: &'static str) -> Result<T> {
    let mut pow_fact = x.powf(s); // c^k x^(k+s) / k!
    let mut sum = pow_fact / s;
    let mut quiet = 0;
    for k in 1..ctrl.max_terms {
        let kk = T::of(k);
        pow_fact = pow_fact * c * x / kk;
        let term = pow_fact / (kk + s);
        sum = sum + term;
        if !sum.is_finite() {
            return Err(Error::Overflow(func));
        }
        if term.abs() < ctrl.rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= crate::specfun::QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::SeriesLimit { func, terms: ctrl.max_terms })
}

/// Derivative of zeta: zbar(rho) = c0 (rho_T/rho)^(ell+1) exp(((ell+1)/n) rho_bar^n).
pub fn zeta_bar<T: Scalar>(p: &ModelParams<T>, rho: T) -> T {
    let rb = p.rho_bar(rho);
    let l1 = p.ell + T::one();
    p.c0 * rb.powf(-l1) * (l1 / p.n * rb.powf(p.n)).exp()
}

/// zeta(rho) = c0 rho_T J_{n,k}(rho_bar) when ell = n k, otherwise
/// c0 rho_T sum_k (ell+1)^k rho_bar^(nk-ell) / (n^k (nk-ell) k!).
pub fn hill_substitution_zeta<T: Scalar>(p: &ModelParams<T>, rho: T, ctrl: &SeriesControl<T>) -> Result<T> {
    if !(rho > T::zero()) {
        return Err(Error::Domain { func: "hill_substitution_zeta", detail: format!("rho = {rho}") });
    }
    let rb = p.rho_bar(rho);
    let scale = p.c0 * p.rho_t();
    if let Some(k) = ell_multiple(p) {
        return Ok(scale * j_nk(p.n, k, rb, ctrl)?);
    }
    let xn = rb.powf(p.n);
    if xn > T::c(SERIES_CAP) {
        return Err(Error::Range { func: "hill_substitution_zeta", value: xn.f64(), limit: SERIES_CAP });
    }
    // With y = rho_bar^n the sum is (1/n) sum c^k y^(k - ell/n) / ((k - ell/n) k!).
    let c = (p.ell + T::one()) / p.n;
    Ok(scale * shifted_exp_series(c, -p.ell / p.n, xn, ctrl, "hill_substitution_zeta")? / p.n)
}

/// Hill coefficient G = +-theta^2 with
/// theta = (lambda sqrt(ell+1) / (c0 rho_T)) rho_bar^ell sqrt|rho_bar^n - 1| exp(-((ell+1)/n) rho_bar^n);
/// positive for rho_bar >= 1.
pub fn hill_coefficient_g<T: Scalar>(p: &ModelParams<T>, lambda: T, rho: T) -> T {
    let rb = p.rho_bar(rho);
    let xn = rb.powf(p.n);
    let l1 = p.ell + T::one();
    let th = lambda * l1.sqrt() / (p.c0 * p.rho_t()) * rb.powf(p.ell) * (xn - T::one()).abs().sqrt()
        * (-l1 / p.n * xn).exp();
    if rb >= T::one() {
        th * th
    } else {
        -th * th
    }
}

/// mu+ = (2 sqrt(ell+1)/n)(sqrt(eps) - arctan sqrt(eps)), eps = rho_bar^n - 1.
pub fn mu_plus<T: Scalar>(p: &ModelParams<T>, rho: T) -> Result<T> {
    let eps = p.rho_bar(rho).powf(p.n) - T::one();
    if eps < -T::c(crate::maxwell::EPS_PAR) {
        return Err(Error::Region { rho: rho.f64(), expected: "hyperbolic" });
    }
    let s = eps.max(T::zero()).sqrt();
    Ok(T::c(2.0) * (p.ell + T::one()).sqrt() / p.n * (s - s.atan()))
}

/// Amplitude c1 for which dOmega/drho coincides with zbar.
pub fn omega_matched_c1<T: Scalar>(p: &ModelParams<T>) -> T {
    let l1 = p.ell + T::one();
    (l1 / p.n).exp() * p.c0 * p.rho_t() / l1.sqrt()
}

/// Hyperbolic solution Omega = (c1 sqrt(ell+1)/n) e^(-(ell+1)/n) [I_{n,k}(rho_bar^n) + c2]
/// for ell = n k, with the series bracket otherwise. Depends on rho only.
pub fn hyperbolic_omega<T: Scalar>(p: &ModelParams<T>, rho: T, ctrl: &SeriesControl<T>) -> Result<T> {
    let rt = p.rho_t();
    if rho <= rt * (T::one() - T::c(crate::maxwell::EPS_PAR)) {
        return Err(Error::Region { rho: rho.f64(), expected: "hyperbolic" });
    }
    let l1 = p.ell + T::one();
    let pref = p.c1 * l1.sqrt() / p.n * (-l1 / p.n).exp();
    let x = p.rho_bar(rho).powf(p.n);
    let bracket = if let Some(k) = ell_multiple(p) {
        i_nk(p.n, k, x, ctrl)?
    } else {
        if x > T::c(SERIES_CAP) {
            return Err(Error::Range { func: "hyperbolic_omega", value: x.f64(), limit: SERIES_CAP });
        }
        // sum (ell+1)^k X^(k - ell/n) / (n^(k-1) (kn - ell) k!) = sum c^k X^(k+s)/((k+s) k!), s = -ell/n
        shifted_exp_series(l1 / p.n, -p.ell / p.n, x, ctrl, "hyperbolic_omega")?
    };
    Ok(pref * (bracket + p.c2))
}

/// dOmega/drho from the closed form of the integrand.
pub fn hyperbolic_omega_prime<T: Scalar>(p: &ModelParams<T>, rho: T) -> T {
    let l1 = p.ell + T::one();
    let rb = p.rho_bar(rho);
    p.c1 * l1.sqrt() * (-l1 / p.n).exp() * rb.powf(-l1) * (l1 / p.n * rb.powf(p.n)).exp() / p.rho_t()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ctrl() -> SeriesControl<f64> {
        SeriesControl::default()
    }

    fn p(n: f64, ell: f64) -> ModelParams<f64> {
        ModelParams::new(n, ell, 0.9).unwrap()
    }

    fn d1(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-5 * x;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn zeta_derivative_is_zbar() {
        for &(n, ell, rb) in &[(2.0, 2.0, 0.7), (2.0, 0.0, 1.3), (3.0, 1.2, 0.9), (2.0, 4.0, 1.1)] {
            let m = p(n, ell);
            let rho = rb * m.rho_t();
            let d = d1(|r| hill_substitution_zeta(&m, r, &ctrl()).unwrap(), rho);
            assert_relative_eq!(d, zeta_bar(&m, rho), max_relative = 1e-6);
        }
    }

    #[test]
    fn recurrence_derivative_matches_integrand() {
        for k in 0..4 {
            for &n in &[1.0, 2.0, 3.5] {
                for &x in &[0.4, 1.0, 1.7] {
                    let d = d1(|t| j_nk(n, k, t, &ctrl()).unwrap(), x);
                    let integrand = ((k as f64 + 1.0 / n) * x.powf(n)).exp() / x.powf(k as f64 * n + 1.0);
                    assert_relative_eq!(d, integrand, max_relative = 1e-6);
                }
            }
        }
    }

    #[test]
    fn two_recurrences_are_rescalings() {
        for k in 0..4 {
            for &n in &[1.0, 2.0, 3.0] {
                let x = 1.6_f64;
                let i = i_nk(n, k, x, &ctrl()).unwrap();
                let j = j_nk(n, k, x.powf(1.0 / n), &ctrl()).unwrap();
                assert_relative_eq!(i, n * j, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn g_sign_follows_region() {
        let m = p(2.0, 1.0);
        assert_eq!(hill_coefficient_g(&m, 2.0, m.rho_t()), 0.0);
        assert!(hill_coefficient_g(&m, 2.0, 1.4 * m.rho_t()) > 0.0);
        assert!(hill_coefficient_g(&m, 2.0, 0.6 * m.rho_t()) < 0.0);
    }

    #[test]
    fn mu_plus_properties() {
        let m = p(2.0, 2.0);
        assert_eq!(mu_plus(&m, m.rho_t()).unwrap(), 0.0);
        assert!(mu_plus(&m, 0.9 * m.rho_t()).is_err());
        let mut last = 0.0;
        for i in 1..50 {
            let v = mu_plus(&m, (1.0 + 0.05 * i as f64) * m.rho_t()).unwrap();
            assert!(v > last);
            last = v;
        }
        // d mu / d eps = (sqrt(ell+1)/n) sqrt(eps)/(1+eps)
        let eps = 0.8_f64;
        let rho_of = |e: f64| m.rho_t() * (1.0 + e).powf(0.5);
        let d = d1(|e| mu_plus(&m, rho_of(e)).unwrap(), eps);
        assert_relative_eq!(d, 3.0_f64.sqrt() / 2.0 * eps.sqrt() / (1.0 + eps), max_relative = 1e-6);
    }

    #[test]
    fn omega_derivative_matches_zbar_when_matched() {
        for &(n, ell) in &[(2.0, 0.0), (2.0, 2.0), (2.0, 1.3), (3.0, 6.0)] {
            let base = p(n, ell);
            let m = base.with_constants(1.0, omega_matched_c1(&base), 0.25);
            let rho = 1.8 * m.rho_t();
            let d = d1(|r| hyperbolic_omega(&m, r, &ctrl()).unwrap(), rho);
            assert_relative_eq!(d, zeta_bar(&m, rho), max_relative = 1e-6);
            assert_relative_eq!(hyperbolic_omega_prime(&m, rho), zeta_bar(&m, rho), max_relative = 1e-12);
        }
    }

    #[test]
    fn omega_rejects_elliptic_radius() {
        let m = p(2.0, 0.0);
        assert!(hyperbolic_omega(&m, 0.5 * m.rho_t(), &ctrl()).is_err());
    }

    #[test]
    fn series_cap_is_enforced() {
        let m = p(2.0, 0.5);
        assert!(matches!(
            hill_substitution_zeta(&m, 8.0 * m.rho_t(), &ctrl()),
            Err(Error::Range { .. })
        ));
    }
}
