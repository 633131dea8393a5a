//! Radial factors R(rho) of the separated solutions u = R(rho) Theta(theta).

use serde::{Deserialize, Serialize};

use super::hill::{hyperbolic_omega, hyperbolic_omega_prime};
use crate::error::{Error, Result};
use crate::maxwell::ModelParams;
use crate::specfun::{
    kummer_logderiv_with, kummer_m_deriv, kummer_m_with, laguerre, tricomi_psi_deriv, tricomi_psi_with, SeriesControl,
};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RadialKind {
    KummerPlus,
    KummerMinus,
    TricomiPlus,
    TricomiMinus,
    /// The angle-independent hyperbolic solution Omega(rho); lambda = 0.
    HyperbolicOmega,
    /// R = 1; lambda = 0.
    Constant,
}

impl RadialKind {
    pub const ALL: [RadialKind; 6] = [
        RadialKind::KummerPlus,
        RadialKind::KummerMinus,
        RadialKind::TricomiPlus,
        RadialKind::TricomiMinus,
        RadialKind::HyperbolicOmega,
        RadialKind::Constant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RadialKind::KummerPlus => "kummer-plus",
            RadialKind::KummerMinus => "kummer-minus",
            RadialKind::TricomiPlus => "tricomi-plus",
            RadialKind::TricomiMinus => "tricomi-minus",
            RadialKind::HyperbolicOmega => "omega",
            RadialKind::Constant => "constant",
        }
    }

    pub fn is_kummer_based(self) -> bool {
        !matches!(self, RadialKind::HyperbolicOmega | RadialKind::Constant)
    }

    fn is_plus(self) -> bool {
        matches!(self, RadialKind::KummerPlus | RadialKind::TricomiPlus)
    }

    fn is_tricomi(self) -> bool {
        matches!(self, RadialKind::TricomiPlus | RadialKind::TricomiMinus)
    }
}

impl core::str::FromStr for RadialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RadialKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parameter { func: "RadialKind", detail: format!("unknown radial kind {s:?}") })
    }
}

/// A radial factor: R = rho_bar^nu T(tau), tau = ((ell+1)/n) rho_bar^n, with T
/// Kummer's M or Tricomi's Psi at (a, b). When `laguerre_k` is set the factor
/// is the polynomial form (-1)^k rho_bar^nu L_k^(b-1)(tau).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSolution<T> {
    pub kind: RadialKind,
    pub lambda: T,
    pub nu: T,
    pub a: T,
    pub b: T,
    pub laguerre_k: Option<usize>,
}

/// Indicial exponents (nu+, nu-) of nu^2 + ell nu - lambda^2 (ell+1) = 0,
/// computed without cancellation.
pub fn nu_pm<T: Scalar>(ell: T, lambda: T) -> (T, T) {
    let half = ell / T::c(2.0);
    let prod = lambda * lambda * (ell + T::one());
    let s = (half * half + prod).sqrt();
    if ell >= T::zero() {
        let minus = -half - s;
        let plus = if minus == T::zero() { T::zero() } else { -prod / minus };
        (plus, minus)
    } else {
        let plus = -half + s;
        (plus, -prod / plus)
    }
}

/// The roots -ell/2 +- sqrt(ell^2/4 + lambda^2 (ell+1)) written out directly.
pub fn frobenius_roots<T: Scalar>(ell: T, lambda: T) -> (T, T) {
    let half = ell / T::c(2.0);
    let s = (half * half + lambda * lambda * (ell + T::one())).sqrt();
    (-half + s, -half - s)
}

/// Kummer parameters a = (nu - lambda^2)/n and b = (2 nu + n + ell)/n.
pub fn kummer_params<T: Scalar>(n: T, ell: T, lambda: T, nu: T) -> (T, T) {
    ((nu - lambda * lambda) / n, (T::c(2.0) * nu + n + ell) / n)
}

impl<T: Scalar> RadialSolution<T> {
    /// Kummer or Tricomi branch for separation constant lambda.
    pub fn kummer(p: &ModelParams<T>, kind: RadialKind, lambda: T) -> Result<Self> {
        if !kind.is_kummer_based() {
            return Err(Error::Parameter { func: "RadialSolution::kummer", detail: format!("{kind:?}") });
        }
        if !(lambda >= T::zero()) {
            return Err(Error::Parameter { func: "RadialSolution::kummer", detail: format!("lambda = {lambda}") });
        }
        let (plus, minus) = nu_pm(p.ell, lambda);
        let nu = if kind.is_plus() { plus } else { minus };
        let (a, b) = kummer_params(p.n, p.ell, lambda, nu);
        Ok(Self { kind, lambda, nu, a, b, laguerre_k: None })
    }

    /// Polynomial radial factor of a Laguerre case: requires a+ = -k.
    pub fn laguerre(p: &ModelParams<T>, lambda: T, k: usize) -> Result<Self> {
        let mut s = Self::kummer(p, RadialKind::KummerPlus, lambda)?;
        let miss = (s.a + T::of(k)).abs();
        if miss > T::c(1e-9) * (T::one() + T::of(k)) {
            return Err(Error::Parameter {
                func: "RadialSolution::laguerre",
                detail: format!("a+ = {} is not -{k}", s.a),
            });
        }
        s.a = -T::of(k);
        s.laguerre_k = Some(k);
        Ok(s)
    }

    pub fn hyperbolic_omega() -> Self {
        let z = T::zero();
        Self { kind: RadialKind::HyperbolicOmega, lambda: z, nu: z, a: z, b: z, laguerre_k: None }
    }

    pub fn constant() -> Self {
        let z = T::zero();
        Self { kind: RadialKind::Constant, lambda: z, nu: z, a: z, b: z, laguerre_k: None }
    }

    /// T(tau) and its first two tau-derivatives.
    fn t_derivs(&self, tau: T, ctrl: &SeriesControl<T>) -> Result<[T; 3]> {
        if let Some(k) = self.laguerre_k {
            let al = self.b - T::one();
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            let l0 = laguerre(k, al, tau);
            let l1 = if k >= 1 { -laguerre(k - 1, al + T::one(), tau) } else { T::zero() };
            let l2 = if k >= 2 { laguerre(k - 2, al + T::c(2.0), tau) } else { T::zero() };
            return Ok([sign * l0, sign * l1, sign * l2]);
        }
        if self.kind.is_tricomi() {
            Ok([
                tricomi_psi_with(self.a, self.b, tau, ctrl)?,
                tricomi_psi_deriv(self.a, self.b, tau, 1)?,
                tricomi_psi_deriv(self.a, self.b, tau, 2)?,
            ])
        } else {
            Ok([
                kummer_m_with(self.a, self.b, tau, ctrl)?.value,
                kummer_m_deriv(self.a, self.b, tau, 1)?,
                kummer_m_deriv(self.a, self.b, tau, 2)?,
            ])
        }
    }

    /// (R, dR/drho, d2R/drho2).
    pub fn eval(&self, p: &ModelParams<T>, rho: T) -> Result<[T; 3]> {
        self.eval_with(p, rho, &SeriesControl::default())
    }

    pub fn eval_with(&self, p: &ModelParams<T>, rho: T, ctrl: &SeriesControl<T>) -> Result<[T; 3]> {
        if !(rho > T::zero()) {
            return Err(Error::Domain { func: "radial_eval", detail: format!("rho = {rho}") });
        }
        let rt = p.rho_t();
        match self.kind {
            RadialKind::Constant => Ok([T::one(), T::zero(), T::zero()]),
            RadialKind::HyperbolicOmega => {
                let r = hyperbolic_omega(p, rho, ctrl)?;
                let r1 = hyperbolic_omega_prime(p, rho);
                Ok([r, r1, -r1 * p.coeff_g(rho) / rho])
            }
            _ => {
                let rb = rho / rt;
                let n = p.n;
                let nu = self.nu;
                let tau = (p.ell + T::one()) / n * rb.powf(n);
                let [t0, t1, t2] = self.t_derivs(tau, ctrl)?;
                let pw = rb.powf(nu);
                let nt = n * tau;
                let r0 = pw * t0;
                let r1 = pw / rb * (nu * t0 + nt * t1) / rt;
                let r2 = pw / (rb * rb)
                    * (nu * (nu - T::one()) * t0 + (T::c(2.0) * nu + n - T::one()) * nt * t1 + nt * nt * t2)
                    / (rt * rt);
                Ok([r0, r1, r2])
            }
        }
    }

    /// rho R'/R = nu + n tau T'(tau)/T(tau); fails with a node error where T vanishes.
    pub fn script_r(&self, p: &ModelParams<T>, rho: T) -> Result<T> {
        let ctrl = SeriesControl::default();
        match self.kind {
            RadialKind::Constant => Ok(T::zero()),
            RadialKind::HyperbolicOmega => {
                let [r, r1, _] = self.eval_with(p, rho, &ctrl)?;
                if r == T::zero() {
                    return Err(Error::Node("Omega"));
                }
                Ok(rho * r1 / r)
            }
            _ => {
                let tau = (p.ell + T::one()) / p.n * p.rho_bar(rho).powf(p.n);
                let logd = if self.laguerre_k.is_none() && !self.kind.is_tricomi() {
                    kummer_logderiv_with(self.a, self.b, tau, &ctrl)?
                } else {
                    let [t0, t1, _] = self.t_derivs(tau, &ctrl)?;
                    if t0.abs() <= T::c(64.0) * T::epsilon() * t1.abs().max(T::min_positive_value()) {
                        return Err(Error::Node("radial factor"));
                    }
                    t1 / t0
                };
                Ok(self.nu + p.n * tau * logd)
            }
        }
    }
}

/// Free-function form of [`RadialSolution::eval`] returning R only.
pub fn radial_kummer<T: Scalar>(p: &ModelParams<T>, sol: &RadialSolution<T>, rho: T) -> Result<T> {
    if !sol.kind.is_kummer_based() {
        return Err(Error::Parameter { func: "radial_kummer", detail: format!("{:?}", sol.kind) });
    }
    Ok(sol.eval(p, rho)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(n: f64, ell: f64) -> ModelParams<f64> {
        ModelParams::new(n, ell, 1.1).unwrap()
    }

    fn ode_residual(p: &ModelParams<f64>, s: &RadialSolution<f64>, rho: f64) -> f64 {
        let [r0, r1, r2] = s.eval(p, rho).unwrap();
        let g = p.coeff_g(rho);
        let l2 = s.lambda * s.lambda;
        let res = r2 + g * (r1 / rho - l2 * r0 / (rho * rho));
        res / (r2.abs() + g.abs() * (r1.abs() / rho + l2 * r0.abs() / (rho * rho)))
    }

    #[test]
    fn lambda_one_plus_branch_is_linear() {
        let p = params(2.0, 2.0);
        let s = RadialSolution::kummer(&p, RadialKind::KummerPlus, 1.0).unwrap();
        assert_eq!(s.nu, 1.0);
        assert!(s.a.abs() < 1e-15);
        for &rb in &[0.3, 1.0, 2.2] {
            let r = radial_kummer(&p, &s, rb * p.rho_t()).unwrap();
            assert_relative_eq!(r, rb, max_relative = 1e-14);
            assert_relative_eq!(s.script_r(&p, rb * p.rho_t()).unwrap(), 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn lambda_zero_exponents() {
        let (plus, minus) = nu_pm(2.5, 0.0);
        assert_eq!(plus, 0.0);
        assert_eq!(minus, -2.5);
    }

    #[test]
    fn analytic_derivatives_solve_radial_equation() {
        for &(n, ell, lam) in &[(2.0, 2.0, 1.0), (2.0, 0.0, 2.0), (2.0, 4.0, 3.0), (3.0, 0.7, 1.5), (1.5, -0.4, 2.0)] {
            let p = params(n, ell);
            for kind in [RadialKind::KummerPlus, RadialKind::KummerMinus] {
                let s = RadialSolution::kummer(&p, kind, lam).unwrap();
                if s.b <= 0.0 && s.b == s.b.round() {
                    assert!(s.eval(&p, 0.5 * p.rho_t()).is_err());
                    continue;
                }
                for &rb in &[0.35, 0.6, 0.95, 1.4, 1.9] {
                    assert!(ode_residual(&p, &s, rb * p.rho_t()).abs() < 1e-9, "{n} {ell} {lam} {kind:?} {rb}");
                }
            }
        }
    }

    #[test]
    fn tricomi_branch_solves_radial_equation() {
        let p = params(2.0, 0.3);
        for kind in [RadialKind::TricomiPlus, RadialKind::TricomiMinus] {
            let s = RadialSolution::kummer(&p, kind, 1.3).unwrap();
            for &rb in &[0.4, 0.8, 1.3] {
                assert!(ode_residual(&p, &s, rb * p.rho_t()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn laguerre_factor_matches_scaled_kummer() {
        // n = 2, lambda = 3, ell = 4 is the k = 2 case with alpha_bar = 7
        let p = params(2.0, 4.0);
        let lag = RadialSolution::laguerre(&p, 3.0, 2).unwrap();
        let kum = RadialSolution::kummer(&p, RadialKind::KummerPlus, 3.0).unwrap();
        assert_relative_eq!(lag.b, 8.0, max_relative = 1e-12);
        // M(-2, 8, z) = 2! 7! / 9! L_2^(7)(z) = L / 36
        for &rb in &[0.5, 1.2] {
            let rho = rb * p.rho_t();
            let l = lag.eval(&p, rho).unwrap();
            let k = kum.eval(&p, rho).unwrap();
            for i in 0..3 {
                assert_relative_eq!(l[i], 36.0 * k[i], max_relative = 1e-10, epsilon = 1e-12);
            }
            assert!(ode_residual(&p, &lag, rho).abs() < 1e-10);
        }
    }

    #[test]
    fn script_r_matches_log_derivative() {
        let p = params(2.0, 0.0);
        let s = RadialSolution::kummer(&p, RadialKind::KummerPlus, 2.0).unwrap();
        let rho = 0.5 * p.rho_t();
        let h = 1e-5 * rho;
        let ln = |r: f64| radial_kummer(&p, &s, r).unwrap().abs().ln();
        let fd = rho * (ln(rho + h) - ln(rho - h)) / (2.0 * h);
        assert_relative_eq!(s.script_r(&p, rho).unwrap(), fd, max_relative = 1e-6);
    }

    #[test]
    fn omega_kind_solves_lambda_zero_equation() {
        let p = params(2.0, 1.0).with_constants(1.0, 0.7, -0.2);
        let s = RadialSolution::hyperbolic_omega();
        assert!(ode_residual(&p, &s, 1.7 * p.rho_t()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn exponents_match_frobenius_roots(ell in -0.99f64..30.0, lam in 0.0f64..10.0) {
            let (p1, m1) = nu_pm(ell, lam);
            let (p2, m2) = frobenius_roots(ell, lam);
            let scale = 1.0 + ell.abs() + lam * lam;
            prop_assert!((p1 - p2).abs() <= 64.0 * f64::EPSILON * scale);
            prop_assert!((m1 - m2).abs() <= 64.0 * f64::EPSILON * scale);
            prop_assert!(p1 >= 0.0 && m1 <= 0.0);
            for nu in [p1, m1] {
                let r = nu * nu + ell * nu - lam * lam * (ell + 1.0);
                prop_assert!(r.abs() <= 1e-12 * (nu * nu + ell.abs() * nu.abs() + lam * lam * (ell + 1.0)).max(1.0));
            }
        }
    }
}
