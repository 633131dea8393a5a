//! Parameter sets for which the Kummer radial factor terminates as a
//! generalized Laguerre polynomial: a+ = -k, b+ = 1 + alpha_bar.

use serde::Serialize;

use super::radial::{kummer_params, nu_pm};
use crate::Scalar;

/// Residual tolerance for k n ell = (lambda^2 - k n)^2 - lambda^2.
pub const CASE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaguerreCase<T> {
    pub lambda: T,
    pub k: usize,
    pub n: T,
    /// None for the k = 0 family at lambda = 1, which holds for every ell.
    pub ell: Option<T>,
    /// alpha_bar = b+ - 1; None together with `ell`.
    pub alpha_bar: Option<T>,
}

impl<T: Scalar> LaguerreCase<T> {
    /// k n ell - (lambda^2 - k n)^2 + lambda^2, scaled by its largest term.
    pub fn residual(&self) -> T {
        let ell = self.ell.unwrap_or(T::zero());
        let kn = T::of(self.k) * self.n;
        let l2 = self.lambda * self.lambda;
        let d = l2 - kn;
        (kn * ell - d * d + l2) / (kn * ell.abs() + d * d + l2)
    }
}

/// alpha_bar for a case with nu+ = lambda^2 - k n.
fn alpha_bar<T: Scalar>(n: T, ell: T, lambda: T, k: usize) -> T {
    (T::c(2.0) * (lambda * lambda - T::of(k) * n) + ell) / n
}

fn k_max<T: Scalar>(n: T, lambda: T) -> usize {
    let bound = lambda * (lambda * lambda - T::one()).max(T::zero()).sqrt() / n;
    (bound * (T::one() + T::c(CASE_TOL))).floor().to_usize().unwrap_or(0)
}

fn nonzero<T: Scalar>(x: T) -> bool {
    x.abs() > T::c(CASE_TOL)
}

/// All cases for the given n and lambdas with -1 < ell <= ell_max, ordered by
/// lambda then k.
pub fn laguerre_enumerate<T: Scalar>(n: T, lambdas: &[T], ell_max: T) -> Vec<LaguerreCase<T>> {
    let mut out = Vec::new();
    let mut ls: Vec<T> = lambdas.iter().copied().filter(|&l| l >= T::one() - T::c(CASE_TOL)).collect();
    ls.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for lambda in ls {
        let l2 = lambda * lambda;
        if (l2 - T::one()).abs() <= T::c(CASE_TOL) {
            out.push(LaguerreCase { lambda, k: 0, n, ell: None, alpha_bar: None });
        }
        for k in 1..=k_max(n, lambda) {
            let kn = T::of(k) * n;
            let d = l2 - kn;
            let ell = (d * d - l2) / kn;
            if !(ell > -T::one()) || ell > ell_max {
                continue;
            }
            let ab = alpha_bar(n, ell, lambda, k);
            if nonzero(ab) {
                out.push(LaguerreCase { lambda, k, n, ell: Some(ell), alpha_bar: Some(ab) });
            }
        }
    }
    out
}

/// A separation constant admitting a Laguerre factor at fixed (n, ell).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaguerreRoot<T> {
    pub k: usize,
    pub lambda: T,
    pub lambda_sq: T,
    pub alpha_bar: T,
    pub lambda_sq_integer: bool,
}

/// Solves the case condition for lambda at fixed (n, ell), k = 0..=k_limit:
/// lambda^2 = ((2kn + 1) +- sqrt(1 + 4kn(ell+1)))/2, keeping roots with
/// lambda >= 1, k n <= lambda sqrt(lambda^2 - 1) and alpha_bar != 0.
pub fn laguerre_fixed_ell<T: Scalar>(n: T, ell: T, k_limit: usize) -> Vec<LaguerreRoot<T>> {
    let mut out = Vec::new();
    let two = T::c(2.0);
    for k in 0..=k_limit {
        let kn = T::of(k) * n;
        let disc = T::one() + T::c(4.0) * kn * (ell + T::one());
        if disc < T::zero() {
            continue;
        }
        let s = disc.sqrt();
        let mut roots = vec![(two * kn + T::one() + s) / two];
        if s > T::zero() {
            roots.push((two * kn + T::one() - s) / two);
        }
        for l2 in roots {
            if l2 < T::one() - T::c(CASE_TOL) {
                continue;
            }
            let lambda = l2.max(T::one()).sqrt();
            if kn > lambda * (l2 - T::one()).max(T::zero()).sqrt() * (T::one() + T::c(CASE_TOL)) {
                continue;
            }
            let (nu, _) = nu_pm(ell, lambda);
            let (a, b) = kummer_params(n, ell, lambda, nu);
            if (a + T::of(k)).abs() > T::c(CASE_TOL) * (T::one() + T::of(k)) {
                continue;
            }
            let ab = b - T::one();
            if !nonzero(ab) {
                continue;
            }
            let lambda_sq_integer = (l2 - l2.round()).abs() <= T::c(CASE_TOL) * l2.max(T::one());
            out.push(LaguerreRoot { k, lambda, lambda_sq: l2, alpha_bar: ab, lambda_sq_integer });
        }
    }
    out.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).unwrap().then(a.k.cmp(&b.k)));
    out
}

/// Direct test: which k in 0..=k_limit give a+ = -k for this (n, ell, lambda),
/// using the exponent formula rather than the closed-form condition.
pub fn laguerre_bruteforce<T: Scalar>(n: T, ell: T, lambda: T, k_limit: usize) -> Vec<(usize, T)> {
    let (nu, _) = nu_pm(ell, lambda);
    let (a, b) = kummer_params(n, ell, lambda, nu);
    (0..=k_limit)
        .filter(|&k| (a + T::of(k)).abs() <= T::c(CASE_TOL) * (T::one() + T::of(k)))
        .map(|k| (k, b - T::one()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn n2_lambda3_catalog() {
        let cs = laguerre_enumerate(2.0, &[3.0], 100.0);
        let got: Vec<_> = cs.iter().map(|c| (c.k, c.ell.unwrap(), c.alpha_bar.unwrap())).collect();
        assert_eq!(got.len(), 3);
        for (g, e) in got.iter().zip([(1, 20.0, 17.0), (2, 4.0, 7.0), (3, 0.0, 3.0)]) {
            assert_eq!(g.0, e.0);
            assert_relative_eq!(g.1, e.1, epsilon = 1e-12);
            assert_relative_eq!(g.2, e.2, epsilon = 1e-12);
        }
    }

    #[test]
    fn n2_lambda4_catalog() {
        let cs = laguerre_enumerate(2.0f64, &[4.0], 100.0);
        let expect = [(1, 90.0, 59.0), (2, 32.0, 28.0), (3, 14.0, 17.0), (4, 6.0, 11.0), (5, 2.0, 7.0), (6, 0.0, 4.0), (7, -6.0 / 7.0, 11.0 / 7.0)];
        assert_eq!(cs.len(), expect.len());
        for (c, e) in cs.iter().zip(expect) {
            assert_eq!(c.k, e.0);
            assert_relative_eq!(c.ell.unwrap(), e.1, epsilon = 1e-12);
            assert_relative_eq!(c.alpha_bar.unwrap(), e.2, epsilon = 1e-12);
            assert!(c.residual().abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_two_and_one() {
        let cs = laguerre_enumerate(2.0, &[2.0, 1.0], 10.0);
        assert_eq!(cs[0].k, 0);
        assert!(cs[0].ell.is_none());
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].k, 1);
        assert_relative_eq!(cs[1].ell.unwrap(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(cs[1].alpha_bar.unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn fixed_ell_table_n2_l2() {
        let roots: Vec<_> = laguerre_fixed_ell(2.0, 2.0, 12).into_iter().filter(|r| r.lambda_sq_integer).collect();
        let expect = [(0, 1.0, 2.0), (1, 5.0, 4.0), (2, 8.0, 5.0), (5, 16.0, 7.0), (7, 21.0, 8.0), (12, 33.0, 10.0)];
        assert_eq!(roots.len(), expect.len());
        for (r, e) in roots.iter().zip(expect) {
            assert_eq!(r.k, e.0);
            assert_relative_eq!(r.lambda_sq, e.1, max_relative = 1e-12);
            assert_relative_eq!(r.alpha_bar, e.2, max_relative = 1e-12);
        }
    }

    #[test]
    fn bruteforce_confirms_lambda_four() {
        let hits = laguerre_bruteforce(2.0, 2.0, 4.0, 50);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].0, 5);
        assert_relative_eq!(hits[0].1, 7.0, max_relative = 1e-12);
    }

    #[test]
    fn enumerated_cases_have_terminating_kummer_parameters() {
        for &n in &[1.0, 2.0, 3.0, 2.5] {
            let lams: Vec<f64> = (2..8).map(|i| i as f64 * 0.75).chain([1.0]).collect();
            for c in laguerre_enumerate(n, &lams, 500.0) {
                let Some(ell) = c.ell else { continue };
                let (nu, _) = nu_pm(ell, c.lambda);
                let (a, b) = kummer_params(n, ell, c.lambda, nu);
                assert!((a + c.k as f64).abs() < 1e-9);
                assert!((b - 1.0 - c.alpha_bar.unwrap()).abs() < 1e-9);
                assert!(c.residual().abs() < 1e-9);
                assert!((c.k as f64) * n <= c.lambda * (c.lambda * c.lambda - 1.0).sqrt() + 1e-9);
            }
        }
    }
}
