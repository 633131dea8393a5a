//! Momentum-space solutions of the linearized equation
//! u_rr + g (u_r/rho + u_thth/rho^2) = 0 in polar momentum coordinates.

mod angular;
mod characteristics;
mod hill;
mod laguerre_cases;
mod radial;

pub use angular::{angular_logderiv, angular_theta, AngularFactor};
pub use characteristics::{
    canonical_kappa, characteristic_chi, slope_rho_theta, Branch, CharacteristicKind, ChiValue, RHO_FLOOR,
};
pub use hill::{
    ell_multiple, hill_coefficient_g, hill_substitution_zeta, hyperbolic_omega, hyperbolic_omega_prime, i_nk, j_nk,
    mu_plus, omega_matched_c1, zeta_bar, BRANCH_TOL, SERIES_CAP,
};
pub use laguerre_cases::{
    laguerre_bruteforce, laguerre_enumerate, laguerre_fixed_ell, LaguerreCase, LaguerreRoot, CASE_TOL,
};
pub use radial::{frobenius_roots, kummer_params, nu_pm, radial_kummer, RadialKind, RadialSolution};

use crate::error::{Error, Result};
use crate::maxwell::ModelParams;
use crate::Scalar;

/// u and its polar derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UDerivs<T> {
    pub u: T,
    pub u_r: T,
    pub u_t: T,
    pub u_rr: T,
    pub u_rt: T,
    pub u_tt: T,
}

fn check_lambda<T: Scalar>(sol: &RadialSolution<T>, fac: &AngularFactor<T>) -> Result<()> {
    let tol = T::c(1e-12) * (T::one() + sol.lambda);
    if (sol.lambda - fac.lambda).abs() > tol {
        return Err(Error::Parameter {
            func: "factorized_u",
            detail: format!("radial lambda {} differs from angular lambda {}", sol.lambda, fac.lambda),
        });
    }
    Ok(())
}

/// u(rho, theta) = R(rho) Theta(theta).
pub fn factorized_u<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<T> {
    Ok(factorized_derivs(p, sol, fac, rho, theta)?.u)
}

/// u with its analytic first and second derivatives in (rho, theta).
pub fn factorized_derivs<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<UDerivs<T>> {
    check_lambda(sol, fac)?;
    let [r0, r1, r2] = sol.eval(p, rho)?;
    let t0 = fac.value(theta);
    let t1 = fac.deriv(theta);
    let t2 = fac.deriv2(theta);
    Ok(UDerivs { u: r0 * t0, u_r: r1 * t0, u_t: r0 * t1, u_rr: r2 * t0, u_rt: r1 * t1, u_tt: r0 * t2 })
}
