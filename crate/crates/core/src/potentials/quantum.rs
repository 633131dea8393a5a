//! Closed form of Q = (alpha/beta) Lap(sqrt f)/sqrt f for a factorized
//! momentum solution, and U from the Hamilton-Jacobi balance.

use crate::error::{Error, Result};
use crate::maxwell::ModelParams;
use crate::momentum::{AngularFactor, RadialSolution};
use crate::Scalar;

/// Arguments z1 = Rs - 1, z2 = Rs - lambda^2, z3 = g, z4 = Upsilon, where Rs is
/// rho R'/R and Upsilon is Theta'/Theta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QPotentialArgs<T> {
    pub z1: T,
    pub z2: T,
    pub z3: T,
    pub z4: T,
}

/// Coefficient A^(k)(z1, z2, z3); homogeneous of degree 4 in (z1, z2).
fn a_k<T: Scalar>(n: T, ell: T, lambda: T, k: usize, z1: T, z2: T, z3: T) -> T {
    let one = T::one();
    let l2 = lambda * lambda;
    match k {
        0 => z2 * z2 * z2 * (l2 * z1 * (one - z3) * z3 + z2 * ((one - n) * z3 + n * (ell + one))),
        1 => {
            let inner = z1 * z2 * (T::c(2.0) * z3 * z3 + (T::c(3.0) + n) * (one - z3) + n * ell);
            z1 * z2 * (inner + T::c(3.0) * (one - z3) * (z2 * z2 * z3 - l2 * z1 * z1))
        }
        2 => z1 * z1 * z1 * (z1 - z2 * (one - z3)),
        _ => T::zero(),
    }
}

/// (1/2)(z3-1)^2 + (z3-1)(n-1) - n ell.
fn b_bracket<T: Scalar>(n: T, ell: T, z3: T) -> T {
    let d = z3 - T::one();
    d * d / T::c(2.0) + d * (n - T::one()) - n * ell
}

impl<T: Scalar> QPotentialArgs<T> {
    pub fn from_solution(
        p: &ModelParams<T>,
        sol: &RadialSolution<T>,
        fac: &AngularFactor<T>,
        rho: T,
        theta: T,
    ) -> Result<Self> {
        let rs = sol.script_r(p, rho)?;
        let l2 = sol.lambda * sol.lambda;
        Ok(Self { z1: rs - T::one(), z2: rs - l2, z3: p.coeff_g(rho), z4: fac.logderiv(theta)? })
    }

    pub fn a_coeff(&self, n: T, ell: T, lambda: T, k: usize) -> T {
        a_k(n, ell, lambda, k, self.z1, self.z2, self.z3)
    }

    /// Script A = (z3 - 1) sum_k A^(k) z4^(2k) / (z1^2 z4^2 + z3 z2^2)^3.
    pub fn script_a(&self, n: T, ell: T, lambda: T) -> T {
        let w = self.z4 * self.z4;
        let den = self.z1 * self.z1 * w + self.z3 * self.z2 * self.z2;
        let sum = self.a_coeff(n, ell, lambda, 0)
            + self.a_coeff(n, ell, lambda, 1) * w
            + self.a_coeff(n, ell, lambda, 2) * w * w;
        (self.z3 - T::one()) * sum / (den * den * den)
    }

    /// Script B = (z1^2 z4^2 + z2^2) / (z1^2 z4^2 + z3 z2^2)^2 times the bracket.
    pub fn script_b(&self, n: T, ell: T) -> T {
        let w = self.z4 * self.z4;
        let den = self.z1 * self.z1 * w + self.z3 * self.z2 * self.z2;
        (self.z1 * self.z1 * w + self.z2 * self.z2) / (den * den) * b_bracket(n, ell, self.z3)
    }

    /// Script C = A + B.
    pub fn script_c(&self, n: T, ell: T, lambda: T) -> T {
        self.script_a(n, ell, lambda) + self.script_b(n, ell)
    }
}

/// Q = alpha rho^2 / (2 beta u^2) C(z1, z2, z3, z4), evaluated as written.
/// Fails on nodal lines of u.
pub fn quantum_potential_literal<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<T> {
    let z = QPotentialArgs::from_solution(p, sol, fac, rho, theta)?;
    let u = sol.eval(p, rho)?[0] * fac.value(theta);
    Ok(p.alpha * rho * rho / (T::c(2.0) * p.beta * u * u) * z.script_c(p.n, p.ell, sol.lambda))
}

/// The same closed form with u^2 cleared from every denominator. With
/// P = rho R' - R, S = rho R' - lambda^2 R and D = P^2 Theta'^2 + g S^2 Theta^2:
/// Q = (alpha rho^2 / 2 beta) [(g-1) sum_k A^(k)(P,S,g) Theta'^2k Theta^(4-2k) / D^3
///     + (P^2 Theta'^2 + S^2 Theta^2) b / D^2].
/// Finite on nodal lines; fails where D = 0 (fold of the map).
pub fn quantum_potential<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<T> {
    let [r0, r1, _] = sol.eval(p, rho)?;
    let (t0, t1) = (fac.value(theta), fac.deriv(theta));
    let lam = sol.lambda;
    let pp = rho * r1 - r0;
    let ss = rho * r1 - lam * lam * r0;
    let g = p.coeff_g(rho);
    let (n, ell) = (p.n, p.ell);
    let (a, b) = (pp * pp * t1 * t1, ss * ss * t0 * t0);
    let d = a + g * b;
    if d == T::zero() || !d.is_finite() {
        return Err(Error::Node("fold line of the map"));
    }
    let t02 = t0 * t0;
    let t12 = t1 * t1;
    let na = a_k(n, ell, lam, 0, pp, ss, g) * t02 * t02
        + a_k(n, ell, lam, 1, pp, ss, g) * t12 * t02
        + a_k(n, ell, lam, 2, pp, ss, g) * t12 * t12;
    let bracket = (g - T::one()) * na / (d * d * d) + (a + b) * b_bracket(n, ell, g) / (d * d);
    Ok(p.alpha * rho * rho / (T::c(2.0) * p.beta) * bracket)
}

/// |v|^2 / (4 alpha beta) with |v| = |alpha| rho.
pub fn kinetic_term<T: Scalar>(p: &ModelParams<T>, rho: T) -> T {
    let v = p.alpha.abs() * rho;
    v * v / (T::c(4.0) * p.alpha * p.beta)
}

/// U = |v|^2/(4 alpha beta) - Q + E.
pub fn classical_potential<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
    energy: T,
) -> Result<T> {
    Ok(kinetic_term(p, rho) - quantum_potential(p, sol, fac, rho, theta)? + energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::RadialKind;
    use approx::assert_relative_eq;

    #[test]
    fn node_free_form_matches_literal() {
        for &(n, ell, lam) in &[(2.0, 0.0, 2.0), (2.0, 4.0, 3.0), (2.0, 2.0, 4.0), (3.0, 1.5, 2.5)] {
            let p = ModelParams::new(n, ell, 1.0).unwrap();
            let sol = RadialSolution::kummer(&p, RadialKind::KummerPlus, lam).unwrap();
            let fac = AngularFactor::new(lam, 0.3, 1.0).unwrap();
            for &(rb, th) in &[(0.4, 0.2), (0.8, 0.7), (1.6, 0.1)] {
                let rho = rb * p.rho_t();
                let a = quantum_potential(&p, &sol, &fac, rho, th).unwrap();
                let b = quantum_potential_literal(&p, &sol, &fac, rho, th).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn high_precision_reference_values() {
        // Lap(sqrt f)/sqrt f evaluated to 40 digits through the inverse-function
        // Hessian of the map, Theta = cos(lambda theta), sigma_v = 1.
        let cases = [
            (2.0, 0.0, 2.0, 0.5, 0.3, 0.8899911774323482),
            (2.0, 4.0, 3.0, 1.6, 0.1, 1.670856765957366),
            (2.0, 2.0, 4.0, 1.6, 0.05, 78.45757878927005),
            (3.0, 1.5, 2.5, 0.7, 0.4, 0.6266836931265594),
            (2.0, 1.0, 2.0, 0.5, 0.3, 0.6927328184535133),
        ];
        for (n, ell, lam, rb, th, want) in cases {
            let p = ModelParams::new(n, ell, 1.0).unwrap();
            let sol = RadialSolution::kummer(&p, RadialKind::KummerPlus, lam).unwrap();
            let q = quantum_potential(&p, &sol, &AngularFactor::cos(lam), rb * p.rho_t(), th).unwrap();
            assert_relative_eq!(q, want, max_relative = 1e-10);
        }
    }

    #[test]
    fn lambda_zero_constant_reduces_to_vortex_form() {
        // At lambda = 0, R = 1: A^(0) = A^(1) = 0, A^(2) = 1 at (-1, 0, g).
        for &(n, ell) in &[(4.0, 6.0), (2.0, 3.5)] {
            for &g in &[-3.0, 0.2, 0.9] {
                let z = QPotentialArgs { z1: -1.0, z2: 0.0, z3: g, z4: 0.0 };
                assert_eq!(z.a_coeff(n, ell, 0.0, 0), 0.0);
                assert_eq!(z.a_coeff(n, ell, 0.0, 1), 0.0);
                assert_eq!(z.a_coeff(n, ell, 0.0, 2), 1.0);
            }
        }
    }

    #[test]
    fn kinetic_sign() {
        let p = ModelParams::new(2.0, 0.0, 1.0).unwrap();
        assert_relative_eq!(kinetic_term(&p, 2.0), -0.5, max_relative = 1e-15);
    }

    #[test]
    fn u_is_independent_of_energy_level() {
        // Shifting E together with the constant in Q leaves U fixed.
        let p = ModelParams::new(2.0, 0.0, 1.0).unwrap();
        let sol = RadialSolution::kummer(&p, RadialKind::KummerPlus, 2.0).unwrap();
        let fac = AngularFactor::cos(2.0);
        let (rho, th) = (0.6, 0.2);
        let q = quantum_potential(&p, &sol, &fac, rho, th).unwrap();
        for es in [0.0, 1.5, -3.0] {
            let u = kinetic_term(&p, rho) - (q + es) + es;
            let u0 = classical_potential(&p, &sol, &fac, rho, th, 0.0).unwrap();
            assert_relative_eq!(u, u0, max_relative = 1e-14);
        }
    }
}
