//! Generalized Maxwell distribution F(z) ~ z^ell exp(-c z^n), its derived
//! coefficient functions, and the elliptic/parabolic/hyperbolic split of
//! momentum space at the threshold radius `rho_T`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::gamma;
use crate::Scalar;

/// Relative half-width of the parabolic band around `rho_T`.
pub const EPS_PAR: f64 = 1e-12;

/// Parameters fixing one solution family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams<T> {
    /// Exponent of the speed in the Gaussian-like factor.
    pub n: T,
    /// Power-law exponent of the speed prefactor.
    pub ell: T,
    /// Characteristic velocity; also the mean speed at the threshold radius.
    pub sigma_v: T,
    /// Helmholtz constant; -1/2 for hbar = m = 1.
    pub alpha: T,
    /// Phase constant; 1 for hbar = 1.
    pub beta: T,
    /// Integration constant of the Hill substitution.
    pub c0: T,
    /// Amplitude of the hyperbolic solution.
    pub c1: T,
    /// Additive constant of the hyperbolic solution.
    pub c2: T,
}

/// Type of the linearized momentum-space equation at a radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionTag {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl RegionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionTag::Elliptic => "elliptic",
            RegionTag::Parabolic => "parabolic",
            RegionTag::Hyperbolic => "hyperbolic",
        }
    }
}

impl core::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl<T: Scalar> ModelParams<T> {
    /// Parameters with alpha = -1/2, beta = 1, c0 = c1 = 1, c2 = 0.
    pub fn new(n: T, ell: T, sigma_v: T) -> Result<Self> {
        Self {
            n,
            ell,
            sigma_v,
            alpha: T::c(-0.5),
            beta: T::one(),
            c0: T::one(),
            c1: T::one(),
            c2: T::zero(),
        }
        .validated()
    }

    /// Checks the invariants n > 0, ell > -1, sigma_v > 0, alpha != 0, beta > 0.
    pub fn validated(self) -> Result<Self> {
        let bad = |detail: String| Err(Error::Parameter { func: "ModelParams", detail });
        if !(self.n > T::zero()) {
            return bad(format!("n = {} must be positive", self.n));
        }
        if !(self.ell > -T::one()) {
            return bad(format!("ell = {} must exceed -1", self.ell));
        }
        if !(self.sigma_v > T::zero()) {
            return bad(format!("sigma_v = {} must be positive", self.sigma_v));
        }
        if self.alpha == T::zero() || !self.alpha.is_finite() {
            return bad("alpha must be finite and nonzero".into());
        }
        if !(self.beta > T::zero()) {
            return bad(format!("beta = {} must be positive", self.beta));
        }
        Ok(self)
    }

    pub fn with_alpha(mut self, alpha: T) -> Result<Self> {
        self.alpha = alpha;
        self.validated()
    }

    pub fn with_beta(mut self, beta: T) -> Result<Self> {
        self.beta = beta;
        self.validated()
    }

    pub fn with_constants(mut self, c0: T, c1: T, c2: T) -> Self {
        self.c0 = c0;
        self.c1 = c1;
        self.c2 = c2;
        self
    }

    /// Threshold radius rho_T = sigma_v / |alpha|.
    pub fn rho_t(&self) -> T {
        self.sigma_v / self.alpha.abs()
    }

    /// rho / rho_T.
    pub fn rho_bar(&self, rho: T) -> T {
        rho / self.rho_t()
    }

    /// Width sigma_{v,n,ell} = (sigma_v / sqrt 2) (n / (ell+1))^(1/n), always
    /// derived from sigma_v.
    pub fn sigma_nl(&self) -> T {
        self.sigma_v / T::SQRT_2() * (self.n / (self.ell + T::one())).powf(self.n.recip())
    }

    /// c_{n,ell} = 1 / (sigma^n 2^(n/2)), the coefficient of z^n in the exponent.
    pub fn c_nl(&self) -> T {
        let two = T::c(2.0);
        (self.sigma_nl().powf(self.n) * two.powf(self.n / two)).recip()
    }

    /// F(z) = N z^ell / (sigma^ell 2^(ell/2)) exp(-z^n / (sigma^n 2^(n/2))).
    pub fn density_f(&self, z: T, norm: T) -> Result<T> {
        if z < T::zero() {
            return Err(Error::Domain { func: "density_f", detail: format!("speed z = {z} < 0") });
        }
        if z == T::zero() {
            if self.ell < T::zero() {
                return Err(Error::Domain { func: "density_f", detail: "z = 0 is singular for ell < 0".into() });
            }
            return Ok(if self.ell == T::zero() { norm } else { T::zero() });
        }
        let two = T::c(2.0);
        let s = self.sigma_nl();
        let pre = (z / s).powf(self.ell) / two.powf(self.ell / two);
        Ok(norm * pre * (-z.powf(self.n) * self.c_nl()).exp())
    }

    /// N making F a probability density on z in (0, inf):
    /// N = n / (Gamma((ell+1)/n) sigma sqrt 2).
    pub fn speed_normalization(&self) -> Result<T> {
        let g = gamma((self.ell + T::one()) / self.n)?;
        Ok(self.n / (g * self.sigma_nl() * T::SQRT_2()))
    }

    /// h(z) = (alpha^2 / z^2)(ell - n z^n / (sigma^n 2^(n/2))).
    pub fn coeff_h(&self, z: T) -> Result<T> {
        if !(z > T::zero()) {
            return Err(Error::Domain { func: "coeff_h", detail: format!("speed z = {z} must be positive") });
        }
        let a2 = self.alpha * self.alpha;
        Ok(a2 / (z * z) * (self.ell - self.n * z.powf(self.n) * self.c_nl()))
    }

    /// Momentum form hbar(rho) = ell/rho^2 - n |alpha|^n rho^(n-2) / (sigma^n 2^(n/2)).
    pub fn coeff_hbar(&self, rho: T) -> T {
        let aa = self.alpha.abs();
        self.ell / (rho * rho) - self.n * aa.powf(self.n) * rho.powf(self.n - T::c(2.0)) * self.c_nl()
    }

    /// g(rho) = 1 + rho^2 hbar(rho) = (1 - (rho/rho_T)^n)(ell + 1).
    pub fn coeff_g(&self, rho: T) -> T {
        (T::one() - self.rho_bar(rho).powf(self.n)) * (self.ell + T::one())
    }

    /// Determinant from its definition, n |alpha|^n rho^n / (sigma^n 2^(n/2)) - 1 - ell.
    /// Equals -g.
    pub fn delta(&self, rho: T) -> T {
        self.n * (self.alpha.abs() * rho).powf(self.n) * self.c_nl() - T::one() - self.ell
    }

    /// Derivative g'(rho) = -n (ell+1) rho^(n-1) / rho_T^n.
    pub fn coeff_g_prime(&self, rho: T) -> T {
        -self.n * (self.ell + T::one()) * self.rho_bar(rho).powf(self.n) / rho
    }

    /// Region of rho, with a relative band of [`EPS_PAR`] counted as parabolic.
    pub fn classify(&self, rho: T) -> RegionTag {
        let rt = self.rho_t();
        if (rho - rt).abs() <= T::c(EPS_PAR) * rt {
            RegionTag::Parabolic
        } else if rho < rt {
            RegionTag::Elliptic
        } else {
            RegionTag::Hyperbolic
        }
    }
}
