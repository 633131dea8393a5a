//! Characteristics of the mixed-type momentum equation, the slope of the
//! characteristic curves, and the coefficients of the canonical forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxwell::{ModelParams, RegionTag, EPS_PAR};
use crate::Scalar;

/// Radii below `RHO_FLOOR * rho_T` saturate the elliptic characteristics.
pub const RHO_FLOOR: f64 = 1e-6;

/// Which of the four characteristic families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharacteristicKind {
    HyperbolicPlus,
    HyperbolicMinus,
    EllipticPlus,
    EllipticMinus,
}

impl CharacteristicKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CharacteristicKind::HyperbolicPlus => "hyperbolic-plus",
            CharacteristicKind::HyperbolicMinus => "hyperbolic-minus",
            CharacteristicKind::EllipticPlus => "elliptic-plus",
            CharacteristicKind::EllipticMinus => "elliptic-minus",
        }
    }

    pub const ALL: [CharacteristicKind; 4] = [
        CharacteristicKind::HyperbolicPlus,
        CharacteristicKind::HyperbolicMinus,
        CharacteristicKind::EllipticPlus,
        CharacteristicKind::EllipticMinus,
    ];

    pub fn is_hyperbolic(self) -> bool {
        matches!(self, CharacteristicKind::HyperbolicPlus | CharacteristicKind::HyperbolicMinus)
    }

    /// +1 for the plus families, -1 for the minus families.
    pub fn sign(self) -> f64 {
        match self {
            CharacteristicKind::HyperbolicPlus | CharacteristicKind::EllipticPlus => 1.0,
            _ => -1.0,
        }
    }
}

impl core::str::FromStr for CharacteristicKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CharacteristicKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parameter { func: "CharacteristicKind", detail: format!("unknown kind {s:?}") })
    }
}

/// Value of a characteristic function. `saturated` is set when rho was below
/// the floor and the value was taken at the floor instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiValue<T> {
    pub value: T,
    pub saturated: bool,
}

/// Branch selector for the canonical coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Elliptic,
    Hyperbolic,
}

fn upper_band<T: Scalar>(p: &ModelParams<T>) -> T {
    p.rho_t() * (T::one() + T::c(EPS_PAR))
}

fn lower_band<T: Scalar>(p: &ModelParams<T>) -> T {
    p.rho_t() * (T::one() - T::c(EPS_PAR))
}

/// Radial part of the characteristic function (without the +-theta term).
fn radial_part<T: Scalar>(p: &ModelParams<T>, hyperbolic: bool, rho: T) -> (T, bool) {
    let two = T::c(2.0);
    let pref = two / p.n * (p.ell + T::one()).sqrt();
    if hyperbolic {
        let t = (p.rho_bar(rho).powf(p.n) - T::one()).max(T::zero()).sqrt();
        (pref * (t - t.atan()), false)
    } else {
        let floor = T::c(RHO_FLOOR) * p.rho_t();
        let saturated = rho < floor;
        let rb = p.rho_bar(rho.max(floor));
        let xn = rb.powf(p.n);
        let t = (T::one() - xn).max(T::zero()).sqrt();
        // artanh t = ln(1 + t) - (n/2) ln(rho_bar), exact for t = sqrt(1 - rho_bar^n)
        let artanh = (T::one() + t).ln() - p.n / two * rb.ln();
        (pref * (t - artanh), saturated)
    }
}

/// chi = (2/n) sqrt(ell+1) (t - arctan t) +- theta with t = sqrt(rho_bar^n - 1) in the
/// hyperbolic region, and with t = sqrt(1 - rho_bar^n) and artanh in the elliptic one.
pub fn characteristic_chi<T: Scalar>(
    p: &ModelParams<T>,
    kind: CharacteristicKind,
    rho: T,
    theta: T,
) -> Result<ChiValue<T>> {
    if kind.is_hyperbolic() && rho < lower_band(p) {
        return Err(Error::Region { rho: rho.f64(), expected: "hyperbolic" });
    }
    if !kind.is_hyperbolic() && (rho > upper_band(p) || rho <= T::zero()) {
        return Err(Error::Region { rho: rho.f64(), expected: "elliptic" });
    }
    let (r, saturated) = radial_part(p, kind.is_hyperbolic(), rho);
    Ok(ChiValue { value: r + T::c(kind.sign()) * theta, saturated })
}

/// Slope d rho / d theta = rho / sqrt(+-Delta) of a characteristic; `+inf` on
/// the parabolic circle.
pub fn slope_rho_theta<T: Scalar>(p: &ModelParams<T>, rho: T) -> T {
    if p.classify(rho) == RegionTag::Parabolic {
        return T::infinity();
    }
    let d = p.delta(rho).abs();
    if d == T::zero() {
        return T::infinity();
    }
    rho / d.sqrt()
}

/// Coefficient of the first-derivative terms in the canonical forms:
/// kappa_e = [n(ell+1) + (n-2)D + 2D^2] / [4 (-D)^(3/2)],
/// kappa_h = [n(ell+1) + (n-2)D - 2D^2] / [8 D^(3/2)].
pub fn canonical_kappa<T: Scalar>(p: &ModelParams<T>, rho: T, branch: Branch) -> Result<T> {
    let d = -p.coeff_g(rho);
    let two = T::c(2.0);
    let base = p.n * (p.ell + T::one()) + (p.n - two) * d;
    match branch {
        Branch::Elliptic if d < T::zero() => Ok((base + two * d * d) / (T::c(4.0) * (-d).powf(T::c(1.5)))),
        Branch::Hyperbolic if d > T::zero() => Ok((base - two * d * d) / (T::c(8.0) * d.powf(T::c(1.5)))),
        Branch::Elliptic => Err(Error::Region { rho: rho.f64(), expected: "elliptic" }),
        Branch::Hyperbolic => Err(Error::Region { rho: rho.f64(), expected: "hyperbolic" }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(n: f64, ell: f64) -> ModelParams<f64> {
        ModelParams::new(n, ell, 0.8).unwrap()
    }

    #[test]
    fn threshold_circle_gives_pure_angle() {
        let m = p(2.0, 2.0);
        for kind in CharacteristicKind::ALL {
            let c = characteristic_chi(&m, kind, m.rho_t(), 0.3).unwrap();
            assert!((c.value - kind.sign() * 0.3).abs() < 1e-15);
        }
    }

    #[test]
    fn wrong_region_is_rejected() {
        let m = p(2.0, 2.0);
        assert!(characteristic_chi(&m, CharacteristicKind::HyperbolicPlus, 0.5 * m.rho_t(), 0.0).is_err());
        assert!(characteristic_chi(&m, CharacteristicKind::EllipticMinus, 1.5 * m.rho_t(), 0.0).is_err());
    }

    #[test]
    fn elliptic_saturates_near_origin() {
        let m = p(2.0, 0.0);
        let c = characteristic_chi(&m, CharacteristicKind::EllipticPlus, 1e-9 * m.rho_t(), 0.0).unwrap();
        assert!(c.saturated && c.value.is_finite());
        let d = characteristic_chi(&m, CharacteristicKind::EllipticPlus, 1e-3 * m.rho_t(), 0.0).unwrap();
        assert!(!d.saturated && d.value > c.value);
    }

    #[test]
    fn level_set_slope() {
        // theta(rho) along chi = const obeys d theta/d rho = -+ sqrt(+-Delta)/rho.
        let m = p(2.0, 2.0);
        let rho = 1.5 * m.rho_t();
        let h = 1e-5 * rho;
        for kind in [CharacteristicKind::HyperbolicPlus, CharacteristicKind::HyperbolicMinus] {
            let f = |r: f64| characteristic_chi(&m, kind, r, 0.0).unwrap().value;
            let chi_rho = (f(rho + h) - f(rho - h)) / (2.0 * h);
            let chi_theta = kind.sign();
            let dtheta = -chi_rho / chi_theta;
            let expect = -kind.sign() * m.delta(rho).sqrt() / rho;
            assert_relative_eq!(dtheta, expect, max_relative = 1e-6);
        }
    }

    #[test]
    fn slope_blows_up_on_threshold() {
        let m = p(2.0, 1.0);
        assert!(slope_rho_theta(&m, m.rho_t()).is_infinite());
        assert!(slope_rho_theta(&m, 1.0001 * m.rho_t()) > slope_rho_theta(&m, 1.1 * m.rho_t()));
    }

    #[test]
    fn kappa_signs_and_blowup() {
        let m = p(2.0, 0.0);
        assert!(canonical_kappa(&m, 0.5 * m.rho_t(), Branch::Elliptic).unwrap() > 0.0);
        assert!(canonical_kappa(&m, 0.5 * m.rho_t(), Branch::Hyperbolic).is_err());
        let k1 = canonical_kappa(&m, 1.01 * m.rho_t(), Branch::Hyperbolic).unwrap();
        let k2 = canonical_kappa(&m, 1.001 * m.rho_t(), Branch::Hyperbolic).unwrap();
        assert!(k2 > k1 && k1 > 0.0);
    }
}
