//! Closed-form vortex state for lambda = 0, R = const (hbar = m = 1,
//! alpha = -1/2, beta = 1). The flux circulates as sigma_r sigma_v / r
//! around the origin and the density is a generalized Maxwell profile in
//! sigma_r / r.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::gamma;
use crate::verifier::fd::{fd_derivative, Order};
use crate::Scalar;

/// Sign of rho_T^2 sigma_r^2 - ell^2, which fixes the shape of U.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsiRegime {
    /// sigma_r sigma_v < ell/2: U has two zeros and decays as +1/r^2.
    TwoZeros,
    /// sigma_r sigma_v = ell/2: one zero, decay -1/r^(n+2).
    Critical,
    /// sigma_r sigma_v > ell/2: one zero, decay -1/r^2.
    OneZero,
}

impl PsiRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            PsiRegime::TwoZeros => "two-zeros",
            PsiRegime::Critical => "critical",
            PsiRegime::OneZero => "one-zero",
        }
    }

    /// Expected large-r power of U, as (sign, exponent) with U ~ sign / r^exponent.
    pub fn asymptotic(self, n: f64) -> (f64, f64) {
        match self {
            PsiRegime::TwoZeros => (1.0, 2.0),
            PsiRegime::Critical => (-1.0, n + 2.0),
            PsiRegime::OneZero => (-1.0, 2.0),
        }
    }
}

impl core::str::FromStr for PsiRegime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-zeros" => Ok(PsiRegime::TwoZeros),
            "critical" => Ok(PsiRegime::Critical),
            "one-zero" => Ok(PsiRegime::OneZero),
            _ => Err(Error::Parameter { func: "PsiRegime", detail: format!("unknown regime {s:?}") }),
        }
    }
}

/// Everything observable at one point of the vortex state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiSample<T> {
    pub density: T,
    pub phase: T,
    pub q_pot: T,
    pub u_pot: T,
    pub vx: T,
    pub vy: T,
}

/// Parameters of the vortex state. E is fixed to 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiModel<T> {
    pub n: T,
    pub ell: T,
    /// Coordinate length scale sigma_r.
    pub sigma_r: T,
    pub sigma_v: T,
}

/// Relative band of |C| / ell^2 treated as the critical regime.
const CRITICAL_TOL: f64 = 1e-12;

impl<T: Scalar> PsiModel<T> {
    /// Requires n > 0, sigma_r > 0, sigma_v > 0 and ell > 2 (normalizability).
    pub fn new(n: T, ell: T, sigma_r: T, sigma_v: T) -> Result<Self> {
        if !(n > T::zero() && sigma_r > T::zero() && sigma_v > T::zero()) {
            return Err(Error::Parameter { func: "PsiModel", detail: "n, sigma_r, sigma_v must be positive".into() });
        }
        if !(ell > T::c(2.0)) {
            return Err(Error::Divergence(format!("normalization needs ell > 2, got ell = {ell}")));
        }
        Ok(Self { n, ell, sigma_r, sigma_v })
    }

    /// Picks sigma_r inside the requested regime: ell/(4 sigma_v), ell/(2 sigma_v)
    /// or ell/sigma_v.
    pub fn with_regime(n: T, ell: T, sigma_v: T, regime: PsiRegime) -> Result<Self> {
        let crit = ell / (T::c(2.0) * sigma_v);
        let s = match regime {
            PsiRegime::TwoZeros => crit / T::c(2.0),
            PsiRegime::Critical => crit,
            PsiRegime::OneZero => crit * T::c(2.0),
        };
        Self::new(n, ell, s, sigma_v)
    }

    /// rho_T = sigma_v / |alpha| = 2 sigma_v.
    pub fn rho_t(&self) -> T {
        T::c(2.0) * self.sigma_v
    }

    /// c1 = -rho_T sigma_r, the angular slope of the phase.
    pub fn c1(&self) -> T {
        -self.rho_t() * self.sigma_r
    }

    fn c(&self) -> T {
        (self.ell + T::one()) / self.n
    }

    /// rho_T^2 sigma_r^2 - ell^2.
    pub fn discriminant(&self) -> T {
        let a = self.rho_t() * self.sigma_r;
        a * a - self.ell * self.ell
    }

    /// D = n^2 + 2 n ell + rho_T^2 sigma_r^2.
    pub fn d_nl(&self) -> T {
        let a = self.rho_t() * self.sigma_r;
        self.n * self.n + T::c(2.0) * self.n * self.ell + a * a
    }

    pub fn regime(&self) -> PsiRegime {
        let c = self.discriminant();
        let l2 = self.ell * self.ell;
        if c.abs() <= T::c(CRITICAL_TOL) * l2 {
            PsiRegime::Critical
        } else if c < T::zero() {
            PsiRegime::TwoZeros
        } else {
            PsiRegime::OneZero
        }
    }

    /// N = 1 / ((2 pi sigma_r^2 / n) c^(2/n) Gamma((ell-2)/n)).
    pub fn normalization(&self) -> Result<T> {
        let g = gamma((self.ell - T::c(2.0)) / self.n)?;
        let inv = T::c(2.0) * T::PI() * self.sigma_r * self.sigma_r / self.n * self.c().powf(T::c(2.0) / self.n) * g;
        Ok(inv.recip())
    }

    /// |psi| without the normalization factor.
    fn amplitude_unit(&self, r: T) -> T {
        let y = self.sigma_r / r;
        let half = T::c(0.5);
        self.c().powf(self.ell / (T::c(2.0) * self.n)) * y.powf(self.ell * half) * (-self.c() * half * y.powf(self.n)).exp()
    }

    /// |psi| = sqrt f; 0 at r = 0.
    pub fn amplitude(&self, r: T) -> Result<T> {
        if r < T::zero() {
            return Err(Error::Domain { func: "PsiModel::amplitude", detail: format!("r = {r} < 0") });
        }
        if r == T::zero() {
            return Ok(T::zero());
        }
        Ok(self.normalization()?.sqrt() * self.amplitude_unit(r))
    }

    /// f = |psi|^2; 0 at r = 0.
    pub fn density(&self, r: T) -> Result<T> {
        let a = self.amplitude(r)?;
        Ok(a * a)
    }

    fn need_positive(r: T, func: &'static str) -> Result<()> {
        if r > T::zero() {
            Ok(())
        } else {
            Err(Error::Domain { func, detail: format!("r = {r} must be positive") })
        }
    }

    /// A'/A = -ell/(2r) + (ell+1) sigma^n / (2 r^(n+1)).
    pub fn log_amplitude_deriv(&self, r: T) -> T {
        let two = T::c(2.0);
        -self.ell / (two * r) + (self.ell + T::one()) * self.sigma_r.powf(self.n) / (two * r.powf(self.n + T::one()))
    }

    /// A''/A = p' + p^2 with p = A'/A.
    pub fn amplitude_second_ratio(&self, r: T) -> T {
        let two = T::c(2.0);
        let p = self.log_amplitude_deriv(r);
        let dp = self.ell / (two * r * r)
            - (self.n + T::one()) * (self.ell + T::one()) * self.sigma_r.powf(self.n) / (two * r.powf(self.n + two));
        dp + p * p
    }

    /// Q = -(1/8r^2)[ell^2 - 2(ell+1)(ell+n) y^n + (ell+1)^2 y^2n], y = sigma_r / r.
    pub fn quantum_potential(&self, r: T) -> Result<T> {
        Self::need_positive(r, "PsiModel::quantum_potential")?;
        let yn = (self.sigma_r / r).powf(self.n);
        let (l, n) = (self.ell, self.n);
        let l1 = l + T::one();
        let br = l * l - T::c(2.0) * l1 * (l + n) * yn + l1 * l1 * yn * yn;
        Ok(-br / (T::c(8.0) * r * r))
    }

    /// U = -(1/8r^2)[rho_T^2 sigma_r^2 - ell^2 + 2(ell+1)(ell+n) y^n - (ell+1)^2 y^2n].
    pub fn classical_potential(&self, r: T) -> Result<T> {
        Self::need_positive(r, "PsiModel::classical_potential")?;
        let yn = (self.sigma_r / r).powf(self.n);
        let (l, n) = (self.ell, self.n);
        let l1 = l + T::one();
        let br = self.discriminant() + T::c(2.0) * l1 * (l + n) * yn - l1 * l1 * yn * yn;
        Ok(-br / (T::c(8.0) * r * r))
    }

    /// Speed sigma_r sigma_v / r of the azimuthal flux.
    pub fn speed(&self, r: T) -> Result<T> {
        Self::need_positive(r, "PsiModel::speed")?;
        Ok(self.sigma_r * self.sigma_v / r)
    }

    /// Flux velocity at a Cartesian point.
    pub fn velocity(&self, x: T, y: T) -> Result<(T, T)> {
        let r2 = x * x + y * y;
        Self::need_positive(r2, "PsiModel::velocity")?;
        let k = self.sigma_r * self.sigma_v / r2;
        Ok((-k * y, k * x))
    }

    /// Phase (rho_T sigma_r / 2) phi - E t with E = 0.
    pub fn phase(&self, phi: T, _t: T) -> T {
        self.rho_t() * self.sigma_r / T::c(2.0) * phi
    }

    pub fn eval(&self, r: T, phi: T, t: T) -> Result<PsiSample<T>> {
        let (vx, vy) = self.velocity(r * phi.cos(), r * phi.sin())?;
        Ok(PsiSample {
            density: self.density(r)?,
            phase: self.phase(phi, t),
            q_pot: self.quantum_potential(r)?,
            u_pot: self.classical_potential(r)?,
            vx,
            vy,
        })
    }

    /// Radii where U vanishes, ascending. With t = (ell+1)(sigma_r/r)^n the
    /// zeros solve t^2 - 2(ell+n) t - C = 0, so t = ell + n +- sqrt(D).
    pub fn u_zeros(&self) -> Vec<T> {
        let (l, n) = (self.ell, self.n);
        let sd = self.d_nl().sqrt();
        let ts: Vec<T> = match self.regime() {
            PsiRegime::TwoZeros => vec![l + n + sd, l + n - sd],
            PsiRegime::Critical => vec![T::c(2.0) * (l + n)],
            PsiRegime::OneZero => vec![l + n + sd],
        };
        ts.into_iter()
            .filter(|&t| t > T::zero())
            .map(|t| self.sigma_r * ((l + T::one()) / t).powf(n.recip()))
            .collect()
    }

    /// Stationary Schroedinger residual E psi - [-(1/2) Lap psi + U psi] at
    /// (r, phi, t) with analytic derivatives. Returns (|residual|, term scale).
    pub fn schrodinger_residual(&self, r: T, _phi: T, _t: T) -> Result<(T, T)> {
        Self::need_positive(r, "PsiModel::schrodinger_residual")?;
        let a = self.amplitude(r)?;
        let s = self.rho_t() * self.sigma_r / T::c(2.0);
        let t1 = self.amplitude_second_ratio(r) * a;
        let t2 = self.log_amplitude_deriv(r) * a / r;
        let t3 = s * s * a / (r * r);
        let u = self.classical_potential(r)? * a;
        self.residual_terms(t1, t2, t3, u)
    }

    /// The same residual with A' and A'' from central differences at step h.
    pub fn schrodinger_residual_fd(&self, r: T, h: T) -> Result<(T, T)> {
        Self::need_positive(r - T::c(2.0) * h, "PsiModel::schrodinger_residual_fd")?;
        let a = self.amplitude(r)?;
        let s = self.rho_t() * self.sigma_r / T::c(2.0);
        let d1 = fd_derivative(|x| self.amplitude(x), r, Order::First, h)?;
        let d2 = fd_derivative(|x| self.amplitude(x), r, Order::Second, h)?;
        let u = self.classical_potential(r)? * a;
        self.residual_terms(d2, d1 / r, s * s * a / (r * r), u)
    }

    fn residual_terms(&self, a2: T, a1r: T, cent: T, u: T) -> Result<(T, T)> {
        let half = T::c(0.5);
        let res = -half * (a2 + a1r - cent) + u;
        let scale = (half * a2.abs()).max(half * a1r.abs()).max(half * cent.abs()).max(u.abs());
        Ok((res.abs(), scale))
    }

    /// -|v|^2/(4 alpha beta) + U + Q - E at alpha = -1/2, beta = 1, E = 0.
    pub fn hj_residual(&self, r: T) -> Result<T> {
        let v = self.speed(r)?;
        Ok(v * v / T::c(2.0) + self.classical_potential(r)? + self.quantum_potential(r)?)
    }

    /// s-th radial moment of f over the plane, 2 pi sigma^(s+2) N c^((s+2)/n) Gamma((ell-s-2)/n)/n.
    pub fn radial_moment(&self, s: u32) -> Result<T> {
        let sp2 = T::of(s as usize + 2);
        if !(self.ell > sp2) {
            return Err(Error::Divergence(format!("moment s = {s} needs ell > {}, got {}", s + 2, self.ell)));
        }
        let g = gamma((self.ell - sp2) / self.n)?;
        Ok(T::c(2.0) * T::PI() * self.sigma_r.powf(sp2) * self.normalization()? * self.c().powf(sp2 / self.n) * g / self.n)
    }

    /// Standard deviation of r in closed form; needs ell > 4.
    pub fn sigma_r_closed(&self) -> Result<T> {
        if !(self.ell > T::c(4.0)) {
            return Err(Error::Divergence(format!("variance of r needs ell > 4, got {}", self.ell)));
        }
        let n = self.n;
        let g2 = gamma((self.ell - T::c(2.0)) / n)?;
        let g3 = gamma((self.ell - T::c(3.0)) / n)?;
        let g4 = gamma((self.ell - T::c(4.0)) / n)?;
        Ok(self.sigma_r * self.c().powf(n.recip()) / g2 * (g4 * g2 - g3 * g3).sqrt())
    }

    /// Standard deviation of r assembled from the first two moments.
    pub fn sigma_r_from_moments(&self) -> Result<T> {
        let m1 = self.radial_moment(1)?;
        let m2 = self.radial_moment(2)?;
        Ok((m2 - m1 * m1).sqrt())
    }

    /// Line integral of the flux velocity along a closed polyline, by
    /// five-point Gauss-Legendre on each segment.
    pub fn circulation(&self, contour: &[(T, T)]) -> Result<T> {
        if contour.len() < 3 {
            return Err(Error::Parameter { func: "circulation", detail: "contour needs at least 3 vertices".into() });
        }
        let nodes = [
            (0.0, 128.0 / 225.0),
            (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let mut total = T::zero();
        for i in 0..contour.len() {
            let (x0, y0) = contour[i];
            let (x1, y1) = contour[(i + 1) % contour.len()];
            let (dx, dy) = (x1 - x0, y1 - y0);
            let half = T::c(0.5);
            let mut seg = T::zero();
            for &(xi, w) in &nodes {
                let t = half * (T::one() + T::c(xi));
                let (vx, vy) = self.velocity(x0 + t * dx, y0 + t * dy)?;
                seg = seg + T::c(w) * (vx * dx + vy * dy);
            }
            total = total + half * seg;
        }
        Ok(total)
    }

    /// Circulation around a contour that winds exactly once about the origin;
    /// equals (h/2)|c1| = pi |c1| with h = 2 pi.
    pub fn bohr_sommerfeld(&self, contour: &[(T, T)]) -> Result<T> {
        let w = winding_number(contour);
        if w.abs() != 1 {
            return Err(Error::Winding(w));
        }
        Ok(self.circulation(contour)?.abs())
    }

    /// (h/2)|c1| with hbar = 1.
    pub fn quantized_circulation(&self) -> T {
        T::PI() * self.c1().abs()
    }
}

/// Number of turns of a closed polyline around the origin.
pub fn winding_number<T: Scalar>(contour: &[(T, T)]) -> i64 {
    let mut turn = T::zero();
    for i in 0..contour.len() {
        let (x0, y0) = contour[i];
        let (x1, y1) = contour[(i + 1) % contour.len()];
        turn = turn + (x0 * y1 - y0 * x1).atan2(x0 * x1 + y0 * y1);
    }
    (turn / (T::c(2.0) * T::PI())).round().to_i64().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::quad::adaptive_quad;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn circle(r: f64, cx: f64, cy: f64, m: usize) -> Vec<(f64, f64)> {
        (0..m)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
                (cx + r * t.cos(), cy + r * t.sin())
            })
            .collect()
    }

    #[test]
    fn ell_two_diverges() {
        assert!(matches!(PsiModel::new(4.0f64, 2.0, 1.0, 1.0), Err(Error::Divergence(_))));
    }

    #[test]
    fn regimes_from_sigma() {
        for reg in [PsiRegime::TwoZeros, PsiRegime::Critical, PsiRegime::OneZero] {
            let m = PsiModel::with_regime(4.0f64, 6.0, 1.0, reg).unwrap();
            assert_eq!(m.regime(), reg);
        }
    }

    #[test]
    fn normalization_against_quadrature() {
        let m = PsiModel::new(4.0f64, 6.0, 1.3, 1.0).unwrap();
        let tot = adaptive_quad(|r| Ok(2.0 * std::f64::consts::PI * r * m.density(r)?), 0.0, f64::INFINITY, 1e-12).unwrap();
        assert_relative_eq!(tot, 1.0, max_relative = 1e-9);
        assert_relative_eq!(m.radial_moment(0).unwrap(), 1.0, max_relative = 1e-13);
    }

    #[test]
    fn moment_against_quadrature() {
        let m = PsiModel::new(4.0f64, 8.0, 0.7, 1.0).unwrap();
        let q = adaptive_quad(|r| Ok(2.0 * std::f64::consts::PI * r * r * m.density(r)?), 0.0, f64::INFINITY, 1e-12)
            .unwrap();
        assert_relative_eq!(q, m.radial_moment(1).unwrap(), max_relative = 1e-9);
        assert!(matches!(m.radial_moment(6), Err(Error::Divergence(_))));
    }

    #[test]
    fn sigma_r_closed_matches_moments() {
        let m = PsiModel::new(4.0f64, 8.0, 0.7, 1.0).unwrap();
        assert_relative_eq!(m.sigma_r_closed().unwrap(), m.sigma_r_from_moments().unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn zeros_of_u() {
        for reg in [PsiRegime::TwoZeros, PsiRegime::Critical, PsiRegime::OneZero] {
            let m = PsiModel::with_regime(4.0f64, 6.0, 1.0, reg).unwrap();
            let z = m.u_zeros();
            assert_eq!(z.len(), if reg == PsiRegime::TwoZeros { 2 } else { 1 });
            for r in z {
                let scale = m.quantum_potential(r).unwrap().abs();
                assert!(m.classical_potential(r).unwrap().abs() < 1e-9 * scale.max(1.0), "{reg:?} {r}");
            }
        }
    }

    #[test]
    fn schrodinger_analytic_and_fd() {
        for reg in [PsiRegime::TwoZeros, PsiRegime::Critical, PsiRegime::OneZero] {
            let m = PsiModel::with_regime(4.0f64, 6.0, 1.0, reg).unwrap();
            for i in 1..40 {
                let r = m.sigma_r * (0.4 + 0.1 * i as f64);
                let (res, sc) = m.schrodinger_residual(r, 0.3, 1.7).unwrap();
                assert!(res <= 1e-12 * sc, "{reg:?} r={r}: {res} vs {sc}");
                let (res, sc) = m.schrodinger_residual_fd(r, 1e-4 * m.sigma_r).unwrap();
                assert!(res <= 1e-4 * sc, "{reg:?} fd r={r}: {res} vs {sc}");
            }
        }
    }

    #[test]
    fn hamilton_jacobi_closure() {
        let m = PsiModel::new(3.0f64, 5.0, 0.9, 1.1).unwrap();
        for i in 1..30 {
            let r = 0.15 * i as f64;
            let scale = m.quantum_potential(r).unwrap().abs().max(m.speed(r).unwrap().powi(2));
            assert!(m.hj_residual(r).unwrap().abs() < 1e-13 * scale);
        }
    }

    #[test]
    fn circulation_is_quantized_and_shape_free() {
        let m = PsiModel::new(4.0f64, 6.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(m.c1().abs(), 2.0);
        let c = circle(1.0, 0.0, 0.0, 10_000);
        assert_relative_eq!(m.bohr_sommerfeld(&c).unwrap(), 2.0 * std::f64::consts::PI, max_relative = 1e-10);
        let e: Vec<_> = c.iter().map(|&(x, y)| (3.0 * x + 0.2, 0.5 * y - 0.1)).collect();
        assert_relative_eq!(m.bohr_sommerfeld(&e).unwrap(), m.quantized_circulation(), max_relative = 1e-8);
        let off = circle(0.5, 2.0, 1.0, 1000);
        assert!(m.circulation(&off).unwrap().abs() < 1e-10);
        assert_eq!(m.bohr_sommerfeld(&off), Err(Error::Winding(0)));
    }

    #[test]
    fn density_vanishes_at_origin() {
        let m = PsiModel::new(4.0f64, 6.0, 1.0, 1.0).unwrap();
        assert_eq!(m.density(0.0).unwrap(), 0.0);
        assert!(m.density(1e-3).unwrap() < 1e-300);
    }

    proptest! {
        #[test]
        fn u_plus_q_is_centrifugal(r in 0.05f64..20.0, n in 0.5f64..5.0, ell in 2.1f64..9.0, s in 0.1f64..5.0) {
            let m = PsiModel::new(n, ell, s, 1.0).unwrap();
            let sum = m.classical_potential(r).unwrap() + m.quantum_potential(r).unwrap();
            let want = -(m.rho_t() * s).powi(2) / (8.0 * r * r);
            prop_assert!((sum - want).abs() <= 1e-12 * (want.abs() + m.quantum_potential(r).unwrap().abs()));
        }
    }
}
