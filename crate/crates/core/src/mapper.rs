//! Inverse Legendre transform from momentum space (rho, theta) to coordinate
//! space (x, y), its Jacobian, numerical inversion, and field sampling.
//!
//! With u = R(rho) Theta(theta) the map is x = u_xi, y = u_eta and the phase is
//! Phi = rho u_rho - u. Everything below is written with u cleared from
//! denominators, so nodal lines of R or Theta are ordinary points:
//! x = R' Theta cos - (R/rho) Theta' sin, y = R' Theta sin + (R/rho) Theta' cos.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxwell::{ModelParams, RegionTag};
use crate::momentum::{omega_matched_c1, zeta_bar, AngularFactor, RadialSolution};
use crate::potentials::quantum_potential;
use crate::verifier::quad::quad2d_polar;
use crate::verifier::roots::bisect;
use crate::Scalar;

/// Distance of lambda from 1 below which the map is degenerate.
const LAMBDA_ONE_TOL: f64 = 1e-12;
/// |J^-1| relative to its term scale below which a sample is degenerate.
const DEGENERATE_TOL: f64 = 1e-10;

/// Polar rectangle in momentum space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorDomain<T> {
    pub rho_min: T,
    pub rho_max: T,
    pub theta_min: T,
    pub theta_max: T,
}

impl<T: Scalar> SectorDomain<T> {
    pub fn new(rho_min: T, rho_max: T, theta_min: T, theta_max: T) -> Result<Self> {
        let bad = |detail: String| Err(Error::Parameter { func: "SectorDomain", detail });
        if !(rho_min > T::zero() && rho_min < rho_max && rho_max.is_finite()) {
            return bad(format!("need 0 < rho_min < rho_max, got [{rho_min}, {rho_max}]"));
        }
        if !(theta_min < theta_max && theta_min.is_finite() && theta_max.is_finite()) {
            return bad(format!("need theta_min < theta_max, got [{theta_min}, {theta_max}]"));
        }
        Ok(Self { rho_min, rho_max, theta_min, theta_max })
    }

    /// Radii in units of rho_T, angles in degrees.
    pub fn from_units(p: &ModelParams<T>, rho1: T, rho2: T, theta_min_deg: T, theta_max_deg: T) -> Result<Self> {
        let rt = p.rho_t();
        Self::new(rho1 * rt, rho2 * rt, theta_min_deg.to_radians(), theta_max_deg.to_radians())
    }

    /// Symmetric sector rho1 <= rho/rho_T <= rho2, |theta| <= theta_max (degrees).
    pub fn symmetric(p: &ModelParams<T>, rho1: T, rho2: T, theta_max_deg: T) -> Result<Self> {
        Self::from_units(p, rho1, rho2, -theta_max_deg, theta_max_deg)
    }

    /// Checks that the whole sector lies in the hyperbolic region.
    pub fn require_hyperbolic(&self, p: &ModelParams<T>) -> Result<()> {
        if self.rho_min > p.rho_t() {
            Ok(())
        } else {
            Err(Error::Region { rho: self.rho_min.f64(), expected: "hyperbolic" })
        }
    }

    /// Row-major grid of (rho, theta), rho outer, endpoints included.
    pub fn grid(&self, n_rho: usize, n_theta: usize) -> Result<Vec<(T, T)>> {
        if n_rho < 2 || n_theta < 2 {
            return Err(Error::Parameter { func: "SectorDomain::grid", detail: "grid must be at least 2x2".into() });
        }
        let mut out = Vec::with_capacity(n_rho * n_theta);
        for i in 0..n_rho {
            let rho = lerp(self.rho_min, self.rho_max, i, n_rho);
            for j in 0..n_theta {
                out.push((rho, lerp(self.theta_min, self.theta_max, j, n_theta)));
            }
        }
        Ok(out)
    }
}

fn lerp<T: Scalar>(a: T, b: T, i: usize, m: usize) -> T {
    let t = T::of(i) / T::of(m - 1);
    a + (b - a) * t
}

/// Image of one momentum point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapPoint<T> {
    pub rho: T,
    pub theta: T,
    pub x: T,
    pub y: T,
    pub phi_val: T,
    pub jac_inv: T,
    pub region: RegionTag,
}

/// Status of one sample in a field sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SampleFlag {
    Ok,
    /// |J^-1| vanishes to working precision; Q and U are NaN.
    Degenerate,
    /// Some evaluation failed; every derived field is NaN.
    Failed,
}

/// Fields at one sample point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample<T> {
    pub rho: T,
    pub theta: T,
    pub x: T,
    pub y: T,
    pub phi: T,
    pub vx: T,
    pub vy: T,
    pub speed: T,
    pub density: T,
    pub q_pot: T,
    pub u_pot: T,
    pub jac_inv: T,
    pub region: RegionTag,
    pub flag: SampleFlag,
}

/// rho R'/R.
pub fn script_r<T: Scalar>(p: &ModelParams<T>, sol: &RadialSolution<T>, rho: T) -> Result<T> {
    sol.script_r(p, rho)
}

struct Local<T> {
    r: [T; 3],
    t: [T; 3],
    cs: (T, T),
}

fn local<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<Local<T>> {
    if (sol.lambda - fac.lambda).abs() > T::c(1e-12) * (T::one() + sol.lambda) {
        return Err(Error::Parameter {
            func: "forward_map",
            detail: format!("radial lambda {} differs from angular lambda {}", sol.lambda, fac.lambda),
        });
    }
    let r = sol.eval(p, rho)?;
    let t = [fac.value(theta), fac.deriv(theta), fac.deriv2(theta)];
    let (s, c) = theta.sin_cos();
    Ok(Local { r, t, cs: (c, s) })
}

fn is_lambda_one<T: Scalar>(lambda: T) -> bool {
    (lambda - T::one()).abs() < T::c(LAMBDA_ONE_TOL)
}

/// Returns (J^-1, term scale) with J^-1 = -(Theta'^2 P^2 + g Theta^2 S^2)/rho^4,
/// P = rho R' - R, S = rho R' - lambda^2 R.
fn jac_parts<T: Scalar>(p: &ModelParams<T>, lambda: T, l: &Local<T>, rho: T) -> (T, T) {
    let [r0, r1, _] = l.r;
    let pp = rho * r1 - r0;
    let ss = rho * r1 - lambda * lambda * r0;
    let g = p.coeff_g(rho);
    let a = l.t[1] * l.t[1] * pp * pp;
    let b = l.t[0] * l.t[0] * ss * ss;
    let r4 = rho * rho * rho * rho;
    let amp = l.t[0].abs().max(l.t[1].abs() / lambda.max(T::one()));
    let scale = (pp * pp * lambda * lambda + (p.ell + T::one()) * ss * ss) * amp * amp / r4;
    (-(a + g * b) / r4, scale)
}

/// Inverse Jacobian det d(x,y)/d(xi,eta) in closed form. Defined for every
/// lambda, including lambda = 1 where it vanishes identically.
pub fn jac_inv_closed_form<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<T> {
    let l = local(p, sol, fac, rho, theta)?;
    Ok(jac_parts(p, sol.lambda, &l, rho).0)
}

/// The same Jacobian written through u, rho R'/R and Theta'/Theta:
/// -(u^2/rho^4){Rs^2 (g + Y^2) - 2 Rs (lambda^2 g + Y^2) + lambda^4 g + Y^2}.
/// Fails on nodal lines of u.
pub fn jac_inv_formula<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<T> {
    let rs = sol.script_r(p, rho)?;
    let ups = fac.logderiv(theta)?;
    let u = sol.eval(p, rho)?[0] * fac.value(theta);
    let g = p.coeff_g(rho);
    let (l2, y2) = (sol.lambda * sol.lambda, ups * ups);
    let brace = rs * rs * (g + y2) - T::c(2.0) * rs * (l2 * g + y2) + l2 * l2 * g + y2;
    Ok(-u * u / (rho * rho * rho * rho) * brace)
}

/// Image of (rho, theta) with Phi and J^-1. Degenerate for lambda = 1.
pub fn forward_map<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<MapPoint<T>> {
    if is_lambda_one(sol.lambda) {
        return Err(Error::DegenerateMap);
    }
    let l = local(p, sol, fac, rho, theta)?;
    Ok(point_from_local(p, sol.lambda, &l, rho, theta))
}

fn point_from_local<T: Scalar>(p: &ModelParams<T>, lambda: T, l: &Local<T>, rho: T, theta: T) -> MapPoint<T> {
    let [r0, r1, _] = l.r;
    let (c, s) = l.cs;
    let a = r1 * l.t[0];
    let b = r0 / rho * l.t[1];
    MapPoint {
        rho,
        theta,
        x: a * c - b * s,
        y: a * s + b * c,
        phi_val: (rho * r1 - r0) * l.t[0],
        jac_inv: jac_parts(p, lambda, l, rho).0,
        region: p.classify(rho),
    }
}

/// Analytic differential [[x_rho, x_theta], [y_rho, y_theta]].
pub fn map_differential<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
) -> Result<[[T; 2]; 2]> {
    let l = local(p, sol, fac, rho, theta)?;
    Ok(differential_from_local(&l, rho))
}

fn differential_from_local<T: Scalar>(l: &Local<T>, rho: T) -> [[T; 2]; 2] {
    let [r0, r1, r2] = l.r;
    let [t0, t1, t2] = l.t;
    let (c, s) = l.cs;
    let q = r0 / rho;
    let dq = r1 / rho - r0 / (rho * rho);
    [
        [r2 * t0 * c - dq * t1 * s, r1 * t1 * c - r1 * t0 * s - q * t2 * s - q * t1 * c],
        [r2 * t0 * s + dq * t1 * c, r1 * t1 * s + r1 * t0 * c + q * t2 * c - q * t1 * s],
    ]
}

/// Solution of the radially symmetric hyperbolic case: R = Omega with
/// Omega' = zbar, Theta = 1. Then r = zbar(rho), the polar angle is theta and
/// Phi = rho zbar - Omega.
pub fn forward_map_radial<T: Scalar>(p: &ModelParams<T>, rho: T, theta: T) -> Result<MapPoint<T>> {
    let (pm, sol, fac) = radial_setup(p);
    if !(rho > p.rho_t()) {
        return Err(Error::Region { rho: rho.f64(), expected: "hyperbolic" });
    }
    forward_map(&pm, &sol, &fac, rho, theta)
}

/// Parameters, radial and angular factor realizing the radial solution.
pub fn radial_setup<T: Scalar>(p: &ModelParams<T>) -> (ModelParams<T>, RadialSolution<T>, AngularFactor<T>) {
    let pm = p.with_constants(p.c0, omega_matched_c1(p), p.c2);
    (pm, RadialSolution::hyperbolic_omega(), AngularFactor { lambda: T::zero(), c1: T::zero(), c2: T::one() })
}

/// Momentum radius mapped to coordinate radius r in the radial solution; zbar
/// is increasing on (rho_T, inf) so bisection always converges.
pub fn invert_radial<T: Scalar>(p: &ModelParams<T>, r: T) -> Result<T> {
    let rt = p.rho_t();
    let rmin = zeta_bar(p, rt);
    if !(r >= rmin) {
        return Err(Error::Domain { func: "invert_radial", detail: format!("r = {r} below the image minimum {rmin}") });
    }
    let mut hi = rt * T::c(2.0);
    let mut guard = 0;
    while zeta_bar(p, hi) < r {
        hi = hi * T::c(2.0);
        guard += 1;
        if guard > 200 {
            return Err(Error::NoConvergence("invert_radial bracket"));
        }
    }
    bisect(|rho| Ok(zeta_bar(p, rho) - r), rt, hi, T::epsilon() * T::c(4.0) * hi)
}

/// Newton controls for [`invert_map`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvertOptions<T> {
    pub max_iter: usize,
    /// Convergence threshold relative to the coordinate scale.
    pub tol: T,
}

impl<T: Scalar> Default for InvertOptions<T> {
    fn default() -> Self {
        Self { max_iter: 50, tol: T::c(1e-10) }
    }
}

/// (rho, theta) whose image is `target`, found by damped Newton from `seed`.
/// Fails with FoldDetected if J^-1 changes sign along the path.
pub fn invert_map<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    target: (T, T),
    seed: (T, T),
    opts: &InvertOptions<T>,
) -> Result<(T, T)> {
    if is_lambda_one(sol.lambda) {
        return Err(Error::DegenerateMap);
    }
    let eval = |rho: T, th: T| -> Result<(MapPoint<T>, [[T; 2]; 2])> {
        let l = local(p, sol, fac, rho, th)?;
        Ok((point_from_local(p, sol.lambda, &l, rho, th), differential_from_local(&l, rho)))
    };
    let (mut rho, mut th) = seed;
    let (mut pt, mut d) = eval(rho, th)?;
    let sign0 = pt.jac_inv.signum();
    let scale = pt.x.hypot(pt.y).max(target.0.hypot(target.1)).max(T::min_positive_value());
    let mut err = (pt.x - target.0).hypot(pt.y - target.1);
    let mut polish = 0;
    for _ in 0..opts.max_iter {
        if err <= opts.tol * scale {
            // A couple of extra steps take the error to roundoff at no risk.
            polish += 1;
            if polish > 2 || err <= T::epsilon() * scale {
                return Ok((rho, th));
            }
        }
        let det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
        if det == T::zero() || !det.is_finite() {
            return Err(Error::FoldDetected);
        }
        let (fx, fy) = (pt.x - target.0, pt.y - target.1);
        let drho = -(d[1][1] * fx - d[0][1] * fy) / det;
        let dth = -(-d[1][0] * fx + d[0][0] * fy) / det;
        let mut step = T::one();
        let mut accepted = false;
        for _ in 0..40 {
            let (nr, nt) = (rho + step * drho, th + step * dth);
            if nr > T::zero() {
                if let Ok((npt, nd)) = eval(nr, nt) {
                    let nerr = (npt.x - target.0).hypot(npt.y - target.1);
                    if nerr < err || (polish > 0 && nerr <= err) {
                        if npt.jac_inv.signum() != sign0 && npt.jac_inv != T::zero() {
                            return Err(Error::FoldDetected);
                        }
                        (rho, th, pt, d, err) = (nr, nt, npt, nd, nerr);
                        accepted = true;
                        break;
                    }
                }
            }
            step = step * T::c(0.5);
        }
        if !accepted {
            if err <= opts.tol * scale {
                return Ok((rho, th));
            }
            return Err(Error::NoConvergence("invert_map"));
        }
    }
    if err <= opts.tol * scale {
        Ok((rho, th))
    } else {
        Err(Error::NoConvergence("invert_map"))
    }
}

/// One field sample; never fails, problems are recorded in `flag`.
pub fn sample_point<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    rho: T,
    theta: T,
    norm: T,
) -> FieldSample<T> {
    let nan = T::nan();
    let mut s = FieldSample {
        rho,
        theta,
        x: nan,
        y: nan,
        phi: nan,
        vx: nan,
        vy: nan,
        speed: nan,
        density: nan,
        q_pot: nan,
        u_pot: nan,
        jac_inv: nan,
        region: p.classify(rho),
        flag: SampleFlag::Failed,
    };
    let Ok(l) = local(p, sol, fac, rho, theta) else { return s };
    let pt = point_from_local(p, sol.lambda, &l, rho, theta);
    let (_, jscale) = jac_parts(p, sol.lambda, &l, rho);
    let ma = -p.alpha;
    let (sn, cs) = theta.sin_cos();
    s.x = pt.x;
    s.y = pt.y;
    s.phi = pt.phi_val;
    s.vx = ma * rho * cs;
    s.vy = ma * rho * sn;
    s.speed = p.alpha.abs() * rho;
    s.density = p.density_f(s.speed, norm).unwrap_or(nan);
    s.jac_inv = pt.jac_inv;
    if pt.jac_inv.abs() <= T::c(DEGENERATE_TOL) * jscale {
        s.flag = SampleFlag::Degenerate;
        return s;
    }
    match quantum_potential(p, sol, fac, rho, theta) {
        Ok(q) => {
            s.q_pot = q;
            s.u_pot = crate::potentials::kinetic_term(p, rho) - q;
            s.flag = SampleFlag::Ok;
        }
        Err(_) => s.flag = SampleFlag::Degenerate,
    }
    s
}

/// Samples every grid point of the sector, row-major with rho outer. Only
/// setup problems (lambda = 1, grid too small) abort the sweep.
pub fn sample_fields<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    domain: &SectorDomain<T>,
    n_rho: usize,
    n_theta: usize,
    norm: T,
) -> Result<Vec<FieldSample<T>>> {
    if is_lambda_one(sol.lambda) {
        return Err(Error::DegenerateMap);
    }
    Ok(domain
        .grid(n_rho, n_theta)?
        .into_iter()
        .map(|(rho, th)| sample_point(p, sol, fac, rho, th, norm))
        .collect())
}

/// Counts of positive, negative and vanishing J^-1 among finite samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct JacobianSigns {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl JacobianSigns {
    pub fn of<T: Scalar>(samples: &[FieldSample<T>]) -> Self {
        let mut out = Self::default();
        for s in samples {
            if s.flag == SampleFlag::Degenerate || s.jac_inv == T::zero() {
                out.zero += 1;
            } else if s.jac_inv > T::zero() {
                out.positive += 1;
            } else if s.jac_inv < T::zero() {
                out.negative += 1;
            }
        }
        out
    }

    /// True when J^-1 keeps one sign, i.e. the sector image is a single leaf.
    pub fn univalent(&self) -> bool {
        self.positive == 0 || self.negative == 0
    }
}

/// N = 1 / integral over the sector image of F_1(|alpha| rho) dx dy, with
/// dx dy = |J^-1| rho drho dtheta.
pub fn sector_normalization<T: Scalar>(
    p: &ModelParams<T>,
    sol: &RadialSolution<T>,
    fac: &AngularFactor<T>,
    domain: &SectorDomain<T>,
    tol: T,
) -> Result<T> {
    if is_lambda_one(sol.lambda) {
        return Err(Error::DegenerateMap);
    }
    let total = quad2d_polar(
        |rho, th| {
            let j = jac_inv_closed_form(p, sol, fac, rho, th)?;
            Ok(p.density_f(p.alpha.abs() * rho, T::one())? * j.abs())
        },
        (domain.rho_min, domain.rho_max),
        (domain.theta_min, domain.theta_max),
        tol,
    )?;
    if !(total > T::zero()) {
        return Err(Error::DegenerateMap);
    }
    Ok(total.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::RadialKind;
    use crate::verifier::fd::{fd_derivative, Order};
    use approx::assert_relative_eq;

    fn setup(n: f64, ell: f64, lam: f64) -> (ModelParams<f64>, RadialSolution<f64>, AngularFactor<f64>) {
        let p = ModelParams::new(n, ell, 1.0).unwrap();
        let sol = RadialSolution::kummer(&p, RadialKind::KummerPlus, lam).unwrap();
        (p, sol, AngularFactor::cos(lam))
    }

    #[test]
    fn map_matches_written_form_away_from_nodes() {
        let (p, sol, fac) = setup(2.0, 4.0, 3.0);
        let (rho, th) = (0.7 * p.rho_t(), 0.2);
        let m = forward_map(&p, &sol, &fac, rho, th).unwrap();
        let u = sol.eval(&p, rho).unwrap()[0] * fac.value(th);
        let rs = sol.script_r(&p, rho).unwrap();
        let ups = fac.logderiv(th).unwrap();
        let (s, c) = th.sin_cos();
        assert_relative_eq!(m.x, u / rho * (c * rs - s * ups), max_relative = 1e-12);
        assert_relative_eq!(m.y, u / rho * (s * rs + c * ups), max_relative = 1e-12);
        assert_relative_eq!(m.phi_val, u * (rs - 1.0), max_relative = 1e-12);
        let lit = jac_inv_formula(&p, &sol, &fac, rho, th).unwrap();
        assert_relative_eq!(m.jac_inv, lit, max_relative = 1e-10);
    }

    #[test]
    fn differential_matches_fd() {
        for &(n, ell, lam) in &[(2.0, 0.0, 2.0), (2.0, 4.0, 3.0), (2.0, 2.0, 4.0)] {
            let (p, sol, fac) = setup(n, ell, lam);
            let (rho, th) = (1.6 * p.rho_t(), 0.1);
            let d = map_differential(&p, &sol, &fac, rho, th).unwrap();
            let h = 1e-5;
            let xr = fd_derivative(|r| Ok(forward_map(&p, &sol, &fac, r, th)?.x), rho, Order::First, h).unwrap();
            let yt = fd_derivative(|t| Ok(forward_map(&p, &sol, &fac, rho, t)?.y), th, Order::First, h).unwrap();
            assert_relative_eq!(d[0][0], xr, max_relative = 1e-7);
            assert_relative_eq!(d[1][1], yt, max_relative = 1e-7);
            let det = (d[0][0] * d[1][1] - d[0][1] * d[1][0]) / rho;
            assert_relative_eq!(det, jac_inv_closed_form(&p, &sol, &fac, rho, th).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn lambda_one_is_degenerate() {
        let (p, sol, fac) = setup(2.0, 2.0, 1.0);
        assert_eq!(forward_map(&p, &sol, &fac, 0.5, 0.1), Err(Error::DegenerateMap));
        for i in 1..20 {
            let j = jac_inv_closed_form(&p, &sol, &fac, 0.2 * i as f64, 0.3 * i as f64).unwrap();
            assert!(j.abs() < 1e-12);
        }
    }

    #[test]
    fn parabolic_extremum_is_degenerate() {
        let (p, sol, _) = setup(2.0, 0.0, 2.0);
        let fac = AngularFactor::new(2.0, 0.4, 1.0).unwrap();
        let te = fac.extremum_angle(0).unwrap();
        let j = jac_inv_closed_form(&p, &sol, &fac, p.rho_t(), te).unwrap();
        assert!(j.abs() < 1e-10);
        let s = sample_point(&p, &sol, &fac, p.rho_t(), te, 1.0);
        assert_eq!(s.flag, SampleFlag::Degenerate);
    }

    #[test]
    fn newton_roundtrip() {
        let (p, sol, fac) = setup(2.0, 0.0, 2.0);
        let opts = InvertOptions::default();
        for &(rb, th) in &[(1.9, 0.1), (2.2, -0.15), (0.5, 0.3)] {
            let rho = rb * p.rho_t();
            let m = forward_map(&p, &sol, &fac, rho, th).unwrap();
            let (r, t) = invert_map(&p, &sol, &fac, (m.x, m.y), (rho * 1.01, th + 0.01), &opts).unwrap();
            assert_relative_eq!(r, rho, max_relative = 1e-10);
            assert_relative_eq!(t, th, epsilon = 1e-10);
        }
    }

    #[test]
    fn radial_solution_geometry() {
        let p = ModelParams::new(2.0, 2.0, 1.0).unwrap();
        let rho = 1.4 * p.rho_t();
        let m: MapPoint<f64> = forward_map_radial(&p, rho, 0.7).unwrap();
        let r = m.x.hypot(m.y);
        assert_relative_eq!(r, zeta_bar(&p, rho), max_relative = 1e-12);
        assert_relative_eq!(m.y.atan2(m.x), 0.7, max_relative = 1e-12);
        assert_relative_eq!(invert_radial(&p, r).unwrap(), rho, max_relative = 1e-12);
        assert_relative_eq!(zeta_bar(&p, p.rho_t()), (3.0f64 / 2.0).exp(), max_relative = 1e-14);
        assert!(matches!(forward_map_radial(&p, 0.9 * p.rho_t(), 0.0), Err(Error::Region { .. })));
    }

    #[test]
    fn sector_speeds_and_density() {
        let (p, sol, fac) = setup(2.0, 0.0, 2.0);
        let dom = SectorDomain::symmetric(&p, 1.8, 2.4, 12.0).unwrap();
        let s = sample_fields(&p, &sol, &fac, &dom, 6, 5, 1.0).unwrap();
        assert_eq!(s.len(), 30);
        for w in s.windows(2) {
            if w[0].rho < w[1].rho {
                assert!(w[1].density < w[0].density);
            }
        }
        for x in &s {
            assert!(x.speed >= 1.8 * p.sigma_v * (1.0 - 1e-12) && x.speed <= 2.4 * p.sigma_v * (1.0 + 1e-12));
            assert!(x.vx > 0.0);
        }
    }

    #[test]
    fn normalization_integrates_to_one() {
        let (p, sol, fac) = setup(2.0, 0.0, 2.0);
        let dom = SectorDomain::symmetric(&p, 1.8, 2.4, 12.0).unwrap();
        let nrm = sector_normalization(&p, &sol, &fac, &dom, 1e-10).unwrap();
        let total = quad2d_polar(
            |r, t| Ok(p.density_f(0.5 * r, nrm)? * jac_inv_closed_form(&p, &sol, &fac, r, t)?.abs()),
            (dom.rho_min, dom.rho_max),
            (dom.theta_min, dom.theta_max),
            1e-10,
        )
        .unwrap();
        assert_relative_eq!(total, 1.0, max_relative = 1e-8);
    }
}
