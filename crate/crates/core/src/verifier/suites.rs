//! Named verification campaigns. Each returns one report per check, with a
//! fixed grid, fixed seeds and a fixed tolerance, so reruns are identical.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::mapper::{forward_map, jac_inv_closed_form, radial_setup, SectorDomain};
use crate::maxwell::ModelParams;
use crate::momentum::{
    canonical_kappa, characteristic_chi, factorized_u, hyperbolic_omega, laguerre_enumerate, mu_plus,
    omega_matched_c1, slope_rho_theta, zeta_bar, AngularFactor, Branch, CharacteristicKind, RadialKind,
    RadialSolution,
};
use crate::potentials::{quantum_potential, PsiModel, PsiRegime};
use crate::specfun::{expint_ei, gamma, kummer_m, kummer_m_deriv, laguerre, laguerre_monomial, SeriesControl};
use crate::verifier::fd::{fd_derivative, fd_derivative5, Order};
use crate::verifier::harness::{coordinate_checks, hill_residual, jacobian_check, pde_residual_momentum, quantum_potential_fd};
use crate::verifier::quad::{adaptive_quad, quad2d_polar};
use crate::verifier::report::{ResidualAccumulator, VerificationReport};
use crate::verifier::roots::golden_section_min;

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 6] = ["specfun", "momentum", "map", "potentials", "psi", "all"];

/// Runs a named suite.
pub fn run_suite(name: &str) -> Result<Vec<VerificationReport>> {
    match name {
        "specfun" => suite_specfun(),
        "momentum" => suite_momentum(),
        "map" => suite_map(),
        "potentials" => suite_potentials(),
        "psi" => suite_psi(),
        "all" => {
            let mut out = suite_specfun()?;
            out.extend(suite_momentum()?);
            out.extend(suite_map()?);
            out.extend(suite_potentials()?);
            out.extend(suite_psi()?);
            Ok(out)
        }
        _ => Err(Error::Parameter { func: "run_suite", detail: format!("unknown suite {name:?}") }),
    }
}

fn params(n: f64, ell: f64) -> ModelParams<f64> {
    ModelParams::new(n, ell, 1.0).expect("suite parameters are valid")
}

/// Parameter matrix used by the mapped-solution checks.
pub const MATRIX: [(f64, f64, f64); 3] = [(2.0, 0.0, 2.0), (2.0, 4.0, 3.0), (2.0, 2.0, 4.0)];

/// Hyperbolic sector (rho1, rho2 in rho_T units, theta_max in degrees) paired
/// with each entry of [`MATRIX`].
pub const SECTORS: [(f64, f64, f64); 3] = [(1.8, 2.4, 12.0), (1.5, 1.89, 15.0), (1.45, 1.75, 12.0)];

/// Kummer-plus radial factor with Theta = cos(lambda theta).
pub fn kummer_case(n: f64, ell: f64, lambda: f64) -> Result<(ModelParams<f64>, RadialSolution<f64>, AngularFactor<f64>)> {
    let p = params(n, ell);
    let sol = RadialSolution::kummer(&p, RadialKind::KummerPlus, lambda)?;
    Ok((p, sol, AngularFactor::cos(lambda)))
}

// ---------------------------------------------------------------- specfun

pub fn suite_specfun() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();

    // Box a in [-3, 3], b in [0.5, 5], z in [0, 10].
    let mut rng = StdRng::seed_from_u64(11);
    let mut acc = ResidualAccumulator::new("kummer ODE residual (analytic derivatives)", "200 draws, a in [-3,3], b in [0.5,5], z in [0,10]", 1e-10).with_scale(1.0);
    for _ in 0..200 {
        let (a, b, z): (f64, f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.5..5.0), rng.gen_range(0.0..10.0));
        let m = kummer_m(a, b, z)?;
        let res = z * kummer_m_deriv(a, b, z, 2)? + (b - z) * kummer_m_deriv(a, b, z, 1)? - a * m;
        acc.push_rel(res / m.abs().max(1.0));
    }
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("kummer contiguity vs central difference", "40 draws, h = 1e-5", 1e-6).with_scale(1.0);
    for _ in 0..40 {
        let (a, b, z): (f64, f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.5..5.0), rng.gen_range(0.5..8.0));
        let fd = fd_derivative(|x| kummer_m(a, b, x), z, Order::First, 1e-5)?;
        let ex = kummer_m_deriv(a, b, z, 1)?;
        acc.push_rel((fd - ex) / ex.abs().max(1.0));
    }
    out.push(acc.finish());

    // M(-k, 1+alpha, z) / C against the recurrence, measured on the monomial scale.
    let mut acc = ResidualAccumulator::new("laguerre-kummer bridge", "k <= 12, alpha_bar in {0.5,1,...,10}, z in {0.1,1,5,10}", 1e-12).with_scale(1.0);
    for k in 0..=12usize {
        for ai in 0..=20 {
            let al = if ai == 0 { 0.5 } else { ai as f64 * 0.5 };
            if al > 10.0 {
                continue;
            }
            let c = gamma(1.0 + k as f64)? * gamma(1.0 + al)? / gamma(1.0 + al + k as f64)?;
            for &z in &[0.1, 1.0, 5.0, 10.0] {
                let (_, scale) = laguerre_monomial(k, al, z);
                let rec = laguerre(k, al, z);
                let via_m = kummer_m(-(k as f64), 1.0 + al, z)? / c;
                acc.push_rel((rec - via_m) / scale);
            }
        }
    }
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("Ei derivative identity", "x in {-2,-0.5,0.5,1,2,5}, h = 1e-5 max(1,|x|)", 1e-6).with_scale(1.0);
    for &x in &[-2.0f64, -0.5, 0.5, 1.0, 2.0, 5.0] {
        let h = 1e-5 * x.abs().max(1.0);
        let fd = fd_derivative(expint_ei, x, Order::First, h)?;
        let ex = x.exp() / x;
        acc.push_rel((fd - ex) / ex);
    }
    out.push(acc.finish());
    Ok(out)
}

// ---------------------------------------------------------------- momentum

pub fn suite_momentum() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for &(n, ell, lam) in &MATRIX {
        let (p, sol, fac) = kummer_case(n, ell, lam)?;
        let dom = SectorDomain::new(0.2 * p.rho_t(), 2.0 * p.rho_t(), -PI / 2.0, PI / 2.0)?;
        out.push(pde_residual_momentum(
            &format!("momentum equation ({n},{ell},{lam})"),
            &p,
            |r, t| factorized_u(&p, &sol, &fac, r, t),
            &dom,
            50,
            50,
            1e-5,
        ));
    }

    for &(n, ell, lam) in &MATRIX {
        let (p, sol, _) = kummer_case(n, ell, lam)?;
        let mut acc = ResidualAccumulator::new(format!("Hill reduction ({n},{ell},{lam})"), "rho/rho_T in 0.3..2.0 step 0.1, skipping 1", 1e-4);
        for i in 3..=20 {
            if i == 10 {
                continue;
            }
            let (res, scale) = hill_residual(&p, &sol, 0.1 * i as f64 * p.rho_t())?;
            acc.push(res, scale);
        }
        out.push(acc.finish());
    }

    // Implicit slope of chi = const against -+sqrt(+-Delta)/rho.
    let mut acc = ResidualAccumulator::new("characteristic slope", "(n,ell) in {(2,2),(1,0.5),(3,4)}, four kinds", 1e-6).with_scale(1.0);
    for &(n, ell) in &[(2.0, 2.0), (1.0, 0.5), (3.0, 4.0)] {
        let p = params(n, ell);
        for kind in CharacteristicKind::ALL {
            let rbs: &[f64] = if kind.is_hyperbolic() { &[1.2, 1.5, 2.5] } else { &[0.3, 0.5, 0.8] };
            for &rb in rbs {
                let rho = rb * p.rho_t();
                let th = 0.4;
                let h = f64::EPSILON.cbrt() * rho;
                let chi_r = fd_derivative(|r| Ok(characteristic_chi(&p, kind, r, th)?.value), rho, Order::First, h)?;
                let chi_t = fd_derivative(|t| Ok(characteristic_chi(&p, kind, rho, t)?.value), th, Order::First, 1e-4)?;
                let slope = -chi_r / chi_t;
                let want = -kind.sign() * p.delta(rho).abs().sqrt() / rho;
                acc.push_rel((slope - want) / want);
            }
        }
    }
    out.push(acc.finish());

    // Lambda = dOmega/dmu+ obeys dLambda/dmu+ + 4 kappa_h Lambda = 0.
    let mut acc = ResidualAccumulator::new("kappa flow identity", "(n,ell) in {(2,2),(2,0),(3,1)}, rho/rho_T in {1.3,1.6,2.0}", 1e-4).with_scale(1.0);
    let ctrl = SeriesControl::default();
    for &(n, ell) in &[(2.0, 2.0), (2.0, 0.0), (3.0, 1.0)] {
        let p = params(n, ell);
        for &rb in &[1.3, 1.6, 2.0] {
            let rho = rb * p.rho_t();
            let h1 = f64::EPSILON.cbrt() * rho;
            let lam = |r: f64| -> Result<f64> {
                let om = fd_derivative5(|x| hyperbolic_omega(&p, x, &ctrl), r, Order::First, h1)?;
                let mu = fd_derivative5(|x| mu_plus(&p, x), r, Order::First, h1)?;
                Ok(om / mu)
            };
            let h2 = 1e-3 * rho;
            let dl = fd_derivative5(lam, rho, Order::First, h2)?;
            let dmu = fd_derivative5(|x| mu_plus(&p, x), rho, Order::First, h1)?;
            let l0 = lam(rho)?;
            let k = canonical_kappa(&p, rho, Branch::Hyperbolic)?;
            acc.push_rel((dl / dmu + 4.0 * k * l0) / (4.0 * k * l0));
        }
    }
    out.push(acc.finish());

    out.extend(slope_checks()?);

    let mut acc = ResidualAccumulator::new("Laguerre cases: a+ = -k, b+ = 1 + alpha_bar", "n = 2, lambda in {2,3,4}, ell_max 40", 1e-9).with_scale(1.0);
    for c in laguerre_enumerate(2.0f64, &[2.0, 3.0, 4.0], 40.0) {
        let (Some(ell), Some(ab)) = (c.ell, c.alpha_bar) else { continue };
        let p = params(2.0, ell);
        let sol = RadialSolution::kummer(&p, RadialKind::KummerPlus, c.lambda)?;
        acc.push_rel((sol.a + c.k as f64).abs().max((sol.b - 1.0 - ab).abs()));
    }
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("Omega' = zbar with matched constants", "(n,ell) in {(2,0),(2,2),(3,1.5)}", 1e-10).with_scale(1.0);
    for &(n, ell) in &[(2.0, 0.0), (2.0, 2.0), (3.0, 1.5)] {
        let p0 = params(n, ell);
        let p = p0.with_constants(p0.c0, omega_matched_c1(&p0), p0.c2);
        for &rb in &[1.1, 1.6, 2.2] {
            let rho = rb * p.rho_t();
            let d = crate::momentum::hyperbolic_omega_prime(&p, rho);
            let z = zeta_bar(&p, rho);
            acc.push_rel((d - z) / z);
        }
    }
    out.push(acc.finish());
    Ok(out)
}

/// Derived location of the slope minimum: rho_bar^n = 2 / (2 - n), n < 2.
pub fn slope_min_location(n: f64) -> f64 {
    (2.0 / (2.0 - n)).powf(1.0 / n)
}

/// Numerical minimizer of the hyperbolic slope, in rho_T units.
pub fn slope_min_numeric(n: f64, ell: f64) -> Result<f64> {
    let p = params(n, ell);
    let rt = p.rho_t();
    Ok(golden_section_min(|r| Ok(slope_rho_theta(&p, r)), 1.05 * rt, 10.0 * rt, 1e-12 * rt)? / rt)
}

fn slope_checks() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let mut acc = ResidualAccumulator::new("slope limit n = 2", "rho = 100 rho_T, ell in {0,2,5}", 1e-2).with_scale(1.0);
    for &ell in &[0.0, 2.0, 5.0] {
        let p = params(2.0, ell);
        let lim = p.rho_t() / (ell + 1.0f64).sqrt();
        acc.push_rel((slope_rho_theta(&p, 100.0 * p.rho_t()) - lim) / lim);
    }
    out.push(acc.finish());
    let mut acc = ResidualAccumulator::new("slope minimum n < 2 at the derived radius", "n in {1,0.5,1.5}, ell = 2", 1e-4).with_scale(1.0);
    for &n in &[1.0, 0.5, 1.5] {
        let want = slope_min_location(n);
        acc.push_rel((slope_min_numeric(n, 2.0)? - want) / want);
    }
    out.push(acc.finish());
    let p = params(3.0, 2.0);
    let mut acc = ResidualAccumulator::new("slope decay n = 3", "rho = 1e4 rho_T, ell = 2, bound 0.05 rho_T", 0.05).with_scale(p.rho_t());
    acc.push(slope_rho_theta(&p, 1e4 * p.rho_t()), 0.0);
    out.push(acc.finish());
    Ok(out)
}

// ---------------------------------------------------------------- map

/// Mapped cases: (label, params, radial, angular, domain, expect elliptic bound).
#[allow(clippy::type_complexity)]
pub fn map_cases() -> Result<Vec<(String, ModelParams<f64>, RadialSolution<f64>, AngularFactor<f64>, SectorDomain<f64>)>> {
    let mut out = Vec::new();
    let (p, sol, fac) = kummer_case(2.0, 0.0, 2.0)?;
    let dom = SectorDomain::new(0.1 * p.rho_t(), 0.9 * p.rho_t(), -PI, PI)?;
    out.push(("elliptic disk (2,0,2)".to_string(), p, sol, fac, dom));
    for (&(n, ell, lam), &(r1, r2, tm)) in MATRIX.iter().zip(SECTORS.iter()) {
        let (p, sol, fac) = kummer_case(n, ell, lam)?;
        let dom = SectorDomain::symmetric(&p, r1, r2, tm)?;
        out.push((format!("sector ({n},{ell},{lam}) rho in [{r1},{r2}] rho_T, |theta| <= {tm} deg"), p, sol, fac, dom));
    }
    let p = params(2.0, 0.0);
    let (pm, sol, fac) = radial_setup(&p);
    let dom = SectorDomain::symmetric(&p, 1.2, 2.0, 30.0)?;
    out.push(("radial hyperbolic solution (2,0)".to_string(), pm, sol, fac, dom));
    Ok(out)
}

pub fn suite_map() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (label, p, sol, fac, dom) in map_cases()? {
        let c = coordinate_checks(&label, &p, &sol, &fac, &dom, 12, 12, 1e-3, 1e-4)?;
        out.push(c.pde);
        out.push(c.gradient);
        out.push(jacobian_check(&format!("{label}: Jacobian vs FD"), &p, &sol, &fac, &dom, 10, 10, 1e-4)?);
        let mut acc = ResidualAccumulator::new(format!("{label}: speed within sector bounds"), "12x12 grid", 1e-12).with_scale(p.sigma_v);
        let (lo, hi) = (p.alpha.abs() * dom.rho_min, p.alpha.abs() * dom.rho_max);
        for (rho, th) in dom.grid(12, 12)? {
            let m = crate::mapper::sample_point(&p, &sol, &fac, rho, th, 1.0);
            acc.push((lo - m.speed).max(0.0) + (m.speed - hi).max(0.0), 0.0);
            if dom.rho_max < p.rho_t() {
                acc.push((m.speed - p.sigma_v).max(0.0), 0.0);
            }
        }
        out.push(acc.finish());
    }

    let (p, sol, fac) = kummer_case(2.0, 2.0, 1.0)?;
    let mut rng = StdRng::seed_from_u64(7);
    let mut acc = ResidualAccumulator::new("lambda = 1 Jacobian vanishes", "100 random points, rho/rho_T in (0.05, 2.5)", 1e-12).with_scale(1.0);
    for _ in 0..100 {
        let rho = rng.gen_range(0.05..2.5) * p.rho_t();
        let th = rng.gen_range(-PI..PI);
        acc.push(jac_inv_closed_form(&p, &sol, &fac, rho, th)?, 0.0);
    }
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("Jacobian at (rho_T, theta_e)", "matrix cases, c1 = 0.4, c2 = 1, j in {-1,0,1}", 1e-10).with_scale(1.0);
    for &(n, ell, lam) in &MATRIX {
        let p = params(n, ell);
        let sol = RadialSolution::kummer(&p, RadialKind::KummerPlus, lam)?;
        let fac = AngularFactor::new(lam, 0.4, 1.0)?;
        for j in -1..=1 {
            let te = fac.extremum_angle(j).expect("lambda > 0");
            acc.push(jac_inv_closed_form(&p, &sol, &fac, p.rho_t(), te)?, 0.0);
        }
    }
    out.push(acc.finish());

    let p = params(2.0, 0.0);
    let mut acc = ResidualAccumulator::new("radial solution: minimum radius exp((ell+1)/n)", "(n,ell) = (2,0), c0 = 1", 1e-12).with_scale(1.0);
    let (pm, sol, fac) = radial_setup(&p);
    let m = forward_map(&pm, &sol, &fac, p.rho_t() * (1.0 + 1e-14), 0.0)?;
    acc.push_rel(m.x.hypot(m.y) / 0.5f64.exp() - 1.0);
    out.push(acc.finish());
    Ok(out)
}

// ---------------------------------------------------------------- potentials

pub fn suite_potentials() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for (&(n, ell, lam), &(r1, r2, tm)) in MATRIX.iter().zip(SECTORS.iter()) {
        let (p, sol, fac) = kummer_case(n, ell, lam)?;
        let dom = SectorDomain::symmetric(&p, r1, r2, tm)?;
        let mut acc = ResidualAccumulator::new(format!("Q closed form vs FD Laplacian ({n},{ell},{lam})"), "point differences over a 5x5 interior grid", 1e-3);
        let pts: Vec<(f64, f64)> = dom
            .grid(7, 7)?
            .into_iter()
            .filter(|&(r, t)| r > dom.rho_min && r < dom.rho_max && t > dom.theta_min && t < dom.theta_max)
            .collect();
        let mut vals = Vec::new();
        for &(r, t) in &pts {
            let q = quantum_potential(&p, &sol, &fac, r, t);
            let qf = quantum_potential_fd(&p, &sol, &fac, r, t, 1.0);
            match (q, qf) {
                (Ok(a), Ok(b)) => vals.push((a, b)),
                _ => acc.skip(),
            }
        }
        if let Some(&(q0, f0)) = vals.first() {
            for &(q, f) in &vals[1..] {
                acc.push((q - q0) - (f - f0), (q - q0).abs());
            }
        }
        out.push(acc.finish());
    }

    let mut rng = StdRng::seed_from_u64(3);
    let mut acc = ResidualAccumulator::new("general Q reduces to the vortex form at lambda = 0", "100 draws of (r, n, ell, sigma_r)", 1e-12).with_scale(1.0);
    for _ in 0..100 {
        let r = rng.gen_range(0.2..5.0);
        let n = rng.gen_range(0.5..5.0);
        let ell = rng.gen_range(2.1..10.0);
        let s = rng.gen_range(0.2..3.0);
        let (general, vortex) = vortex_reduction(n, ell, s, r)?;
        acc.push_rel((general - vortex) / vortex.abs().max(f64::MIN_POSITIVE));
    }
    out.push(acc.finish());
    Ok(out)
}

/// Q from the general closed form with R = 1, Theta = c1 theta + c2 and
/// c1 = -rho_T sigma_r, evaluated at the momentum radius rho = rho_T sigma_r / r,
/// next to the vortex-model Q at r.
pub fn vortex_reduction(n: f64, ell: f64, sigma_r: f64, r: f64) -> Result<(f64, f64)> {
    let p = params(n, ell);
    let m = PsiModel::new(n, ell, sigma_r, p.sigma_v)?;
    let fac = AngularFactor::new(0.0, m.c1(), 0.3)?;
    let rho = m.rho_t() * sigma_r / r;
    let general = quantum_potential(&p, &RadialSolution::constant(), &fac, rho, 0.7)?;
    Ok((general, m.quantum_potential(r)?))
}

// ---------------------------------------------------------------- psi

fn circle(r: f64, cx: f64, cy: f64, m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / m as f64;
            (cx + r * t.cos(), cy + r * t.sin())
        })
        .collect()
}

/// -d ln|U| / d ln r at r from two points 1% apart, and the sign of U.
pub fn u_loglog_slope(m: &PsiModel<f64>, r: f64) -> Result<(f64, f64)> {
    let (a, b) = (m.classical_potential(r)?, m.classical_potential(1.01 * r)?);
    Ok((-(b.abs().ln() - a.abs().ln()) / 1.01f64.ln(), a.signum()))
}

pub fn suite_psi() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let regimes = [PsiRegime::TwoZeros, PsiRegime::Critical, PsiRegime::OneZero];
    for reg in regimes {
        let m = PsiModel::with_regime(4.0, 6.0, 1.0, reg)?;
        let grid = "r/sigma_r in 0.05..5 (100 points) x phi in 0..2pi (8 points), t = 0.7";
        let mut acc = ResidualAccumulator::new(format!("Schroedinger residual analytic (4,6) {}", reg.as_str()), grid, 1e-8).with_scale(1.0);
        for i in 0..100 {
            let r = m.sigma_r * (0.05 + 0.05 * i as f64);
            for j in 0..8 {
                let (res, sc) = m.schrodinger_residual(r, 2.0 * PI * j as f64 / 8.0, 0.7)?;
                acc.push_rel(if sc > 0.0 { res / sc } else { 0.0 });
            }
        }
        out.push(acc.finish());
        let mut acc = ResidualAccumulator::new(format!("Schroedinger residual FD (4,6) {}", reg.as_str()), "r/sigma_r in 0.5..5, h = 1e-4 sigma_r", 1e-4).with_scale(1.0);
        for i in 0..46 {
            let r = m.sigma_r * (0.5 + 0.1 * i as f64);
            let (res, sc) = m.schrodinger_residual_fd(r, 1e-4 * m.sigma_r)?;
            acc.push_rel(res / sc);
        }
        out.push(acc.finish());

        let mut acc = ResidualAccumulator::new(format!("U at its closed-form zeros {}", reg.as_str()), "all zeros", 1e-9).with_scale(1.0);
        for r in m.u_zeros() {
            acc.push(m.classical_potential(r)?, 0.0);
        }
        out.push(acc.finish());

        let (want_sign, want_exp) = reg.asymptotic(m.n);
        let (slope, sign) = u_loglog_slope(&m, 1e3 * m.sigma_r)?;
        let mut acc = ResidualAccumulator::new(format!("U asymptotic exponent {}", reg.as_str()), "log-log slope at r = 1e3 sigma_r", 0.02).with_scale(1.0);
        acc.push_rel((slope - want_exp) / want_exp + if sign == want_sign { 0.0 } else { 1.0 });
        out.push(acc.finish());

        let mut acc = ResidualAccumulator::new(format!("Hamilton-Jacobi closure {}", reg.as_str()), "r/sigma_r in 0.1..5", 1e-10).with_scale(1.0);
        for i in 1..=50 {
            let r = 0.1 * i as f64 * m.sigma_r;
            let v = m.speed(r)?;
            let sc = (v * v / 2.0).abs().max(m.quantum_potential(r)?.abs());
            acc.push_rel(m.hj_residual(r)? / sc);
        }
        out.push(acc.finish());
    }

    let m = PsiModel::new(4.0, 6.0, 1.0, 1.0)?;
    let nrm = quad2d_polar(|r, _| m.density(r), (0.0, f64::INFINITY), (0.0, 2.0 * PI), 1e-12)?;
    let mut acc = ResidualAccumulator::new("normalization by 2-D quadrature", "(4,6), sigma_r = 1", 1e-6).with_scale(1.0);
    acc.push_rel(nrm - 1.0);
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("sigma_r: quadrature vs closed form", "(4,6) and (4,8)", 1e-6).with_scale(1.0);
    for &(n, ell) in &[(4.0, 6.0), (4.0, 8.0)] {
        let m = PsiModel::new(n, ell, 1.0, 1.0)?;
        let mom = |s: i32| adaptive_quad(|r| Ok(2.0 * PI * r * r.powi(s) * m.density(r)?), 0.0, f64::INFINITY, 1e-13);
        let (m1, m2) = (mom(1)?, mom(2)?);
        let sq = (m2 - m1 * m1).sqrt();
        let cf = m.sigma_r_closed()?;
        acc.push_rel((sq - cf) / cf);
    }
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("moment s = 1 quadrature vs closed form", "(4,8)", 1e-6).with_scale(1.0);
    let m8 = PsiModel::new(4.0, 8.0, 1.0, 1.0)?;
    let q = adaptive_quad(|r| Ok(2.0 * PI * r * r * m8.density(r)?), 0.0, f64::INFINITY, 1e-13)?;
    acc.push_rel((q - m8.radial_moment(1)?) / q);
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("circulation equals (h/2)|c1|", "circle r=1 and ellipse, 1e4 segments", 1e-8).with_scale(1.0);
    let want = m.quantized_circulation();
    let c = circle(1.0, 0.0, 0.0, 10_000);
    acc.push_rel((m.bohr_sommerfeld(&c)? - want) / want);
    let e: Vec<(f64, f64)> = c.iter().map(|&(x, y)| (2.5 * x + 0.3, 0.6 * y - 0.1)).collect();
    acc.push_rel((m.bohr_sommerfeld(&e)? - want) / want);
    out.push(acc.finish());

    let mut acc = ResidualAccumulator::new("circulation off the origin vanishes", "circle r=0.5 at (2,1)", 1e-10).with_scale(1.0);
    acc.push(m.circulation(&circle(0.5, 2.0, 1.0, 2000))?, 0.0);
    out.push(acc.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope").is_err());
    }

    #[test]
    fn derived_slope_minimum() {
        assert!((slope_min_location(1.0) - 2.0).abs() < 1e-15);
        assert!((slope_min_numeric(1.0, 2.0).unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn specfun_suite_passes() {
        for r in suite_specfun().unwrap() {
            assert!(r.pass, "{}", r.summary());
        }
    }
}
