//! Finite-difference residual harnesses for the momentum-space linear
//! equation and the coordinate-space nonlinear equation. Every derivative
//! here is taken numerically from point values; the closed forms under test
//! are only ever evaluated, never differentiated analytically.

use crate::error::{Error, Result};
use crate::mapper::{forward_map, invert_map, jac_inv_closed_form, InvertOptions, SectorDomain};
use crate::maxwell::ModelParams;
use crate::momentum::{AngularFactor, RadialSolution};
use crate::specfun::SeriesControl;
use crate::verifier::fd::{noise_floor_second, step_second};
use crate::verifier::report::{ResidualAccumulator, StepSweep, VerificationReport};

/// Relative size of the second-difference step against the local length scale.
fn h_rel() -> f64 {
    step_second(1.0f64)
}

/// Interior of an (n_rho x n_theta) grid over the domain: the boundary rows
/// and columns are dropped so stencils never leave the sector.
fn interior(domain: &SectorDomain<f64>, n_rho: usize, n_theta: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n_rho * n_theta);
    for i in 1..=n_rho {
        let rho = domain.rho_min + (domain.rho_max - domain.rho_min) * i as f64 / (n_rho + 1) as f64;
        for j in 1..=n_theta {
            let th = domain.theta_min + (domain.theta_max - domain.theta_min) * j as f64 / (n_theta + 1) as f64;
            out.push((rho, th));
        }
    }
    out
}

/// Residual u_rr + g (u_r/rho + u_tt/rho^2) of a momentum-space solution by
/// central differences on an n_rho x n_theta interior grid, at steps h and h/2.
/// The relative scale is the largest term magnitude over the grid.
pub fn pde_residual_momentum<F>(
    name: &str,
    p: &ModelParams<f64>,
    u: F,
    domain: &SectorDomain<f64>,
    n_rho: usize,
    n_theta: usize,
    tol: f64,
) -> VerificationReport
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let pts = interior(domain, n_rho, n_theta);
    let grid = format!("{n_rho}x{n_theta} interior of rho [{}, {}]", domain.rho_min, domain.rho_max);
    let run = |hr: f64| -> ResidualAccumulator {
        let mut acc = ResidualAccumulator::new(name, grid.clone(), tol);
        for &(rho, th) in &pts {
            let (hp, ht) = (hr * rho, hr);
            let vals = (|| -> Result<[f64; 5]> {
                Ok([u(rho, th)?, u(rho + hp, th)?, u(rho - hp, th)?, u(rho, th + ht)?, u(rho, th - ht)?])
            })();
            let Ok([c, rp, rm, tp, tm]) = vals else {
                acc.skip();
                continue;
            };
            let u_r = (rp - rm) / (2.0 * hp);
            let u_rr = (rp - 2.0 * c + rm) / (hp * hp);
            let u_tt = (tp - 2.0 * c + tm) / (ht * ht);
            let g = p.coeff_g(rho);
            let t = [u_rr, g * u_r / rho, g * u_tt / (rho * rho)];
            acc.push(t[0] + t[1] + t[2], t.iter().map(|x| x.abs()).fold(0.0, f64::max));
        }
        acc
    };
    let hr = h_rel();
    let a = run(hr).finish();
    let b = run(hr / 2.0).finish();
    let sweep = StepSweep::new(a.max_rel(), b.max_rel(), noise_floor_second(hr / 2.0));
    a.with_sweep(sweep)
}

/// Values of Phi on a 3x3 coordinate stencil around (x0, y0), obtained by
/// inverting the map from the seed. None when any inversion fails.
fn phi_stencil(
    p: &ModelParams<f64>,
    sol: &RadialSolution<f64>,
    fac: &AngularFactor<f64>,
    center: (f64, f64),
    seed: (f64, f64),
    h: f64,
) -> Option<[[f64; 3]; 3]> {
    let opts = InvertOptions { max_iter: 60, tol: 1e-13 };
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let tx = center.0 + (i as f64 - 1.0) * h;
            let ty = center.1 + (j as f64 - 1.0) * h;
            let (r, t) = invert_map(p, sol, fac, (tx, ty), seed, &opts).ok()?;
            *v = forward_map(p, sol, fac, r, t).ok()?.phi_val;
        }
    }
    Some(out)
}

/// Derivatives of Phi from a 3x3 stencil: (Phi_x, Phi_y, Phi_xx, Phi_xy, Phi_yy).
fn stencil_derivs(s: &[[f64; 3]; 3], h: f64) -> [f64; 5] {
    let px = (s[2][1] - s[0][1]) / (2.0 * h);
    let py = (s[1][2] - s[1][0]) / (2.0 * h);
    let pxx = (s[2][1] - 2.0 * s[1][1] + s[0][1]) / (h * h);
    let pyy = (s[1][2] - 2.0 * s[1][1] + s[1][0]) / (h * h);
    let pxy = (s[2][2] - s[2][0] - s[0][2] + s[0][0]) / (4.0 * h * h);
    [px, py, pxx, pxy, pyy]
}

/// Local coordinate length: the smaller column norm of the differential in
/// (log rho, theta).
fn local_length(d: &[[f64; 2]; 2], rho: f64) -> f64 {
    let c0 = (d[0][0] * rho).hypot(d[1][0] * rho);
    let c1 = d[0][1].hypot(d[1][1]);
    c0.min(c1)
}

/// Reports from one pass of coordinate-space checks.
#[derive(Debug, Clone)]
pub struct CoordinateReports {
    /// Nonlinear equation residual with h-sweep.
    pub pde: VerificationReport,
    /// |grad Phi - (xi, eta)| / rho.
    pub gradient: VerificationReport,
}

/// Residual of [1 + h Phi_x^2] Phi_xx + 2 h Phi_x Phi_y Phi_xy + [1 + h Phi_y^2] Phi_yy
/// with h = h(|alpha grad Phi|), and the gradient consistency grad Phi = (xi, eta),
/// all by finite differences over coordinate stencils built with the numerical
/// inverse map. Points with |J^-1| below 1e-6 of the grid maximum, or whose
/// stencil crosses a fold, are skipped and counted.
#[allow(clippy::too_many_arguments)]
pub fn coordinate_checks(
    name: &str,
    p: &ModelParams<f64>,
    sol: &RadialSolution<f64>,
    fac: &AngularFactor<f64>,
    domain: &SectorDomain<f64>,
    n_rho: usize,
    n_theta: usize,
    tol_pde: f64,
    tol_grad: f64,
) -> Result<CoordinateReports> {
    let pts = interior(domain, n_rho, n_theta);
    let grid = format!("{n_rho}x{n_theta} interior, coordinate 3x3 stencils");
    let mut jmax = 0.0f64;
    let mut base = Vec::with_capacity(pts.len());
    for &(rho, th) in &pts {
        let m = forward_map(p, sol, fac, rho, th)?;
        let d = crate::mapper::map_differential(p, sol, fac, rho, th)?;
        jmax = jmax.max(m.jac_inv.abs());
        base.push((rho, th, m, d));
    }
    let hr = h_rel();
    let mut acc_h = ResidualAccumulator::new(format!("{name}: nonlinear residual"), grid.clone(), tol_pde);
    let mut acc_h2 = ResidualAccumulator::new(format!("{name}: nonlinear residual h/2"), grid.clone(), tol_pde);
    let mut acc_g = ResidualAccumulator::new(format!("{name}: gradient = (xi, eta)"), grid, tol_grad);
    let mut min_rel_step = hr / 4.0;
    for (rho, th, m, d) in base {
        if !(m.jac_inv.abs() >= 1e-6 * jmax) {
            acc_h.skip();
            acc_h2.skip();
            acc_g.skip();
            continue;
        }
        let cond = conditioning(&d, rho).max(0.05);
        let h = hr * local_length(&d, rho) * cond;
        min_rel_step = min_rel_step.min(hr * cond / 4.0);
        let stencils: Option<Vec<[f64; 5]>> = [1.0, 0.5, 0.25]
            .iter()
            .map(|f| phi_stencil(p, sol, fac, (m.x, m.y), (rho, th), f * h).map(|s| stencil_derivs(&s, f * h)))
            .collect();
        let Some(ds) = stencils else {
            acc_h.skip();
            acc_h2.skip();
            acc_g.skip();
            continue;
        };
        // Richardson combinations at h and h/2.
        let rich = |a: &[f64; 5], b: &[f64; 5]| -> [f64; 5] { std::array::from_fn(|k| (4.0 * b[k] - a[k]) / 3.0) };
        let (r1, r2) = (rich(&ds[0], &ds[1]), rich(&ds[1], &ds[2]));
        for (acc, dv) in [(&mut acc_h, &r1), (&mut acc_h2, &r2)] {
            let [px, py, pxx, pxy, pyy] = *dv;
            let z = p.alpha.abs() * px.hypot(py);
            let Ok(hc) = p.coeff_h(z) else {
                acc.skip();
                continue;
            };
            let terms = [pxx, hc * px * px * pxx, 2.0 * hc * px * py * pxy, pyy, hc * py * py * pyy];
            let res: f64 = terms.iter().sum();
            let scale = terms.iter().map(|t| t.abs()).sum::<f64>();
            acc.push_rel(res / scale);
        }
        let [px, py, ..] = r1;
        let (xi, eta) = (rho * th.cos(), rho * th.sin());
        acc_g.push_rel((px - xi).hypot(py - eta) / rho);
    }
    let a = acc_h.finish();
    let b = acc_h2.finish();
    let sweep = StepSweep::new(a.max_rel(), b.max_rel(), noise_floor_second(min_rel_step));
    Ok(CoordinateReports { pde: a.with_sweep(sweep), gradient: acc_g.finish() })
}

/// The nonlinear coordinate-space residual alone.
#[allow(clippy::too_many_arguments)]
pub fn pde_residual_coordinate(
    name: &str,
    p: &ModelParams<f64>,
    sol: &RadialSolution<f64>,
    fac: &AngularFactor<f64>,
    domain: &SectorDomain<f64>,
    n_rho: usize,
    n_theta: usize,
    tol: f64,
) -> Result<VerificationReport> {
    Ok(coordinate_checks(name, p, sol, fac, domain, n_rho, n_theta, tol, f64::INFINITY)?.pde)
}

/// J^-1 = w_xixi w_etaeta - w_xieta^2 with w_xi = x, w_eta = y, differentiated
/// numerically in Cartesian momenta, against the closed form.
#[allow(clippy::too_many_arguments)]
pub fn jacobian_check(
    name: &str,
    p: &ModelParams<f64>,
    sol: &RadialSolution<f64>,
    fac: &AngularFactor<f64>,
    domain: &SectorDomain<f64>,
    n_rho: usize,
    n_theta: usize,
    tol: f64,
) -> Result<VerificationReport> {
    let xy = |xi: f64, eta: f64| -> Result<(f64, f64)> {
        let m = forward_map(p, sol, fac, xi.hypot(eta), eta.atan2(xi))?;
        Ok((m.x, m.y))
    };
    let mut acc = ResidualAccumulator::new(name, format!("{n_rho}x{n_theta} interior"), tol);
    let h_first = f64::EPSILON.cbrt();
    for (rho, th) in interior(domain, n_rho, n_theta) {
        let (xi, eta) = (rho * th.cos(), rho * th.sin());
        let h = h_first * rho;
        let (a, b) = (xy(xi + h, eta)?, xy(xi - h, eta)?);
        let (c, d) = (xy(xi, eta + h)?, xy(xi, eta - h)?);
        let x_xi = (a.0 - b.0) / (2.0 * h);
        let y_xi = (a.1 - b.1) / (2.0 * h);
        let x_eta = (c.0 - d.0) / (2.0 * h);
        let y_eta = (c.1 - d.1) / (2.0 * h);
        let fd = x_xi * y_eta - x_eta * y_xi;
        let exact = jac_inv_closed_form(p, sol, fac, rho, th)?;
        acc.push(fd - exact, (x_xi * y_eta).abs().max((x_eta * y_xi).abs()));
    }
    Ok(acc.finish())
}

/// Quantum potential by the definition (alpha/beta) Lap sqrt f / sqrt f with
/// sqrt f = sqrt F(|alpha| rho(x, y)); the Laplacian is a five-point stencil
/// over coordinate points located with the numerical inverse map.
pub fn quantum_potential_fd(
    p: &ModelParams<f64>,
    sol: &RadialSolution<f64>,
    fac: &AngularFactor<f64>,
    rho: f64,
    theta: f64,
    h_scale: f64,
) -> Result<f64> {
    let m = forward_map(p, sol, fac, rho, theta)?;
    let d = crate::mapper::map_differential(p, sol, fac, rho, theta)?;
    // Near a fold Q varies on the scale of the smallest singular value, so
    // the step shrinks with the conditioning of the differential.
    let h = h_scale * h_rel() * local_length(&d, rho) * conditioning(&d, rho).max(0.05);
    let opts = InvertOptions { max_iter: 60, tol: 1e-13 };
    let amp = |dx: f64, dy: f64| -> Result<f64> {
        let (r, _) = invert_map(p, sol, fac, (m.x + dx, m.y + dy), (rho, theta), &opts)?;
        Ok(p.density_f(p.alpha.abs() * r, 1.0)?.sqrt())
    };
    let c = amp(0.0, 0.0)?;
    if c == 0.0 {
        return Err(Error::Node("density"));
    }
    let lap = |h: f64| -> Result<f64> {
        Ok((amp(h, 0.0)? + amp(-h, 0.0)? + amp(0.0, h)? + amp(0.0, -h)? - 4.0 * c) / (h * h))
    };
    // Richardson step removes the h^2 term.
    let (l1, l2) = (lap(h)?, lap(h / 2.0)?);
    Ok(p.alpha / p.beta * (4.0 * l2 - l1) / 3.0 / c)
}

/// sigma_min / sigma_max of the differential with the rho column scaled by rho.
fn conditioning(d: &[[f64; 2]; 2], rho: f64) -> f64 {
    let (a, b, c, e) = (d[0][0] * rho, d[0][1], d[1][0] * rho, d[1][1]);
    let fro2 = a * a + b * b + c * c + e * e;
    let det = (a * e - b * c).abs();
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let smax2 = (fro2 + disc) / 2.0;
    if smax2 == 0.0 {
        return 0.0;
    }
    (det * det / smax2).sqrt() / smax2.sqrt()
}

/// Derivative of a radial function in the Hill variable zeta, by inverting
/// zeta(rho) with bisection and differencing in zeta. Returns
/// (R_zetazeta + G R, |G R| + |R_zetazeta|).
pub fn hill_residual(
    p: &ModelParams<f64>,
    sol: &RadialSolution<f64>,
    rho: f64,
) -> Result<(f64, f64)> {
    use crate::momentum::{hill_coefficient_g, hill_substitution_zeta};
    use crate::verifier::roots::bisect;
    let ctrl = SeriesControl::default();
    let zeta = |r: f64| hill_substitution_zeta(p, r, &ctrl);
    let z0 = zeta(rho)?;
    let zbar = crate::momentum::zeta_bar(p, rho);
    let h = h_rel() * zbar * rho;
    let rho_of = |z: f64| -> Result<f64> {
        let (mut lo, mut hi) = (rho * 0.5, rho * 2.0);
        while zeta(lo)? > z {
            lo *= 0.5;
        }
        while zeta(hi)? < z {
            hi *= 2.0;
        }
        bisect(|r| Ok(zeta(r)? - z), lo, hi, 4.0 * f64::EPSILON * hi)
    };
    let r_at = |z: f64| -> Result<f64> { Ok(sol.eval(p, rho_of(z)?)?[0]) };
    let c = sol.eval(p, rho)?[0];
    let d2 = (r_at(z0 + h)? - 2.0 * c + r_at(z0 - h)?) / (h * h);
    let g = hill_coefficient_g(p, sol.lambda, rho);
    Ok((d2 + g * c, d2.abs().max((g * c).abs())))
}
