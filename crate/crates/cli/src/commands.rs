//! Subcommand bodies. Each reads its settings, validates the whole config
//! before computing, then writes one table (and a JSON sidecar where noted).

use std::fmt;
use std::path::PathBuf;

use hodograph_core::mapper::{radial_setup, sample_fields, sector_normalization, JacobianSigns, SampleFlag, SectorDomain};
use hodograph_core::maxwell::ModelParams;
use hodograph_core::momentum::{
    characteristic_chi, factorized_derivs, laguerre_bruteforce, laguerre_enumerate, laguerre_fixed_ell,
    slope_rho_theta, AngularFactor, CharacteristicKind, RadialKind, RadialSolution,
};
use hodograph_core::potentials::{PsiModel, PsiRegime};
use hodograph_core::verifier::{run_suite, SUITES};
use hodograph_core::Error as CoreError;
use serde_json::json;

use crate::config::{usage, Settings};
use crate::output::{num, sidecar_path, write_json, Table};

/// At least one verification report failed; maps to exit code 4.
#[derive(Debug)]
pub struct VerificationFailed(pub usize);

impl fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} verification report(s) failed", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn model(s: &mut Settings) -> anyhow::Result<ModelParams<f64>> {
    let n = s.get("n", None)?;
    let ell = s.get("ell", None)?;
    let sigma_v = s.get("sigma_v", Some(1.0))?;
    let alpha = s.get("alpha", Some(-0.5))?;
    let beta = s.get("beta", Some(1.0))?;
    Ok(ModelParams::new(n, ell, sigma_v)?.with_alpha(alpha)?.with_beta(beta)?)
}

fn output(s: &mut Settings) -> anyhow::Result<Option<PathBuf>> {
    s.opt::<PathBuf>("output")
}

/// Radial and angular factors from `radial`, `lambda`, `k`, `theta_c1`,
/// `theta_c2` and, for the radial hyperbolic solution, `c0`.
fn solution(
    s: &mut Settings,
    p: ModelParams<f64>,
) -> anyhow::Result<(ModelParams<f64>, RadialSolution<f64>, AngularFactor<f64>)> {
    let radial: String = s.get("radial", Some("kummer-plus".to_string()))?;
    if radial == "omega" {
        let c0 = s.get("c0", Some(1.0))?;
        return Ok(radial_setup(&p.with_constants(c0, p.c1, p.c2)));
    }
    let c1 = s.get("theta_c1", Some(0.0))?;
    let c2 = s.get("theta_c2", Some(1.0))?;
    if radial == "laguerre" {
        let lambda: f64 = s.get("lambda", None)?;
        let k: usize = s.get("k", None)?;
        return Ok((p, RadialSolution::laguerre(&p, lambda, k)?, AngularFactor::new(lambda, c1, c2)?));
    }
    let kind: RadialKind = radial
        .parse()
        .map_err(|_| usage(format!("radial = {radial:?}: expected kummer-plus, kummer-minus, tricomi-plus, tricomi-minus, laguerre, constant or omega")))?;
    if kind == RadialKind::Constant {
        return Ok((p, RadialSolution::constant(), AngularFactor::new(0.0, c1, c2)?));
    }
    if kind == RadialKind::HyperbolicOmega {
        unreachable!("handled by the omega branch");
    }
    let lambda: f64 = s.get("lambda", None)?;
    Ok((p, RadialSolution::kummer(&p, kind, lambda)?, AngularFactor::new(lambda, c1, c2)?))
}

/// Sector from `rho1`, `rho2` (rho_T units) and `theta_min`, `theta_max` (degrees).
fn domain(s: &mut Settings, p: &ModelParams<f64>) -> anyhow::Result<(SectorDomain<f64>, usize, usize)> {
    let rho1 = s.get("rho1", None)?;
    let rho2 = s.get("rho2", None)?;
    let tmax: f64 = s.get("theta_max", Some(12.0))?;
    let tmin = s.get("theta_min", Some(-tmax))?;
    let n_rho: usize = s.get("n_rho", Some(41))?;
    let n_theta: usize = s.get("n_theta", Some(41))?;
    if n_rho < 2 || n_theta < 2 {
        return Err(usage("n_rho and n_theta must be at least 2"));
    }
    Ok((SectorDomain::from_units(p, rho1, rho2, tmin, tmax)?, n_rho, n_theta))
}

pub fn classify(mut s: Settings) -> anyhow::Result<()> {
    let p = model(&mut s)?;
    let rhos: Vec<f64> = s.list("rho", None)?;
    let out = output(&mut s)?;
    s.finish()?;
    let mut t = Table::new(&["rho_over_rho_t", "rho", "delta", "g", "region"]);
    t.comments(s.echo());
    for rb in rhos {
        if !(rb > 0.0) {
            return Err(usage(format!("rho = {rb} must be positive")));
        }
        let rho = rb * p.rho_t();
        t.row(vec![num(rb), num(rho), num(p.delta(rho)), num(p.coeff_g(rho)), p.classify(rho).as_str().into()]);
    }
    t.emit(out.as_deref())
}

pub fn characteristics(mut s: Settings) -> anyhow::Result<()> {
    let p = model(&mut s)?;
    let rhos: Vec<f64> = s.list("rho", None)?;
    let theta_deg: f64 = s.get("theta", Some(0.0))?;
    let kind: String = s.get("kind", Some("all".to_string()))?;
    let out = output(&mut s)?;
    s.finish()?;
    let kinds: Vec<CharacteristicKind> = if kind == "all" {
        CharacteristicKind::ALL.to_vec()
    } else {
        vec![kind.parse().map_err(|e: CoreError| usage(e.to_string()))?]
    };
    let th = theta_deg.to_radians();
    let mut t = Table::new(&["rho_over_rho_t", "theta", "kind", "chi", "saturated", "slope"]);
    t.comments(s.echo());
    for rb in rhos {
        let rho = rb * p.rho_t();
        for &k in &kinds {
            // Families are listed only on their own side of rho_T.
            let Ok(c) = characteristic_chi(&p, k, rho, th) else { continue };
            t.row(vec![num(rb), num(th), k.as_str().into(), num(c.value), c.saturated.to_string(), num(slope_rho_theta(&p, rho))]);
        }
    }
    t.emit(out.as_deref())
}

pub fn laguerre_enum(mut s: Settings) -> anyhow::Result<()> {
    let n: f64 = s.get("n", None)?;
    if !(n > 0.0) {
        return Err(usage("n must be positive"));
    }
    let fixed: Option<f64> = s.opt("ell_fixed")?;
    match fixed {
        None => {
            let lambdas: Vec<f64> = s.list("lambda", None)?;
            let ell_max: f64 = s.get("ell_max", Some(100.0))?;
            let out = output(&mut s)?;
            s.finish()?;
            let mut t = Table::new(&["lambda", "k", "ell", "alpha_bar", "residual"]);
            t.comments(s.echo());
            for c in laguerre_enumerate(n, &lambdas, ell_max) {
                let (ell, ab) = match (c.ell, c.alpha_bar) {
                    (Some(l), Some(a)) => (num(l), num(a)),
                    _ => ("any".into(), "ell+2".into()),
                };
                t.row(vec![num(c.lambda), c.k.to_string(), ell, ab, num(c.residual())]);
            }
            t.emit(out.as_deref())
        }
        Some(ell) => {
            let k_max: usize = s.get("k_max", Some(12))?;
            let integer_only: bool = s.get("integer_only", Some(false))?;
            let out = output(&mut s)?;
            s.finish()?;
            let mut t = Table::new(&["lambda", "lambda_sq", "k", "alpha_bar", "lambda_sq_integer", "bruteforce"]);
            t.comments(s.echo());
            for r in laguerre_fixed_ell(n, ell, k_max) {
                if integer_only && !r.lambda_sq_integer {
                    continue;
                }
                // Independent check: scan k directly through the exponent formula.
                let hits = laguerre_bruteforce(n, ell, r.lambda, 4 * k_max.max(1));
                let confirmed = hits.iter().any(|&(k, ab)| k == r.k && (ab - r.alpha_bar).abs() <= 1e-9 * ab.abs().max(1.0));
                let status = if confirmed { "confirmed" } else { "mismatch" };
                t.row(vec![num(r.lambda), num(r.lambda_sq), r.k.to_string(), num(r.alpha_bar), r.lambda_sq_integer.to_string(), status.into()]);
            }
            t.emit(out.as_deref())
        }
    }
}

pub fn solve_momentum(mut s: Settings) -> anyhow::Result<()> {
    let p0 = model(&mut s)?;
    let (p, sol, fac) = solution(&mut s, p0)?;
    let (dom, n_rho, n_theta) = domain(&mut s, &p)?;
    if sol.kind == RadialKind::HyperbolicOmega {
        dom.require_hyperbolic(&p)?;
    }
    let out = output(&mut s)?;
    s.finish()?;
    let mut t = Table::new(&["rho", "theta", "u", "u_rho", "u_theta", "region"]);
    t.comments(s.echo());
    for (rho, th) in dom.grid(n_rho, n_theta)? {
        let d = factorized_derivs(&p, &sol, &fac, rho, th)?;
        t.row(vec![num(rho), num(th), num(d.u), num(d.u_r), num(d.u_t), p.classify(rho).as_str().into()]);
    }
    t.emit(out.as_deref())
}

pub const FIELD_COLUMNS: [&str; 11] =
    ["x", "y", "phi", "vx", "vy", "speed", "density", "q_pot", "u_pot", "jac_inv", "region"];

fn min_max<I: Iterator<Item = f64>>(it: I) -> serde_json::Value {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in it.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo > hi {
        json!(null)
    } else {
        json!({ "min": lo, "max": hi })
    }
}

pub fn map_fields(mut s: Settings) -> anyhow::Result<()> {
    let p0 = model(&mut s)?;
    let (p, sol, fac) = solution(&mut s, p0)?;
    let (dom, n_rho, n_theta) = domain(&mut s, &p)?;
    if sol.kind == RadialKind::HyperbolicOmega {
        dom.require_hyperbolic(&p)?;
    }
    let on_fold: String = s.get("on_fold", Some("mask".to_string()))?;
    if on_fold != "mask" && on_fold != "fail" {
        return Err(usage("on_fold must be mask or fail"));
    }
    let normalization: String = s.get("normalization", Some("speed".to_string()))?;
    let energy: f64 = s.get("energy", Some(0.0))?;
    let out = output(&mut s)?.ok_or_else(|| usage("map-fields needs --output <file.csv>"))?;
    s.finish()?;

    let norm = match normalization.as_str() {
        "speed" => p.speed_normalization()?,
        "sector" => sector_normalization(&p, &sol, &fac, &dom, 1e-10)?,
        "none" => 1.0,
        other => other
            .parse::<f64>()
            .map_err(|_| usage(format!("normalization = {other:?}: expected speed, sector, none or a number")))?,
    };
    let samples = sample_fields(&p, &sol, &fac, &dom, n_rho, n_theta, norm)?;
    let signs = JacobianSigns::of(&samples);
    if on_fold == "fail" && !signs.univalent() {
        return Err(CoreError::FoldDetected.into());
    }

    let mut t = Table::new(&FIELD_COLUMNS);
    t.comments(s.echo());
    for f in &samples {
        t.row(vec![
            num(f.x),
            num(f.y),
            num(f.phi),
            num(f.vx),
            num(f.vy),
            num(f.speed),
            num(f.density),
            num(f.q_pot),
            num(f.u_pot + energy),
            num(f.jac_inv),
            f.region.as_str().into(),
        ]);
    }
    t.emit(Some(&out))?;

    let count = |flag: SampleFlag| samples.iter().filter(|f| f.flag == flag).count();
    let sidecar = json!({
        "config": s.resolved(),
        "rows": t.len(),
        "normalization": norm,
        "rho_t": p.rho_t(),
        "flags": { "ok": count(SampleFlag::Ok), "degenerate": count(SampleFlag::Degenerate), "failed": count(SampleFlag::Failed) },
        "jacobian": { "positive": signs.positive, "negative": signs.negative, "zero": signs.zero, "univalent": signs.univalent() },
        "stats": {
            "speed": min_max(samples.iter().map(|f| f.speed)),
            "density": min_max(samples.iter().map(|f| f.density)),
            "radius": min_max(samples.iter().map(|f| f.x.hypot(f.y))),
            "q_pot": min_max(samples.iter().map(|f| f.q_pot)),
            "u_pot": min_max(samples.iter().map(|f| f.u_pot + energy)),
        },
    });
    write_json(Some(&sidecar_path(&out)), &sidecar)?;
    if !signs.univalent() {
        eprintln!(
            "note: inverse Jacobian changes sign on the grid ({} positive, {} negative); the map folds and those samples belong to different sheets",
            signs.positive, signs.negative
        );
    }
    Ok(())
}

pub fn psi_model(mut s: Settings) -> anyhow::Result<()> {
    let n: f64 = s.get("n", None)?;
    let ell: f64 = s.get("ell", None)?;
    let sigma_v: f64 = s.get("sigma_v", Some(1.0))?;
    let regime: Option<String> = s.opt("regime")?;
    let m = match regime {
        Some(r) => {
            if s.has("sigma_r") {
                return Err(usage("give either sigma_r or regime, not both"));
            }
            let reg: PsiRegime = r.parse().map_err(|e: CoreError| usage(e.to_string()))?;
            PsiModel::with_regime(n, ell, sigma_v, reg)?
        }
        None => PsiModel::new(n, ell, s.get("sigma_r", Some(1.0))?, sigma_v)?,
    };
    let r_max: f64 = s.get("r_max", Some(5.0))?;
    let n_r: usize = s.get("n_r", Some(200))?;
    let out = output(&mut s)?;
    s.finish()?;
    if !(r_max > 0.0) || n_r == 0 {
        return Err(usage("r_max must be positive and n_r at least 1"));
    }

    let sr = m.sigma_r;
    let mut t = Table::new(&["r", "density", "q_pot", "u_pot", "v_phi"]);
    t.comments(s.echo());
    for i in 1..=n_r {
        let r = r_max * i as f64 / n_r as f64;
        let ra = r * sr;
        t.row(vec![num(r), num(m.density(ra)?), num(m.quantum_potential(ra)?), num(m.classical_potential(ra)?), num(m.speed(ra)?)]);
    }
    t.emit(out.as_deref())?;

    let zeros: Vec<f64> = m.u_zeros().into_iter().map(|r| r / sr).collect();
    let summary = json!({
        "config": s.resolved(),
        "regime": m.regime().as_str(),
        "sigma_r": sr,
        "c1": m.c1(),
        "normalization": m.normalization()?,
        "u_zeros_over_sigma_r": zeros,
        "circulation": m.quantized_circulation(),
    });
    match out {
        Some(p) => write_json(Some(&sidecar_path(&p)), &summary)?,
        None => eprintln!("{}", serde_json::to_string(&summary)?),
    }
    Ok(())
}

pub fn verify(mut s: Settings) -> anyhow::Result<()> {
    let suite: String = s.get("suite", Some("all".to_string()))?;
    let out = output(&mut s)?;
    s.finish()?;
    if !SUITES.contains(&suite.as_str()) {
        return Err(usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))));
    }
    let reports = run_suite(&suite)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    for r in &reports {
        eprintln!("{}", r.summary());
    }
    write_json(out.as_deref(), &json!({ "suite": suite, "pass": failed == 0, "reports": reports }))?;
    if failed > 0 {
        return Err(VerificationFailed(failed).into());
    }
    Ok(())
}

