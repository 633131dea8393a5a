//! `hodograph`: parameter parsing, solution selection, field export and
//! verification campaigns over hodograph-core.
//!
//! Exit codes: 0 ok, 1 usage or parameter error, 2 degenerate map (lambda = 1),
//! 3 fold (with `--on-fold fail`), 4 verification failure.

// `!(x > 0)` is used on purpose so NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hodograph_core::Error as CoreError;

use crate::commands::VerificationFailed;
use crate::config::{Settings, Usage};

#[derive(Parser, Debug)]
#[command(name = "hodograph", version, about = "Exact generalized-Maxwell flows: momentum solutions, mapped fields, potentials")]
struct Cli {
    /// Settings file of `key = value` lines; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default)]
struct ModelArgs {
    #[arg(long)]
    n: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<f64>,
    #[arg(long)]
    sigma_v: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
}

impl ModelArgs {
    fn apply(&self, s: &mut Settings) {
        s.set("n", self.n);
        s.set("ell", self.ell);
        s.set("sigma_v", self.sigma_v);
        s.set("alpha", self.alpha);
        s.set("beta", self.beta);
    }
}

#[derive(Args, Debug, Default)]
struct SolutionArgs {
    /// kummer-plus, kummer-minus, tricomi-plus, tricomi-minus, laguerre, constant or omega.
    #[arg(long)]
    radial: Option<String>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Polynomial degree for `--radial laguerre`.
    #[arg(long)]
    k: Option<usize>,
    /// Theta = c1 sin(lambda theta) + c2 cos(lambda theta).
    #[arg(long, allow_hyphen_values = true)]
    theta_c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta_c2: Option<f64>,
    /// Integration constant of the radial hyperbolic solution.
    #[arg(long, allow_hyphen_values = true)]
    c0: Option<f64>,
}

impl SolutionArgs {
    fn apply(&self, s: &mut Settings) {
        s.set("radial", self.radial.as_ref());
        s.set("lambda", self.lambda);
        s.set("k", self.k);
        s.set("theta_c1", self.theta_c1);
        s.set("theta_c2", self.theta_c2);
        s.set("c0", self.c0);
    }
}

#[derive(Args, Debug, Default)]
struct DomainArgs {
    /// Inner radius in units of rho_T.
    #[arg(long)]
    rho1: Option<f64>,
    /// Outer radius in units of rho_T.
    #[arg(long)]
    rho2: Option<f64>,
    /// Degrees; defaults to -theta_max.
    #[arg(long, allow_hyphen_values = true)]
    theta_min: Option<f64>,
    /// Degrees.
    #[arg(long, allow_hyphen_values = true)]
    theta_max: Option<f64>,
    #[arg(long)]
    n_rho: Option<usize>,
    #[arg(long)]
    n_theta: Option<usize>,
}

impl DomainArgs {
    fn apply(&self, s: &mut Settings) {
        s.set("rho1", self.rho1);
        s.set("rho2", self.rho2);
        s.set("theta_min", self.theta_min);
        s.set("theta_max", self.theta_max);
        s.set("n_rho", self.n_rho);
        s.set("n_theta", self.n_theta);
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Delta, g and region type at radii given in units of rho_T.
    Classify {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated radii in units of rho_T.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Characteristic functions and the slope d rho / d theta.
    Characteristics {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        rho: Option<String>,
        /// Degrees.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// hyperbolic-plus, hyperbolic-minus, elliptic-plus, elliptic-minus or all.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Separation constants whose radial factor is a Laguerre polynomial.
    LaguerreEnum {
        #[arg(long)]
        n: Option<f64>,
        /// Comma-separated lambda values (fixed-lambda mode).
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        ell_max: Option<f64>,
        /// Solve for lambda at this ell instead.
        #[arg(long, allow_hyphen_values = true)]
        ell_fixed: Option<f64>,
        #[arg(long)]
        k_max: Option<usize>,
        /// Keep only roots with integer lambda^2 (fixed-ell mode).
        #[arg(long)]
        integer_only: Option<bool>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// u = R(rho) Theta(theta) and its first derivatives on a polar grid.
    SolveMomentum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solution: SolutionArgs,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Coordinate-space fields of a mapped solution, CSV plus JSON sidecar.
    MapFields {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solution: SolutionArgs,
        #[command(flatten)]
        domain: DomainArgs,
        /// mask (default) keeps folded samples; fail exits with code 3.
        #[arg(long)]
        on_fold: Option<String>,
        /// speed (default), sector, none or a number.
        #[arg(long)]
        normalization: Option<String>,
        /// Constant added to the classical potential.
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Radial profiles of the vortex state and the zeros of U.
    PsiModel {
        #[arg(long)]
        n: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        ell: Option<f64>,
        #[arg(long)]
        sigma_v: Option<f64>,
        #[arg(long)]
        sigma_r: Option<f64>,
        /// two-zeros, critical or one-zero; picks sigma_r.
        #[arg(long)]
        regime: Option<String>,
        /// Outer radius in units of sigma_r.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        n_r: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Runs a verification suite and prints a JSON report.
    Verify {
        /// specfun, momentum, map, potentials, psi or all.
        suite: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut s = Settings::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Classify { model, rho, output } => {
            model.apply(&mut s);
            s.set("rho", rho);
            s.set("output", output.map(|p| p.display().to_string()));
            commands::classify(s)
        }
        Cmd::Characteristics { model, rho, theta, kind, output } => {
            model.apply(&mut s);
            s.set("rho", rho);
            s.set("theta", theta);
            s.set("kind", kind);
            s.set("output", output.map(|p| p.display().to_string()));
            commands::characteristics(s)
        }
        Cmd::LaguerreEnum { n, lambda, ell_max, ell_fixed, k_max, integer_only, output } => {
            s.set("n", n);
            s.set("lambda", lambda);
            s.set("ell_max", ell_max);
            s.set("ell_fixed", ell_fixed);
            s.set("k_max", k_max);
            s.set("integer_only", integer_only);
            s.set("output", output.map(|p| p.display().to_string()));
            commands::laguerre_enum(s)
        }
        Cmd::SolveMomentum { model, solution, domain, output } => {
            model.apply(&mut s);
            solution.apply(&mut s);
            domain.apply(&mut s);
            s.set("output", output.map(|p| p.display().to_string()));
            commands::solve_momentum(s)
        }
        Cmd::MapFields { model, solution, domain, on_fold, normalization, energy, output } => {
            model.apply(&mut s);
            solution.apply(&mut s);
            domain.apply(&mut s);
            s.set("on_fold", on_fold);
            s.set("normalization", normalization);
            s.set("energy", energy);
            s.set("output", output.map(|p| p.display().to_string()));
            commands::map_fields(s)
        }
        Cmd::PsiModel { n, ell, sigma_v, sigma_r, regime, r_max, n_r, output } => {
            s.set("n", n);
            s.set("ell", ell);
            s.set("sigma_v", sigma_v);
            s.set("sigma_r", sigma_r);
            s.set("regime", regime);
            s.set("r_max", r_max);
            s.set("n_r", n_r);
            s.set("output", output.map(|p| p.display().to_string()));
            commands::psi_model(s)
        }
        Cmd::Verify { suite, output } => {
            s.set("suite", suite);
            s.set("output", output.map(|p| p.display().to_string()));
            commands::verify(s)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Usage>().is_some() {
        return 1;
    }
    if e.downcast_ref::<VerificationFailed>().is_some() {
        return 4;
    }
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::DegenerateMap) => 2,
        Some(CoreError::FoldDetected) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
