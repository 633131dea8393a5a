//! Residual statistics for one oracle check.

use serde::Serialize;

/// Largest fraction of a grid that may be masked (nodes, degeneracies).
pub const MAX_SKIPPED_FRACTION: f64 = 0.05;

/// Outcome of an FD residual evaluated at two steps h and h/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepSweep {
    pub rel_at_h: f64,
    pub rel_at_half_h: f64,
    pub noise_floor: f64,
    /// True when the residual shrank at least 2x or already sat at the floor.
    pub converging: bool,
}

impl StepSweep {
    pub fn new(rel_at_h: f64, rel_at_half_h: f64, noise_floor: f64) -> Self {
        let converging = rel_at_half_h * 2.0 <= rel_at_h || rel_at_half_h.max(rel_at_h) <= noise_floor;
        Self { rel_at_h, rel_at_half_h, noise_floor, converging }
    }
}

/// Residual statistics for one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub grid_spec: String,
    pub max_abs: f64,
    pub rms: f64,
    pub rel_scale: f64,
    pub tol: f64,
    pub pass: bool,
    pub skipped_points: usize,
    pub total_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<StepSweep>,
}

impl VerificationReport {
    /// max_abs / rel_scale.
    pub fn max_rel(&self) -> f64 {
        if self.rel_scale > 0.0 {
            self.max_abs / self.rel_scale
        } else {
            self.max_abs
        }
    }

    /// Attaches an h-sweep; a non-converging sweep fails the report.
    pub fn with_sweep(mut self, sweep: StepSweep) -> Self {
        self.pass = self.pass && sweep.converging;
        self.sweep = Some(sweep);
        self
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{} {}: max_rel {:.3e} (tol {:.1e}), rms {:.3e}, skipped {}/{}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.max_rel(),
            self.tol,
            self.rms,
            self.skipped_points,
            self.total_points
        )
    }
}

/// Collects residuals point by point and produces a [`VerificationReport`].
#[derive(Debug, Clone)]
pub struct ResidualAccumulator {
    name: String,
    grid_spec: String,
    tol: f64,
    max_abs: f64,
    sum_sq: f64,
    count: usize,
    skipped: usize,
    scale: f64,
    fixed_scale: Option<f64>,
}

impl ResidualAccumulator {
    pub fn new(name: impl Into<String>, grid_spec: impl Into<String>, tol: f64) -> Self {
        Self {
            name: name.into(),
            grid_spec: grid_spec.into(),
            tol,
            max_abs: 0.0,
            sum_sq: 0.0,
            count: 0,
            skipped: 0,
            scale: 0.0,
            fixed_scale: None,
        }
    }

    /// Uses a fixed relative scale instead of the running maximum of point scales.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.fixed_scale = Some(scale);
        self
    }

    /// Records a residual together with the magnitude of the terms it balances.
    pub fn push(&mut self, residual: f64, term_scale: f64) {
        let r = residual.abs();
        if !r.is_finite() {
            self.max_abs = f64::INFINITY;
        } else {
            self.max_abs = self.max_abs.max(r);
        }
        self.sum_sq += r * r;
        self.count += 1;
        self.scale = self.scale.max(term_scale.abs());
    }

    /// Records a residual that is already relative.
    pub fn push_rel(&mut self, rel: f64) {
        self.push(rel, 1.0);
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn finish(self) -> VerificationReport {
        let total = self.count + self.skipped;
        let rel_scale = self.fixed_scale.unwrap_or(if self.scale > 0.0 { self.scale } else { 1.0 });
        let rms = if self.count > 0 { (self.sum_sq / self.count as f64).sqrt() } else { 0.0 };
        let skipped_ok = total > 0 && (self.skipped as f64) < MAX_SKIPPED_FRACTION * total as f64;
        let pass = self.count > 0 && skipped_ok && self.max_abs.is_finite() && self.max_abs / rel_scale <= self.tol;
        VerificationReport {
            name: self.name,
            grid_spec: self.grid_spec,
            max_abs: self.max_abs,
            rms,
            rel_scale,
            tol: self.tol,
            pass,
            skipped_points: self.skipped,
            total_points: total,
            sweep: None,
        }
    }
}
