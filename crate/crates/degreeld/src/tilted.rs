//! The tilted family and its variational problem.
//!
//! For a degree statistic f and θ ≥ 0, the tilted law is
//!
//!   σ_{θ,f}(i) = θ^i e^{f(i)} / (i! e^{C(θ,f)}),
//!   C(θ,f) = log Σ_{i≥0} θ^i e^{f(i)} / i!,
//!
//! a Poisson(θ) distribution reweighted by e^f. Its mean m(θ) and C feed the
//! scalar objective
//!
//!   H(θ) = m(θ) log θ − C(θ,f) − (m(θ)/2) log(m(θ)β) + (m(θ) + β)/2,
//!
//! whose infimum over θ ≥ 0 is J(f), the limiting normalized log-partition
//! function of the degree-tilted graph model (up to sign). Interior
//! minimizers satisfy θ = √(β·m(θ)). The solver scans a widening grid, then
//! polishes each discrete minimum by golden section; everything is plain
//! series arithmetic with analytic tail cutoffs, so results are
//! evaluation-order deterministic.

use serde::{Deserialize, Serialize};

use crate::measures::{SparseMeasure, DEFAULT_TAIL_TOL};
use crate::numeric::{bisect, golden_min, ln_factorial, LogSumExp};
use crate::statistic::DegreeStatistic;
use crate::{Error, Result};

fn check_series_inputs(theta: f64, f: &DegreeStatistic, tail_tol: f64) -> Result<(f64, f64)> {
    if !(theta >= 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!("theta must be finite and >= 0, got {theta}")));
    }
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::Domain(format!("tail_tol must be in (0,1), got {tail_tol}")));
    }
    f.envelope().ok_or_else(|| {
        Error::DegenerateStatistic(format!(
            "{}: normalizer diverges for superlinear statistics",
            f.label()
        ))
    })
}

/// log Σ θ^i e^{f(i)}/i! and log Σ i·θ^i e^{f(i)}/i!, summed ascending with
/// compensation until the analytic tail bound 2·(i+1)^p (θe^s)^{i+1} e^A/(i+1)!
/// drops below tail_tol times the running sum for both moments p = 0, 1.
fn log_moments(theta: f64, f: &DegreeStatistic, tail_tol: f64) -> Result<(f64, f64)> {
    let (env_const, env_slope) = check_series_inputs(theta, f, tail_tol)?;
    if theta == 0.0 {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    let ln_theta = theta.ln();
    let ln_x = ln_theta + env_slope;
    let x = ln_x.exp();
    let ln_tol = tail_tol.ln();
    let mut m0 = LogSumExp::new();
    let mut m1 = LogSumExp::new();
    let mut i: u64 = 0;
    loop {
        let t = i as f64 * ln_theta + f.eval(i) - ln_factorial(i);
        m0.add(t);
        if i >= 1 {
            m1.add(t + (i as f64).ln());
        }
        let next = (i + 1) as f64;
        if next >= 4.0 * x + 8.0 {
            // beyond this index successive term ratios are below 1/2, so the
            // whole tail is at most twice the next term
            let ln_next = env_const + next * ln_x - ln_factorial(i + 1);
            let tail0 = core::f64::consts::LN_2 + ln_next;
            let tail1 = tail0 + next.ln();
            if tail0 < ln_tol + m0.value() && tail1 < ln_tol + m1.value() {
                break;
            }
        }
        i += 1;
        assert!(i <= 50_000_000, "tilted series did not meet its tail bound");
    }
    Ok((m0.value(), m1.value()))
}

/// C(θ, f). C(0, f) = 0 since only the i = 0 term survives.
pub fn log_normalizer(theta: f64, f: &DegreeStatistic, tail_tol: f64) -> Result<f64> {
    check_series_inputs(theta, f, tail_tol)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(log_moments(theta, f, tail_tol)?.0)
}

fn tilted_mean_with_tol(theta: f64, f: &DegreeStatistic, tail_tol: f64) -> Result<f64> {
    if theta == 0.0 {
        check_series_inputs(theta, f, tail_tol)?;
        return Ok(0.0);
    }
    let (l0, l1) = log_moments(theta, f, tail_tol)?;
    Ok((l1 - l0).exp())
}

/// m(θ) = mean of σ_{θ,f}, by direct series summation.
pub fn tilted_mean(theta: f64, f: &DegreeStatistic) -> Result<f64> {
    tilted_mean_with_tol(theta, f, DEFAULT_TAIL_TOL)
}

/// σ_{θ,f} realized as a finite measure, together with its normalizer and
/// analytic mean. `measure` is the truncated-and-renormalized realization;
/// `mean_value` is the series mean, which the truncation may undershoot by
/// O(tail_tol).
#[derive(Clone, Debug, Serialize)]
pub struct TiltedMeasure {
    pub theta: f64,
    pub statistic: DegreeStatistic,
    pub log_normalizer: f64,
    pub measure: SparseMeasure,
    pub mean_value: f64,
}

pub fn tilted_measure(theta: f64, f: &DegreeStatistic, tail_tol: f64) -> Result<TiltedMeasure> {
    check_series_inputs(theta, f, tail_tol)?;
    if theta == 0.0 {
        return Ok(TiltedMeasure {
            theta,
            statistic: f.clone(),
            log_normalizer: 0.0,
            measure: SparseMeasure::delta(0),
            mean_value: 0.0,
        });
    }
    let (l0, l1) = log_moments(theta, f, tail_tol)?;
    let ln_theta = theta.ln();
    let mut weights = Vec::new();
    let mut head = 0.0;
    let mut i: u64 = 0;
    while 1.0 - head >= tail_tol {
        let w = (i as f64 * ln_theta + f.eval(i) - ln_factorial(i) - l0).exp();
        weights.push(w);
        head += w;
        i += 1;
        assert!(i <= 50_000_000, "tilted realization did not reach its mass target");
    }
    for w in &mut weights {
        *w /= head;
    }
    Ok(TiltedMeasure {
        theta,
        statistic: f.clone(),
        log_normalizer: l0,
        measure: SparseMeasure::new(weights)?,
        mean_value: (l1 - l0).exp(),
    })
}

fn objective_with_tol(theta: f64, f: &DegreeStatistic, beta: f64, tail_tol: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    check_series_inputs(theta, f, tail_tol)?;
    if theta == 0.0 {
        return Ok(beta / 2.0);
    }
    let (l0, l1) = log_moments(theta, f, tail_tol)?;
    let m = (l1 - l0).exp();
    Ok(m * theta.ln() - l0 - 0.5 * m * (m * beta).ln() + 0.5 * (m + beta))
}

/// H(θ) above; β/2 at θ = 0 (the δ₀ endpoint).
pub fn variational_objective(theta: f64, f: &DegreeStatistic, beta: f64) -> Result<f64> {
    objective_with_tol(theta, f, beta, DEFAULT_TAIL_TOL)
}

/// |θ − √(β·m(θ))|, zero exactly at interior stationary points.
pub fn stationarity_residual(theta: f64, f: &DegreeStatistic, beta: f64) -> Result<f64> {
    if !(theta > 0.0) {
        return Err(Error::Domain(format!("stationarity needs theta > 0, got {theta}")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    let m = tilted_mean(theta, f)?;
    Ok((theta - (beta * m).sqrt()).abs())
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Grid resolution per confinement pass.
    pub grid_points: usize,
    /// Two minima tie when their values differ by at most this; `None`
    /// means the relative default 1e-9·(1 + |min|).
    pub tie_tol: Option<f64>,
    /// Bound every reported minimizer's |θ − √(β·m(θ))| must meet.
    pub stationarity_tol: f64,
    /// Series truncation tolerance used throughout the solve.
    pub tail_tol: f64,
    /// Initial scan ceiling; `None` means 4β + 8.
    pub theta_max_init: Option<f64>,
    /// The boundary must sit this far above the interior minimum before the
    /// scan is trusted.
    pub confinement_margin: f64,
    /// θ_max doublings to attempt before giving up.
    pub max_doublings: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            grid_points: 4096,
            tie_tol: None,
            stationarity_tol: 1e-6,
            tail_tol: 1e-12,
            theta_max_init: None,
            confinement_margin: 1.0,
            max_doublings: 60,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Minimizer {
    pub theta: f64,
    pub value: f64,
    #[serde(rename = "residual")]
    pub stationarity_residual: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VariationalSolution {
    pub statistic_label: String,
    pub beta: f64,
    pub j_value: f64,
    pub minimizers: Vec<Minimizer>,
    pub degenerate: bool,
}

impl VariationalSolution {
    /// The J = −∞ record for a statistic the solver refuses.
    pub fn degenerate(label: &str, beta: f64) -> Self {
        Self {
            statistic_label: label.to_string(),
            beta,
            j_value: f64::NEG_INFINITY,
            minimizers: Vec::new(),
            degenerate: true,
        }
    }
}

/// Minimize H over θ ≥ 0.
///
/// The scan ceiling starts at 4β + 8 and doubles until the boundary value
/// clears the interior minimum by `confinement_margin` with positive
/// discrete slope; every discrete local minimum is golden-sectioned to a
/// bracket below 1e-10, near-duplicates (within 1e-8) merge, and the global
/// set keeps values within tie_tol of the best. Each survivor's
/// stationarity residual is checked against `stationarity_tol`, with a
/// bisection fallback on θ² − β·m(θ) if golden section alone left it loose.
pub fn solve_j(f: &DegreeStatistic, beta: f64, opts: &SolveOptions) -> Result<VariationalSolution> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    if f.is_superlinear() {
        return Err(Error::DegenerateStatistic(format!(
            "{}: J = -infinity, minimize nothing",
            f.label()
        )));
    }
    let tol = opts.tail_tol;
    let obj = |t: f64| {
        objective_with_tol(t, f, beta, tol).expect("non-superlinear objective is total on t >= 0")
    };

    let g = opts.grid_points.max(16);
    let mut theta_max = opts.theta_max_init.unwrap_or(4.0 * beta + 8.0);
    let mut values: Vec<f64> = Vec::new();
    let mut step = 0.0;
    let mut confined = false;
    for _ in 0..=opts.max_doublings {
        step = theta_max / (g - 1) as f64;
        values = (0..g).map(|i| obj(i as f64 * step)).collect();
        let interior_min = values[..g - 1].iter().cloned().fold(f64::INFINITY, f64::min);
        if values[g - 1] >= interior_min + opts.confinement_margin && values[g - 1] > values[g - 2]
        {
            confined = true;
            break;
        }
        theta_max *= 2.0;
    }
    if !confined {
        return Err(Error::NoConfinement { theta_max });
    }

    let mut candidates: Vec<(f64, f64)> = Vec::new();
    if values[0] <= values[1] {
        candidates.push(golden_min(obj, 0.0, step, 1e-10));
    }
    for i in 1..g - 1 {
        if values[i] <= values[i - 1] && values[i] <= values[i + 1] {
            candidates.push(golden_min(
                obj,
                (i - 1) as f64 * step,
                (i + 1) as f64 * step,
                1e-10,
            ));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (t, v) in candidates {
        match merged.last_mut() {
            Some(last) if (t - last.0).abs() < 1e-8 => {
                if v < last.1 {
                    *last = (t, v);
                }
            }
            _ => merged.push((t, v)),
        }
    }
    debug_assert!(!merged.is_empty(), "confined grid always has a local minimum");

    let j_rough = merged.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let tie = opts.tie_tol.unwrap_or(1e-9 * (1.0 + j_rough.abs()));

    let mut minimizers = Vec::new();
    for (t, v) in merged.into_iter().filter(|&(_, v)| v <= j_rough + tie) {
        let (t, v) = if t > 0.0 {
            polish_stationarity(t, f, beta, tol, opts.stationarity_tol).unwrap_or((t, v))
        } else {
            (t, v)
        };
        let residual = if t == 0.0 {
            0.0
        } else {
            stationarity_residual(t, f, beta)?
        };
        minimizers.push(Minimizer {
            theta: t,
            value: v,
            stationarity_residual: residual,
        });
    }
    let j_value = minimizers
        .iter()
        .map(|m| m.value)
        .fold(f64::INFINITY, f64::min);
    minimizers.retain(|m| m.value <= j_value + tie);
    minimizers.sort_by(|a, b| a.theta.total_cmp(&b.theta));

    Ok(VariationalSolution {
        statistic_label: f.label().to_string(),
        beta,
        j_value,
        minimizers,
        degenerate: false,
    })
}

/// Re-solve θ² = β·m(θ) in a small bracket around a golden-section result
/// when the residual is not already below tolerance.
fn polish_stationarity(
    theta: f64,
    f: &DegreeStatistic,
    beta: f64,
    tail_tol: f64,
    stat_tol: f64,
) -> Option<(f64, f64)> {
    let m = tilted_mean_with_tol(theta, f, tail_tol).ok()?;
    if (theta - (beta * m).sqrt()).abs() <= stat_tol {
        return None;
    }
    let phi = |t: f64| {
        let m = tilted_mean_with_tol(t, f, tail_tol).expect("mean is total here");
        t * t - beta * m
    };
    let mut w = 1e-7 * (1.0 + theta);
    for _ in 0..40 {
        let a = (theta - w).max(f64::MIN_POSITIVE);
        let b = theta + w;
        let (pa, pb) = (phi(a), phi(b));
        if (pa > 0.0) != (pb > 0.0) {
            let root = bisect(phi, a, b, pa, 1e-12);
            let value = objective_with_tol(root, f, beta, tail_tol).ok()?;
            return Some((root, value));
        }
        w *= 2.0;
        if w > theta.max(1.0) {
            break;
        }
    }
    None
}
