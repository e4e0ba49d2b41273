//! Runnable acceptance checklist for the whole crate.
//!
//! Each criterion exercises one guarantee end to end: analytic
//! identities of the rate function, stationarity of solver output,
//! closed forms against series evaluation, phase classification at the
//! reference parameters, counting bounds against exhaustive
//! enumeration, the graphical-sequence criterion against brute force,
//! Monte Carlo estimators against exact oracles, and concentration of
//! the sampler around predicted limit shapes.  Tolerances are pinned
//! here as constants; Monte Carlo budgets shrink in quick mode only
//! where the check normalizes by its own standard error or holds with a
//! wide margin.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::combinatorics::{
    enumerate_frequencies, erdos_gallai_check, exact_log_partition, frequency_from_target,
    log_mckay_upper, log_nbar, pair_index,
};
use crate::measures::SparseMeasure;
use crate::penalty::{
    classify_phase, find_fixed_points, objective_h, penalty_mean, penalty_normalizer,
    PenaltyModel, Regime,
};
use crate::sampler::{
    concentration_check, estimate_log_partition, graph_visit_distribution, ChainConfig,
};
use crate::statistic::DegreeStatistic;
use crate::tilted::{log_normalizer, solve_j, tilted_mean, SolveOptions};
use crate::Result;

/// Absolute tolerance for rate-function identities.
pub const RATE_TOL: f64 = 1e-8;
/// Stationarity residual allowed for solver minimizers.
pub const STATIONARITY_TOL: f64 = 1e-6;
/// Closed forms must match series evaluation this tightly.
pub const CLOSED_FORM_TOL: f64 = 1e-10;
/// The near-tie gap between the two wells of the third reference
/// parameter set; the reference only gives it approximately.
pub const WELL_GAP_TOL: f64 = 0.05;
/// Float slack when comparing exact counts against analytic bounds.
pub const BOUND_SLACK: f64 = 1e-9;
/// Monte Carlo agreement window in standard errors.
pub const SE_FACTOR: f64 = 3.0;
/// Total-variation bound for the small-graph chain check.
pub const TV_BOUND: f64 = 0.02;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs every acceptance criterion in order.  Quick mode trims Monte
/// Carlo budgets; every analytic check runs at full strength either
/// way.
pub fn run_all(quick: bool) -> Vec<CriterionResult> {
    let checks: Vec<(&'static str, CheckFn)> = vec![
        ("rate function vanishes at the Poisson law", Box::new(|_| rate_zero_at_poisson())),
        ("rate of Poisson sections matches the closed form", Box::new(|_| poisson_section_formula())),
        ("solver minimizers satisfy the stationarity equation", Box::new(|_| solver_stationarity())),
        ("penalty closed forms match series evaluation", Box::new(|_| penalty_closed_forms())),
        ("phase classification reproduces the reference points", Box::new(|_| reference_phase_points())),
        ("single fixed point in the uniqueness region", Box::new(single_fixed_point_region)),
        ("exact counts stay below the analytic bounds", Box::new(|_| counting_bounds_dominate())),
        ("graphicality criterion matches brute force", Box::new(|_| graphical_matches_enumeration())),
        ("importance sampling agrees with exact partition values", Box::new(partition_estimator_agrees)),
        ("per-vertex partition values trend as predicted", Box::new(|_| partition_trend())),
        ("small-graph chain matches the exact law", Box::new(small_graph_chain_tv)),
        ("empirical measures concentrate on predictions", Box::new(concentration_trend)),
        ("frequency construction tracks random targets", Box::new(|_| construction_tracks_targets())),
    ];
    checks
        .into_iter()
        .enumerate()
        .map(|(idx, (name, check))| {
            let (passed, detail) = match check(quick) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CriterionResult { id: idx + 1, name, passed, detail }
        })
        .collect()
}

type CheckFn = Box<dyn Fn(bool) -> Result<(bool, String)>>;

fn rate_zero_at_poisson() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for beta in [0.5, 1.0, 2.0, 6.5] {
        let p = SparseMeasure::poisson(beta, 1e-14);
        worst = worst.max(p.rate_i(beta).abs());
    }
    Ok((worst <= RATE_TOL, format!("max |I(p_beta)| = {worst:.3e}")))
}

fn poisson_section_formula() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for theta in [0.5, 0.9, 1.7, 3.1, 5.5] {
        for beta in [0.5, 1.0, 2.0, 6.5] {
            let measure = SparseMeasure::poisson(theta, 1e-14);
            let got = measure.rate_i(beta);
            let want = 0.5 * (beta - theta + theta * theta.ln() - theta * beta.ln());
            worst = worst.max((got - want).abs());
        }
    }
    Ok((worst <= RATE_TOL, format!("max |I(p_theta) - formula| = {worst:.3e} over 20 points")))
}

fn solver_roster() -> Result<Vec<(DegreeStatistic, f64)>> {
    let mut roster: Vec<(DegreeStatistic, f64)> = Vec::new();
    for beta in [0.5, 1.0, 2.0, 6.5] {
        roster.push((DegreeStatistic::zero(), beta));
    }
    for gamma in [-0.5, -1.0, -2.0] {
        roster.push((DegreeStatistic::kstar(2, gamma)?, 2.0));
    }
    for lambda1 in [0.5, 1.0] {
        for gamma in [-2.0, 2.0] {
            roster.push((DegreeStatistic::gwd(lambda1, gamma)?, 2.0));
        }
    }
    for gamma in [-1.0, 1.0] {
        roster.push((DegreeStatistic::alt_kstar(0.5, gamma)?, 2.0));
    }
    roster.push((DegreeStatistic::penalty(0.5f64.ln())?, 1.2));
    roster.push((DegreeStatistic::penalty(0.04f64.ln())?, 6.5));
    roster.push((DegreeStatistic::penalty(0.05f64.ln())?, 5.89));
    Ok(roster)
}

fn solver_stationarity() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut minimizers = 0usize;
    for (f, beta) in solver_roster()? {
        let solution = solve_j(&f, beta, &SolveOptions::default())?;
        for m in &solution.minimizers {
            let residual = (m.theta - (beta * tilted_mean(m.theta, &f)?).sqrt()).abs();
            worst = worst.max(residual);
            minimizers += 1;
        }
    }
    Ok((
        worst <= STATIONARITY_TOL,
        format!("max |theta - sqrt(beta m(theta))| = {worst:.3e} over {minimizers} minimizers"),
    ))
}

fn penalty_closed_forms() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for i in 0..20 {
        let theta = 10.0 * (i + 1) as f64 / 20.0;
        for j in 0..20 {
            let e_gamma: f64 = 0.01 + (5.0 - 0.01) * j as f64 / 19.0;
            let gamma = e_gamma.ln();
            let f = DegreeStatistic::penalty(gamma)?;
            worst = worst.max((penalty_normalizer(theta, gamma)
                - log_normalizer(theta, &f, 1e-14)?)
            .abs());
            worst = worst.max((penalty_mean(theta, gamma) - tilted_mean(theta, &f)?).abs());
        }
    }
    Ok((worst <= CLOSED_FORM_TOL, format!("max closed-form gap {worst:.3e} on a 400-point grid")))
}

fn reference_phase_points() -> Result<(bool, String)> {
    let first = classify_phase(&PenaltyModel::from_e_gamma(1.2, 0.5)?, 1e-6);
    let second = classify_phase(&PenaltyModel::from_e_gamma(6.5, 0.04)?, 1e-6);
    let third_model = PenaltyModel::from_e_gamma(5.89, 0.05)?;
    let third = classify_phase(&third_model, 1e-6);
    let gap = if third.local_minima.len() == 2 {
        (objective_h(third.local_minima[0], &third_model)
            - objective_h(third.local_minima[1], &third_model))
        .abs()
    } else {
        f64::INFINITY
    };
    let ok = first.regime == Regime::UniqueMin
        && second.regime == Regime::ThreeRootsUniqueGlobal
        && third.local_minima.len() == 2
        && gap <= WELL_GAP_TOL;
    Ok((
        ok,
        format!(
            "regimes {} / {} / two wells with |H gap| = {gap:.4}",
            first.regime, second.regime
        ),
    ))
}

fn single_fixed_point_region(quick: bool) -> Result<(bool, String)> {
    let draws = if quick { 2_000 } else { 10_000 };
    let mut rng = ChaCha12Rng::seed_from_u64(0x0f1f);
    let mut checked = 0usize;
    let mut bad = 0usize;
    while checked < draws {
        let a: f64 = rng.random_range(0.05..12.0);
        let b: f64 = rng.random_range(0.05..3.0);
        if !(b > 1.0 || a < 4.0) {
            continue;
        }
        checked += 1;
        if find_fixed_points(&PenaltyModel::from_e_gamma(a, b)?).len() != 1 {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{bad} of {checked} parameter draws broke uniqueness")))
}

fn counting_bounds_dominate() -> Result<(bool, String)> {
    let mut worst = f64::NEG_INFINITY;
    let mut classes = 0usize;
    for n in 4..=6 {
        for beta in [0.5, 1.0, 2.0] {
            for (h, (count, prob)) in enumerate_frequencies(n, beta)? {
                let count_gap = (count as f64).ln() - log_mckay_upper(&h);
                let prob_gap = prob.ln() - log_nbar(&h, beta)?;
                worst = worst.max(count_gap).max(prob_gap);
                classes += 1;
            }
        }
    }
    Ok((
        worst <= BOUND_SLACK,
        format!("max log excess over the bounds {worst:.3e} across {classes} classes"),
    ))
}

fn nonincreasing_tuples(n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, max: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for d in (0..=max).rev() {
            current.push(d);
            rec(n, d, current, out);
            current.pop();
        }
    }
    rec(n, n as u64 - 1, &mut current, &mut out);
    out
}

fn graphical_matches_enumeration() -> Result<(bool, String)> {
    let mut mismatches = 0usize;
    let mut candidates = 0usize;
    for n in 1..=6usize {
        // Realizability does not depend on the edge probability.
        let realizable: std::collections::BTreeSet<Vec<u64>> = enumerate_frequencies(n, 0.5)?
            .keys()
            .map(|h| h.to_sequence().degrees().to_vec())
            .collect();
        for d in nonincreasing_tuples(n) {
            candidates += 1;
            if erdos_gallai_check(&d)? != realizable.contains(&d) {
                mismatches += 1;
            }
        }
    }
    Ok((mismatches == 0, format!("{mismatches} of {candidates} sequences disagree")))
}

fn partition_estimator_agrees(quick: bool) -> Result<(bool, String)> {
    let samples = if quick { 200_000 } else { 1_000_000 };
    let statistics = [
        DegreeStatistic::penalty(0.5f64.ln())?,
        DegreeStatistic::kstar(2, -1.0)?,
        DegreeStatistic::gwd(1.0, 2.0)?,
    ];
    let mut worst = 0.0f64;
    let mut details = Vec::new();
    for (i, f) in statistics.iter().enumerate() {
        let exact = exact_log_partition(6, 1.0, f)?;
        let (est, se) = estimate_log_partition(6, 1.0, f, samples, 0x9a27 + i as u64)?;
        let sigmas = (est - exact).abs() / se;
        worst = worst.max(sigmas);
        details.push(format!("{}: {sigmas:.2} SE", f.label()));
    }
    Ok((worst <= SE_FACTOR, details.join(", ")))
}

fn partition_trend() -> Result<(bool, String)> {
    let ns = [4usize, 5, 6, 7];

    let growing = DegreeStatistic::kstar(2, 1.0)?;
    let mut per_vertex = Vec::new();
    for &n in &ns {
        per_vertex.push(exact_log_partition(n, 1.0, &growing)? / n as f64);
    }
    let increasing = per_vertex.windows(2).all(|w| w[1] > w[0]);

    let damped = DegreeStatistic::kstar(2, -1.0)?;
    let target = -solve_j(&damped, 1.0, &SolveOptions::default())?.j_value;
    let mut gaps = Vec::new();
    for &n in &ns {
        gaps.push(target - exact_log_partition(n, 1.0, &damped)? / n as f64);
    }
    let one_sided = gaps.iter().all(|&g| g > 0.0) || gaps.iter().all(|&g| g < 0.0);
    let approaching = gaps.windows(2).all(|w| w[1].abs() < w[0].abs());

    Ok((
        increasing && one_sided && approaching,
        format!(
            "positive tilt rises {per_vertex:?}; negative tilt gaps to the limit {gaps:?}"
        ),
    ))
}

/// Exact law of the edge-flip chain's target on all graphs with `n`
/// vertices, indexed by edge bitmask.
fn exact_graph_law(n: usize, beta: f64, f: &DegreeStatistic) -> Vec<f64> {
    let bits = n * (n - 1) / 2;
    let p = beta / n as f64;
    let mut pairs = vec![(0usize, 0usize); bits];
    for i in 0..n {
        for j in i + 1..n {
            pairs[pair_index(n, i, j)] = (i, j);
        }
    }
    let mut weights = vec![0.0f64; 1 << bits];
    for mask in 0..(1u64 << bits) {
        let mut degrees = vec![0u64; n];
        let mut m = mask;
        while m != 0 {
            let (i, j) = pairs[m.trailing_zeros() as usize];
            degrees[i] += 1;
            degrees[j] += 1;
            m &= m - 1;
        }
        let e = mask.count_ones() as f64;
        let tilt: f64 = degrees.iter().map(|&d| f.eval(d)).sum();
        weights[mask as usize] = (e * p.ln() + (bits as f64 - e) * (-p).ln_1p() + tilt).exp();
    }
    let z: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= z;
    }
    weights
}

fn small_graph_chain_tv(quick: bool) -> Result<(bool, String)> {
    let proposals: u64 = if quick { 4_000_000 } else { 10_000_000 };
    let statistics = [
        DegreeStatistic::zero(),
        DegreeStatistic::penalty(0.5f64.ln())?,
        DegreeStatistic::gwd(1.0, 2.0)?,
    ];
    let mut worst = 0.0f64;
    let mut details = Vec::new();
    for f in statistics {
        let law = exact_graph_law(4, 1.0, &f);
        let mut cfg = ChainConfig::new(4, 1.0, f.clone(), 0xacce)?;
        cfg.burn_in = 100;
        let visits = graph_visit_distribution(&cfg, proposals)?;
        let tv: f64 = visits
            .iter()
            .zip(&law)
            .map(|(&v, &w)| (v as f64 / proposals as f64 - w).abs())
            .sum::<f64>()
            / 2.0;
        worst = worst.max(tv);
        details.push(format!("{}: TV {tv:.4}", f.label()));
    }
    Ok((worst <= TV_BOUND, details.join(", ")))
}

fn concentration_trend(quick: bool) -> Result<(bool, String)> {
    let chains = if quick { 6 } else { 20 };
    let models = [
        (DegreeStatistic::zero(), 2.0),
        (DegreeStatistic::penalty(0.5f64.ln())?, 1.2),
    ];
    let mut all_decreasing = true;
    let mut details = Vec::new();
    for (f, beta) in models {
        let solution = solve_j(&f, beta, &SolveOptions::default())?;
        let mut distances = Vec::new();
        for (i, n) in [100usize, 200, 500].into_iter().enumerate() {
            let mut cfg = ChainConfig::new(n, beta, f.clone(), 0xd15 + i as u64)?;
            cfg.burn_in = 40;
            cfg.samples = 50;
            cfg.thin = 2;
            let report = concentration_check(&cfg, &solution, chains)?;
            distances.push(report.summary.distance_to_prediction.expect("predictions supplied"));
        }
        all_decreasing &= distances.windows(2).all(|w| w[1] < w[0]);
        details.push(format!(
            "{}: d = {:.4} / {:.4} / {:.4} at n = 100/200/500",
            f.label(),
            distances[0],
            distances[1],
            distances[2]
        ));
    }
    Ok((all_decreasing, details.join("; ")))
}

fn construction_tracks_targets() -> Result<(bool, String)> {
    let mut rng = ChaCha12Rng::seed_from_u64(0x13c0);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut failures = 0usize;
    for _ in 0..1000 {
        let m = rng.random_range(2..=6usize);
        let mut y = vec![0.0f64; m + 1];
        y[0] = rng.random_range(0.1..0.9);
        let mut rest: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..1.0)).collect();
        let rest_sum: f64 = rest.iter().sum();
        for v in &mut rest {
            *v *= (1.0 - y[0]) / rest_sum;
        }
        y[1..].copy_from_slice(&rest);
        let n = rng.random_range(20 * m..40 * m);

        let h = frequency_from_target(&y, n)?;
        let degree_sum: u64 = h.counts().iter().enumerate().map(|(i, &c)| i as u64 * c).sum();
        if !h.is_graphical() || degree_sum % 2 != 0 {
            failures += 1;
        }
        let bound = m as f64 / n as f64;
        for i in 0..h.n() {
            let target = if i <= m { y[i] } else { 0.0 };
            let gap = (h.counts()[i] as f64 / n as f64 - target).abs();
            worst_excess = worst_excess.max(gap - bound);
        }
    }
    Ok((
        failures == 0 && worst_excess <= 1e-12,
        format!("{failures} non-graphical results; worst coordinate excess {worst_excess:.3e}"),
    ))
}
