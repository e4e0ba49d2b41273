//! Closed-form analysis of the sparse-penalty model.
//!
//! The degree statistic `γ·1{i ≥ 1}` charges a flat price `γ` per
//! non-isolated vertex, and it is the one tilt for which the variational
//! objective collapses to elementary functions.  Writing `b = e^γ`,
//!
//! ```text
//!   e^{C(θ)} = 1 + b (e^θ - 1),
//!   m(θ)     = θ b e^θ / (1 + b (e^θ - 1)),
//! ```
//!
//! so the stationarity relation `θ = sqrt(β m(θ))` reduces (for `θ > 0`)
//! to a fixed-point equation `θ = h_{a,b}(θ)` with `a = β` and
//!
//! ```text
//!   h_{a,b}(x) = a b e^x / (1 + b (e^x - 1)).
//! ```
//!
//! The map `h` is monotone with `h(0) = ab` and `h(∞) = a`, and the
//! fixed-point equation has either one or three roots; when there are
//! three, the middle one is a local maximum of the objective and the
//! outer two are the local minima.  Comparing objective values at the
//! outer roots splits the parameter plane into three regimes: a unique
//! minimum, three stationary points with a unique global minimum, and
//! coexistence of two global minima.  The exact boundary between the
//! regimes has no known closed form; `phase_scan` maps it numerically.

use serde::{Deserialize, Serialize};

use crate::numeric::{bisect, golden_min};
use crate::statistic::DegreeStatistic;
use crate::{Error, Result};

/// Edge parameter and penalty strength for the sparse-penalty model.
///
/// The penalty enters everywhere through `b = e^gamma`, so `gamma` is
/// stored and `b` derived; `from_e_gamma` accepts the exponentiated
/// form directly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyModel {
    pub beta: f64,
    pub gamma: f64,
}

impl PenaltyModel {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Domain(format!("beta must be positive, got {beta}")));
        }
        if !gamma.is_finite() {
            return Err(Error::Domain(format!("gamma must be finite, got {gamma}")));
        }
        Ok(Self { beta, gamma })
    }

    pub fn from_e_gamma(beta: f64, e_gamma: f64) -> Result<Self> {
        if !(e_gamma.is_finite() && e_gamma > 0.0) {
            return Err(Error::Domain(format!(
                "e_gamma must be positive, got {e_gamma}"
            )));
        }
        Self::new(beta, e_gamma.ln())
    }

    pub fn e_gamma(&self) -> f64 {
        self.gamma.exp()
    }

    /// The penalty statistic this model tilts by.
    pub fn statistic(&self) -> DegreeStatistic {
        DegreeStatistic::penalty(self.gamma).expect("gamma was validated at construction")
    }
}

/// How the stationary points of the objective are arranged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    UniqueMin,
    ThreeRootsUniqueGlobal,
    TwoGlobalMinima,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::UniqueMin => "UniqueMin",
            Regime::ThreeRootsUniqueGlobal => "ThreeRootsUniqueGlobal",
            Regime::TwoGlobalMinima => "TwoGlobalMinima",
        };
        f.write_str(s)
    }
}

/// Stationary points of the objective together with their roles.
///
/// `roots` holds every fixed point of `h` in increasing order;
/// `local_minima` and `global_minima` are subsequences of it.  A double
/// root (the map tangent to the diagonal) is reported once with
/// `tangency` set; generic parameters never produce one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseClassification {
    pub roots: Vec<f64>,
    pub local_minima: Vec<f64>,
    pub global_minima: Vec<f64>,
    pub regime: Regime,
    pub tangency: bool,
}

/// One cell of a phase diagram scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCell {
    pub beta: f64,
    pub e_gamma: f64,
    pub classification: PhaseClassification,
}

/// Log-normalizer `C(θ) = log(1 + e^γ (e^θ - 1))` of the penalty tilt.
///
/// Evaluated as `log1p(b expm1(θ))` for moderate `θ` and in the shifted
/// form `θ + log(b + (1-b) e^{-θ})` once `e^θ` would lose accuracy, so
/// the value is finite for every `θ ≥ 0`.
pub fn penalty_normalizer(theta: f64, gamma: f64) -> f64 {
    assert!(theta >= 0.0 && theta.is_finite(), "theta must be finite and nonnegative");
    let b = gamma.exp();
    if theta < 30.0 {
        (b * theta.exp_m1()).ln_1p()
    } else {
        theta + (b + (1.0 - b) * (-theta).exp()).ln()
    }
}

/// Mean `m(θ) = θ b e^θ / (1 + b (e^θ - 1))` of the penalty-tilted law.
///
/// The quotient is computed with `e^θ` divided out, which keeps it
/// stable for large `θ`; `m(0) = 0` and `m(θ) → θ` as the tilt
/// saturates.
pub fn penalty_mean(theta: f64, gamma: f64) -> f64 {
    assert!(theta >= 0.0 && theta.is_finite(), "theta must be finite and nonnegative");
    let b = gamma.exp();
    theta * b / (b + (1.0 - b) * (-theta).exp())
}

/// Objective `H(θ) = m log θ - C - (m/2) log(m β) + (m + β)/2` in closed
/// form, with the limit `β/2` at `θ = 0`.
pub fn objective_h(theta: f64, model: &PenaltyModel) -> f64 {
    assert!(theta >= 0.0 && theta.is_finite(), "theta must be finite and nonnegative");
    let beta = model.beta;
    if theta == 0.0 {
        return 0.5 * beta;
    }
    let c = penalty_normalizer(theta, model.gamma);
    let m = penalty_mean(theta, model.gamma);
    let log_term = if m == 0.0 { 0.0 } else { m * theta.ln() - 0.5 * m * (m * beta).ln() };
    log_term - c + 0.5 * (m + beta)
}

/// The map `h_{a,b}(x) = a b e^x / (1 + b (e^x - 1))`, evaluated with
/// `e^x` divided out so it saturates cleanly at `a` for large `x`.
pub fn fixed_point_map(x: f64, a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "map parameters must be positive");
    a * b / (b + (1.0 - b) * (-x).exp())
}

/// Derivative of `fixed_point_map` in `x`; vanishes as `x → ∞` and at
/// `b = 1`, and equals 1 exactly at a double root.
pub fn fixed_point_slope(x: f64, a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "map parameters must be positive");
    let e = (-x).exp();
    let d = b + (1.0 - b) * e;
    a * b * (1.0 - b) * e / (d * d)
}

const SCAN_POINTS: usize = 100_000;
const SCAN_RESYNC: usize = 1024;
const ROOT_MERGE_TOL: f64 = 1e-8;
const BISECT_TOL: f64 = 1e-12;
const TANGENT_VALUE_TOL: f64 = 1e-9;
const TANGENT_SLOPE_TOL: f64 = 1e-8;

/// All fixed points of `h_{β, e^γ}` in increasing order.
///
/// A dense sign scan of `h(x) - x` over `(0, max(4β, 50)]` brackets
/// every crossing (the map is bounded by `max(β, β e^γ)`, which that
/// window always covers), and bisection refines each bracket to 1e-12.
/// Dips of `|h(x) - x|` that approach zero without a sign change are
/// re-examined: a genuine double root is appended once (callers see it
/// flagged by `classify_phase`), and a sub-grid pair of simple
/// crossings is split and kept.  `e^γ = 1` short-circuits to the single
/// root `β`, where the map is constant.
pub fn find_fixed_points(model: &PenaltyModel) -> Vec<f64> {
    let a = model.beta;
    let b = model.e_gamma();
    if b == 1.0 {
        return vec![a];
    }
    let x_max = (4.0 * a).max(50.0);
    let dx = x_max / SCAN_POINTS as f64;
    let decay = (-dx).exp();
    let g = |x: f64| fixed_point_map(x, a, b) - x;

    // The scan works on p(x) = ab - x (b + (1-b) e^{-x}) = g(x) D(x)
    // with D > 0: same roots and signs as g, no division per point.
    // e^{-x} advances multiplicatively and is resynced periodically,
    // which keeps its drift far below the dip gate.
    let dip_gate = 1e-4 * (1.0 + a * (1.0 + b));
    let mut roots: Vec<f64> = Vec::new();
    let mut dips: Vec<(f64, f64)> = Vec::new();
    let mut e_mx = 1.0_f64;
    let (mut x2, mut p2) = (0.0_f64, f64::INFINITY);
    let (mut x1, mut p1) = (0.0_f64, a * b);
    for k in 1..=SCAN_POINTS {
        let x = k as f64 * dx;
        if k % SCAN_RESYNC == 0 {
            e_mx = (-x).exp();
        } else {
            e_mx *= decay;
        }
        let p = a * b - x * (b + (1.0 - b) * e_mx);
        if p == 0.0 {
            roots.push(x);
        } else if p1 != 0.0 && (p1 > 0.0) != (p > 0.0) {
            roots.push(bisect(g, x1, x, g(x1), BISECT_TOL));
        } else if p1.abs() <= p2.abs()
            && p1.abs() <= p.abs()
            && p1.abs() < dip_gate
            && (p2 > 0.0) == (p > 0.0)
        {
            dips.push((x2, x));
        }
        (x2, p2) = (x1, p1);
        (x1, p1) = (x, p);
    }

    for (lo, hi) in dips {
        let (xh, _) = golden_min(|x| { let v = g(x); v * v }, lo, hi, BISECT_TOL);
        let v = g(xh);
        let background = g(lo);
        if v.abs() <= TANGENT_VALUE_TOL {
            if (fixed_point_slope(xh, a, b) - 1.0).abs() <= TANGENT_SLOPE_TOL {
                roots.push(xh);
            }
        } else if (v > 0.0) != (background > 0.0) {
            // The dip crosses zero twice inside one grid cell.
            roots.push(bisect(g, lo, xh, background, BISECT_TOL));
            roots.push(bisect(g, xh, hi, v, BISECT_TOL));
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|u, v| (*u - *v).abs() < ROOT_MERGE_TOL);
    roots
}

/// Sorts the stationary points into minima and maxima and names the
/// regime.
///
/// The objective decreases where the map sits above the diagonal and
/// increases below it, so a root with slope `h' < 1` is a local
/// minimum and one with `h' > 1` a local maximum; a slope within
/// 1e-8 of 1 marks a double root and sets `tangency`.  With two local
/// minima the regime is decided by comparing objective values within
/// `tie_tol`: `TwoGlobalMinima` on a tie, `ThreeRootsUniqueGlobal`
/// otherwise.
pub fn classify_phase(model: &PenaltyModel, tie_tol: f64) -> PhaseClassification {
    assert!(tie_tol >= 0.0 && tie_tol.is_finite(), "tie_tol must be finite and nonnegative");
    let a = model.beta;
    let b = model.e_gamma();
    let roots = find_fixed_points(model);
    let mut local_minima = Vec::new();
    let mut maxima = Vec::new();
    let mut tangency = false;
    for &r in &roots {
        let s = if b == 1.0 { 0.0 } else { fixed_point_slope(r, a, b) };
        if (s - 1.0).abs() <= TANGENT_SLOPE_TOL {
            tangency = true;
        } else if s < 1.0 {
            local_minima.push(r);
        } else {
            maxima.push(r);
        }
    }

    if roots.len() == 3 && !tangency {
        // Three simple roots must alternate min, max, min.
        let h_mid = objective_h(roots[1], model);
        let h_out = objective_h(roots[0], model).max(objective_h(roots[2], model));
        assert!(
            h_mid + 1e-9 >= h_out,
            "middle root is not the local maximum: H = {h_mid} vs {h_out}"
        );
    }

    let (global_minima, regime) = match local_minima.len() {
        0 | 1 => {
            let regime = if roots.len() == 1 {
                Regime::UniqueMin
            } else {
                Regime::ThreeRootsUniqueGlobal
            };
            (local_minima.clone(), regime)
        }
        _ => {
            let values: Vec<f64> = local_minima.iter().map(|&r| objective_h(r, model)).collect();
            let best = values.iter().cloned().fold(f64::INFINITY, f64::min);
            let global: Vec<f64> = local_minima
                .iter()
                .zip(&values)
                .filter(|(_, &v)| v - best <= tie_tol)
                .map(|(&r, _)| r)
                .collect();
            let regime = if global.len() > 1 {
                Regime::TwoGlobalMinima
            } else {
                Regime::ThreeRootsUniqueGlobal
            };
            (global, regime)
        }
    };
    debug_assert!(maxima.len() <= 1);

    PhaseClassification { roots, local_minima, global_minima, regime, tangency }
}

/// Classifies every cell of an inclusive `(beta, e_gamma)` grid.
///
/// Cells are laid out row-major, beta outermost, and each axis places
/// `resolution` evenly spaced points on its range (a single point sits
/// at the low end).  Output depends only on the inputs.
pub fn phase_scan(
    beta_range: (f64, f64),
    e_gamma_range: (f64, f64),
    resolution: (usize, usize),
    tie_tol: f64,
) -> Result<Vec<PhaseCell>> {
    for (name, (lo, hi)) in [("beta", beta_range), ("e_gamma", e_gamma_range)] {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::Domain(format!(
                "{name} range must satisfy 0 < lo <= hi, got ({lo}, {hi})"
            )));
        }
    }
    if resolution.0 == 0 || resolution.1 == 0 {
        return Err(Error::Domain("resolution must be positive".into()));
    }
    let axis = |(lo, hi): (f64, f64), n: usize| -> Vec<f64> {
        if n == 1 {
            return vec![lo];
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    };
    let betas = axis(beta_range, resolution.0);
    let e_gammas = axis(e_gamma_range, resolution.1);
    let mut cells = Vec::with_capacity(betas.len() * e_gammas.len());
    for &beta in &betas {
        for &e_gamma in &e_gammas {
            let model = PenaltyModel::from_e_gamma(beta, e_gamma)?;
            cells.push(PhaseCell {
                beta,
                e_gamma,
                classification: classify_phase(&model, tie_tol),
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilted::{log_normalizer, solve_j, tilted_mean, variational_objective, SolveOptions};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn normalizer_examples() {
        for theta in [0.3, 1.0, 2.5, 7.0] {
            assert!((penalty_normalizer(theta, 0.0) - theta).abs() < 1e-12);
        }
        for gamma in [-3.0, 0.0, 2.0] {
            assert_eq!(penalty_normalizer(0.0, gamma), 0.0);
        }
        let c = penalty_normalizer(1.0, 0.5f64.ln());
        assert!((c - 0.6201145069582775).abs() < 1e-14, "C = {c}");
        // Both evaluation branches agree where they meet.
        for theta in [29.5f64, 30.0, 30.5] {
            let b = 0.2f64;
            let direct = (1.0 + b * (theta.exp() - 1.0)).ln();
            assert!((penalty_normalizer(theta, b.ln()) - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn mean_examples() {
        for theta in [0.1, 1.0, 4.0] {
            assert!((penalty_mean(theta, 0.0) - theta).abs() < 1e-12);
        }
        assert_eq!(penalty_mean(0.0, -1.7), 0.0);
        let m = penalty_mean(2.0, 0.04f64.ln());
        assert!((m - 0.47080460627055159).abs() < 1e-13, "m = {m}");
        // The tilt only ever raises the mean toward θ.
        let mut prev = 0.0;
        for k in 1..=60 {
            let m = penalty_mean(0.2 * k as f64, (0.1f64).ln());
            assert!(m > prev && m < 0.2 * k as f64 + 1e-12);
            prev = m;
        }
    }

    #[test]
    fn closed_forms_match_series_evaluation() {
        // 20x20 grid over θ ∈ (0, 10], e^γ ∈ [0.01, 5].
        for i in 0..20 {
            let theta = 10.0 * (i + 1) as f64 / 20.0;
            for j in 0..20 {
                let e_gamma: f64 = 0.01 + (5.0 - 0.01) * j as f64 / 19.0;
                let f = DegreeStatistic::penalty(e_gamma.ln()).unwrap();
                let c_series = log_normalizer(theta, &f, 1e-14).unwrap();
                let c_closed = penalty_normalizer(theta, e_gamma.ln());
                assert!(
                    (c_series - c_closed).abs() < 1e-10,
                    "C mismatch at θ={theta}, b={e_gamma}: {c_series} vs {c_closed}"
                );
                let m_series = tilted_mean(theta, &f).unwrap();
                let m_closed = penalty_mean(theta, e_gamma.ln());
                assert!(
                    (m_series - m_closed).abs() < 1e-10,
                    "m mismatch at θ={theta}, b={e_gamma}: {m_series} vs {m_closed}"
                );
            }
        }
    }

    #[test]
    fn objective_examples() {
        let model = PenaltyModel::from_e_gamma(2.0, 0.3).unwrap();
        assert_eq!(objective_h(0.0, &model), 1.0);
        for beta in [0.5, 1.2, 3.0] {
            let er = PenaltyModel::new(beta, 0.0).unwrap();
            assert!(objective_h(beta, &er).abs() < 1e-12);
        }
        // One interior local minimum along the first figure's curve.
        let fig1 = PenaltyModel::from_e_gamma(1.2, 0.5).unwrap();
        let n = 2048;
        let values: Vec<f64> =
            (1..=n).map(|k| objective_h(8.0 * k as f64 / n as f64, &fig1)).collect();
        let minima = (1..n - 1)
            .filter(|&k| values[k] < values[k - 1] && values[k] < values[k + 1])
            .count();
        assert_eq!(minima, 1);
    }

    #[test]
    fn objective_matches_series_form() {
        for (beta, e_gamma) in [(1.2, 0.5), (6.5, 0.04), (2.0, 3.0)] {
            let model = PenaltyModel::from_e_gamma(beta, e_gamma).unwrap();
            let f = model.statistic();
            for k in 1..=40 {
                let theta = 10.0 * k as f64 / 40.0;
                let series = variational_objective(theta, &f, beta).unwrap();
                let closed = objective_h(theta, &model);
                assert!(
                    (series - closed).abs() < 1e-8,
                    "H mismatch at θ={theta}: {series} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn map_examples() {
        for x in [0.0, 1.0, 7.0] {
            assert!((fixed_point_map(x, 2.7, 1.0) - 2.7).abs() < 1e-15);
        }
        assert_eq!(fixed_point_map(0.0, 2.0, 0.5), 1.0);
        assert!((fixed_point_map(40.0, 3.0, 0.1) - 3.0).abs() < 1e-9);
        let mut rng = ChaCha12Rng::seed_from_u64(0xf1d0);
        for _ in 0..200 {
            let a: f64 = rng.random_range(0.1..8.0);
            let b: f64 = rng.random_range(0.05..4.0);
            if (b - 1.0).abs() < 1e-3 {
                continue;
            }
            let x = rng.random_range(0.001..40.0);
            let h = fixed_point_map(x, a, b);
            let (lo, hi) = (a.min(a * b), a.max(a * b));
            // Strict containment saturates to the endpoint in floats
            // once e^{-x} drops below resolution.
            assert!(h >= lo - 1e-12 && h <= hi + 1e-12, "h({x}; {a}, {b}) = {h} outside [{lo}, {hi}]");
        }
    }

    #[test]
    fn root_examples_and_stationarity() {
        let cases = [(1.2, 0.5, 1), (2.0, 3.0, 1), (6.5, 0.04, 3)];
        for (beta, e_gamma, count) in cases {
            let model = PenaltyModel::from_e_gamma(beta, e_gamma).unwrap();
            let roots = find_fixed_points(&model);
            assert_eq!(roots.len(), count, "roots at β={beta}, b={e_gamma}: {roots:?}");
            for pair in roots.windows(2) {
                assert!(pair[0] < pair[1]);
            }
            for &r in &roots {
                let residual = (r - (beta * penalty_mean(r, model.gamma)).sqrt()).abs();
                assert!(residual <= 1e-8, "stationarity residual {residual} at root {r}");
                assert!((fixed_point_map(r, beta, e_gamma) - r).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn single_root_parameter_regions() {
        // b > 1 and a < 4 each force a unique fixed point.
        let mut rng = ChaCha12Rng::seed_from_u64(0x500f);
        for k in 0..10_000 {
            let (a, b) = if k % 2 == 0 {
                (rng.random_range(0.05..12.0), rng.random_range(1.000001..8.0))
            } else {
                (rng.random_range(0.05..3.9999), rng.random_range(0.01..8.0))
            };
            let model = PenaltyModel::from_e_gamma(a, b).unwrap();
            let roots = find_fixed_points(&model);
            assert_eq!(roots.len(), 1, "a={a}, b={b} gave roots {roots:?}");
        }
    }

    #[test]
    fn root_count_is_one_or_three() {
        let mut rng = ChaCha12Rng::seed_from_u64(0x0700);
        for _ in 0..200 {
            let beta = rng.random_range(0.1..12.0);
            for _ in 0..200 {
                let e_gamma = rng.random_range(0.02..5.0);
                let model = PenaltyModel::from_e_gamma(beta, e_gamma).unwrap();
                let c = classify_phase(&model, 1e-6);
                match c.roots.len() {
                    1 | 3 => {}
                    2 => assert!(c.tangency, "two roots without tangency at β={beta}, b={e_gamma}"),
                    n => panic!("{n} roots at β={beta}, b={e_gamma}"),
                }
            }
        }
    }

    #[test]
    fn figure_regimes() {
        let fig1 = PenaltyModel::from_e_gamma(1.2, 0.5).unwrap();
        let c1 = classify_phase(&fig1, 1e-6);
        assert_eq!(c1.regime, Regime::UniqueMin);
        assert_eq!(c1.global_minima.len(), 1);
        assert!(!c1.tangency);

        let fig2 = PenaltyModel::from_e_gamma(6.5, 0.04).unwrap();
        let c2 = classify_phase(&fig2, 1e-6);
        assert_eq!(c2.regime, Regime::ThreeRootsUniqueGlobal);
        assert_eq!(c2.local_minima.len(), 2);
        assert_eq!(c2.global_minima.len(), 1);
        let h_mid = objective_h(c2.roots[1], &fig2);
        assert!(h_mid > objective_h(c2.roots[0], &fig2));
        assert!(h_mid > objective_h(c2.roots[2], &fig2));

        // The third figure's parameters put the two wells within 0.05
        // of each other, so they tie at that tolerance.
        let fig3 = PenaltyModel::from_e_gamma(5.89, 0.05).unwrap();
        let c3 = classify_phase(&fig3, 0.05);
        assert_eq!(c3.local_minima.len(), 2);
        let gap = (objective_h(c3.local_minima[0], &fig3)
            - objective_h(c3.local_minima[1], &fig3))
        .abs();
        assert!(gap <= 0.05, "well gap {gap}");
        assert_eq!(c3.regime, Regime::TwoGlobalMinima);
        assert_eq!(c3.global_minima.len(), 2);
    }

    #[test]
    fn classification_matches_variational_solver() {
        for (beta, e_gamma) in [(1.2, 0.5), (6.5, 0.04), (5.89, 0.05)] {
            let model = PenaltyModel::from_e_gamma(beta, e_gamma).unwrap();
            let c = classify_phase(&model, 1e-6);
            let sol = solve_j(&model.statistic(), beta, &SolveOptions::default()).unwrap();
            assert_eq!(
                sol.minimizers.len(),
                c.global_minima.len(),
                "minimizer count at β={beta}, b={e_gamma}"
            );
            for (m, &r) in sol.minimizers.iter().zip(&c.global_minima) {
                assert!(
                    (m.theta - r).abs() < 1e-6,
                    "θ* = {} vs root {r} at β={beta}, b={e_gamma}",
                    m.theta
                );
            }
        }
    }

    #[test]
    fn objective_decreases_away_from_zero() {
        for (beta, e_gamma) in [(1.2, 0.5), (6.5, 0.04), (5.89, 0.05), (0.3, 2.0)] {
            let model = PenaltyModel::from_e_gamma(beta, e_gamma).unwrap();
            let slope =
                (objective_h(1e-4 + 1e-5, &model) - objective_h(1e-4 - 1e-5, &model)) / 2e-5;
            assert!(slope < 0.0, "slope {slope} at β={beta}, b={e_gamma}");
        }
    }

    #[test]
    fn phase_scan_grid() {
        // A grid whose center cell reproduces the three-root example.
        let cells = phase_scan((5.5, 7.5), (0.02, 0.06), (3, 3), 1e-6).unwrap();
        assert_eq!(cells.len(), 9);
        // Row-major, beta outermost.
        assert!((cells[1].beta - 5.5).abs() < 1e-12);
        assert!((cells[1].e_gamma - 0.04).abs() < 1e-12);
        assert!((cells[3].beta - 6.5).abs() < 1e-12);
        let center = &cells[4];
        assert!((center.beta - 6.5).abs() < 1e-12 && (center.e_gamma - 0.04).abs() < 1e-12);
        assert_eq!(center.classification.regime, Regime::ThreeRootsUniqueGlobal);

        // Penalties favoring edges and small β both stay unique.
        for cell in phase_scan((0.5, 10.0), (1.1, 4.0), (6, 6), 1e-6).unwrap() {
            assert_eq!(cell.classification.regime, Regime::UniqueMin, "at β={}", cell.beta);
        }
        for cell in phase_scan((0.2, 3.9), (0.02, 5.0), (6, 6), 1e-6).unwrap() {
            assert_eq!(cell.classification.regime, Regime::UniqueMin, "at b={}", cell.e_gamma);
        }

        let again = phase_scan((5.5, 7.5), (0.02, 0.06), (3, 3), 1e-6).unwrap();
        assert_eq!(cells, again);

        assert!(phase_scan((0.0, 1.0), (0.5, 1.0), (2, 2), 1e-6).is_err());
        assert!(phase_scan((1.0, 2.0), (0.5, 1.0), (0, 2), 1e-6).is_err());
    }
}
