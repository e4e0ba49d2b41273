//! Erdős–Rényi sampling and the edge-flip Metropolis chain for
//! degree-statistic models.
//!
//! The target law on graphs with `n` vertices weighs each graph by
//!
//! ```text
//!   (β/n)^E (1 - β/n)^{C(n,2)-E} e^{Σ_v f(deg v)},
//! ```
//!
//! which an edge-flip chain samples without knowing the normalization:
//! a proposal picks a uniform vertex pair and toggles it, and the log
//! acceptance ratio for adding an edge is
//!
//! ```text
//!   log(p/(1-p)) + f(d_u + 1) - f(d_u) + f(d_v + 1) - f(d_v)
//! ```
//!
//! with `p = β/n` (sign-flipped, at decremented degrees, for removal).
//! Only two degree evaluations of `f` are ever needed, so even
//! statistics whose limit problem degenerates remain runnable at
//! finite `n`.  One sweep is `C(n,2)` proposals.  Randomness comes
//! from ChaCha12 keyed by the config seed; parallel chains derive
//! their seeds by a SplitMix64 step indexed by chain number, so runs
//! are reproducible regardless of scheduling.  Importance sampling
//! from the plain Erdős–Rényi law estimates log-partition values, and
//! concentration reports measure how close empirical degree
//! distributions sit to the predicted minimizers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::pair_index;
use crate::measures::SparseMeasure;
use crate::numeric::KahanSum;
use crate::statistic::DegreeStatistic;
use crate::tilted::{tilted_measure, VariationalSolution};
use crate::{Error, Result};

/// A simple labeled graph held as a triangular edge bitset with
/// incrementally maintained degrees and edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
    degrees: Vec<u32>,
    edges: u64,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "a graph needs at least one vertex");
        let pairs = n * (n - 1) / 2;
        Self { n, bits: vec![0; pairs.div_ceil(64)], degrees: vec![0; n], edges: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> u64 {
        self.edges
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let k = pair_index(self.n, u.min(v), u.max(v));
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// Flips the pair `{u, v}` and keeps degrees and the edge count in
    /// step.
    pub fn toggle(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "toggle needs two distinct vertices");
        let k = pair_index(self.n, u.min(v), u.max(v));
        let mask = 1u64 << (k % 64);
        self.bits[k / 64] ^= mask;
        if self.bits[k / 64] & mask != 0 {
            self.degrees[u] += 1;
            self.degrees[v] += 1;
            self.edges += 1;
        } else {
            self.degrees[u] -= 1;
            self.degrees[v] -= 1;
            self.edges -= 1;
        }
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if self.has_edge(u, v) != present {
            self.toggle(u, v);
        }
    }

    /// The edge bitset as one word, bit `k` being the `k`-th pair in
    /// lexicographic order; only graphs with at most 64 pairs fit.
    pub fn edge_mask(&self) -> u64 {
        assert!(self.n * (self.n - 1) / 2 <= 64, "edge mask only fits n <= 11");
        self.bits.first().copied().unwrap_or(0)
    }

    fn degree_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n];
        for &d in &self.degrees {
            counts[d as usize] += 1;
        }
        counts
    }
}

/// The empirical degree distribution `(1/n) Σ_v δ_{deg v}`.
pub fn empirical_degree_distribution(g: &Graph) -> SparseMeasure {
    let n = g.n() as f64;
    SparseMeasure::new(g.degree_counts().iter().map(|&c| c as f64 / n).collect())
        .expect("degree counts form a probability vector")
}

fn check_edge_parameter(n: usize, beta: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0 && beta < n as f64) {
        return Err(Error::Domain(format!(
            "beta must lie in (0, n) = (0, {n}), got {beta}"
        )));
    }
    Ok(beta / n as f64)
}

/// One Erdős–Rényi draw: every pair appears independently with
/// probability `β/n`.  Pairs are visited in lexicographic order, so a
/// seed pins the graph exactly.
pub fn sample_er(n: usize, beta: f64, seed: u64) -> Result<Graph> {
    let p = check_edge_parameter(n, beta)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    Ok(sample_er_with(n, p, &mut rng))
}

fn sample_er_with(n: usize, p: f64, rng: &mut ChaCha12Rng) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                g.toggle(i, j);
            }
        }
    }
    g
}

/// Everything one Metropolis chain needs: model, schedule, and seed.
///
/// `burn_in` and `thin` count sweeps of `C(n,2)` proposals each; the
/// chain retains `samples` states, one every `thin` sweeps after
/// burn-in.  Defaults are a 1000-sweep burn-in with thinning 10.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub n: usize,
    pub beta: f64,
    pub statistic: DegreeStatistic,
    pub burn_in: usize,
    pub samples: usize,
    pub thin: usize,
    pub seed: u64,
}

impl ChainConfig {
    pub fn new(n: usize, beta: f64, statistic: DegreeStatistic, seed: u64) -> Result<Self> {
        let cfg = Self { n, beta, statistic, burn_in: 1000, samples: 100, thin: 10, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Domain("the chain needs at least two vertices".into()));
        }
        check_edge_parameter(self.n, self.beta)?;
        if self.samples == 0 || self.thin == 0 {
            return Err(Error::Domain("samples and thin must be positive".into()));
        }
        Ok(())
    }
}

/// Averages over the retained states of one or more chains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub mean_empirical_measure: SparseMeasure,
    pub distance_to_prediction: Option<f64>,
    pub mean_edges: f64,
    pub acceptance_rate: f64,
}

/// One retained state of a traced run.  `sweep` counts from chain
/// start including burn-in, `mu_f` is the per-vertex statistic average
/// `(1/n) Σ_v f(deg v)`, and `distance` is the gap to the nearest
/// predicted measure when predictions were supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub sweep: u64,
    pub edges: u64,
    pub mu_f: f64,
    pub distance: Option<f64>,
}

/// Concentration of the sampled degree distributions around predicted
/// minimizers: the summary's distance is for the averaged measure,
/// `per_sample` holds the same distance for every retained state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub summary: SampleSummary,
    pub per_sample: Vec<f64>,
}

fn chain_seed(seed: u64, chain: usize) -> u64 {
    // One SplitMix64 step per chain index keeps streams decorrelated
    // even for adjacent seeds.
    let mut z = seed.wrapping_add((chain as u64 + 1).wrapping_mul(0x9E3779B97F4A7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

struct ChainOutput {
    degree_totals: Vec<u64>,
    edge_total: u64,
    accepted: u64,
    proposals: u64,
    per_sample: Vec<f64>,
    trace: Vec<TraceRow>,
}

/// One Metropolis proposal: pick a uniform pair, toggle it with the
/// edge-flip acceptance probability.
fn flip_step(
    g: &mut Graph,
    rng: &mut ChaCha12Rng,
    log_odds: f64,
    f_table: &[f64],
    accepted: &mut u64,
) {
    let n = g.n();
    let u = rng.random_range(0..n);
    let mut v = rng.random_range(0..n);
    while v == u {
        v = rng.random_range(0..n);
    }
    let (du, dv) = (g.degree(u) as usize, g.degree(v) as usize);
    let ratio = if g.has_edge(u, v) {
        -log_odds + f_table[du - 1] - f_table[du] + f_table[dv - 1] - f_table[dv]
    } else {
        log_odds + f_table[du + 1] - f_table[du] + f_table[dv + 1] - f_table[dv]
    };
    assert!(!ratio.is_nan(), "acceptance ratio must be a number");
    if ratio >= 0.0 || rng.random::<f64>() < ratio.exp() {
        g.toggle(u, v);
        *accepted += 1;
    }
}

fn min_distance(measure: &SparseMeasure, predictions: &[SparseMeasure]) -> f64 {
    predictions
        .iter()
        .map(|p| measure.metric_d(p))
        .fold(f64::INFINITY, f64::min)
}

fn run_single_chain(
    cfg: &ChainConfig,
    seed: u64,
    predictions: Option<&[SparseMeasure]>,
    want_trace: bool,
) -> ChainOutput {
    let n = cfg.n;
    let p = cfg.beta / n as f64;
    let log_odds = p.ln() - (-p).ln_1p();
    let f_table: Vec<f64> = (0..n as u64).map(|i| cfg.statistic.eval(i)).collect();
    let pairs_per_sweep = n * (n - 1) / 2;

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut g = sample_er_with(n, p, &mut rng);

    let mut accepted = 0u64;
    for _ in 0..cfg.burn_in * pairs_per_sweep {
        flip_step(&mut g, &mut rng, log_odds, &f_table, &mut accepted);
    }
    accepted = 0;
    let proposals = (cfg.samples * cfg.thin * pairs_per_sweep) as u64;

    let mut degree_totals = vec![0u64; n];
    let mut edge_total = 0u64;
    let mut per_sample = Vec::new();
    let mut trace = Vec::new();
    for k in 0..cfg.samples {
        for _ in 0..cfg.thin * pairs_per_sweep {
            flip_step(&mut g, &mut rng, log_odds, &f_table, &mut accepted);
        }
        let counts = g.degree_counts();
        for (t, &c) in degree_totals.iter_mut().zip(&counts) {
            *t += c;
        }
        edge_total += g.edges();
        let distance = predictions.map(|preds| {
            let measure = empirical_degree_distribution(&g);
            min_distance(&measure, preds)
        });
        if let Some(d) = distance {
            per_sample.push(d);
        }
        if want_trace {
            let mut mu_f = KahanSum::new();
            for (i, &c) in counts.iter().enumerate() {
                mu_f.add(c as f64 * f_table[i]);
            }
            trace.push(TraceRow {
                sweep: (cfg.burn_in + (k + 1) * cfg.thin) as u64,
                edges: g.edges(),
                mu_f: mu_f.value() / n as f64,
                distance,
            });
        }
    }

    ChainOutput { degree_totals, edge_total, accepted, proposals, per_sample, trace }
}

fn merge_outputs(
    cfg: &ChainConfig,
    outputs: Vec<ChainOutput>,
    predictions: Option<&[SparseMeasure]>,
) -> (SampleSummary, Vec<f64>, Vec<TraceRow>) {
    let n = cfg.n;
    let mut degree_totals = vec![0u64; n];
    let (mut edge_total, mut accepted, mut proposals) = (0u64, 0u64, 0u64);
    let mut per_sample = Vec::new();
    let mut trace = Vec::new();
    for out in outputs {
        for (t, c) in degree_totals.iter_mut().zip(out.degree_totals) {
            *t += c;
        }
        edge_total += out.edge_total;
        accepted += out.accepted;
        proposals += out.proposals;
        per_sample.extend(out.per_sample);
        trace.extend(out.trace);
    }
    let retained: u64 = degree_totals.iter().sum();
    let scale = 1.0 / retained as f64;
    let mean_empirical_measure =
        SparseMeasure::new(degree_totals.iter().map(|&t| t as f64 * scale).collect())
            .expect("averaged degree counts form a probability vector");
    let distance_to_prediction =
        predictions.map(|preds| min_distance(&mean_empirical_measure, preds));
    let samples = retained / n as u64;
    let summary = SampleSummary {
        mean_empirical_measure,
        distance_to_prediction,
        mean_edges: edge_total as f64 / samples as f64,
        acceptance_rate: accepted as f64 / proposals as f64,
    };
    (summary, per_sample, trace)
}

fn run_chains(
    cfg: &ChainConfig,
    chains: usize,
    predictions: Option<&[SparseMeasure]>,
    want_trace: bool,
) -> Result<(SampleSummary, Vec<f64>, Vec<TraceRow>)> {
    cfg.validate()?;
    if chains == 0 {
        return Err(Error::Domain("at least one chain is required".into()));
    }
    use rayon::prelude::*;
    let outputs: Vec<ChainOutput> = (0..chains)
        .into_par_iter()
        .map(|c| {
            // Only the first chain is traced; rows from parallel chains
            // would interleave the sweep column meaninglessly.
            run_single_chain(cfg, chain_seed(cfg.seed, c), predictions, want_trace && c == 0)
        })
        .collect();
    Ok(merge_outputs(cfg, outputs, predictions))
}

/// Runs one Metropolis chain and averages its retained states.
pub fn mcmc_run(cfg: &ChainConfig) -> Result<SampleSummary> {
    Ok(run_chains(cfg, 1, None, false)?.0)
}

/// Runs independent chains with derived seeds and merges them in chain
/// order; the merge is a plain pooled average, so it is deterministic
/// however the chains were scheduled.
pub fn mcmc_run_chains(cfg: &ChainConfig, chains: usize) -> Result<SampleSummary> {
    Ok(run_chains(cfg, chains, None, false)?.0)
}

/// Single traced chain: the summary plus one row per retained state.
/// An empty prediction slice leaves the distance column blank.
pub fn mcmc_run_traced(
    cfg: &ChainConfig,
    predictions: &[SparseMeasure],
) -> Result<(SampleSummary, Vec<TraceRow>)> {
    let preds = (!predictions.is_empty()).then_some(predictions);
    let (summary, _, trace) = run_chains(cfg, 1, preds, true)?;
    Ok((summary, trace))
}

/// The full-control entry point: any chain count, optional predicted
/// measures for the distance columns, optional trace (rows come from
/// the first chain only, so the sweep column stays meaningful).
pub fn mcmc_run_detailed(
    cfg: &ChainConfig,
    chains: usize,
    predictions: &[SparseMeasure],
    want_trace: bool,
) -> Result<(SampleSummary, Vec<TraceRow>)> {
    let preds = (!predictions.is_empty()).then_some(predictions);
    let (summary, _, trace) = run_chains(cfg, chains, preds, want_trace)?;
    Ok((summary, trace))
}

/// How tightly the chain concentrates on the predicted minimizers: the
/// averaged measure's distance to the nearest realized `σ_θ` plus the
/// same distance per retained state.  The prediction thresholds carry
/// no rate guarantee, so callers should read distances as trends.
pub fn concentration_check(
    cfg: &ChainConfig,
    solution: &VariationalSolution,
    chains: usize,
) -> Result<ConcentrationReport> {
    if solution.degenerate {
        return Err(Error::Domain(
            "a degenerate solution predicts no minimizer to concentrate on".into(),
        ));
    }
    if solution.minimizers.is_empty() {
        return Err(Error::Domain("the solution carries no minimizers".into()));
    }
    let predictions: Vec<SparseMeasure> = solution
        .minimizers
        .iter()
        .map(|m| tilted_measure(m.theta, &cfg.statistic, 1e-12).map(|t| t.measure))
        .collect::<Result<_>>()?;
    let (summary, per_sample, _) = run_chains(cfg, chains, Some(&predictions), false)?;
    Ok(ConcentrationReport { summary, per_sample })
}

/// Visit counts over all `2^{C(n,2)}` edge bitmasks after the given
/// number of proposals, for checking the chain against the exact law
/// on tiny graphs.
pub fn graph_visit_distribution(cfg: &ChainConfig, proposals: u64) -> Result<Vec<u64>> {
    cfg.validate()?;
    let n = cfg.n;
    let bits = n * (n - 1) / 2;
    if n > crate::combinatorics::ENUMERATION_CAP {
        return Err(Error::TooLarge { n, cap: crate::combinatorics::ENUMERATION_CAP });
    }
    let p = cfg.beta / n as f64;
    let log_odds = p.ln() - (-p).ln_1p();
    let f_table: Vec<f64> = (0..n as u64).map(|i| cfg.statistic.eval(i)).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(chain_seed(cfg.seed, 0));
    let mut g = sample_er_with(n, p, &mut rng);
    for _ in 0..cfg.burn_in * (n * (n - 1) / 2) {
        flip_step(&mut g, &mut rng, log_odds, &f_table, &mut 0);
    }
    let mut visits = vec![0u64; 1 << bits];
    let mut accepted = 0u64;
    for _ in 0..proposals {
        flip_step(&mut g, &mut rng, log_odds, &f_table, &mut accepted);
        visits[g.edge_mask() as usize] += 1;
    }
    Ok(visits)
}

/// Importance-sampling estimate of `log E[e^{Σ_v f(deg v)}]` under the
/// Erdős–Rényi law, with a delta-method standard error.
///
/// Exponents are centered at their maximum before exponentiating, so
/// heavy tilts cannot overflow.  Statistics of superlinear growth are
/// accepted (the estimate is finite for finite `n`) but their weights
/// are heavy-tailed and the reported error optimistic.
pub fn estimate_log_partition(
    n: usize,
    beta: f64,
    f: &DegreeStatistic,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let p = check_edge_parameter(n, beta)?;
    if samples == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    let f_table: Vec<f64> = (0..n as u64).map(|i| f.eval(i)).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut degrees = vec![0u32; n];
    let mut exponents = Vec::with_capacity(samples);
    for _ in 0..samples {
        degrees.fill(0);
        for i in 0..n {
            for j in i + 1..n {
                if rng.random::<f64>() < p {
                    degrees[i] += 1;
                    degrees[j] += 1;
                }
            }
        }
        let mut w = KahanSum::new();
        for &d in &degrees {
            w.add(f_table[d as usize]);
        }
        exponents.push(w.value());
    }
    let max = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut mean = KahanSum::new();
    for &w in &exponents {
        mean.add((w - max).exp());
    }
    let mean = mean.value() / samples as f64;
    let mut var = KahanSum::new();
    for &w in &exponents {
        let d = (w - max).exp() - mean;
        var.add(d * d);
    }
    let sd = (var.value() / (samples.saturating_sub(1).max(1)) as f64).sqrt();
    let std_error = sd / (mean * (samples as f64).sqrt());
    Ok((max + mean.ln(), std_error))
}
