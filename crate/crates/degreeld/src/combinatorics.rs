//! Degree sequences, degree frequencies, and exact small-graph oracles.
//!
//! A degree frequency vector `h = (h_0, ..., h_{n-1})` records how many
//! of the `n` vertices have each degree; it determines the sorted degree
//! sequence and vice versa, carries `E = (1/2) Σ i h_i` edges, and maps
//! to the empirical measure `h/n`.  The Erdős–Gallai criterion decides
//! whether a sequence is realized by a simple graph, a floor-and-parity
//! construction rounds a target distribution into a valid frequency
//! vector, and log-space counting bounds estimate how many graphs carry
//! a given frequency and how much probability an Erdős–Rényi law gives
//! them.  For `n ≤ 7` (8 behind an explicit cap) full enumeration over
//! all edge subsets provides exact counts, probabilities, and partition
//! values against which the bounds and the sampler are checked.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::measures::SparseMeasure;
use crate::numeric::{ln_factorial, LogSumExp};
use crate::statistic::DegreeStatistic;
use crate::{Error, Result};

/// Enumeration stays below this vertex count unless a caller raises it.
pub const ENUMERATION_CAP: usize = 7;
/// No enumeration beyond this many vertices (2^28 edge subsets).
pub const ENUMERATION_HARD_CAP: usize = 8;

/// How many vertices of each degree a graph on `n` vertices has.
///
/// Valid vectors satisfy `Σ h_i = n`, have even `Σ i h_i` (twice the
/// edge count), and put no mass on degrees `≥ n`.  `counts` is kept at
/// length `n` exactly, so equality and ordering are canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DegreeFrequency {
    n: usize,
    counts: Vec<u64>,
    edges: u64,
}

/// A degree sequence, stored sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<u64>,
}

impl DegreeFrequency {
    pub fn new(n: usize, counts: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a frequency vector needs n >= 1".into()));
        }
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 && i >= n {
                return Err(Error::Domain(format!(
                    "degree {i} cannot occur on {n} vertices"
                )));
            }
        }
        let mut counts = counts;
        counts.resize(n, 0);
        counts.truncate(n);
        let total: u64 = counts.iter().sum();
        if total != n as u64 {
            return Err(Error::Domain(format!(
                "counts sum to {total}, expected n = {n}"
            )));
        }
        let degree_sum: u64 = counts.iter().enumerate().map(|(i, &c)| i as u64 * c).sum();
        if degree_sum % 2 != 0 {
            return Err(Error::Domain(format!(
                "total degree {degree_sum} is odd"
            )));
        }
        Ok(Self { n, counts, edges: degree_sum / 2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn edges(&self) -> u64 {
        self.edges
    }

    /// The empirical measure `h/n`.
    pub fn to_measure(&self) -> SparseMeasure {
        let n = self.n as f64;
        SparseMeasure::new(self.counts.iter().map(|&c| c as f64 / n).collect())
            .expect("h/n is a probability vector")
    }

    /// The sorted degree sequence with these frequencies.
    pub fn to_sequence(&self) -> DegreeSequence {
        let mut degrees = Vec::with_capacity(self.n);
        for i in (0..self.n).rev() {
            for _ in 0..self.counts[i] {
                degrees.push(i as u64);
            }
        }
        DegreeSequence { degrees }
    }

    pub fn from_sequence(d: &DegreeSequence) -> Result<Self> {
        let n = d.degrees.len();
        let mut counts = vec![0u64; n];
        for &deg in &d.degrees {
            counts[deg as usize] += 1;
        }
        Self::new(n, counts)
    }

    /// Whether some simple graph realizes these frequencies.
    pub fn is_graphical(&self) -> bool {
        erdos_gallai_check(self.to_sequence().degrees())
            .expect("sequence from a frequency vector is sorted and in range")
    }
}

impl DegreeSequence {
    /// Builds a sequence from degrees in any order; entries must fit on
    /// `degrees.len()` vertices.
    pub fn new(mut degrees: Vec<u64>) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::Domain("a degree sequence needs n >= 1".into()));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d >= n as u64) {
            return Err(Error::Domain(format!(
                "degree {d} cannot occur on {n} vertices"
            )));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn is_graphical(&self) -> bool {
        erdos_gallai_check(&self.degrees).expect("sorted by construction")
    }
}

/// Erdős–Gallai criterion: a sorted non-increasing sequence `d` with
/// entries in `[0, n-1]` is the degree sequence of a simple graph if
/// and only if `Σ d_i` is even and, for every `k`,
///
/// ```text
///   Σ_{i<k} d_i  ≤  k(k-1) + Σ_{i>=k} min(d_i, k).
/// ```
///
/// Unsorted or out-of-range input is a domain error rather than a
/// `false`, since it does not describe a degree sequence at all.
pub fn erdos_gallai_check(d: &[u64]) -> Result<bool> {
    let n = d.len();
    if n == 0 {
        return Err(Error::Domain("a degree sequence needs n >= 1".into()));
    }
    if let Some(&v) = d.iter().find(|&&v| v >= n as u64) {
        return Err(Error::Domain(format!("degree {v} cannot occur on {n} vertices")));
    }
    if d.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Domain("degree sequence must be sorted non-increasing".into()));
    }
    let mut prefix = vec![0u64; n + 1];
    for (i, &v) in d.iter().enumerate() {
        prefix[i + 1] = prefix[i] + v;
    }
    if prefix[n] % 2 != 0 {
        return Ok(false);
    }
    for k in 1..=n {
        // First index past k-1 whose degree drops below k; before it the
        // tail contributes k per vertex, after it the degrees themselves.
        let t = d.partition_point(|&v| v >= k as u64).max(k);
        let lhs = prefix[k];
        let rhs = (k * (k - 1)) as u64 + ((t - k) * k) as u64 + (prefix[n] - prefix[t]);
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rounds a target degree distribution `y` (indexed `0..=M`) into a
/// valid frequency vector on `n` vertices.
///
/// Degrees `i ≥ 1` receive `⌊n y_i⌋` vertices, one extra on degree 1
/// if that leaves the total degree odd, and degree 0 absorbs the rest.
/// Every coordinate of `h/n` then sits within `M/n` of `y`.  When the
/// remainder leaves no isolated vertex, the target reaches degrees the
/// vertex count cannot carry, or the rounded vector fails the
/// Erdős–Gallai criterion, `n` is too small for the target.
pub fn frequency_from_target(y: &[f64], n: usize) -> Result<DegreeFrequency> {
    if y.len() < 3 {
        return Err(Error::Domain("the target must be indexed 0..=M with M >= 2".into()));
    }
    if y.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::Domain("target weights must be finite and nonnegative".into()));
    }
    let total: f64 = y.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("target weights sum to {total}, expected 1")));
    }
    if y[0] <= 0.0 {
        return Err(Error::Domain("the target must give degree 0 positive weight".into()));
    }
    if n == 0 {
        return Err(Error::NTooSmall("no vertices".into()));
    }

    let mut counts = vec![0u64; y.len().max(2)];
    for (i, &v) in y.iter().enumerate().skip(1) {
        counts[i] = (n as f64 * v).floor() as u64;
    }
    let degree_sum: u64 = counts.iter().enumerate().map(|(i, &c)| i as u64 * c).sum();
    if degree_sum % 2 != 0 {
        counts[1] += 1;
    }
    let placed: u64 = counts.iter().sum();
    if placed >= n as u64 {
        return Err(Error::NTooSmall(format!(
            "rounding the target on {n} vertices leaves no isolated vertex"
        )));
    }
    counts[0] = n as u64 - placed;
    if let Some(top) = counts.iter().rposition(|&c| c > 0) {
        if top >= n {
            return Err(Error::NTooSmall(format!(
                "the target reaches degree {top}, which needs more than {n} vertices"
            )));
        }
    }
    let h = DegreeFrequency::new(n, counts)?;
    if !h.is_graphical() {
        return Err(Error::NTooSmall(format!(
            "the rounded frequencies are not graphical on {n} vertices"
        )));
    }
    Ok(h)
}

/// Log of an upper bound on the number of simple graphs carrying the
/// frequency vector `h`:
///
/// ```text
///   N(h)  ≤  (2E)! / (E! 2^E ∏_i (i!)^{h_i}) · n! / ∏_i h_i!
/// ```
///
/// The first factor counts pairings of edge stubs, the second the ways
/// to assign degrees to labeled vertices.  Everything is evaluated
/// through log-gamma, so no factorial is ever formed.
pub fn log_mckay_upper(h: &DegreeFrequency) -> f64 {
    let e = h.edges();
    let mut value = ln_factorial(2 * e) - ln_factorial(e) - e as f64 * std::f64::consts::LN_2;
    value += ln_factorial(h.n() as u64);
    for (i, &c) in h.counts().iter().enumerate() {
        value -= c as f64 * ln_factorial(i as u64);
        value -= ln_factorial(c);
    }
    value
}

/// Log of the frequency-counting bound weighted by the Erdős–Rényi
/// edge law with parameter `β/n`: add `E log(β/n)` and
/// `(C(n,2) - E) log(1 - β/n)` to the graph-count bound.  Dominates
/// `log P(frequency = h)`.
pub fn log_nbar(h: &DegreeFrequency, beta: f64) -> Result<f64> {
    let n = h.n();
    if !(beta.is_finite() && beta > 0.0 && beta < n as f64) {
        return Err(Error::Domain(format!(
            "beta must lie in (0, n) = (0, {n}), got {beta}"
        )));
    }
    let p = beta / n as f64;
    let pairs = (n * (n - 1) / 2) as u64;
    let e = h.edges();
    Ok(log_mckay_upper(h) + e as f64 * p.ln() + (pairs - e) as f64 * (-p).ln_1p())
}

/// Lexicographic rank of the vertex pair `(i, j)`, `i < j`, among all
/// pairs on `n` vertices; the edge-bitmask bit order everywhere.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

fn check_er_parameter(n: usize, beta: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0 && beta < n as f64) {
        return Err(Error::Domain(format!(
            "beta must lie in (0, n) = (0, {n}), got {beta}"
        )));
    }
    Ok(beta / n as f64)
}

/// Exact degree-frequency distribution of the Erdős–Rényi law on `n`
/// vertices: every edge subset is visited once, so the counts are the
/// true numbers of graphs per frequency vector and the probabilities
/// sum to one.
pub fn enumerate_frequencies(
    n: usize,
    beta: f64,
) -> Result<BTreeMap<DegreeFrequency, (u64, f64)>> {
    enumerate_frequencies_capped(n, beta, ENUMERATION_CAP)
}

/// Enumeration with a caller-chosen cap; `ENUMERATION_HARD_CAP` still
/// applies.  The mask range is split into chunks whose partial counts
/// merge associatively, so the result does not depend on scheduling.
pub fn enumerate_frequencies_capped(
    n: usize,
    beta: f64,
    cap: usize,
) -> Result<BTreeMap<DegreeFrequency, (u64, f64)>> {
    let cap = cap.min(ENUMERATION_HARD_CAP);
    if n == 0 {
        return Err(Error::Domain("enumeration needs n >= 1".into()));
    }
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let p = check_er_parameter(n, beta)?;

    let pairs = pair_list(n);
    let bits = pairs.len();
    let total: u64 = 1 << bits;
    let chunk = total.div_ceil(64).max(1);
    let ranges: Vec<(u64, u64)> =
        (0..total).step_by(chunk as usize).map(|lo| (lo, (lo + chunk).min(total))).collect();

    use rayon::prelude::*;
    let merged: BTreeMap<Vec<u64>, u64> = ranges
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut local: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
            for mask in lo..hi {
                let mut degrees = [0u64; ENUMERATION_HARD_CAP];
                let mut m = mask;
                while m != 0 {
                    let bit = m.trailing_zeros() as usize;
                    let (i, j) = pairs[bit];
                    degrees[i] += 1;
                    degrees[j] += 1;
                    m &= m - 1;
                }
                let mut counts = vec![0u64; n];
                for &d in &degrees[..n] {
                    counts[d as usize] += 1;
                }
                *local.entry(counts).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, local| {
            for (k, v) in local {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        });

    let log_p = p.ln();
    let log_q = (-p).ln_1p();
    let mut out = BTreeMap::new();
    for (counts, count) in merged {
        let h = DegreeFrequency::new(n, counts).expect("enumeration yields valid frequencies");
        let e = h.edges();
        let prob = count as f64 * (e as f64 * log_p + (bits as u64 - e) as f64 * log_q).exp();
        out.insert(h, (count, prob));
    }
    Ok(out)
}

/// Exact log-partition value `log E[e^{Σ_v f(deg v)}]` under the
/// Erdős–Rényi law, by summing over the enumerated frequency classes in
/// log space.  Any statistic is admissible since the sum is finite.
pub fn exact_log_partition(n: usize, beta: f64, f: &DegreeStatistic) -> Result<f64> {
    exact_log_partition_capped(n, beta, f, ENUMERATION_CAP)
}

/// `exact_log_partition` with a caller-chosen enumeration cap.
pub fn exact_log_partition_capped(
    n: usize,
    beta: f64,
    f: &DegreeStatistic,
    cap: usize,
) -> Result<f64> {
    let freqs = enumerate_frequencies_capped(n, beta, cap)?;
    let p = beta / n as f64;
    let log_p = p.ln();
    let log_q = (-p).ln_1p();
    let bits = (n * (n - 1) / 2) as u64;
    let mut lse = LogSumExp::new();
    for (h, (count, _)) in &freqs {
        let e = h.edges();
        let tilt: f64 =
            h.counts().iter().enumerate().map(|(i, &c)| c as f64 * f.eval(i as u64)).sum();
        lse.add((*count as f64).ln() + e as f64 * log_p + (bits - e) as f64 * log_q + tilt);
    }
    Ok(lse.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn freq(n: usize, counts: &[u64]) -> DegreeFrequency {
        DegreeFrequency::new(n, counts.to_vec()).unwrap()
    }

    #[test]
    fn measure_of_simple_frequencies() {
        assert_eq!(freq(2, &[2]).to_measure(), SparseMeasure::delta(0));
        assert_eq!(freq(2, &[0, 2]).to_measure(), SparseMeasure::delta(1));
        assert_eq!(freq(4, &[0, 4]).to_measure(), SparseMeasure::delta(1));
        let path = freq(3, &[0, 2, 1]);
        assert_eq!(path.edges(), 2);
        let m = path.to_measure();
        assert!((m.weight(1) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn erdos_gallai_examples() {
        assert!(erdos_gallai_check(&[1, 1]).unwrap());
        assert!(erdos_gallai_check(&[2, 2, 2]).unwrap());
        // k=2: 3+3 = 6 > 2 + min(1,2) + min(1,2) = 4.
        assert!(!erdos_gallai_check(&[3, 3, 1, 1]).unwrap());
        assert!(!erdos_gallai_check(&[1, 0]).unwrap(), "odd degree total");
        assert!(erdos_gallai_check(&[2, 1, 1]).unwrap());
        assert!(erdos_gallai_check(&[0]).unwrap());
        assert!(matches!(erdos_gallai_check(&[1, 3, 3, 1]), Err(Error::Domain(_))));
        assert!(matches!(erdos_gallai_check(&[5, 1]), Err(Error::Domain(_))));
        assert!(matches!(erdos_gallai_check(&[]), Err(Error::Domain(_))));
    }

    #[test]
    fn frequency_construction_examples() {
        let all_isolated = frequency_from_target(&[1.0, 0.0, 0.0], 10).unwrap();
        assert_eq!(all_isolated.counts(), &[10, 0, 0, 0, 0, 0, 0, 0, 0, 0]);

        // h_1 = ⌊5⌋ = 5 gives odd total degree, so one vertex is bumped.
        let half = frequency_from_target(&[0.5, 0.5, 0.0], 10).unwrap();
        assert_eq!(&half.counts()[..2], &[4, 6]);
        assert_eq!(half.edges(), 3);

        let spread = frequency_from_target(&[0.5, 0.0, 0.5], 100).unwrap();
        assert_eq!(spread.counts()[0], 50);
        assert_eq!(spread.counts()[2], 50);
        assert!(spread.is_graphical());

        // Rounding 0.999 of the mass onto degree 1 fills every vertex.
        let err = frequency_from_target(&[0.001, 0.999, 0.0], 1000);
        assert!(matches!(err, Err(Error::NTooSmall(_))));

        // Five vertices of degree 5 among six vertices is not graphical.
        let err = frequency_from_target(&[0.2, 0.0, 0.0, 0.0, 0.0, 0.8], 6);
        assert!(matches!(err, Err(Error::NTooSmall(_))));

        assert!(matches!(frequency_from_target(&[0.5, 0.5], 10), Err(Error::Domain(_))));
        assert!(matches!(frequency_from_target(&[0.0, 0.5, 0.5], 10), Err(Error::Domain(_))));
        assert!(matches!(frequency_from_target(&[0.6, 0.5, 0.0], 10), Err(Error::Domain(_))));
    }

    #[test]
    fn mckay_bound_examples() {
        assert!((log_mckay_upper(&freq(4, &[0, 4])) - 3f64.ln()).abs() < 1e-12);
        assert_eq!(log_mckay_upper(&freq(2, &[2])), 0.0);
        let triangle = log_mckay_upper(&freq(3, &[0, 0, 3]));
        assert!((triangle - 1.875f64.ln()).abs() < 1e-12);
        assert!((triangle - 0.6286086594223741).abs() < 1e-12);
    }

    #[test]
    fn nbar_examples() {
        let empty2 = log_nbar(&freq(2, &[2]), 1.0).unwrap();
        assert!((empty2 + std::f64::consts::LN_2).abs() < 1e-12);
        let edge2 = log_nbar(&freq(2, &[0, 2]), 1.0).unwrap();
        assert!((edge2 - 0.5f64.ln()).abs() < 1e-12);
        let matching = log_nbar(&freq(4, &[0, 4]), 1.0).unwrap();
        let expected = 3f64.ln() + 2.0 * 0.25f64.ln() + 4.0 * 0.75f64.ln();
        assert!((matching - expected).abs() < 1e-12);
        assert!(matches!(log_nbar(&freq(2, &[2]), 2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn enumeration_examples() {
        let two = enumerate_frequencies(2, 1.0).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[&freq(2, &[2])], (1, 0.5));
        assert_eq!(two[&freq(2, &[0, 2])].0, 1);

        let three = enumerate_frequencies(3, 1.0).unwrap();
        let counts: BTreeMap<Vec<u64>, u64> =
            three.iter().map(|(h, &(c, _))| (h.counts().to_vec(), c)).collect();
        assert_eq!(counts[&vec![3, 0, 0]], 1);
        assert_eq!(counts[&vec![1, 2, 0]], 3);
        assert_eq!(counts[&vec![0, 2, 1]], 3, "two-edge paths");
        assert_eq!(counts[&vec![0, 0, 3]], 1);
        let total: u64 = three.values().map(|&(c, _)| c).sum();
        assert_eq!(total, 8);
        let prob: f64 = three.values().map(|&(_, p)| p).sum();
        assert!((prob - 1.0).abs() < 1e-12);

        let four = enumerate_frequencies(4, 1.0).unwrap();
        assert_eq!(four[&freq(4, &[0, 4])].0, 3);
        let total: u64 = four.values().map(|&(c, _)| c).sum();
        assert_eq!(total, 64);

        assert!(matches!(enumerate_frequencies(8, 1.0), Err(Error::TooLarge { n: 8, cap: 7 })));
        assert!(matches!(
            enumerate_frequencies_capped(7, 1.0, 6),
            Err(Error::TooLarge { n: 7, cap: 6 })
        ));
        assert!(enumerate_frequencies_capped(4, 1.0, 99).is_ok(), "caps clamp, not fail");
        assert!(matches!(enumerate_frequencies(3, 3.5), Err(Error::Domain(_))));
    }

    #[test]
    fn partition_examples() {
        let zero = DegreeStatistic::zero();
        assert!(exact_log_partition(2, 1.0, &zero).unwrap().abs() < 1e-12);

        let pen = DegreeStatistic::penalty(0.5f64.ln()).unwrap();
        let z = exact_log_partition(2, 1.0, &pen).unwrap();
        assert!((z - 0.625f64.ln()).abs() < 1e-12);
        assert!((z + 0.4700036292457356).abs() < 1e-12);

        // A positive two-star tilt strengthens per vertex as n grows.
        let kstar = DegreeStatistic::kstar(2, 1.0).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for n in 4..=7 {
            let per_vertex = exact_log_partition(n, 1.0, &kstar).unwrap() / n as f64;
            assert!(per_vertex > prev, "per-vertex value fell at n={n}");
            prev = per_vertex;
        }
    }

    #[test]
    fn mckay_bound_dominates_exact_counts() {
        for n in 4..=6 {
            let mut best_ratio_low_degree = 0.0f64;
            for (h, &(count, _)) in &enumerate_frequencies(n, 1.0).unwrap() {
                let bound = log_mckay_upper(h);
                let log_count = (count as f64).ln();
                assert!(
                    log_count <= bound + 1e-12,
                    "count {count} beats the bound at n={n}, h={:?}",
                    h.counts()
                );
                if h.counts().iter().enumerate().all(|(i, &c)| i <= 2 || c == 0) {
                    best_ratio_low_degree = best_ratio_low_degree.max((log_count - bound).exp());
                }
            }
            // Among bounded-degree frequencies the bound stays within a
            // constant factor: the count does not collapse against it.
            assert!(
                best_ratio_low_degree > 0.1,
                "bound is loose by {best_ratio_low_degree} at n={n}"
            );
        }
    }

    #[test]
    fn nbar_dominates_frequency_probability() {
        for n in 4..=6 {
            for beta in [0.5, 1.0, 2.0] {
                for (h, &(_, prob)) in &enumerate_frequencies(n, beta).unwrap() {
                    let bound = log_nbar(h, beta).unwrap();
                    assert!(
                        prob.ln() <= bound + 1e-9,
                        "P = {prob} beats the bound at n={n}, β={beta}, h={:?}",
                        h.counts()
                    );
                }
            }
        }
    }

    #[test]
    fn criterion_matches_enumeration() {
        // Every non-increasing candidate sequence on n <= 6 vertices.
        fn candidates(n: usize, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for d in (0..=max).rev() {
                prefix.push(d);
                candidates(n, d, prefix, out);
                prefix.pop();
            }
        }
        for n in 1..=6 {
            let realizable: std::collections::BTreeSet<Vec<u64>> = enumerate_frequencies(n, 0.5)
                .unwrap()
                .keys()
                .map(|h| h.to_sequence().degrees().to_vec())
                .collect();
            let mut all = Vec::new();
            candidates(n, n as u64 - 1, &mut Vec::new(), &mut all);
            for d in all {
                let eg = erdos_gallai_check(&d).unwrap();
                assert_eq!(
                    eg,
                    realizable.contains(&d),
                    "criterion disagrees with enumeration on {d:?}"
                );
            }
        }
    }

    #[test]
    fn construction_stays_graphical_and_close() {
        let mut rng = ChaCha12Rng::seed_from_u64(0x10af);
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

            let h = frequency_from_target(&y, n).unwrap();
            assert!(h.is_graphical());
            assert_eq!(h.counts().iter().sum::<u64>(), n as u64);
            let bound = m as f64 / n as f64;
            for i in 0..h.n() {
                let target = if i <= m { y[i] } else { 0.0 };
                let gap = (h.counts()[i] as f64 / n as f64 - target).abs();
                assert!(gap <= bound + 1e-12, "coordinate {i} off by {gap} > {bound}");
            }
        }
    }

    #[test]
    fn sequence_frequency_round_trip() {
        for (h, _) in enumerate_frequencies(5, 1.0).unwrap() {
            let d = h.to_sequence();
            assert_eq!(DegreeFrequency::from_sequence(&d).unwrap(), h);
        }
        let d = DegreeSequence::new(vec![1, 3, 2, 0, 2, 3, 1]).unwrap();
        assert_eq!(d.degrees(), &[3, 3, 2, 2, 1, 1, 0]);
        let h = DegreeFrequency::from_sequence(&d).unwrap();
        assert_eq!(h.to_sequence(), d);
        // An odd degree total has no frequency-vector counterpart.
        let odd = DegreeSequence::new(vec![1, 0, 0]).unwrap();
        assert!(DegreeFrequency::from_sequence(&odd).is_err());
    }

    #[test]
    fn pair_indexing_is_lexicographic() {
        let pairs = pair_list(5);
        assert_eq!(pairs[0], (0, 1));
        assert_eq!(pairs[4], (1, 2));
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            assert_eq!(pair_index(5, i, j), idx);
        }
    }

    #[test]
    fn frequency_constructor_rejects_invalid_vectors() {
        assert!(matches!(DegreeFrequency::new(3, vec![1, 1]), Err(Error::Domain(_))));
        assert!(matches!(DegreeFrequency::new(3, vec![1, 1, 1]), Err(Error::Domain(_))));
        assert!(matches!(DegreeFrequency::new(2, vec![1, 0, 1]), Err(Error::Domain(_))));
        assert!(DegreeFrequency::new(3, vec![1, 2]).is_ok(), "short vectors pad with zeros");
    }
}
