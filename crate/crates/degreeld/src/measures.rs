//! Probability measures on the nonnegative integers with finite mean, the
//! degree metric, relative entropy, and the rate function
//!
//!   I(μ) = Σ_i μ_i log(i! μ_i) − (μ̄/2) log(μ̄ β) + (μ̄ + β)/2,   μ̄ = Σ i μ_i,
//!
//! which prices how unlikely an empirical degree distribution μ is for a
//! sparse Erdős–Rényi graph with edge probability β/n. I vanishes exactly at
//! the Poisson(β) law and equals β/2 at the measure with no edges at all.
//! The conventions 0·log 0 = 0 and I(μ)|_{μ̄=0} = β/2 are applied literally.

use serde::{Deserialize, Serialize};

use crate::numeric::{ln_factorial, KahanSum};
use crate::{Error, Result};

/// Constructor tolerance on |Σ μ_i − 1|.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Default truncation tolerance for realizing infinite-support measures.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// A finitely supported probability measure on {0, 1, 2, ...}, stored as a
/// dense weight vector from index 0 through its last positive weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseMeasure {
    weights: Vec<f64>,
}

impl SparseMeasure {
    /// Validates nonnegativity and normalization (within
    /// [`NORMALIZATION_TOL`]), then trims trailing zero weights.
    pub fn new(mut weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("measure needs at least one weight".into()));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::Domain(format!("weight at index {i} is {w}")));
            }
        }
        let mut total = KahanSum::new();
        for &w in &weights {
            total.add(w);
        }
        let total = total.value();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Domain(format!(
                "weights sum to {total:.17e}, not 1 within {NORMALIZATION_TOL:.0e}"
            )));
        }
        while weights.len() > 1 && *weights.last().unwrap() == 0.0 {
            weights.pop();
        }
        Ok(Self { weights })
    }

    /// Point mass at `i`.
    pub fn delta(i: usize) -> Self {
        let mut weights = vec![0.0; i + 1];
        weights[i] = 1.0;
        Self { weights }
    }

    /// Poisson(β) cut at the smallest support where the remaining tail mass
    /// drops below `tail_tol`, then renormalized.
    pub fn poisson(beta: f64, tail_tol: f64) -> Self {
        assert!(beta > 0.0 && beta.is_finite(), "beta must be positive");
        assert!(tail_tol > 0.0 && tail_tol < 1.0, "tail_tol must be in (0,1)");
        let mut weights = Vec::new();
        let mut p = (-beta).exp();
        let mut head = KahanSum::new();
        let mut i = 0u64;
        loop {
            weights.push(p);
            head.add(p);
            if 1.0 - head.value() < tail_tol {
                break;
            }
            i += 1;
            p *= beta / i as f64;
            assert!(i < 1_000_000, "poisson truncation did not converge");
        }
        let total = head.value();
        for w in &mut weights {
            *w /= total;
        }
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight at index `i`; zero beyond the stored support.
    pub fn weight(&self, i: usize) -> f64 {
        self.weights.get(i).copied().unwrap_or(0.0)
    }

    pub fn support_max(&self) -> usize {
        self.weights.len() - 1
    }

    /// μ̄ = Σ i μ_i.
    pub fn mean(&self) -> f64 {
        let mut s = KahanSum::new();
        for (i, &w) in self.weights.iter().enumerate() {
            s.add(i as f64 * w);
        }
        s.value()
    }

    /// d(μ, ν) = Σ_{i≥1} i·|μ_i − ν_i|. The i = 0 coordinate carries no
    /// weight, but on probability measures d = 0 still forces equality.
    pub fn metric_d(&self, other: &Self) -> f64 {
        let top = self.weights.len().max(other.weights.len());
        let mut s = KahanSum::new();
        for i in 1..top {
            s.add(i as f64 * (self.weight(i) - other.weight(i)).abs());
        }
        s.value()
    }

    /// D(μ ‖ ν) = Σ μ_i log(μ_i/ν_i), with +∞ when μ charges a point ν
    /// does not.
    pub fn kl_divergence(&self, other: &Self) -> f64 {
        let mut s = KahanSum::new();
        for (i, &w) in self.weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let v = other.weight(i);
            if v == 0.0 {
                return f64::INFINITY;
            }
            s.add(w * (w / v).ln());
        }
        s.value()
    }

    /// The rate function I(μ) at sparsity β, summed termwise.
    pub fn rate_i(&self, beta: f64) -> f64 {
        assert!(beta > 0.0 && beta.is_finite(), "beta must be positive");
        let mean = self.mean();
        if mean == 0.0 {
            return beta / 2.0;
        }
        let mut s = KahanSum::new();
        for (i, &w) in self.weights.iter().enumerate() {
            if w > 0.0 {
                s.add(w * (ln_factorial(i as u64) + w.ln()));
            }
        }
        s.value() - 0.5 * mean * (mean * beta).ln() + 0.5 * (mean + beta)
    }

    /// I(μ) evaluated through its entropy decomposition
    /// D(μ ‖ p_β) + (μ̄ − β)/2 + (μ̄/2) log β − (μ̄/2) log μ̄, with the
    /// Poisson law kept analytic rather than truncated. Algebraically equal
    /// to [`Self::rate_i`]; exists so the two evaluation orders can be
    /// checked against each other.
    pub fn rate_i_kl_form(&self, beta: f64) -> f64 {
        assert!(beta > 0.0 && beta.is_finite(), "beta must be positive");
        let mean = self.mean();
        if mean == 0.0 {
            return beta / 2.0;
        }
        let ln_beta = beta.ln();
        let mut d = KahanSum::new();
        for (i, &w) in self.weights.iter().enumerate() {
            if w > 0.0 {
                let ln_poisson = -beta + i as f64 * ln_beta - ln_factorial(i as u64);
                d.add(w * (w.ln() - ln_poisson));
            }
        }
        d.value() + 0.5 * (mean - beta) + 0.5 * mean * ln_beta - 0.5 * mean * mean.ln()
    }

    /// Conditional law on {0, ..., k}: weights renormalized by the head
    /// mass. Errors when nothing lives there.
    pub fn truncate_renormalize(&self, k: usize) -> Result<Self> {
        let head: Vec<f64> = self.weights.iter().take(k + 1).copied().collect();
        let mut total = KahanSum::new();
        for &w in &head {
            total.add(w);
        }
        let total = total.value();
        if total <= 0.0 {
            return Err(Error::Domain(format!(
                "no mass at or below index {k}, cannot renormalize"
            )));
        }
        Ok(Self {
            weights: head.into_iter().map(|w| w / total).collect(),
        })
    }

    /// CSV with header `i,weight`, one row per index through the last
    /// support point, weights at full double precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,weight\n");
        for (i, &w) in self.weights.iter().enumerate() {
            out.push_str(&format!("{i},{w:.16e}\n"));
        }
        out
    }

    /// Inverse of [`Self::to_csv`]; tolerates out-of-order rows and gaps
    /// (absent indices get weight zero) but validates like [`Self::new`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line == "i,weight" {
                continue;
            }
            let (idx, w) = line
                .split_once(',')
                .ok_or_else(|| Error::Domain(format!("line {}: expected `i,weight`", lineno + 1)))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|e| Error::Domain(format!("line {}: bad index: {e}", lineno + 1)))?;
            let w: f64 = w
                .trim()
                .parse()
                .map_err(|e| Error::Domain(format!("line {}: bad weight: {e}", lineno + 1)))?;
            entries.push((idx, w));
        }
        if entries.is_empty() {
            return Err(Error::Domain("no rows in measure CSV".into()));
        }
        let top = entries.iter().map(|&(i, _)| i).max().unwrap();
        let mut weights = vec![0.0; top + 1];
        for (i, w) in entries {
            weights[i] = w;
        }
        Self::new(weights)
    }
}
