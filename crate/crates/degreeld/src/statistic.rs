//! Degree statistics: functions f on the nonnegative integers with f(0) = 0
//! that weight a graph by exp(Σ_v f(deg v)). The growth tag records how fast
//! f can rise, which is what decides whether the tilted normalizer
//! Σ_i θ^i e^{f(i)} / i! converges (at most linear growth) or diverges for
//! every θ > 1 (superlinear, the degenerate regime).

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper envelope of a statistic, used for series tail bounds.
///
/// `Bounded(c)` means f(i) ≤ c everywhere (and |f| ≤ c for the built-ins
/// carrying it); `Linear(c)` means f(i) ≤ c·i, two-sided except for the
/// negatively tilted k-star where only the upper side holds (and is all the
/// tail bound needs). `Superlinear` admits no such envelope.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Growth {
    Bounded(f64),
    Linear(f64),
    Superlinear,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
enum Kind {
    Zero,
    Linear { c: f64 },
    KStar { k: u32, gamma: f64 },
    Gwd { lambda1: f64, gamma: f64 },
    AltKStar { lambda2: f64, gamma: f64 },
    Penalty { gamma: f64 },
    Custom { table: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeStatistic {
    kind: Kind,
    growth: Growth,
    label: String,
}

/// C(i, k) as an f64, exact whenever the value fits in u128.
fn binomial(i: u64, k: u32) -> f64 {
    let k = k as u64;
    if k > i {
        return 0.0;
    }
    let mut acc: u128 = 1;
    for j in 0..k {
        // C(i, j+1) = C(i, j) · (i − j) / (j + 1), integral at every step
        match acc.checked_mul((i - j) as u128) {
            Some(v) => acc = v / (j as u128 + 1),
            None => {
                use crate::numeric::ln_factorial;
                return (ln_factorial(i) - ln_factorial(k) - ln_factorial(i - k)).exp();
            }
        }
    }
    acc as f64
}

impl DegreeStatistic {
    /// f ≡ 0 (plain Erdős–Rényi reference).
    pub fn zero() -> Self {
        Self {
            kind: Kind::Zero,
            growth: Growth::Bounded(0.0),
            label: "zero".into(),
        }
    }

    /// f(i) = c·i.
    pub fn linear(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::Domain("linear coefficient must be finite".into()));
        }
        Ok(Self {
            kind: Kind::Linear { c },
            growth: Growth::Linear(c.abs()),
            label: format!("linear(c={c})"),
        })
    }

    /// k-star counts: f(i) = γ·C(i, k), k ≥ 2. Superlinear when γ > 0,
    /// which the variational solver rejects; γ < 0 keeps f ≤ 0.
    pub fn kstar(k: u32, gamma: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain("kstar needs k >= 2".into()));
        }
        if !gamma.is_finite() {
            return Err(Error::Domain("kstar gamma must be finite".into()));
        }
        let growth = if gamma > 0.0 {
            Growth::Superlinear
        } else if gamma < 0.0 {
            Growth::Linear(0.0)
        } else {
            Growth::Bounded(0.0)
        };
        Ok(Self {
            kind: Kind::KStar { k, gamma },
            growth,
            label: format!("kstar(k={k},gamma={gamma})"),
        })
    }

    /// Geometrically weighted degrees, stored shifted so f(0) = 0:
    /// f(i) = γ(e^{−λ₁ i} − 1). The shift changes neither the tilted family
    /// nor the graph model.
    pub fn gwd(lambda1: f64, gamma: f64) -> Result<Self> {
        if !(lambda1 > 0.0 && lambda1.is_finite()) {
            return Err(Error::Domain("gwd needs lambda1 > 0".into()));
        }
        if !gamma.is_finite() {
            return Err(Error::Domain("gwd gamma must be finite".into()));
        }
        Ok(Self {
            kind: Kind::Gwd { lambda1, gamma },
            growth: Growth::Bounded(gamma.abs()),
            label: format!("gwd(lambda1={lambda1},gamma={gamma},shifted)"),
        })
    }

    /// Alternating k-star resummation: f(i) = γ·λ₂^{−2}[(1−λ₂)^i − 1 + iλ₂],
    /// λ₂ ∈ (0, 1). Grows linearly with slope approaching γ/λ₂.
    pub fn alt_kstar(lambda2: f64, gamma: f64) -> Result<Self> {
        if !(lambda2 > 0.0 && lambda2 < 1.0) {
            return Err(Error::Domain("alt_kstar needs lambda2 in (0,1)".into()));
        }
        if !gamma.is_finite() {
            return Err(Error::Domain("alt_kstar gamma must be finite".into()));
        }
        Ok(Self {
            kind: Kind::AltKStar { lambda2, gamma },
            growth: Growth::Linear(gamma.abs() * (1.0 + 1.0 / lambda2)),
            label: format!("alt_kstar(lambda2={lambda2},gamma={gamma})"),
        })
    }

    /// Sparsity penalty ψ(i) = 1{i ≥ 1} scaled by γ: rewards (γ > 0) or
    /// penalizes (γ < 0) non-isolated vertices.
    pub fn penalty(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::Domain("penalty gamma must be finite".into()));
        }
        Ok(Self {
            kind: Kind::Penalty { gamma },
            growth: Growth::Bounded(gamma.abs()),
            label: format!("penalty(gamma={gamma})"),
        })
    }

    /// Arbitrary table of values; f(i) = table[i], continued past the end
    /// with the final entry. table[0] must be 0.
    pub fn custom(table: Vec<f64>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::Domain("custom table must be non-empty".into()));
        }
        if table[0] != 0.0 {
            return Err(Error::Domain("custom table must have f(0) = 0".into()));
        }
        if table.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("custom table entries must be finite".into()));
        }
        let bound = table.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let label = format!("custom(len={})", table.len());
        Ok(Self {
            kind: Kind::Custom { table },
            growth: Growth::Bounded(bound),
            label,
        })
    }

    pub fn eval(&self, i: u64) -> f64 {
        match &self.kind {
            Kind::Zero => 0.0,
            Kind::Linear { c } => c * i as f64,
            Kind::KStar { k, gamma } => gamma * binomial(i, *k),
            Kind::Gwd { lambda1, gamma } => gamma * ((-lambda1 * i as f64).exp() - 1.0),
            Kind::AltKStar { lambda2, gamma } => {
                let decay = (1.0 - lambda2).powi(i.min(i32::MAX as u64) as i32);
                gamma / (lambda2 * lambda2) * (decay - 1.0 + i as f64 * lambda2)
            }
            Kind::Penalty { gamma } => {
                if i == 0 {
                    0.0
                } else {
                    *gamma
                }
            }
            Kind::Custom { table } => *table.get(i as usize).unwrap_or(table.last().unwrap()),
        }
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn is_superlinear(&self) -> bool {
        matches!(self.growth, Growth::Superlinear)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// (log-scale constant A, slope s) with f(i) ≤ A + s·i, valid for any
    /// non-superlinear statistic; drives the normalizer tail bound.
    pub(crate) fn envelope(&self) -> Option<(f64, f64)> {
        match self.growth {
            Growth::Bounded(c) => Some((c, 0.0)),
            Growth::Linear(c) => Some((0.0, c)),
            Growth::Superlinear => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_vanish_at_zero() {
        let stats = [
            DegreeStatistic::zero(),
            DegreeStatistic::linear(0.7).unwrap(),
            DegreeStatistic::kstar(2, -1.0).unwrap(),
            DegreeStatistic::kstar(3, 0.5).unwrap(),
            DegreeStatistic::gwd(1.0, 2.0).unwrap(),
            DegreeStatistic::alt_kstar(0.5, 1.0).unwrap(),
            DegreeStatistic::penalty(-0.7).unwrap(),
            DegreeStatistic::custom(vec![0.0, 1.0, -2.0]).unwrap(),
        ];
        for f in &stats {
            assert_eq!(f.eval(0), 0.0, "{} must vanish at 0", f.label());
        }
    }

    #[test]
    fn alt_kstar_closed_form_at_two() {
        // γ λ₂^{-2} ((1-λ₂)² - 1 + 2λ₂) at λ₂ = 1/2, γ = 1: 4·(1/4) = 1
        let f = DegreeStatistic::alt_kstar(0.5, 1.0).unwrap();
        assert_eq!(f.eval(2), 1.0);
        assert_eq!(f.eval(1), 0.0, "telescoping kills the i = 1 term");
    }

    #[test]
    fn kstar_counts_stars_exactly() {
        let f = DegreeStatistic::kstar(2, -1.0).unwrap();
        assert_eq!(f.eval(3), -3.0);
        assert_eq!(f.eval(1), 0.0, "C(1,2) = 0");
        let g = DegreeStatistic::kstar(3, 2.0).unwrap();
        assert_eq!(g.eval(5), 20.0, "2 * C(5,3)");
    }

    #[test]
    fn binomial_is_exact_in_range() {
        assert_eq!(binomial(6, 2), 15.0);
        assert_eq!(binomial(52, 5), 2598960.0);
        assert_eq!(binomial(1, 2), 0.0);
        assert_eq!(binomial(0, 0), 1.0);
    }

    #[test]
    fn growth_tags_follow_the_tilt_sign() {
        assert_eq!(
            DegreeStatistic::kstar(2, 0.5).unwrap().growth(),
            Growth::Superlinear
        );
        assert_eq!(
            DegreeStatistic::kstar(2, -1.0).unwrap().growth(),
            Growth::Linear(0.0)
        );
        assert!(DegreeStatistic::kstar(2, 0.5).unwrap().is_superlinear());
        assert!(!DegreeStatistic::zero().is_superlinear());
        match DegreeStatistic::alt_kstar(0.5, 1.0).unwrap().growth() {
            Growth::Linear(c) => assert_eq!(c, 3.0, "|γ|(1 + 1/λ₂)"),
            g => panic!("alt_kstar should be linear, got {g:?}"),
        }
    }

    #[test]
    fn linear_envelopes_hold_along_the_table() {
        let f = DegreeStatistic::alt_kstar(0.3, -1.5).unwrap();
        let Growth::Linear(c) = f.growth() else {
            panic!()
        };
        for i in 1..200u64 {
            assert!(
                f.eval(i).abs() <= c * i as f64 + 1e-12,
                "envelope broken at i = {i}"
            );
        }
        let g = DegreeStatistic::gwd(0.5, -2.0).unwrap();
        for i in 0..200u64 {
            assert!(g.eval(i).abs() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn penalty_is_an_indicator() {
        let f = DegreeStatistic::penalty(-0.25).unwrap();
        assert_eq!(f.eval(0), 0.0);
        assert_eq!(f.eval(1), -0.25);
        assert_eq!(f.eval(17), -0.25);
    }

    #[test]
    fn parameter_domains_are_enforced() {
        assert!(DegreeStatistic::kstar(1, -1.0).is_err());
        assert!(DegreeStatistic::gwd(0.0, 1.0).is_err());
        assert!(DegreeStatistic::alt_kstar(1.0, 1.0).is_err());
        assert!(DegreeStatistic::alt_kstar(0.0, 1.0).is_err());
        assert!(DegreeStatistic::custom(vec![1.0]).is_err());
        assert!(DegreeStatistic::custom(vec![]).is_err());
        assert!(DegreeStatistic::penalty(f64::NAN).is_err());
    }

    #[test]
    fn custom_table_continues_with_last_value() {
        let f = DegreeStatistic::custom(vec![0.0, 2.0, -1.0]).unwrap();
        assert_eq!(f.eval(2), -1.0);
        assert_eq!(f.eval(100), -1.0);
    }
}
