//! Shared numeric primitives: compensated summation, log-factorials,
//! streaming log-sum-exp, golden-section minimization, bisection.

use std::sync::LazyLock;

/// Neumaier-compensated accumulator. Terms are fed in ascending index order
/// by every caller in this crate; the compensation keeps series of a few
/// hundred terms accurate to ~1 ulp regardless of cancellation pattern.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    c: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

const LN_FACTORIAL_TABLE_LEN: usize = 16 * 1024;

static LN_FACTORIAL: LazyLock<Vec<f64>> = LazyLock::new(|| {
    let mut table = Vec::with_capacity(LN_FACTORIAL_TABLE_LEN);
    let mut acc = KahanSum::new();
    table.push(0.0);
    for k in 1..LN_FACTORIAL_TABLE_LEN {
        acc.add((k as f64).ln());
        table.push(acc.value());
    }
    table
});

/// log(k!). Exact cumulative sums for small k, ln Γ(k+1) beyond the table
/// (the large-argument regime, where the gamma approximation is sharpest).
pub fn ln_factorial(k: u64) -> f64 {
    if (k as usize) < LN_FACTORIAL_TABLE_LEN {
        LN_FACTORIAL[k as usize]
    } else {
        statrs::function::gamma::ln_gamma(k as f64 + 1.0)
    }
}

/// Streaming log-sum-exp: log Σ e^{t_j} fed one exponent at a time, in the
/// caller's (ascending) order, with compensated accumulation of the scaled
/// terms. Never overflows as long as individual exponents are finite.
#[derive(Clone, Copy, Debug)]
pub struct LogSumExp {
    max: f64,
    scaled: KahanSum,
}

impl LogSumExp {
    pub fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            scaled: KahanSum::new(),
        }
    }

    pub fn add(&mut self, t: f64) {
        if t == f64::NEG_INFINITY {
            return;
        }
        if t <= self.max {
            self.scaled.add((t - self.max).exp());
        } else {
            let v = self.scaled.value();
            self.scaled = KahanSum::new();
            self.scaled.add(v * (self.max - t).exp());
            self.scaled.add(1.0);
            self.max = t;
        }
    }

    /// −∞ when nothing was added.
    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.value().ln()
        }
    }
}

impl Default for LogSumExp {
    fn default() -> Self {
        Self::new()
    }
}

const INVPHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of a unimodal `f` on `[a, b]`, run until the
/// bracket is narrower than `tol`. Returns the best sampled point and value.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    debug_assert!(b >= a);
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Bisection for a root of `g` on `[a, b]`, where `ga = g(a)` and `g(b)`
/// have opposite signs. Shrinks the bracket below `tol`, returns midpoint.
pub fn bisect<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64, mut ga: f64, tol: f64) -> f64 {
    debug_assert!(b >= a);
    while b - a > tol {
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_cancelled_tail() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-17);
        }
        assert!((s.value() - (1.0 + 1e-16)).abs() < 1e-18, "compensation lost the tail");
    }

    #[test]
    fn ln_factorial_matches_direct_products() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-12);
        assert!((ln_factorial(10) - 3628800f64.ln()).abs() < 1e-11);
        // table/gamma seam agrees to Stirling-regime accuracy
        let k = LN_FACTORIAL_TABLE_LEN as u64;
        let seam = ln_factorial(k - 1) + (k as f64).ln();
        assert!((ln_factorial(k) - seam).abs() / seam < 1e-12);
    }

    #[test]
    fn log_sum_exp_handles_huge_exponents() {
        let mut l = LogSumExp::new();
        l.add(1000.0);
        l.add(1000.0);
        assert!((l.value() - (1000.0 + 2f64.ln())).abs() < 1e-12);
        let mut asc = LogSumExp::new();
        for t in [-3.0, -1.0, 0.0, 2.0] {
            asc.add(t);
        }
        let direct: f64 = [-3.0f64, -1.0, 0.0, 2.0].iter().map(|t| t.exp()).sum();
        assert!((asc.value() - direct.ln()).abs() < 1e-14);
    }

    #[test]
    fn golden_min_finds_quartic_minimum() {
        let f = |x: f64| (x - 1.25).powi(4) + 0.5;
        let (x, fx) = golden_min(f, 0.0, 3.0, 1e-10);
        assert!((x - 1.25).abs() < 1e-3, "quartic flat bottom, x = {x}");
        assert!((fx - 0.5).abs() < 1e-11);
    }

    #[test]
    fn bisect_locates_sign_change() {
        let g = |x: f64| x * x - 2.0;
        let r = bisect(g, 0.0, 2.0, g(0.0), 1e-13);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }
}
