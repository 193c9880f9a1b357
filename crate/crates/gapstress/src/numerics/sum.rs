/// Neumaier-compensated accumulator: tracks a running correction so that
/// adding terms of wildly different magnitude loses no more than one ulp
/// of the final total.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        // Neumaier's branch keeps the correction valid when |x| > |sum|.
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator of terms.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_large_terms() {
        // Naive summation returns 0 here; the compensation keeps both 1.0s.
        let total = compensated_sum([1.0, 1e100, 1.0, -1e100]);
        assert_eq!(total, 2.0);
    }

    #[test]
    fn alternating_million_terms() {
        // sum_{k=1}^{1e6} (-1)^{k+1} * (1 + k*2^-30) has a closed form:
        // pairs (1 + a) - (1 + a + d) = -d with d = 2^-30, 5e5 pairs.
        let d = (2.0f64).powi(-30);
        let total = compensated_sum((1..=1_000_000).map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * (1.0 + k as f64 * d)
        }));
        let expected = -(500_000.0) * d;
        assert!(
            (total - expected).abs() <= 1e-12,
            "total {total} expected {expected}"
        );
    }

    #[test]
    fn matches_exact_rational_series() {
        // 1/k(k+1) telescopes to 1 - 1/(N+1).
        let n = 100_000;
        let total = compensated_sum((1..=n).map(|k| {
            let k = k as f64;
            1.0 / (k * (k + 1.0))
        }));
        let expected = 1.0 - 1.0 / (n as f64 + 1.0);
        assert!((total - expected).abs() < 1e-14);
    }
}
