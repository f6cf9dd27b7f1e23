//! Nested-domain schedule `d_j = 2^{-(j+1)}`, `j = 0..=floor(log2 p)`, and the
//! growth of the per-level amplification factors.

use num_rational::Ratio;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NestingSchedule {
    pub p: u64,
    pub levels: Vec<Ratio<i64>>,
    pub sum_d: Ratio<i64>,
    /// `Σ_j (j + 1) / 2^j`, so that `minimal_c = 2^exponent`.
    pub exponent: Ratio<i64>,
    /// Smallest `C` with `Π_j d_j^{-p/2^j} <= C^p`.
    pub minimal_c: f64,
}

impl NestingSchedule {
    pub fn depth(&self) -> u32 {
        self.levels.len() as u32 - 1
    }
}

pub fn nesting_schedule(p: u64) -> Result<NestingSchedule> {
    if p < 1 {
        return Err(Error::InvalidArgument("p must be >= 1".into()));
    }
    let depth = 63 - p.leading_zeros();
    if depth > 60 {
        return Err(Error::InvalidArgument("p too large for the exact schedule".into()));
    }
    let levels: Vec<Ratio<i64>> = (0..=depth).map(|j| Ratio::new(1, 1i64 << (j + 1))).collect();
    // Common denominators 2^{J+1} and 2^J keep the sums in integers.
    let sum_num: i64 = (0..=depth).map(|j| 1i64 << (depth - j)).sum();
    let sum_d = Ratio::new(sum_num, 1i64 << (depth + 1));
    let exp_num: i64 = (0..=depth).map(|j| i64::from(j + 1) << (depth - j)).sum();
    let exponent = Ratio::new(exp_num, 1i64 << depth);
    let minimal_c = (*exponent.numer() as f64 / *exponent.denom() as f64).exp2();
    Ok(NestingSchedule { p, levels, sum_d, exponent, minimal_c })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthAudit {
    pub p: u64,
    pub c0: f64,
    /// `ln A(p)` with `A(p) = Π_j (C0 / d_j)^{ceil(p / 2^j)}`.
    pub log_amplification: f64,
    /// `A(p)^{1/p}`.
    pub rate: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Passes iff `A(p)^{1/p} <= 32 C0` (16 from the geometric series, 2 for the ceilings).
pub fn growth_audit(p: u64, c0: f64, schedule: &NestingSchedule) -> Result<GrowthAudit> {
    if schedule.p != p {
        return Err(Error::InvalidArgument(format!("schedule was built for p = {}, not {p}", schedule.p)));
    }
    if !(c0.is_finite() && c0 > 0.0) {
        return Err(Error::InvalidArgument("C0 must be positive".into()));
    }
    let log_amplification: f64 = schedule
        .levels
        .iter()
        .enumerate()
        .map(|(j, d)| {
            let copies = p.div_ceil(1u64 << j) as f64;
            let d = *d.numer() as f64 / *d.denom() as f64;
            copies * (c0 / d).ln()
        })
        .sum();
    let rate = (log_amplification / p as f64).exp();
    let bound = 32.0 * c0;
    Ok(GrowthAudit { p, c0, log_amplification, rate, bound, pass: rate <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_one() {
        let s = nesting_schedule(1).unwrap();
        assert_eq!(s.levels, vec![Ratio::new(1, 2)]);
        assert_eq!(s.sum_d, Ratio::new(1, 2));
        assert_eq!(s.minimal_c, 2.0);
        let g = growth_audit(1, 1.0, &s).unwrap();
        assert!((g.rate - 2.0).abs() < 1e-15);
    }

    #[test]
    fn p_four() {
        let s = nesting_schedule(4).unwrap();
        assert_eq!(s.levels, vec![Ratio::new(1, 2), Ratio::new(1, 4), Ratio::new(1, 8)]);
        assert_eq!(s.sum_d, Ratio::new(7, 8));
        assert_eq!(s.exponent, Ratio::new(11, 4));
        assert!((s.minimal_c - 2f64.powf(2.75)).abs() < 1e-12);
    }

    #[test]
    fn invalid_inputs() {
        assert!(nesting_schedule(0).is_err());
        let s = nesting_schedule(3).unwrap();
        assert!(growth_audit(4, 1.0, &s).is_err());
        assert!(growth_audit(3, 0.0, &s).is_err());
    }
}
