//! Exact spline cutoffs `Ψ_N = χ_{[-r-d/2, r+d/2]} * ρ_w^{*K}` with `K = 3N` boxcar
//! factors of width `w = d / (6N)`, and certified bounds on their derivatives.
//!
//! `Ψ_N` is a piecewise polynomial of degree `K` in `C^{K-1}`; it equals 1 on
//! `[-r-d/4, r+d/4]` and vanishes outside `[-r-3d/4, r+3d/4]`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{sup_abs, Poly, SupEnclosure, SupMethod};
use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, int, to_f64, Scalar};

/// Piecewise polynomial, identically zero outside `[breakpoints[0], breakpoints[last]]`.
/// Piece `i` lives on `[b_i, b_{i+1}]` and is stored in the local variable `x - b_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePoly {
    breakpoints: Vec<Scalar>,
    pieces: Vec<Poly>,
    breakpoints_f64: Vec<f64>,
    pieces_f64: Vec<Vec<f64>>,
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<Scalar>, pieces: Vec<Poly>) -> Result<Self> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidArgument("need n+1 breakpoints for n pieces".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing".into()));
        }
        let breakpoints_f64 = breakpoints.iter().map(to_f64).collect();
        let pieces_f64 = pieces.iter().map(|p| p.coeffs().iter().map(to_f64).collect()).collect();
        Ok(PiecewisePoly { breakpoints, pieces, breakpoints_f64, pieces_f64 })
    }

    pub fn breakpoints(&self) -> &[Scalar] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn support(&self) -> (Scalar, Scalar) {
        (self.breakpoints[0].clone(), self.breakpoints.last().unwrap().clone())
    }

    /// Exact value; at a breakpoint the right-hand piece is used.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let n = self.pieces.len();
        if x < &self.breakpoints[0] || x > &self.breakpoints[n] {
            return Scalar::zero();
        }
        let i = match self.breakpoints.binary_search(x) {
            Ok(i) => i.min(n - 1),
            Err(i) => i - 1,
        };
        self.pieces[i].eval(&(x - &self.breakpoints[i]))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let b = &self.breakpoints_f64;
        let n = self.pieces.len();
        if !(b[0]..=b[n]).contains(&x) {
            return 0.0;
        }
        let i = b.partition_point(|&v| v <= x).saturating_sub(1).min(n - 1);
        let y = x - b[i];
        self.pieces_f64[i].iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    pub fn derivative(&self) -> PiecewisePoly {
        PiecewisePoly::new(self.breakpoints.clone(), self.pieces.iter().map(Poly::derivative).collect())
            .expect("same breakpoints")
    }

    pub fn integral(&self) -> Scalar {
        self.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(p, w)| p.integral().eval(&(&w[1] - &w[0])))
            .fold(Scalar::zero(), |a, b| a + b)
    }

    /// Largest jump of any derivative of order `<= k` across interior breakpoints and
    /// at the ends of the support (where the outside is 0).
    pub fn max_jump(&self, k: usize) -> Scalar {
        let mut cur = self.clone();
        let mut worst = Scalar::zero();
        for _ in 0..=k {
            let n = cur.pieces.len();
            let mut left_vals = vec![Scalar::zero()];
            let mut right_vals = Vec::new();
            for (i, p) in cur.pieces.iter().enumerate() {
                right_vals.push(p.eval(&Scalar::zero()));
                left_vals.push(p.eval(&(&cur.breakpoints[i + 1] - &cur.breakpoints[i])));
            }
            right_vals.push(Scalar::zero());
            for i in 0..=n {
                let j = (&left_vals[i] - &right_vals[i]).abs();
                if j > worst {
                    worst = j;
                }
            }
            cur = cur.derivative();
        }
        worst
    }

    /// Certified enclosure of `sup |f|` over the whole line.
    pub fn sup_abs(&self, method: SupMethod) -> SupEnclosure {
        let mut cache: HashMap<Vec<Scalar>, SupEnclosure> = HashMap::new();
        let mut best = SupEnclosure { lower: Scalar::zero(), upper: Scalar::zero() };
        for (p, w) in self.pieces.iter().zip(self.breakpoints.windows(2)) {
            let len = &w[1] - &w[0];
            // |p| and |-p| have the same sup; key on the sign-normalized coefficients.
            let key: Vec<Scalar> = if p.leading().is_negative() {
                p.coeffs().iter().map(|c| -c).collect()
            } else {
                p.coeffs().to_vec()
            };
            let mut key_full = key;
            key_full.push(len.clone());
            let e = cache
                .entry(key_full)
                .or_insert_with(|| sup_abs(p, &Scalar::zero(), &len, method))
                .clone();
            if e.lower > best.lower {
                best.lower = e.lower;
            }
            if e.upper > best.upper {
                best.upper = e.upper;
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutoffParams {
    pub n: u32,
    pub d: Scalar,
    pub r: Scalar,
    /// Number of boxcar factors per unit of `N` (3 by default).
    pub factor: u32,
}

impl CutoffParams {
    pub fn new(n: u32, d: Scalar, r: Scalar) -> Self {
        CutoffParams { n, d, r, factor: 3 }
    }

    pub fn factors(&self) -> u32 {
        self.factor * self.n
    }

    /// Boxcar width `d / (2 · factor · N)`; `d / (6N)` for the default factor.
    pub fn width(&self) -> Scalar {
        &self.d / int(2 * i64::from(self.factors()))
    }

    /// Highest derivative order that exists classically everywhere.
    pub fn max_classical_order(&self) -> u32 {
        self.factors() - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cutoff {
    pub params: CutoffParams,
    pub psi: PiecewisePoly,
}

pub fn cutoff_build(params: CutoffParams) -> Result<Cutoff> {
    if params.n == 0 || params.factor == 0 {
        return Err(Error::InvalidArgument("N and the factor must be >= 1".into()));
    }
    if !params.d.is_positive() || !params.r.is_positive() {
        return Err(Error::InvalidArgument("d and r must be positive".into()));
    }
    let k = params.factors();
    let w = params.width();
    let half_span = &w * int(i64::from(k)) / int(2);
    let big_r = &params.r + &params.d / int(2);

    // Truncated powers c_i (x - s)_+^K; left cluster with +, right with -.
    let norm = Scalar::one() / (Scalar::from_integer(factorial(k)) * num_traits::pow(w.clone(), k as usize));
    let mut knots: Vec<(Scalar, Scalar)> = Vec::with_capacity(2 * k as usize + 2);
    for (center, outer_sign) in [(-big_r.clone(), 1i64), (big_r.clone(), -1i64)] {
        for i in 0..=k {
            let s = &center - &half_span + &w * int(i64::from(i));
            let sign = if i % 2 == 0 { outer_sign } else { -outer_sign };
            let c = &norm * Scalar::from_integer(binomial(k, i) * BigInt::from(sign));
            knots.push((s, c));
        }
    }
    let breakpoints: Vec<Scalar> = knots.iter().map(|(s, _)| s.clone()).collect();
    let mut pieces = Vec::with_capacity(breakpoints.len() - 1);
    for j in 0..breakpoints.len() - 1 {
        let bj = &breakpoints[j];
        let mut piece = Poly::zero();
        for (s, c) in knots.iter().filter(|(s, _)| s <= bj) {
            piece = piece.add(&Poly::binomial_power(&(s - bj), k).scale(c));
        }
        pieces.push(piece);
    }
    let psi = PiecewisePoly::new(breakpoints, pieces)?;
    Ok(Cutoff { params, psi })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeSup {
    pub k: u32,
    pub lower: f64,
    pub upper: f64,
    /// `(upper · (d/N)^k)^{1/k}`.
    pub rate: f64,
    /// `(12 N / d)^k`.
    pub ceiling: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutoffBoundReport {
    pub n: u32,
    pub sups: Vec<DerivativeSup>,
    pub c_emp: f64,
    pub c_budget: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConfig {
    pub c_budget: f64,
    pub method: SupMethod,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig { c_budget: 12.0, method: SupMethod::RootIsolation }
    }
}

/// `sup |D^k Ψ_N|` for `k = 0..=k_max` (certified) and `C_emp = max_{k>=1} (sup · (d/N)^k)^{1/k}`.
/// Passes iff `C_emp <= c_budget` and every `sup |D^k Ψ_N| <= (12N/d)^k`.
pub fn cutoff_bound_check(cutoff: &Cutoff, k_max: u32, cfg: &BoundConfig) -> Result<CutoffBoundReport> {
    let p = &cutoff.params;
    if k_max > p.max_classical_order() {
        return Err(Error::InvalidArgument(format!(
            "kMax = {k_max} exceeds {}: Psi_N is only C^{} (derivative of order {} jumps)",
            p.max_classical_order(),
            p.max_classical_order(),
            p.factors()
        )));
    }
    let d = to_f64(&p.d);
    let n = f64::from(p.n);
    let mut sups = Vec::new();
    let mut cur = cutoff.psi.clone();
    let mut c_emp: f64 = 0.0;
    let mut within_ceiling = true;
    for k in 0..=k_max {
        let e = cur.sup_abs(cfg.method);
        let upper = e.upper_f64();
        let kf = f64::from(k);
        let ceiling = (12.0 * n / d).powf(kf);
        let rate = if k == 0 { 0.0 } else { (upper * (d / n).powf(kf)).powf(1.0 / kf) };
        if k >= 1 {
            c_emp = c_emp.max(rate);
            within_ceiling &= upper <= ceiling;
        }
        sups.push(DerivativeSup { k, lower: e.lower_f64(), upper, rate, ceiling });
        cur = cur.derivative();
    }
    Ok(CutoffBoundReport { n: p.n, sups, c_emp, c_budget: cfg.c_budget, pass: c_emp <= cfg.c_budget && within_ceiling })
}
