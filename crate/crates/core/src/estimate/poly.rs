//! Dense univariate polynomials over exact rationals, with Sturm sequences and a
//! certified sup-norm on closed intervals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::{int, to_f64, to_f64_up, Scalar};

/// `c[0] + c[1] x + ... `; no trailing zeros, zero polynomial is `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn nth_derivative(&self, k: usize) -> Poly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Poly {
        let mut v = vec![Scalar::zero()];
        v.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / int(i as i64 + 1)));
        Poly::new(v)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    /// `p(x + h)`.
    pub fn shift(&self, h: &Scalar) -> Poly {
        // Horner in the ring of polynomials: p(x + h) = (...(c_n (x+h) + c_{n-1})(x+h) ...).
        let xh = Poly::new(vec![h.clone(), Scalar::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(&xh).add(&Poly::constant(c.clone())))
    }

    /// `(x - s)^n` expanded.
    pub fn binomial_power(s: &Scalar, n: u32) -> Poly {
        let base = Poly::new(vec![-s.clone(), Scalar::one()]);
        (0..n).fold(Poly::constant(Scalar::one()), |acc, _| acc.mul(&base))
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &f * c;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Scalar::one() / self.leading()))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, which has the same roots with multiplicity one.
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps signs and tames coefficient growth.
            let lead_abs = r.leading().abs();
            seq.push(r.scale(&(-Scalar::one() / lead_abs)));
        }
        seq
    }

    fn truncate_to_string(&self) -> String {
        self.coeffs.iter().enumerate().map(|(i, c)| format!("{c}*x^{i}")).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.truncate_to_string())
    }
}

/// Sign changes in the Sturm sequence at `x`, zeros dropped.
pub fn sign_variations(seq: &[Poly], x: &Scalar) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of a square-free polynomial in `(a, b]`.
pub fn count_roots(seq: &[Poly], a: &Scalar, b: &Scalar) -> usize {
    sign_variations(seq, a).saturating_sub(sign_variations(seq, b))
}

/// Rigorous bound on `|q|` over `[m - h, m + h]` from the Taylor expansion at `m`.
pub fn taylor_bound(q: &Poly, m: &Scalar, h: &Scalar) -> Scalar {
    let shifted = q.shift(m);
    let mut hp = Scalar::one();
    let mut acc = Scalar::zero();
    for c in shifted.coeffs() {
        acc += c.abs() * &hp;
        hp *= h;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupMethod {
    /// Isolate the roots of `q'` with a Sturm sequence, then bound `|q|` near each.
    RootIsolation,
    /// Branch and bound on dyadic subintervals with [`taylor_bound`], no root finding.
    DyadicTaylor,
}

impl std::str::FromStr for SupMethod {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "roots" => Ok(SupMethod::RootIsolation),
            "dyadic" => Ok(SupMethod::DyadicTaylor),
            other => Err(crate::error::Error::InvalidArgument(format!("unknown sup method `{other}` (roots | dyadic)"))),
        }
    }
}

/// Certified enclosure `lower <= sup_{[a,b]} |q| <= upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupEnclosure {
    pub lower: Scalar,
    pub upper: Scalar,
}

impl SupEnclosure {
    pub fn lower_f64(&self) -> f64 {
        to_f64(&self.lower)
    }

    pub fn upper_f64(&self) -> f64 {
        to_f64_up(&self.upper)
    }
}

/// Relative tightness the enclosure is refined to.
pub const SUP_REL_TOL: (i64, i64) = (1, 1_000_000_000_000);

fn tol_ok(lower: &Scalar, upper: &Scalar) -> bool {
    let rel = Scalar::new(BigInt::from(SUP_REL_TOL.0), BigInt::from(SUP_REL_TOL.1));
    upper - lower <= lower * rel || upper == lower
}

pub fn sup_abs(q: &Poly, a: &Scalar, b: &Scalar, method: SupMethod) -> SupEnclosure {
    assert!(a <= b, "empty interval");
    let ends = q.eval(a).abs().max(q.eval(b).abs());
    if q.degree().unwrap_or(0) <= 1 || a == b {
        return SupEnclosure { lower: ends.clone(), upper: ends };
    }
    match method {
        SupMethod::RootIsolation => sup_by_roots(q, a, b, ends),
        SupMethod::DyadicTaylor => sup_by_dyadic(q, a, b, ends),
    }
}

fn sup_by_roots(q: &Poly, a: &Scalar, b: &Scalar, ends: Scalar) -> SupEnclosure {
    let dq = q.derivative().squarefree();
    let seq = dq.sturm();
    let two = int(2);
    let mut lower = ends.clone();
    let mut upper = ends;
    // Intervals (lo, hi] each holding >= 1 root of q'.
    let mut stack = vec![(a.clone(), b.clone())];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    for (mut lo, mut hi) in isolated {
        loop {
            let mid = (&lo + &hi) / &two;
            let h = (&hi - &lo) / &two;
            let at_mid = q.eval(&mid).abs();
            if at_mid > lower {
                lower = at_mid;
            }
            if dq.eval(&hi).is_zero() {
                let v = q.eval(&hi).abs();
                if v > lower {
                    lower = v.clone();
                }
                if v > upper {
                    upper = v;
                }
                break;
            }
            let bound = taylor_bound(q, &mid, &h);
            if tol_ok(&lower, &bound) || bound <= lower {
                if bound > upper {
                    upper = bound;
                }
                break;
            }
            if count_roots(&seq, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    if upper < lower {
        upper = lower.clone();
    }
    SupEnclosure { lower, upper }
}

fn sup_by_dyadic(q: &Poly, a: &Scalar, b: &Scalar, ends: Scalar) -> SupEnclosure {
    let two = int(2);
    let mut lower = ends;
    let mut upper = Scalar::zero();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let mid = (&lo + &hi) / &two;
        let h = (&hi - &lo) / &two;
        let at_mid = q.eval(&mid).abs();
        if at_mid > lower {
            lower = at_mid;
        }
        let bound = taylor_bound(q, &mid, &h);
        if bound <= lower || tol_ok(&lower, &bound) {
            if bound > upper {
                upper = bound;
            }
            continue;
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    if upper < lower {
        upper = lower.clone();
    }
    SupEnclosure { lower, upper }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.eval(&int(2)), int(17));
        assert_eq!(a.derivative(), p(&[2, 6]));
        assert_eq!(a.integral().derivative(), a);
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert_eq!(q.mul(&p(&[1, 1])).add(&r), a);
        assert_eq!(a.shift(&int(1)), p(&[6, 8, 3]));
        assert_eq!(Poly::binomial_power(&int(1), 2), p(&[1, -2, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        // (x-1)(x-2)(x-3)
        let c = p(&[-6, 11, -6, 1]);
        let s = c.sturm();
        assert_eq!(count_roots(&s, &int(0), &int(4)), 3);
        assert_eq!(count_roots(&s, &ratio(3, 2), &ratio(5, 2)), 1);
        // endpoint root counts in (a, b]
        assert_eq!(count_roots(&s, &int(0), &int(1)), 1);
        assert_eq!(count_roots(&s, &int(1), &ratio(3, 2)), 0);
    }

    #[test]
    fn squarefree_drops_multiplicity() {
        let c = p(&[1, -2, 1]).mul(&p(&[-2, 1]));
        assert_eq!(c.squarefree(), p(&[2, -3, 1]));
    }

    #[test]
    fn sup_of_cubic_matches_critical_value() {
        // q = x^3 - 3x on [-2, 2]: |q| <= 2, attained at x = ±1 and ±2.
        let q = p(&[0, -3, 0, 1]);
        for m in [SupMethod::RootIsolation, SupMethod::DyadicTaylor] {
            let e = sup_abs(&q, &int(-2), &int(2), m);
            assert_eq!(e.lower, int(2));
            assert!(e.upper >= int(2) && e.upper <= ratio(2_000_001, 1_000_000));
        }
        // Irrational maximum: q = x - x^3 on [0,1], max 2/(3√3).
        let q = p(&[0, 1, 0, -1]);
        let truth = 2.0 / (3.0 * 3f64.sqrt());
        for m in [SupMethod::RootIsolation, SupMethod::DyadicTaylor] {
            let e = sup_abs(&q, &int(0), &int(1), m);
            assert!(e.lower_f64() <= truth + 1e-15 && e.upper_f64() >= truth - 1e-15);
            assert!((e.upper_f64() - truth).abs() < 1e-9);
        }
    }
}
