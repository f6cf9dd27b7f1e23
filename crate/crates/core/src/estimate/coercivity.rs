//! Coercivity of `□_b + c` reduced to its scalar content.
//!
//! With `S = Σ‖L̄_j v‖²` and `W = ‖v‖²`, `((□_b + c)v, v) = S + cW`, so the best
//! constant in `|((□_b + c)v, v)| >= C (S + W)` is `min_{t∈[0,1]} |(1 - t) + t c|`,
//! the distance from 0 to the segment `[1, c]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoercivityStatus {
    Ok,
    /// `c` real and `<= 0`: the segment reaches 0.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoercivityResult {
    pub c: Complex64,
    pub constant: f64,
    /// Parameter of the closest point `(1 - t) + t c`.
    pub foot: f64,
    pub status: CoercivityStatus,
}

pub fn coercivity_constant(c: Complex64) -> Result<CoercivityResult> {
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(Error::InvalidArgument(format!("c must be finite, got {c}")));
    }
    if c.im == 0.0 && c.re <= 0.0 {
        let foot = 1.0 / (1.0 - c.re);
        return Ok(CoercivityResult { c, constant: 0.0, foot, status: CoercivityStatus::Degenerate });
    }
    let dir = c - Complex64::new(1.0, 0.0);
    let len2 = dir.norm_sqr();
    let foot = if len2 == 0.0 { 0.0 } else { ((1.0 - c.re) / len2).clamp(0.0, 1.0) };
    let constant = if foot == 0.0 {
        1.0
    } else if foot == 1.0 {
        c.norm()
    } else {
        // Perpendicular distance |Im(conj(1) * c)| / |c - 1| from the line through 1 and c.
        c.im.abs() / len2.sqrt()
    };
    Ok(CoercivityResult { c, constant, foot, status: CoercivityStatus::Ok })
}

/// `min |S + cW| / (S + W)` over `samples` evenly spaced points of `S + W = 1`.
pub fn sampled_coercivity(c: Complex64, samples: usize) -> f64 {
    let n = samples.max(2);
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            ((1.0 - t) + t * c.re).hypot(t * c.im)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Parses `"1"`, `"-1+i"`, `"0.5-2i"`, `"i"`, `"-3.5i"`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("cannot parse complex number `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not at the start and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_s, im_s) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_s.is_empty() { 0.0 } else { re_s.parse::<f64>().map_err(|_| bad())? };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_interior() {
        assert_eq!(coercivity_constant(Complex64::new(1.0, 0.0)).unwrap().constant, 1.0);
        assert_eq!(coercivity_constant(Complex64::new(3.0, 0.0)).unwrap().constant, 1.0);
        let r = coercivity_constant(Complex64::new(0.5, 0.0)).unwrap();
        assert_eq!((r.constant, r.foot), (0.5, 1.0));
        let i = coercivity_constant(Complex64::new(0.0, 1.0)).unwrap();
        assert!((i.constant - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((i.foot - 0.5).abs() < 1e-15);
    }

    #[test]
    fn degenerate_and_invalid() {
        for re in [0.0, -1.0, -1e-300, -7.5] {
            assert_eq!(coercivity_constant(Complex64::new(re, 0.0)).unwrap().status, CoercivityStatus::Degenerate);
        }
        assert!(coercivity_constant(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(coercivity_constant(Complex64::new(0.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn parses_complex_literals() {
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-1+i").unwrap(), Complex64::new(-1.0, 1.0));
        assert_eq!(parse_complex("0.5-2i").unwrap(), Complex64::new(0.5, -2.0));
        assert_eq!(parse_complex("-3.5i").unwrap(), Complex64::new(0.0, -3.5));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), Complex64::new(1e-3, 20.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
    }
}
