//! Comparison of `q`-series up to a unit, and the stable head and tail of the
//! colored Jones polynomials.
//!
//! Two polynomials agree to order `n` (`P1 ≐_n P2`) when, after multiplying
//! each by the `±q^s` that makes its lowest term a positive constant, their
//! first `n` coefficients coincide. The tail is the series that `J_N` agrees
//! with to order `N` for all `N`; the head is the tail of `J_N(q^-1)`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::PDCode;
use crate::jones::{colored_reduced_cached, Budget, CableBrackets, JonesError};
use crate::poly::{LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TailError {
    #[error("the zero polynomial has no normalization")]
    Zero,
    #[error("J_{n} and J_{} disagree at coefficient {index}", n + 1)]
    Violation { n: u32, index: usize },
    #[error(transparent)]
    Jones(#[from] JonesError),
}

impl From<PolyError> for TailError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ZeroDegree => TailError::Zero,
            other => TailError::Jones(other.into()),
        }
    }
}

/// `sign * q^(shift_halves/2) * sum_i coeffs[i] q^(i*step_halves/2)` with
/// `coeffs[0] > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub sign: i8,
    pub shift_halves: i64,
    pub step_halves: i64,
    pub coeffs: Vec<BigInt>,
}

impl QSeries {
    /// Coefficients on a finer grid of `step` halves (`step` divides ours).
    fn refined(&self, step: i64) -> Vec<BigInt> {
        let k = (self.step_halves / step) as usize;
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        out
    }
}

/// Factors out `±q^s` so the lowest `q`-power has a positive coefficient.
pub fn normalize(p: &LaurentPoly) -> Result<QSeries, TailError> {
    let q = p.to_q()?;
    Ok(QSeries {
        sign: q.sign,
        shift_halves: q.min_exponent_halves(),
        step_halves: q.step_halves(),
        coeffs: q.coeffs,
    })
}

/// Outcome of an order-`n` comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DotEq {
    pub equal: bool,
    /// Index of the first differing coefficient within the first `n`.
    pub first_mismatch: Option<usize>,
}

/// `p1 ≐_n p2`. Coefficients past the end of a series count as zero.
pub fn dot_eq(p1: &LaurentPoly, p2: &LaurentPoly, n: usize) -> Result<DotEq, TailError> {
    let (a, b) = (normalize(p1)?, normalize(p2)?);
    Ok(dot_eq_series(&a, &b, n))
}

pub fn dot_eq_series(a: &QSeries, b: &QSeries, n: usize) -> DotEq {
    let step = a.step_halves.min(b.step_halves);
    let (x, y) = (a.refined(step), b.refined(step));
    let zero = BigInt::zero();
    let first_mismatch = (0..n).find(|&i| x.get(i).unwrap_or(&zero) != y.get(i).unwrap_or(&zero));
    DotEq {
        equal: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Which end of the colored Jones polynomials is examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Lowest powers of `q`.
    Tail,
    /// Highest powers of `q`, read downward.
    Head,
}

fn oriented(p: &LaurentPoly, side: Side) -> LaurentPoly {
    match side {
        Side::Tail => p.clone(),
        Side::Head => p.mirror(),
    }
}

fn jones_side(d: &PDCode, big_n: u32, side: Side, budget: &Budget, cache: &CableBrackets) -> Result<LaurentPoly, TailError> {
    Ok(oriented(&colored_reduced_cached(d, big_n, budget, cache)?.reduced, side))
}

/// First `k` coefficients of the tail (or head), read off `J_N` with
/// `N = max(k, 2)` once `J_N ≐_N J_(N+1)` has been confirmed. Series shorter
/// than `k` are returned whole.
pub fn extract(d: &PDCode, k: usize, side: Side, budget: &Budget) -> Result<Vec<BigInt>, TailError> {
    let cache = CableBrackets::new();
    let big_n = k.max(2) as u32;
    let j = jones_side(d, big_n, side, budget, &cache)?;
    let witness = jones_side(d, big_n + 1, side, budget, &cache)?;
    let cmp = dot_eq(&j, &witness, big_n as usize)?;
    if let Some(index) = cmp.first_mismatch {
        return Err(TailError::Violation { n: big_n, index });
    }
    let mut s = normalize(&j)?;
    s.coeffs.truncate(k);
    Ok(s.coeffs)
}

pub fn tail_extract(d: &PDCode, k: usize, budget: &Budget) -> Result<Vec<BigInt>, TailError> {
    extract(d, k, Side::Tail, budget)
}

pub fn head_extract(d: &PDCode, k: usize, budget: &Budget) -> Result<Vec<BigInt>, TailError> {
    extract(d, k, Side::Head, budget)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    /// Compares `J_n` with `J_(n+1)` to order `n`.
    pub n: u32,
    pub agrees: bool,
    pub first_mismatch: Option<usize>,
    /// Time spent computing `J_(n+1)` and comparing.
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizationReport {
    pub side: Side,
    pub max_n: u32,
    pub verdicts: Vec<Verdict>,
    /// False when a resource limit stopped the run early.
    pub complete: bool,
    pub error: Option<String>,
}

impl StabilizationReport {
    pub fn all_agree(&self) -> bool {
        self.complete && self.verdicts.iter().all(|v| v.agrees)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Verdicts `J_N ≐_N J_(N+1)` for `N = 2..max_n-1`. A budget failure ends
/// the run with a partial report; other errors are returned.
pub fn stabilization_check(d: &PDCode, max_n: u32, side: Side, budget: &Budget) -> Result<StabilizationReport, TailError> {
    assert!(max_n >= 3, "need at least one comparison");
    let cache = CableBrackets::new();
    let mut report = StabilizationReport {
        side,
        max_n,
        verdicts: Vec::new(),
        complete: true,
        error: None,
    };
    let mut prev = match jones_side(d, 2, side, budget, &cache) {
        Ok(p) => p,
        Err(TailError::Jones(e)) if e.is_budget() => {
            report.complete = false;
            report.error = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    for n in 2..max_n {
        let start = Instant::now();
        let next = match jones_side(d, n + 1, side, budget, &cache) {
            Ok(p) => p,
            Err(TailError::Jones(e)) if e.is_budget() => {
                report.complete = false;
                report.error = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        };
        let cmp = dot_eq(&prev, &next, n as usize)?;
        report.verdicts.push(Verdict {
            n,
            agrees: cmp.equal,
            first_mismatch: cmp.first_mismatch,
            seconds: start.elapsed().as_secs_f64(),
        });
        prev = next;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// A polynomial in `q` given as `(exponent, coefficient)` pairs.
    fn q(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (-4 * e, c)))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization_examples() {
        let s = normalize(&q(&[(-4, -1), (-3, 2), (0, -3), (1, 11)])).unwrap();
        assert_eq!(s.coeffs, ints(&[1, -2, 0, 0, 3, -11]));
        assert_eq!(s.sign, -1);
        assert_eq!(s.shift_halves, -8);
        assert_eq!(normalize(&LaurentPoly::one()).unwrap().coeffs, ints(&[1]));
        let s = normalize(&q(&[(7, 1)])).unwrap();
        assert_eq!((s.coeffs, s.shift_halves), (ints(&[1]), 14));
        assert_eq!(normalize(&LaurentPoly::zero()), Err(TailError::Zero));
    }

    #[test]
    fn dot_eq_examples() {
        let a = q(&[(-4, -1), (-3, 2), (0, -3), (1, 11)]);
        let b = q(&[(0, 1), (1, -2), (4, 3)]);
        assert!(dot_eq(&a, &b, 5).unwrap().equal);
        assert_eq!(dot_eq(&a, &b, 6).unwrap().first_mismatch, Some(5));
        assert!(dot_eq(&a, &a, 40).unwrap().equal);
    }

    #[test]
    fn mixed_steps_compare_on_the_finer_grid() {
        // 1 + q^(1/2) against 1 + q
        let a = p("1+A^-2");
        let b = p("1+A^-4");
        assert_eq!(normalize(&a).unwrap().step_halves, 1);
        assert_eq!(normalize(&b).unwrap().step_halves, 2);
        assert!(dot_eq(&a, &b, 1).unwrap().equal);
        assert_eq!(dot_eq(&a, &b, 3).unwrap().first_mismatch, Some(1));
    }
}
