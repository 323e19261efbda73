//! Kauffman bracket and colored Jones polynomial.
//!
//! The bracket is normalized so the empty diagram is 1 and each crossing-free
//! circle contributes `δ = -A^2 - A^-2`; a crossing resolves as
//! `A <A-smoothing> + A^-1 <B-smoothing>`.
//!
//! The `n`-colored invariant decorates every component with the Jones-Wenzl
//! idempotent `f^(n)`. Its closure is the Chebyshev polynomial `S_n` of the
//! core, so the value is an integer combination of brackets of parallel
//! cables.

mod brute;
mod sweep;

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

pub use brute::brute_force_bracket;
pub use sweep::sweep_bracket;

use crate::diagram::{plan_cable_sweep, plan_sweep, PDCode};
use crate::poly::{LaurentPoly, PolyError, QPresentation};
use crate::quantum::{delta, gamma};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesError {
    #[error("{crossings} crossings exceed the brute-force limit of {limit}")]
    TooManyCrossings { crossings: usize, limit: usize },
    #[error("sweep width {width} exceeds the limit of {limit}")]
    WidthExceeded { width: usize, limit: usize },
    #[error("{states} sweep states exceed the limit of {limit}")]
    StateLimit { states: usize, limit: usize },
    #[error("time limit of {0:?} exceeded")]
    Timeout(Duration),
    #[error("invalid sweep plan: {0}")]
    InvalidPlan(String),
    #[error("color must be at least {min}, got {got}")]
    Color { got: u32, min: u32 },
    #[error("invariant breach: {0}")]
    Internal(String),
}

impl JonesError {
    /// True for errors caused by resource limits rather than bad input or bugs.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            JonesError::TooManyCrossings { .. }
                | JonesError::WidthExceeded { .. }
                | JonesError::StateLimit { .. }
                | JonesError::Timeout(_)
        )
    }
}

impl From<PolyError> for JonesError {
    fn from(e: PolyError) -> Self {
        JonesError::Internal(e.to_string())
    }
}

/// Resource limits for bracket evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest boundary width a sweep may reach.
    pub max_width: usize,
    /// Largest diagram the state-sum oracle accepts.
    pub max_brute_crossings: usize,
    /// Largest number of simultaneous sweep states.
    pub max_states: usize,
    /// Wall-clock limit per top-level computation.
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_width: 28,
            max_brute_crossings: 20,
            max_states: 4_000_000,
            time_limit: None,
        }
    }
}

impl Budget {
    /// Defaults overridden by `SKEIN_MAX_WIDTH`, `SKEIN_MAX_CROSSINGS`,
    /// `SKEIN_MAX_STATES` and `SKEIN_TIME_LIMIT_SECS` when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        let read = |name: &str| std::env::var(name).ok().and_then(|v| v.trim().parse::<u64>().ok()).filter(|&v| v > 0);
        if let Some(v) = read("SKEIN_MAX_WIDTH") {
            b.max_width = v as usize;
        }
        if let Some(v) = read("SKEIN_MAX_CROSSINGS") {
            b.max_brute_crossings = v as usize;
        }
        if let Some(v) = read("SKEIN_MAX_STATES") {
            b.max_states = v as usize;
        }
        if let Some(v) = read("SKEIN_TIME_LIMIT_SECS") {
            b.time_limit = Some(Duration::from_secs(v));
        }
        b
    }

    pub(crate) fn check_deadline(&self, start: Instant) -> Result<(), JonesError> {
        match self.time_limit {
            Some(t) if start.elapsed() > t => Err(JonesError::Timeout(t)),
            _ => Ok(()),
        }
    }
}

/// `δ^k`.
pub(crate) fn circle_power(k: usize) -> LaurentPoly {
    delta(1).unwrap().pow(k as u32)
}

/// Bracket via a sweep planned for `d`.
pub fn bracket(d: &PDCode, budget: &Budget) -> Result<LaurentPoly, JonesError> {
    let value = sweep_bracket(d, &plan_sweep(d), budget)?;
    check_exponents(&value)?;
    Ok(value)
}

/// Bracket exponents of a diagram all agree mod 4.
fn check_exponents(p: &LaurentPoly) -> Result<(), JonesError> {
    let Some((first, _)) = p.terms().first() else {
        return Ok(());
    };
    match p.terms().iter().find(|(e, _)| (e - first).rem_euclid(4) != 0) {
        Some((e, _)) => Err(JonesError::Internal(format!("bracket mixes A^{first} and A^{e} modulo 4"))),
        None => Ok(()),
    }
}

/// Classical Jones polynomial `(-A^3)^-w <D> / δ` in `A`.
pub fn jones_polynomial(d: &PDCode, budget: &Budget) -> Result<LaurentPoly, JonesError> {
    Ok(colored_reduced(d, 2, budget)?.reduced)
}

/// Coefficients of `S_n(x) = x S_{n-1} - S_{n-2}`: entry `m` is the
/// coefficient of `x^m` (zero unless `m ≡ n mod 2`).
pub fn chebyshev_coefficients(n: u32) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![];
    let mut cur: Vec<BigInt> = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(0); cur.len() + 1];
        for (m, c) in cur.iter().enumerate() {
            next[m + 1] += c;
        }
        for (m, c) in prev.iter().enumerate() {
            next[m] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Framing correction `γ(n,n,0)^-w = ((-1)^n A^(n^2+2n))^-w`.
pub fn framing_correction(n: u32, writhe: i64) -> LaurentPoly {
    gamma(n as i64, n as i64, 0)
        .expect("(n, n, 0) is admissible")
        .monomial_pow(-writhe)
        .expect("a monomial is invertible")
}

/// Memo of cable brackets keyed by the multiplicity of each component.
#[derive(Debug, Default)]
pub struct CableBrackets {
    cache: Mutex<HashMap<Vec<u32>, LaurentPoly>>,
}

impl CableBrackets {
    pub fn new() -> Self {
        Self::default()
    }

    /// Bracket of the cable with `mult[i]` copies of crossing component `i`;
    /// crossing-free circles are dropped.
    pub fn get(&self, d: &PDCode, mult: &[u32], budget: &Budget) -> Result<LaurentPoly, JonesError> {
        if let Some(v) = self.cache.lock().unwrap().get(mult) {
            return Ok(v.clone());
        }
        let (cabled, plan, _) = plan_cable_sweep(d, mult, 0);
        let value = sweep_bracket(&cabled, &plan, budget)?;
        check_exponents(&value)?;
        self.cache.lock().unwrap().insert(mult.to_vec(), value.clone());
        Ok(value)
    }

    /// Computes every missing pattern in parallel.
    pub fn prefetch(&self, d: &PDCode, patterns: &[Vec<u32>], budget: &Budget) -> Result<(), JonesError> {
        let missing: Vec<&Vec<u32>> = {
            let cache = self.cache.lock().unwrap();
            patterns.iter().filter(|p| !cache.contains_key(*p)).collect()
        };
        missing.par_iter().try_for_each(|p| self.get(d, p, budget).map(|_| ()))
    }
}

/// All multiplicity patterns with nonzero Chebyshev weight, and that weight.
fn patterns(components: usize, n: u32) -> Vec<(Vec<u32>, BigInt)> {
    let cheb = chebyshev_coefficients(n);
    let terms: Vec<(u32, &BigInt)> = cheb
        .iter()
        .enumerate()
        .filter(|(_, c)| *c != &BigInt::from(0))
        .map(|(m, c)| (m as u32, c))
        .collect();
    let mut out: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), BigInt::from(1))];
    for _ in 0..components {
        let mut next = Vec::with_capacity(out.len() * terms.len());
        for (pat, w) in &out {
            for &(m, c) in &terms {
                let mut p = pat.clone();
                p.push(m);
                next.push((p, w * c));
            }
        }
        out = next;
    }
    out
}

/// Value of `d` with every component decorated by `f^(n)`, in the diagram's
/// blackboard framing (no writhe correction).
pub fn colored_skein_value(d: &PDCode, n: u32, budget: &Budget) -> Result<LaurentPoly, JonesError> {
    colored_skein_value_cached(d, n, budget, &CableBrackets::new())
}

pub fn colored_skein_value_cached(d: &PDCode, n: u32, budget: &Budget, cache: &CableBrackets) -> Result<LaurentPoly, JonesError> {
    let pats = patterns(d.crossing_components().len(), n);
    let keys: Vec<Vec<u32>> = pats.iter().map(|(p, _)| p.clone()).collect();
    cache.prefetch(d, &keys, budget)?;
    let mut sum = LaurentPoly::zero();
    for (p, w) in &pats {
        sum += &cache.get(d, p, budget)?.scale(w);
    }
    let circles = delta(n as i64).unwrap().pow(d.extra_circles() as u32);
    Ok(&sum * &circles)
}

/// `n`-colored unreduced invariant, framing corrected by the total writhe.
pub fn colored_unreduced(d: &PDCode, n: u32, budget: &Budget) -> Result<LaurentPoly, JonesError> {
    colored_unreduced_cached(d, n, budget, &CableBrackets::new())
}

pub fn colored_unreduced_cached(d: &PDCode, n: u32, budget: &Budget, cache: &CableBrackets) -> Result<LaurentPoly, JonesError> {
    let v = colored_skein_value_cached(d, n, budget, cache)?;
    Ok(&v * &framing_correction(n, d.writhe()))
}

/// Colored Jones polynomial `J_N`, `N = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredJonesResult {
    pub n: u32,
    pub unreduced: LaurentPoly,
    pub reduced: LaurentPoly,
    /// `reduced` in `q = A^-4`.
    pub q_form: QPresentation,
}

impl ColoredJonesResult {
    /// Polynomial index `N = n + 1`.
    pub fn big_n(&self) -> u32 {
        self.n + 1
    }
}

pub fn colored_reduced(d: &PDCode, big_n: u32, budget: &Budget) -> Result<ColoredJonesResult, JonesError> {
    colored_reduced_cached(d, big_n, budget, &CableBrackets::new())
}

pub fn colored_reduced_cached(d: &PDCode, big_n: u32, budget: &Budget, cache: &CableBrackets) -> Result<ColoredJonesResult, JonesError> {
    if big_n < 2 {
        return Err(JonesError::Color { got: big_n, min: 2 });
    }
    let n = big_n - 1;
    let unreduced = colored_unreduced_cached(d, n, budget, cache)?;
    let reduced = unreduced
        .exact_divide(&delta(n as i64).unwrap())
        .map_err(|_| JonesError::Internal(format!("unreduced value not divisible by Δ_{n}")))?;
    let q_form = reduced.to_q()?;
    Ok(ColoredJonesResult {
        n,
        unreduced,
        reduced,
        q_form,
    })
}

/// Colored Jones polynomials for several `N` sharing cable brackets.
pub fn colored_range(d: &PDCode, ns: &[u32], budget: &Budget) -> Result<BTreeMap<u32, ColoredJonesResult>, JonesError> {
    let cache = CableBrackets::new();
    ns.iter().map(|&n| Ok((n, colored_reduced_cached(d, n, budget, &cache)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, twist_closure};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn trefoil() -> PDCode {
        parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn small_brackets() {
        let b = Budget::default();
        assert_eq!(brute_force_bracket(&PDCode::circles(1), &b).unwrap(), p("-A^-2-A^2"));
        assert_eq!(brute_force_bracket(&PDCode::circles(0), &b).unwrap(), LaurentPoly::one());
        assert_eq!(bracket(&PDCode::circles(0), &b).unwrap(), LaurentPoly::one());
        let hopf = twist_closure(2);
        assert_eq!(brute_force_bracket(&hopf, &b).unwrap(), p("A^-6+A^-2+A^2+A^6"));
        assert_eq!(bracket(&hopf, &b).unwrap(), p("A^-6+A^-2+A^2+A^6"));
        // this diagram is the left-handed trefoil (writhe -3)
        let t = trefoil();
        assert_eq!(t.writhe(), -3);
        assert_eq!(brute_force_bracket(&t, &b).unwrap(), p("A^-7+A^-3+A-A^9"));
        assert_eq!(bracket(&t, &b).unwrap(), p("A^-7+A^-3+A-A^9"));
        assert_eq!(bracket(&t.mirror(), &b).unwrap(), p("-A^-9+A^-1+A^3+A^7"));
    }

    #[test]
    fn kink_factor() {
        let b = Budget::default();
        let k = PDCode::new(vec![[1, 1, 2, 2]], 0).unwrap();
        assert_eq!(k.writhe(), 1);
        assert_eq!(bracket(&k, &b).unwrap(), p("A^5+A"));
    }

    #[test]
    fn chebyshev() {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(chebyshev_coefficients(0), c(&[1]));
        assert_eq!(chebyshev_coefficients(1), c(&[0, 1]));
        assert_eq!(chebyshev_coefficients(2), c(&[-1, 0, 1]));
        assert_eq!(chebyshev_coefficients(3), c(&[0, -2, 0, 1]));
        for n in 0..6 {
            let d = circle_power(1);
            let s = chebyshev_coefficients(n)
                .iter()
                .enumerate()
                .fold(LaurentPoly::zero(), |acc, (m, c)| &acc + &d.pow(m as u32).scale(c));
            assert_eq!(s, delta(n as i64).unwrap());
        }
    }

    #[test]
    fn unknot_is_normalized() {
        let b = Budget::default();
        for big_n in 2..6 {
            let r = colored_reduced(&PDCode::circles(1), big_n, &b).unwrap();
            assert!(r.reduced.is_one());
            assert_eq!(r.unreduced, delta(big_n as i64 - 1).unwrap());
        }
        assert!(colored_reduced(&PDCode::circles(1), 1, &b).is_err());
    }

    #[test]
    fn trefoil_jones() {
        // left-handed trefoil: -q^-4 + q^-3 + q^-1
        let v = jones_polynomial(&trefoil(), &Budget::default()).unwrap();
        assert_eq!(v, p("-A^16+A^12+A^4"));
    }

    #[test]
    fn budgets_are_enforced() {
        let t = crate::diagram::cable(&trefoil(), 2);
        let tight = Budget {
            max_width: 2,
            ..Budget::default()
        };
        assert!(bracket(&t, &tight).unwrap_err().is_budget());
        let small = Budget {
            max_brute_crossings: 3,
            ..Budget::default()
        };
        assert!(brute_force_bracket(&t, &small).unwrap_err().is_budget());
    }
}
