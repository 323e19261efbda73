//! Bracket evaluation by sweeping crossings in a planned order.
//!
//! After each crossing the processed part of every state is a set of arcs
//! pairing up the open ends on the boundary; states with the same pairing are
//! merged, so the work is governed by the number of planar pairings of the
//! boundary rather than by `2^crossings`.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{circle_power, Budget, JonesError};
use crate::diagram::{PDCode, SweepEvent, SweepPlan};
use crate::poly::LaurentPoly;

/// Below this many states a step runs on one thread.
const PARALLEL_THRESHOLD: usize = 512;

trait Coef: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += x * k`; false on overflow.
    fn add_mul(&mut self, x: &Self, k: i64) -> bool;
    fn into_big(self) -> BigInt;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn add_mul(&mut self, x: &Self, k: i64) -> bool {
        match x.checked_mul(k as i128).and_then(|y| self.checked_add(y)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }

    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        BigInt::from(1)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_mul(&mut self, x: &Self, k: i64) -> bool {
        match k {
            1 => *self += x,
            -1 => *self -= x,
            _ => *self += x * k,
        }
        true
    }

    fn into_big(self) -> BigInt {
        self
    }
}

/// Dense polynomial in `A` whose exponents share one parity: coefficient `i`
/// belongs to `A^(lo + 2i)`.
#[derive(Clone)]
struct Dense<C> {
    lo: i64,
    c: Vec<C>,
}

impl<C: Coef> Dense<C> {
    fn empty() -> Self {
        Dense { lo: 0, c: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Coef::is_zero)
    }

    /// `self += src * A^shift * factor`, with `factor` given as sparse
    /// `(exponent, coefficient)` terms of even exponent.
    fn add_scaled(&mut self, src: &Dense<C>, shift: i64, factor: &[(i64, i64)]) -> bool {
        if src.c.is_empty() {
            return true;
        }
        let f_lo = factor.first().unwrap().0;
        let f_hi = factor.last().unwrap().0;
        let lo = src.lo + shift + f_lo;
        let hi = src.lo + shift + 2 * (src.c.len() as i64 - 1) + f_hi;
        if self.c.is_empty() {
            self.lo = lo;
            self.c = vec![C::zero(); ((hi - lo) / 2 + 1) as usize];
        } else {
            debug_assert_eq!((lo - self.lo).rem_euclid(2), 0, "exponent parity mismatch");
            if lo < self.lo {
                let extra = ((self.lo - lo) / 2) as usize;
                let mut c = vec![C::zero(); extra];
                c.append(&mut self.c);
                self.c = c;
                self.lo = lo;
            }
            let top = self.lo + 2 * (self.c.len() as i64 - 1);
            if hi > top {
                let extra = ((hi - top) / 2) as usize;
                self.c.extend(std::iter::repeat_with(C::zero).take(extra));
            }
        }
        for &(fe, fk) in factor {
            let base = ((src.lo + shift + fe - self.lo) / 2) as usize;
            for (i, x) in src.c.iter().enumerate() {
                if !x.is_zero() && !self.c[base + i].add_mul(x, fk) {
                    return false;
                }
            }
        }
        true
    }

    fn into_poly(self) -> LaurentPoly {
        let lo = self.lo;
        LaurentPoly::from_terms(
            self.c
                .into_iter()
                .enumerate()
                .map(|(i, x)| (lo + 2 * i as i64, x.into_big())),
        )
    }
}

/// How a leg of the current crossing meets the swept region.
#[derive(Clone, Copy)]
enum Leg {
    /// Arc already open on the boundary, in this slot.
    Old(usize),
    /// Arc first reached here; gets this new slot.
    New(usize),
    /// Arc returning to the same crossing at this other position.
    Loop(usize),
}

struct Step {
    legs: [Leg; 4],
    /// New slot index of each old slot, or `None` if the slot is consumed.
    keep: Vec<Option<usize>>,
    width: usize,
}

/// Where a path through the crossing currently is.
enum At {
    /// Entering the crossing at a position; the smoothing is taken next.
    Enter(usize),
    /// Leaving through a position onto its arc.
    Leave(usize),
}

impl Step {
    /// New pairing and number of closed loops after smoothing with `pairs`.
    fn apply(&self, old: &[u8], pairs: &[usize; 4], out: &mut Vec<u8>) -> usize {
        out.clear();
        out.resize(self.width, u8::MAX);
        let mut seen = [false; 4];
        // follows a path until it ends on a surviving slot or a new arc
        let finish = |mut at: At, seen: &mut [bool; 4]| -> usize {
            loop {
                match at {
                    At::Enter(p) => {
                        seen[p] = true;
                        let q = pairs[p];
                        seen[q] = true;
                        at = At::Leave(q);
                    }
                    At::Leave(q) => match self.legs[q] {
                        Leg::New(s) => return s,
                        Leg::Loop(r) => at = At::Enter(r),
                        Leg::Old(s) => {
                            let t = old[s] as usize;
                            match self.keep[t] {
                                Some(u) => return u,
                                None => at = At::Enter(self.position_of_slot(t)),
                            }
                        }
                    },
                }
            }
        };
        for (s, k) in self.keep.iter().enumerate() {
            let Some(u) = *k else { continue };
            if out[u] != u8::MAX {
                continue;
            }
            let t = old[s] as usize;
            let end = match self.keep[t] {
                Some(v) => v,
                None => finish(At::Enter(self.position_of_slot(t)), &mut seen),
            };
            out[u] = end as u8;
            out[end] = u as u8;
        }
        for p in 0..4 {
            if let Leg::New(s) = self.legs[p] {
                if out[s] == u8::MAX {
                    let end = finish(At::Enter(p), &mut seen);
                    out[s] = end as u8;
                    out[end] = s as u8;
                }
            }
        }
        // whatever was not reached closes up into loops
        let mut loops = 0;
        for p in 0..4 {
            if seen[p] {
                continue;
            }
            loops += 1;
            let mut at = p;
            loop {
                seen[at] = true;
                let q = pairs[at];
                seen[q] = true;
                at = match self.legs[q] {
                    Leg::Loop(r) => r,
                    Leg::Old(s) => self.position_of_slot(old[s] as usize),
                    Leg::New(_) => unreachable!("new arcs always end on the boundary"),
                };
                if at == p {
                    break;
                }
            }
        }
        loops
    }

    fn position_of_slot(&self, slot: usize) -> usize {
        self.legs
            .iter()
            .position(|l| matches!(l, Leg::Old(s) if *s == slot))
            .expect("consumed slot belongs to this crossing")
    }
}

/// Arc label -> frontier slot, plus the per-crossing transition data.
fn build_step(d: &PDCode, crossing: usize, frontier: &mut Vec<u32>) -> Step {
    let x = d.crossings()[crossing];
    let mut legs = [Leg::New(0); 4];
    let mut consumed = vec![false; frontier.len()];
    for p in 0..4 {
        if let Some(r) = (0..4).find(|&r| r != p && x[r] == x[p]) {
            legs[p] = Leg::Loop(r);
        } else if let Some(s) = frontier.iter().position(|&a| a == x[p]) {
            legs[p] = Leg::Old(s);
            consumed[s] = true;
        }
    }
    let mut keep = Vec::with_capacity(frontier.len());
    let mut next: Vec<u32> = Vec::new();
    for (s, &a) in frontier.iter().enumerate() {
        if consumed[s] {
            keep.push(None);
        } else {
            keep.push(Some(next.len()));
            next.push(a);
        }
    }
    for p in 0..4 {
        if let Leg::New(_) = legs[p] {
            legs[p] = Leg::New(next.len());
            next.push(x[p]);
        }
    }
    let width = next.len();
    *frontier = next;
    Step { legs, keep, width }
}

fn pairing(s: [(usize, usize); 2]) -> [usize; 4] {
    let mut p = [0; 4];
    for (a, b) in s {
        p[a] = b;
        p[b] = a;
    }
    p
}

/// `(-A^2 - A^-2)^k` as sparse small-integer terms.
fn circle_factor(k: usize) -> Vec<(i64, i64)> {
    circle_power(k)
        .terms()
        .iter()
        .map(|(e, c)| (*e, i64::try_from(c).expect("small binomial")))
        .collect()
}

type States<C> = FxHashMap<Vec<u8>, Dense<C>>;

struct Overflow;

fn run<C: Coef>(d: &PDCode, plan: &SweepPlan, budget: &Budget, start: Instant) -> Result<Result<LaurentPoly, Overflow>, JonesError> {
    let factors: Vec<Vec<(i64, i64)>> = (0..=4).map(circle_factor).collect();
    let smoothings = [(1i64, pairing([(0, 1), (2, 3)])), (-1i64, pairing([(0, 3), (1, 2)]))];
    let mut frontier: Vec<u32> = Vec::new();
    let mut states: States<C> = FxHashMap::default();
    states.insert(Vec::new(), Dense { lo: 0, c: vec![C::one()] });

    for ev in &plan.events {
        let c = match *ev {
            SweepEvent::Crossing(c) => c,
            // crossing-free circles are accounted for at the end
            SweepEvent::Birth(_) | SweepEvent::Death(_) => continue,
        };
        budget.check_deadline(start)?;
        let step = build_step(d, c, &mut frontier);
        if step.width > budget.max_width {
            return Err(JonesError::WidthExceeded {
                width: step.width,
                limit: budget.max_width,
            });
        }
        let overflow = AtomicBool::new(false);
        let transition = |mut acc: States<C>, (key, poly): (&Vec<u8>, &Dense<C>)| {
            let mut buf = Vec::with_capacity(step.width);
            for (shift, pairs) in &smoothings {
                let loops = step.apply(key, pairs, &mut buf);
                let entry = acc.entry(buf.clone()).or_insert_with(Dense::empty);
                if !entry.add_scaled(poly, *shift, &factors[loops]) {
                    overflow.store(true, Ordering::Relaxed);
                }
            }
            acc
        };
        let merge = |a: States<C>, b: States<C>| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            for (k, v) in small {
                let e = big.entry(k).or_insert_with(Dense::empty);
                if !e.add_scaled(&v, 0, &factors[0]) {
                    overflow.store(true, Ordering::Relaxed);
                }
            }
            big
        };
        let next: States<C> = if states.len() < PARALLEL_THRESHOLD {
            states.iter().fold(FxHashMap::default(), transition)
        } else {
            let items: Vec<(&Vec<u8>, &Dense<C>)> = states.iter().collect();
            items
                .par_chunks(64)
                .fold(FxHashMap::default, |acc, chunk| chunk.iter().copied().fold(acc, &transition))
                .reduce(FxHashMap::default, merge)
        };
        if overflow.load(Ordering::Relaxed) {
            return Ok(Err(Overflow));
        }
        states = next;
        states.retain(|_, v| !v.is_zero());
        if states.len() > budget.max_states {
            return Err(JonesError::StateLimit {
                states: states.len(),
                limit: budget.max_states,
            });
        }
    }
    debug_assert!(frontier.is_empty());
    let value = states.remove(&Vec::new()).map_or_else(LaurentPoly::zero, Dense::into_poly);
    Ok(Ok(&value * &circle_power(d.extra_circles())))
}

/// Bracket of `d` by sweeping along `plan`. Uses machine integers and redoes
/// the sweep with big integers if a coefficient overflows.
pub fn sweep_bracket(d: &PDCode, plan: &SweepPlan, budget: &Budget) -> Result<LaurentPoly, JonesError> {
    plan.validate(d).map_err(JonesError::InvalidPlan)?;
    if plan.max_width > budget.max_width {
        return Err(JonesError::WidthExceeded {
            width: plan.max_width,
            limit: budget.max_width,
        });
    }
    let start = Instant::now();
    match run::<i128>(d, plan, budget, start)? {
        Ok(v) => Ok(v),
        Err(Overflow) => match run::<BigInt>(d, plan, budget, start)? {
            Ok(v) => Ok(v),
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}
