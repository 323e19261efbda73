//! Orders in which crossings are absorbed by a sweep evaluation.
//!
//! The boundary of the swept region cuts the diagram in a set of open arc
//! ends; its size (the width) controls the cost of evaluation.

use super::{cable_components, CableMap, PDCode};

/// Diagrams up to this many crossings are planned by exhaustive search.
const EXACT_PLAN_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepEvent {
    /// A crossing-free circle appears as a cup (two open ends).
    Birth(usize),
    /// ...and closes again as a cap.
    Death(usize),
    Crossing(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPlan {
    pub events: Vec<SweepEvent>,
    /// Boundary width after each event.
    pub widths: Vec<usize>,
    pub max_width: usize,
}

impl SweepPlan {
    pub fn crossing_order(&self) -> Vec<usize> {
        self.events
            .iter()
            .filter_map(|e| match e {
                SweepEvent::Crossing(c) => Some(*c),
                _ => None,
            })
            .collect()
    }

    fn from_order(d: &PDCode, order: &[usize]) -> Self {
        let mut events = Vec::new();
        let mut widths = Vec::new();
        for c in 0..d.extra_circles() {
            events.push(SweepEvent::Birth(c));
            widths.push(2);
            events.push(SweepEvent::Death(c));
            widths.push(0);
        }
        let ends = arc_ends(d);
        let mut done = vec![false; d.crossing_count()];
        let mut w = 0i64;
        for &c in order {
            w += width_delta(d, &ends, &done, c);
            done[c] = true;
            events.push(SweepEvent::Crossing(c));
            widths.push(w as usize);
        }
        let max_width = widths.iter().copied().max().unwrap_or(0);
        SweepPlan { events, widths, max_width }
    }

    /// Replays the plan against `d`: every crossing once, recorded widths
    /// correct, empty boundary at the end.
    pub fn validate(&self, d: &PDCode) -> Result<(), String> {
        if self.events.len() != self.widths.len() {
            return Err("event and width lists differ in length".into());
        }
        let ends = arc_ends(d);
        let mut done = vec![false; d.crossing_count()];
        let mut born = vec![false; d.extra_circles()];
        let mut dead = vec![false; d.extra_circles()];
        let mut w = 0i64;
        for (e, &rec) in self.events.iter().zip(&self.widths) {
            match *e {
                SweepEvent::Birth(c) => {
                    if c >= born.len() || born[c] {
                        return Err(format!("bad birth of circle {c}"));
                    }
                    born[c] = true;
                    w += 2;
                }
                SweepEvent::Death(c) => {
                    if c >= born.len() || !born[c] || dead[c] {
                        return Err(format!("bad death of circle {c}"));
                    }
                    dead[c] = true;
                    w -= 2;
                }
                SweepEvent::Crossing(c) => {
                    if c >= done.len() || done[c] {
                        return Err(format!("crossing {c} repeated or out of range"));
                    }
                    w += width_delta(d, &ends, &done, c);
                    done[c] = true;
                }
            }
            if w as usize != rec {
                return Err(format!("recorded width {rec} but replay gives {w}"));
            }
        }
        if !done.iter().all(|&x| x) || !dead.iter().all(|&x| x) {
            return Err("plan does not cover the diagram".into());
        }
        if w != 0 {
            return Err("boundary not empty at the end".into());
        }
        if self.max_width != self.widths.iter().copied().max().unwrap_or(0) {
            return Err("max width does not match".into());
        }
        Ok(())
    }
}

/// The two crossings at the ends of each arc (dense arc index).
fn arc_ends(d: &PDCode) -> Vec<[usize; 2]> {
    let mut ends = vec![[usize::MAX; 2]; d.arcs().len()];
    for (c, x) in d.crossings().iter().enumerate() {
        for &a in x {
            let e = &mut ends[d.arc_index(a)];
            if e[0] == usize::MAX {
                e[0] = c;
            } else {
                e[1] = c;
            }
        }
    }
    ends
}

/// Change of boundary width when crossing `c` is absorbed.
fn width_delta(d: &PDCode, ends: &[[usize; 2]], done: &[bool], c: usize) -> i64 {
    let mut delta = 0;
    for &a in &d.crossings()[c] {
        let [e0, e1] = ends[d.arc_index(a)];
        if e0 == e1 {
            continue;
        }
        let other = if e0 == c { e1 } else { e0 };
        delta += if done[other] { -1 } else { 1 };
    }
    delta
}

/// Smallest arc label at a crossing; the deterministic tie-breaker.
fn min_label(d: &PDCode, c: usize) -> u32 {
    *d.crossings()[c].iter().min().unwrap()
}

fn greedy_order(d: &PDCode, ends: &[[usize; 2]], candidates: &[usize], done: &mut [bool], width: &mut i64, out: &mut Vec<usize>) {
    let mut left: Vec<usize> = candidates.to_vec();
    while !left.is_empty() {
        let (pos, _) = left
            .iter()
            .enumerate()
            .min_by_key(|(_, &c)| (width_delta(d, ends, done, c), min_label(d, c)))
            .unwrap();
        let c = left.swap_remove(pos);
        *width += width_delta(d, ends, done, c);
        done[c] = true;
        out.push(c);
    }
}

/// Exhaustive search for the order minimising the maximum width.
fn exact_order(d: &PDCode, ends: &[[usize; 2]]) -> Vec<usize> {
    let n = d.crossing_count();
    let full = (1usize << n) - 1;
    // incident[c] = other endpoints of c's non-loop arcs
    let incident: Vec<Vec<usize>> = (0..n)
        .map(|c| {
            d.crossings()[c]
                .iter()
                .filter_map(|&a| {
                    let [e0, e1] = ends[d.arc_index(a)];
                    (e0 != e1).then_some(if e0 == c { e1 } else { e0 })
                })
                .collect()
        })
        .collect();
    let mut width = vec![0i32; full + 1];
    for set in 1..=full {
        let c = set.trailing_zeros() as usize;
        let prev = set & !(1 << c);
        let delta: i32 = incident[c].iter().map(|&o| if prev >> o & 1 == 1 { -1 } else { 1 }).sum();
        width[set] = width[prev] + delta;
    }
    let mut best = vec![i32::MAX; full + 1];
    let mut last = vec![usize::MAX; full + 1];
    best[0] = 0;
    for set in 1..=full {
        for c in 0..n {
            if set >> c & 1 == 0 {
                continue;
            }
            let prev = set & !(1 << c);
            let cost = best[prev].max(width[set]);
            if cost < best[set] || (cost == best[set] && min_label(d, c) < min_label(d, last[set])) {
                best[set] = cost;
                last[set] = c;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let c = last[set];
        order.push(c);
        set &= !(1 << c);
    }
    order.reverse();
    order
}

/// Plans a sweep of `d`: exhaustive for small diagrams, otherwise greedy by
/// smallest resulting width with ties broken by lowest arc label.
pub fn plan_sweep(d: &PDCode) -> SweepPlan {
    let ends = arc_ends(d);
    let order = if d.crossing_count() <= EXACT_PLAN_LIMIT {
        exact_order(d, &ends)
    } else {
        let mut done = vec![false; d.crossing_count()];
        let mut order = Vec::new();
        let all: Vec<usize> = (0..d.crossing_count()).collect();
        greedy_order(d, &ends, &all, &mut done, &mut 0, &mut order);
        order
    };
    SweepPlan::from_order(d, &order)
}

/// Cables `d` and plans the cable by following a plan of the base diagram,
/// absorbing each base crossing's grid greedily before moving on.
pub fn plan_cable_sweep(d: &PDCode, mult: &[u32], circle_mult: u32) -> (PDCode, SweepPlan, CableMap) {
    let base = plan_sweep(d);
    let (cabled, map) = cable_components(d, mult, circle_mult);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); d.crossing_count()];
    for (c, &o) in map.origin.iter().enumerate() {
        groups[o].push(c);
    }
    let ends = arc_ends(&cabled);
    let mut done = vec![false; cabled.crossing_count()];
    let mut width = 0;
    let mut order = Vec::with_capacity(cabled.crossing_count());
    for b in base.crossing_order() {
        greedy_order(&cabled, &ends, &groups[b], &mut done, &mut width, &mut order);
    }
    let plan = SweepPlan::from_order(&cabled, &order);
    (cabled, plan, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{cable, parse_pd};

    fn trefoil() -> PDCode {
        parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn unknot_plan() {
        let p = plan_sweep(&PDCode::circles(1));
        assert_eq!(p.events, vec![SweepEvent::Birth(0), SweepEvent::Death(0)]);
        assert_eq!(p.max_width, 2);
        p.validate(&PDCode::circles(1)).unwrap();
    }

    #[test]
    fn trefoil_plans() {
        let t = trefoil();
        let p = plan_sweep(&t);
        p.validate(&t).unwrap();
        assert!(p.max_width <= 6);
        let c = cable(&t, 2);
        let p = plan_sweep(&c);
        p.validate(&c).unwrap();
        assert!(p.max_width <= 12);
        assert_eq!(p, plan_sweep(&c));
    }

    #[test]
    fn lifted_plan_is_valid() {
        let t = trefoil();
        for r in 1..=4 {
            let (c, p, _) = plan_cable_sweep(&t, &[r], r);
            p.validate(&c).unwrap();
            assert!(p.max_width <= 4 * r as usize + 2, "r={r} width={}", p.max_width);
        }
    }

    #[test]
    fn validate_rejects_bad_plans() {
        let t = trefoil();
        let mut p = plan_sweep(&t);
        p.events.pop();
        p.widths.pop();
        assert!(p.validate(&t).is_err());
    }
}
