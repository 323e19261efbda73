use std::collections::HashMap;

use proptest::prelude::*;
use skein::catalog;
use skein::diagram::{adequacy, apply_state, cable, plan_sweep, state_graph, twist_closure, PDCode, Smoothing, StateAssignment};
use skein::jones::{bracket, brute_force_bracket, sweep_bracket};
use skein::{Budget, LaurentPoly};

fn corpus() -> Vec<(String, PDCode)> {
    let mut out: Vec<(String, PDCode)> = catalog::entries().into_iter().map(|e| (e.name.clone(), e.diagram().unwrap())).collect();
    for m in [-4, -3, -1, 1, 2, 5] {
        out.push((format!("twist {m}"), twist_closure(m)));
    }
    out
}

fn delta() -> LaurentPoly {
    "-A^2-A^-2".parse().unwrap()
}

/// Circle count by walking each circle slot to slot.
fn count_circles_by_walking(d: &PDCode, s: &StateAssignment) -> usize {
    // arc label -> the two (crossing, position) slots it touches
    let mut ends: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for (p, &label) in x.iter().enumerate() {
            ends.entry(label).or_default().push((c, p));
        }
    }
    let partner_slot = |c: usize, p: usize| -> usize {
        let sm = s.0[c];
        let [(a, b), (e, f)] = sm.pairs();
        [(a, b), (b, a), (e, f), (f, e)].into_iter().find(|&(x, _)| x == p).unwrap().1
    };
    let mut seen: HashMap<u32, bool> = HashMap::new();
    let mut circles = 0;
    for &start in ends.keys() {
        if seen.contains_key(&start) {
            continue;
        }
        circles += 1;
        let (mut c, mut p) = ends[&start][1];
        let mut label = start;
        loop {
            seen.insert(label, true);
            let q = partner_slot(c, p);
            label = d.crossings()[c][q];
            if label == start {
                break;
            }
            let e = &ends[&label];
            (c, p) = if e[0] == (c, q) { e[1] } else { e[0] };
        }
    }
    circles + d.extra_circles()
}

#[test]
fn sweep_matches_brute_force_on_the_corpus() {
    let budget = Budget::default();
    for (name, d) in corpus() {
        let brute = brute_force_bracket(&d, &budget).unwrap();
        let swept = sweep_bracket(&d, &plan_sweep(&d), &budget).unwrap();
        assert_eq!(swept, brute, "{name}");
    }
}

#[test]
fn sweep_matches_brute_force_on_small_cables() {
    let budget = Budget::default();
    for (name, d) in corpus() {
        let c = cable(&d, 2);
        if c.crossing_count() > 16 {
            continue;
        }
        let plan = plan_sweep(&c);
        plan.validate(&c).unwrap();
        assert_eq!(sweep_bracket(&c, &plan, &budget).unwrap(), brute_force_bracket(&c, &budget).unwrap(), "{name} doubled");
    }
}

#[test]
fn mirror_reflects_the_bracket() {
    let budget = Budget::default();
    for (name, d) in corpus() {
        assert_eq!(bracket(&d.mirror(), &budget).unwrap(), bracket(&d, &budget).unwrap().mirror(), "{name}");
    }
}

#[test]
fn extra_circle_multiplies_by_delta() {
    let budget = Budget::default();
    for (name, d) in corpus() {
        let b = bracket(&d, &budget).unwrap();
        assert_eq!(bracket(&d.disjoint_circles(1), &budget).unwrap(), &b * &delta(), "{name}");
    }
}

#[test]
fn hand_computed_brackets() {
    let budget = Budget::default();
    let p = |s: &str| s.parse::<LaurentPoly>().unwrap();
    assert_eq!(bracket(&twist_closure(2), &budget).unwrap(), p("A^6+A^2+A^-2+A^-6"));
    let trefoil = catalog::lookup("3_1").unwrap();
    assert_eq!(bracket(&trefoil, &budget).unwrap(), p("A^-7+A^-3+A-A^9"));
    assert_eq!(bracket(&trefoil.mirror(), &budget).unwrap(), p("A^7+A^3+A^-1-A^-9"));
    assert_eq!(bracket(&PDCode::circles(0), &budget).unwrap(), LaurentPoly::one());
}

#[test]
fn adequacy_is_a_local_maximum_of_circle_counts() {
    for (name, d) in corpus() {
        let c = d.crossing_count();
        for side in [Smoothing::A, Smoothing::B] {
            let all = StateAssignment::all(side, c);
            let base = apply_state(&d, &all).count;
            let local_max = (0..c).all(|i| {
                let mut s = all.clone();
                s.0[i] = side.flip();
                apply_state(&d, &s).count + 1 == base
            });
            let adequate = !state_graph(&d, &all).has_loop();
            assert_eq!(adequate, local_max, "{name} {side:?}");
        }
    }
}

#[test]
fn alternating_catalog_knots_are_adequate() {
    for name in ["3_1", "4_1", "5_2", "6_1", "6_2", "6_3", "hopf"] {
        let d = catalog::lookup(name).unwrap();
        assert!(d.is_alternating(), "{name}");
        assert!(adequacy(&d).adequate(), "{name}");
    }
    let kinked = catalog::lookup("3_1_kinked").unwrap();
    let a = adequacy(&kinked);
    assert!(!kinked.is_alternating());
    assert!(a.b_adequate && !a.a_adequate);
}

#[test]
fn cabling_preserves_adequacy() {
    for (name, d) in corpus() {
        let a = adequacy(&d);
        for r in 1..=3 {
            let c = adequacy(&cable(&d, r));
            assert_eq!((c.a_adequate, c.b_adequate), (a.a_adequate, a.b_adequate), "{name} r={r}");
        }
    }
}

#[test]
fn plans_replay_on_the_corpus() {
    for (name, d) in corpus() {
        let plan = plan_sweep(&d);
        plan.validate(&d).unwrap_or_else(|e| panic!("{name}: {e}"));
        let mut order = plan.crossing_order();
        order.sort_unstable();
        assert_eq!(order, (0..d.crossing_count()).collect::<Vec<_>>(), "{name}");
    }
    assert!(plan_sweep(&catalog::lookup("3_1").unwrap()).max_width <= 6);
    assert!(plan_sweep(&cable(&catalog::lookup("3_1").unwrap(), 2)).max_width <= 12);
}

proptest! {
    #[test]
    fn circle_counts_match_a_walk(pick in 0usize..15, mask in any::<u64>()) {
        let all = corpus();
        let (name, d) = &all[pick % all.len()];
        let s = StateAssignment::from_mask(mask, d.crossing_count());
        let circles = apply_state(d, &s);
        prop_assert_eq!(circles.count, count_circles_by_walking(d, &s), "{}", name);
        prop_assert_eq!(circles.membership.len(), d.arcs().len());
    }

    #[test]
    fn mirrored_twists_reflect_the_bracket(m in 1i32..7) {
        let budget = Budget::default();
        let pos = bracket(&twist_closure(m), &budget).unwrap();
        let neg = bracket(&twist_closure(-m), &budget).unwrap();
        prop_assert_eq!(neg, pos.mirror());
    }
}
