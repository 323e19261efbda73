use num_bigint::BigInt;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{circle_power, Budget, JonesError};
use crate::diagram::{PDCode, UnionFind};
use crate::poly::LaurentPoly;

/// Sum over all `2^c` states of `A^(#A - #B) δ^circles`.
pub fn brute_force_bracket(d: &PDCode, budget: &Budget) -> Result<LaurentPoly, JonesError> {
    let c = d.crossing_count();
    if c > budget.max_brute_crossings {
        return Err(JonesError::TooManyCrossings {
            crossings: c,
            limit: budget.max_brute_crossings,
        });
    }
    // dense arc indices of the four legs
    let legs: Vec<[usize; 4]> = d.crossings().iter().map(|x| x.map(|a| d.arc_index(a))).collect();
    let arcs = d.arcs().len();
    let count_state = |mask: u64| -> usize {
        let mut uf = UnionFind::new(arcs);
        let mut circles = arcs;
        for (i, x) in legs.iter().enumerate() {
            let pairs = if mask >> i & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
            for (p, q) in pairs {
                if uf.union(x[p], x[q]) {
                    circles -= 1;
                }
            }
        }
        circles
    };
    // (number of B smoothings, circles) -> number of states
    let tally: FxHashMap<(u32, usize), u64> = (0..1u64 << c)
        .into_par_iter()
        .fold(FxHashMap::default, |mut m, mask| {
            *m.entry((mask.count_ones(), count_state(mask))).or_insert(0) += 1;
            m
        })
        .reduce(FxHashMap::default, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut keys: Vec<_> = tally.into_iter().collect();
    keys.sort();
    let mut out = LaurentPoly::zero();
    for ((b, circles), n) in keys {
        let a_exp = c as i64 - 2 * b as i64;
        out.add_shifted(&circle_power(circles + d.extra_circles()).scale(&BigInt::from(n)), a_exp);
    }
    Ok(out)
}
