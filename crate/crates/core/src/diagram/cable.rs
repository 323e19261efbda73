use std::collections::HashMap;

use super::{assemble, PDCode, RawCrossing, UnionFind};

/// Provenance of a cabled diagram.
#[derive(Debug, Clone, Default)]
pub struct CableMap {
    /// Base crossing each cabled crossing was created from.
    pub origin: Vec<usize>,
    /// Label of copy `t` of base arc `a`, keyed by `(a, t)`.
    pub copies: HashMap<(u32, u32), u32>,
}

/// Blackboard `r`-parallel of every component.
pub fn cable(d: &PDCode, r: u32) -> PDCode {
    let mult = vec![r; d.crossing_components().len()];
    cable_components(d, &mult, r).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Seg {
    /// Copy `t` of a base arc.
    Ext(u32, u32),
    /// Inside the grid of crossing `c`: strand (0 under, 1 over), copy, step.
    Int(usize, u8, u32, u32),
}

/// Blackboard parallel with `mult[i]` copies of the `i`-th crossing component
/// and `circle_mult` copies of every crossing-free circle. A multiplicity of
/// zero deletes the component.
///
/// Copy `t` runs `t` steps to the right of the oriented base strand, so each
/// base crossing becomes a grid of `r_under x r_over` crossings of its sign.
pub fn cable_components(d: &PDCode, mult: &[u32], circle_mult: u32) -> (PDCode, CableMap) {
    assert_eq!(mult.len(), d.crossing_components().len(), "one multiplicity per component");
    let mut ids: HashMap<Seg, usize> = HashMap::new();
    let mut id = |s: Seg| {
        let n = ids.len();
        *ids.entry(s).or_insert(n)
    };
    let mut raw: Vec<RawCrossing> = Vec::new();
    let mut origin = Vec::new();
    let mut aliases: Vec<(usize, usize)> = Vec::new();
    let mut touched = vec![false; mult.len()];

    for (c, &[i, j, k, l]) in d.crossings().iter().enumerate() {
        let positive = d.sign(c) > 0;
        let (oin, oout) = if positive { (l, j) } else { (j, l) };
        let (cu, co) = (d.component_of(i), d.component_of(j));
        let (ru, ro) = (mult[cu], mult[co]);
        if ru == 0 || ro == 0 {
            for t in 0..ru {
                aliases.push((id(Seg::Ext(i, t)), id(Seg::Ext(k, t))));
            }
            for s in 0..ro {
                aliases.push((id(Seg::Ext(oin, s)), id(Seg::Ext(oout, s))));
            }
            continue;
        }
        touched[cu] = true;
        touched[co] = true;
        let useg = |t: u32, q: u32| match q {
            0 => Seg::Ext(i, t),
            q if q == ro => Seg::Ext(k, t),
            q => Seg::Int(c, 0, t, q),
        };
        let oseg = |s: u32, q: u32| match q {
            0 => Seg::Ext(oin, s),
            q if q == ru => Seg::Ext(oout, s),
            q => Seg::Int(c, 1, s, q),
        };
        for t in 0..ru {
            for s in 0..ro {
                // rank of the crossing along the under copy (from its start) and the over copy
                let ku = if positive { ro - 1 - s } else { s };
                let ko = if positive { t } else { ru - 1 - t };
                let uin = id(useg(t, ku));
                let uout = id(useg(t, ku + 1));
                let o_in = id(oseg(s, ko));
                let o_out = id(oseg(s, ko + 1));
                let legs = if positive { [uin, o_out, uout, o_in] } else { [uin, o_in, uout, o_out] };
                raw.push(RawCrossing { legs, positive });
                origin.push(c);
            }
        }
    }

    let mut uf = UnionFind::new(ids.len());
    for (a, b) in aliases {
        uf.union(a, b);
    }
    for x in &mut raw {
        x.legs = x.legs.map(|s| uf.find(s));
    }
    // components left without crossings become plain circles
    let isolated: u32 = mult
        .iter()
        .zip(&touched)
        .filter(|(_, &t)| !t)
        .map(|(&m, _)| m)
        .sum();
    let extra = d.extra_circles() * circle_mult as usize + isolated as usize;
    let (pd, labels) = assemble(&raw, extra);

    let mut copies = HashMap::new();
    for (seg, &sid) in &ids {
        if let Seg::Ext(a, t) = *seg {
            if let Some(&lab) = labels.get(&uf.find(sid)) {
                copies.insert((a, t), lab);
            }
        }
    }
    (pd, CableMap { origin, copies })
}
