//! Link diagrams in planar-diagram (PD) form.
//!
//! A crossing `X[i,j,k,l]` lists its four arc labels counterclockwise,
//! starting at the incoming under-strand. The under-strand runs `i -> k`;
//! the over-strand runs `l -> j` (positive crossing) or `j -> l` (negative),
//! as implied by consecutive labelling along each component.
//!
//! ```text
//!            k                 A-smoothing joins (i,j) and (k,l)
//!            |                 B-smoothing joins (i,l) and (j,k)
//!      l ----|---- j
//!            |                 The A-regions are those swept when the
//!            i                 over-strand is turned counterclockwise.
//! ```

mod cable;
mod parse;
mod state;
mod sweep;

use std::collections::HashMap;

use thiserror::Error;

pub use cable::{cable, cable_components, CableMap};
pub use parse::{parse_pd, ParseError};
pub use state::{adequacy, apply_state, state_graph, Adequacy, Circles, Smoothing, StateAssignment, StateGraph};
pub use sweep::{plan_cable_sweep, plan_sweep, SweepEvent, SweepPlan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("crossing {crossing}: arc label 0 is not allowed")]
    ZeroLabel { crossing: usize },
    #[error("arc {label} occurs {count} time(s); every arc must occur exactly twice")]
    ArcCount { label: u32, count: usize },
    #[error("component containing arc {label} is not labelled by consecutive integers")]
    NonConsecutive { label: u32 },
    #[error("crossing {crossing}: under-strand {from} -> {to} does not follow the component labelling")]
    UnderStrand { crossing: usize, from: u32, to: u32 },
    #[error("crossing {crossing}: over-strand arcs {j} and {l} are not consecutive")]
    OverStrand { crossing: usize, j: u32, l: u32 },
}

impl DiagramError {
    /// Crossing index the error refers to, if any.
    pub fn crossing(&self) -> Option<usize> {
        match self {
            DiagramError::ZeroLabel { crossing }
            | DiagramError::UnderStrand { crossing, .. }
            | DiagramError::OverStrand { crossing, .. } => Some(*crossing),
            _ => None,
        }
    }

    /// An arc label the error refers to, if any.
    pub fn label(&self) -> Option<u32> {
        match self {
            DiagramError::ArcCount { label, .. } | DiagramError::NonConsecutive { label } => Some(*label),
            DiagramError::UnderStrand { from, .. } => Some(*from),
            DiagramError::OverStrand { j, .. } => Some(*j),
            DiagramError::ZeroLabel { .. } => None,
        }
    }
}

/// A validated oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<[u32; 4]>,
    extra_circles: usize,
    /// Sorted arc labels; position in this list is the arc's dense index.
    arcs: Vec<u32>,
    /// Component index of each arc (dense index).
    arc_component: Vec<usize>,
    /// Inclusive label range of each component, ordered by lowest label.
    components: Vec<(u32, u32)>,
    signs: Vec<i8>,
}

impl PDCode {
    pub fn new(crossings: Vec<[u32; 4]>, extra_circles: usize) -> Result<Self, DiagramError> {
        Self::build(crossings, extra_circles, None)
    }

    /// Like [`PDCode::new`], but crossings whose sign the labels leave
    /// ambiguous take the given sign instead of one inferred from the rest.
    pub(crate) fn with_signs(crossings: Vec<[u32; 4]>, extra_circles: usize, positive: &[bool]) -> Result<Self, DiagramError> {
        Self::build(crossings, extra_circles, Some(positive))
    }

    fn build(crossings: Vec<[u32; 4]>, extra_circles: usize, given: Option<&[bool]>) -> Result<Self, DiagramError> {
        let mut count: HashMap<u32, usize> = HashMap::new();
        for (ci, x) in crossings.iter().enumerate() {
            if x.contains(&0) {
                return Err(DiagramError::ZeroLabel { crossing: ci });
            }
            for &a in x {
                *count.entry(a).or_default() += 1;
            }
        }
        let mut arcs: Vec<u32> = count.keys().copied().collect();
        arcs.sort_unstable();
        if let Some(&label) = arcs.iter().find(|a| count[a] != 2) {
            return Err(DiagramError::ArcCount { label, count: count[&label] });
        }
        let idx = |a: u32| arcs.binary_search(&a).unwrap();

        let mut uf = UnionFind::new(arcs.len());
        for x in &crossings {
            uf.union(idx(x[0]), idx(x[2]));
            uf.union(idx(x[1]), idx(x[3]));
        }
        let mut by_root: HashMap<usize, Vec<u32>> = HashMap::new();
        for &a in &arcs {
            by_root.entry(uf.find(idx(a))).or_default().push(a);
        }
        let mut comps: Vec<Vec<u32>> = by_root.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        let mut components = Vec::with_capacity(comps.len());
        let mut arc_component = vec![0; arcs.len()];
        for (k, c) in comps.iter().enumerate() {
            let (lo, hi) = (c[0], *c.last().unwrap());
            if (hi - lo) as usize + 1 != c.len() {
                return Err(DiagramError::NonConsecutive { label: lo });
            }
            for &a in c {
                arc_component[idx(a)] = k;
            }
            components.push((lo, hi));
        }

        let mut pd = PDCode {
            crossings,
            extra_circles,
            arcs,
            arc_component,
            components,
            signs: Vec::new(),
        };
        let mut signs: Vec<Option<i8>> = Vec::with_capacity(pd.crossings.len());
        for (ci, &[i, j, k, l]) in pd.crossings.iter().enumerate() {
            if pd.next_arc(i) != k {
                return Err(DiagramError::UnderStrand { crossing: ci, from: i, to: k });
            }
            let l_to_j = pd.next_arc(l) == j;
            let j_to_l = pd.next_arc(j) == l;
            signs.push(match (l_to_j, j_to_l) {
                (true, false) => Some(1),
                (false, true) => Some(-1),
                (false, false) => return Err(DiagramError::OverStrand { crossing: ci, j, l }),
                // two-arc component: settled below
                (true, true) => given.map(|g| if g[ci] { 1 } else { -1 }),
            });
        }
        resolve_signs(&pd.crossings, &mut signs);
        pd.signs = signs.into_iter().map(|s| s.expect("every sign resolved")).collect();
        if let Some(g) = given {
            debug_assert!(pd.signs.iter().zip(g).all(|(&s, &p)| (s > 0) == p), "signs disagree with labels");
        }
        Ok(pd)
    }

    /// The 0-crossing diagram with `circles` unknotted components.
    pub fn circles(circles: usize) -> Self {
        Self::new(Vec::new(), circles).expect("empty diagram is valid")
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn extra_circles(&self) -> usize {
        self.extra_circles
    }

    pub fn with_extra_circles(&self, extra: usize) -> Self {
        let mut out = self.clone();
        out.extra_circles = extra;
        out
    }

    /// Arc labels in increasing order.
    pub fn arcs(&self) -> &[u32] {
        &self.arcs
    }

    pub fn arc_index(&self, label: u32) -> usize {
        self.arcs.binary_search(&label).expect("arc label belongs to the diagram")
    }

    /// Components that pass through at least one crossing, as label ranges.
    pub fn crossing_components(&self) -> &[(u32, u32)] {
        &self.components
    }

    /// Total component count, crossing-free circles included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.extra_circles
    }

    pub fn component_of(&self, label: u32) -> usize {
        self.arc_component[self.arc_index(label)]
    }

    /// The arc following `label` along its oriented component.
    pub fn next_arc(&self, label: u32) -> u32 {
        let (lo, hi) = self.components[self.component_of(label)];
        if label == hi {
            lo
        } else {
            label + 1
        }
    }

    /// +1 or -1.
    pub fn sign(&self, crossing: usize) -> i8 {
        self.signs[crossing]
    }

    /// Position (1 or 3) of the incoming over-strand arc at a crossing.
    pub fn over_in_position(&self, crossing: usize) -> usize {
        if self.signs[crossing] > 0 {
            3
        } else {
            1
        }
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> PDCode {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[i, j, k, l], &s)| if s > 0 { [l, i, j, k] } else { [j, k, l, i] })
            .collect();
        let flipped: Vec<bool> = self.signs.iter().map(|&s| s < 0).collect();
        let out = PDCode::with_signs(crossings, self.extra_circles, &flipped).expect("mirror of a valid diagram is valid");
        debug_assert!(out.signs.iter().zip(&self.signs).all(|(a, b)| *a == -*b));
        out
    }

    /// Crossing-free union with `k` more circles.
    pub fn disjoint_circles(&self, k: usize) -> PDCode {
        self.with_extra_circles(self.extra_circles + k)
    }

    /// True when the over/under pattern alternates along every component.
    pub fn is_alternating(&self) -> bool {
        // For each arc record whether it leaves its start crossing over or under.
        let mut leaves_over: HashMap<u32, bool> = HashMap::new();
        let mut enters_over: HashMap<u32, bool> = HashMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            enters_over.insert(x[0], false);
            leaves_over.insert(x[2], false);
            let over_in = self.over_in_position(ci);
            enters_over.insert(x[over_in], true);
            leaves_over.insert(x[4 - over_in], true);
        }
        self.arcs.iter().all(|a| leaves_over[a] != enters_over[a])
    }

    /// Renders in the PD text format.
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
            .collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.extra_circles));
        parts.join(" ")
    }
}

/// Fills in signs the labels leave open. Every arc enters exactly one
/// crossing slot and leaves exactly one, so known ends orient the rest; a
/// component seen only from above is oriented arbitrarily.
fn resolve_signs(crossings: &[[u32; 4]], signs: &mut [Option<i8>]) {
    // (crossing, position) of the slot where each arc ends
    let mut enters: HashMap<u32, (usize, usize)> = HashMap::new();
    let mark = |enters: &mut HashMap<u32, (usize, usize)>, c: usize, s: i8| {
        let x = crossings[c];
        enters.insert(x[0], (c, 0));
        let p = if s > 0 { 3 } else { 1 };
        enters.insert(x[p], (c, p));
    };
    for (c, x) in crossings.iter().enumerate() {
        match signs[c] {
            Some(s) => mark(&mut enters, c, s),
            None => {
                enters.insert(x[0], (c, 0));
            }
        }
    }
    loop {
        let mut progress = false;
        for c in 0..crossings.len() {
            if signs[c].is_some() {
                continue;
            }
            let [_, j, _, l] = crossings[c];
            let elsewhere = |a: u32, p: usize| enters.get(&a).is_some_and(|&e| e != (c, p));
            let s = if elsewhere(j, 1) {
                Some(1)
            } else if elsewhere(l, 3) {
                Some(-1)
            } else {
                None
            };
            if let Some(s) = s {
                signs[c] = Some(s);
                mark(&mut enters, c, s);
                progress = true;
            }
        }
        if !progress {
            let Some(c) = signs.iter().position(Option::is_none) else { break };
            signs[c] = Some(1);
            mark(&mut enters, c, 1);
        }
    }
}

/// Crossing of a diagram under construction, with arbitrary segment ids.
/// The under-strand runs `legs[0] -> legs[2]`; the over-strand runs
/// `legs[3] -> legs[1]` when `positive`, else `legs[1] -> legs[3]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RawCrossing {
    pub legs: [usize; 4],
    pub positive: bool,
}

/// Relabels raw segments consecutively along each component and validates.
///
/// Returns the diagram and the label given to each raw segment id.
pub(crate) fn assemble(raw: &[RawCrossing], extra_circles: usize) -> (PDCode, HashMap<usize, u32>) {
    let mut succ: HashMap<usize, usize> = HashMap::new();
    let mut first_seen: Vec<usize> = Vec::new();
    for x in raw {
        let (oin, oout) = if x.positive { (x.legs[3], x.legs[1]) } else { (x.legs[1], x.legs[3]) };
        succ.insert(x.legs[0], x.legs[2]);
        succ.insert(oin, oout);
        for &s in &x.legs {
            if !first_seen.contains(&s) {
                first_seen.push(s);
            }
        }
    }
    let mut label: HashMap<usize, u32> = HashMap::new();
    let mut next_label = 1u32;
    for &start in &first_seen {
        if label.contains_key(&start) {
            continue;
        }
        let mut s = start;
        loop {
            label.insert(s, next_label);
            next_label += 1;
            s = succ[&s];
            if s == start {
                break;
            }
        }
    }
    let crossings = raw.iter().map(|x| x.legs.map(|s| label[&s])).collect();
    let positive: Vec<bool> = raw.iter().map(|x| x.positive).collect();
    let pd = PDCode::with_signs(crossings, extra_circles, &positive).expect("assembled diagram is valid");
    (pd, label)
}

/// Closure of the two-strand braid `σ^m` (`m > 0` positive crossings,
/// `m < 0` negative). `|m| = 1` is a kinked unknot, `|m| = 2` the Hopf link.
pub fn twist_closure(m: i32) -> PDCode {
    assert!(m != 0, "twist closure needs at least one crossing");
    let len = m.unsigned_abs() as usize;
    // segment between level k and k+1 at position p: 2k + p
    let seg = |k: usize, p: usize| 2 * (k % len) + p;
    let raw: Vec<RawCrossing> = (0..len)
        .map(|k| {
            if m < 0 {
                // under: bottom-left -> top-right; over: bottom-right -> top-left
                RawCrossing {
                    legs: [seg(k, 0), seg(k, 1), seg(k + 1, 1), seg(k + 1, 0)],
                    positive: false,
                }
            } else {
                // under: bottom-right -> top-left; over: bottom-left -> top-right
                RawCrossing {
                    legs: [seg(k, 1), seg(k + 1, 1), seg(k + 1, 0), seg(k, 0)],
                    positive: true,
                }
            }
        })
        .collect();
    assemble(&raw, 0).0
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
