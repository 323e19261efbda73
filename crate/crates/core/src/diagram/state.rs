use super::{PDCode, UnionFind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    /// The two pairs of crossing positions joined by this smoothing.
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::A => [(0, 1), (2, 3)],
            Smoothing::B => [(0, 3), (1, 2)],
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Smoothing::A => Smoothing::B,
            Smoothing::B => Smoothing::A,
        }
    }
}

/// A smoothing choice for every crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateAssignment(pub Vec<Smoothing>);

impl StateAssignment {
    pub fn all(s: Smoothing, crossings: usize) -> Self {
        Self(vec![s; crossings])
    }

    /// State whose `i`-th crossing takes B exactly when bit `i` of `mask` is set.
    pub fn from_mask(mask: u64, crossings: usize) -> Self {
        Self(
            (0..crossings)
                .map(|i| if mask >> i & 1 == 1 { Smoothing::B } else { Smoothing::A })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, s: Smoothing) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }
}

/// Circles of a smoothed diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circles {
    /// Total circle count, crossing-free components included.
    pub count: usize,
    /// Circle id of each arc, indexed like [`PDCode::arcs`]. Ids below
    /// `count - extra_circles` are circles through crossings.
    pub membership: Vec<usize>,
}

pub fn apply_state(d: &PDCode, s: &StateAssignment) -> Circles {
    assert_eq!(s.len(), d.crossing_count(), "state length must equal crossing count");
    let mut uf = UnionFind::new(d.arcs().len());
    for (x, &sm) in d.crossings().iter().zip(&s.0) {
        for (p, q) in sm.pairs() {
            uf.union(d.arc_index(x[p]), d.arc_index(x[q]));
        }
    }
    let mut ids = vec![usize::MAX; d.arcs().len()];
    let mut membership = Vec::with_capacity(d.arcs().len());
    let mut next = 0;
    for a in 0..d.arcs().len() {
        let r = uf.find(a);
        if ids[r] == usize::MAX {
            ids[r] = next;
            next += 1;
        }
        membership.push(ids[r]);
    }
    Circles {
        count: next + d.extra_circles(),
        membership,
    }
}

/// Circles as vertices, one edge per crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl StateGraph {
    pub fn loops(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    pub fn has_loop(&self) -> bool {
        self.loops() > 0
    }
}

pub fn state_graph(d: &PDCode, s: &StateAssignment) -> StateGraph {
    let circles = apply_state(d, s);
    let edges = d
        .crossings()
        .iter()
        .zip(&s.0)
        .map(|(x, &sm)| {
            let [(p, _), (q, _)] = sm.pairs();
            (circles.membership[d.arc_index(x[p])], circles.membership[d.arc_index(x[q])])
        })
        .collect();
    StateGraph {
        vertices: circles.count,
        edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adequacy {
    pub a_adequate: bool,
    pub b_adequate: bool,
}

impl Adequacy {
    pub fn adequate(&self) -> bool {
        self.a_adequate && self.b_adequate
    }
}

pub fn adequacy(d: &PDCode) -> Adequacy {
    let c = d.crossing_count();
    Adequacy {
        a_adequate: !state_graph(d, &StateAssignment::all(Smoothing::A, c)).has_loop(),
        b_adequate: !state_graph(d, &StateAssignment::all(Smoothing::B, c)).has_loop(),
    }
}
