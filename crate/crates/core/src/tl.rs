//! Temperley-Lieb matchings, Jones-Wenzl idempotents and an exhaustive
//! evaluator for crossing-free networks of idempotent boxes.
//!
//! A matching on `n` strands pairs `2n` boundary points of a rectangle. The
//! points are numbered along the boundary circle: bottom `0..n` left to
//! right, then top `n-1..0` right to left, so bottom `i` sits at position `i`
//! and top `i` at position `2n-1-i`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::diagram::UnionFind;
use crate::poly::{LaurentPoly, RationalFn};
use crate::quantum::delta;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("strand counts differ: {0} and {1}")]
    StrandMismatch(usize, usize),
    #[error("hook index {i} out of range for {n} strands")]
    HookIndex { n: usize, i: usize },
    #[error("network expansion has {terms} terms, budget is {limit}")]
    Budget { terms: u128, limit: u128 },
    #[error("malformed network: {0}")]
    Network(String),
}

fn circle_value() -> LaurentPoly {
    delta(1).expect("delta(1) is defined")
}

/// A crossingless matching, rendered as a balanced-parenthesis string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<u8>,
}

impl Matching {
    /// From a partner table over the `2n` boundary positions. Returns `None`
    /// unless it is a planar fixed-point-free involution.
    pub fn from_partners(partner: Vec<u8>) -> Option<Self> {
        let len = partner.len();
        if !len.is_multiple_of(2) || len > 2 * u8::MAX as usize {
            return None;
        }
        for (p, &q) in partner.iter().enumerate() {
            let q = q as usize;
            if q >= len || q == p || partner[q] as usize != p {
                return None;
            }
        }
        let m = Matching { partner };
        m.is_planar().then_some(m)
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|p| (2 * n - 1 - p) as u8).collect();
        Matching { partner }
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn is_identity(&self) -> bool {
        *self == Matching::identity(self.n())
    }

    /// No two pairs interleave in the circular order.
    pub fn is_planar(&self) -> bool {
        let mut stack = Vec::new();
        for (p, &q) in self.partner.iter().enumerate() {
            if (q as usize) > p {
                stack.push(p);
            } else if stack.pop() != Some(q as usize) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Balanced-parenthesis rendering along the boundary circle.
    pub fn parens(&self) -> String {
        self.partner
            .iter()
            .enumerate()
            .map(|(p, &q)| if q as usize > p { '(' } else { ')' })
            .collect()
    }

    /// Adds one vertical strand on the right.
    pub fn tensor_id(&self) -> Self {
        let n = self.n();
        let map = |p: usize| if p < n { p } else { p + 2 };
        let mut partner = vec![0u8; 2 * n + 2];
        for p in 0..2 * n {
            partner[map(p)] = map(self.partner(p)) as u8;
        }
        partner[n] = (n + 1) as u8;
        partner[n + 1] = n as u8;
        Matching { partner }
    }

    /// Joins the rightmost bottom point to the rightmost top point. Returns
    /// the matching on `n-1` strands and whether a closed loop was formed.
    pub fn partial_trace(&self) -> (Self, bool) {
        let n = self.n();
        assert!(n >= 1, "partial trace needs a strand");
        let (b, t) = (n - 1, n);
        let map = |p: usize| if p < b { p } else { p - 2 };
        let mut partner = vec![0u8; 2 * n - 2];
        let closed = self.partner(b) == t;
        for p in 0..2 * n {
            if p == b || p == t {
                continue;
            }
            let mut q = self.partner(p);
            if q == b {
                q = self.partner(t);
            } else if q == t {
                q = self.partner(b);
            }
            partner[map(p)] = map(q) as u8;
        }
        (Matching { partner }, closed)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.parens())
    }
}

/// The generator `h_i`, `1 <= i <= n-1`: cups joining strands `i` and `i+1`
/// at the bottom and at the top.
pub fn hook(n: usize, i: usize) -> Result<Matching, TlError> {
    if i == 0 || i >= n {
        return Err(TlError::HookIndex { n, i });
    }
    let mut m = Matching::identity(n);
    let (b0, b1) = (i - 1, i);
    let (t0, t1) = (2 * n - i, 2 * n - 1 - i);
    m.partner[b0] = b1 as u8;
    m.partner[b1] = b0 as u8;
    m.partner[t0] = t1 as u8;
    m.partner[t1] = t0 as u8;
    Ok(m)
}

/// `a` stacked on top of `b`, with the number of closed loops removed.
pub fn compose(a: &Matching, b: &Matching) -> Result<(Matching, usize), TlError> {
    let n = a.n();
    if b.n() != n {
        return Err(TlError::StrandMismatch(n, b.n()));
    }
    let len = 2 * n;
    // Points of `a` are 0..len, points of `b` are len..2len. The glued middle
    // is a's bottom and b's top.
    let middle = |x: usize| if x < len { x < n } else { x - len >= n };
    let across = |x: usize| {
        if x < len {
            len + (len - 1 - x)
        } else {
            len - 1 - (x - len)
        }
    };
    let inside = |x: usize| if x < len { a.partner(x) } else { len + b.partner(x - len) };
    // result bottom i = b's bottom i, result top i = a's top i
    let outer_to_result = |x: usize| if x < len { x } else { x - len };
    let mut partner = vec![0u8; len];
    let mut seen = vec![false; 2 * len];
    for start in 0..len {
        let x0 = if start < n { len + start } else { start };
        if seen[x0] {
            continue;
        }
        let mut x = x0;
        loop {
            seen[x] = true;
            let y = inside(x);
            seen[y] = true;
            if middle(y) {
                x = across(y);
            } else {
                partner[outer_to_result(x0)] = outer_to_result(y) as u8;
                partner[outer_to_result(y)] = outer_to_result(x0) as u8;
                break;
            }
        }
    }
    let mut loops = 0;
    for x in 0..2 * len {
        if seen[x] || !middle(x) {
            continue;
        }
        loops += 1;
        let mut y = x;
        loop {
            seen[y] = true;
            let z = inside(y);
            seen[z] = true;
            y = across(z);
            if y == x {
                break;
            }
        }
    }
    Ok((Matching { partner }, loops))
}

/// All crossingless matchings on `n` strands, in canonical order.
pub fn enumerate(n: usize) -> Vec<Matching> {
    // all planar pairings of the positions lo..hi
    fn pairings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for q in (lo + 1..hi).step_by(2) {
            for inner in pairings(lo + 1, q) {
                for outer in pairings(q + 1, hi) {
                    let mut v = vec![(lo, q)];
                    v.extend(&inner);
                    v.extend(&outer);
                    out.push(v);
                }
            }
        }
        out
    }
    let mut ms: Vec<Matching> = pairings(0, 2 * n)
        .into_iter()
        .map(|pairs| {
            let mut partner = vec![0u8; 2 * n];
            for (a, b) in pairs {
                partner[a] = b as u8;
                partner[b] = a as u8;
            }
            Matching { partner }
        })
        .collect();
    ms.sort();
    ms
}

/// Distance from the identity to every matching on `n` strands in the graph
/// whose edges are right multiplications by hooks.
pub fn word_lengths(n: usize) -> HashMap<Matching, usize> {
    let hooks: Vec<Matching> = (1..n).map(|i| hook(n, i).unwrap()).collect();
    let mut dist = HashMap::new();
    let id = Matching::identity(n);
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        let d = dist[&m];
        for h in &hooks {
            let (next, _) = compose(&m, h).unwrap();
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Minimum number of hooks whose product is `m`.
pub fn min_word_length(m: &Matching) -> usize {
    word_lengths(m.n())[m]
}

/// Element of the Temperley-Lieb algebra with rational coefficients.
#[derive(Debug, Clone)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<Matching, RationalFn>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        TLElement { n, terms: BTreeMap::new() }
    }

    pub fn from_matching(m: Matching) -> Self {
        let n = m.n();
        let mut terms = BTreeMap::new();
        terms.insert(m, RationalFn::one());
        TLElement { n, terms }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matching(Matching::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &RationalFn)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Matching) -> RationalFn {
        self.terms.get(m).cloned().unwrap_or_else(RationalFn::zero)
    }

    fn add_term(&mut self, m: Matching, c: RationalFn) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &TLElement) -> Result<TLElement, TlError> {
        if self.n != other.n {
            return Err(TlError::StrandMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &RationalFn) -> TLElement {
        let mut out = TLElement::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    /// `self` stacked on top of `other`.
    pub fn mul(&self, other: &TLElement) -> Result<TLElement, TlError> {
        if self.n != other.n {
            return Err(TlError::StrandMismatch(self.n, other.n));
        }
        let circle = RationalFn::from_poly(circle_value());
        let mut out = TLElement::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (m, loops) = compose(a, b)?;
                let mut c = ca * cb;
                for _ in 0..loops {
                    c = &c * &circle;
                }
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// Closes the rightmost strand.
    pub fn partial_trace(&self) -> TLElement {
        let circle = RationalFn::from_poly(circle_value());
        let mut out = TLElement::zero(self.n - 1);
        for (m, c) in &self.terms {
            let (t, closed) = m.partial_trace();
            out.add_term(t, if closed { c * &circle } else { c.clone() });
        }
        out
    }
}

impl PartialEq for TLElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(m, c)| other.terms.get(m) == Some(c))
    }
}

impl Eq for TLElement {}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*[{m}]")?;
        }
        Ok(())
    }
}

/// `f^(n)` over the common denominator `den`.
#[derive(Debug, Clone)]
pub struct JonesWenzl {
    pub n: usize,
    pub den: LaurentPoly,
    pub terms: Vec<(Matching, LaurentPoly)>,
}

impl JonesWenzl {
    pub fn to_element(&self) -> TLElement {
        let mut out = TLElement::zero(self.n);
        for (m, p) in &self.terms {
            out.add_term(m.clone(), RationalFn::new(p.clone(), self.den.clone()).unwrap());
        }
        out
    }
}

static JW_CACHE: OnceLock<RwLock<Vec<Arc<JonesWenzl>>>> = OnceLock::new();

fn jw_next(f: &JonesWenzl) -> JonesWenzl {
    let n = f.n;
    if n == 0 {
        return JonesWenzl {
            n: 1,
            den: LaurentPoly::one(),
            terms: vec![(Matching::identity(1), LaurentPoly::one())],
        };
    }
    let dn = delta(n as i64).unwrap();
    let dn1 = delta(n as i64 - 1).unwrap();
    let circle = circle_value();
    let lifted: Vec<(Matching, &LaurentPoly)> = f.terms.iter().map(|(m, p)| (m.tensor_id(), p)).collect();
    let h = hook(n + 1, n).unwrap();

    // f' = f x 1 - (D_{n-1}/D_n) (f x 1) h_n (f x 1), over den D_n * den^2
    let mut acc: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
    let scale_first = &dn * &f.den;
    for (m, p) in &lifted {
        *acc.entry(m.clone()).or_insert_with(LaurentPoly::zero) += &(*p * &scale_first);
    }
    let mut left: BTreeMap<Matching, LaurentPoly> = BTreeMap::new();
    for (m, p) in &lifted {
        let (mh, loops) = compose(m, &h).unwrap();
        let mut c = (*p).clone();
        for _ in 0..loops {
            c = &c * &circle;
        }
        *left.entry(mh).or_insert_with(LaurentPoly::zero) += &c;
    }
    for (a, pa) in &left {
        if pa.is_zero() {
            continue;
        }
        let pa = pa * &dn1;
        for (b, pb) in &lifted {
            let (m, loops) = compose(a, b).unwrap();
            let mut c = &pa * *pb;
            for _ in 0..loops {
                c = &c * &circle;
            }
            *acc.entry(m).or_insert_with(LaurentPoly::zero) -= &c;
        }
    }
    let mut den = &dn * &(&f.den * &f.den);
    let mut terms: Vec<(Matching, LaurentPoly)> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
    // The true denominator is D_1...D_n; cancel the extra copy of the old one.
    if !f.den.is_one() {
        let reduced: Option<Vec<(Matching, LaurentPoly)>> = terms
            .iter()
            .map(|(m, p)| p.exact_divide(&f.den).ok().map(|q| (m.clone(), q)))
            .collect();
        if let Some(r) = reduced {
            terms = r;
            den = den.exact_divide(&f.den).unwrap();
        }
    }
    JonesWenzl { n: n + 1, den, terms }
}

/// `f^(n)` with a common denominator; cached and shared across threads.
pub fn jones_wenzl_parts(n: usize) -> Arc<JonesWenzl> {
    let cache = JW_CACHE.get_or_init(|| {
        RwLock::new(vec![Arc::new(JonesWenzl {
            n: 0,
            den: LaurentPoly::one(),
            terms: vec![(Matching::identity(0), LaurentPoly::one())],
        })])
    });
    if let Some(f) = cache.read().unwrap().get(n) {
        return f.clone();
    }
    let mut w = cache.write().unwrap();
    while w.len() <= n {
        let next = jw_next(w.last().unwrap());
        w.push(Arc::new(next));
    }
    w[n].clone()
}

/// The Jones-Wenzl idempotent `f^(n)`.
pub fn jones_wenzl(n: usize) -> TLElement {
    jones_wenzl_parts(n).to_element()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub node: usize,
    pub top: bool,
    pub index: usize,
}

/// Closed crossing-free diagram of Jones-Wenzl boxes joined by arcs.
#[derive(Debug, Clone, Default)]
pub struct PlanarNetwork {
    widths: Vec<usize>,
    arcs: Vec<(Port, Port)>,
    circles: usize,
}

/// Default cap on the number of box expansions in [`network_evaluate`].
pub const DEFAULT_NETWORK_BUDGET: u128 = 5_000_000;

impl PlanarNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a box of the given width and returns its index.
    pub fn add_box(&mut self, width: usize) -> usize {
        self.widths.push(width);
        self.widths.len() - 1
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        self.arcs.push((a, b));
    }

    pub fn add_circles(&mut self, k: usize) {
        self.circles += k;
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn port(node: usize, top: bool, index: usize) -> Port {
        Port { node, top, index }
    }

    /// Dense numbering of ports: box `b` owns `2 w_b` slots.
    fn port_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.widths.len() + 1);
        let mut acc = 0;
        for &w in &self.widths {
            off.push(acc);
            acc += 2 * w;
        }
        off.push(acc);
        off
    }

    fn slot(&self, off: &[usize], p: Port) -> Option<usize> {
        let w = *self.widths.get(p.node)?;
        (p.index < w).then(|| off[p.node] + if p.top { w + p.index } else { p.index })
    }

    /// Every port carries exactly one arc.
    pub fn validate(&self) -> Result<(), TlError> {
        let off = self.port_offsets();
        let mut used = vec![0u8; off[self.widths.len()]];
        for &(a, b) in &self.arcs {
            for p in [a, b] {
                let s = self.slot(&off, p).ok_or_else(|| TlError::Network(format!("no such port {p:?}")))?;
                used[s] += 1;
            }
        }
        if let Some(s) = used.iter().position(|&u| u != 1) {
            return Err(TlError::Network(format!("port slot {s} has {} arcs", used[s])));
        }
        Ok(())
    }

    /// A single unknotted circle.
    pub fn circle() -> Self {
        let mut net = Self::new();
        net.add_circles(1);
        net
    }

    /// `f^(n)` with each top point joined to the bottom point below it.
    pub fn trace_closure(n: usize) -> Self {
        let mut net = Self::new();
        let b = net.add_box(n);
        for i in 0..n {
            net.connect(Self::port(b, true, i), Self::port(b, false, i));
        }
        net
    }

    /// Theta graph with edges colored `a`, `b`, `c` (an admissible triple).
    pub fn theta(a: usize, b: usize, c: usize) -> Self {
        assert!((a + b + c).is_multiple_of(2) && a <= b + c && b <= a + c && c <= a + b, "inadmissible triple");
        let x = (b + c - a) / 2;
        let y = (a + c - b) / 2;
        let z = (a + b - c) / 2;
        let mut net = Self::new();
        let (ba, bb, bc) = (net.add_box(a), net.add_box(b), net.add_box(c));
        for top in [true, false] {
            for k in 0..z {
                net.connect(Self::port(ba, top, a - 1 - k), Self::port(bb, top, k));
            }
            for k in 0..x {
                net.connect(Self::port(bb, top, b - 1 - k), Self::port(bc, top, k));
            }
            for k in 0..y {
                net.connect(Self::port(ba, top, k), Self::port(bc, top, c - 1 - k));
            }
        }
        net
    }

    /// Circle count once every box is replaced by the matching chosen for it.
    fn count_circles(&self, off: &[usize], choice: &[&Matching]) -> usize {
        let mut uf = UnionFind::new(off[self.widths.len()]);
        for &(a, b) in &self.arcs {
            uf.union(self.slot(off, a).unwrap(), self.slot(off, b).unwrap());
        }
        for (node, m) in choice.iter().enumerate() {
            let w = self.widths[node];
            // matching position p <-> box port
            let port = |p: usize| {
                if p < w {
                    off[node] + p
                } else {
                    off[node] + w + (2 * w - 1 - p)
                }
            };
            for p in 0..2 * w {
                let q = m.partner(p);
                if p < q {
                    uf.union(port(p), port(q));
                }
            }
        }
        let slots = off[self.widths.len()];
        let components = (0..slots).filter(|&s| uf.find(s) == s).count();
        // each circle through ports is one union-find class
        components + self.circles
    }
}

/// `-2` times the number of circles left when every box is the identity.
pub fn identity_replacement_degree(net: &PlanarNetwork) -> i64 {
    let off = net.port_offsets();
    let ids: Vec<Matching> = net.widths.iter().map(|&w| Matching::identity(w)).collect();
    let refs: Vec<&Matching> = ids.iter().collect();
    -2 * net.count_circles(&off, &refs) as i64
}

pub fn network_evaluate(net: &PlanarNetwork) -> Result<RationalFn, TlError> {
    network_evaluate_with_budget(net, DEFAULT_NETWORK_BUDGET)
}

/// Sums, over every way of expanding each box into matchings, the product of
/// the chosen coefficients times `δ^circles`.
pub fn network_evaluate_with_budget(net: &PlanarNetwork, limit: u128) -> Result<RationalFn, TlError> {
    net.validate()?;
    let expansions: Vec<Arc<JonesWenzl>> = net.widths.iter().map(|&w| jones_wenzl_parts(w)).collect();
    let terms = expansions.iter().fold(1u128, |acc, f| acc.saturating_mul(f.terms.len() as u128));
    if terms > limit {
        return Err(TlError::Budget { terms, limit });
    }
    // widest boxes first
    let mut order: Vec<usize> = (0..net.widths.len()).collect();
    order.sort_by_key(|&b| std::cmp::Reverse(net.widths[b]));
    let off = net.port_offsets();

    let mut by_circles: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    let identity = Matching::identity(0);
    let mut choice: Vec<&Matching> = vec![&identity; net.widths.len()];
    #[allow(clippy::too_many_arguments)]
    fn walk<'a>(
        depth: usize,
        coeff: LaurentPoly,
        order: &[usize],
        expansions: &'a [Arc<JonesWenzl>],
        choice: &mut Vec<&'a Matching>,
        net: &PlanarNetwork,
        off: &[usize],
        out: &mut BTreeMap<usize, LaurentPoly>,
    ) {
        if coeff.is_zero() {
            return;
        }
        if depth == order.len() {
            let k = net.count_circles(off, choice);
            *out.entry(k).or_insert_with(LaurentPoly::zero) += &coeff;
            return;
        }
        let node = order[depth];
        for (m, p) in &expansions[node].terms {
            choice[node] = m;
            walk(depth + 1, &coeff * p, order, expansions, choice, net, off, out);
        }
    }
    walk(0, LaurentPoly::one(), &order, &expansions, &mut choice, net, &off, &mut by_circles);

    let circle = circle_value();
    let mut num = LaurentPoly::zero();
    for (k, p) in by_circles {
        num += &(&p * &circle.pow(k as u32));
    }
    let den = expansions.iter().fold(LaurentPoly::one(), |acc, f| &acc * &f.den);
    Ok(RationalFn::new(num, den).expect("Jones-Wenzl denominators are nonzero"))
}
