//! Zigzag covers: detection, counting, existence, Bends and the factorial
//! lower bounds.
//!
//! A zigzag cover is detected in two independent ways: the primary test
//! collapses the odd symmetric cycles and forks (the red'' reduction) and
//! checks that no even inner edge remains; the structural test decomposes
//! the cover into an odd string S (a path between two odd leaves, a loop, or
//! a single hub vertex) with admissible tails hanging off it. Disagreement
//! between the two is a bug, and tests treat it as such.

use crate::cover::{FeatureKind, Node, TropicalCover};
use crate::error::{Error, Result};
use crate::partitions::{Partition, TailDecomposition};
use crate::rational::factorial;
use crate::{aggregate, require_not_excluded, Caps};
use num::bigint::{BigInt, BigUint};
use std::collections::HashMap;

/// True iff the cover has odd multiplicity: the reduction that removes odd
/// symmetric cycles and forks leaves no even inner edge.
pub fn is_zigzag(c: &TropicalCover) -> Result<bool> {
    require_not_excluded(&c.left_type(), &c.right_type(), c.genus)?;
    let red = c.reduce(crate::cover::ReductionMode::RedDblPrime)?;
    Ok(!red.edges.iter().any(|e| e.is_inner() && e.is_even()))
}

/// Independent structural test: odd string plus admissible tails.
pub fn is_zigzag_structural(c: &TropicalCover) -> Result<bool> {
    require_not_excluded(&c.left_type(), &c.right_type(), c.genus)?;
    Ok(analyze(c).is_some())
}

/// Z_g(lambda, mu): the number of zigzag covers, computed as the number of
/// classes with odd complex multiplicity.
pub fn zigzag_number(genus: u64, lambda: &Partition, mu: &Partition, caps: Caps) -> Result<u128> {
    require_not_excluded(lambda, mu, genus)?;
    Ok(aggregate::aggregate_covers(genus, lambda, mu, caps)?.odd_classes)
}

/// Existence of zigzag covers: the necessary condition l(lambda_0, mu_0) <= 2
/// minus three exceptional families.
pub fn zigzag_exists(genus: u64, lambda: &Partition, mu: &Partition) -> Result<bool> {
    require_not_excluded(lambda, mu, genus)?;
    let lt = lambda.tail_decomposition();
    let mt = mu.tail_decomposition();
    if lt.zero.len() + mt.zero.len() > 2 {
        return Ok(false);
    }
    let oo_or_zero_empty = |t: &TailDecomposition| t.oo.is_empty() && t.zero.is_empty();
    let odd_half_empty = |t: &TailDecomposition| t.two_o.is_empty() && t.oo.is_empty();
    match genus {
        0 => {
            let no_odd_data = oo_or_zero_empty(&lt) && oo_or_zero_empty(&mt);
            let even_tails =
                lt.two_e.len() + lt.two_o.len() + mt.two_e.len() + mt.two_o.len();
            Ok(!(no_odd_data && even_tails > 3))
        }
        1 => {
            let no_hosts = odd_half_empty(&lt) && odd_half_empty(&mt);
            let has_zero = !lt.zero.is_empty() || !mt.zero.is_empty();
            Ok(!(no_hosts && has_zero))
        }
        _ => Ok(!(odd_half_empty(&lt) && odd_half_empty(&mt))),
    }
}

/// Bends(k, lambda, mu): the maximal number of sign changes over all
/// sequences starting at k that add each part of lambda and subtract each
/// part of mu exactly once. Only defined when intermediate zeros cannot
/// occur, i.e. k odd and all parts even.
pub fn bends(k: i64, lambda: &Partition, mu: &Partition) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidInput("bends requires k != 0".into()));
    }
    if lambda.is_empty() && mu.is_empty() {
        return Ok(0);
    }
    if k.rem_euclid(2) == 0 || !lambda.is_even() || !mu.is_even() {
        return Err(Error::BendsParity { k });
    }
    let mut lam: Vec<u64> = lambda.parts().to_vec();
    let mut mu_: Vec<u64> = mu.parts().to_vec();
    let mut memo = HashMap::new();
    Ok(bends_rec(k, &mut lam, &mut mu_, &mut memo))
}

fn bends_rec(
    value: i64,
    lam: &mut Vec<u64>,
    mu: &mut Vec<u64>,
    memo: &mut HashMap<(i64, Vec<u64>, Vec<u64>), u64>,
) -> u64 {
    if lam.is_empty() && mu.is_empty() {
        return 0;
    }
    let key = (value, lam.clone(), mu.clone());
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let mut best = 0;
    for i in 0..lam.len() {
        if i > 0 && lam[i] == lam[i - 1] {
            continue;
        }
        let p = lam.remove(i);
        let next = value + p as i64;
        debug_assert!(next != 0);
        let change = u64::from((next > 0) != (value > 0));
        best = best.max(change + bends_rec(next, lam, mu, memo));
        lam.insert(i, p);
    }
    for i in 0..mu.len() {
        if i > 0 && mu[i] == mu[i - 1] {
            continue;
        }
        let p = mu.remove(i);
        let next = value - p as i64;
        debug_assert!(next != 0);
        let change = u64::from((next > 0) != (value > 0));
        best = best.max(change + bends_rec(next, lam, mu, memo));
        mu.insert(i, p);
    }
    memo.insert(key, best);
    best
}

fn fact(n: usize) -> BigUint {
    factorial(n as u64)
}

fn bend_factor(b: u64) -> BigUint {
    fact((b / 2) as usize) * fact(b.div_ceil(2) as usize)
}

/// The factorial lower bound for Z_g(lambda, mu), maximized over the
/// applicable cases and starting parts k.
pub fn lower_bound(genus: u64, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    require_not_excluded(lambda, mu, genus)?;
    let lt = lambda.tail_decomposition();
    let mt = mu.tail_decomposition();
    if lt.zero.len() + mt.zero.len() > 2 {
        return Err(Error::BoundHypotheses(
            "more than two unpaired odd parts".into(),
        ));
    }
    let l_tail = lt.tail();
    let m_tail = mt.tail();
    let oo_factor = fact(lt.oo.len()) * fact(mt.oo.len());

    let mut candidates: Vec<BigUint> = Vec::new();

    // case 1: a part k of lambda_0 or mu_0 weights one end of the string.
    // For positive genus the cycles need a repeated odd part to live on.
    if genus == 0 || !lt.oo.is_empty() || !mt.oo.is_empty() {
        for &k in lt.zero.parts() {
            let b = bends(k as i64, &l_tail.double(), &m_tail.double())?;
            candidates.push(oo_factor.clone() * bend_factor(b));
        }
        for &k in mt.zero.parts() {
            let b = bends(k as i64, &m_tail.double(), &l_tail.double())?;
            candidates.push(oo_factor.clone() * bend_factor(b));
        }
    }

    if lt.zero.is_empty() && mt.zero.is_empty() {
        if genus == 0 {
            // case 2: a part k of lambda_oo weights both string ends
            for &k in lt.oo.parts() {
                let rest = l_tail.remove_part(k).expect("k is a tail part");
                let b = bends(k as i64, &rest.double(), &m_tail.double())?;
                candidates
                    .push(fact(lt.oo.len() - 1) * fact(mt.oo.len()) * bend_factor(b));
            }
            for &k in mt.oo.parts() {
                let rest = m_tail.remove_part(k).expect("k is a tail part");
                let b = bends(k as i64, &rest.double(), &l_tail.double())?;
                candidates
                    .push(fact(mt.oo.len() - 1) * fact(lt.oo.len()) * bend_factor(b));
            }
        } else if !lt.oo.is_empty() || !mt.oo.is_empty() {
            // case 3: the string is a loop with a weight-one edge
            for (a, b) in [(&l_tail, &m_tail), (&m_tail, &l_tail)] {
                let bd = bends(1, &a.double(), &b.double())?;
                if bd % 2 != 0 {
                    return Err(Error::BoundHypotheses(
                        "loop case produced an odd number of bends".into(),
                    ));
                }
                let half = fact((bd / 2) as usize);
                candidates.push(oo_factor.clone() * half.clone() * half);
            }
        }
    }

    let best = candidates
        .into_iter()
        .max()
        .ok_or_else(|| Error::BoundHypotheses("no applicable case".into()))?;
    Ok(BigInt::from(best))
}

/// Tail and string statistics of a zigzag cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ZigzagStats {
    /// Tails of type (o,o) to the left / right.
    pub a_l: usize,
    pub a_r: usize,
    /// Bends of the string with the peak pointing left / right.
    pub b_l: usize,
    pub b_r: usize,
    /// Unbent string vertices.
    pub c: usize,
    /// Symmetric cycles on tails to the left / right.
    pub g_l: usize,
    pub g_r: usize,
}

impl ZigzagStats {
    /// Reads the statistics off a zigzag cover.
    pub fn of_cover(c: &TropicalCover) -> Result<ZigzagStats> {
        require_not_excluded(&c.left_type(), &c.right_type(), c.genus)?;
        analyze(c).ok_or_else(|| Error::InvalidInput("not a zigzag cover".into()))
    }
}

/// a_l! * a_r! * b_l! * b_r!, the number of unmixed orderings.
pub fn unmixed_ordering_count(stats: &ZigzagStats) -> BigInt {
    BigInt::from(fact(stats.a_l) * fact(stats.a_r) * fact(stats.b_l) * fact(stats.b_r))
}

/// Structural decomposition into string and tails; `None` when the cover is
/// not a zigzag cover.
fn analyze(c: &TropicalCover) -> Option<ZigzagStats> {
    // zigzag covers contain no even symmetric cycles or forks
    let features = c.symmetric_features();
    if features.iter().any(|f| !f.is_odd()) {
        return None;
    }
    let mut in_feature = vec![false; c.edges.len()];
    for f in &features {
        in_feature[f.edges.0] = true;
        in_feature[f.edges.1] = true;
    }

    // string edges: odd edges outside symmetric pairs
    let s_edges: Vec<usize> = (0..c.edges.len())
        .filter(|&i| c.edges[i].is_odd() && !in_feature[i])
        .collect();

    // classify vertices
    #[derive(Clone, Copy, PartialEq)]
    enum VKind {
        String,
        CycleEnd(usize),
        ForkEnd,
        AllEven,
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); c.num_vertices];
    for (i, e) in c.edges.iter().enumerate() {
        for n in [e.source, e.target] {
            if let Node::Inner(v) = n {
                incident[v].push(i);
            }
        }
    }
    let mut kind = vec![None; c.num_vertices];
    for v in 0..c.num_vertices {
        let odd_plain = incident[v]
            .iter()
            .filter(|&&i| c.edges[i].is_odd() && !in_feature[i])
            .count();
        let odd_feat: Vec<usize> = incident[v]
            .iter()
            .copied()
            .filter(|&i| in_feature[i])
            .collect();
        kind[v] = Some(if odd_plain == 2 {
            VKind::String
        } else if !odd_feat.is_empty() {
            let fi = features
                .iter()
                .position(|f| f.edges.0 == odd_feat[0] || f.edges.1 == odd_feat[0])?;
            match features[fi].kind {
                FeatureKind::Cycle => VKind::CycleEnd(fi),
                FeatureKind::Fork => VKind::ForkEnd,
            }
        } else if odd_plain == 0 {
            VKind::AllEven
        } else {
            return None;
        });
    }

    // the string must be connected: one block of odd plain edges, or none
    // and then a unique all-even hub
    let hub = (0..c.num_vertices).find(|&v| kind[v] == Some(VKind::AllEven));
    if s_edges.is_empty() {
        hub?;
    } else if hub.is_some() {
        return None;
    }
    if (0..c.num_vertices)
        .filter(|&v| kind[v] == Some(VKind::AllEven))
        .count()
        > 1
    {
        return None;
    }
    if !s_edges.is_empty() {
        let mut seen = vec![false; s_edges.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, other) in s_edges.iter().enumerate() {
                if seen[j] {
                    continue;
                }
                let (a, b) = (c.edges[s_edges[i]], c.edges[*other]);
                let shares = [a.source, a.target]
                    .iter()
                    .any(|n| n.is_inner() && (b.source == *n || b.target == *n));
                if shares {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return None;
        }
    }

    // walk the even chains: support edges linked through odd symmetric
    // cycles, anchored on the string (or hub) exactly once and terminated by
    // a graph end or an odd symmetric fork
    let supports: Vec<usize> = (0..c.edges.len())
        .filter(|&i| c.edges[i].is_even() && !in_feature[i])
        .collect();
    #[derive(Clone, Copy, PartialEq)]
    enum ChainEnd {
        Anchor,
        LeftTerm(bool), // terminator towards -inf; true if it is a fork
        RightTerm(bool),
    }
    // union-find over support edges
    let mut parent: Vec<usize> = (0..supports.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut cycle_support: Vec<Vec<usize>> = vec![Vec::new(); features.len()];
    let mut ends_of: HashMap<usize, Vec<ChainEnd>> = HashMap::new();
    let mut cycles_of: HashMap<usize, usize> = HashMap::new();
    for (slot, &i) in supports.iter().enumerate() {
        let e = c.edges[i];
        for (node, leftward) in [(e.source, true), (e.target, false)] {
            let end = match node {
                Node::LeftEnd => Some(ChainEnd::LeftTerm(false)),
                Node::RightEnd => Some(ChainEnd::RightTerm(false)),
                Node::Inner(v) => match kind[v]? {
                    VKind::String | VKind::AllEven => Some(ChainEnd::Anchor),
                    VKind::ForkEnd => {
                        // the fork points away from the support edge
                        let fork_vertex_on_source_side = leftward;
                        Some(if fork_vertex_on_source_side {
                            ChainEnd::LeftTerm(true)
                        } else {
                            ChainEnd::RightTerm(true)
                        })
                    }
                    VKind::CycleEnd(fi) => {
                        if features[fi].weight * 2 != e.weight {
                            return None;
                        }
                        cycle_support[fi].push(slot);
                        None
                    }
                },
            };
            if let Some(end) = end {
                let root = find(&mut parent, slot);
                ends_of.entry(root).or_default().push(end);
            }
        }
    }
    for (fi, f) in features.iter().enumerate() {
        match f.kind {
            FeatureKind::Cycle => {
                // every cycle links exactly two support edges
                if cycle_support[fi].len() != 2 {
                    return None;
                }
                let (a, b) = (cycle_support[fi][0], cycle_support[fi][1]);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return None;
                }
                let ea = ends_of.remove(&ra).unwrap_or_default();
                let eb = ends_of.entry(rb).or_default();
                eb.extend(ea);
                let mut count_a = cycles_of.remove(&ra).unwrap_or(0);
                count_a += 1 + cycles_of.remove(&rb).unwrap_or(0);
                parent[ra] = rb;
                let root = find(&mut parent, rb);
                cycles_of.insert(root, count_a);
            }
            FeatureKind::Fork => {}
        }
    }

    let mut stats = ZigzagStats::default();
    let mut chain_roots: Vec<usize> = supports
        .iter()
        .enumerate()
        .map(|(s, _)| find(&mut parent, s))
        .collect();
    chain_roots.sort_unstable();
    chain_roots.dedup();
    for root in chain_roots {
        let ends = ends_of.get(&root)?;
        if ends.len() != 2 {
            return None;
        }
        let anchors = ends.iter().filter(|&&e| e == ChainEnd::Anchor).count();
        if anchors != 1 {
            return None;
        }
        let cyc = cycles_of.get(&root).copied().unwrap_or(0);
        let term = ends.iter().find(|&&e| e != ChainEnd::Anchor).unwrap();
        match term {
            ChainEnd::LeftTerm(fork) => {
                if *fork {
                    stats.a_l += 1;
                }
                stats.g_l += cyc;
            }
            ChainEnd::RightTerm(fork) => {
                if *fork {
                    stats.a_r += 1;
                }
                stats.g_r += cyc;
            }
            ChainEnd::Anchor => unreachable!(),
        }
    }

    // bends of the string
    if let Some(_) = hub {
        stats.c = 1;
    } else {
        for v in 0..c.num_vertices {
            if kind[v] != Some(VKind::String) {
                continue;
            }
            let incoming = incident[v]
                .iter()
                .filter(|&&i| {
                    c.edges[i].is_odd() && !in_feature[i] && c.edges[i].target == Node::Inner(v)
                })
                .count();
            match incoming {
                2 => stats.b_r += 1,
                0 => stats.b_l += 1,
                _ => stats.c += 1,
            }
        }
    }
    Some(stats)
}

// --- witness construction ------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Anchor {
    L,
    R,
    V(usize),
}

/// Builds a cover from oriented weighted arcs by topologically ordering the
/// inner vertices.
struct Builder {
    n: usize,
    arcs: Vec<(Anchor, Anchor, u64)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            n: 0,
            arcs: Vec::new(),
        }
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn arc(&mut self, a: Anchor, b: Anchor, w: u64) {
        self.arcs.push((a, b, w));
    }

    fn finish(self, genus: u64) -> Result<TropicalCover> {
        // Kahn's algorithm, preferring small ids for determinism
        let mut indegree = vec![0usize; self.n];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b, _) in &self.arcs {
            if let (Anchor::V(x), Anchor::V(y)) = (a, b) {
                succs[x].push(y);
                indegree[y] += 1;
            }
        }
        let mut order = Vec::with_capacity(self.n);
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| indegree[v] == 0).collect();
        while let Some(&v) = ready.iter().min() {
            ready.retain(|&x| x != v);
            order.push(v);
            for &w in &succs[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if order.len() != self.n {
            return Err(Error::InvalidInput(
                "witness construction produced an oriented loop".into(),
            ));
        }
        let mut position = vec![0usize; self.n];
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
        }
        let map = |a: Anchor| match a {
            Anchor::L => Node::LeftEnd,
            Anchor::R => Node::RightEnd,
            Anchor::V(v) => Node::Inner(position[v]),
        };
        let edges = self
            .arcs
            .iter()
            .map(|&(a, b, w)| crate::cover::Edge {
                source: map(a),
                target: map(b),
                weight: w,
            })
            .collect();
        let cover = TropicalCover::new(genus, self.n, edges);
        cover.validate()?;
        Ok(cover)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

struct TailSpec {
    side: Side,
    half: u64,
    cycles: usize,
    fork: bool,
}

impl TailSpec {
    fn delta(&self) -> i64 {
        let w = 2 * self.half as i64;
        match self.side {
            Side::Left => w,
            Side::Right => -w,
        }
    }
}

/// Attaches a tail to `anchor`: a chain of support edges of weight 2*half
/// through `cycles` symmetric cycles, ending in an odd fork (two leaves of
/// weight half) or a bare leaf of weight 2*half.
fn add_tail(b: &mut Builder, anchor: usize, spec: &TailSpec) {
    let w = 2 * spec.half;
    match spec.side {
        Side::Left => {
            let mut prev: Option<usize> = None;
            if spec.fork {
                let f = b.vertex();
                b.arc(Anchor::L, Anchor::V(f), spec.half);
                b.arc(Anchor::L, Anchor::V(f), spec.half);
                prev = Some(f);
            }
            for _ in 0..spec.cycles {
                let u = b.vertex();
                let v = b.vertex();
                match prev {
                    Some(p) => b.arc(Anchor::V(p), Anchor::V(u), w),
                    None => b.arc(Anchor::L, Anchor::V(u), w),
                }
                b.arc(Anchor::V(u), Anchor::V(v), spec.half);
                b.arc(Anchor::V(u), Anchor::V(v), spec.half);
                prev = Some(v);
            }
            match prev {
                Some(p) => b.arc(Anchor::V(p), Anchor::V(anchor), w),
                None => b.arc(Anchor::L, Anchor::V(anchor), w),
            }
        }
        Side::Right => {
            let mut prev = anchor;
            for _ in 0..spec.cycles {
                let u = b.vertex();
                let v = b.vertex();
                b.arc(Anchor::V(prev), Anchor::V(u), w);
                b.arc(Anchor::V(u), Anchor::V(v), spec.half);
                b.arc(Anchor::V(u), Anchor::V(v), spec.half);
                prev = v;
            }
            if spec.fork {
                let f = b.vertex();
                b.arc(Anchor::V(prev), Anchor::V(f), w);
                b.arc(Anchor::V(f), Anchor::R, spec.half);
                b.arc(Anchor::V(f), Anchor::R, spec.half);
            } else {
                b.arc(Anchor::V(prev), Anchor::R, w);
            }
        }
    }
}

/// Reflects a cover along a vertical line: ends and edge directions swap and
/// the vertex order reverses.
fn mirror(c: &TropicalCover) -> TropicalCover {
    let r = c.num_vertices;
    let flip = |n: Node| match n {
        Node::LeftEnd => Node::RightEnd,
        Node::RightEnd => Node::LeftEnd,
        Node::Inner(i) => Node::Inner(r - 1 - i),
    };
    let edges = c
        .edges
        .iter()
        .map(|e| crate::cover::Edge {
            source: flip(e.target),
            target: flip(e.source),
            weight: e.weight,
        })
        .collect();
    TropicalCover::new(c.genus, r, edges)
}

/// Builds one zigzag cover of the requested type following the sufficiency
/// construction: a string graph with its ends weighted by (lambda_0, mu_0)
/// or a repeated (o,o) part, or glued into a loop, with a tail per remaining
/// part and all extra genus as symmetric cycles on an (o,o) tail.
pub fn construct_zigzag_witness(
    genus: u64,
    lambda: &Partition,
    mu: &Partition,
) -> Result<TropicalCover> {
    require_not_excluded(lambda, mu, genus)?;
    let lt = lambda.tail_decomposition();
    let mt = mu.tail_decomposition();
    let l0 = lt.zero.len() + mt.zero.len();
    if l0 > 2 {
        return Err(Error::BoundHypotheses(
            "witness construction needs l(lambda_0, mu_0) <= 2".into(),
        ));
    }
    if l0 == 0 && lt.oo.is_empty() && mt.oo.is_empty() {
        return Err(Error::BoundHypotheses(
            "witness construction needs a repeated odd part to weight the string ends".into(),
        ));
    }

    // normalize so that the distinguished data sits on the lambda side
    let needs_mirror = if l0 > 0 {
        lt.zero.is_empty()
    } else {
        lt.oo.is_empty()
    };
    if needs_mirror {
        let witness = construct_zigzag_witness(genus, mu, lambda)?;
        let mirrored = mirror(&witness);
        mirrored.validate()?;
        return Ok(mirrored);
    }

    // string ends and the parts consumed by them
    let mut left_oo: Vec<u64> = lt.oo.parts().to_vec();
    let right_oo: Vec<u64> = mt.oo.parts().to_vec();
    let (ends, is_loop) = if l0 == 2 {
        let mut zero: Vec<(u64, Side)> =
            lt.zero.parts().iter().map(|&p| (p, Side::Left)).collect();
        zero.extend(mt.zero.parts().iter().map(|&p| (p, Side::Right)));
        (Some((zero[0], zero[1])), false)
    } else if left_oo.len() + right_oo.len() > 1 || genus == 0 {
        let alpha = left_oo.remove(0);
        (Some(((alpha, Side::Left), (alpha, Side::Left))), false)
    } else {
        (None, true)
    };

    // tails: (o,o) parts first so that cycles land on the first left tail
    let mut tails: Vec<TailSpec> = Vec::new();
    for &p in &left_oo {
        tails.push(TailSpec {
            side: Side::Left,
            half: p,
            cycles: 0,
            fork: true,
        });
    }
    for &p in lt.two_o.parts().iter().chain(lt.two_e.parts()) {
        tails.push(TailSpec {
            side: Side::Left,
            half: p,
            cycles: 0,
            fork: false,
        });
    }
    for &p in &right_oo {
        tails.push(TailSpec {
            side: Side::Right,
            half: p,
            cycles: 0,
            fork: true,
        });
    }
    for &p in mt.two_o.parts().iter().chain(mt.two_e.parts()) {
        tails.push(TailSpec {
            side: Side::Right,
            half: p,
            cycles: 0,
            fork: false,
        });
    }

    let free_genus = if is_loop { genus.saturating_sub(1) } else { genus };
    if free_genus > 0 {
        // cycles of weight half need an odd half: an (o,o) fork tail or a
        // 2o leaf tail
        let host_idx = tails
            .iter()
            .position(|t| t.fork)
            .or_else(|| tails.iter().position(|t| t.half % 2 == 1))
            .ok_or_else(|| Error::BoundHypotheses("no tail can host the genus".into()))?;
        let host = &mut tails[host_idx];
        host.cycles = free_genus as usize;
    }

    let mut b = Builder::new();
    let m = tails.len();
    if m == 0 {
        return Err(Error::BoundHypotheses(
            "the construction needs at least one tail".into(),
        ));
    }
    let anchors: Vec<usize> = (0..m).map(|_| b.vertex()).collect();
    for (j, t) in tails.iter().enumerate() {
        add_tail(&mut b, anchors[j], t);
    }

    // string edges by balancing; all running values are odd, hence non-zero
    let seg = |b: &mut Builder, from: usize, to: usize, v: i64| {
        if v > 0 {
            b.arc(Anchor::V(from), Anchor::V(to), v as u64);
        } else {
            b.arc(Anchor::V(to), Anchor::V(from), (-v) as u64);
        }
    };
    if is_loop {
        // sort the negative steps first so the orientation changes sign
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&j| (tails[j].delta() > 0, j));
        let mut v = 1i64;
        for w in order.windows(2) {
            v += tails[w[0]].delta();
            seg(&mut b, anchors[w[0]], anchors[w[1]], v);
        }
        // the gluing edge of weight one closes the loop
        b.arc(
            Anchor::V(anchors[*order.last().unwrap()]),
            Anchor::V(anchors[order[0]]),
            1,
        );
    } else {
        let ((w0, s0), (w1, s1)) = ends.unwrap();
        match s0 {
            Side::Left => b.arc(Anchor::L, Anchor::V(anchors[0]), w0),
            Side::Right => b.arc(Anchor::V(anchors[0]), Anchor::R, w0),
        }
        match s1 {
            Side::Left => b.arc(Anchor::L, Anchor::V(anchors[m - 1]), w1),
            Side::Right => b.arc(Anchor::V(anchors[m - 1]), Anchor::R, w1),
        }
        let mut v = match s0 {
            Side::Left => w0 as i64,
            Side::Right => -(w0 as i64),
        };
        for j in 0..m - 1 {
            v += tails[j].delta();
            seg(&mut b, anchors[j], anchors[j + 1], v);
        }
    }

    let witness = b.finish(genus)?;
    if witness.left_type() != *lambda || witness.right_type() != *mu {
        return Err(Error::InvalidInput(
            "witness construction produced the wrong ramification type".into(),
        ));
    }
    if !is_zigzag(&witness)? {
        return Err(Error::InvalidInput(
            "witness construction produced a non-zigzag cover".into(),
        ));
    }
    Ok(witness)
}
