//! Tropical covers of the line as combinatorial objects: weighted oriented
//! three-valent graphs with totally ordered inner vertices.
//!
//! The inner vertex at position `i` sits over the i-th branch point, so an
//! isomorphism of covers fixes every inner vertex. An isomorphism class is
//! therefore determined by the multiset of edges `(source, target, weight)`
//! with anonymous ends, which is what we store (sorted, as the canonical
//! encoding).

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rational::Rational;
use num::bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Endpoint of an edge: a left end (over -inf), an inner vertex, or a right
/// end (over +inf). Ends are anonymous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Node {
    LeftEnd,
    Inner(usize),
    RightEnd,
}

impl Node {
    pub fn is_inner(&self) -> bool {
        matches!(self, Node::Inner(_))
    }
}

/// Oriented weighted edge; orientation goes from smaller to larger image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: Node,
    pub target: Node,
    pub weight: u64,
}

impl Edge {
    pub fn is_inner(&self) -> bool {
        self.source.is_inner() && self.target.is_inner()
    }

    pub fn is_leaf(&self) -> bool {
        !self.is_inner()
    }

    pub fn is_even(&self) -> bool {
        self.weight % 2 == 0
    }

    pub fn is_odd(&self) -> bool {
        self.weight % 2 == 1
    }

    pub fn touches(&self, v: usize) -> bool {
        self.source == Node::Inner(v) || self.target == Node::Inner(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureKind {
    Cycle,
    Fork,
}

/// A symmetric cycle or fork: a pair of parallel inner edges, or a pair of
/// leaves sharing a vertex and direction, with equal weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricFeature {
    pub kind: FeatureKind,
    pub weight: u64,
    /// Indices into `TropicalCover::edges` of the two member edges.
    pub edges: (usize, usize),
}

impl SymmetricFeature {
    pub fn is_odd(&self) -> bool {
        self.weight % 2 == 1
    }
}

/// Which symmetric features a reduction collapses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    /// All symmetric cycles and the odd symmetric forks.
    Red,
    /// Additionally the even symmetric forks.
    RedPrime,
    /// Only odd symmetric cycles and odd symmetric forks.
    RedDblPrime,
}

/// A tropical cover up to isomorphism.
///
/// `edges` is kept sorted; two values compare equal iff the covers are
/// isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TropicalCover {
    pub genus: u64,
    /// Number of inner vertices (the branch count r).
    pub num_vertices: usize,
    pub edges: Vec<Edge>,
}

impl TropicalCover {
    pub fn new(genus: u64, num_vertices: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        TropicalCover {
            genus,
            num_vertices,
            edges,
        }
    }

    /// Leaf weights over -inf, as a partition.
    pub fn left_type(&self) -> Partition {
        Partition::new(
            self.edges
                .iter()
                .filter(|e| e.source == Node::LeftEnd)
                .map(|e| e.weight)
                .collect(),
        )
    }

    /// Leaf weights over +inf, as a partition.
    pub fn right_type(&self) -> Partition {
        Partition::new(
            self.edges
                .iter()
                .filter(|e| e.target == Node::RightEnd)
                .map(|e| e.weight)
                .collect(),
        )
    }

    pub fn degree(&self) -> u64 {
        self.left_type().weight()
    }

    /// Checks all structural invariants: three-valence, balancing,
    /// orientation compatibility, connectivity and first Betti number.
    pub fn validate(&self) -> Result<()> {
        let r = self.num_vertices;
        let fail = |msg: String| Err(Error::InvalidInput(format!("invalid cover: {msg}")));

        let mut in_weight = vec![0u64; r];
        let mut out_weight = vec![0u64; r];
        let mut valence = vec![0usize; r];
        let mut num_ends = 0usize;
        for e in &self.edges {
            if e.weight == 0 {
                return fail("zero weight edge".into());
            }
            match (e.source, e.target) {
                (Node::LeftEnd, Node::RightEnd) => return fail("edge spanning both ends".into()),
                (Node::RightEnd, _) | (_, Node::LeftEnd) => {
                    return fail("edge oriented against the line".into())
                }
                (Node::Inner(a), Node::Inner(b)) => {
                    if a >= b {
                        return fail(format!("edge {a} -> {b} violates the vertex order"));
                    }
                    if a >= r || b >= r {
                        return fail("vertex index out of range".into());
                    }
                    out_weight[a] += e.weight;
                    in_weight[b] += e.weight;
                    valence[a] += 1;
                    valence[b] += 1;
                }
                (Node::LeftEnd, Node::Inner(b)) => {
                    if b >= r {
                        return fail("vertex index out of range".into());
                    }
                    in_weight[b] += e.weight;
                    valence[b] += 1;
                    num_ends += 1;
                }
                (Node::Inner(a), Node::RightEnd) => {
                    if a >= r {
                        return fail("vertex index out of range".into());
                    }
                    out_weight[a] += e.weight;
                    valence[a] += 1;
                    num_ends += 1;
                }
            }
        }
        for v in 0..r {
            if valence[v] != 3 {
                return fail(format!("vertex {v} has valence {}", valence[v]));
            }
            if in_weight[v] == 0 || out_weight[v] == 0 {
                return fail(format!("vertex {v} has no incoming or no outgoing edge"));
            }
            if in_weight[v] != out_weight[v] {
                return fail(format!(
                    "vertex {v} unbalanced: in {} vs out {}",
                    in_weight[v], out_weight[v]
                ));
            }
        }

        // connectivity over inner vertices and anonymous end nodes
        let total_nodes = r + num_ends;
        let mut dsu = Dsu::new(total_nodes);
        let mut end_cursor = r;
        for e in &self.edges {
            let a = match e.source {
                Node::Inner(i) => i,
                _ => {
                    end_cursor += 1;
                    end_cursor - 1
                }
            };
            let b = match e.target {
                Node::Inner(i) => i,
                _ => {
                    end_cursor += 1;
                    end_cursor - 1
                }
            };
            dsu.union(a, b);
        }
        if total_nodes > 0 {
            let root = dsu.find(0);
            if (1..total_nodes).any(|i| dsu.find(i) != root) {
                return fail("disconnected graph".into());
            }
        }

        // first Betti number
        let betti = self.edges.len() as i64 - total_nodes as i64 + 1;
        if betti != self.genus as i64 {
            return fail(format!("Betti number {betti} != genus {}", self.genus));
        }

        // r = l(lambda) + l(mu) + 2g - 2
        let expected_r =
            self.left_type().len() as i64 + self.right_type().len() as i64 + 2 * self.genus as i64
                - 2;
        if r as i64 != expected_r {
            return fail(format!("vertex count {r} != l+l+2g-2 = {expected_r}"));
        }
        Ok(())
    }

    /// All symmetric cycles and symmetric forks (both parities).
    pub fn symmetric_features(&self) -> Vec<SymmetricFeature> {
        let mut out = Vec::new();
        // edges are sorted, so members of a pair are adjacent
        let mut i = 0;
        while i < self.edges.len() {
            let e = self.edges[i];
            if i + 1 < self.edges.len() && self.edges[i + 1] == e {
                let kind = if e.is_inner() {
                    FeatureKind::Cycle
                } else {
                    FeatureKind::Fork
                };
                out.push(SymmetricFeature {
                    kind,
                    weight: e.weight,
                    edges: (i, i + 1),
                });
                i += 2;
            } else {
                i += 1;
            }
        }
        out
    }

    /// SCF: symmetric cycles plus symmetric odd forks. Even forks are
    /// excluded by convention.
    pub fn scf(&self) -> Vec<SymmetricFeature> {
        self.symmetric_features()
            .into_iter()
            .filter(|f| f.kind == FeatureKind::Cycle || f.is_odd())
            .collect()
    }

    /// SC: symmetric cycles only.
    pub fn sc(&self) -> Vec<SymmetricFeature> {
        self.symmetric_features()
            .into_iter()
            .filter(|f| f.kind == FeatureKind::Cycle)
            .collect()
    }

    /// EI: even inner edges not contained in a symmetric cycle, as indices
    /// into `edges`.
    pub fn even_inner_edges(&self) -> Vec<usize> {
        let cycles: Vec<(usize, usize)> = self
            .sc()
            .into_iter()
            .map(|f| f.edges)
            .collect();
        let in_cycle = |i: usize| cycles.iter().any(|&(a, b)| i == a || i == b);
        (0..self.edges.len())
            .filter(|&i| self.edges[i].is_inner() && self.edges[i].is_even() && !in_cycle(i))
            .collect()
    }

    /// |Aut| = 2^(symmetric cycles + symmetric forks of both parities).
    pub fn automorphism_count(&self) -> u64 {
        1u64 << self.symmetric_features().len()
    }

    /// Product of inner edge weights divided by |Aut|.
    pub fn mult_complex(&self) -> Rational {
        let mut prod = BigInt::from(1);
        for e in &self.edges {
            if e.is_inner() {
                prod *= BigInt::from(e.weight);
            }
        }
        Rational::new(prod, BigInt::from(self.automorphism_count()))
    }

    /// Collapses the symmetric features selected by `mode` into single edges
    /// or leaves of twice the weight, then smooths the two-valent vertices
    /// this creates.
    pub fn reduce(&self, mode: ReductionMode) -> Result<TropicalCover> {
        let selected: Vec<SymmetricFeature> = self
            .symmetric_features()
            .into_iter()
            .filter(|f| match mode {
                ReductionMode::Red => f.kind == FeatureKind::Cycle || f.is_odd(),
                ReductionMode::RedPrime => true,
                ReductionMode::RedDblPrime => f.is_odd(),
            })
            .collect();

        let drop: std::collections::HashSet<usize> = selected
            .iter()
            .flat_map(|f| [f.edges.0, f.edges.1])
            .collect();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, e)| *e)
            .collect();
        let mut removed_cycles = 0u64;
        for f in &selected {
            let e = self.edges[f.edges.0];
            match f.kind {
                FeatureKind::Cycle => {
                    removed_cycles += 1;
                    edges.push(Edge {
                        source: e.source,
                        target: e.target,
                        weight: 2 * e.weight,
                    });
                }
                FeatureKind::Fork => {
                    // the replacement leaf keeps the fork's direction
                    edges.push(Edge {
                        source: e.source,
                        target: e.target,
                        weight: 2 * e.weight,
                    });
                }
            }
        }

        // smooth two-valent vertices
        loop {
            let mut valence = vec![0usize; self.num_vertices];
            for e in &edges {
                if let Node::Inner(a) = e.source {
                    valence[a] += 1;
                }
                if let Node::Inner(b) = e.target {
                    valence[b] += 1;
                }
            }
            let Some(v) = (0..self.num_vertices).find(|&v| valence[v] == 2) else {
                break;
            };
            let incident: Vec<usize> = (0..edges.len())
                .filter(|&i| edges[i].touches(v))
                .collect();
            // a two-valent vertex has one incoming and one outgoing edge of
            // equal weight; merge them
            let (i, j) = (incident[0], incident[1]);
            let (inc, out) = if edges[i].target == Node::Inner(v) {
                (edges[i], edges[j])
            } else {
                (edges[j], edges[i])
            };
            if inc.target != Node::Inner(v) || out.source != Node::Inner(v) {
                return Err(Error::InvalidInput(
                    "reduction produced a vertex without through-flow".into(),
                ));
            }
            let merged = Edge {
                source: inc.source,
                target: out.target,
                weight: inc.weight,
            };
            if merged.source == Node::LeftEnd && merged.target == Node::RightEnd {
                return Err(Error::InvalidInput(
                    "reduction collapsed the cover to the bare line".into(),
                ));
            }
            let mut keep: Vec<Edge> = edges
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, e)| *e)
                .collect();
            keep.push(merged);
            edges = keep;
        }

        // renumber surviving vertices, preserving order
        let mut used: Vec<usize> = Vec::new();
        for e in &edges {
            for n in [e.source, e.target] {
                if let Node::Inner(v) = n {
                    if !used.contains(&v) {
                        used.push(v);
                    }
                }
            }
        }
        used.sort_unstable();
        let renum = |n: Node| match n {
            Node::Inner(v) => Node::Inner(used.binary_search(&v).unwrap()),
            other => other,
        };
        let edges: Vec<Edge> = edges
            .iter()
            .map(|e| Edge {
                source: renum(e.source),
                target: renum(e.target),
                weight: e.weight,
            })
            .collect();

        let reduced = TropicalCover::new(self.genus - removed_cycles, used.len(), edges);
        reduced.validate()?;
        Ok(reduced)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{format_rational, rat_from_u64};

    /// The unique cover of type (3) -> (1,1,1), genus 0: split 3 into (1,2)
    /// at v0, then 2 into (1,1) at v1 (an odd symmetric fork).
    pub(crate) fn tripod_chain() -> TropicalCover {
        TropicalCover::new(
            0,
            2,
            vec![
                Edge {
                    source: Node::LeftEnd,
                    target: Node::Inner(0),
                    weight: 3,
                },
                Edge {
                    source: Node::Inner(0),
                    target: Node::RightEnd,
                    weight: 1,
                },
                Edge {
                    source: Node::Inner(0),
                    target: Node::Inner(1),
                    weight: 2,
                },
                Edge {
                    source: Node::Inner(1),
                    target: Node::RightEnd,
                    weight: 1,
                },
                Edge {
                    source: Node::Inner(1),
                    target: Node::RightEnd,
                    weight: 1,
                },
            ],
        )
    }

    #[test]
    fn tripod_chain_is_valid() {
        let c = tripod_chain();
        c.validate().unwrap();
        assert_eq!(c.left_type(), Partition::new(vec![3]));
        assert_eq!(c.right_type(), Partition::new(vec![1, 1, 1]));
        assert_eq!(c.degree(), 3);
    }

    #[test]
    fn tripod_chain_features() {
        let c = tripod_chain();
        let feats = c.symmetric_features();
        assert_eq!(feats.len(), 1);
        assert_eq!(feats[0].kind, FeatureKind::Fork);
        assert_eq!(feats[0].weight, 1);
        assert_eq!(c.scf().len(), 1);
        assert!(c.sc().is_empty());
        assert_eq!(c.even_inner_edges().len(), 1);
        assert_eq!(c.automorphism_count(), 2);
        assert_eq!(format_rational(&c.mult_complex()), "1");
    }

    #[test]
    fn tripod_chain_reduces_to_fork_free_cover() {
        let c = tripod_chain();
        let red = c.reduce(ReductionMode::Red).unwrap();
        red.validate().unwrap();
        assert_eq!(red.num_vertices, 1);
        assert_eq!(red.left_type(), Partition::new(vec![3]));
        assert_eq!(red.right_type(), Partition::new(vec![2, 1]));
        assert!(red.scf().is_empty());
        assert!(red.even_inner_edges().is_empty());
        // |EI| drops by |SCF|
        assert_eq!(
            red.even_inner_edges().len(),
            c.even_inner_edges().len() - c.scf().len()
        );
    }

    #[test]
    fn reduce_is_identity_without_features() {
        // (2,1) -> (2,1) join-then-split: 2+1 -> 3 -> 2+1
        let c = TropicalCover::new(
            0,
            2,
            vec![
                Edge {
                    source: Node::LeftEnd,
                    target: Node::Inner(0),
                    weight: 2,
                },
                Edge {
                    source: Node::LeftEnd,
                    target: Node::Inner(0),
                    weight: 1,
                },
                Edge {
                    source: Node::Inner(0),
                    target: Node::Inner(1),
                    weight: 3,
                },
                Edge {
                    source: Node::Inner(1),
                    target: Node::RightEnd,
                    weight: 2,
                },
                Edge {
                    source: Node::Inner(1),
                    target: Node::RightEnd,
                    weight: 1,
                },
            ],
        );
        c.validate().unwrap();
        assert!(c.scf().is_empty());
        assert_eq!(c.reduce(ReductionMode::Red).unwrap(), c);
        assert_eq!(c.mult_complex(), rat_from_u64(3));
    }

    /// Genus 1 cover of (2,1,1) -> (2,1,1) whose only feature is an odd
    /// symmetric cycle of weight 1 opened at v0 and closed at v1.
    pub(crate) fn odd_cycle_cover() -> TropicalCover {
        let mk = |source, target, weight| Edge {
            source,
            target,
            weight,
        };
        TropicalCover::new(
            1,
            6,
            vec![
                mk(Node::LeftEnd, Node::Inner(0), 2),
                mk(Node::Inner(0), Node::Inner(1), 1),
                mk(Node::Inner(0), Node::Inner(1), 1),
                mk(Node::Inner(1), Node::Inner(2), 2),
                mk(Node::LeftEnd, Node::Inner(2), 1),
                mk(Node::Inner(2), Node::Inner(3), 3),
                mk(Node::Inner(3), Node::RightEnd, 1),
                mk(Node::Inner(3), Node::Inner(4), 2),
                mk(Node::LeftEnd, Node::Inner(4), 1),
                mk(Node::Inner(4), Node::Inner(5), 3),
                mk(Node::Inner(5), Node::RightEnd, 2),
                mk(Node::Inner(5), Node::RightEnd, 1),
            ],
        )
    }

    #[test]
    fn symmetric_cycle_detection_and_reduction() {
        let c = odd_cycle_cover();
        c.validate().unwrap();
        let cycles = c.sc();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].weight, 1);
        assert_eq!(c.symmetric_features().len(), 1);
        assert_eq!(c.scf().len(), 1);
        assert_eq!(c.even_inner_edges().len(), 2);

        let red = c.reduce(ReductionMode::Red).unwrap();
        assert_eq!(red.genus, 0);
        assert_eq!(red.num_vertices, 4);
        assert_eq!(red.left_type(), c.left_type());
        assert_eq!(red.right_type(), c.right_type());
        assert_eq!(
            red.even_inner_edges().len(),
            c.even_inner_edges().len() - c.scf().len()
        );
    }

    #[test]
    fn validate_rejects_unbalanced() {
        let c = TropicalCover::new(
            0,
            1,
            vec![
                Edge {
                    source: Node::LeftEnd,
                    target: Node::Inner(0),
                    weight: 3,
                },
                Edge {
                    source: Node::Inner(0),
                    target: Node::RightEnd,
                    weight: 1,
                },
                Edge {
                    source: Node::Inner(0),
                    target: Node::RightEnd,
                    weight: 1,
                },
            ],
        );
        assert!(c.validate().is_err());
    }
}
