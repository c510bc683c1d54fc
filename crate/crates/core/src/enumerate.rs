//! Enumeration of isomorphism classes of tropical covers by event sequences.
//!
//! The sweep processes one branch point per step, left to right. The state
//! is the multiset of active edges, each remembered by its creation site
//! (a left end or an earlier vertex) and weight. An event either joins two
//! active edges or splits one. Active edges with equal source and weight are
//! interchangeable, so choices are made per equivalence class; this yields
//! every isomorphism class exactly once and no global deduplication is
//! needed.

use crate::cover::{Edge, Node, TropicalCover};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rational::Rational;
use crate::Caps;
use num::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
struct Active {
    source: Node,
    weight: u64,
    comp: u32,
}

#[derive(Debug, Clone)]
struct SearchNode {
    depth: usize,
    active: Vec<Active>,
    edges: Vec<Edge>,
    joins_used: usize,
    splits_used: usize,
    genus_used: u64,
    next_comp: u32,
}

struct Search {
    r: usize,
    genus: u64,
    mu: Vec<u64>,
    max_joins: usize,
    max_splits: usize,
}

impl Search {
    fn root(&self, lambda: &Partition) -> SearchNode {
        let active = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &w)| Active {
                source: Node::LeftEnd,
                weight: w,
                comp: i as u32,
            })
            .collect::<Vec<_>>();
        SearchNode {
            depth: 0,
            active,
            edges: Vec::new(),
            joins_used: 0,
            splits_used: 0,
            genus_used: 0,
            next_comp: lambda.len() as u32,
        }
    }

    fn viable(&self, n: &SearchNode) -> bool {
        let remaining = self.r - n.depth;
        if n.joins_used > self.max_joins || n.splits_used > self.max_splits {
            return false;
        }
        if n.genus_used > self.genus {
            return false;
        }
        // final count parity and distance
        let count = n.active.len() as i64;
        let target = self.mu.len() as i64;
        if (count - target).unsigned_abs() as usize > remaining {
            return false;
        }
        if (count + remaining as i64 - target) % 2 != 0 {
            return false;
        }
        // all components must still be merged, all genus still be created
        let mut comps: Vec<u32> = n.active.iter().map(|a| a.comp).collect();
        comps.sort_unstable();
        comps.dedup();
        let joins_left = self.max_joins - n.joins_used;
        if (comps.len() - 1) + (self.genus - n.genus_used) as usize > joins_left {
            return false;
        }
        // multiset distance to mu: excess edges must be consumed, missing
        // parts must be produced
        let mut weights: Vec<u64> = n.active.iter().map(|a| a.weight).collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        let common = multiset_intersection_size(&weights, &self.mu);
        let excess = weights.len() - common;
        let deficit = self.mu.len() - common;
        let splits_left = self.max_splits - n.splits_used;
        if excess > 2 * joins_left + splits_left {
            return false;
        }
        if deficit > joins_left + 2 * splits_left {
            return false;
        }
        true
    }

    fn expand(&self, n: &SearchNode) -> Vec<SearchNode> {
        let mut out = Vec::new();
        let v = Node::Inner(n.depth);

        // class -> indices of interchangeable active edges
        let mut classes: BTreeMap<(Node, u64), Vec<usize>> = BTreeMap::new();
        for (i, a) in n.active.iter().enumerate() {
            classes.entry((a.source, a.weight)).or_default().push(i);
        }
        let class_list: Vec<&Vec<usize>> = classes.values().collect();

        if n.joins_used < self.max_joins {
            for (ci, ca) in class_list.iter().enumerate() {
                // join of two edges within one class
                if ca.len() >= 2 {
                    out.extend(self.apply_join(n, v, ca[0], ca[1]));
                }
                for cb in class_list.iter().skip(ci + 1) {
                    out.extend(self.apply_join(n, v, ca[0], cb[0]));
                }
            }
        }
        if n.splits_used < self.max_splits {
            for ca in &class_list {
                let idx = ca[0];
                let w = n.active[idx].weight;
                for b in 1..=w / 2 {
                    out.push(self.apply_split(n, v, idx, b));
                }
            }
        }
        out.retain(|child| self.viable(child));
        out
    }

    fn apply_join(&self, n: &SearchNode, v: Node, i: usize, j: usize) -> Option<SearchNode> {
        let (a, b) = (&n.active[i], &n.active[j]);
        let intra = a.comp == b.comp;
        if intra && n.genus_used >= self.genus {
            return None;
        }
        let mut child = n.clone();
        child.depth += 1;
        child.joins_used += 1;
        child.edges.push(Edge {
            source: a.source,
            target: v,
            weight: a.weight,
        });
        child.edges.push(Edge {
            source: b.source,
            target: v,
            weight: b.weight,
        });
        let comp = if intra {
            child.genus_used += 1;
            a.comp
        } else {
            let merged = child.next_comp;
            child.next_comp += 1;
            let (ca, cb) = (a.comp, b.comp);
            for act in &mut child.active {
                if act.comp == ca || act.comp == cb {
                    act.comp = merged;
                }
            }
            merged
        };
        let weight = a.weight + b.weight;
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        child.active.remove(hi);
        child.active.remove(lo);
        child.active.push(Active {
            source: v,
            weight,
            comp,
        });
        Some(child)
    }

    fn apply_split(&self, n: &SearchNode, v: Node, i: usize, b: u64) -> SearchNode {
        let a = &n.active[i];
        let mut child = n.clone();
        child.depth += 1;
        child.splits_used += 1;
        child.edges.push(Edge {
            source: a.source,
            target: v,
            weight: a.weight,
        });
        let comp = a.comp;
        let w = a.weight;
        child.active.remove(i);
        child.active.push(Active {
            source: v,
            weight: b,
            comp,
        });
        child.active.push(Active {
            source: v,
            weight: w - b,
            comp,
        });
        child
    }

    fn finish(&self, n: &SearchNode) -> Option<TropicalCover> {
        debug_assert_eq!(n.depth, self.r);
        let mut weights: Vec<u64> = n.active.iter().map(|a| a.weight).collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        if weights != self.mu {
            return None;
        }
        let mut comps: Vec<u32> = n.active.iter().map(|a| a.comp).collect();
        comps.sort_unstable();
        comps.dedup();
        if comps.len() != 1 {
            return None;
        }
        let mut edges = n.edges.clone();
        for a in &n.active {
            edges.push(Edge {
                source: a.source,
                target: Node::RightEnd,
                weight: a.weight,
            });
        }
        Some(TropicalCover::new(self.genus, self.r, edges))
    }

    fn dfs<T, F: Fn(&mut T, TropicalCover)>(&self, node: SearchNode, acc: &mut T, fold: &F) {
        if node.depth == self.r {
            if let Some(cover) = self.finish(&node) {
                fold(acc, cover);
            }
            return;
        }
        for child in self.expand(&node) {
            self.dfs(child, acc, fold);
        }
    }
}

fn multiset_intersection_size(a: &[u64], b: &[u64]) -> usize {
    // both sorted decreasing
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Greater => i += 1,
            std::cmp::Ordering::Less => j += 1,
        }
    }
    n
}

fn prepare(genus: u64, lambda: &Partition, mu: &Partition, caps: Caps) -> Result<Search> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    if lambda.is_empty() {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    let r = lambda.len() as i64 + mu.len() as i64 + 2 * genus as i64 - 2;
    if r < 1 {
        return Err(Error::ExcludedConfiguration {
            lambda: lambda.clone(),
            mu: mu.clone(),
            genus,
        });
    }
    let r = r as usize;
    caps.check(lambda.weight(), r)?;
    Ok(Search {
        r,
        genus,
        mu: mu.parts().to_vec(),
        max_joins: lambda.len() + genus as usize - 1,
        max_splits: mu.len() + genus as usize - 1,
    })
}

/// Folds a function over every isomorphism class of tropical covers of the
/// given genus and type. The subtrees under the first two branch points are
/// processed in parallel; `merge` must be associative and commutative.
pub fn fold_covers<T, ID, F, M>(
    genus: u64,
    lambda: &Partition,
    mu: &Partition,
    caps: Caps,
    identity: ID,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    ID: Fn() -> T + Sync + Send,
    F: Fn(&mut T, TropicalCover) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let search = prepare(genus, lambda, mu, caps)?;
    let mut frontier = vec![search.root(lambda)];
    if !search.viable(&frontier[0]) {
        return Ok(identity());
    }
    let frontier_depth = search.r.saturating_sub(1).min(2);
    for _ in 0..frontier_depth {
        frontier = frontier.iter().flat_map(|n| search.expand(n)).collect();
    }
    let result = frontier
        .into_par_iter()
        .fold(&identity, |mut acc, node| {
            search.dfs(node, &mut acc, &fold);
            acc
        })
        .reduce(&identity, merge);
    Ok(result)
}

/// One representative per isomorphism class, sorted by canonical encoding.
pub fn enumerate_covers(
    genus: u64,
    lambda: &Partition,
    mu: &Partition,
    caps: Caps,
) -> Result<Vec<TropicalCover>> {
    let mut covers = fold_covers(
        genus,
        lambda,
        mu,
        caps,
        Vec::new,
        |acc: &mut Vec<TropicalCover>, c| acc.push(c),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    covers.sort_unstable();
    Ok(covers)
}

/// H^C via the correspondence theorem: the sum of complex multiplicities
/// over all isomorphism classes.
pub fn hurwitz_complex(
    genus: u64,
    lambda: &Partition,
    mu: &Partition,
    caps: Caps,
) -> Result<Rational> {
    fold_covers(
        genus,
        lambda,
        mu,
        caps,
        Rational::zero,
        |acc, c| *acc += c.mult_complex(),
        |a, b| a + b,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{format_rational, rat_from_u64};

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn caps() -> Caps {
        Caps::ENUMERATION
    }

    #[test]
    fn unique_cover_of_three_to_ones() {
        let covers = enumerate_covers(0, &p(&[3]), &p(&[1, 1, 1]), caps()).unwrap();
        assert_eq!(covers.len(), 1);
        let c = &covers[0];
        c.validate().unwrap();
        assert_eq!(c.scf().len(), 1);
        assert!(c.sc().is_empty());
        assert_eq!(format_rational(&c.mult_complex()), "1");
    }

    #[test]
    fn two_covers_of_two_one() {
        let covers = enumerate_covers(0, &p(&[2, 1]), &p(&[2, 1]), caps()).unwrap();
        assert_eq!(covers.len(), 2);
        let mut mults: Vec<Rational> = covers.iter().map(|c| c.mult_complex()).collect();
        mults.sort();
        assert_eq!(mults, vec![rat_from_u64(1), rat_from_u64(3)]);
        for c in &covers {
            c.validate().unwrap();
        }
    }

    #[test]
    fn invariant_audit_over_five_three_one() {
        let covers = enumerate_covers(0, &p(&[5, 3, 1]), &p(&[5, 3, 1]), caps()).unwrap();
        assert!(!covers.is_empty());
        for c in &covers {
            c.validate().unwrap();
            assert!(c.even_inner_edges().len() >= c.scf().len());
        }
    }

    #[test]
    fn genus_one_symmetric_cycle() {
        let covers = enumerate_covers(1, &p(&[1, 1]), &p(&[1, 1]), caps()).unwrap();
        // d = 2, g = 1: the split pair rejoins into one symmetric cycle of
        // weight 1, opened/closed at either of the two middle positions
        assert!(!covers.is_empty());
        assert!(covers.iter().any(|c| {
            let sc = c.sc();
            sc.len() == 1 && sc[0].weight == 1
        }));
        for c in &covers {
            c.validate().unwrap();
        }
    }

    #[test]
    fn hurwitz_symmetry_in_lambda_mu() {
        let a = hurwitz_complex(0, &p(&[3, 1]), &p(&[2, 1, 1]), caps()).unwrap();
        let b = hurwitz_complex(0, &p(&[2, 1, 1]), &p(&[3, 1]), caps()).unwrap();
        assert_eq!(a, b);
        let a = hurwitz_complex(1, &p(&[2, 2]), &p(&[3, 1]), caps()).unwrap();
        let b = hurwitz_complex(1, &p(&[3, 1]), &p(&[2, 2]), caps()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_covers(1, &p(&[2, 2]), &p(&[3, 1]), caps()).unwrap();
        let b = enumerate_covers(1, &p(&[2, 2]), &p(&[3, 1]), caps()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(enumerate_covers(0, &p(&[2]), &p(&[3]), caps()).is_err());
        assert!(enumerate_covers(0, &p(&[3]), &p(&[3]), caps()).is_err());
        let tight = Caps {
            max_degree: 2,
            max_branch_points: 8,
        };
        assert!(enumerate_covers(0, &p(&[3]), &p(&[1, 1, 1]), tight).is_err());
    }
}
