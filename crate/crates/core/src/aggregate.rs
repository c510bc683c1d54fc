//! Memoized aggregation over the event-sequence search space.
//!
//! The explicit enumeration in [`crate::enumerate`] visits every isomorphism
//! class, which is hopeless for the larger sweep inputs (the class counts
//! grow factorially in r). For aggregate quantities — number of classes,
//! H^C, number of odd-multiplicity classes — the future of a search state
//! only depends on the active edges up to renaming of their creation sites
//! and connected components. This module canonicalizes states accordingly
//! and memoizes the three aggregates.
//!
//! Per-class data kept in a state:
//! - active edges created by a left leaf are anonymous singleton components;
//! - other active edges belong to a component and are either `single` or one
//!   half of a co-created equal-weight `pair` (the only candidates for
//!   symmetric cycles and right forks).
//!
//! A class has odd complex multiplicity iff the 2-adic valuation of the
//! product of inner edge weights equals the number of symmetric features, so
//! the zigzag count is tracked as a distribution of that difference.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rational::Rational;
use crate::Caps;
use num::bigint::BigInt;
use num::Zero;
use std::collections::{BTreeMap, HashMap};

/// One weight class inside a component: `pairs` co-created pairs and
/// `singles` other active edges of weight `weight`.
type Entry = (u64, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Comp {
    entries: Vec<Entry>,
}

impl Comp {
    fn normalize(&mut self) {
        self.entries.retain(|&(_, p, s)| p > 0 || s > 0);
        self.entries.sort_unstable();
    }

    fn edge_count(&self) -> usize {
        self.entries
            .iter()
            .map(|&(_, p, s)| 2 * p as usize + s as usize)
            .sum()
    }

    fn pair_count(&self) -> u32 {
        self.entries.iter().map(|&(_, p, _)| p).sum()
    }

    fn weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().flat_map(|&(w, p, s)| {
            std::iter::repeat(w).take(2 * p as usize + s as usize)
        })
    }

    /// Removes one edge of the given weight; `from_pair` degrades a pair,
    /// leaving the partner as a single.
    fn take(&mut self, weight: u64, from_pair: bool) {
        let e = self
            .entries
            .iter_mut()
            .find(|e| e.0 == weight)
            .expect("weight present");
        if from_pair {
            e.1 -= 1;
            e.2 += 1;
        } else {
            e.2 -= 1;
        }
    }

    /// Removes a full co-created pair.
    fn take_pair(&mut self, weight: u64) {
        let e = self
            .entries
            .iter_mut()
            .find(|e| e.0 == weight)
            .expect("weight present");
        e.1 -= 1;
    }

    fn add_single(&mut self, weight: u64) {
        match self.entries.iter_mut().find(|e| e.0 == weight) {
            Some(e) => e.2 += 1,
            None => self.entries.push((weight, 0, 1)),
        }
    }

    fn add_pair(&mut self, weight: u64) {
        match self.entries.iter_mut().find(|e| e.0 == weight) {
            Some(e) => e.1 += 1,
            None => self.entries.push((weight, 1, 0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct State {
    /// Weights of still-unconsumed left leaves, sorted.
    lambda: Vec<u64>,
    /// Non-trivial components, sorted for canonicity.
    comps: Vec<Comp>,
}

impl State {
    fn normalize(&mut self) {
        self.lambda.sort_unstable();
        for c in &mut self.comps {
            c.normalize();
        }
        self.comps.sort_unstable();
    }

    fn active_count(&self) -> usize {
        self.lambda.len() + self.comps.iter().map(Comp::edge_count).sum::<usize>()
    }

    fn comp_count(&self) -> usize {
        self.lambda.len() + self.comps.len()
    }
}

/// Aggregates over all completions of a state.
#[derive(Debug, Clone)]
struct Agg {
    count: u128,
    hurwitz: Rational,
    /// v2(product of inner weights) - (number of symmetric features),
    /// mapped to the number of completions attaining it. Zero means odd
    /// multiplicity.
    parity: BTreeMap<i64, u128>,
}

impl Agg {
    fn zero() -> Self {
        Agg {
            count: 0,
            hurwitz: Rational::zero(),
            parity: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, child: &Agg, multiplicity: u128, weight_prod: u64, features: u32) {
        let delta = v2(weight_prod) as i64 - features as i64;
        self.count += multiplicity * child.count;
        // factor = multiplicity * weight_prod / 2^features
        let factor = Rational::new(
            BigInt::from(multiplicity) * BigInt::from(weight_prod),
            BigInt::from(1u64) << features,
        );
        self.hurwitz += factor * &child.hurwitz;
        for (&d, &n) in &child.parity {
            *self.parity.entry(d + delta).or_insert(0) += multiplicity * n;
        }
    }
}

fn v2(mut n: u64) -> u32 {
    debug_assert!(n > 0);
    let mut k = 0;
    while n % 2 == 0 {
        n /= 2;
        k += 1;
    }
    k
}

/// Aggregate results of a full enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverAggregates {
    /// Number of isomorphism classes.
    pub classes: u128,
    /// H^C: the sum of complex multiplicities.
    pub hurwitz: Rational,
    /// Number of classes with odd complex multiplicity, i.e. zigzag covers.
    pub odd_classes: u128,
}

struct Dp {
    r: usize,
    genus: u64,
    initial_lambda_len: usize,
    mu: Vec<u64>, // sorted increasing
    max_joins: usize,
    max_splits: usize,
    memo: HashMap<(usize, State), Agg>,
}

impl Dp {
    fn joins_used(&self, state: &State, depth: usize) -> usize {
        // active = l(lambda) - joins + splits, depth = joins + splits
        (depth + self.initial_lambda_len - state.active_count()) / 2
    }

    fn viable(&self, state: &State, depth: usize) -> bool {
        let remaining = self.r - depth;
        let active = state.active_count();
        let joins_used = self.joins_used(state, depth);
        let splits_used = depth - joins_used;
        if joins_used > self.max_joins || splits_used > self.max_splits {
            return false;
        }
        let joins_left = self.max_joins - joins_used;
        let splits_left = self.max_splits - splits_used;
        // genus so far = joins - merges; merges = l(lambda) - #components
        let inter = self.initial_lambda_len - state.comp_count();
        let genus_used = joins_used - inter;
        if genus_used > self.genus as usize {
            return false;
        }
        if (state.comp_count() - 1) + (self.genus as usize - genus_used) > joins_left {
            return false;
        }
        let target = self.mu.len() as i64;
        let count = active as i64;
        if (count - target).unsigned_abs() as usize > remaining {
            return false;
        }
        if (count + remaining as i64 - target) % 2 != 0 {
            return false;
        }
        // multiset distance to mu
        let mut weights: Vec<u64> = state.lambda.clone();
        for c in &state.comps {
            weights.extend(c.weights());
        }
        weights.sort_unstable();
        let common = intersection_size(&weights, &self.mu);
        let excess = weights.len() - common;
        let deficit = self.mu.len() - common;
        if excess > 2 * joins_left + splits_left {
            return false;
        }
        if deficit > joins_left + 2 * splits_left {
            return false;
        }
        true
    }

    fn eval(&mut self, state: State, depth: usize) -> Agg {
        if depth == self.r {
            return self.finish(&state);
        }
        if let Some(hit) = self.memo.get(&(depth, state.clone())) {
            return hit.clone();
        }
        let mut agg = Agg::zero();
        for (child, multiplicity, weight_prod, features) in self.children(&state, depth) {
            if !self.viable(&child, depth + 1) {
                continue;
            }
            let sub = self.eval(child, depth + 1);
            agg.absorb(&sub, multiplicity, weight_prod, features);
        }
        self.memo.insert((depth, state), agg.clone());
        agg
    }

    fn finish(&self, state: &State) -> Agg {
        if !state.lambda.is_empty() || state.comps.len() != 1 {
            return Agg::zero();
        }
        let mut weights: Vec<u64> = state.comps[0].weights().collect();
        weights.sort_unstable();
        if weights != self.mu {
            return Agg::zero();
        }
        // surviving pairs become symmetric right forks
        let forks = state.comps[0].pair_count();
        let mut parity = BTreeMap::new();
        parity.insert(-(forks as i64), 1u128);
        Agg {
            count: 1,
            hurwitz: Rational::new(BigInt::from(1), BigInt::from(1u64) << forks),
            parity,
        }
    }

    /// All event classes applicable at `depth`, with their choice
    /// multiplicities, consumed inner-weight products and created features.
    fn children(&self, state: &State, depth: usize) -> Vec<(State, u128, u64, u32)> {
        let mut out = Vec::new();
        let joins_used = self.joins_used(state, depth);
        let splits_used = depth - joins_used;
        let can_join = joins_used < self.max_joins;
        let can_split = splits_used < self.max_splits;
        let inter = self.initial_lambda_len - state.comp_count();
        let genus_left = self.genus as usize - (joins_used - inter);

        let mut lambda_weights: Vec<u64> = state.lambda.clone();
        lambda_weights.dedup();

        if can_join {
            // left leaf + left leaf
            for (i, &a) in lambda_weights.iter().enumerate() {
                for &b in &lambda_weights[i..] {
                    if a == b && state.lambda.iter().filter(|&&w| w == a).count() < 2 {
                        continue;
                    }
                    let mut s = state.clone();
                    remove_one(&mut s.lambda, a);
                    remove_one(&mut s.lambda, b);
                    s.comps.push(Comp {
                        entries: vec![(a + b, 0, 1)],
                    });
                    s.normalize();
                    // equal left leaves meeting at a vertex form a fork
                    let features = u32::from(a == b);
                    out.push((s, 1, 1, features));
                }
            }
            // left leaf + component edge
            for &a in &lambda_weights {
                for ci in 0..state.comps.len() {
                    for &(w, pairs, singles) in &state.comps[ci].entries {
                        for (from_pair, mult) in [(false, singles), (true, pairs)] {
                            if mult == 0 {
                                continue;
                            }
                            let mut s = state.clone();
                            remove_one(&mut s.lambda, a);
                            s.comps[ci].take(w, from_pair);
                            s.comps[ci].add_single(a + w);
                            s.normalize();
                            out.push((s, mult as u128, w, 0));
                        }
                    }
                }
            }
            // edges of two different components
            for ci in 0..state.comps.len() {
                for cj in (ci + 1)..state.comps.len() {
                    for &(w1, p1, s1) in &state.comps[ci].entries {
                        for &(w2, p2, s2) in &state.comps[cj].entries {
                            for (fp1, m1) in [(false, s1), (true, p1)] {
                                for (fp2, m2) in [(false, s2), (true, p2)] {
                                    if m1 == 0 || m2 == 0 {
                                        continue;
                                    }
                                    let mut s = state.clone();
                                    s.comps[ci].take(w1, fp1);
                                    s.comps[cj].take(w2, fp2);
                                    let mut merged = Comp {
                                        entries: s.comps[ci].entries.clone(),
                                    };
                                    for e in &s.comps[cj].entries {
                                        for _ in 0..e.1 {
                                            merged.add_pair(e.0);
                                        }
                                        for _ in 0..e.2 {
                                            merged.add_single(e.0);
                                        }
                                    }
                                    merged.add_single(w1 + w2);
                                    s.comps.remove(cj);
                                    s.comps.remove(ci);
                                    s.comps.push(merged);
                                    s.normalize();
                                    out.push((s, m1 as u128 * m2 as u128, w1 * w2, 0));
                                }
                            }
                        }
                    }
                }
            }
            // two edges of the same component: raises the genus
            if genus_left > 0 {
                for ci in 0..state.comps.len() {
                    let entries = state.comps[ci].entries.clone();
                    for (ei, &(w1, p1, s1)) in entries.iter().enumerate() {
                        // closing a co-created pair: a symmetric cycle
                        if p1 > 0 {
                            let mut s = state.clone();
                            s.comps[ci].take_pair(w1);
                            s.comps[ci].add_single(2 * w1);
                            s.normalize();
                            out.push((s, p1 as u128, w1 * w1, 1));
                        }
                        // same weight, not partners
                        let same_weight: &[(bool, bool, u128)] = &[
                            (false, false, choose2(s1)),
                            (false, true, s1 as u128 * p1 as u128),
                            (true, true, choose2(p1)),
                        ];
                        for &(fp1, fp2, mult) in same_weight {
                            if mult == 0 {
                                continue;
                            }
                            let mut s = state.clone();
                            s.comps[ci].take(w1, fp1);
                            s.comps[ci].take(w1, fp2);
                            s.comps[ci].add_single(2 * w1);
                            s.normalize();
                            out.push((s, mult, w1 * w1, 0));
                        }
                        // different weights
                        for &(w2, p2, s2) in &entries[ei + 1..] {
                            for (fp1, m1) in [(false, s1), (true, p1)] {
                                for (fp2, m2) in [(false, s2), (true, p2)] {
                                    if m1 == 0 || m2 == 0 {
                                        continue;
                                    }
                                    let mut s = state.clone();
                                    s.comps[ci].take(w1, fp1);
                                    s.comps[ci].take(w2, fp2);
                                    s.comps[ci].add_single(w1 + w2);
                                    s.normalize();
                                    out.push((s, m1 as u128 * m2 as u128, w1 * w2, 0));
                                }
                            }
                        }
                    }
                }
            }
        }

        if can_split {
            // split a left leaf
            for &a in &lambda_weights {
                for b in 1..=a / 2 {
                    let mut s = state.clone();
                    remove_one(&mut s.lambda, a);
                    let comp = if b == a - b {
                        Comp {
                            entries: vec![(b, 1, 0)],
                        }
                    } else {
                        Comp {
                            entries: vec![(b, 0, 1), (a - b, 0, 1)],
                        }
                    };
                    s.comps.push(comp);
                    s.normalize();
                    out.push((s, 1, 1, 0));
                }
            }
            // split a component edge
            for ci in 0..state.comps.len() {
                for &(w, pairs, singles) in &state.comps[ci].entries {
                    for (from_pair, mult) in [(false, singles), (true, pairs)] {
                        if mult == 0 {
                            continue;
                        }
                        for b in 1..=w / 2 {
                            let mut s = state.clone();
                            s.comps[ci].take(w, from_pair);
                            if b == w - b {
                                s.comps[ci].add_pair(b);
                            } else {
                                s.comps[ci].add_single(b);
                                s.comps[ci].add_single(w - b);
                            }
                            s.normalize();
                            out.push((s, mult as u128, w, 0));
                        }
                    }
                }
            }
        }
        out
    }
}

fn choose2(n: u32) -> u128 {
    n as u128 * n.saturating_sub(1) as u128 / 2
}

fn remove_one(v: &mut Vec<u64>, value: u64) {
    let pos = v.iter().position(|&x| x == value).expect("value present");
    v.remove(pos);
}

fn intersection_size(a: &[u64], b: &[u64]) -> usize {
    // both sorted increasing
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    n
}

/// Computes class count, H^C and the odd-multiplicity class count in one
/// memoized pass.
pub fn aggregate_covers(
    genus: u64,
    lambda: &Partition,
    mu: &Partition,
    caps: Caps,
) -> Result<CoverAggregates> {
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

    let mut mu_sorted = mu.parts().to_vec();
    mu_sorted.sort_unstable();
    let mut dp = Dp {
        r,
        genus,
        initial_lambda_len: lambda.len(),
        mu: mu_sorted,
        max_joins: lambda.len() + genus as usize - 1,
        max_splits: mu.len() + genus as usize - 1,
        memo: HashMap::new(),
    };
    let mut root = State {
        lambda: lambda.parts().to_vec(),
        comps: Vec::new(),
    };
    root.normalize();
    let agg = if dp.viable(&root, 0) {
        dp.eval(root, 0)
    } else {
        Agg::zero()
    };
    Ok(CoverAggregates {
        classes: agg.count,
        hurwitz: agg.hurwitz,
        odd_classes: agg.parity.get(&0).copied().unwrap_or(0),
    })
}
