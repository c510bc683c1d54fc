//! Integer partitions and the tail decomposition.
//!
//! Partitions are unordered; the canonical storage order is weakly
//! decreasing and equality is multiset equality.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A partition: weakly decreasing multiset of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from arbitrary order; zero parts are rejected.
    pub fn new(mut parts: Vec<u64>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "partition parts must be >= 1");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// l(lambda), the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |lambda|, the sum of the parts.
    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn is_odd(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    pub fn contains_part(&self, k: u64) -> bool {
        self.parts.contains(&k)
    }

    /// Multiset union (lambda, mu).
    pub fn concat(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// 2 lambda: every part doubled.
    pub fn double(&self) -> Partition {
        Partition::new(self.parts.iter().map(|p| 2 * p).collect())
    }

    /// lambda^2: every part duplicated.
    pub fn square(&self) -> Partition {
        let mut parts = Vec::with_capacity(2 * self.parts.len());
        for &p in &self.parts {
            parts.push(p);
            parts.push(p);
        }
        Partition::new(parts)
    }

    /// (lambda, 1^{2m}): 2m ones appended.
    pub fn pad_ones(&self, m: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat(1).take(2 * m));
        Partition::new(parts)
    }

    /// (lambda, 2^m): m twos appended.
    pub fn pad_twos(&self, m: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat(2).take(m));
        Partition::new(parts)
    }

    /// Removes a single copy of `k`; returns None if `k` is not a part.
    pub fn remove_part(&self, k: u64) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// The unique split lambda = (2*two_e, 2*two_o, oo^2, zero) with two_e
    /// even, two_o and oo odd, and zero odd with distinct parts.
    pub fn tail_decomposition(&self) -> TailDecomposition {
        let mut two_e = Vec::new();
        let mut two_o = Vec::new();
        let mut oo = Vec::new();
        let mut zero = Vec::new();
        let mut odd_counts: BTreeMap<u64, u64> = BTreeMap::new();
        for &p in &self.parts {
            if p % 2 == 0 {
                let half = p / 2;
                if half % 2 == 0 {
                    two_e.push(half);
                } else {
                    two_o.push(half);
                }
            } else {
                *odd_counts.entry(p).or_insert(0) += 1;
            }
        }
        // odd parts pair up by value; an unpaired copy per value goes to zero
        for (value, count) in odd_counts {
            for _ in 0..count / 2 {
                oo.push(value);
            }
            if count % 2 == 1 {
                zero.push(value);
            }
        }
        TailDecomposition {
            two_e: Partition::new(two_e),
            two_o: Partition::new(two_o),
            oo: Partition::new(oo),
            zero: Partition::new(zero),
        }
    }

    /// All partitions of n, for audits and sweeps.
    pub fn all_of(n: u64) -> Vec<Partition> {
        fn rec(remaining: u64, max: u64, stack: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: stack.clone(),
                });
                return;
            }
            let top = remaining.min(max);
            for next in (1..=top).rev() {
                stack.push(next);
                rec(remaining - next, next, stack, out);
                stack.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// CLI syntax: comma-separated positive integers, empty partition is `-`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let p: u64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad part `{tok}` in `{s}`")))?;
            if p == 0 {
                return Err(Error::InvalidPartition(format!("zero part in `{s}`")));
            }
            parts.push(p);
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// The tail decomposition lambda = (2*two_e, 2*two_o, oo^2, zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDecomposition {
    /// lambda_2e: even halves of even parts.
    pub two_e: Partition,
    /// lambda_2o: odd halves of even parts.
    pub two_o: Partition,
    /// lambda_oo: one copy per pair of equal odd parts.
    pub oo: Partition,
    /// lambda_0: odd parts left unpaired; all distinct by construction.
    pub zero: Partition,
}

impl TailDecomposition {
    /// Rebuilds the original partition as a multiset.
    pub fn recombine(&self) -> Partition {
        self.two_e
            .double()
            .concat(&self.two_o.double())
            .concat(&self.oo.square())
            .concat(&self.zero)
    }

    /// lambda_tail = (lambda_2e, lambda_2o, lambda_oo).
    pub fn tail(&self) -> Partition {
        self.two_e.concat(&self.two_o).concat(&self.oo)
    }
}
