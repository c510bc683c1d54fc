//! Independent ground truth for H^C: count monodromy representations, i.e.
//! tuples (sigma_0, tau_1, ..., tau_r, sigma_inf) of permutations with
//! prescribed cycle types, product equal to the identity and transitive
//! action, then divide by d!.
//!
//! This module deliberately shares no code with the tropical enumeration.

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rational::Rational;
use crate::Caps;
use num::bigint::BigInt;
use rayon::prelude::*;

/// A permutation of {0, .., d-1} as an image table.
type Perm = Vec<usize>;

fn identity(d: usize) -> Perm {
    (0..d).collect()
}

fn cycle_type(p: &Perm) -> Partition {
    let d = p.len();
    let mut seen = vec![false; d];
    let mut lens = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        lens.push(len);
    }
    Partition::new(lens)
}

fn cycle_count(p: &Perm) -> usize {
    cycle_type(p).len()
}

/// All permutations of {0,..,d-1} with the given cycle type.
fn conjugacy_class(lambda: &Partition, d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut perm = identity(d);
    permute_rec(&mut perm, 0, &mut |p| {
        if cycle_type(p) == *lambda {
            out.push(p.clone());
        }
    });
    out
}

fn permute_rec(perm: &mut Perm, k: usize, visit: &mut impl FnMut(&Perm)) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_rec(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// True iff the permutations act with a single orbit on {0,..,d-1},
/// computed by orbit closure from point 0.
pub fn is_transitive(perms: &[Perm], d: usize) -> bool {
    if d == 0 {
        return true;
    }
    let mut reached = vec![false; d];
    let mut stack = vec![0usize];
    reached[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p[x];
            if !reached[y] {
                reached[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == d
}

/// Counts the factorizations with a fixed sigma_0: transposition sequences
/// tau_1..tau_r such that sigma_0 tau_1 ... tau_r has cycle type mu and the
/// whole tuple is transitive.
fn count_from(sigma0: &Perm, r: usize, mu: &Partition, d: usize) -> u64 {
    let transpositions: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
        .collect();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(r);
    let mut count = 0u64;
    search(
        sigma0,
        sigma0.clone(),
        r,
        mu,
        d,
        &transpositions,
        &mut chosen,
        &mut count,
    );
    count
}

#[allow(clippy::too_many_arguments)]
fn search(
    sigma0: &Perm,
    partial: Perm,
    remaining: usize,
    mu: &Partition,
    d: usize,
    transpositions: &[(usize, usize)],
    chosen: &mut Vec<(usize, usize)>,
    count: &mut u64,
) {
    // each further transposition changes the cycle count by exactly one
    let cycles = cycle_count(&partial);
    let target = mu.len();
    let dist = cycles.abs_diff(target);
    if dist > remaining || (remaining - dist) % 2 != 0 {
        return;
    }
    if remaining == 0 {
        if cycle_type(&partial) != *mu {
            return;
        }
        let mut gens: Vec<Perm> = vec![sigma0.clone()];
        for &(i, j) in chosen.iter() {
            let mut t = identity(d);
            t.swap(i, j);
            gens.push(t);
        }
        if is_transitive(&gens, d) {
            *count += 1;
        }
        return;
    }
    for &(i, j) in transpositions {
        // right-multiply: partial * (i j)
        let mut next = partial.clone();
        let (pi, pj) = (next[i], next[j]);
        next[i] = pj;
        next[j] = pi;
        chosen.push((i, j));
        search(sigma0, next, remaining - 1, mu, d, transpositions, chosen, count);
        chosen.pop();
    }
}

/// (number of monodromy representations) / d!, as an exact rational.
pub fn monodromy_count(
    genus: u64,
    lambda: &Partition,
    mu: &Partition,
    caps: Caps,
) -> Result<Rational> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    let d = lambda.weight();
    let r = lambda.len() as i64 + mu.len() as i64 + 2 * genus as i64 - 2;
    if r < 0 {
        return Err(Error::InvalidInput(format!("r = {r} is negative")));
    }
    let r = r as usize;
    caps.check(d, r)?;
    let d = d as usize;

    let class = conjugacy_class(lambda, d);
    let raw: u64 = class
        .par_iter()
        .map(|sigma0| count_from(sigma0, r, mu, d))
        .sum();
    let d_factorial: BigInt = (1..=d as u64).map(BigInt::from).product();
    Ok(Rational::new(BigInt::from(raw), d_factorial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{format_rational, rat_from_u64};

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive(&[vec![1, 0]], 2));
        assert!(!is_transitive(&[vec![0, 1]], 2));
        assert!(!is_transitive(&[vec![1, 0, 2, 3], vec![0, 1, 3, 2]], 4));
        assert!(is_transitive(&[vec![1, 0, 2, 3], vec![0, 2, 1, 3], vec![0, 1, 3, 2]], 4));
    }

    #[test]
    fn conjugacy_class_sizes() {
        assert_eq!(conjugacy_class(&p(&[2, 1]), 3).len(), 3);
        assert_eq!(conjugacy_class(&p(&[3]), 3).len(), 2);
        assert_eq!(conjugacy_class(&p(&[1, 1, 1]), 3).len(), 1);
    }

    #[test]
    fn s3_counts() {
        assert_eq!(
            monodromy_count(0, &p(&[2, 1]), &p(&[2, 1]), Caps::ORACLE).unwrap(),
            rat_from_u64(4)
        );
        assert_eq!(
            monodromy_count(0, &p(&[3]), &p(&[1, 1, 1]), Caps::ORACLE).unwrap(),
            rat_from_u64(1)
        );
    }

    #[test]
    fn s2_half_count() {
        let h = monodromy_count(0, &p(&[1, 1]), &p(&[1, 1]), Caps::ORACLE).unwrap();
        assert_eq!(format_rational(&h), "1/2");
    }

    #[test]
    fn symmetry_under_swapping_profiles() {
        let a = monodromy_count(0, &p(&[3, 1]), &p(&[2, 1, 1]), Caps::ORACLE).unwrap();
        let b = monodromy_count(0, &p(&[2, 1, 1]), &p(&[3, 1]), Caps::ORACLE).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(monodromy_count(0, &p(&[7]), &p(&[7]), Caps::ORACLE).is_err());
    }
}
