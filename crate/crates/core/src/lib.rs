//! Exact calculator for complex, real and zigzag double Hurwitz numbers.
//!
//! Complex double Hurwitz numbers are computed by enumerating isomorphism
//! classes of tropical covers of the line and summing their multiplicities.
//! Real double Hurwitz numbers are obtained from the same enumeration by
//! counting compatible colourings. An independent oracle counts transposition
//! factorizations in the symmetric group for cross-validation.

pub mod aggregate;
pub mod cover;
pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod rational;
pub mod real;
pub mod serialize;
pub mod zigzag;

pub use cover::{Node, SymmetricFeature, TropicalCover};
pub use error::{Error, Result};
pub use partitions::{Partition, TailDecomposition};
pub use rational::Rational;

/// Hard limits on the search space. Exceeding a cap is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_degree: u64,
    pub max_branch_points: usize,
}

impl Caps {
    /// Default caps for the tropical enumeration.
    pub const ENUMERATION: Caps = Caps {
        max_degree: 10,
        max_branch_points: 14,
    };

    /// Default caps for the symmetric-group oracle, which scales much worse.
    pub const ORACLE: Caps = Caps {
        max_degree: 6,
        max_branch_points: 8,
    };

    pub fn check(&self, d: u64, r: usize) -> Result<()> {
        if d > self.max_degree || r > self.max_branch_points {
            return Err(Error::CapExceeded {
                degree: d,
                branch_points: r,
                max_degree: self.max_degree,
                max_branch_points: self.max_branch_points,
            });
        }
        Ok(())
    }
}

/// r = l(lambda) + l(mu) + 2g - 2, the number of simple branch points.
pub fn simple_branch_count(lambda: &Partition, mu: &Partition, genus: u64) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    Ok(lambda.len() as i64 + mu.len() as i64 + 2 * genus as i64 - 2)
}

/// True iff the pair (lambda, mu) admits covers with non-trivial
/// automorphisms on the classical side, i.e. r <= 0 or both partitions lie in
/// {(2k), (k,k)} for a common k.
pub fn excluded_configuration(lambda: &Partition, mu: &Partition, genus: u64) -> Result<bool> {
    let r = simple_branch_count(lambda, mu, genus)?;
    if r <= 0 {
        return Ok(true);
    }
    // (2k) is a single even part, (k,k) a pair of equal parts
    let in_family = |p: &Partition| -> bool {
        match p.parts() {
            [a] => a % 2 == 0,
            [a, b] => a == b,
            _ => false,
        }
    };
    Ok(in_family(lambda) && in_family(mu))
}

/// Errors out on excluded configurations, used as a precondition guard by the
/// real and zigzag counts.
pub fn require_not_excluded(lambda: &Partition, mu: &Partition, genus: u64) -> Result<()> {
    if excluded_configuration(lambda, mu, genus)? {
        Err(Error::ExcludedConfiguration {
            lambda: lambda.clone(),
            mu: mu.clone(),
            genus,
        })
    } else {
        Ok(())
    }
}
