//! Cross-validation of the tropical enumeration against the symmetric-group
//! oracle. The two routes share no code.

use hurwitz_core::enumerate::hurwitz_complex;
use hurwitz_core::oracle::monodromy_count;
use hurwitz_core::{Caps, Partition};

#[test]
fn tropical_count_equals_monodromy_count_up_to_degree_four() {
    for d in 2u64..=4 {
        for lambda in Partition::all_of(d) {
            for mu in Partition::all_of(d) {
                for g in 0u64.. {
                    let r = lambda.len() as i64 + mu.len() as i64 + 2 * g as i64 - 2;
                    if r > 6 {
                        break;
                    }
                    if r < 1 {
                        continue;
                    }
                    let trop = hurwitz_complex(g, &lambda, &mu, Caps::ENUMERATION).unwrap();
                    let mono = monodromy_count(g, &lambda, &mu, Caps::ORACLE).unwrap();
                    assert_eq!(
                        trop, mono,
                        "mismatch at g={g}, lambda=({lambda}), mu=({mu})"
                    );
                }
            }
        }
    }
}
