//! Exact rational arithmetic. Multiplicities and Hurwitz numbers live in
//! (1/2^k) Z, so everything is kept as arbitrary-precision fractions and
//! printed as `num/den`, never as floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Zero};

/// Reduced fraction of arbitrary-precision integers, denominator > 0.
pub type Rational = BigRational;

pub fn rat_from_u64(n: u64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_from_biguint(n: &BigUint) -> Rational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `num/den` with the denominator always spelled out when it is not 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational is an odd integer iff its denominator is 1 and numerator is odd.
pub fn is_odd_integer(r: &Rational) -> bool {
    r.denom().is_one() && !(r.numer() % BigInt::from(2)).is_zero()
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}
