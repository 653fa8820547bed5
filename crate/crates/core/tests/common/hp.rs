//! Fixed-point logarithms with `PREC` fractional bits, for checking float
//! fast paths against something far more precise.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const PREC: u64 = 320;

fn one() -> BigInt {
    BigInt::one() << PREC
}

/// `atanh(z)` for a fixed-point `0 <= z <= 1/3`.
fn atanh(z: &BigInt) -> BigInt {
    let z2 = (z * z) >> PREC;
    let mut term = z.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term / BigInt::from(k);
        term = (&term * &z2) >> PREC;
        k += 2;
    }
    sum
}

pub fn ln2() -> BigInt {
    atanh(&(one() / BigInt::from(3))) * 2
}

/// `ln n` in fixed point; panics on zero.
pub fn ln_nat(n: &BigUint) -> BigInt {
    assert!(!n.is_zero());
    let k = n.bits() - 1;
    let y = BigInt::from((n << PREC) >> k);
    let z = ((&y - one()) << PREC) / (&y + one());
    BigInt::from(k) * ln2() + atanh(&z) * 2
}

/// `Σ e_i ln b_i`.
pub fn ln_product(factors: &[(BigUint, BigRational)]) -> BigInt {
    factors
        .iter()
        .map(|(b, e)| (ln_nat(b) * e.numer()).div_floor(e.denom()))
        .sum()
}

/// Sign of a fixed-point value, or `None` when `|v| <= 2^-gap_bits`.
pub fn sign_beyond(v: &BigInt, gap_bits: u64) -> Option<std::cmp::Ordering> {
    let threshold = BigInt::one() << (PREC - gap_bits);
    if v.abs() <= threshold {
        None
    } else {
        Some(if v.is_positive() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Less
        })
    }
}

pub fn to_f64(v: &BigInt) -> f64 {
    let shifted: BigInt = v >> (PREC - 60);
    let f: f64 = num_traits::ToPrimitive::to_f64(&shifted).unwrap();
    f / (1u64 << 60) as f64
}
