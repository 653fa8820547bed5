//! Integer and rational utilities: p-adic valuations, primality, prime
//! enumeration and exact power comparisons.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Nat = BigUint;
pub type Int = BigInt;
pub type Rat = BigRational;

/// A p-adic valuation. `Infinity` is reserved for the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PAdicVal {
    Finite(i64),
    Infinity,
}

impl PAdicVal {
    pub fn finite(self) -> Option<i64> {
        match self {
            PAdicVal::Finite(v) => Some(v),
            PAdicVal::Infinity => None,
        }
    }
}

impl PartialOrd for PAdicVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PAdicVal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PAdicVal::Finite(a), PAdicVal::Finite(b)) => a.cmp(b),
            (PAdicVal::Finite(_), PAdicVal::Infinity) => Ordering::Less,
            (PAdicVal::Infinity, PAdicVal::Finite(_)) => Ordering::Greater,
            (PAdicVal::Infinity, PAdicVal::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for PAdicVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicVal::Finite(v) => write!(f, "{v}"),
            PAdicVal::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for PAdicVal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PAdicVal::Finite(v) => s.serialize_i64(*v),
            PAdicVal::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn rat_from_int<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

pub fn rat_from_nat(n: &Nat) -> Rat {
    Rat::from_integer(BigInt::from(n.clone()))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Largest `e` with `p^e | n`, for `n != 0` and `p >= 2`.
fn nat_valuation(n: &Nat, p: &Nat) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub(crate) fn valuation_unchecked(n: &Rat, p: &Nat) -> PAdicVal {
    if n.is_zero() {
        return PAdicVal::Infinity;
    }
    let num = n.numer().magnitude();
    let den = n.denom().magnitude();
    PAdicVal::Finite(nat_valuation(num, p) - nat_valuation(den, p))
}

/// `v_p(n)`, with `Infinity` for `n = 0`.
pub fn padic_valuation(n: &Rat, p: &Nat) -> Result<PAdicVal> {
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(p.clone()));
    }
    Ok(valuation_unchecked(n, p))
}

/// `|n|_p = p^{-v_p(n)}` as an exact rational; zero maps to zero.
pub fn padic_abs(n: &Rat, p: &Nat) -> Result<Rat> {
    Ok(match padic_valuation(n, p)? {
        PAdicVal::Infinity => Rat::zero(),
        PAdicVal::Finite(v) => rat_pow(&rat_from_nat(p), -v),
    })
}

/// Exact integer power of a rational, negative exponents allowed.
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    let e = exp.unsigned_abs();
    let e = u32::try_from(e).expect("exponent too large");
    let numer = base.numer().pow(e);
    let denom = base.denom().pow(e);
    if exp >= 0 {
        Rat::new(numer, denom)
    } else {
        Rat::new(denom, numer)
    }
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

// Bases 2..41 are a deterministic witness set below this bound.
const DETERMINISTIC_MR_LIMIT: &str = "3317044064679887385961981";

const RANDOM_MR_ROUNDS: usize = 64;

fn miller_rabin_witness(n: &Nat, n_minus_1: &Nat, d: &Nat, s: u64, a: &Nat) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return false;
        }
    }
    true
}

/// Miller–Rabin primality test. Deterministic below 3.3·10²⁴; above that,
/// 64 additional rounds with bases drawn from a generator seeded by `n`,
/// for an error probability below 2⁻¹²⁸.
pub fn is_prime(n: &Nat) -> bool {
    if n < &Nat::from(2u32) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = Nat::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    for &a in &SMALL_PRIMES {
        if miller_rabin_witness(n, &n_minus_1, &d, s, &Nat::from(a)) {
            return false;
        }
    }
    let limit: Nat = DETERMINISTIC_MR_LIMIT.parse().expect("constant parses");
    if n < &limit {
        return true;
    }
    let mut seed = [0u8; 32];
    for (dst, src) in seed.iter_mut().zip(n.to_bytes_le()) {
        *dst = src;
    }
    let mut rng = ChaCha20Rng::from_seed(seed);
    let two = Nat::from(2u32);
    (0..RANDOM_MR_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        !miller_rabin_witness(n, &n_minus_1, &d, s, &a)
    })
}

/// All primes `<= m`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(m: u64) -> Vec<u64> {
    if m < 2 {
        return Vec::new();
    }
    let m = usize::try_from(m).expect("sieve bound exceeds address space");
    let mut composite = vec![false; m + 1];
    let mut primes = Vec::new();
    for i in 2..=m {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= m {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

const SEGMENT: u64 = 1 << 18;

/// Unbounded ascending prime iterator backed by a segmented sieve, for
/// enumerations whose end point is not known in advance.
pub struct PrimeStream {
    base: Vec<u64>,
    base_limit: u64,
    segment_start: u64,
    buffer: Vec<u64>,
    pos: usize,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream {
            base: Vec::new(),
            base_limit: 1,
            segment_start: 0,
            buffer: Vec::new(),
            pos: 0,
        }
    }

    fn fill(&mut self) {
        let lo = self.segment_start;
        let hi = lo + SEGMENT;
        let root = hi.sqrt() + 1;
        if root > self.base_limit {
            self.base_limit = root.max(2 * self.base_limit);
            self.base = primes_up_to(self.base_limit);
        }
        let mut composite = vec![false; SEGMENT as usize];
        for &p in &self.base {
            if p * p >= hi {
                break;
            }
            let mut j = (p * p).max(lo.div_ceil(p) * p);
            while j < hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        self.buffer = (lo.max(2)..hi)
            .filter(|&i| !composite[(i - lo) as usize])
            .collect();
        self.pos = 0;
        self.segment_start = hi;
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.pos >= self.buffer.len() {
            self.fill();
        }
        let p = self.buffer[self.pos];
        self.pos += 1;
        Some(p)
    }
}

/// Least prime `p <= m` dividing `n`, by trial division.
pub fn smallest_prime_factor_up_to(n: &Nat, m: u64) -> Option<u64> {
    primes_up_to(m).into_iter().find(|&p| (n % p).is_zero())
}

/// Sign of `x^d - n`, computed exactly.
pub fn compare_power(x: &Nat, d: u32, n: &Nat) -> Ordering {
    assert!(d >= 1, "exponent must be positive");
    x.pow(d).cmp(n)
}

/// `floor(n^(1/d))`.
pub fn floor_root(n: &Nat, d: u32) -> Nat {
    n.nth_root(d)
}

/// Natural logarithm of a positive big integer, in double precision.
pub fn ln_nat(n: &Nat) -> f64 {
    assert!(!n.is_zero(), "ln of zero");
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.to_f64() {
            if f.is_finite() {
                return f.ln();
            }
        }
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit value fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rat(r: &Rat) -> f64 {
    assert!(r.is_positive(), "ln of non-positive rational");
    ln_nat(r.numer().magnitude()) - ln_nat(r.denom().magnitude())
}

/// Best-effort conversion of a rational to `f64`, valid for huge numerators
/// and denominators as long as the quotient is representable.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(f) = r.to_f64() {
        if f.is_finite() && f != 0.0 {
            return f;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_rat(&r.abs()).exp()
}
