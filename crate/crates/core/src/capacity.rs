//! Adelic sets and their capacities.
//!
//! An [`AdelicSet`] assigns a local set to finitely many exceptional primes
//! (every other prime carries the closed unit ball of the integral closure,
//! capacity 1) together with an archimedean set. Capacities are kept in the
//! exact multiplicative form [`LogCapacity`] so that the comparison against 1,
//! which decides whether an auxiliary polynomial exists, is exact.
//!
//! Closed forms used:
//!
//! * p-adic disc `{|z|_p <= |N|_p}`: capacity `|N|_p`
//! * `Z_p`: capacity `p^(-1/(p-1))`
//! * preimage under a monic degree-`d` polynomial: capacity `gamma^(1/d)`
//! * complex disc of radius `r`: `r`; real interval `[-r, r]`: `r / 2`
//! * product set: product of the local capacities.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{is_prime, ln_nat, rat_to_f64, valuation_unchecked, Nat, PAdicVal, Rat};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// `Π base^exp` with positive integer bases and rational exponents.
///
/// Bases are kept exactly as supplied (a modulus `N` is never factored);
/// equal bases merge, unit bases and zero exponents are dropped, so the empty
/// map is the value 1. Equality is structural; compare values with
/// [`LogCapacity::cmp_value`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogCapacity {
    factors: BTreeMap<Nat, Rat>,
}

impl LogCapacity {
    pub fn one() -> Self {
        Self::default()
    }

    /// `base^exp`; panics on a zero base.
    pub fn power(base: Nat, exp: Rat) -> Self {
        let mut c = Self::one();
        c.push(base, exp);
        c
    }

    /// The rational `r > 0` as a product `numer^1 * denom^-1`.
    pub fn from_rat(r: &Rat) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::DegenerateInput(format!(
                "capacity value must be positive, got {r}"
            )));
        }
        let mut c = Self::one();
        c.push(r.numer().magnitude().clone(), Rat::one());
        c.push(r.denom().magnitude().clone(), -Rat::one());
        Ok(c)
    }

    fn push(&mut self, base: Nat, exp: Rat) {
        assert!(!base.is_zero(), "zero base in capacity product");
        if base.is_one() || exp.is_zero() {
            return;
        }
        let slot = self.factors.entry(base.clone()).or_insert_with(Rat::zero);
        *slot += exp;
        if slot.is_zero() {
            self.factors.remove(&base);
        }
    }

    pub fn factors(&self) -> &BTreeMap<Nat, Rat> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &LogCapacity) -> LogCapacity {
        let mut out = self.clone();
        for (b, e) in &other.factors {
            out.push(b.clone(), e.clone());
        }
        out
    }

    pub fn pow(&self, k: &Rat) -> LogCapacity {
        let mut out = Self::one();
        for (b, e) in &self.factors {
            out.push(b.clone(), e * k);
        }
        out
    }

    pub fn recip(&self) -> LogCapacity {
        self.pow(&-Rat::one())
    }

    /// Natural log in double precision.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| rat_to_f64(e) * ln_nat(b))
            .sum()
    }

    /// Exact sign of `self - 1`.
    ///
    /// A double-precision estimate of the log decides when it clears a
    /// rounding margin far above the accumulated error; otherwise the exponent
    /// denominators are cleared (`L = lcm`) and `Π b^(L e+)` is compared
    /// against `Π b^(L e-)` as integers.
    pub fn compare_to_one(&self) -> Ordering {
        let terms: Vec<f64> = self
            .factors
            .iter()
            .map(|(b, e)| rat_to_f64(e) * ln_nat(b))
            .collect();
        let sum: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        if sum.is_finite() && sum.abs() > 1e-10 * scale + 1e-280 {
            return if sum > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        self.compare_to_one_exact()
    }

    /// Integer-only comparison, no floating point involved.
    pub fn compare_to_one_exact(&self) -> Ordering {
        let l = self
            .factors
            .values()
            .fold(BigInt::one(), |l, e| l.lcm(e.denom()));
        let mut above = Nat::one();
        let mut below = Nat::one();
        for (b, e) in &self.factors {
            let k = (e * Rat::from_integer(l.clone())).to_integer();
            let mag = k
                .magnitude()
                .to_u32()
                .expect("cleared exponent too large for exact comparison");
            let term: Nat = b.pow(mag);
            if k.is_positive() {
                above *= term;
            } else {
                below *= term;
            }
        }
        above.cmp(&below)
    }

    /// Exact comparison of two capacity values.
    pub fn cmp_value(&self, other: &LogCapacity) -> Ordering {
        self.mul(&other.recip()).compare_to_one()
    }
}

impl fmt::Display for LogCapacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(b, e)| format!("{b}^({e})"))
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

impl Serialize for LogCapacity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self
            .factors
            .iter()
            .map(|(b, e)| (b.to_string(), e.to_string()))
            .collect();
        m.serialize(s)
    }
}

/// A non-archimedean local set at a fixed prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalSet {
    /// `{z : |z|_p <= |modulus|_p}`.
    PDisk { p: Nat, modulus: Nat },
    /// The p-adic integers `Z_p`.
    PIntegers { p: Nat },
    /// The closed unit ball of the integral closure; capacity 1.
    PDefault,
    /// `f^{-1}(inner)` for a monic integer polynomial `f`.
    Preimage { f: IntPoly, inner: Box<LocalSet> },
}

fn check_prime(p: &Nat) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrimeModulus(p.clone()))
    }
}

/// Local capacity of a p-adic set.
pub fn local_capacity(s: &LocalSet) -> Result<LogCapacity> {
    match s {
        LocalSet::PDisk { p, modulus } => {
            check_prime(p)?;
            match valuation_unchecked(&Rat::from_integer(modulus.clone().into()), p) {
                PAdicVal::Infinity => Err(Error::DegenerateInput(
                    "p-adic disc of radius |0|_p has capacity 0".into(),
                )),
                PAdicVal::Finite(v) => Ok(LogCapacity::power(
                    p.clone(),
                    Rat::from_integer((-v).into()),
                )),
            }
        }
        LocalSet::PIntegers { p } => {
            check_prime(p)?;
            let pm1 = BigInt::from(p.clone()) - 1;
            Ok(LogCapacity::power(p.clone(), Rat::new((-1).into(), pm1)))
        }
        LocalSet::PDefault => Ok(LogCapacity::one()),
        LocalSet::Preimage { f, inner } => {
            let d = monic_degree(f)?;
            Ok(local_capacity(inner)?.pow(&Rat::new(1.into(), d.into())))
        }
    }
}

fn monic_degree(f: &IntPoly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 1 && f.is_monic() => Ok(d),
        _ => Err(Error::NonMonicPolynomial),
    }
}

/// An exact positive radius `scale * base^exp`, covering plain rationals
/// (`base = 1`) and mixed radii such as `2 N^(1/d + eps)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRadius {
    pub scale: Rat,
    pub base: Nat,
    pub exp: Rat,
}

impl LogRadius {
    pub fn power(base: Nat, exp: Rat) -> Self {
        LogRadius {
            scale: Rat::one(),
            base,
            exp,
        }
    }

    pub fn value(r: Rat) -> Self {
        LogRadius {
            scale: r,
            base: Nat::one(),
            exp: Rat::zero(),
        }
    }

    pub fn integer(x: Nat) -> Self {
        Self::value(Rat::from_integer(x.into()))
    }

    pub fn scaled(scale: Rat, base: Nat, exp: Rat) -> Self {
        LogRadius { scale, base, exp }
    }

    pub fn to_capacity(&self) -> Result<LogCapacity> {
        if self.base.is_zero() || !self.scale.is_positive() {
            return Err(Error::DegenerateInput(format!(
                "radius must be positive, got {} * {}^({})",
                self.scale, self.base, self.exp
            )));
        }
        Ok(LogCapacity::from_rat(&self.scale)?
            .mul(&LogCapacity::power(self.base.clone(), self.exp.clone())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArchKind {
    Disk,
    Interval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArchSet {
    ComplexDisk { radius: LogRadius },
    RealInterval { half_width: LogRadius },
}

impl ArchSet {
    pub fn new(kind: ArchKind, radius: LogRadius) -> Self {
        match kind {
            ArchKind::Disk => ArchSet::ComplexDisk { radius },
            ArchKind::Interval => ArchSet::RealInterval { half_width: radius },
        }
    }
}

pub fn arch_capacity(s: &ArchSet) -> Result<LogCapacity> {
    match s {
        ArchSet::ComplexDisk { radius } => radius.to_capacity(),
        ArchSet::RealInterval { half_width } => Ok(half_width
            .to_capacity()?
            .mul(&LogCapacity::power(Nat::from(2u32), -Rat::one()))),
    }
}

/// The congruence `f(z) ≡ 0 mod N` imposed at every prime dividing `N`:
/// the local set `f^{-1}(D_p(0, |N|_p))` at each `p | N`.
///
/// Its combined capacity `Π_{p|N} |N|_p^{1/d}` equals `N^{-1/d}` by the
/// product formula, so it is evaluated without factoring `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCondition {
    pub f: IntPoly,
    pub modulus: Nat,
}

impl CongruenceCondition {
    pub fn capacity(&self) -> Result<LogCapacity> {
        let d = monic_degree(&self.f)?;
        if self.modulus < Nat::from(2u32) {
            return Err(Error::DegenerateInput("modulus must be at least 2".into()));
        }
        Ok(LogCapacity::power(
            self.modulus.clone(),
            Rat::new((-1).into(), d.into()),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdelicSet {
    exceptional: BTreeMap<Nat, LocalSet>,
    congruence: Option<CongruenceCondition>,
    arch: ArchSet,
}

impl AdelicSet {
    /// Every prime carries the default set.
    pub fn new(arch: ArchSet) -> Self {
        AdelicSet {
            exceptional: BTreeMap::new(),
            congruence: None,
            arch,
        }
    }

    /// Set the local component at `p`. Default components are not stored.
    pub fn with_place(mut self, p: Nat, set: LocalSet) -> Result<Self> {
        check_prime(&p)?;
        if self.exceptional.contains_key(&p) {
            return Err(Error::DegenerateInput(format!("place {p} given twice")));
        }
        if let Some(c) = &self.congruence {
            if (&c.modulus % &p).is_zero() {
                return Err(Error::DegenerateInput(format!(
                    "place {p} divides the congruence modulus"
                )));
            }
        }
        if set != LocalSet::PDefault {
            self.exceptional.insert(p, set);
        }
        Ok(self)
    }

    pub fn with_congruence(mut self, c: CongruenceCondition) -> Result<Self> {
        if let Some(p) = self
            .exceptional
            .keys()
            .find(|p| (&c.modulus % *p).is_zero())
        {
            return Err(Error::DegenerateInput(format!(
                "place {p} divides the congruence modulus"
            )));
        }
        self.congruence = Some(c);
        Ok(self)
    }

    /// The set whose points are the algebraic integers solving
    /// `f(z) ≡ 0 mod N` that lie in the archimedean region.
    pub fn coppersmith(f: IntPoly, modulus: Nat, arch: ArchSet) -> Result<Self> {
        monic_degree(&f)?;
        Self::new(arch).with_congruence(CongruenceCondition { f, modulus })
    }

    /// The same set built place by place from a known factorisation of `N`.
    pub fn coppersmith_factored(
        f: &IntPoly,
        factorization: &[(Nat, u32)],
        arch: ArchSet,
    ) -> Result<Self> {
        monic_degree(f)?;
        let modulus: Nat = factorization.iter().map(|(p, e)| p.pow(*e)).product();
        factorization
            .iter()
            .try_fold(Self::new(arch), |set, (p, _)| {
                set.with_place(
                    p.clone(),
                    LocalSet::Preimage {
                        f: f.clone(),
                        inner: Box::new(LocalSet::PDisk {
                            p: p.clone(),
                            modulus: modulus.clone(),
                        }),
                    },
                )
            })
    }

    pub fn exceptional(&self) -> &BTreeMap<Nat, LocalSet> {
        &self.exceptional
    }

    pub fn arch(&self) -> &ArchSet {
        &self.arch
    }
}

/// Product of all local capacities and the archimedean capacity.
pub fn global_capacity(e: &AdelicSet) -> Result<LogCapacity> {
    let mut total = arch_capacity(&e.arch)?;
    for set in e.exceptional.values() {
        total = total.mul(&local_capacity(set)?);
    }
    if let Some(c) = &e.congruence {
        total = total.mul(&c.capacity()?);
    }
    Ok(total)
}

pub fn compare_to_one(c: &LogCapacity) -> Ordering {
    c.compare_to_one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Feasibility {
    Exists,
    NotExists,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Feasibility,
    pub capacity: LogCapacity,
    pub note: String,
}

impl Verdict {
    pub fn from_capacity(capacity: LogCapacity, arch: ArchKind) -> Self {
        let solutions = match arch {
            ArchKind::Disk => "S(X)",
            ArchKind::Interval => "the totally real part of S(X)",
        };
        let (status, note) = match capacity.compare_to_one() {
            Ordering::Less => (
                Feasibility::Exists,
                format!(
                    "capacity < 1: an auxiliary polynomial exists; its roots include every element of {solutions}"
                ),
            ),
            Ordering::Greater => (
                Feasibility::NotExists,
                format!(
                    "capacity > 1: no auxiliary polynomial exists; {solutions} is infinite, so no nonzero rational function vanishes on it"
                ),
            ),
            Ordering::Equal => (
                Feasibility::Boundary,
                "capacity = 1: the existence criterion makes no claim at the boundary".to_string(),
            ),
        };
        Verdict {
            status,
            capacity,
            note,
        }
    }
}

/// Decide whether an auxiliary polynomial can exist for the small roots of
/// `f(x) ≡ 0 mod N` in the region of radius `radius`.
pub fn coppersmith_feasibility(
    f: &IntPoly,
    modulus: &Nat,
    radius: &LogRadius,
    arch: ArchKind,
) -> Result<Verdict> {
    if modulus < &Nat::from(2u32) {
        return Err(Error::DegenerateInput("modulus must be at least 2".into()));
    }
    radius.to_capacity()?;
    let set = AdelicSet::coppersmith(
        f.clone(),
        modulus.clone(),
        ArchSet::new(arch, radius.clone()),
    )?;
    Ok(Verdict::from_capacity(global_capacity(&set)?, arch))
}
