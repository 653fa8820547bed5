//! Dense univariate polynomials over Z and Q.
//!
//! Coefficients are stored constant-term first. Both types keep a canonical
//! form: no trailing zero coefficients, so the zero polynomial is the empty
//! vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Nat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Int::one())
    }

    pub fn constant(c: Int) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Int, k: usize) -> Self {
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - a`.
    pub fn linear_root(a: Int) -> Self {
        Self::new(vec![-a, Int::one()])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Int) -> Int {
        self.coeffs
            .iter()
            .rev()
            .fold(Int::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
    }

    /// Sign of `self(num/den)` for `den > 0`, via the homogenised integer
    /// evaluation `den^deg * self(num/den)`.
    pub fn sign_at(&self, num: &Int, den: &Int) -> Sign {
        let mut acc = Int::zero();
        let mut den_pow = Int::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc.sign()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `self(x * s)`: coefficient `i` multiplied by `s^i`.
    pub fn scale_argument(&self, s: &Int) -> Self {
        let mut pow = Int::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= s;
        }
        Self::new(out)
    }

    /// `self(x + t)` by repeated synthetic division (Taylor shift).
    pub fn taylor_shift(&self, t: &Int) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = &c[j + 1] * t;
                c[j] += add;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> Int {
        self.coeffs.iter().fold(Int::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Coefficients reduced into `[0, n)`.
    pub fn reduce_mod(&self, n: &Nat) -> Self {
        let n = Int::from(n.clone());
        Self::new(self.coeffs.iter().map(|c| c.mod_floor(&n)).collect())
    }

    /// Pseudo-remainder `lc(b)^k * self mod b`, returned with the sign of
    /// the multiplier `lc(b)^k`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> (IntPoly, Sign) {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let mut sign = Sign::Plus;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            r = &r.scale(&lb) - &b.shift_up(dr - db).scale(&lr);
            if lb.is_negative() {
                sign = -sign;
            }
        }
        (r, sign)
    }

    /// Exact division; panics if `b` does not divide `self` over Z.
    pub fn div_exact(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let mut q = vec![Int::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (c, rem) = r.leading().expect("nonzero").div_rem(&lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            r = &r - &b.shift_up(dr - db).scale(&c);
            q[dr - db] = c;
        }
        assert!(r.is_zero(), "inexact polynomial division");
        IntPoly::new(q)
    }

    /// Primitive gcd over Q, normalised to a positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.leading().is_some_and(Signed::is_negative) {
            a = -a;
        }
        a
    }

    /// Product of the distinct irreducible factors (primitive).
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        self.primitive_part().div_exact(&g).primitive_part()
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(ToString::to_string))
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: impl Iterator<Item = String>) -> fmt::Result {
    let terms: Vec<String> = coeffs
        .enumerate()
        .filter(|(_, c)| c != "0")
        .map(|(i, c)| match i {
            0 => c,
            1 => format!("({c})*x"),
            _ => format!("({c})*x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        f.write_str("0")
    } else {
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Evaluate at an integer, accumulating over a common denominator.
    pub fn eval_int(&self, x: &Int) -> Rat {
        let (num, den) = self.clear_denominators();
        Rat::new(num.eval(x), den)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Returns `(p, d)` with `self = p / d`, `d > 0` the lcm of denominators.
    pub fn clear_denominators(&self) -> (IntPoly, Int) {
        let den = self.coeffs.iter().fold(Int::one(), |l, c| l.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (IntPoly::new(num), den)
    }

    /// `Some` when all coefficients are integers.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    pub fn taylor_shift(&self, t: &Int) -> Self {
        let (num, den) = self.clear_denominators();
        let shifted = num.taylor_shift(t);
        RatPoly::new(
            shifted
                .coeffs()
                .iter()
                .map(|c| Rat::new(c.clone(), den.clone()))
                .collect(),
        )
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        let (a, da) = self.clear_denominators();
        let (b, db) = rhs.clear_denominators();
        let prod = &a * &b;
        let den = da * db;
        RatPoly::new(
            prod.coeffs()
                .iter()
                .map(|c| Rat::new(c.clone(), den.clone()))
                .collect(),
        )
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        p.to_rat()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(ToString::to_string))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_zeros() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPoly::from_i64(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic_and_eval() {
        let a = IntPoly::from_i64(&[-3, 1]);
        let b = IntPoly::from_i64(&[5, 1]);
        let p = &a * &b;
        assert_eq!(p, IntPoly::from_i64(&[-15, 2, 1]));
        assert_eq!(p.eval(&Int::from(3)), Int::zero());
        assert_eq!(p.eval(&Int::from(-5)), Int::zero());
        assert_eq!((&p - &p), IntPoly::zero());
        assert_eq!(p.derivative(), IntPoly::from_i64(&[2, 2]));
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let p = IntPoly::from_i64(&[7, -3, 0, 2, 1]);
        let t = Int::from(-4);
        let shifted = p.taylor_shift(&t);
        for x in -6..6 {
            let x = Int::from(x);
            assert_eq!(shifted.eval(&x), p.eval(&(&x + &t)));
        }
    }

    #[test]
    fn squarefree_part_removes_repeated_factors() {
        let a = IntPoly::from_i64(&[-3, 1]);
        let b = IntPoly::from_i64(&[1, 0, 1]);
        let p = &(&a * &a) * &(&b.scale(&Int::from(6)) * &a);
        let s = p.squarefree_part();
        assert_eq!(s, &a * &b);
    }

    #[test]
    fn sign_at_rational_point() {
        let p = IntPoly::from_i64(&[-1, 2]);
        assert_eq!(p.sign_at(&Int::from(1), &Int::from(3)), Sign::Minus);
        assert_eq!(p.sign_at(&Int::from(1), &Int::from(2)), Sign::NoSign);
        assert_eq!(p.sign_at(&Int::from(2), &Int::from(3)), Sign::Plus);
    }

    #[test]
    fn rat_clear_denominators() {
        let p = RatPoly::new(vec![
            Rat::new(1.into(), 2.into()),
            Rat::new(1.into(), 3.into()),
        ]);
        let (num, den) = p.clear_denominators();
        assert_eq!(den, Int::from(6));
        assert_eq!(num, IntPoly::from_i64(&[3, 2]));
        assert_eq!(p.eval_int(&Int::from(3)), Rat::new(3.into(), 2.into()));
    }
}
