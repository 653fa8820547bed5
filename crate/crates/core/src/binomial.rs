//! Binomial polynomials `b_i(x) = x(x-1)…(x-i+1)/i!` and the estimates built
//! on them.
//!
//! A rational polynomial is integer-valued exactly when its coordinates in
//! the basis `{b_i}` are integers, and those coordinates are the forward
//! differences `Δ^i h(0)`. The rest of the module measures how small such a
//! polynomial can be on a disk: the explicit `b_{2t+1}(x+t)`, the `q₀`
//! threshold for it, a Minkowski count for the degree, and the prime cutoff
//! beyond which the capacity of the relevant adelic set drops below one.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::Serialize;

use crate::arith::{ln_rat, Int, Nat, PrimeStream, Rat};
use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// `Σ a_i b_i(x)`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialCombo {
    #[serde(serialize_with = "serialize_rats")]
    coeffs: Vec<Rat>,
}

fn serialize_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl BinomialCombo {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BinomialCombo { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Evaluate through `b_i(x) = b_{i-1}(x)·(x-i+1)/i`.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut b = Rat::one();
        let mut acc = Rat::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                b = b * (x - Rat::from_integer(Int::from(i - 1))) / Rat::from_integer(Int::from(i));
            }
            acc += a * &b;
        }
        acc
    }
}

impl std::fmt::Display for BinomialCombo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*b{i}"))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn int_rat(i: usize) -> Rat {
    Rat::from_integer(Int::from(i))
}

/// Exact coefficients of `b_i`.
pub fn binomial_poly(i: usize) -> RatPoly {
    let mut p = RatPoly::one();
    for k in 0..i {
        let factor = RatPoly::new(vec![
            -int_rat(k) / int_rat(k + 1),
            Rat::one() / int_rat(k + 1),
        ]);
        p = &p * &factor;
    }
    p
}

/// `coeffs[i] = Δ^i h(0)`, from the values `h(0), …, h(deg)`.
///
/// Differences are taken on `d·h`, which has integer coefficients, and
/// divided by `d` at the end.
pub fn to_binomial_basis(h: &RatPoly) -> BinomialCombo {
    let Some(deg) = h.degree() else {
        return BinomialCombo::new(Vec::new());
    };
    let (num, den) = h.clear_denominators();
    let mut diffs: Vec<Int> = (0..=deg).map(|k| num.eval(&Int::from(k))).collect();
    let mut coeffs = Vec::with_capacity(deg + 1);
    for level in 0..=deg {
        coeffs.push(Rat::new(diffs[0].clone(), den.clone()));
        for k in 0..deg - level {
            diffs[k] = &diffs[k + 1] - &diffs[k];
        }
    }
    BinomialCombo::new(coeffs)
}

/// Newton-form Horner over the integers: with `c_i = a_i·D·n!/i!`,
/// `D·n!·h = c_0 + x(c_1 + (x-1)(c_2 + …))`.
pub fn from_binomial_basis(c: &BinomialCombo) -> RatPoly {
    let Some(n) = c.degree() else {
        return RatPoly::zero();
    };
    let den = c.coeffs().iter().fold(Int::one(), |l, a| l.lcm(a.denom()));
    // n!/i! for i = n, n-1, …, 0
    let mut weight = Int::one();
    let mut acc: Vec<Int> = Vec::with_capacity(n + 1);
    for (i, a) in c.coeffs().iter().enumerate().rev() {
        if i < n {
            weight *= Int::from(i + 1);
        }
        // acc ← acc·(x - i)
        let shift = Int::from(i);
        acc.insert(0, Int::zero());
        for k in 0..acc.len() - 1 {
            let t = &acc[k + 1] * &shift;
            acc[k] -= t;
        }
        let ci = a.numer() * (&den / a.denom()) * &weight;
        acc[0] += ci;
    }
    let total = den * weight;
    RatPoly::new(
        acc.into_iter()
            .map(|v| Rat::new(v, total.clone()))
            .collect(),
    )
}

/// Integer values on all of `Z`, decided from the binomial coordinates.
pub fn is_integer_valued(h: &RatPoly) -> bool {
    to_binomial_basis(h).is_integral()
}

/// `b_{2t+1}(x+t)` in the binomial basis, from Vandermonde's identity
/// `b_n(x+t) = Σ_k C(t, n-k) b_k(x)`.
pub fn explicit_construction(t: usize) -> Result<BinomialCombo> {
    if t == 0 {
        return Err(Error::DegenerateInput("t must be at least 1".into()));
    }
    let n = 2 * t + 1;
    let mut coeffs = vec![Rat::zero(); n + 1];
    // C(t, n-k) is nonzero for n-t <= k <= n
    let mut c = Int::one();
    for j in 0..=t {
        coeffs[n - j] = Rat::from_integer(c.clone());
        c = c * Int::from(t - j) / Int::from(j + 1);
    }
    Ok(BinomialCombo::new(coeffs))
}

/// Supremum of `|b_{2t+1}(z+t)|` over `|z| <= r`, attained at `z = ir`.
#[derive(Clone, Debug, Serialize)]
pub struct SupNorm {
    #[serde(serialize_with = "crate::serialize_display")]
    pub exact: Rat,
    /// `ln` of the value, summed term by term in double precision.
    pub ln: f64,
}

/// `r·Π_{j=1}^t (r² + j²)/(2t+1)!`.
pub fn construction_sup_norm(t: usize, r: &Rat) -> Result<SupNorm> {
    if t == 0 || !r.is_positive() {
        return Err(Error::DegenerateInput(format!(
            "need t >= 1 and r > 0, got t = {t}, r = {r}"
        )));
    }
    let r2 = r * r;
    let mut exact = r.clone();
    let mut ln = ln_rat(r);
    for j in 1..=t {
        let jj = int_rat(j * j);
        ln += ln_rat(&(&r2 + &jj));
        exact *= &r2 + jj;
    }
    let mut fact = Int::one();
    for k in 2..=2 * t + 1 {
        fact *= Int::from(k);
        ln -= (k as f64).ln();
    }
    Ok(SupNorm {
        exact: exact / Rat::from_integer(fact),
        ln,
    })
}

/// Largest `|b_{2t+1}(z+t)|` over `samples` equally spaced points of
/// `|z| = r`, in double precision.
pub fn sampled_sup_norm(t: usize, r: f64, samples: usize) -> f64 {
    let ln_fact: f64 = (2..=2 * t + 1).map(|k| (k as f64).ln()).sum();
    (0..samples)
        .map(|s| {
            let theta = std::f64::consts::TAU * s as f64 / samples as f64;
            abs_construction_at(t, r, theta, ln_fact)
        })
        .fold(0.0, f64::max)
}

/// `|b_{2t+1}(z+t)|` at `z = r e^{iθ}`, using `b_{2t+1}(z+t) = z Π (z² - j²)/(2t+1)!`.
pub fn abs_construction_at(t: usize, r: f64, theta: f64, ln_fact: f64) -> f64 {
    let (zr, zi) = (r * theta.cos(), r * theta.sin());
    let (sr, si) = (zr * zr - zi * zi, 2.0 * zr * zi);
    let mut ln = r.ln() - ln_fact;
    for j in 1..=t {
        ln += (sr - (j * j) as f64).hypot(si).ln();
    }
    ln.exp()
}

/// `q·ln(4/q² + 1) + 4·arctan(q/2) − 2·ln(2)·q`.
pub fn q0_function(q: f64) -> f64 {
    q * (4.0 / (q * q) + 1.0).ln() + 4.0 * (q / 2.0).atan() - 2.0 * std::f64::consts::LN_2 * q
}

/// Root of [`q0_function`] on `[2, 64]` by bisection, to residual `tolerance`.
pub fn solve_q0(tolerance: f64) -> Result<f64> {
    if !(tolerance >= 1e-12 && tolerance.is_finite()) {
        return Err(Error::DegenerateInput(format!(
            "tolerance must be at least 1e-12, got {tolerance}"
        )));
    }
    let (mut lo, mut hi) = (2.0f64, 64.0f64);
    loop {
        let mid = 0.5 * (lo + hi);
        let v = q0_function(mid);
        if v.abs() <= tolerance || hi - lo <= f64::EPSILON * hi {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Cap on the degree scanned by [`minkowski_degree_bound`].
pub const MINKOWSKI_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct MinkowskiBound {
    /// Smallest degree at which the volume condition holds.
    pub m: u64,
    /// `⌊c·r⌋`.
    pub budget: u64,
    pub within_budget: bool,
    /// `m / r`.
    pub ratio: f64,
}

/// Slack of the volume condition at degree `m` and radius `r`:
/// `ln vol(C) + Σ_{i<=m} ln i! − (m+1)·ln 2`, where `C` is the box of
/// polynomials `Σ q_i (x/r)^i` with `|q_i| <= 1/(m+2)` and `Σ ln i!` is the
/// log-index of `Z[x]_{<=m}` in the span of `b_0, …, b_m`.
pub fn minkowski_margin(m: u64, ln_r: f64) -> f64 {
    let mut ln_fact = 0.0;
    let mut sum = 0.0;
    for i in 1..=m {
        ln_fact += (i as f64).ln();
        sum += ln_fact;
    }
    margin_from_sum(m, ln_r, sum)
}

fn margin_from_sum(m: u64, ln_r: f64, sum_ln_fact: f64) -> f64 {
    let mf = m as f64;
    let ln_vol =
        (mf + 1.0) * (std::f64::consts::LN_2 - (mf + 2.0).ln()) - mf * (mf + 1.0) / 2.0 * ln_r;
    ln_vol + sum_ln_fact - (mf + 1.0) * std::f64::consts::LN_2
}

pub fn minkowski_degree_bound(r: &Rat, c: &Rat) -> Result<MinkowskiBound> {
    minkowski_degree_bound_with_cap(r, c, MINKOWSKI_CAP)
}

pub fn minkowski_degree_bound_with_cap(r: &Rat, c: &Rat, cap: u64) -> Result<MinkowskiBound> {
    if r < &Rat::from_integer(Int::from(2)) || c <= &Rat::one() {
        return Err(Error::DegenerateInput(format!(
            "need r >= 2 and c > 1, got r = {r}, c = {c}"
        )));
    }
    let ln_r = ln_rat(r);
    let (mut ln_fact, mut sum) = (0.0f64, 0.0f64);
    for m in 0..=cap {
        if m > 0 {
            ln_fact += (m as f64).ln();
            sum += ln_fact;
        }
        if margin_from_sum(m, ln_r, sum) >= 0.0 {
            let budget = (c * r).floor().to_integer();
            let budget = u64::try_from(budget).unwrap_or(u64::MAX);
            return Ok(MinkowskiBound {
                m,
                budget,
                within_budget: m <= budget,
                ratio: m as f64 / crate::arith::rat_to_f64(r),
            });
        }
    }
    Err(Error::CapExceeded { cap })
}

/// `E` in `Σ_{p<=x} ln p/p = ln x + E + O(1/ln x)`.
pub const MERTENS_E: f64 = -1.332_582_275_733;

/// Enumeration limit for [`min_prime_cutoff_for_existence`].
pub const CUTOFF_ENUMERATION_LIMIT: u64 = 100_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct PrimeCutoff {
    /// A prime `Y` (or, when inexact, a real bound) with
    /// `Σ_{p<=Y} ln p/(p−1) > δ·ln N`.
    #[serde(serialize_with = "crate::serialize_display")]
    pub cutoff: Nat,
    /// Whether `cutoff` is the smallest such prime.
    pub exact: bool,
    /// Below this no `Y` can work; equals `cutoff` when exact.
    #[serde(serialize_with = "crate::serialize_display")]
    pub lower: Nat,
    /// The sum at `cutoff`, when enumerated.
    pub sum: Option<f64>,
}

/// Smallest `L` with `L + a + b/L >= target`, by fixed-point iteration.
fn solve_log(target: f64, a: f64, b: f64) -> f64 {
    let mut l = (target - a).max(1.0);
    for _ in 0..100 {
        l = (target - a - b / l).max(1.0);
    }
    l
}

/// Smallest `Y` with `Σ_{p<=Y} ln p/(p−1) > delta_log_n`.
///
/// The sum is enumerated when the answer is known to lie below
/// [`CUTOFF_ENUMERATION_LIMIT`]. Beyond that the result brackets the cutoff
/// between the explicit estimates
/// `ln x + E − 1/(2 ln x) < Σ ln p/p < Σ ln p/(p−1) <= ln x − γ + 1/ln x`.
pub fn min_prime_cutoff_for_existence(delta_log_n: f64) -> Result<PrimeCutoff> {
    if !(delta_log_n > 0.0 && delta_log_n.is_finite()) {
        return Err(Error::DegenerateInput(format!(
            "delta·ln N must be positive, got {delta_log_n}"
        )));
    }
    let upper_ln = solve_log(delta_log_n, MERTENS_E, -0.5);
    if upper_ln < (CUTOFF_ENUMERATION_LIMIT as f64).ln() {
        let mut sum = 0.0;
        for p in PrimeStream::new() {
            let pf = p as f64;
            sum += pf.ln() / (pf - 1.0);
            if sum > delta_log_n {
                return Ok(PrimeCutoff {
                    cutoff: Nat::from(p),
                    exact: true,
                    lower: Nat::from(p),
                    sum: Some(sum),
                });
            }
        }
    }
    let lower_ln = solve_log(delta_log_n, -crate::arith::EULER_GAMMA, 1.0);
    let to_nat = |l: f64| BigUint::from_f64(l.exp()).unwrap_or_default();
    Ok(PrimeCutoff {
        cutoff: to_nat(upper_ln) + 1u32,
        exact: false,
        lower: to_nat(lower_ln),
        sum: None,
    })
}
