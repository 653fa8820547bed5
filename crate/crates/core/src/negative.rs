//! Obstructions for auxiliary polynomials built from `b_i(x)·b_j(f(x)/N)`
//! with `i, j <= M`.
//!
//! Such an `h` is `p`-integral on the candidate roots at every prime `p > M`
//! and at every `p | N`. For the primes `p <= M` not dividing `N` it is only
//! bounded by `p^{1/(p-1)}`, so the relevant adelic set has
//! `ln γ = −Σ_{p<=M} ln p/(p−1) + ε·ln N`. When that is positive no useful `h`
//! exists unless `N` has a prime factor `<= M`, since those primes were the
//! ones assumed not to divide `N`.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::arith::{
    ln_nat, primes_up_to, rat_to_f64, smallest_prime_factor_up_to, valuation_unchecked, Int, Nat,
    PAdicVal, Rat, EULER_GAMMA,
};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Smallest `M` for which the Rosser estimate holds.
pub const ROSSER_MIN: u64 = 319;

/// Constant in the sufficient condition `c·N^ε > M`, as derived from
/// `e^{γ − 1/ln 319}`.
pub const DERIVED_CONSTANT: f64 = 1.48744;

/// The same constant as it appears in the headline statement.
pub const STATED_CONSTANT: f64 = 1.48774;

/// Margin below which the capacity sign is treated as undecided.
pub const VERDICT_SLACK: f64 = 1e-9;

/// `Σ_{p<=M} ln p/(p−1)`, the log of `Π_{p<=M} p^{1/(p−1)}`.
pub fn prime_product(m: u64) -> f64 {
    primes_up_to(m)
        .into_iter()
        .map(|p| {
            let pf = p as f64;
            pf.ln() / (pf - 1.0)
        })
        .sum()
}

/// `−ln M + γ − 1/ln M`, a lower bound for `−Σ_{p<=M} ln p/(p−1)`.
pub fn rosser_lower_bound(m: u64) -> Result<f64> {
    if m < ROSSER_MIN {
        return Err(Error::DomainTooSmall {
            value: m,
            min: ROSSER_MIN,
        });
    }
    let l = (m as f64).ln();
    Ok(-l + EULER_GAMMA - 1.0 / l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NegativeVerdict {
    /// Positive capacity: any such `h` forces a prime factor `<= M`.
    ForcesSmallFactor,
    Inconclusive,
    SmallFactorFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeAnalysis {
    #[serde(serialize_with = "crate::serialize_display")]
    pub modulus: Nat,
    pub d: u32,
    #[serde(serialize_with = "crate::serialize_display")]
    pub epsilon: Rat,
    pub m_bound: u64,
    pub small_factor: Option<u64>,
    pub prime_product_log: f64,
    pub capacity_log: f64,
    pub verdict: NegativeVerdict,
    /// `N^ε > Π_{p<=M} p^{1/(p−1)}`, i.e. `capacity_log > 0`.
    pub product_condition: bool,
    /// `e^{γ − 1/ln M}·N^ε > M`; `None` below [`ROSSER_MIN`].
    pub rosser_condition: Option<bool>,
    /// `1.48744·N^ε > M` with `M >= 319`.
    pub constant_condition: bool,
    pub derived_constant: f64,
    pub stated_constant: f64,
}

/// Trial division up to `M` (inclusive), then the sign of the capacity.
pub fn analyze(n: &Nat, d: u32, epsilon: &Rat, m: u64) -> Result<NegativeAnalysis> {
    if n < &Nat::from(2u32) || d == 0 || !epsilon.is_positive() || m < 2 {
        return Err(Error::DegenerateInput(format!(
            "need N >= 2, d >= 1, epsilon > 0, M >= 2; got N = {n}, d = {d}, epsilon = {epsilon}, M = {m}"
        )));
    }
    let small_factor = smallest_prime_factor_up_to(n, m);
    let prime_product_log = prime_product(m);
    let eps_ln_n = rat_to_f64(epsilon) * ln_nat(n);
    let capacity_log = eps_ln_n - prime_product_log;
    let ln_m = (m as f64).ln();
    let rosser_condition = (m >= ROSSER_MIN).then(|| EULER_GAMMA - 1.0 / ln_m + eps_ln_n > ln_m);
    let constant_condition = m >= ROSSER_MIN && DERIVED_CONSTANT.ln() + eps_ln_n > ln_m;
    let verdict = if small_factor.is_some() {
        NegativeVerdict::SmallFactorFound
    } else if capacity_log > VERDICT_SLACK {
        NegativeVerdict::ForcesSmallFactor
    } else {
        NegativeVerdict::Inconclusive
    };
    Ok(NegativeAnalysis {
        modulus: n.clone(),
        d,
        epsilon: epsilon.clone(),
        m_bound: m,
        small_factor,
        prime_product_log,
        capacity_log,
        verdict,
        product_condition: capacity_log > 0.0,
        rosser_condition,
        constant_condition,
        derived_constant: DERIVED_CONSTANT,
        stated_constant: STATED_CONSTANT,
    })
}

/// `h(x) = Σ a_ij b_i(x) b_j(f(x)/N)`.
#[derive(Clone, Debug)]
pub struct BinomialPairForm {
    /// `coeffs[i][j] = a_ij`.
    pub coeffs: Vec<Vec<Rat>>,
    pub f: IntPoly,
    pub modulus: Nat,
}

/// `b_0(x), …, b_k(x)` at a rational point.
fn binomial_values(x: &Rat, k: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(k + 1);
    let mut b = Rat::one();
    out.push(b.clone());
    for i in 1..=k {
        b = b * (x - Rat::from_integer(Int::from(i - 1))) / Rat::from_integer(Int::from(i));
        out.push(b.clone());
    }
    out
}

impl BinomialPairForm {
    pub fn eval(&self, z: &Int) -> Rat {
        let ni = self.coeffs.len();
        let nj = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        if ni == 0 || nj == 0 {
            return Rat::zero();
        }
        let bx = binomial_values(&Rat::from_integer(z.clone()), ni - 1);
        let y = Rat::new(self.f.eval(z), Int::from(self.modulus.clone()));
        let by = binomial_values(&y, nj - 1);
        let mut acc = Rat::zero();
        for (row, bi) in self.coeffs.iter().zip(&bx) {
            for (a, bj) in row.iter().zip(&by) {
                if !a.is_zero() {
                    acc += a * bi * bj;
                }
            }
        }
        acc
    }

    /// Largest `i` or `j` carrying a nonzero coefficient.
    pub fn index_bound(&self) -> usize {
        let mut m = 0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    m = m.max(i).max(j);
                }
            }
        }
        m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaViolation {
    #[serde(serialize_with = "crate::serialize_display")]
    pub z: Int,
    pub p: u64,
    pub valuation: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub points: usize,
    pub checks: usize,
    /// Pairs skipped because `p | N` and `f(z) ≢ 0 (mod N)`.
    pub skipped: usize,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `v_p(h(z)) >= 0` for every prime `p <= prime_limit` at the given
/// points. Primes dividing `N` are checked only where `f(z) ≡ 0 (mod N)`,
/// which is where `f(z)/N` is `p`-integral.
pub fn verify_lemma_bounds_at(
    form: &BinomialPairForm,
    points: &[Int],
    prime_limit: u64,
) -> LemmaReport {
    let primes = primes_up_to(prime_limit);
    let n = Int::from(form.modulus.clone());
    let mut report = LemmaReport {
        points: points.len(),
        checks: 0,
        skipped: 0,
        violations: Vec::new(),
    };
    for z in points {
        let on_root = form.f.eval(z).mod_floor(&n).is_zero();
        let value = form.eval(z);
        for &p in &primes {
            if !on_root && (&form.modulus % p).is_zero() {
                report.skipped += 1;
                continue;
            }
            report.checks += 1;
            if let PAdicVal::Finite(v) = valuation_unchecked(&value, &Nat::from(p)) {
                if v < 0 {
                    report.violations.push(LemmaViolation {
                        z: z.clone(),
                        p,
                        valuation: v,
                    });
                }
            }
        }
    }
    report
}

/// [`verify_lemma_bounds_at`] on `sample_count` seeded points: half drawn
/// uniformly from `[−10^6, 10^6]`, half from the residues `r + kN` of roots
/// `r` of `f` mod `N` found among the first `min(N, 10^5)` residues.
pub fn verify_lemma_bounds(
    form: &BinomialPairForm,
    sample_count: usize,
    seed: u64,
    prime_limit: u64,
) -> LemmaReport {
    use rand::Rng;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let n = Int::from(form.modulus.clone());
    let scan = form.modulus.to_u64().unwrap_or(u64::MAX).min(100_000);
    let roots: Vec<Int> = (0..scan)
        .map(Int::from)
        .filter(|r| form.f.eval(r).mod_floor(&n).is_zero())
        .collect();
    let mut points = Vec::with_capacity(sample_count);
    for s in 0..sample_count {
        if s % 2 == 1 && !roots.is_empty() {
            let r = &roots[rng.gen_range(0..roots.len())];
            let k: i64 = rng.gen_range(-1000..=1000);
            points.push(r + &n * Int::from(k));
        } else {
            points.push(Int::from(rng.gen_range(-1_000_000i64..=1_000_000)));
        }
    }
    verify_lemma_bounds_at(form, &points, prime_limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, rat};

    #[test]
    fn prime_product_examples() {
        let direct = 2f64.ln() + 3f64.ln() / 2.0 + 5f64.ln() / 4.0 + 7f64.ln() / 6.0;
        assert!((prime_product(10) - direct).abs() < 1e-12);
        assert!((prime_product(10) - 1.969131).abs() < 1e-6);
        assert!((prime_product(2) - 2f64.ln()).abs() < 1e-15);
        let l = 319f64.ln();
        assert!(prime_product(319) <= l - EULER_GAMMA + 1.0 / l);
    }

    #[test]
    fn rosser_bound_examples() {
        let v = rosser_lower_bound(319).unwrap();
        assert!((v - (-5.36144)).abs() < 1e-4, "{v}");
        let c = (EULER_GAMMA - 1.0 / 319f64.ln()).exp();
        assert!(c >= 1.497445, "{c}");
        assert_eq!(
            rosser_lower_bound(318),
            Err(Error::DomainTooSmall {
                value: 318,
                min: 319
            })
        );
    }

    fn next_prime(mut n: Nat) -> Nat {
        while !is_prime(&n) {
            n += 1u32;
        }
        n
    }

    #[test]
    fn analyze_examples() {
        let p = next_prime(Nat::from(1u64 << 39) + 12345u32);
        let q = next_prime(Nat::from(1u64 << 39) + 987_654u32);
        let a = analyze(&(&p * &q), 3, &rat(1, 10), 319).unwrap();
        assert_eq!(a.verdict, NegativeVerdict::ForcesSmallFactor);
        assert!(a.constant_condition && a.rosser_condition == Some(true) && a.product_condition);

        let a = analyze(&(Nat::from(2u32) * &q), 3, &rat(1, 10), 319).unwrap();
        assert_eq!(a.verdict, NegativeVerdict::SmallFactorFound);
        assert_eq!(a.small_factor, Some(2));

        // ε·ln N = 0.1 with M = 10: the capacity is below one
        let n = &p * &q;
        let eps = Rat::new(Int::from(1), Int::from(10)) / Rat::from_float(ln_nat(&n)).unwrap();
        let a = analyze(&n, 3, &eps, 10).unwrap();
        assert_eq!(a.verdict, NegativeVerdict::Inconclusive);
        assert!(!a.constant_condition);
        assert_eq!(a.rosser_condition, None);

        assert!(analyze(&n, 0, &rat(1, 10), 319).is_err());
        assert!(analyze(&n, 3, &rat(0, 1), 319).is_err());
        assert!(analyze(&Nat::one(), 3, &rat(1, 10), 319).is_err());
    }

    #[test]
    fn trial_division_bound_is_inclusive() {
        let q = next_prime(Nat::from(1u64 << 40));
        let a = analyze(&(Nat::from(317u32) * &q), 2, &rat(1, 10), 317).unwrap();
        assert_eq!(a.small_factor, Some(317));
        let a = analyze(&(Nat::from(317u32) * &q), 2, &rat(1, 10), 316).unwrap();
        assert_eq!(a.small_factor, None);
    }

    #[test]
    fn lemma_bounds() {
        // f(x) = x^2 - 4 mod 21 has roots 2 and 19 (and others)
        let f = IntPoly::from_i64(&[-4, 0, 1]);
        let n = Nat::from(21u32);
        let one = |i: usize, j: usize| {
            let mut c = vec![vec![Rat::zero(); j + 1]; i + 1];
            c[i][j] = Rat::one();
            c
        };
        let form = BinomialPairForm {
            coeffs: one(1, 1),
            f: f.clone(),
            modulus: n.clone(),
        };
        let r = verify_lemma_bounds(&form, 200, 7, 50);
        assert!(r.holds(), "{:?}", r.violations.first());
        assert!(r.checks > 0 && r.skipped > 0);

        let trivial = BinomialPairForm {
            coeffs: one(0, 0),
            f: f.clone(),
            modulus: n.clone(),
        };
        assert!(verify_lemma_bounds(&trivial, 50, 1, 50).holds());

        let broken = BinomialPairForm {
            coeffs: vec![vec![rat(1, 2)]],
            f,
            modulus: n,
        };
        let r = verify_lemma_bounds_at(&broken, &[Int::from(2), Int::from(5)], 10);
        assert!(!r.holds());
        assert!(r.violations.iter().all(|v| v.p == 2 && v.valuation == -1));
    }
}
