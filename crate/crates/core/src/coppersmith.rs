//! Small roots of `f(x) ≡ 0 (mod N)` by lattice reduction.
//!
//! The lattice is spanned by the coefficient vectors of `g_ij(x·X)` with
//! `g_ij = x^i f^j N^{m-j}` (`0 <= j <= m`, `0 <= i < d`) and optionally
//! `x^{d+i} f^m` for `i < t_extra`. Sorted by degree the basis is lower
//! triangular. Every lattice polynomial `h` vanishes mod `N^m` at each root
//! of `f` mod `N`, so once `‖h(xX)‖ < N^m/√w` the small roots of `f` are
//! integer roots of `h`, which are then found exactly with a Sturm chain.

use std::time::Instant;

use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::arith::{floor_root, is_prime, ln_nat, Int, Nat, Rat};
use crate::error::{Error, Result};
use crate::lattice::{default_delta, lll_reduce_integer, LatticeBasis};
use crate::poly::{IntPoly, RatPoly};

/// Largest multiplicity tried by [`solve_auto`]; keeps `w <= 13d`.
pub const MAX_M: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub f: IntPoly,
    pub modulus: Nat,
    pub radius: Nat,
    pub m: usize,
    pub t_extra: usize,
}

impl Problem {
    pub fn new(f: IntPoly, modulus: Nat, radius: Nat, m: usize, t_extra: usize) -> Result<Self> {
        let p = Problem {
            f,
            modulus,
            radius,
            m,
            t_extra,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.f.is_monic() || self.f.degree().unwrap_or(0) == 0 {
            return Err(Error::NonMonicPolynomial);
        }
        if self.modulus < Nat::from(2u32) {
            return Err(Error::DegenerateInput("modulus must be at least 2".into()));
        }
        if self.radius.is_zero() {
            return Err(Error::DegenerateInput("radius must be at least 1".into()));
        }
        if self.m == 0 {
            return Err(Error::DegenerateInput("m must be at least 1".into()));
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    pub fn dimension(&self) -> usize {
        self.degree() * (self.m + 1) + self.t_extra
    }

    fn with_radius(&self, radius: Nat) -> Problem {
        Problem {
            radius,
            ..self.clone()
        }
    }
}

/// The shift polynomials `g_ij`, in increasing degree (unscaled by `X`).
pub fn shift_polynomials(p: &Problem) -> Vec<IntPoly> {
    let d = p.degree();
    let n = Int::from(p.modulus.clone());
    let mut f_pow = IntPoly::one();
    let mut out = Vec::with_capacity(p.dimension());
    for j in 0..=p.m {
        let n_pow = Pow::pow(&n, (p.m - j) as u32);
        let g = f_pow.scale(&n_pow);
        for i in 0..d {
            out.push(g.shift_up(i));
        }
        if j < p.m {
            f_pow = &f_pow * &p.f;
        }
    }
    for i in 0..p.t_extra {
        out.push(f_pow.shift_up(d + i));
    }
    out
}

fn lattice_rows(p: &Problem) -> Vec<Vec<Int>> {
    let w = p.dimension();
    let x = Int::from(p.radius.clone());
    shift_polynomials(p)
        .iter()
        .map(|g| {
            let mut row = g.scale_argument(&x).coeffs().to_vec();
            row.resize(w, Int::zero());
            row
        })
        .collect()
}

/// Coefficient vectors of `g_ij(x·X)`; square and lower triangular.
pub fn build_lattice(p: &Problem) -> LatticeBasis {
    LatticeBasis::from_integer_rows(lattice_rows(p)).expect("square lattice")
}

/// `N^{d·m(m+1)/2} · X^{w(w-1)/2}`.
pub fn lattice_determinant(p: &Problem) -> Nat {
    let d = p.degree() as u32;
    let m = p.m as u32;
    let w = p.dimension() as u32;
    Pow::pow(&p.modulus, d * m * (m + 1) / 2) * Pow::pow(&p.radius, w * (w - 1) / 2)
}

/// `‖h(xX)‖ < N^m/√w` with `w` the number of nonzero coefficients of `h`,
/// compared exactly as `w·‖h(xX)‖² < N^{2m}`.
///
/// For an integer `h` that vanishes mod `N^m` at `r` with `|r| <= X`, the
/// Cauchy–Schwarz bound `|h(r)| <= √w ‖h(xX)‖` then forces `h(r) = 0`.
pub fn howgrave_graham_check(h: &RatPoly, x: &Nat, n: &Nat, m: usize) -> bool {
    if h.is_zero() {
        return false;
    }
    let xr = Rat::from_integer(Int::from(x.clone()));
    let mut norm_sq = Rat::zero();
    let mut w = 0u64;
    let mut x_pow = Rat::one();
    for c in h.coeffs() {
        if !c.is_zero() {
            let v = c * &x_pow;
            norm_sq += &v * &v;
            w += 1;
        }
        x_pow *= &xr;
    }
    let bound = Int::from(Pow::pow(n, 2 * m as u32));
    norm_sq * Rat::from_integer(Int::from(w)) < Rat::from_integer(bound)
}

fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative().primitive_part()];
    loop {
        let n = chain.len();
        if chain[n - 1].degree().unwrap_or(0) == 0 {
            break;
        }
        let (r, mult) = chain[n - 2].pseudo_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        // the true remainder is r / (positive or negative constant)
        let r = r.primitive_part();
        chain.push(if mult == Sign::Minus { r } else { -r });
    }
    chain
}

fn sign_changes(chain: &[IntPoly], x: &Int) -> usize {
    let mut prev = Sign::NoSign;
    let mut count = 0;
    for s in chain {
        let v = s.eval(x).sign();
        if v == Sign::NoSign {
            continue;
        }
        if prev != Sign::NoSign && v != prev {
            count += 1;
        }
        prev = v;
    }
    count
}

/// Cauchy bound: every complex root has modulus below `1 + max|a_i/a_d|`.
fn root_bound(p: &IntPoly) -> Int {
    let lead = p.leading().expect("nonzero").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Int::zero);
    Integer::div_ceil(&max, &lead) + 1
}

/// All integers `r` with `|r| <= X` and `h(r) = 0`, ascending and without
/// repetition.
///
/// The squarefree part is isolated with a Sturm chain on `(-X-1, X]`,
/// bisecting integer-endpoint intervals `(a, b]` (where `V(a) - V(b)` counts
/// the roots) down to unit width; the single candidate `b` is then checked
/// by exact evaluation.
pub fn isolate_integer_roots(h: &RatPoly, x: &Nat) -> Result<Vec<Int>> {
    if h.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero polynomial has every integer as a root".into(),
        ));
    }
    let (hi, _) = h.clear_denominators();
    if hi.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let p = hi.squarefree_part();
    let chain = sturm_chain(&p);
    let reach = root_bound(&p).min(Int::from(x.clone()));
    let mut roots = Vec::new();
    let lo: Int = -&reach - 1;
    let (vlo, vhi) = (sign_changes(&chain, &lo), sign_changes(&chain, &reach));
    let mut stack = vec![(lo, reach, vlo, vhi)];
    while let Some((a, b, va, vb)) = stack.pop() {
        if va <= vb {
            continue;
        }
        if &b - &a == Int::one() {
            if p.eval(&b).is_zero() {
                roots.push(b);
            }
            continue;
        }
        let mid: Int = (&a + &b).div_floor(&Int::from(2));
        let vm = sign_changes(&chain, &mid);
        stack.push((mid.clone(), b, vm, vb));
        stack.push((a, mid, va, vm));
    }
    roots.sort();
    Ok(roots)
}

/// The polynomial extracted from a reduced lattice vector.
#[derive(Clone, Debug, Serialize)]
pub struct AuxiliaryPolynomial {
    #[serde(serialize_with = "crate::serialize_display")]
    pub h: RatPoly,
    /// `‖h(xX)‖²`.
    #[serde(serialize_with = "crate::serialize_display")]
    pub scaled_norm_sq: Int,
    /// Lattice dimension.
    pub w: usize,
    /// Outcome of [`howgrave_graham_check`].
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    #[serde(serialize_with = "serialize_ints")]
    pub roots: Vec<Int>,
    pub m: usize,
    pub t_extra: usize,
    pub w: usize,
    #[serde(serialize_with = "crate::serialize_display")]
    pub radius: Nat,
    pub swap_count: u64,
    pub auxiliary: AuxiliaryPolynomial,
}

fn serialize_ints<S: serde::Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn reduce_first(p: &Problem) -> Result<(AuxiliaryPolynomial, u64)> {
    let rows = lattice_rows(p);
    let red = lll_reduce_integer(rows, &default_delta())?;
    let v = &red.rows[0];
    let x = Int::from(p.radius.clone());
    let mut x_pow = Int::one();
    let mut coeffs = Vec::with_capacity(v.len());
    for c in v {
        coeffs.push(Rat::from_integer(c / &x_pow));
        x_pow *= &x;
    }
    let h = RatPoly::new(coeffs);
    let certified = howgrave_graham_check(&h, &p.radius, &p.modulus, p.m);
    let scaled_norm_sq = v.iter().map(|c| c * c).sum();
    Ok((
        AuxiliaryPolynomial {
            h,
            scaled_norm_sq,
            w: p.dimension(),
            certified,
        },
        red.swap_count,
    ))
}

/// Reduce once at the given radius; `None` when the check fails.
fn attempt(p: &Problem) -> Result<Option<SolveReport>> {
    let (aux, swaps) = reduce_first(p)?;
    if !aux.certified {
        log::debug!(
            "m = {}, X = {}: reduced vector not certified",
            p.m,
            p.radius
        );
        return Ok(None);
    }
    let n = Int::from(p.modulus.clone());
    let roots = isolate_integer_roots(&aux.h, &p.radius)?
        .into_iter()
        .filter(|r| p.f.eval(r).mod_floor(&n).is_zero())
        .collect();
    Ok(Some(SolveReport {
        roots,
        m: p.m,
        t_extra: p.t_extra,
        w: p.dimension(),
        radius: p.radius.clone(),
        swap_count: swaps,
        auxiliary: aux,
    }))
}

fn certified_by_halving(p: &Problem) -> Result<Nat> {
    let mut x: Nat = &p.radius >> 1;
    while !x.is_zero() {
        if reduce_first(&p.with_radius(x.clone()))?.0.certified {
            return Ok(x);
        }
        x >>= 1;
    }
    Ok(x)
}

fn not_certified(p: &Problem) -> Result<Error> {
    Ok(Error::BoundNotCertified {
        certified_x: certified_by_halving(p)?,
        m: p.m,
        t_extra: p.t_extra,
    })
}

/// Every `r` with `|r| <= X` and `f(r) ≡ 0 (mod N)`, ascending.
pub fn solve(p: &Problem) -> Result<Vec<Int>> {
    Ok(solve_report(p)?.roots)
}

pub fn solve_report(p: &Problem) -> Result<SolveReport> {
    p.validate()?;
    match attempt(p)? {
        Some(r) => Ok(r),
        None => Err(not_certified(p)?),
    }
}

/// Per-dimension growth of the first reduced vector over `det^{1/w}`
/// observed in practice, used only to pick a starting `m`.
const LLL_GROWTH_LOG2: f64 = 0.0286;

/// Heuristic `log2` of the largest radius the lattice can certify, from
/// `‖b_1‖ ≈ 2^{c(w-1)} det^{1/w}` against `N^m/√w`.
pub fn predicted_radius_log2(modulus_log2: f64, d: usize, m: usize, t_extra: usize) -> f64 {
    let w = (d * (m + 1) + t_extra) as f64;
    let m_f = m as f64;
    let n_exp = (d * m * (m + 1)) as f64 / 2.0;
    if w <= 1.0 {
        return f64::INFINITY;
    }
    let slack = m_f * modulus_log2
        - n_exp * modulus_log2 / w
        - w.log2() / 2.0
        - LLL_GROWTH_LOG2 * (w - 1.0);
    2.0 * slack / (w - 1.0)
}

/// First `m` in `1..=MAX_M` predicted to reach `X`, else [`MAX_M`].
pub fn schedule_m(f: &IntPoly, modulus: &Nat, radius: &Nat) -> usize {
    let d = f.degree().unwrap_or(1).max(1);
    let n_bits = ln_nat(modulus) / std::f64::consts::LN_2;
    let x_bits = if radius.is_zero() {
        0.0
    } else {
        ln_nat(radius) / std::f64::consts::LN_2
    };
    (1..=MAX_M)
        .find(|&m| predicted_radius_log2(n_bits, d, m, 0) >= x_bits)
        .unwrap_or(MAX_M)
}

/// Solve with `t_extra = 0`, starting from [`schedule_m`] and raising `m`
/// until the reduced vector is certified or `m` reaches [`MAX_M`].
pub fn solve_auto(f: &IntPoly, modulus: &Nat, radius: &Nat) -> Result<SolveReport> {
    let start = schedule_m(f, modulus, radius);
    let mut last = None;
    for m in start..=MAX_M {
        let p = Problem::new(f.clone(), modulus.clone(), radius.clone(), m, 0)?;
        if let Some(r) = attempt(&p)? {
            return Ok(r);
        }
        last = Some(p);
    }
    Err(not_certified(&last.expect("schedule is non-empty"))?)
}

/// Largest `X` (found by bisection over `[1, 2N^{1/d}]`) at which the first
/// reduced vector passes the Howgrave-Graham check for this `m, t_extra`.
pub fn max_certified_radius(f: &IntPoly, modulus: &Nat, m: usize, t_extra: usize) -> Result<Nat> {
    let base = Problem::new(f.clone(), modulus.clone(), Nat::one(), m, t_extra)?;
    if !reduce_first(&base)?.0.certified {
        return Ok(Nat::zero());
    }
    let d = base.degree() as u32;
    let (mut lo, mut hi) = (Nat::one(), (floor_root(modulus, d) + 1u32) * 2u32);
    while &hi - &lo > Nat::one() {
        let mid: Nat = (&lo + &hi) >> 1;
        if reduce_first(&base.with_radius(mid.clone()))?.0.certified {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, Serialize)]
pub struct RsaDemoReport {
    pub bits: u32,
    pub seed: u64,
    #[serde(serialize_with = "crate::serialize_display")]
    pub modulus: Nat,
    pub exponent: u32,
    #[serde(serialize_with = "crate::serialize_display")]
    pub known_prefix: Nat,
    #[serde(serialize_with = "crate::serialize_display")]
    pub ciphertext: Nat,
    #[serde(serialize_with = "crate::serialize_display")]
    pub planted: Int,
    #[serde(serialize_with = "serialize_ints")]
    pub recovered: Vec<Int>,
    pub success: bool,
    pub m: usize,
    pub t_extra: usize,
    pub w: usize,
    #[serde(serialize_with = "crate::serialize_display")]
    pub certified_bound: Nat,
    pub swap_count: u64,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

fn random_prime(rng: &mut ChaCha20Rng, bits: u32, avoid: &Nat) -> Nat {
    use num_bigint::RandBigInt;
    loop {
        let mut c = rng.gen_biguint(u64::from(bits));
        c.set_bit(u64::from(bits - 1), true);
        c.set_bit(0, true);
        // e = 3 must be invertible mod p - 1
        if (&c % 3u32) != Nat::from(2u32) || &c == avoid {
            continue;
        }
        if is_prime(&c) {
            return c;
        }
    }
}

/// Low-exponent RSA with a known message prefix: `N = pq`, `e = 3`,
/// `c = (x̃ + r)^3 mod N`, and `r` recovered from `f(x) = (x̃ + x)^3 - c`.
///
/// `r` is drawn from `[0, B]` where `B` is the smaller of `N^{1/3}/4` and
/// the radius predicted reachable at `m = 6`.
pub fn demo_stereotyped_rsa(bits: u32, seed: u64) -> Result<RsaDemoReport> {
    if !(16..=512).contains(&bits) {
        return Err(Error::DegenerateInput(format!(
            "bits must lie in [16, 512], got {bits}"
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let p = random_prime(&mut rng, bits / 2, &Nat::zero());
    let q = random_prime(&mut rng, bits - bits / 2, &p);
    let n = &p * &q;
    let n_bits = ln_nat(&n) / std::f64::consts::LN_2;
    let predicted = predicted_radius_log2(n_bits, 3, 6, 0).floor().max(1.0) as u64;
    let bound = (floor_root(&n, 3) >> 2u32)
        .min(Nat::one() << predicted)
        .max(Nat::one());

    use num_bigint::RandBigInt;
    let r = rng.gen_biguint_below(&(&bound + 1u32));
    let prefix = {
        let shift = bound.bits();
        let top = rng.gen_biguint_below(&(&n >> shift));
        top << shift
    };
    let message = &prefix + &r;
    let c = message.modpow(&Nat::from(3u32), &n);

    let prefix_i = Int::from(prefix.clone());
    let f = &IntPoly::linear_root(-prefix_i).pow(3) - &IntPoly::constant(Int::from(c.clone()));
    let f = f.reduce_mod(&n);

    let start = Instant::now();
    let report = solve_auto(&f, &n, &bound)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let planted = Int::from(r);
    Ok(RsaDemoReport {
        bits,
        seed,
        modulus: n,
        exponent: 3,
        known_prefix: prefix,
        ciphertext: c,
        success: report.roots.contains(&planted),
        planted,
        recovered: report.roots,
        m: report.m,
        t_extra: report.t_extra,
        w: report.w,
        certified_bound: report.radius,
        swap_count: report.swap_count,
        elapsed_ms,
    })
}

/// `log2` of a positive integer as `f64`.
pub fn log2_nat(n: &Nat) -> f64 {
    if let Some(v) = n.to_f64().filter(|v| v.is_finite()) {
        return v.log2();
    }
    ln_nat(n) / std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::integer_determinant;

    fn nat(n: u64) -> Nat {
        Nat::from(n)
    }

    fn int(n: i64) -> Int {
        Int::from(n)
    }

    #[test]
    fn lattice_for_linear_f() {
        let p = Problem::new(IntPoly::from_i64(&[0, 1]), nat(4), nat(1), 1, 0).unwrap();
        let (_, rows) = build_lattice(&p).to_integer_rows();
        assert_eq!(rows, vec![vec![int(4), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn cubic_lattice_is_triangular_with_expected_determinant() {
        let f = IntPoly::from_i64(&[7, -2, 5, 1]);
        let p = Problem::new(f, nat(101), nat(3), 2, 0).unwrap();
        let (_, rows) = build_lattice(&p).to_integer_rows();
        assert_eq!(rows.len(), 9);
        for (k, row) in rows.iter().enumerate() {
            assert!(row[k + 1..].iter().all(Zero::is_zero));
            let j = k / 3;
            let expect = Pow::pow(&int(101), (2 - j) as u32) * Pow::pow(&int(3), k as u32);
            assert_eq!(row[k], expect);
        }
        assert_eq!(
            integer_determinant(&rows),
            Int::from(lattice_determinant(&p))
        );
        let with_extra = Problem { t_extra: 2, ..p };
        let (_, rows) = build_lattice(&with_extra).to_integer_rows();
        assert_eq!(rows.len(), 11);
        assert_eq!(
            integer_determinant(&rows),
            Int::from(lattice_determinant(&with_extra))
        );
    }

    #[test]
    fn howgrave_graham_examples() {
        let n = nat(1009);
        let nm = Pow::pow(&int(1009), 2u32);
        let half = RatPoly::new(vec![Rat::new(nm.clone(), int(2))]);
        assert!(howgrave_graham_check(&half, &nat(50), &n, 2));
        let full = RatPoly::new(vec![Rat::from_integer(nm)]);
        assert!(!howgrave_graham_check(&full, &nat(50), &n, 2));
    }

    #[test]
    fn integer_root_isolation() {
        let h = IntPoly::from_i64(&[-15, 2, 1]).to_rat(); // (x-3)(x+5)
        assert_eq!(
            isolate_integer_roots(&h, &nat(10)).unwrap(),
            vec![int(-5), int(3)]
        );
        assert_eq!(isolate_integer_roots(&h, &nat(4)).unwrap(), vec![int(3)]);
        let h = IntPoly::from_i64(&[1, 0, 1]).to_rat();
        assert!(isolate_integer_roots(&h, &nat(1_000_000))
            .unwrap()
            .is_empty());
        // repeated and rational roots: (x-2)^3 (2x-1) (x+7)
        let p = &(&IntPoly::from_i64(&[-2, 1]).pow(3) * &IntPoly::from_i64(&[-1, 2]))
            * &IntPoly::from_i64(&[7, 1]);
        assert_eq!(
            isolate_integer_roots(&p.to_rat(), &nat(100)).unwrap(),
            vec![int(-7), int(2)]
        );
        // root exactly at the radius and at zero
        let p = &IntPoly::from_i64(&[0, 1]) * &IntPoly::from_i64(&[-9, 1]);
        assert_eq!(
            isolate_integer_roots(&p.to_rat(), &nat(9)).unwrap(),
            vec![int(0), int(9)]
        );
        let p = IntPoly::from_i64(&[9, 1]);
        assert_eq!(
            isolate_integer_roots(&p.to_rat(), &nat(9)).unwrap(),
            vec![int(-9)]
        );
        assert!(isolate_integer_roots(&RatPoly::zero(), &nat(3)).is_err());
    }

    #[test]
    fn planted_root_recovered() {
        // f = (x - 5)(x - 10^9) + N·k, with N near 2^60
        let n: Nat = (nat(1) << 60u32) + 33u32;
        let k = int(123_456_789);
        let f = &(&IntPoly::from_i64(&[-5, 1]) * &IntPoly::from_i64(&[-1_000_000_000, 1]))
            + &IntPoly::constant(Int::from(n.clone()) * k);
        let p = Problem::new(f, n, nat(100), 2, 0).unwrap();
        assert!(solve(&p).unwrap().contains(&int(5)));
    }

    #[test]
    fn pure_power_has_root_zero() {
        for d in 1..=4 {
            let mut c = vec![0i64; d + 1];
            c[d] = 1;
            let p = Problem::new(IntPoly::from_i64(&c), nat(1_000_003), nat(1), 2, 0).unwrap();
            assert!(solve(&p).unwrap().contains(&int(0)));
        }
    }

    #[test]
    fn oversized_radius_is_not_certified() {
        let n = nat(1_000_003);
        let f = IntPoly::from_i64(&[3, 0, 0, 1]);
        let p = Problem::new(f, n.clone(), n, 2, 0).unwrap();
        match solve(&p) {
            Err(Error::BoundNotCertified { certified_x, m, .. }) => {
                assert_eq!(m, 2);
                assert!(certified_x < nat(100));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn problem_validation() {
        let f = IntPoly::from_i64(&[1, 2]);
        assert_eq!(
            Problem::new(f, nat(10), nat(1), 1, 0),
            Err(Error::NonMonicPolynomial)
        );
        let f = IntPoly::from_i64(&[1, 1]);
        assert!(Problem::new(f.clone(), nat(1), nat(1), 1, 0).is_err());
        assert!(Problem::new(f.clone(), nat(10), nat(0), 1, 0).is_err());
        assert!(Problem::new(f, nat(10), nat(1), 0, 0).is_err());
    }

    #[test]
    fn rsa_demo_small() {
        for seed in 0..3 {
            let r = demo_stereotyped_rsa(16, seed).unwrap();
            assert!(r.success, "{r:?}");
            assert_eq!(r.w, 3 * (r.m + 1) + r.t_extra);
        }
        let r = demo_stereotyped_rsa(60, 7).unwrap();
        assert!(r.success);
        assert!(demo_stereotyped_rsa(15, 0).is_err());
    }
}
