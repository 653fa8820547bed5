//! Exact LLL lattice reduction.
//!
//! Reduction runs on integer rows using the fraction-free formulation, where
//! every Gram–Schmidt quantity is carried as an integer: `d_i` is the Gram
//! determinant of the first `i` rows and `λ_ij = d_{j+1} μ_ij`. Rational
//! input is scaled to integers by the common denominator first. Nothing is
//! ever rounded except the size-reduction multiplier, so the output satisfies
//! the reduction conditions exactly.
//!
//! [`gram_schmidt`] is a direct rational implementation kept independent of
//! the reduction path; [`is_lll_reduced`] uses it to certify output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

/// Rows of equal dimension, spanning a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<Rat>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let w = first.len();
            if rows.iter().any(|r| r.len() != w) {
                return Err(Error::DegenerateInput("rows differ in dimension".into()));
            }
            if rows.len() > w {
                return Err(Error::DependentRows);
            }
        }
        Ok(LatticeBasis { rows })
    }

    pub fn from_integer_rows(rows: Vec<Vec<Int>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rat::from_integer).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Common denominator and the scaled integer rows.
    pub fn to_integer_rows(&self) -> (Int, Vec<Vec<Int>>) {
        let den = self
            .rows
            .iter()
            .flatten()
            .fold(Int::one(), |l, c| l.lcm(c.denom()));
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.numer() * (&den / c.denom())).collect())
            .collect();
        (den, rows)
    }

    /// `det(B Bᵀ)`, the squared covolume.
    pub fn gram_determinant(&self) -> Result<Rat> {
        Ok(gram_schmidt(self)?.norms_sq.iter().product())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    #[serde(skip)]
    pub reduced: LatticeBasis,
    /// Unimodular matrix with `reduced = transform · input`.
    #[serde(skip)]
    pub transform: Vec<Vec<Int>>,
    #[serde(serialize_with = "crate::serialize_display")]
    pub delta: Rat,
    pub swap_count: u64,
}

pub fn default_delta() -> Rat {
    Rat::new(99.into(), 100.into())
}

fn check_delta(delta: &Rat) -> Result<()> {
    let quarter = Rat::new(1.into(), 4.into());
    if delta <= &quarter || delta >= &Rat::one() {
        return Err(Error::BadDelta(delta.to_string()));
    }
    Ok(())
}

/// LLL-reduce `b` with parameter `delta ∈ (1/4, 1)`.
pub fn lll_reduce(b: &LatticeBasis, delta: &Rat) -> Result<ReductionReport> {
    check_delta(delta)?;
    let (den, rows) = b.to_integer_rows();
    let reduced = lll_reduce_integer(rows, delta)?;
    let den_rat = Rat::from_integer(den);
    let rows = reduced
        .rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|c| Rat::from_integer(c) / &den_rat)
                .collect()
        })
        .collect();
    Ok(ReductionReport {
        reduced: LatticeBasis { rows },
        transform: reduced.transform,
        delta: delta.clone(),
        swap_count: reduced.swap_count,
    })
}

/// Output of [`lll_reduce_integer`].
#[derive(Clone, Debug)]
pub struct IntegerReduction {
    pub rows: Vec<Vec<Int>>,
    pub transform: Vec<Vec<Int>>,
    pub swap_count: u64,
}

// The reduction loop runs on GMP integers: the Gram determinants grow to
// tens of thousands of bits and the exact divisions dominate the cost.
type Z = rug::Integer;

fn to_z(v: &Int) -> Z {
    let (sign, digits) = v.to_u64_digits();
    let z = Z::from_digits(&digits, rug::integer::Order::Lsf);
    if sign == num_bigint::Sign::Minus {
        -z
    } else {
        z
    }
}

fn from_z(z: &Z) -> Int {
    let digits = z.to_digits::<u64>(rug::integer::Order::Lsf);
    let sign = match z.cmp0() {
        std::cmp::Ordering::Less => num_bigint::Sign::Minus,
        std::cmp::Ordering::Equal => num_bigint::Sign::NoSign,
        std::cmp::Ordering::Greater => num_bigint::Sign::Plus,
    };
    Int::from_biguint(
        sign,
        num_bigint::BigUint::new(
            digits
                .iter()
                .flat_map(|&d| [d as u32, (d >> 32) as u32])
                .collect(),
        ),
    )
}

fn dot(a: &[Z], b: &[Z]) -> Z {
    let mut s = Z::new();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

fn sub_scaled(target: &mut [Z], src: &[Z], q: &Z) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

struct State {
    b: Vec<Vec<Z>>,
    h: Vec<Vec<Z>>,
    // d[0] = 1, d[i + 1] = Gram determinant of rows 0..=i
    d: Vec<Z>,
    lam: Vec<Vec<Z>>,
}

impl State {
    fn size_reduce(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        if Z::from(&self.lam[k][l] * 2u32).cmp_abs(dl).is_le() {
            return;
        }
        let (q, _) = self.lam[k][l].clone().div_rem_round(dl.clone());
        let (head, tail) = self.b.split_at_mut(k);
        sub_scaled(&mut tail[0], &head[l], &q);
        let (head, tail) = self.h.split_at_mut(k);
        sub_scaled(&mut tail[0], &head[l], &q);
        self.lam[k][l] -= &q * dl;
        let (head, tail) = self.lam.split_at_mut(k);
        sub_scaled(&mut tail[0][..l], &head[l][..l], &q);
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        self.h.swap(k, k - 1);
        let (head, tail) = self.lam.split_at_mut(k);
        head[k - 1][..k - 1].swap_with_slice(&mut tail[0][..k - 1]);
        let lam = self.lam[k][k - 1].clone();
        let mut big_b = Z::from(&self.d[k - 1] * &self.d[k + 1]);
        big_b += &lam * &lam;
        big_b.div_exact_mut(&self.d[k]);
        for i in k + 1..=kmax {
            let t = std::mem::take(&mut self.lam[i][k]);
            let mut nk = Z::from(&self.d[k + 1] * &self.lam[i][k - 1]);
            nk -= &lam * &t;
            nk.div_exact_mut(&self.d[k]);
            let mut nk1 = Z::from(&big_b * &t);
            nk1 += &lam * &nk;
            nk1.div_exact_mut(&self.d[k + 1]);
            self.lam[i][k] = nk;
            self.lam[i][k - 1] = nk1;
        }
        self.d[k] = big_b;
    }
}

/// Run the reduction loop to completion at `δ = dnum/dden`, updating `b`
/// and the accumulated transform `h` in place.
fn reduce_pass(b: Vec<Vec<Z>>, h: Vec<Vec<Z>>, dnum: &Z, dden: &Z) -> Result<(State, u64)> {
    let n = b.len();
    let first = dot(&b[0], &b[0]);
    if first.cmp0().is_eq() {
        return Err(Error::DependentRows);
    }
    let mut d = vec![Z::new(); n + 1];
    d[0] = Z::from(1);
    d[1] = first;
    let mut s = State {
        d,
        lam: vec![vec![Z::new(); n]; n],
        h,
        b,
    };
    let mut swaps = 0u64;
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&s.b[k], &s.b[j]);
                for i in 0..j {
                    u *= &s.d[i + 1];
                    u -= &s.lam[k][i] * &s.lam[j][i];
                    u.div_exact_mut(&s.d[i]);
                }
                if j < k {
                    s.lam[k][j] = u;
                } else {
                    if u.cmp0().is_eq() {
                        return Err(Error::DependentRows);
                    }
                    s.d[k + 1] = u;
                }
            }
        }
        s.size_reduce(k, k - 1);
        let lhs = Z::from(&s.d[k] * &s.d[k]) * dnum;
        let mut rhs = Z::from(&s.d[k + 1] * &s.d[k - 1]);
        rhs += &s.lam[k][k - 1] * &s.lam[k][k - 1];
        rhs *= dden;
        if lhs > rhs {
            s.swap(k, kmax);
            swaps += 1;
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                s.size_reduce(k, l);
            }
            k += 1;
        }
    }
    Ok((s, swaps))
}

/// Intermediate parameters tried before the target `δ`. A weak Lovász
/// condition settles most of the large-scale structure with few swaps, and
/// each later pass starts from an almost reduced basis.
const LADDER: [(u32, u32); 2] = [(3, 10), (3, 4)];

/// Fraction-free LLL on integer rows.
///
/// The final pass runs at `delta`, so the output is exactly `delta`-reduced;
/// earlier passes at smaller parameters only change how it is reached.
/// `swap_count` totals all passes.
pub fn lll_reduce_integer(rows: Vec<Vec<Int>>, delta: &Rat) -> Result<IntegerReduction> {
    check_delta(delta)?;
    let n = rows.len();
    if n == 0 {
        return Ok(IntegerReduction {
            rows,
            transform: Vec::new(),
            swap_count: 0,
        });
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::DegenerateInput("rows differ in dimension".into()));
    }
    let mut b: Vec<Vec<Z>> = rows.iter().map(|r| r.iter().map(to_z).collect()).collect();
    let mut h: Vec<Vec<Z>> = (0..n)
        .map(|i| (0..n).map(|j| Z::from(u32::from(i == j))).collect())
        .collect();
    let mut swaps = 0u64;
    let steps = LADDER
        .iter()
        .map(|&(p, q)| Rat::new(p.into(), q.into()))
        .filter(|r| r < delta)
        .chain(std::iter::once(delta.clone()));
    for step in steps {
        let (s, sw) = reduce_pass(b, h, &to_z(step.numer()), &to_z(step.denom()))?;
        b = s.b;
        h = s.h;
        swaps += sw;
    }
    let convert = |m: &[Vec<Z>]| -> Vec<Vec<Int>> {
        m.iter().map(|r| r.iter().map(from_z).collect()).collect()
    };
    Ok(IntegerReduction {
        rows: convert(&b),
        transform: convert(&h),
        swap_count: swaps,
    })
}

/// Exact Gram–Schmidt data: `b_i = b*_i + Σ_{j<i} μ_ij b*_j`.
#[derive(Clone, Debug)]
pub struct GramSchmidt {
    pub orthogonal: Vec<Vec<Rat>>,
    /// `mu[i][j]` for `j < i`; row `i` has length `i`.
    pub mu: Vec<Vec<Rat>>,
    /// `‖b*_i‖²`.
    pub norms_sq: Vec<Rat>,
}

fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gram_schmidt(b: &LatticeBasis) -> Result<GramSchmidt> {
    let mut orthogonal: Vec<Vec<Rat>> = Vec::with_capacity(b.len());
    let mut mu = Vec::with_capacity(b.len());
    let mut norms_sq: Vec<Rat> = Vec::with_capacity(b.len());
    for row in b.rows() {
        let mut v = row.clone();
        let mut mu_row = Vec::with_capacity(orthogonal.len());
        for (star, nsq) in orthogonal.iter().zip(&norms_sq) {
            let m = rat_dot(row, star) / nsq;
            for (vi, si) in v.iter_mut().zip(star) {
                *vi -= &m * si;
            }
            mu_row.push(m);
        }
        let nsq = rat_dot(&v, &v);
        if nsq.is_zero() {
            return Err(Error::DependentRows);
        }
        orthogonal.push(v);
        mu.push(mu_row);
        norms_sq.push(nsq);
    }
    Ok(GramSchmidt {
        orthogonal,
        mu,
        norms_sq,
    })
}

/// Size reduction `|μ_ij| <= 1/2` and the Lovász condition
/// `δ‖b*_{k-1}‖² <= ‖b*_k‖² + μ²_{k,k-1}‖b*_{k-1}‖²`, checked exactly.
pub fn is_lll_reduced(b: &LatticeBasis, delta: &Rat) -> Result<bool> {
    let gs = gram_schmidt(b)?;
    let half = Rat::new(1.into(), 2.into());
    let size_reduced = gs.mu.iter().flatten().all(|m| m.abs() <= half);
    let lovasz = (1..gs.norms_sq.len()).all(|k| {
        let m = &gs.mu[k][k - 1];
        delta * &gs.norms_sq[k - 1] <= &gs.norms_sq[k] + m * m * &gs.norms_sq[k - 1]
    });
    Ok(size_reduced && lovasz)
}

/// Integer determinant by fraction-free (Bareiss) elimination.
pub fn integer_determinant(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

pub fn squared_norm(v: &[Int]) -> BigInt {
    v.iter().map(|c| c * c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| Int::from(c)).collect())
            .collect()
    }

    #[test]
    fn identity_is_already_reduced() {
        let b =
            LatticeBasis::from_integer_rows(ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        let r = lll_reduce(&b, &rat(3, 4)).unwrap();
        assert_eq!(r.reduced, b);
        assert_eq!(r.swap_count, 0);
    }

    #[test]
    fn two_dimensional_example_finds_short_vector() {
        let b = LatticeBasis::from_integer_rows(ints(&[&[201, 37], &[1648, 297]])).unwrap();
        let r = lll_reduce(&b, &default_delta()).unwrap();
        assert!(is_lll_reduced(&r.reduced, &default_delta()).unwrap());
        let (_, rows) = r.reduced.to_integer_rows();
        // brute force over |c1|, |c2| <= 60
        let mut best: Option<Int> = None;
        for c1 in -60i64..=60 {
            for c2 in -60i64..=60 {
                if c1 == 0 && c2 == 0 {
                    continue;
                }
                let v = [201 * c1 + 1648 * c2, 37 * c1 + 297 * c2];
                let n = Int::from(v[0] * v[0] + v[1] * v[1]);
                if best.as_ref().is_none_or(|b| &n < b) {
                    best = Some(n);
                }
            }
        }
        assert_eq!(squared_norm(&rows[0]), best.unwrap());
    }

    #[test]
    fn gram_schmidt_examples() {
        let b = LatticeBasis::from_integer_rows(ints(&[&[1, 1], &[0, 2]])).unwrap();
        let gs = gram_schmidt(&b).unwrap();
        assert_eq!(gs.orthogonal[1], vec![rat(-1, 1), rat(1, 1)]);
        assert_eq!(gs.mu[1][0], rat(1, 1));

        let orth =
            LatticeBasis::from_integer_rows(ints(&[&[2, 0, 0], &[0, 0, 3], &[0, 5, 0]])).unwrap();
        let gs = gram_schmidt(&orth).unwrap();
        assert!(gs.mu.iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn rational_rows_are_scaled_and_restored() {
        let b = LatticeBasis::new(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(5, 6), rat(7, 2)]])
            .unwrap();
        let r = lll_reduce(&b, &rat(3, 4)).unwrap();
        assert!(is_lll_reduced(&r.reduced, &rat(3, 4)).unwrap());
        assert_eq!(
            b.gram_determinant().unwrap(),
            r.reduced.gram_determinant().unwrap()
        );
        // reduced = transform · input
        for (t, out) in r.transform.iter().zip(r.reduced.rows()) {
            for col in 0..2 {
                let v: Rat = t
                    .iter()
                    .zip(b.rows())
                    .map(|(c, row)| Rat::from_integer(c.clone()) * &row[col])
                    .sum();
                assert_eq!(v, out[col]);
            }
        }
    }

    #[test]
    fn errors() {
        let dep = LatticeBasis::from_integer_rows(ints(&[&[1, 2, 3], &[2, 4, 6]])).unwrap();
        assert_eq!(
            lll_reduce(&dep, &rat(3, 4)).unwrap_err(),
            Error::DependentRows
        );
        assert!(gram_schmidt(&dep).is_err());
        let ok = LatticeBasis::from_integer_rows(ints(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(matches!(
            lll_reduce(&ok, &rat(1, 4)),
            Err(Error::BadDelta(_))
        ));
        assert!(matches!(
            lll_reduce(&ok, &rat(1, 1)),
            Err(Error::BadDelta(_))
        ));
        assert!(LatticeBasis::from_integer_rows(ints(&[&[1], &[2]])).is_err());
        assert!(LatticeBasis::from_integer_rows(ints(&[&[1, 0], &[2]])).is_err());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = ints(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        // 2(-8-2) +1(0-5) + 3(0-20) = -20 - 5 - 60
        assert_eq!(integer_determinant(&m), Int::from(-85));
        assert_eq!(
            integer_determinant(&ints(&[&[0, 1], &[1, 0]])),
            Int::from(-1)
        );
    }
}
