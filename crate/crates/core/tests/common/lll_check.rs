//! Test-side exact LLL conditions via integral Gram–Schmidt, written
//! separately from the library's checker.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

/// Integral Gram–Schmidt data: `d[0] = 1`, `d[i+1]` the Gram determinant
/// of the first `i+1` rows, `lam[i][j] = d[j+1]·mu_ij`.
pub fn integral_gso(rows: &[Vec<BigInt>]) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let n = rows.len();
    let ip = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut d = vec![BigInt::one()];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut u = ip(&rows[i], &rows[j]);
            for l in 0..j {
                u = (&d[l + 1] * u - &lam[i][l] * &lam[j][l]) / &d[l];
            }
            if j < i {
                lam[i][j] = u;
            } else {
                assert!(!u.is_zero(), "dependent rows");
                d.push(u);
            }
        }
    }
    (d, lam)
}

pub fn is_size_reduced(rows: &[Vec<BigInt>]) -> bool {
    let (d, lam) = integral_gso(rows);
    (0..rows.len()).all(|i| (0..i).all(|j| BigInt::from(2) * lam[i][j].abs() <= d[j + 1]))
}

/// `delta |b*_{k-1}|^2 <= |b*_k|^2 + mu^2 |b*_{k-1}|^2`, multiplied through
/// by `d_{k-1}^2 d_{k-2}/|b*_{k-1}|^2`.
pub fn lovasz_holds(rows: &[Vec<BigInt>], delta: &Q) -> bool {
    let (d, lam) = integral_gso(rows);
    (1..rows.len()).all(|k| {
        let l = &lam[k][k - 1];
        delta.numer() * &d[k] * &d[k] <= delta.denom() * (&d[k + 1] * &d[k - 1] + l * l)
    })
}

/// `det(B B^T)`.
pub fn gram_det(rows: &[Vec<BigInt>]) -> Q {
    let (d, _) = integral_gso(rows);
    Q::from_integer(d.last().cloned().unwrap_or_else(BigInt::one))
}

/// `Π_{i>=1} d_i`.
pub fn potential(rows: &[Vec<BigInt>]) -> BigInt {
    let (d, _) = integral_gso(rows);
    d.into_iter().product()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination over the rationals.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().cloned().map(Q::from_integer).collect())
        .collect();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            let f = &row[c] / &pivot[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * y;
            }
        }
    }
    assert!(d.is_integer());
    d.to_integer()
}

pub fn norm_sq(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}
