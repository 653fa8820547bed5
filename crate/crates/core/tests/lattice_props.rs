mod common;

use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::lll_check::{
    det, gram_det, is_size_reduced, lovasz_holds, mat_mul, norm_sq, potential,
};
use copperscope_core::lattice::{lll_reduce, lll_reduce_integer, LatticeBasis};
use copperscope_core::Error;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn random_rows(seed: u64, k: usize, n: usize, bits: u64) -> Vec<Vec<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = BigInt::one() << bits;
    (0..k)
        .map(|_| {
            (0..n)
                .map(|_| rng.gen_bigint_range(&-&bound, &bound))
                .collect()
        })
        .collect()
}

fn delta() -> impl Strategy<Value = Q> {
    prop_oneof![
        Just(q(3, 4)),
        Just(q(99, 100)),
        Just(q(51, 100)),
        Just(q(999, 1000))
    ]
}

fn ln_potential(rows: &[Vec<BigInt>]) -> f64 {
    ln_q(&Q::from_integer(potential(rows)))
}

fn ln_q(x: &Q) -> f64 {
    let ln_int = |n: &BigInt| {
        let b = n.bits();
        let shift = b.saturating_sub(60);
        let top: BigInt = n >> shift;
        num_traits::ToPrimitive::to_f64(&top).unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln_int(x.numer()) - ln_int(x.denom())
}

fn check(rows: Vec<Vec<BigInt>>, delta: &Q) -> Result<(), TestCaseError> {
    let out = match lll_reduce_integer(rows.clone(), delta) {
        Err(Error::DependentRows) => return Err(TestCaseError::reject("dependent")),
        other => other.unwrap(),
    };
    prop_assert!(is_size_reduced(&out.rows));
    prop_assert!(lovasz_holds(&out.rows, delta));
    prop_assert_eq!(gram_det(&out.rows), gram_det(&rows));
    prop_assert_eq!(mat_mul(&out.transform, &rows), out.rows.clone());
    prop_assert_eq!(det(&out.transform).abs(), BigInt::one());

    // each swap shrinks the potential by a factor below the pass's delta
    let ln0 = ln_potential(&rows).max(0.0);
    let passes = [q(3, 10), q(3, 4), delta.clone()];
    let budget: f64 = passes
        .iter()
        .filter(|d| *d <= delta)
        .map(|d| ln0 / -ln_q(d))
        .sum::<f64>()
        + 1.0;
    prop_assert!(
        (out.swap_count as f64) <= budget,
        "{} > {}",
        out.swap_count,
        budget
    );
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn small_bases_reduce_exactly(seed in any::<u64>(), n in 1usize..9, extra in 0usize..3, bits in 1u64..80, d in delta()) {
        let k = n.saturating_sub(extra).max(1);
        check(random_rows(seed, k, n, bits), &d)?;
    }

    #[test]
    fn first_vector_meets_classical_bound(seed in any::<u64>(), n in 2usize..12, bits in 4u64..128) {
        let rows = random_rows(seed, n, n, bits);
        let out = match lll_reduce_integer(rows.clone(), &q(3, 4)) {
            Err(Error::DependentRows) => return Err(TestCaseError::reject("dependent")),
            other => other.unwrap(),
        };
        // |b1|^2 <= 2^{n-1} det(L)^{2/n}  <=>  |b1|^{2n} <= 2^{n(n-1)} det(B B^T)
        let lhs = num_traits::pow(norm_sq(&out.rows[0]), n);
        let g = gram_det(&rows);
        prop_assert!(g.is_integer());
        let rhs = (BigInt::one() << (n * (n - 1))) * g.to_integer();
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn rational_rows_round_trip(seed in any::<u64>(), n in 2usize..7, den in 1i64..1000) {
        let rows = random_rows(seed, n, n, 40);
        let qrows: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|x| Q::new(x.clone(), BigInt::from(den))).collect())
            .collect();
        let b = LatticeBasis::new(qrows.clone()).unwrap();
        let rep = match lll_reduce(&b, &q(99, 100)) {
            Err(Error::DependentRows) => return Err(TestCaseError::reject("dependent")),
            other => other.unwrap(),
        };
        prop_assert_eq!(rep.reduced.gram_determinant().unwrap(), b.gram_determinant().unwrap());
        for (t, out) in rep.transform.iter().zip(rep.reduced.rows()) {
            let mut acc = vec![Q::zero(); n];
            for (c, row) in t.iter().zip(&qrows) {
                for (a, x) in acc.iter_mut().zip(row) {
                    *a += Q::from_integer(c.clone()) * x;
                }
            }
            prop_assert_eq!(&acc, out);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn large_bases_reduce_exactly(seed in any::<u64>(), n in 12usize..=25, bits in 64u64..=256) {
        check(random_rows(seed, n, n, bits), &q(99, 100))?;
    }
}

#[test]
fn dependent_rows_are_rejected() {
    let rows = vec![
        vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
        vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)],
    ];
    assert_eq!(
        lll_reduce_integer(rows, &q(3, 4)).unwrap_err(),
        Error::DependentRows
    );
}
