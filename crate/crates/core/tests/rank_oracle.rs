use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use wlp_core::linalg::{bareiss_rank, rank, rank_mod_p, rank_with_prime, IntMatrix};

/// Textbook Gauss–Jordan over the rationals.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let factor = m[r][c].clone() / pivot.clone();
                for k in c..cols {
                    let sub = factor.clone() * m[rank][k].clone();
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

/// Product of random `r x k` and `k x c` factors, so rank is at most `k`.
fn low_rank_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..8, 1usize..8, 0usize..4).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec(prop::collection::vec(-4i64..=4, k), r),
            prop::collection::vec(prop::collection::vec(-4i64..=4, c), k),
        )
            .prop_map(move |(a, b)| {
                (0..r)
                    .map(|i| (0..c).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
                    .collect()
            })
    })
}

proptest! {
    #[test]
    fn bareiss_matches_rationals(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let expected = rational_rank(&rows);
        prop_assert_eq!(bareiss_rank(&m), expected);
        prop_assert_eq!(rank(&m).rank, expected);
        prop_assert_eq!(bareiss_rank(&m.transpose()), expected);
    }

    #[test]
    fn low_rank_products(rows in low_rank_matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let expected = rational_rank(&rows);
        prop_assert_eq!(rank(&m).rank, expected);
        // a tiny prime can only lose rank, never invent it
        prop_assert!(rank_mod_p(&m, 3).unwrap() <= expected);
    }
}

#[test]
fn unlucky_prime_falls_back_to_exact() {
    // full rank over Q, singular mod 7
    let rows = vec![vec![7, 0], vec![0, 1]];
    let m = IntMatrix::from_rows(&rows);
    assert_eq!(rank_mod_p(&m, 7).unwrap(), 1);
    assert_eq!(rank_with_prime(&m, 7).rank, 2);
    assert_eq!(rational_rank(&rows), 2);
}

#[test]
fn large_entries() {
    let big = 1i64 << 40;
    let rows = vec![vec![big, big + 1, 3], vec![big - 1, big, 5], vec![2 * big - 1, 2 * big + 1, 8]];
    let m = IntMatrix::from_rows(&rows);
    assert_eq!(rank(&m).rank, rational_rank(&rows));
    assert_eq!(rational_rank(&rows), 2);
}
