//! Exact rank of integer matrices over the rationals.
//!
//! Ranks are first computed modulo a random 62-bit prime. Reduction mod p
//! can only lose rank, so a full modular rank certifies the rational rank.
//! Anything short of full is recomputed by fraction-free (Bareiss)
//! elimination over big integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot multiply {0}x{1} by {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    /// Entry as `i64`; panics if it does not fit.
    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        self.get(i, j).to_i64().expect("entry fits in i64")
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = value.into();
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.cols + j] += value.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks blocks `[[a, b], [c, d]]`; row and column counts must agree.
    pub fn block(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> IntMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m.entries[(r0 + i) * m.cols + c0 + j] = blk.get(i, j).clone();
                }
            }
        }
        m
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> IntMatrix {
        IntMatrix {
            rows: end - start,
            cols: self.cols,
            entries: self.entries[start * self.cols..end * self.cols].to_vec(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|e| e.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| format!("{e:>width$}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    /// Bareiss elimination over the integers.
    Exact,
    /// Full rank modulo a prime, which forces full rational rank.
    ModularCertified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
}

/// Exact rank over the rationals.
pub fn rank(m: &IntMatrix) -> RankResult {
    let p = random_prime_62(&mut rand::thread_rng());
    rank_with_prime(m, p)
}

/// As [`rank`], with the prefilter prime supplied by the caller.
pub fn rank_with_prime(m: &IntMatrix, p: u64) -> RankResult {
    let full = m.rows.min(m.cols);
    if full == 0 {
        return RankResult { rank: 0, method: RankMethod::Exact };
    }
    if rank_mod_prime_unchecked(m, p) == full {
        return RankResult { rank: full, method: RankMethod::ModularCertified };
    }
    RankResult { rank: bareiss_rank(m), method: RankMethod::Exact }
}

/// Fraction-free Gaussian elimination. Every division is exact; a nonzero
/// remainder means the arithmetic is broken and panics.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    // columns are the pivot axis; keep the shorter side there
    let work = if m.rows < m.cols { m.transpose() } else { m.clone() };
    let (rows, cols) = (work.rows, work.cols);
    let mut a: Vec<Vec<BigInt>> = work.to_rows();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    if !is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    Ok(rank_mod_prime_unchecked(m, p))
}

fn rank_mod_prime_unchecked(m: &IntMatrix, p: u64) -> usize {
    let modulus = BigInt::from(p);
    let reduce = |x: &BigInt| -> u64 {
        match x.to_i128() {
            Some(v) => v.rem_euclid(p as i128) as u64,
            None => x.mod_floor(&modulus).to_u64().expect("reduced below p"),
        }
    };
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<u64>> = (0..rows).map(|i| m.row(i).iter().map(reduce).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = mod_pow(a[r][c], p - 2, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = mul_mod(row[c], inv, p);
            for j in c..cols {
                if pivot_row[j] != 0 {
                    let sub = mul_mod(factor, pivot_row[j], p);
                    row[j] = if row[j] >= sub { row[j] - sub } else { row[j] + p - sub };
                }
            }
        }
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = mod_pow(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniform-ish random prime in `[2^61, 2^62)`.
pub fn random_prime_62<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(P));
        assert!(!is_prime(1));
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_prime_62(&mut rng);
        assert!(is_prime(q) && q >= 1 << 61 && q < 1 << 62);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::zeros(3, 3)).rank, 0);
        assert_eq!(rank(&IntMatrix::zeros(0, 4)).rank, 0);
        assert_eq!(rank(&IntMatrix::identity(4)).rank, 4);
        let r = rank(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(r, RankResult { rank: 1, method: RankMethod::Exact });
        let r = rank(&IntMatrix::identity(3));
        assert_eq!(r.method, RankMethod::ModularCertified);
    }

    #[test]
    fn modular_rank_can_drop() {
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(rank_mod_p(&two, 2), Ok(0));
        assert_eq!(rank(&two).rank, 1);
        assert_eq!(rank_mod_p(&IntMatrix::identity(4), 3), Ok(4));
        assert_eq!(rank_mod_p(&two, 4), Err(LinalgError::NotPrime(4)));
        let neg = IntMatrix::from_rows(&[vec![-1, 3], vec![2, -6]]);
        assert_eq!(rank_mod_p(&neg, 7), Ok(1));
        assert_eq!(rank_mod_p(&neg, P), Ok(1));
    }

    #[test]
    fn transpose_and_products() {
        let col = IntMatrix::from_rows(&[vec![1], vec![1]]);
        assert_eq!(col.transpose(), IntMatrix::from_rows(&[vec![1, 1]]));
        let a = IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, -1]]);
        let b = IntMatrix::from_rows(&[vec![1], vec![1], vec![1]]);
        assert_eq!(a.mul(&b).unwrap(), IntMatrix::from_rows(&[vec![3], vec![0]]));
        assert!(b.mul(&b).is_err());
        let blk = IntMatrix::block(
            &IntMatrix::identity(1),
            &IntMatrix::zeros(1, 2),
            &IntMatrix::zeros(2, 1),
            &IntMatrix::identity(2),
        );
        assert_eq!(blk, IntMatrix::identity(3));
        assert_eq!(blk.row_slice(1, 3).rows(), 2);
    }

    #[test]
    fn bareiss_handles_wide_and_deficient() {
        let m = IntMatrix::from_rows(&[vec![0, 0, 1, 1], vec![0, 0, 2, 2], vec![1, 0, 0, 5]]);
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(bareiss_rank(&m.transpose()), 2);
        let big = IntMatrix::from_rows(&[
            vec![1 << 40, 3, 5],
            vec![7, 1 << 41, 11],
            vec![(1 << 40) + 7, (1 << 41) + 3, 16],
        ]);
        assert_eq!(bareiss_rank(&big), 2);
    }
}
