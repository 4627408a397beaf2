//! Arithmetic in the prime field of order `2^61 - 1`.
//!
//! Used only where a rational statement can be certified from a modular one
//! (see `liealg::spectrum`): for an integer matrix, rank mod p never exceeds
//! the rank over the rationals.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Rat;

pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let m = (a as i128).rem_euclid(self.p as i128);
        m as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = a % &p;
        if r.is_negative() {
            r += &p;
        }
        r.to_u64().expect("residue fits in u64")
    }

    /// Reduction of a rational; `None` when p divides the denominator.
    pub fn from_rat(&self, r: &Rat) -> Option<u64> {
        let d = self.from_bigint(r.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(r.numer()), self.inv(d)))
    }

    /// Rank of a dense matrix over the field; consumes its argument.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(piv) = (r..nrows).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv(rows[r][c]);
            let (head, tail) = rows.split_at_mut(r + 1);
            let prow = &head[r];
            for row in tail.iter_mut() {
                if row[c] == 0 {
                    continue;
                }
                let f = self.mul(row[c], inv);
                for j in c..ncols {
                    if prow[j] != 0 {
                        row[j] = self.sub(row[j], self.mul(f, prow[j]));
                    }
                }
            }
            r += 1;
        }
        r
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::new(MERSENNE_61)
    }
}

/// True when every entry is zero.
pub fn all_zero(rows: &[Vec<u64>]) -> bool {
    rows.iter().all(|r| r.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rank, rat, RatMat};

    #[test]
    fn field_arithmetic() {
        let f = PrimeField::default();
        assert_eq!(f.mul(f.inv(12345), 12345), 1);
        assert_eq!(f.from_i64(-1), MERSENNE_61 - 1);
        assert_eq!(f.from_rat(&rat(1, 2)).map(|h| f.mul(h, 2)), Some(1));
    }

    #[test]
    fn modular_rank_matches_small_example() {
        let f = PrimeField::default();
        let m = RatMat::from_int_rows(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        let rows = (0..3)
            .map(|i| m.row(i).iter().map(|x| f.from_rat(x).unwrap()).collect())
            .collect();
        assert_eq!(f.rank(rows), rank(&m));
    }

    #[test]
    fn small_prime_can_drop_rank() {
        // det = 7, so the rank falls over F_7 but never rises
        let f = PrimeField::new(7);
        let rows = vec![vec![f.from_i64(3), f.from_i64(1)], vec![f.from_i64(1), f.from_i64(5)]];
        assert_eq!(f.rank(rows), 1);
    }
}
