//! Multimodular solution of linear systems with a unique solution.
//!
//! The system is solved modulo many word-size primes, combined by CRT and
//! lifted to rationals by rational reconstruction. The lifted vector is
//! accepted only after `a x = b` is re-checked exactly, so a wrong lift can
//! cost time but never correctness.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{integerize, solve_particular, LinAlgError, Rat, RatMat, RatVec};

const PRIME_COUNT: usize = 4096;

/// Primes below `2^31`, largest first.
pub fn word_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u32(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `n < 2^32`.
fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn reduce(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue")
}

/// Unique solution of `[a | b]` mod p, or `None` if the reduction is
/// rank deficient or inconsistent.
fn solve_mod(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> Option<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| reduce(x, p)).collect())
        .collect();
    let nrows = m.len();
    let mut r = 0;
    for c in 0..ncols {
        let piv = (r..nrows).find(|&i| m[i][c] != 0)?;
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        for x in m[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = std::mem::take(&mut m[r]);
        for row in m.iter_mut().filter(|row| !row.is_empty()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..=ncols {
                if prow[j] != 0 {
                    row[j] = (row[j] + (p - f) * prow[j]) % p;
                }
            }
        }
        m[r] = prow;
        r += 1;
    }
    if m[r..].iter().any(|row| row[ncols] != 0) {
        return None;
    }
    Some((0..ncols).map(|c| m[c][ncols]).collect())
}

/// `a / b` with `|a|, b <= sqrt(m / 2)` and `a = b u (mod m)`, if it exists.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Exact check of `rows . x = rhs` for integer rows `[a | b]`.
fn satisfies(rows: &[Vec<BigInt>], ncols: usize, x: &[Rat]) -> bool {
    let den = super::common_denominator(x.iter());
    let y: Vec<BigInt> = x
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    rows.iter().all(|row| {
        let lhs = row[..ncols]
            .iter()
            .zip(&y)
            .filter(|(a, _)| !a.is_zero())
            .fold(BigInt::zero(), |acc, (a, v)| acc + a * v);
        lhs == &row[ncols] * &den
    })
}

/// Solves `a x = b` when the solution is unique, falling back to exact
/// elimination when the multimodular lift does not settle.
pub fn solve_unique(a: &RatMat, b: &RatVec) -> Result<RatVec, LinAlgError> {
    if a.rows() != b.dim() {
        return Err(LinAlgError::Dimension(format!(
            "system has {} rows but right-hand side has {} entries",
            a.rows(),
            b.dim()
        )));
    }
    let ncols = a.cols();
    let rows: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            integerize(&r)
        })
        .collect();
    match lift(&rows, ncols) {
        Some(x) => Ok(RatVec::new(x)),
        None => solve_particular(a, b),
    }
}

fn lift(rows: &[Vec<BigInt>], ncols: usize) -> Option<Vec<Rat>> {
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); ncols];
    let mut used = 0;
    let mut misses = 0;
    let mut next_check = 4;
    for &p in word_primes() {
        let Some(xp) = solve_mod(rows, ncols, p) else {
            // a few unlucky primes are expected; many mean no unique solution
            misses += 1;
            if misses > 8 && used == 0 {
                return None;
            }
            continue;
        };
        // CRT: acc + modulus * ((xp - acc) / modulus mod p)
        let pb = BigInt::from(p);
        let minv = BigInt::from(pow_mod(reduce(&modulus, p), p - 2, p));
        for (a, &r) in acc.iter_mut().zip(&xp) {
            let diff = (BigInt::from(r) - &*a).mod_floor(&pb);
            let t = (diff * &minv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= pb;
        used += 1;
        if used == next_check {
            next_check += next_check / 2 + 1;
            let x: Option<Vec<Rat>> = acc
                .iter()
                .map(|u| rational_reconstruction(u, &modulus))
                .collect();
            if let Some(x) = x {
                if satisfies(rows, ncols, &x) {
                    return Some(x);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    #[test]
    fn primes() {
        let ps = word_primes();
        assert_eq!(ps[0], 2147483647);
        assert_eq!(ps[1], 2147483629);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime_u32(2147483647 - 2));
        assert!(is_prime_u32(7) && !is_prime_u32(91));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        for (n, d) in [(3, 7), (-22, 5), (0, 1), (1, 1)] {
            let inv = BigInt::from(d).modinv(&m).unwrap();
            let u = (BigInt::from(n) * inv).mod_floor(&m);
            assert_eq!(rational_reconstruction(&u, &m), Some(rat(n, d)));
        }
    }

    #[test]
    fn agrees_with_exact_elimination() {
        let a = RatMat::from_rows(vec![
            vec![rat(1, 3), rat(2, 1), rat(-5, 7)],
            vec![rat(4, 1), rat(0, 1), rat(1, 2)],
            vec![rat(9, 11), rat(-1, 1), rat(3, 1)],
            vec![rat(0, 1), rat(0, 1), rat(0, 1)],
        ])
        .unwrap();
        let x = RatVec::new(vec![rat(123456789, 1000), rat(-7, 3), rat(1, 1 << 40)]);
        let b = a.mul_vec(&x);
        assert_eq!(solve_unique(&a, &b).unwrap(), x);
    }

    #[test]
    fn falls_back_without_unique_solution() {
        let a = RatMat::from_int_rows(&[[1, 1], [2, 2]]);
        let b = RatVec::from_ints(&[1, 2]);
        let x = solve_unique(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let b = RatVec::from_ints(&[1, 3]);
        assert_eq!(solve_unique(&a, &b), Err(LinAlgError::Inconsistent));
    }
}
