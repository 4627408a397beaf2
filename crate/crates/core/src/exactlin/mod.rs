//! Exact rational scalars, vectors and dense matrices.
//!
//! Everything here is exact: there are no tolerances and no floating point.
//! Elimination is fraction-free (Bareiss) over integer-scaled rows, with
//! rational back substitution only where a solution vector is requested.

pub mod modp;
pub mod multimodular;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Rat::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot of vectors of different dimension");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Pairing with an integer vector.
    pub fn dot_int(&self, other: &[i64]) -> Rat {
        assert_eq!(self.dim(), other.len());
        self.0
            .iter()
            .zip(other)
            .filter(|(_, &c)| c != 0)
            .fold(Rat::zero(), |acc, (a, &c)| acc + a * int(c))
    }

    pub fn scale(&self, k: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVec {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(v: Vec<Rat>) -> Self {
        RatVec(v)
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinAlgError::Dimension("ragged rows".into()));
        }
        Ok(RatMat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> RatVec {
        RatVec((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        RatVec(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.iter())
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self - k * I`.
    pub fn shift_diagonal(&self, k: &Rat) -> RatMat {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            m.data[idx] -= k;
        }
        m
    }

    pub fn scale(&self, k: &Rat) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Quadratic form `x^T M x`.
    pub fn quadratic_form(&self, x: &RatVec) -> Rat {
        x.dot(&self.mul_vec(x))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Scales each row by the lcm of its denominators, giving an integer matrix
/// with the same row space.
fn integer_rows(m: &RatMat) -> Vec<Vec<BigInt>> {
    (0..m.rows).map(|i| integerize(m.row(i))).collect()
}

fn integerize(row: &[Rat]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Fraction-free forward elimination in place. Returns the pivot columns;
/// afterwards rows `0..pivots.len()` are in echelon form and the remaining
/// rows are zero. Pivots are only sought in columns `< pivot_limit`.
pub(crate) fn bareiss_echelon(rows: &mut [Vec<BigInt>], pivot_limit: usize) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit.min(ncols) {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = piv * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(m: &RatMat) -> usize {
    let mut rows = integer_rows(m);
    bareiss_echelon(&mut rows, m.cols).len()
}

/// Rank of an integer matrix given as rows.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let mut rows = rows.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    bareiss_echelon(&mut rows, ncols).len()
}

/// `cols - rank`, for square matrices only.
pub fn kernel_dimension(m: &RatMat) -> Result<usize, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(m.cols - rank(m))
}

/// A solution of `a x = b` together with a basis of the null space of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: RatVec,
    pub kernel: Vec<RatVec>,
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    ncols: usize,
}

fn echelon_augmented(a: &RatMat, b: &RatVec) -> Result<Echelon, LinAlgError> {
    if a.rows != b.dim() {
        return Err(LinAlgError::Dimension(format!(
            "system has {} rows but right-hand side has {} entries",
            a.rows,
            b.dim()
        )));
    }
    let rows: Vec<Vec<BigInt>> = (0..a.rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            integerize(&r)
        })
        .collect();
    echelon_rows(rows, a.cols)
}

/// Echelon form of integer rows `[a | b]` with `ncols` columns in `a`.
fn echelon_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Result<Echelon, LinAlgError> {
    let pivots = bareiss_echelon(&mut rows, ncols);
    // any nonzero right-hand side below the pivot rows means inconsistency
    let r = pivots.len();
    if rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return Err(LinAlgError::Inconsistent);
    }
    rows.truncate(r);
    Ok(Echelon { rows, pivots, ncols })
}

impl Echelon {
    /// Back substitution with the given values for free variables and with
    /// the right-hand side either used or zeroed.
    fn back_substitute(&self, free: &[(usize, Rat)], with_rhs: bool) -> RatVec {
        let mut x = vec![Rat::zero(); self.ncols];
        for (j, v) in free {
            x[*j] = v.clone();
        }
        for (k, &c) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = if with_rhs {
                Rat::from_integer(row[self.ncols].clone())
            } else {
                Rat::zero()
            };
            for j in c + 1..self.ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc -= Rat::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[c] = acc / Rat::from_integer(row[c].clone());
        }
        RatVec(x)
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Solves `a x = b` exactly, returning one solution (free variables set to
/// zero) and a kernel basis (one vector per free variable).
pub fn solve_linear(a: &RatMat, b: &RatVec) -> Result<LinearSolution, LinAlgError> {
    let ech = echelon_augmented(a, b)?;
    let particular = ech.back_substitute(&[], true);
    let kernel = ech
        .free_columns()
        .into_iter()
        .map(|f| ech.back_substitute(&[(f, Rat::one())], false))
        .collect();
    Ok(LinearSolution { particular, kernel })
}

/// Like [`solve_linear`] but skips the kernel basis.
pub fn solve_particular(a: &RatMat, b: &RatVec) -> Result<RatVec, LinAlgError> {
    let ech = echelon_augmented(a, b)?;
    Ok(ech.back_substitute(&[], true))
}

/// [`solve_particular`] for an integer system given by rows.
pub fn solve_particular_int(a: &[Vec<BigInt>], b: &[BigInt]) -> Result<RatVec, LinAlgError> {
    if a.len() != b.len() {
        return Err(LinAlgError::Dimension(format!(
            "system has {} rows but right-hand side has {} entries",
            a.len(),
            b.len()
        )));
    }
    let ncols = a.first().map_or(0, Vec::len);
    let rows = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    Ok(echelon_rows(rows, ncols)?.back_substitute(&[], true))
}

/// Basis of the null space.
pub fn kernel_basis(m: &RatMat) -> Vec<RatVec> {
    solve_linear(m, &RatVec::zeros(m.rows))
        .expect("homogeneous systems are consistent")
        .kernel
}

/// Inverse of a square nonsingular matrix.
pub fn inverse(m: &RatMat) -> Result<RatMat, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = RatVec::zeros(n);
        e[j] = Rat::one();
        let sol = solve_linear(m, &e)?;
        if !sol.kernel.is_empty() {
            return Err(LinAlgError::Inconsistent);
        }
        cols.push(sol.particular);
    }
    let mut inv = RatMat::zeros(n, n);
    for (j, c) in cols.into_iter().enumerate() {
        for i in 0..n {
            inv.set(i, j, c[i].clone());
        }
    }
    Ok(inv)
}

/// Lcm of all denominators; multiplying by it clears every fraction.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_nonnegative(r: &Rat) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMat::identity(2)), 2);
        assert_eq!(rank(&RatMat::zeros(3, 3)), 0);
        assert_eq!(rank(&RatMat::from_int_rows(&[[1, 2], [2, 4]])), 1);
    }

    #[test]
    fn solve_examples() {
        let b = RatVec::new(vec![rat(3, 2), int(-7)]);
        let sol = solve_linear(&RatMat::identity(2), &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());

        let sol = solve_linear(&RatMat::zeros(2, 2), &RatVec::zeros(2)).unwrap();
        assert!(sol.particular.is_zero());
        assert_eq!(sol.kernel.len(), 2);

        let a = RatMat::from_int_rows(&[[1, 1], [1, -1]]);
        let sol = solve_linear(&a, &RatVec::from_ints(&[2, 0])).unwrap();
        assert_eq!(sol.particular, RatVec::from_ints(&[1, 1]));
    }

    #[test]
    fn inconsistent_system() {
        let a = RatMat::from_int_rows(&[[1, 2], [2, 4]]);
        assert_eq!(
            solve_linear(&a, &RatVec::from_ints(&[1, 3])),
            Err(LinAlgError::Inconsistent)
        );
        let a = RatMat::zeros(1, 1);
        assert_eq!(
            solve_linear(&a, &RatVec::from_ints(&[1])),
            Err(LinAlgError::Inconsistent)
        );
    }

    #[test]
    fn kernel_dimension_examples() {
        assert_eq!(kernel_dimension(&RatMat::identity(4)), Ok(0));
        assert_eq!(kernel_dimension(&RatMat::zeros(4, 4)), Ok(4));
        assert_eq!(
            kernel_dimension(&RatMat::from_int_rows(&[[0, 1], [0, 0]])),
            Ok(1)
        );
        assert!(matches!(
            kernel_dimension(&RatMat::zeros(2, 3)),
            Err(LinAlgError::NotSquare { .. })
        ));
    }

    #[test]
    fn inverse_of_cartan_a2() {
        let c = RatMat::from_int_rows(&[[2, -1], [-1, 2]]);
        let inv = inverse(&c).unwrap();
        assert_eq!(inv.get(0, 0), &rat(2, 3));
        assert_eq!(inv.get(0, 1), &rat(1, 3));
        assert_eq!(c.mul(&inv), RatMat::identity(2));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rat("-4"), Some(int(-4)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(fmt_rat(&rat(-2, 4)), "-1/2");
    }

    fn small_matrix() -> impl Strategy<Value = RatMat> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |v| {
                let rows = v
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(n, d)| rat(n, d)).collect())
                    .collect();
                RatMat::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn solutions_resubstitute(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 5)) {
            // right-hand side in the column space, so the system is consistent
            let x0 = RatVec::from_ints(&seed[..m.cols()]);
            let b = m.mul_vec(&x0);
            let sol = solve_linear(&m, &b).unwrap();
            prop_assert_eq!(m.mul_vec(&sol.particular), b.clone());
            prop_assert_eq!(sol.kernel.len(), m.cols() - rank(&m));
            for k in &sol.kernel {
                prop_assert!(m.mul_vec(k).is_zero());
                prop_assert_eq!(m.mul_vec(&sol.particular.add(k)), b.clone());
            }
        }
    }
}
