//! Elements of the Lie algebra in the Chevalley basis.
//!
//! Basis order: `e_alpha` for positive roots (`0..P`), `e_{-alpha}`
//! (`P..2P`), then the simple coroots `h_i` (`2P..2P + rank`).

mod orbits;
mod spectrum;

pub use orbits::*;
pub use spectrum::*;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::multimodular::solve_unique;
use crate::exactlin::{
    common_denominator, fmt_rat, int, solve_particular_int, LinAlgError, Rat, RatMat, RatVec,
};
use crate::rng::SplitMix64;
use crate::rootsys::{ChamberPoint, RootSystem};
use crate::signtypes::RootSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("[h, e] != 2e, so h cannot be the neutral element of a triple through e")]
    NotNeutral,
    #[error("no sl2 completion: {0}")]
    NoCompletion(String),
    #[error("neutral element solve failed: {0}")]
    Solve(#[from] LinAlgError),
    #[error("eigenspace dimensions sum to {found}, expected {expected}")]
    SpectrumMismatch { found: usize, expected: usize },
    #[error("no weighted Dynkin diagram has this spectrum")]
    NoDiagram,
}

/// Sparse element: root coefficients by signed root index, plus a Cartan
/// part in the simple-coroot basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub root_part: BTreeMap<usize, Rat>,
    pub cartan_part: RatVec,
}

impl LieElement {
    pub fn zero(rank: usize) -> LieElement {
        LieElement {
            root_part: BTreeMap::new(),
            cartan_part: RatVec::zeros(rank),
        }
    }

    pub fn root_vector(rank: usize, idx: usize, c: Rat) -> LieElement {
        let mut x = LieElement::zero(rank);
        if !c.is_zero() {
            x.root_part.insert(idx, c);
        }
        x
    }

    /// Cartan element with the given simple-coroot coefficients.
    pub fn cartan(cr: RatVec) -> LieElement {
        LieElement {
            root_part: BTreeMap::new(),
            cartan_part: cr,
        }
    }

    /// Cartan element of a coweight-coordinate point.
    pub fn from_point(rs: &RootSystem, x: &ChamberPoint) -> LieElement {
        LieElement::cartan(rs.coweight_to_coroot(x))
    }

    /// Coordinates over the full basis.
    pub fn from_coords(rs: &RootSystem, v: &[Rat]) -> LieElement {
        let p2 = 2 * rs.num_positive();
        let root_part = v[..p2]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        LieElement {
            root_part,
            cartan_part: RatVec::new(v[p2..].to_vec()),
        }
    }

    pub fn to_coords(&self, rs: &RootSystem) -> Vec<Rat> {
        let p2 = 2 * rs.num_positive();
        let mut v = vec![Rat::zero(); rs.dim()];
        for (&i, c) in &self.root_part {
            v[i] = c.clone();
        }
        for (i, c) in self.cartan_part.iter().enumerate() {
            v[p2 + i] = c.clone();
        }
        v
    }

    pub fn rank(&self) -> usize {
        self.cartan_part.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.root_part.is_empty() && self.cartan_part.is_zero()
    }

    /// True when the element lies in the Cartan subalgebra.
    pub fn is_cartan(&self) -> bool {
        self.root_part.is_empty()
    }

    /// Root indices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.root_part.keys().copied().collect()
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        let mut root_part = self.root_part.clone();
        for (&i, c) in &o.root_part {
            let v = root_part.remove(&i).unwrap_or_else(Rat::zero) + c;
            if !v.is_zero() {
                root_part.insert(i, v);
            }
        }
        LieElement {
            root_part,
            cartan_part: self.cartan_part.add(&o.cartan_part),
        }
    }

    pub fn scale(&self, k: &Rat) -> LieElement {
        if k.is_zero() {
            return LieElement::zero(self.rank());
        }
        LieElement {
            root_part: self
                .root_part
                .iter()
                .map(|(&i, c)| (i, c * k))
                .collect(),
            cartan_part: self.cartan_part.scale(k),
        }
    }

    pub fn sub(&self, o: &LieElement) -> LieElement {
        self.add(&o.scale(&int(-1)))
    }

    /// The Cartan part in coweight coordinates (the values `alpha_i(h)`).
    pub fn cartan_point(&self, rs: &RootSystem) -> ChamberPoint {
        rs.coroot_to_coweight(&self.cartan_part)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in &self.root_part {
            terms.push(format!("{}*e[{i}]", fmt_rat(c)));
        }
        for (i, c) in self.cartan_part.iter().enumerate() {
            if !c.is_zero() {
                terms.push(format!("{}*h[{i}]", fmt_rat(c)));
            }
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Sparse nonzero coordinates of an element.
fn sparse_coords(rs: &RootSystem, x: &LieElement) -> Vec<(usize, Rat)> {
    let p2 = 2 * rs.num_positive();
    let mut v: Vec<(usize, Rat)> = x
        .root_part
        .iter()
        .map(|(&i, c)| (i, c.clone()))
        .collect();
    v.extend(
        x.cartan_part
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (p2 + i, c.clone())),
    );
    v
}

pub fn bracket(rs: &RootSystem, x: &LieElement, y: &LieElement) -> LieElement {
    let table = rs.bracket_table();
    let mut out = vec![Rat::zero(); rs.dim()];
    let ys = sparse_coords(rs, y);
    for (i, a) in sparse_coords(rs, x) {
        for (j, b) in &ys {
            for &(k, n) in &table[i][*j] {
                out[k] += &a * b * int(n);
            }
        }
    }
    LieElement::from_coords(rs, &out)
}

/// Matrix of `ad x` over the full basis; column `j` holds `[x, b_j]`.
pub fn ad_matrix(rs: &RootSystem, x: &LieElement) -> RatMat {
    let dim = rs.dim();
    let table = rs.bracket_table();
    let mut m = RatMat::zeros(dim, dim);
    for (i, a) in sparse_coords(rs, x) {
        for (j, col) in table[i].iter().enumerate() {
            for &(k, n) in col {
                let v = m.get(k, j) + &a * int(n);
                m.set(k, j, v);
            }
        }
    }
    m
}

/// `ad x` as integer rows for an element with integer coordinates.
pub(crate) fn ad_int_rows(rs: &RootSystem, x: &[(usize, BigInt)]) -> Vec<Vec<BigInt>> {
    let dim = rs.dim();
    let table = rs.bracket_table();
    let mut m = vec![vec![BigInt::zero(); dim]; dim];
    for (i, a) in x {
        for (j, col) in table[*i].iter().enumerate() {
            for &(k, n) in col {
                m[k][j] += a * n;
            }
        }
    }
    m
}

fn mul_int(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] += aik * bkj;
                }
            }
        }
    }
    out
}

/// Element supported on `support` with coefficients uniform in `[1, range]`.
pub fn sample_on_support(
    rs: &RootSystem,
    support: RootSet,
    rng: &mut SplitMix64,
    range: u64,
) -> LieElement {
    let mut x = LieElement::zero(rs.rank());
    for i in support.iter() {
        x.root_part
            .insert(i, Rat::from_integer(BigInt::from(rng.nonzero_up_to(range))));
    }
    x
}

/// `trials` generic elements of the span of the ideal's root spaces;
/// the empty ideal gives the single sample `0`.
pub fn sample_generic(
    rs: &RootSystem,
    ideal: RootSet,
    rng: &mut SplitMix64,
    trials: usize,
    range: u64,
) -> Vec<LieElement> {
    if ideal.is_empty() {
        return vec![LieElement::zero(rs.rank())];
    }
    (0..trials.max(1))
        .map(|_| sample_on_support(rs, ideal, rng, range))
        .collect()
}

/// Neutral element of a triple through `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neutral {
    pub h: LieElement,
    /// Set when `e = 0`, in which case `h = 0`.
    pub zero_orbit: bool,
}

/// Solves `ad(e)^2 z = -2e` and returns `h = [e, z]`, which satisfies
/// `[h, e] = 2e` and lies in the image of `ad e`.
pub fn jm_neutral(rs: &RootSystem, e: &LieElement) -> Result<Neutral, LieError> {
    if e.is_zero() {
        return Ok(Neutral {
            h: LieElement::zero(rs.rank()),
            zero_orbit: true,
        });
    }
    // clear denominators; the neutral element of (d e) is that of e
    let coords = sparse_coords(rs, e);
    let den = common_denominator(coords.iter().map(|(_, c)| c));
    let ints: Vec<(usize, BigInt)> = coords
        .iter()
        .map(|(i, c)| (*i, (c * Rat::from_integer(den.clone())).to_integer()))
        .collect();
    let ad = ad_int_rows(rs, &ints);
    let ad2 = mul_int(&ad, &ad);
    let mut rhs = vec![BigInt::zero(); rs.dim()];
    for (i, c) in &ints {
        rhs[*i] = -(c * BigInt::from(2));
    }
    let z = solve_particular_int(&ad2, &rhs)?;
    let mut h = vec![Rat::zero(); rs.dim()];
    for (k, row) in ad.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            if !a.is_zero() && !z[j].is_zero() {
                h[k] += Rat::from_integer(a.clone()) * &z[j];
            }
        }
    }
    Ok(Neutral {
        h: LieElement::from_coords(rs, &h),
        zero_orbit: false,
    })
}

/// Solves `[e, f] = h`, `[h, f] = -2f` and re-checks all three relations.
pub fn triple_completion(
    rs: &RootSystem,
    e: &LieElement,
    h: &LieElement,
) -> Result<LieElement, LieError> {
    if bracket(rs, h, e) != e.scale(&int(2)) {
        return Err(LieError::NotNeutral);
    }
    let dim = rs.dim();
    let ad_e = ad_matrix(rs, e);
    let ad_h = ad_matrix(rs, h).shift_diagonal(&int(-2));
    let a = ad_e.vstack(&ad_h);
    let mut b = h.to_coords(rs);
    b.extend(std::iter::repeat_with(Rat::zero).take(dim));
    let f = match solve_unique(&a, &RatVec::new(b)) {
        Ok(v) => LieElement::from_coords(rs, v.as_slice()),
        Err(LinAlgError::Inconsistent) => {
            return Err(LieError::NoCompletion("linear system is inconsistent".into()))
        }
        Err(err) => return Err(err.into()),
    };
    if !is_sl2_triple(rs, e, h, &f) {
        return Err(LieError::NoCompletion("relations fail on re-check".into()));
    }
    Ok(f)
}

/// `[h, e] = 2e`, `[h, f] = -2f`, `[e, f] = h`, checked exactly.
pub fn is_sl2_triple(rs: &RootSystem, e: &LieElement, h: &LieElement, f: &LieElement) -> bool {
    bracket(rs, h, e) == e.scale(&int(2))
        && bracket(rs, h, f) == f.scale(&int(-2))
        && bracket(rs, e, f) == *h
}

/// `ad(x)^k = 0` for some `k <= max_power`.
pub fn is_ad_nilpotent(rs: &RootSystem, x: &LieElement, max_power: usize) -> bool {
    let ad = ad_matrix(rs, x);
    let mut p = ad.clone();
    for _ in 0..max_power {
        if p.is_zero() {
            return true;
        }
        p = p.mul(&ad);
    }
    p.is_zero()
}
