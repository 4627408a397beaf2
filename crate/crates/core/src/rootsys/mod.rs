//! Irreducible reduced root systems of types A–G.
//!
//! Chamber points are written in the fundamental-coweight basis, so the
//! pairing of a root `sum c_j alpha_j` with a point `x` is `sum c_j x_j`.
//! The invariant form is normalized so that long roots have squared length 2.
//!
//! Chevalley basis indices: `0..P` are the positive root vectors `e_alpha`,
//! `P..2P` the negative ones `e_{-alpha}` (same order), and `2P..2P+rank` the
//! simple coroots `h_i`.

mod structure;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{fmt_rat, int, inverse, rat, Rat, RatMat, RatVec};

pub use structure::{JacobiViolation, StructureConstants};
pub use weyl::{WeylElement, DEFAULT_WEYL_CEILING};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("type {family}{rank} is not a valid irreducible root system ({reason})")]
    InvalidSpec {
        family: Family,
        rank: usize,
        reason: &'static str,
    },
    #[error("unknown family '{0}', expected one of A B C D E F G")]
    UnknownFamily(String),
    #[error("Weyl group of order {order} exceeds the ceiling {ceiling}")]
    WeylTooLarge { order: u128, ceiling: u128 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootSystemError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let reason = match family {
            Family::A if rank < 1 => Some("A needs rank >= 1"),
            Family::B if rank < 2 => Some("B needs rank >= 2"),
            Family::C if rank < 2 => Some("C needs rank >= 2"),
            Family::D if rank < 3 => Some("D needs rank >= 3"),
            Family::E if !(6..=8).contains(&rank) => Some("E needs rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("F only exists in rank 4"),
            Family::G if rank != 2 => Some("G only exists in rank 2"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(RootSystemError::InvalidSpec {
                family,
                rank,
                reason,
            }),
            None => Ok(RootSystemSpec { family, rank }),
        }
    }

    pub fn parse(family: &str, rank: usize) -> Result<Self, RootSystemError> {
        Self::new(family.parse()?, rank)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Exponents of the Weyl group.
    pub fn exponents(&self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.family {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i - 1).collect(),
            Family::D => {
                let mut e: Vec<u64> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            Family::E => match n {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Family::F => vec![1, 5, 7, 11],
            Family::G => vec![1, 5],
        }
    }

    pub fn coxeter_number(&self) -> u64 {
        self.exponents().into_iter().max().unwrap_or(0) + 1
    }

    pub fn weyl_order(&self) -> u128 {
        self.exponents().iter().map(|&e| (e + 1) as u128).product()
    }

    /// Number of antichains of the positive root poset,
    /// `prod (h + e_i + 1) / (e_i + 1)`.
    pub fn catalan_number(&self) -> u128 {
        let h = self.coxeter_number() as u128;
        let (num, den) = self
            .exponents()
            .iter()
            .fold((1u128, 1u128), |(n, d), &e| {
                (n * (h + e as u128 + 1), d * (e as u128 + 1))
            });
        num / den
    }

    pub fn positive_root_count(&self) -> usize {
        self.exponents().iter().sum::<u64>() as usize
    }

    /// Diagram edges `(i, j)` with `i < j`, 0-based, Bourbaki numbering
    /// except G2, whose first node is the long root.
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
            }
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Squared lengths of the simple roots, long roots normalized to 2.
    fn simple_lengths(&self) -> Vec<Rat> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![int(2); n],
            Family::B => (0..n).map(|i| if i + 1 < n { int(2) } else { int(1) }).collect(),
            Family::C => (0..n).map(|i| if i + 1 < n { int(1) } else { int(2) }).collect(),
            Family::F => vec![int(2), int(2), int(1), int(1)],
            Family::G => vec![int(2), rat(2, 3)],
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A positive root in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub height: i64,
    pub is_long: bool,
}

/// A point of the coweight space, in fundamental-coweight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberPoint {
    pub coords: RatVec,
}

impl ChamberPoint {
    pub fn new(coords: RatVec) -> Self {
        ChamberPoint { coords }
    }

    pub fn zero(rank: usize) -> Self {
        ChamberPoint::new(RatVec::zeros(rank))
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        ChamberPoint::new(RatVec::from_ints(xs))
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn scale(&self, k: &Rat) -> ChamberPoint {
        ChamberPoint::new(self.coords.scale(k))
    }

    pub fn half(&self) -> ChamberPoint {
        self.scale(&rat(1, 2))
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    /// Coordinates as `p/q` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rat).collect()
    }
}

impl fmt::Display for ChamberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coords.fmt(f)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    cartan: Vec<Vec<i64>>,
    /// Invariant form on simple roots.
    root_form: RatMat,
    symmetrizers: Vec<i64>,
    positive_roots: Vec<Root>,
    /// Squared length of each positive root.
    root_lengths: Vec<Rat>,
    /// Coroots of positive roots in the simple-coroot basis.
    coroots: Vec<Vec<i64>>,
    index_of: HashMap<Vec<i64>, usize>,
    gram_coweight: RatMat,
    highest_root: usize,
    poset_covers: Vec<(usize, usize)>,
    structure: StructureConstants,
    brackets: OnceLock<BracketTable>,
}

/// `table[x][y]`: sparse coordinates of the bracket of basis elements `x`, `y`.
pub type BracketTable = Vec<Vec<Vec<(usize, i64)>>>;

impl RootSystem {
    pub fn build(spec: RootSystemSpec) -> RootSystem {
        let n = spec.rank;
        let lengths = spec.simple_lengths();
        let mut root_form = RatMat::zeros(n, n);
        for i in 0..n {
            root_form.set(i, i, lengths[i].clone());
        }
        for (i, j) in spec.edges() {
            let v = -std::cmp::max(lengths[i].clone(), lengths[j].clone()) / int(2);
            root_form.set(i, j, v.clone());
            root_form.set(j, i, v);
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = int(2) * root_form.get(i, j) / root_form.get(j, j);
                        debug_assert!(v.is_integer());
                        to_i64(&v)
                    })
                    .collect()
            })
            .collect();
        let min_len = lengths.iter().min().cloned().unwrap_or_else(Rat::one);
        let symmetrizers = lengths.iter().map(|l| to_i64(&(l / &min_len))).collect();

        let positive_roots_coords = generate_positive_roots(&cartan);
        let max_len = lengths.iter().max().cloned().unwrap_or_else(Rat::one);
        let mut positive_roots = Vec::with_capacity(positive_roots_coords.len());
        let mut root_lengths = Vec::new();
        let mut coroots = Vec::new();
        for c in positive_roots_coords {
            let cv = RatVec::from_ints(&c);
            let len = root_form.quadratic_form(&cv);
            let coroot = (0..n)
                .map(|j| {
                    let v = int(c[j]) * &lengths[j] / &len;
                    debug_assert!(v.is_integer());
                    to_i64(&v)
                })
                .collect();
            positive_roots.push(Root {
                height: c.iter().sum(),
                is_long: len == max_len,
                coords: c,
            });
            root_lengths.push(len);
            coroots.push(coroot);
        }
        let index_of = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect::<HashMap<_, _>>();
        let highest_root = positive_roots
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.height)
            .map(|(i, _)| i)
            .expect("root systems are nonempty");

        // (alpha_i^vee, alpha_j^vee) = 4 (alpha_i, alpha_j) / (|alpha_i|^2 |alpha_j|^2)
        let mut coroot_form = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                coroot_form.set(
                    i,
                    j,
                    int(4) * root_form.get(i, j) / (&lengths[i] * &lengths[j]),
                );
            }
        }
        // coroot coordinates -> coweight coordinates is x_cw = C x_cr
        let cmat = RatMat::from_int_rows(&cartan);
        let cinv = inverse(&cmat).expect("Cartan matrices are nonsingular");
        let gram_coweight = cinv.transpose().mul(&coroot_form).mul(&cinv);

        let mut poset_covers = Vec::new();
        for (lo, r) in positive_roots.iter().enumerate() {
            for i in 0..n {
                let mut up = r.coords.clone();
                up[i] += 1;
                if let Some(&hi) = index_of.get(&up) {
                    poset_covers.push((lo, hi));
                }
            }
        }

        let mut rs = RootSystem {
            spec,
            cartan,
            root_form,
            symmetrizers,
            positive_roots,
            root_lengths,
            coroots,
            index_of,
            gram_coweight,
            highest_root,
            poset_covers,
            structure: StructureConstants::default(),
            brackets: OnceLock::new(),
        };
        rs.structure = StructureConstants::build(&rs);
        rs
    }

    pub fn spec(&self) -> RootSystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// `|Phi| + rank`.
    pub fn dim(&self) -> usize {
        2 * self.num_positive() + self.rank()
    }

    pub fn gram_coweight(&self) -> &RatMat {
        &self.gram_coweight
    }

    pub fn highest_root_index(&self) -> usize {
        self.highest_root
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    pub fn poset_covers(&self) -> &[(usize, usize)] {
        &self.poset_covers
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.structure
    }

    /// Replaces one structure constant; only meant for fault-injection tests.
    pub fn override_structure_constant(&mut self, a: usize, b: usize, value: i64) {
        self.structure.set(a, b, value);
        self.brackets = OnceLock::new();
    }

    /// Brackets of all pairs of Chevalley basis elements, computed once.
    pub fn bracket_table(&self) -> &BracketTable {
        self.brackets.get_or_init(|| {
            let dim = self.dim();
            (0..dim)
                .map(|x| (0..dim).map(|y| self.bracket_basis(x, y)).collect())
                .collect()
        })
    }

    /// Index of the positive root with these coordinates.
    pub fn positive_index(&self, coords: &[i64]) -> Option<usize> {
        self.index_of.get(coords).copied()
    }

    /// Signed root index (`0..2P`) of the root with these coordinates.
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        if let Some(i) = self.positive_index(coords) {
            return Some(i);
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.positive_index(&neg).map(|i| i + self.num_positive())
    }

    /// Coordinates of a signed root index.
    pub fn root_coords(&self, idx: usize) -> Vec<i64> {
        let p = self.num_positive();
        if idx < p {
            self.positive_roots[idx].coords.clone()
        } else {
            self.positive_roots[idx - p].coords.iter().map(|c| -c).collect()
        }
    }

    pub fn negate_index(&self, idx: usize) -> usize {
        let p = self.num_positive();
        if idx < p {
            idx + p
        } else {
            idx - p
        }
    }

    pub fn is_positive_index(&self, idx: usize) -> bool {
        idx < self.num_positive()
    }

    /// Squared length of a signed root.
    pub fn root_length(&self, idx: usize) -> &Rat {
        &self.root_lengths[idx % self.num_positive()]
    }

    /// Coroot of a signed root in the simple-coroot basis.
    pub fn coroot(&self, idx: usize) -> Vec<i64> {
        let p = self.num_positive();
        if idx < p {
            self.coroots[idx].clone()
        } else {
            self.coroots[idx - p].iter().map(|c| -c).collect()
        }
    }

    /// `<alpha, alpha_i^vee>` for a root given by coordinates.
    pub fn coroot_pairing(&self, coords: &[i64], i: usize) -> i64 {
        coords
            .iter()
            .zip(&self.cartan)
            .map(|(c, row)| c * row[i])
            .sum()
    }

    /// Inner product of two roots given by simple-root coordinates.
    pub fn root_inner(&self, a: &[i64], b: &[i64]) -> Rat {
        let av = RatVec::from_ints(a);
        let bv = RatVec::from_ints(b);
        av.dot(&self.root_form.mul_vec(&bv))
    }

    pub fn pairing(&self, root: &Root, x: &ChamberPoint) -> Rat {
        x.coords.dot_int(&root.coords)
    }

    pub fn pairing_coords(&self, coords: &[i64], x: &ChamberPoint) -> Rat {
        x.coords.dot_int(coords)
    }

    pub fn norm_squared(&self, x: &ChamberPoint) -> Rat {
        self.gram_coweight.quadratic_form(&x.coords)
    }

    pub fn is_dominant(&self, x: &ChamberPoint) -> bool {
        x.coords.iter().all(|c| !c.is_negative())
    }

    /// Converts a Cartan element written in simple coroots to coweight coordinates.
    pub fn coroot_to_coweight(&self, cr: &RatVec) -> ChamberPoint {
        let n = self.rank();
        ChamberPoint::new(RatVec::new(
            (0..n)
                .map(|j| {
                    (0..n).fold(Rat::zero(), |acc, i| {
                        acc + int(self.cartan[j][i]) * &cr[i]
                    })
                })
                .collect(),
        ))
    }

    /// Inverse of [`Self::coroot_to_coweight`].
    pub fn coweight_to_coroot(&self, x: &ChamberPoint) -> RatVec {
        let cinv = inverse(&RatMat::from_int_rows(&self.cartan)).expect("nonsingular");
        cinv.mul_vec(&x.coords)
    }

    /// Canonical dump for golden-file comparisons.
    pub fn dump(&self) -> RootSystemDump {
        let p = self.num_positive();
        let mut structure_constants = Vec::new();
        for a in 0..2 * p {
            for b in 0..2 * p {
                if let Some(n) = self.structure.get(a, b) {
                    structure_constants.push(StructureConstantEntry {
                        alpha: self.root_coords(a),
                        beta: self.root_coords(b),
                        n,
                    });
                }
            }
        }
        RootSystemDump {
            family: self.spec.family.to_string(),
            rank: self.rank(),
            cartan: self.cartan.clone(),
            symmetrizers: self.symmetrizers.clone(),
            positive_roots: self
                .positive_roots
                .iter()
                .map(|r| RootDump {
                    coords: r.coords.clone(),
                    height: r.height,
                    long: r.is_long,
                })
                .collect(),
            highest_root: self.highest_root().coords.clone(),
            gram_coweight: (0..self.rank())
                .map(|i| self.gram_coweight.row(i).iter().map(fmt_rat).collect())
                .collect(),
            structure_constants,
        }
    }
}

fn to_i64(r: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    assert!(r.is_integer(), "expected an integer, got {r}");
    r.to_integer().to_i64().expect("small integer")
}

/// Closure of the simple roots under adding simple roots, using root strings:
/// for `beta != alpha_i`, `beta + alpha_i` is a root iff `p - <beta, alpha_i^vee> > 0`
/// where `p` is the largest `k` with `beta - k alpha_i` a root.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let pair = |c: &[i64], i: usize| -> i64 { (0..n).map(|j| c[j] * cartan[j][i]).sum() };
    let mut known: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut all = Vec::new();
    while !layer.is_empty() {
        for r in &layer {
            known.insert(r.clone());
        }
        let mut next: Vec<Vec<i64>> = Vec::new();
        for r in &layer {
            for i in 0..n {
                let simple = r.iter().sum::<i64>() == 1 && r[i] == 1;
                if simple {
                    continue;
                }
                let mut p = 0;
                let mut down = r.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair(r, i) > 0 {
                    let mut up = r.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    // height ascending, then lexicographically descending so simple roots
    // appear in node order
    all.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    all
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RootDump {
    pub coords: Vec<i64>,
    pub height: i64,
    pub long: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StructureConstantEntry {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub n: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RootSystemDump {
    pub family: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
    pub positive_roots: Vec<RootDump>,
    pub highest_root: Vec<i64>,
    pub gram_coweight: Vec<Vec<String>>,
    pub structure_constants: Vec<StructureConstantEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(f: Family, n: usize) -> RootSystem {
        RootSystem::build(RootSystemSpec::new(f, n).unwrap())
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(RootSystemSpec::new(Family::A, 0).is_err());
        assert!(RootSystemSpec::new(Family::B, 1).is_err());
        assert!(RootSystemSpec::new(Family::D, 2).is_err());
        assert!(RootSystemSpec::new(Family::E, 5).is_err());
        assert!(RootSystemSpec::new(Family::F, 3).is_err());
        assert!(RootSystemSpec::new(Family::G, 3).is_err());
        assert!(RootSystemSpec::new(Family::C, 2).is_ok());
        assert!("X".parse::<Family>().is_err());
    }

    #[test]
    fn a2_roots() {
        let rs = build(Family::A, 2);
        assert_eq!(rs.num_positive(), 3);
        assert_eq!(rs.highest_root().coords, vec![1, 1]);
        let heights: Vec<i64> = rs.positive_roots().iter().map(|r| r.height).collect();
        assert_eq!(heights, vec![1, 1, 2]);
    }

    #[test]
    fn a1_roots() {
        let rs = build(Family::A, 1);
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.cartan(), &[vec![2]]);
    }

    #[test]
    fn g2_roots() {
        let rs = build(Family::G, 2);
        assert_eq!(rs.num_positive(), 6);
        assert_eq!(rs.highest_root().height, 5);
        // first node long
        assert!(rs.positive_roots()[0].is_long);
        assert!(!rs.positive_roots()[1].is_long);
        assert_eq!(rs.highest_root().coords, vec![2, 3]);
        assert_eq!(rs.cartan(), &[vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn b2_first_node_long() {
        let rs = build(Family::B, 2);
        assert!(rs.positive_roots()[0].is_long);
        assert!(!rs.positive_roots()[1].is_long);
        assert_eq!(rs.highest_root().coords, vec![1, 2]);
    }

    #[test]
    fn classical_root_counts() {
        for (f, n) in [
            (Family::A, 1),
            (Family::A, 4),
            (Family::B, 3),
            (Family::C, 3),
            (Family::C, 4),
            (Family::D, 4),
            (Family::D, 5),
            (Family::G, 2),
            (Family::F, 4),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
        ] {
            let spec = RootSystemSpec::new(f, n).unwrap();
            let expected = match f {
                Family::A => n * (n + 1) / 2,
                Family::B | Family::C => n * n,
                Family::D => n * (n - 1),
                Family::G => 6,
                Family::F => 24,
                Family::E => [36, 63, 120][n - 6],
            };
            let rs = RootSystem::build(spec);
            assert_eq!(rs.num_positive(), expected, "{spec}");
            assert_eq!(spec.positive_root_count(), expected);
        }
    }

    #[test]
    fn pairing_examples() {
        let rs = build(Family::A, 2);
        let x = ChamberPoint::from_ints(&[0, 1]);
        assert_eq!(rs.pairing(&rs.positive_roots()[1], &x), int(1));
        let x = ChamberPoint::from_ints(&[1, 1]);
        assert_eq!(rs.pairing(rs.highest_root(), &x), int(2));
        for r in rs.positive_roots() {
            assert_eq!(rs.pairing(r, &ChamberPoint::zero(2)), int(0));
        }
    }

    #[test]
    fn norm_examples() {
        let a1 = build(Family::A, 1);
        assert_eq!(a1.norm_squared(&ChamberPoint::zero(1)), int(0));
        assert_eq!(a1.norm_squared(&ChamberPoint::from_ints(&[1])), rat(1, 2));
        let a2 = build(Family::A, 2);
        assert_eq!(a2.norm_squared(&ChamberPoint::from_ints(&[1, 1])), int(2));
        assert_eq!(a2.gram_coweight().get(0, 0), &rat(2, 3));
        assert_eq!(a2.gram_coweight().get(0, 1), &rat(1, 3));
    }

    #[test]
    fn long_coroots_have_squared_length_two() {
        for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::G, 2), (Family::F, 4)] {
            let rs = build(f, n);
            for (i, r) in rs.positive_roots().iter().enumerate() {
                let cw = rs.coroot_to_coweight(&RatVec::from_ints(&rs.coroot(i)));
                let len = rs.norm_squared(&cw);
                // (alpha^vee, alpha^vee) = 4 / (alpha, alpha)
                assert_eq!(len, int(4) / rs.root_length(i).clone());
                if r.is_long {
                    assert_eq!(len, int(2));
                }
            }
        }
    }

    #[test]
    fn gram_is_symmetric_positive_definite() {
        for (f, n) in [(Family::B, 3), (Family::D, 4), (Family::G, 2), (Family::F, 4)] {
            let rs = build(f, n);
            let g = rs.gram_coweight();
            assert!(g.is_symmetric());
            // elimination without pivoting: all pivots positive iff positive definite
            let mut m: Vec<Vec<Rat>> = (0..n).map(|i| g.row(i).to_vec()).collect();
            for k in 0..n {
                assert!(m[k][k].is_positive(), "{f}{n} pivot {k}");
                for i in k + 1..n {
                    let factor = &m[i][k] / &m[k][k];
                    for j in k..n {
                        let v = &factor * &m[k][j];
                        m[i][j] -= v;
                    }
                }
            }
        }
    }

    #[test]
    fn poset_is_graded_by_height() {
        let rs = build(Family::F, 4);
        for &(lo, hi) in rs.poset_covers() {
            assert_eq!(
                rs.positive_roots()[hi].height,
                rs.positive_roots()[lo].height + 1
            );
        }
    }

    #[test]
    fn catalan_numbers() {
        let cases = [
            (Family::A, 2, 5),
            (Family::A, 3, 14),
            (Family::A, 4, 42),
            (Family::B, 2, 6),
            (Family::B, 3, 20),
            (Family::C, 3, 20),
            (Family::D, 4, 50),
            (Family::G, 2, 8),
            (Family::F, 4, 105),
            (Family::E, 8, 25080),
        ];
        for (f, n, c) in cases {
            assert_eq!(RootSystemSpec::new(f, n).unwrap().catalan_number(), c);
        }
    }

    #[test]
    fn highest_root_dominates_on_dominant_points() {
        let rs = build(Family::B, 3);
        let x = ChamberPoint::new(RatVec::new(vec![rat(1, 3), int(0), rat(5, 2)]));
        let top = rs.pairing(rs.highest_root(), &x);
        for r in rs.positive_roots() {
            assert!(rs.pairing(r, &x) <= top);
        }
    }
}
