//! Dominant sign types, upper ideals of the positive root poset, and the
//! closed polyhedral region attached to each.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{fmt_rat, int, Rat};
use crate::rootsys::{ChamberPoint, RootSystem};

/// A set of positive roots, by index. 128 bits cover every supported type.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(pub u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    pub fn full(n: usize) -> RootSet {
        if n == 128 {
            RootSet(u128::MAX)
        } else {
            RootSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> RootSet {
        RootSet(1u128 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> RootSet {
        indices.into_iter().fold(RootSet::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> RootSet {
        RootSet(self.0 | 1u128 << i)
    }

    pub fn without(self, i: usize) -> RootSet {
        RootSet(self.0 & !(1u128 << i))
    }

    pub fn union(self, o: RootSet) -> RootSet {
        RootSet(self.0 | o.0)
    }

    pub fn intersection(self, o: RootSet) -> RootSet {
        RootSet(self.0 & o.0)
    }

    pub fn difference(self, o: RootSet) -> RootSet {
        RootSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: RootSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignTypeError {
    #[error("point {0} is not dominant")]
    NotDominant(String),
    #[error("set of positive roots is not upward closed")]
    NotUpwardClosed,
}

/// Order relations of the positive root poset, as bitsets.
#[derive(Clone, Debug)]
pub struct RootPoset {
    /// `up[i]`: roots `>= i`.
    up: Vec<RootSet>,
    /// `down[i]`: roots `<= i`.
    down: Vec<RootSet>,
}

impl RootPoset {
    pub fn new(rs: &RootSystem) -> RootPoset {
        let roots = rs.positive_roots();
        let p = roots.len();
        let leq = |a: usize, b: usize| {
            roots[a]
                .coords
                .iter()
                .zip(&roots[b].coords)
                .all(|(x, y)| x <= y)
        };
        let up = (0..p)
            .map(|a| RootSet::from_indices((0..p).filter(|&b| leq(a, b))))
            .collect();
        let down = (0..p)
            .map(|a| RootSet::from_indices((0..p).filter(|&b| leq(b, a))))
            .collect();
        RootPoset { up, down }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn upper_closure(&self, s: RootSet) -> RootSet {
        s.iter().fold(RootSet::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn is_upward_closed(&self, s: RootSet) -> bool {
        self.upper_closure(s) == s
    }

    /// Minimal elements of `s`.
    pub fn minimal(&self, s: RootSet) -> RootSet {
        RootSet::from_indices(
            s.iter()
                .filter(|&i| self.down[i].without(i).intersection(s).is_empty()),
        )
    }

    /// Maximal elements of `s`.
    pub fn maximal(&self, s: RootSet) -> RootSet {
        RootSet::from_indices(
            s.iter()
                .filter(|&i| self.up[i].without(i).intersection(s).is_empty()),
        )
    }
}

/// An upward-closed set of positive roots with its antichain of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub members: RootSet,
    pub generators: RootSet,
}

impl Ideal {
    pub fn from_members(poset: &RootPoset, members: RootSet) -> Result<Ideal, SignTypeError> {
        if !poset.is_upward_closed(members) {
            return Err(SignTypeError::NotUpwardClosed);
        }
        Ok(Ideal {
            members,
            generators: poset.minimal(members),
        })
    }

    pub fn from_generators(poset: &RootPoset, generators: RootSet) -> Ideal {
        let members = poset.upper_closure(generators);
        Ideal {
            members,
            generators: poset.minimal(members),
        }
    }

    pub fn empty() -> Ideal {
        Ideal {
            members: RootSet::EMPTY,
            generators: RootSet::EMPTY,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members as root coordinate vectors.
    pub fn to_coords(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.members
            .iter()
            .map(|i| rs.positive_roots()[i].coords.clone())
            .collect()
    }
}

/// Dominant sign type: each positive root is either plus or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignType {
    pub plus: RootSet,
    pub num_roots: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "0")]
    Zero,
}

impl SignType {
    pub fn of_ideal(rs: &RootSystem, ideal: &Ideal) -> SignType {
        SignType {
            plus: ideal.members,
            num_roots: rs.num_positive(),
        }
    }

    pub fn zero_set(&self) -> RootSet {
        RootSet::full(self.num_roots).difference(self.plus)
    }

    pub fn sign(&self, i: usize) -> Sign {
        if self.plus.contains(i) {
            Sign::Plus
        } else {
            Sign::Zero
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.num_roots).map(|i| self.sign(i)).collect()
    }

    pub fn to_ideal(&self, poset: &RootPoset) -> Result<Ideal, SignTypeError> {
        Ideal::from_members(poset, self.plus)
    }
}

impl fmt::Display for SignType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.num_roots {
            f.write_str(if self.plus.contains(i) { "+" } else { "0" })?;
        }
        Ok(())
    }
}

/// All upper ideals, each once, ordered by size and then by the sorted list
/// of member indices.
pub fn enumerate_ideals(rs: &RootSystem) -> Vec<Ideal> {
    let poset = RootPoset::new(rs);
    let mut out = Vec::new();
    extend_antichains(&poset, 0, RootSet::EMPTY, RootSet::EMPTY, &mut out);
    let mut ideals: Vec<Ideal> = out
        .into_iter()
        .map(|gens| Ideal::from_generators(&poset, gens))
        .collect();
    sort_ideals(&mut ideals);
    ideals
}

fn extend_antichains(
    poset: &RootPoset,
    start: usize,
    chain: RootSet,
    blocked: RootSet,
    out: &mut Vec<RootSet>,
) {
    out.push(chain);
    for j in start..poset.len() {
        if blocked.contains(j) {
            continue;
        }
        let blocked = blocked.union(poset.up[j]).union(poset.down[j]);
        extend_antichains(poset, j + 1, chain.with(j), blocked, out);
    }
}

pub fn sort_ideals(ideals: &mut [Ideal]) {
    ideals.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.to_vec().cmp(&b.members.to_vec()))
    });
}

/// Sign type of a dominant point: plus iff the pairing is at least 1.
pub fn sign_type_of(rs: &RootSystem, x: &ChamberPoint) -> Result<SignType, SignTypeError> {
    if !rs.is_dominant(x) {
        return Err(SignTypeError::NotDominant(x.to_string()));
    }
    let one = Rat::one();
    let plus = RootSet::from_indices(
        rs.positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| rs.pairing(r, x) >= one)
            .map(|(i, _)| i),
    );
    Ok(SignType {
        plus,
        num_roots: rs.num_positive(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

/// `normal . x  (sense)  bound`, with `x` in fundamental-coweight coordinates,
/// so an integer normal is the pairing with a root written in simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub normal: Vec<i64>,
    pub bound: Rat,
    pub sense: Sense,
}

impl Constraint {
    pub fn ge(normal: Vec<i64>, bound: Rat) -> Constraint {
        Constraint {
            normal,
            bound,
            sense: Sense::Ge,
        }
    }

    pub fn le(normal: Vec<i64>, bound: Rat) -> Constraint {
        Constraint {
            normal,
            bound,
            sense: Sense::Le,
        }
    }

    pub fn value(&self, x: &ChamberPoint) -> Rat {
        x.coords.dot_int(&self.normal)
    }

    pub fn is_satisfied(&self, x: &ChamberPoint) -> bool {
        let v = self.value(x);
        match self.sense {
            Sense::Ge => v >= self.bound,
            Sense::Le => v <= self.bound,
        }
    }

    pub fn is_tight(&self, x: &ChamberPoint) -> bool {
        self.value(x) == self.bound
    }

    /// The same half-space written as `normal . x >= bound`.
    pub fn as_ge(&self) -> (Vec<i64>, Rat) {
        match self.sense {
            Sense::Ge => (self.normal.clone(), self.bound.clone()),
            Sense::Le => (self.normal.iter().map(|c| -c).collect(), -self.bound.clone()),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.sense {
            Sense::Ge => ">=",
            Sense::Le => "<=",
        };
        write!(f, "{:?} . x {op} {}", self.normal, fmt_rat(&self.bound))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polyhedron {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Polyhedron {
        debug_assert!(constraints.iter().all(|c| c.normal.len() == dim));
        Polyhedron { dim, constraints }
    }

    pub fn contains(&self, x: &ChamberPoint) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn with(&self, c: Constraint) -> Polyhedron {
        let mut p = self.clone();
        p.constraints.push(c);
        p
    }
}

/// Reduced description of the closed region of a sign type:
/// generators of the plus ideal `>= 1`, maximal zero roots `<= 1`,
/// simple zero roots `>= 0`.
pub fn closure_polyhedron(rs: &RootSystem, s: &SignType) -> Polyhedron {
    let poset = RootPoset::new(rs);
    let roots = rs.positive_roots();
    let zero = s.zero_set();
    let mut cs = Vec::new();
    for i in poset.minimal(s.plus).iter() {
        cs.push(Constraint::ge(roots[i].coords.clone(), Rat::one()));
    }
    for i in poset.maximal(zero).iter() {
        cs.push(Constraint::le(roots[i].coords.clone(), Rat::one()));
    }
    for i in zero.iter().filter(|&i| roots[i].height == 1) {
        cs.push(Constraint::ge(roots[i].coords.clone(), Rat::zero()));
    }
    Polyhedron::new(rs.rank(), cs)
}

/// Unreduced description: every plus root `>= 1`, every zero root in `[0, 1]`.
pub fn full_polyhedron(rs: &RootSystem, s: &SignType) -> Polyhedron {
    let mut cs = Vec::new();
    for (i, r) in rs.positive_roots().iter().enumerate() {
        if s.plus.contains(i) {
            cs.push(Constraint::ge(r.coords.clone(), int(1)));
        } else {
            cs.push(Constraint::ge(r.coords.clone(), int(0)));
            cs.push(Constraint::le(r.coords.clone(), int(1)));
        }
    }
    Polyhedron::new(rs.rank(), cs)
}

/// Each ideal paired with its sign type, in enumeration order.
pub fn ideal_signtype_bijection(rs: &RootSystem) -> Vec<(Ideal, SignType)> {
    enumerate_ideals(rs)
        .into_iter()
        .map(|i| {
            let s = SignType::of_ideal(rs, &i);
            (i, s)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealDump {
    pub index: usize,
    pub members: Vec<Vec<i64>>,
    pub generators: Vec<Vec<i64>>,
    pub sign_type: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealListDump {
    pub family: String,
    pub rank: usize,
    pub count: usize,
    pub catalan_number: String,
    pub ideals: Vec<IdealDump>,
}

pub fn dump_ideals(rs: &RootSystem, ideals: &[Ideal]) -> IdealListDump {
    let coords = |s: RootSet| -> Vec<Vec<i64>> {
        s.iter()
            .map(|i| rs.positive_roots()[i].coords.clone())
            .collect()
    };
    IdealListDump {
        family: rs.spec().family.to_string(),
        rank: rs.rank(),
        count: ideals.len(),
        catalan_number: rs.spec().catalan_number().to_string(),
        ideals: ideals
            .iter()
            .enumerate()
            .map(|(index, i)| IdealDump {
                index,
                members: coords(i.members),
                generators: coords(i.generators),
                sign_type: SignType::of_ideal(rs, i).to_string(),
            })
            .collect(),
    }
}

/// True when `x` lies off every wall of the open region of `s`.
pub fn is_interior_sample(rs: &RootSystem, s: &SignType, x: &ChamberPoint) -> bool {
    let one = Rat::one();
    rs.positive_roots().iter().enumerate().all(|(i, r)| {
        let v = rs.pairing(r, x);
        if s.plus.contains(i) {
            v > one
        } else {
            v.is_positive() && v < one
        }
    })
}
