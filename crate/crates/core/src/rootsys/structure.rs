//! Chevalley structure constants `[e_a, e_b] = N_{a,b} e_{a+b}`.
//!
//! Signs follow the extraspecial-pair convention: positive roots are totally
//! ordered by index (height, then coordinates), the extraspecial pair of a
//! non-simple positive root `xi` is `(a, xi - a)` with `a` the first root in
//! that order such that `xi - a` is a positive root, and every extraspecial
//! constant is `+(p + 1)`. All remaining constants follow from
//!
//! * `N_{a,b} = -N_{b,a}`,
//! * `N_{-a,-b} = -N_{a,b}`,
//! * `N_{a,b} / (c,c) = N_{b,c} / (a,a) = N_{c,a} / (b,b)` when `a + b + c = 0`,
//! * the four-root identity for `a + b + c + d = 0` with no opposite pair.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use super::RootSystem;
use crate::exactlin::{int, Rat};

const NO_ROOT: u32 = u32::MAX;

#[derive(Clone, Debug, Default)]
pub struct StructureConstants {
    /// Number of roots, `2P`.
    size: usize,
    sum: Vec<u32>,
    n: Vec<i64>,
}

/// First failing basis triple of the Jacobi identity (or an antisymmetry
/// failure, reported with `z == None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub x: usize,
    pub y: usize,
    pub z: Option<usize>,
}

impl std::fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.z {
            Some(z) => write!(f, "Jacobi identity fails on basis triple ({}, {}, {})", self.x, self.y, z),
            None => write!(f, "antisymmetry fails on basis pair ({}, {})", self.x, self.y),
        }
    }
}

impl StructureConstants {
    pub(super) fn build(rs: &RootSystem) -> StructureConstants {
        let p = rs.num_positive();
        let size = 2 * p;
        let mut sum = vec![NO_ROOT; size * size];
        for a in 0..size {
            let ca = rs.root_coords(a);
            for b in 0..size {
                let cb = rs.root_coords(b);
                let s: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
                if let Some(i) = rs.root_index(&s) {
                    sum[a * size + b] = i as u32;
                }
            }
        }
        let mut table = StructureConstants {
            size,
            sum,
            n: vec![0; size * size],
        };

        // special pairs (a, b), a < b positive, grouped by their sum
        let mut special: HashMap<(usize, usize), i64> = HashMap::new();
        for xi in 0..p {
            let pairs: Vec<(usize, usize)> = (0..p)
                .flat_map(|a| (a + 1..p).map(move |b| (a, b)))
                .filter(|&(a, b)| table.sum_index(a, b) == Some(xi))
                .collect();
            let Some(&(ea, eb)) = pairs.first() else {
                continue;
            };
            // p = largest k with eb - k ea a root
            let mut k = 0;
            let mut cur = eb;
            while let Some(next) = table.sum_index(cur, rs.negate_index(ea)) {
                k += 1;
                cur = next;
            }
            special.insert((ea, eb), k + 1);
            let n_extra = int(k + 1);
            let len = |i: usize| rs.root_length(i).clone();
            for &(a, b) in &pairs[1..] {
                let mut acc = Rat::zero();
                let neg_ea = rs.negate_index(ea);
                let neg_eb = rs.negate_index(eb);
                if let Some(d) = table.sum_index(b, neg_ea) {
                    let t = lookup(rs, &table, &special, b, neg_ea)
                        * lookup(rs, &table, &special, a, neg_eb);
                    acc += t / len(d);
                }
                if let Some(d) = table.sum_index(a, neg_ea) {
                    let t = lookup(rs, &table, &special, neg_ea, a)
                        * lookup(rs, &table, &special, b, neg_eb);
                    acc += t / len(d);
                }
                let v = acc * len(xi) / &n_extra;
                assert!(v.is_integer(), "non-integral structure constant {v}");
                special.insert((a, b), v.to_integer().to_i64().expect("small"));
            }
        }

        for a in 0..size {
            for b in 0..size {
                if table.sum_index(a, b).is_some() {
                    let v = lookup(rs, &table, &special, a, b);
                    assert!(v.is_integer());
                    table.n[a * size + b] = v.to_integer().to_i64().expect("small");
                }
            }
        }
        table
    }

    pub fn num_roots(&self) -> usize {
        self.size
    }

    /// Signed index of `a + b` when it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        match self.sum[a * self.size + b] {
            NO_ROOT => None,
            i => Some(i as usize),
        }
    }

    /// `N_{a,b}`, or `None` when `a + b` is not a root.
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.sum_index(a, b).map(|_| self.n[a * self.size + b])
    }

    pub(super) fn set(&mut self, a: usize, b: usize, value: i64) {
        self.n[a * self.size + b] = value;
    }
}

/// `N_{a,b}` for arbitrary roots with `a + b` a root, reduced to special pairs.
fn lookup(
    rs: &RootSystem,
    table: &StructureConstants,
    special: &HashMap<(usize, usize), i64>,
    a: usize,
    b: usize,
) -> Rat {
    let pa = rs.is_positive_index(a);
    let pb = rs.is_positive_index(b);
    match (pa, pb) {
        (true, true) => {
            if a < b {
                int(special[&(a, b)])
            } else {
                -int(special[&(b, a)])
            }
        }
        (false, false) => -lookup(rs, table, special, rs.negate_index(a), rs.negate_index(b)),
        (false, true) => -lookup(rs, table, special, b, a),
        (true, false) => {
            let s = table.sum_index(a, b).expect("a + b must be a root");
            let c = rs.negate_index(s);
            let len = |i: usize| rs.root_length(i).clone();
            if rs.is_positive_index(c) {
                // N_{a,b} / (c,c) = N_{c,a} / (b,b)
                lookup(rs, table, special, c, a) * len(c) / len(b)
            } else {
                // N_{a,b} / (c,c) = N_{b,c} / (a,a)
                lookup(rs, table, special, b, c) * len(c) / len(a)
            }
        }
    }
}

impl RootSystem {
    /// Bracket of two Chevalley basis elements as sparse integer coordinates.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let p2 = 2 * self.num_positive();
        match (x < p2, y < p2) {
            (false, false) => Vec::new(),
            (false, true) => {
                let i = x - p2;
                let c = self.coroot_pairing(&self.root_coords(y), i);
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(y, c)]
                }
            }
            (true, false) => self
                .bracket_basis(y, x)
                .into_iter()
                .map(|(k, v)| (k, -v))
                .collect(),
            (true, true) => {
                if y == self.negate_index(x) {
                    self.coroot(x)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(i, c)| (p2 + i, c))
                        .collect()
                } else {
                    match self.structure.sum_index(x, y) {
                        Some(s) => {
                            let n = self.structure.n[x * self.structure.size + y];
                            if n == 0 {
                                Vec::new()
                            } else {
                                vec![(s, n)]
                            }
                        }
                        None => Vec::new(),
                    }
                }
            }
        }
    }

    /// Checks antisymmetry and the Jacobi identity on every basis triple.
    pub fn verify_jacobi(&self) -> Result<(), JacobiViolation> {
        let dim = self.dim();
        let table = self.bracket_table();
        for x in 0..dim {
            for y in 0..=x {
                let mut s: HashMap<usize, i64> = HashMap::new();
                for &(k, v) in table[x][y].iter().chain(&table[y][x]) {
                    *s.entry(k).or_default() += v;
                }
                if s.values().any(|&v| v != 0) {
                    return Err(JacobiViolation { x, y, z: None });
                }
            }
        }
        let mut acc = vec![0i64; dim];
        for x in 0..dim {
            for y in x + 1..dim {
                for z in y + 1..dim {
                    acc.iter_mut().for_each(|v| *v = 0);
                    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                        for &(k, v) in &table[b][c] {
                            for &(m, w) in &table[a][k] {
                                acc[m] += v * w;
                            }
                        }
                    }
                    if acc.iter().any(|&v| v != 0) {
                        return Err(JacobiViolation { x, y, z: Some(z) });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::rootsys::{Family, RootSystem, RootSystemSpec};

    fn build(f: Family, n: usize) -> RootSystem {
        RootSystem::build(RootSystemSpec::new(f, n).unwrap())
    }

    #[test]
    fn jacobi_holds() {
        for (f, n) in [
            (Family::A, 1),
            (Family::A, 2),
            (Family::A, 3),
            (Family::B, 2),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::G, 2),
        ] {
            let rs = build(f, n);
            assert_eq!(rs.verify_jacobi(), Ok(()), "{f}{n}");
        }
    }

    #[test]
    fn magnitudes_are_string_lengths() {
        for (f, n) in [(Family::B, 3), (Family::G, 2), (Family::C, 3), (Family::F, 4)] {
            let rs = build(f, n);
            let sc = rs.structure_constants();
            for a in 0..sc.num_roots() {
                for b in 0..sc.num_roots() {
                    if let Some(v) = sc.get(a, b) {
                        // p = largest k with b - k a a root
                        let mut p = 0;
                        let mut cur = b;
                        while let Some(next) = sc.sum_index(cur, rs.negate_index(a)) {
                            p += 1;
                            cur = next;
                        }
                        assert_eq!(v.abs(), p + 1, "{f}{n} ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn a2_simple_bracket_has_unit_constant() {
        let rs = build(Family::A, 2);
        assert_eq!(rs.structure_constants().get(0, 1).map(i64::abs), Some(1));
        assert_eq!(rs.structure_constants().get(0, 1), Some(1));
    }

    #[test]
    fn corrupted_constant_is_detected() {
        let mut rs = build(Family::A, 2);
        rs.override_structure_constant(0, 1, -1);
        let err = rs.verify_jacobi().unwrap_err();
        assert!(err.z.is_some() || err.x != err.y);
        let mut rs = build(Family::G, 2);
        rs.override_structure_constant(0, 1, 2);
        assert!(rs.verify_jacobi().is_err());
    }
}
