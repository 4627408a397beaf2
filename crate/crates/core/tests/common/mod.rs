//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use dynkin_core::exactlin::{int, rat, solve_linear, Rat, RatMat, RatVec};
use dynkin_core::rng::SplitMix64;
use dynkin_core::rootsys::{ChamberPoint, RootSystem};
use dynkin_core::signtypes::{Constraint, Polyhedron};

/// Least-norm point of `p` found by trying every subset of constraints as
/// equalities: each subset gives the minimizer over its affine hull, and the
/// true minimizer is the least-norm feasible candidate. `None` when `p` is
/// empty.
pub fn brute_force_min_norm(p: &Polyhedron, gram: &RatMat) -> Option<ChamberPoint> {
    let n = p.dim;
    let m = p.len();
    let mut best: Option<(Rat, ChamberPoint)> = None;
    for mask in 0u32..(1 << m) {
        let w: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        // [G  -A^T; A  0] [x; l] = [0; b]
        let k = w.len();
        let mut kkt = RatMat::zeros(n + k, n + k);
        let mut rhs = RatVec::zeros(n + k);
        for i in 0..n {
            for j in 0..n {
                kkt.set(i, j, gram.get(i, j).clone());
            }
        }
        for (r, &c) in w.iter().enumerate() {
            let con = &p.constraints[c];
            for j in 0..n {
                kkt.set(n + r, j, int(con.normal[j]));
                kkt.set(j, n + r, -int(con.normal[j]));
            }
            rhs[n + r] = con.bound.clone();
        }
        let Ok(sol) = solve_linear(&kkt, &rhs) else {
            continue;
        };
        let x = ChamberPoint::new(RatVec::new(sol.particular.as_slice()[..n].to_vec()));
        if !p.contains(&x) {
            continue;
        }
        let norm = gram.quadratic_form(&x.coords);
        if best.as_ref().map_or(true, |(b, _)| norm < *b) {
            best = Some((norm, x));
        }
    }
    best.map(|(_, x)| x)
}

/// Upward-closed subsets counted by checking every subset against the
/// cover relation `alpha -> alpha + alpha_i`.
pub fn brute_force_ideal_count(rs: &RootSystem) -> usize {
    let roots: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.coords.clone()).collect();
    let n = rs.rank();
    let index = |c: &[i64]| roots.iter().position(|r| r == c);
    let mut covers = Vec::new();
    for (a, r) in roots.iter().enumerate() {
        for i in 0..n {
            let mut s = r.clone();
            s[i] += 1;
            if let Some(b) = index(&s) {
                covers.push((a, b));
            }
        }
    }
    assert!(roots.len() <= 20, "subset enumeration is for small ranks");
    (0u32..(1 << roots.len()))
        .filter(|&s| {
            covers
                .iter()
                .all(|&(a, b)| s >> a & 1 == 0 || s >> b & 1 == 1)
        })
        .count()
}

/// Random polyhedron in dimension `1..=3` with `1..=6` constraints.
pub fn random_polyhedron(rng: &mut SplitMix64) -> Polyhedron {
    let dim = 1 + rng.below(3) as usize;
    let m = 1 + rng.below(6) as usize;
    let mut cs = Vec::with_capacity(m);
    while cs.len() < m {
        let normal: Vec<i64> = (0..dim).map(|_| rng.below(7) as i64 - 3).collect();
        if normal.iter().all(|&c| c == 0) {
            continue;
        }
        let bound = rat(rng.below(9) as i64 - 4, 1 + rng.below(3) as i64);
        cs.push(if rng.coin() {
            Constraint::ge(normal, bound)
        } else {
            Constraint::le(normal, bound)
        });
    }
    Polyhedron::new(dim, cs)
}

/// Random symmetric positive definite matrix `L L^T + I` with small
/// integer `L`, scaled by a random positive rational.
pub fn random_gram(rng: &mut SplitMix64, dim: usize) -> RatMat {
    let l: Vec<Vec<i64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.below(5) as i64 - 2).collect())
        .collect();
    let scale = random_positive_rational(rng);
    let mut g = RatMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let dot: i64 = (0..dim).map(|k| l[i][k] * l[j][k]).sum();
            g.set(i, j, (int(dot) + int(i64::from(i == j))) * &scale);
        }
    }
    g
}

pub fn random_positive_rational(rng: &mut SplitMix64) -> Rat {
    rat(1 + rng.below(20) as i64, 1 + rng.below(20) as i64)
}
