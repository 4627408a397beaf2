//! Exact minimum-norm points of polyhedra.
//!
//! Feasibility comes from an exact phase-one simplex; an infeasible system
//! is reported with a Farkas certificate. The minimizer of `x^T G x` is then
//! found by a primal active-set method and returned with KKT multipliers
//! that [`verify_certificate`] re-checks from scratch.

pub mod simplex;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{fmt_rat, parse_rat, rank, solve_particular, Rat, RatMat, RatVec};
use crate::rootsys::ChamberPoint;
use crate::signtypes::{Constraint, Polyhedron, Sense};

pub use simplex::nonnegative_solution;

/// Hard cap on active-set iterations; never reached on well-posed input.
pub const MAX_ITERATIONS: usize = 10_000;

/// Nonnegative weights `y` on the constraints, written as `a_i . x >= b_i`,
/// with `sum y_i a_i = 0` and `sum y_i b_i = 1`: adding the constraints
/// gives `0 >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub weights: RatVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(ChamberPoint),
    Infeasible(FarkasCertificate),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinNormError {
    #[error("polyhedron is empty")]
    Infeasible(FarkasCertificate),
    #[error("gram matrix must be symmetric positive definite of size {0}")]
    BadGram(usize),
    #[error("active-set method did not finish in {0} iterations")]
    IterationLimit(usize),
}

/// KKT certificate for the minimizer of `x^T G x` over a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinNormCertificate {
    pub minimizer: ChamberPoint,
    pub active_set: Vec<usize>,
    pub multipliers: RatVec,
}

/// Normals and bounds in `>=` form.
fn ge_rows(p: &Polyhedron) -> (Vec<Vec<i64>>, Vec<Rat>) {
    p.constraints.iter().map(Constraint::as_ge).unzip()
}

pub fn feasible_point(p: &Polyhedron) -> Feasibility {
    let n = p.dim;
    let m = p.len();
    let (a, b) = ge_rows(p);
    // a (u - v) - s = b with u, v, s >= 0
    let mut lp = RatMat::zeros(m, 2 * n + m);
    for i in 0..m {
        for j in 0..n {
            lp.set(i, j, Rat::from_integer(a[i][j].into()));
            lp.set(i, n + j, Rat::from_integer((-a[i][j]).into()));
        }
        lp.set(i, 2 * n + i, -Rat::one());
    }
    if let Some(y) = nonnegative_solution(&lp, &RatVec::new(b.clone())) {
        let x = (0..n).map(|j| &y[j] - &y[n + j]).collect::<Vec<_>>();
        return Feasibility::Feasible(ChamberPoint::new(RatVec::new(x)));
    }
    // a^T y = 0, b^T y = 1, y >= 0
    let mut dual = RatMat::zeros(n + 1, m);
    for i in 0..m {
        for j in 0..n {
            dual.set(j, i, Rat::from_integer(a[i][j].into()));
        }
        dual.set(n, i, b[i].clone());
    }
    let mut rhs = RatVec::zeros(n + 1);
    rhs[n] = Rat::one();
    let weights = nonnegative_solution(&dual, &rhs)
        .expect("Farkas alternative: one of the two systems is solvable");
    Feasibility::Infeasible(FarkasCertificate { weights })
}

pub fn verify_farkas(p: &Polyhedron, cert: &FarkasCertificate) -> bool {
    let (a, b) = ge_rows(p);
    if cert.weights.dim() != p.len() || cert.weights.iter().any(Signed::is_negative) {
        return false;
    }
    let combo_zero = (0..p.dim).all(|j| {
        a.iter()
            .zip(cert.weights.iter())
            .fold(Rat::zero(), |acc, (row, y)| acc + y * Rat::from_integer(row[j].into()))
            .is_zero()
    });
    let rhs = b
        .iter()
        .zip(cert.weights.iter())
        .fold(Rat::zero(), |acc, (bi, y)| acc + bi * y);
    combo_zero && rhs.is_positive()
}

fn check_gram(gram: &RatMat, n: usize) -> Result<(), MinNormError> {
    if gram.rows() != n || gram.cols() != n || !gram.is_symmetric() {
        return Err(MinNormError::BadGram(n));
    }
    // symmetric elimination without pivoting: all pivots positive iff PD
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| gram.row(i).to_vec()).collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Err(MinNormError::BadGram(n));
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    Ok(())
}

/// Solves the equality-constrained step: minimize over `x + p` with the
/// working-set constraints held tight. Returns `(p, lambda)`.
fn kkt_step(
    gram: &RatMat,
    normals: &[Vec<i64>],
    working: &[usize],
    x: &RatVec,
) -> (RatVec, RatVec) {
    let n = gram.rows();
    let w = working.len();
    let mut k = RatMat::zeros(n + w, n + w);
    let gx = gram.mul_vec(x);
    let mut rhs = RatVec::zeros(n + w);
    for i in 0..n {
        for j in 0..n {
            k.set(i, j, gram.get(i, j).clone());
        }
        rhs[i] = -gx[i].clone();
    }
    for (r, &c) in working.iter().enumerate() {
        for j in 0..n {
            let a = Rat::from_integer(normals[c][j].into());
            k.set(n + r, j, a.clone());
            k.set(j, n + r, -a);
        }
    }
    let v = solve_particular(&k, &rhs)
        .expect("KKT matrix is nonsingular")
        .into_inner();
    (RatVec::new(v[..n].to_vec()), RatVec::new(v[n..].to_vec()))
}

/// Linearly independent subset of `candidates`, greedily in the given order.
fn independent_subset(normals: &[Vec<i64>], candidates: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for &c in candidates {
        let mut rows: Vec<Vec<i64>> = chosen.iter().map(|&i| normals[i].clone()).collect();
        rows.push(normals[c].clone());
        if rank(&RatMat::from_int_rows(&rows)) == rows.len() {
            chosen.push(c);
        }
    }
    chosen
}

/// Exact minimizer of `x^T G x` over `p`.
pub fn min_norm_point(p: &Polyhedron, gram: &RatMat) -> Result<MinNormCertificate, MinNormError> {
    check_gram(gram, p.dim)?;
    let start = match feasible_point(p) {
        Feasibility::Feasible(x) => x,
        Feasibility::Infeasible(c) => return Err(MinNormError::Infeasible(c)),
    };
    let (normals, bounds) = ge_rows(p);
    let value = |i: usize, x: &RatVec| x.dot_int(&normals[i]);
    let mut x = start.coords;
    let active: Vec<usize> = (0..p.len()).filter(|&i| value(i, &x) == bounds[i]).collect();
    let mut working = independent_subset(&normals, &active);
    for _ in 0..MAX_ITERATIONS {
        let (step, lambda) = kkt_step(gram, &normals, &working, &x);
        if step.is_zero() {
            // least index with a negative multiplier leaves
            let drop = working
                .iter()
                .zip(lambda.iter())
                .filter(|(_, l)| l.is_negative())
                .map(|(&c, _)| c)
                .min();
            match drop {
                None => {
                    let mut pairs: Vec<(usize, Rat)> =
                        working.iter().copied().zip(lambda.into_inner()).collect();
                    pairs.sort_by_key(|(c, _)| *c);
                    let (active_set, mult): (Vec<usize>, Vec<Rat>) = pairs.into_iter().unzip();
                    return Ok(MinNormCertificate {
                        minimizer: ChamberPoint::new(x),
                        active_set,
                        multipliers: RatVec::new(mult),
                    });
                }
                Some(c) => working.retain(|&w| w != c),
            }
            continue;
        }
        // longest feasible step along `step`, blocking ties to the least index
        let mut alpha = Rat::one();
        let mut blocking = None;
        for i in 0..p.len() {
            if working.contains(&i) {
                continue;
            }
            let slope = step.dot_int(&normals[i]);
            if slope.is_negative() {
                let t = (&bounds[i] - value(i, &x)) / &slope;
                if t < alpha {
                    alpha = t;
                    blocking = Some(i);
                }
            }
        }
        x = x.add(&step.scale(&alpha));
        if let Some(b) = blocking {
            working.push(b);
        }
    }
    Err(MinNormError::IterationLimit(MAX_ITERATIONS))
}

/// Why a certificate was rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    #[error("shape mismatch")]
    Shape,
    #[error("constraint {0} is violated")]
    Infeasible(usize),
    #[error("multiplier for constraint {0} is negative")]
    NegativeMultiplier(usize),
    #[error("active constraint {0} is not tight")]
    NotTight(usize),
    #[error("stationarity fails")]
    NotStationary,
}

/// Independent audit: feasibility, sign, slackness and stationarity
/// `G x = sum lambda_i s_i a_i`, with `s_i = -1` for `<=` constraints.
pub fn verify_certificate(
    p: &Polyhedron,
    gram: &RatMat,
    c: &MinNormCertificate,
) -> Result<(), CertificateFailure> {
    let x = &c.minimizer;
    if x.dim() != p.dim
        || gram.rows() != p.dim
        || c.active_set.len() != c.multipliers.dim()
        || c.active_set.iter().any(|&i| i >= p.len())
    {
        return Err(CertificateFailure::Shape);
    }
    if let Some(i) = p.constraints.iter().position(|k| !k.is_satisfied(x)) {
        return Err(CertificateFailure::Infeasible(i));
    }
    let mut combo = RatVec::zeros(p.dim);
    for (&i, l) in c.active_set.iter().zip(c.multipliers.iter()) {
        if l.is_negative() {
            return Err(CertificateFailure::NegativeMultiplier(i));
        }
        let k = &p.constraints[i];
        if !k.is_tight(x) {
            return Err(CertificateFailure::NotTight(i));
        }
        let s = match k.sense {
            Sense::Ge => l.clone(),
            Sense::Le => -l.clone(),
        };
        for j in 0..p.dim {
            combo[j] += &s * Rat::from_integer(k.normal[j].into());
        }
    }
    if gram.mul_vec(&x.coords) != combo {
        return Err(CertificateFailure::NotStationary);
    }
    Ok(())
}

/// Serialized constraint; rationals as `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintDump {
    pub normal: Vec<i64>,
    pub sense: String,
    pub bound: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronDump {
    pub dim: usize,
    pub constraints: Vec<ConstraintDump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDump {
    pub minimizer: Vec<String>,
    pub active_set: Vec<usize>,
    pub multipliers: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed dump: {0}")]
pub struct DumpError(pub String);

fn parse_all(xs: &[String]) -> Result<Vec<Rat>, DumpError> {
    xs.iter()
        .map(|s| parse_rat(s).ok_or_else(|| DumpError(format!("bad rational {s:?}"))))
        .collect()
}

impl From<&Polyhedron> for PolyhedronDump {
    fn from(p: &Polyhedron) -> Self {
        PolyhedronDump {
            dim: p.dim,
            constraints: p
                .constraints
                .iter()
                .map(|c| ConstraintDump {
                    normal: c.normal.clone(),
                    sense: match c.sense {
                        Sense::Ge => ">=".into(),
                        Sense::Le => "<=".into(),
                    },
                    bound: fmt_rat(&c.bound),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyhedronDump> for Polyhedron {
    type Error = DumpError;

    fn try_from(d: &PolyhedronDump) -> Result<Self, DumpError> {
        let mut cs = Vec::new();
        for c in &d.constraints {
            if c.normal.len() != d.dim {
                return Err(DumpError("normal has the wrong length".into()));
            }
            let bound = parse_rat(&c.bound).ok_or_else(|| DumpError(c.bound.clone()))?;
            let sense = match c.sense.as_str() {
                ">=" => Sense::Ge,
                "<=" => Sense::Le,
                s => return Err(DumpError(format!("bad sense {s:?}"))),
            };
            cs.push(Constraint {
                normal: c.normal.clone(),
                bound,
                sense,
            });
        }
        Ok(Polyhedron::new(d.dim, cs))
    }
}

impl From<&MinNormCertificate> for CertificateDump {
    fn from(c: &MinNormCertificate) -> Self {
        CertificateDump {
            minimizer: c.minimizer.to_strings(),
            active_set: c.active_set.clone(),
            multipliers: c.multipliers.iter().map(fmt_rat).collect(),
        }
    }
}

impl TryFrom<&CertificateDump> for MinNormCertificate {
    type Error = DumpError;

    fn try_from(d: &CertificateDump) -> Result<Self, DumpError> {
        Ok(MinNormCertificate {
            minimizer: ChamberPoint::new(RatVec::new(parse_all(&d.minimizer)?)),
            active_set: d.active_set.clone(),
            multipliers: RatVec::new(parse_all(&d.multipliers)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rat};
    use crate::rootsys::{Family, RootSystem, RootSystemSpec};

    fn ge(n: &[i64], b: Rat) -> Constraint {
        Constraint::ge(n.to_vec(), b)
    }

    fn le(n: &[i64], b: Rat) -> Constraint {
        Constraint::le(n.to_vec(), b)
    }

    fn a2() -> RootSystem {
        RootSystem::build(RootSystemSpec::new(Family::A, 2).unwrap())
    }

    #[test]
    fn feasibility_examples() {
        let p = Polyhedron::new(1, vec![ge(&[1], int(0))]);
        assert!(matches!(feasible_point(&p), Feasibility::Feasible(x) if p.contains(&x)));
        let p = Polyhedron::new(1, vec![ge(&[1], int(1)), le(&[1], int(0))]);
        match feasible_point(&p) {
            Feasibility::Infeasible(c) => assert!(verify_farkas(&p, &c)),
            other => panic!("expected infeasible, got {other:?}"),
        }
        let p = Polyhedron::new(2, vec![ge(&[1, 0], int(1)), ge(&[0, 1], int(1))]);
        match feasible_point(&p) {
            Feasibility::Feasible(x) => assert!(x.coords.iter().all(|c| *c >= int(1))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn a1_half_line() {
        let g = RatMat::from_rows(vec![vec![rat(1, 2)]]).unwrap();
        let p = Polyhedron::new(1, vec![ge(&[1], int(1))]);
        let c = min_norm_point(&p, &g).unwrap();
        assert_eq!(c.minimizer, ChamberPoint::from_ints(&[1]));
        assert_eq!(verify_certificate(&p, &g, &c), Ok(()));
    }

    #[test]
    fn a2_examples() {
        let rs = a2();
        let g = rs.gram_coweight().clone();
        assert_eq!(g, RatMat::from_rows(vec![vec![rat(2, 3), rat(1, 3)], vec![rat(1, 3), rat(2, 3)]]).unwrap());
        let p = Polyhedron::new(
            2,
            vec![
                ge(&[1, 1], int(1)),
                le(&[1, 0], int(1)),
                le(&[0, 1], int(1)),
                ge(&[1, 0], int(0)),
                ge(&[0, 1], int(0)),
            ],
        );
        let c = min_norm_point(&p, &g).unwrap();
        assert_eq!(c.minimizer.coords, RatVec::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(verify_certificate(&p, &g, &c), Ok(()));
        let p = Polyhedron::new(2, vec![ge(&[1, 0], int(1)), ge(&[0, 1], int(1))]);
        let c = min_norm_point(&p, &g).unwrap();
        assert_eq!(c.minimizer, ChamberPoint::from_ints(&[1, 1]));
        assert_eq!(c.active_set, vec![0, 1]);
    }

    #[test]
    fn fault_injection_is_caught() {
        let g = a2().gram_coweight().clone();
        let p = Polyhedron::new(2, vec![ge(&[1, 0], int(1)), ge(&[0, 1], int(1))]);
        let c = min_norm_point(&p, &g).unwrap();
        let mut bad = c.clone();
        bad.multipliers[0] = -bad.multipliers[0].clone();
        assert!(matches!(
            verify_certificate(&p, &g, &bad),
            Err(CertificateFailure::NegativeMultiplier(0))
        ));
        let mut bad = c.clone();
        bad.minimizer.coords[0] = rat(3, 2);
        assert!(verify_certificate(&p, &g, &bad).is_err());
        let mut bad = c;
        bad.minimizer.coords[0] = rat(1, 2);
        assert_eq!(verify_certificate(&p, &g, &bad), Err(CertificateFailure::Infeasible(0)));
    }

    #[test]
    fn infeasible_input_is_rejected() {
        let g = RatMat::identity(1);
        let p = Polyhedron::new(1, vec![ge(&[1], int(2)), le(&[1], int(1))]);
        match min_norm_point(&p, &g) {
            Err(MinNormError::Infeasible(c)) => assert!(verify_farkas(&p, &c)),
            other => panic!("{other:?}"),
        }
        let bad = RatMat::from_int_rows(&[[1, 2], [2, 1]]);
        let p = Polyhedron::new(2, vec![]);
        assert_eq!(min_norm_point(&p, &bad), Err(MinNormError::BadGram(2)));
    }

    #[test]
    fn degenerate_vertex() {
        // three constraints through (1, 1) in the plane
        let g = RatMat::identity(2);
        let p = Polyhedron::new(
            2,
            vec![ge(&[1, 0], int(1)), ge(&[0, 1], int(1)), ge(&[1, 1], int(2))],
        );
        let c = min_norm_point(&p, &g).unwrap();
        assert_eq!(c.minimizer, ChamberPoint::from_ints(&[1, 1]));
        assert_eq!(verify_certificate(&p, &g, &c), Ok(()));
    }

    #[test]
    fn dumps_round_trip() {
        let g = a2().gram_coweight().clone();
        let p = Polyhedron::new(2, vec![ge(&[1, 1], int(1)), le(&[1, 0], rat(1, 3))]);
        let c = min_norm_point(&p, &g).unwrap();
        let pd = PolyhedronDump::from(&p);
        let json = serde_json::to_string(&pd).unwrap();
        let back: PolyhedronDump = serde_json::from_str(&json).unwrap();
        assert_eq!(Polyhedron::try_from(&back).unwrap(), p);
        let cd = CertificateDump::from(&c);
        let back: CertificateDump = serde_json::from_str(&serde_json::to_string(&cd).unwrap()).unwrap();
        assert_eq!(MinNormCertificate::try_from(&back).unwrap(), c);
    }
}
