//! Regions of the dominant chamber grouped by dense orbit, their exact
//! minimum-norm points, and the checks built on them.

mod checks;
mod propd;
mod report;

pub use checks::*;
pub use propd::*;
pub use report::*;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{fmt_rat, int, Rat};
use crate::liealg::{
    associated_orbit, orbit_dimension, AmbiguityClass, AssociatedOrbit, DiagramCatalog, LieError,
    SamplingConfig,
};
use crate::minnorm::{min_norm_point, verify_certificate, MinNormCertificate, MinNormError};
use crate::rng::{tags, SplitMix64};
use crate::rootsys::{ChamberPoint, RootSystem, RootSystemError};
use crate::signtypes::{closure_polyhedron, Ideal, SignType};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    MinNorm(#[from] MinNormError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// Knobs shared by every randomized check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub sampling: SamplingConfig,
    pub weyl_ceiling: u128,
    /// Sub-supports drawn per orbit in the norm-decrease check.
    pub corollary_budget: usize,
    /// Samples per Weyl witness in the property-D search.
    pub propd_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 1,
            sampling: SamplingConfig::default(),
            weyl_ceiling: crate::rootsys::DEFAULT_WEYL_CEILING,
            corollary_budget: 64,
            propd_samples: 16,
        }
    }
}

/// Associated orbit of every ideal, in ideal order. Each ideal draws from
/// its own stream, so the result does not depend on scheduling.
pub fn classify_ideals(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    ideals: &[Ideal],
    cfg: &VerifyConfig,
) -> Result<Vec<AssociatedOrbit>, VerifyError> {
    ideals
        .par_iter()
        .enumerate()
        .map(|(k, ideal)| {
            let mut rng = SplitMix64::stream(cfg.seed, tags::ORBIT, k as u64);
            associated_orbit(rs, catalog, ideal.members, &mut rng, &cfg.sampling)
                .map_err(VerifyError::from)
        })
        .collect()
}

/// The sign types whose ideals share one associated orbit class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRegion {
    pub orbit_class: AmbiguityClass,
    pub dimension: usize,
    /// Indices into the ideal list.
    pub ideals: Vec<usize>,
    pub sign_types: Vec<SignType>,
    /// Every member ideal's sampling converged.
    pub converged: bool,
}

/// Groups ideals by associated class; regions come out in order of orbit
/// dimension, then class.
pub fn build_nregions(
    rs: &RootSystem,
    ideals: &[Ideal],
    orbits: &[AssociatedOrbit],
) -> Vec<NRegion> {
    let mut groups: BTreeMap<(usize, AmbiguityClass), Vec<usize>> = BTreeMap::new();
    for (k, o) in orbits.iter().enumerate() {
        groups
            .entry((o.dimension, o.class.clone()))
            .or_default()
            .push(k);
    }
    groups
        .into_iter()
        .map(|((dimension, orbit_class), members)| NRegion {
            orbit_class,
            dimension,
            sign_types: members
                .iter()
                .map(|&k| SignType::of_ideal(rs, &ideals[k]))
                .collect(),
            converged: members.iter().all(|&k| orbits[k].converged),
            ideals: members,
        })
        .collect()
}

/// Minimizer over one sign type's closed region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionMinimum {
    pub ideal: usize,
    pub sign_type: SignType,
    pub certificate: MinNormCertificate,
    pub norm_squared: Rat,
    pub certificate_ok: bool,
}

/// Minimum over a whole N-region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRegionMinimum {
    pub min_norm: Rat,
    /// Distinct points attaining `min_norm`, sorted.
    pub minimizers: Vec<ChamberPoint>,
    pub per_region: Vec<RegionMinimum>,
}

/// The closure of a finite union is the union of closures, so the minimum
/// over the region is the least of the per-sign-type minima.
pub fn min_point_of_nregion(rs: &RootSystem, r: &NRegion) -> Result<NRegionMinimum, VerifyError> {
    let gram = rs.gram_coweight();
    let per_region: Vec<RegionMinimum> = r
        .ideals
        .par_iter()
        .zip(r.sign_types.par_iter())
        .map(|(&ideal, s)| {
            let p = closure_polyhedron(rs, s);
            let certificate = min_norm_point(&p, gram)?;
            let certificate_ok = verify_certificate(&p, gram, &certificate).is_ok();
            Ok(RegionMinimum {
                ideal,
                sign_type: *s,
                norm_squared: rs.norm_squared(&certificate.minimizer),
                certificate,
                certificate_ok,
            })
        })
        .collect::<Result<_, VerifyError>>()?;
    let min_norm = per_region
        .iter()
        .map(|m| m.norm_squared.clone())
        .min()
        .expect("regions are nonempty");
    let minimizers: BTreeSet<ChamberPoint> = per_region
        .iter()
        .filter(|m| m.norm_squared == min_norm)
        .map(|m| m.certificate.minimizer.clone())
        .collect();
    Ok(NRegionMinimum {
        min_norm,
        minimizers: minimizers.into_iter().collect(),
        per_region,
    })
}

/// `|x|^2` from the simple-coroot expansion of `x`, using
/// `(a_i^v, a_j^v) = 4 (a_i, a_j) / (|a_i|^2 |a_j|^2)`. Independent of the
/// coweight Gram matrix used by the solver.
pub fn norm_squared_via_coroots(rs: &RootSystem, x: &ChamberPoint) -> Rat {
    let n = rs.rank();
    let c = rs.coweight_to_coroot(x);
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let len: Vec<Rat> = (0..n).map(|i| rs.root_inner(&unit(i), &unit(i))).collect();
    let mut acc = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            if c[i].is_zero() || c[j].is_zero() {
                continue;
            }
            let ip = rs.root_inner(&unit(i), &unit(j)) * int(4) / (&len[i] * &len[j]);
            acc += &c[i] * &c[j] * ip;
        }
    }
    acc
}

/// Outcome of the minimum-norm comparison for one orbit class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCheck {
    pub region: NRegion,
    pub minimum: NRegionMinimum,
    pub half_points: Vec<ChamberPoint>,
    pub expected_norm: Rat,
    /// Computed minimizers equal the half Dynkin elements of the class.
    pub exact_match: bool,
    /// The minimum norm equals the norm of half the Dynkin element.
    pub norm_match: bool,
    pub certificates_ok: bool,
}

impl OrbitCheck {
    pub fn passed(&self) -> bool {
        self.exact_match && self.norm_match && self.certificates_ok
    }
}

pub fn check_orbit(rs: &RootSystem, region: &NRegion) -> Result<OrbitCheck, VerifyError> {
    let minimum = min_point_of_nregion(rs, region)?;
    let mut half_points: Vec<ChamberPoint> = region
        .orbit_class
        .diagrams
        .iter()
        .map(|d| d.half_point())
        .collect();
    half_points.sort();
    half_points.dedup();
    let expected_norm = norm_squared_via_coroots(rs, &half_points[0]);
    let exact_match = minimum.minimizers == half_points;
    let norm_match = half_points
        .iter()
        .all(|p| norm_squared_via_coroots(rs, p) == minimum.min_norm);
    let certificates_ok = minimum.per_region.iter().all(|m| m.certificate_ok);
    Ok(OrbitCheck {
        region: region.clone(),
        minimum,
        half_points,
        expected_norm,
        exact_match,
        norm_match,
        certificates_ok,
    })
}

/// Everything computed for the minimum-norm claim on one root system.
#[derive(Clone, Debug)]
pub struct TheoremRun {
    pub ideals: Vec<Ideal>,
    pub orbits: Vec<AssociatedOrbit>,
    pub checks: Vec<OrbitCheck>,
    /// Region sizes sum to the number of ideals, which is the Catalan number.
    pub partition_ok: bool,
    /// The zero orbit's region is exactly the empty ideal, with minimum 0.
    pub zero_region_ok: bool,
}

impl TheoremRun {
    pub fn regions(&self) -> impl Iterator<Item = &NRegion> {
        self.checks.iter().map(|c| &c.region)
    }

    /// Half Dynkin points over all realized classes, sorted.
    pub fn half_dynkin_set(&self) -> Vec<ChamberPoint> {
        let mut v: Vec<ChamberPoint> = self
            .checks
            .iter()
            .flat_map(|c| c.half_points.iter().cloned())
            .collect();
        v.sort();
        v
    }

    pub fn orbit_count(&self) -> usize {
        self.checks.iter().map(|c| c.region.orbit_class.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.partition_ok && self.zero_region_ok && self.checks.iter().all(OrbitCheck::passed)
    }

    pub fn converged(&self) -> bool {
        self.orbits.iter().all(|o| o.converged)
    }

    /// Associated class of the ideal with exactly these members.
    pub fn class_of_members(&self, members: crate::signtypes::RootSet) -> Option<&AmbiguityClass> {
        self.ideals
            .iter()
            .position(|i| i.members == members)
            .map(|k| &self.orbits[k].class)
    }
}

pub fn verify_theorem(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    cfg: &VerifyConfig,
) -> Result<TheoremRun, VerifyError> {
    let ideals = crate::signtypes::enumerate_ideals(rs);
    let orbits = classify_ideals(rs, catalog, &ideals, cfg)?;
    let regions = build_nregions(rs, &ideals, &orbits);
    let checks = regions
        .par_iter()
        .map(|r| check_orbit(rs, r))
        .collect::<Result<Vec<_>, _>>()?;
    let covered: usize = regions.iter().map(|r| r.ideals.len()).sum();
    let partition_ok =
        covered == ideals.len() && ideals.len() as u128 == rs.spec().catalan_number();
    let zero_region_ok = checks.iter().any(|c| {
        c.region.orbit_class.representative().is_zero()
            && c.region.ideals.len() == 1
            && ideals[c.region.ideals[0]].is_empty()
            && c.minimum.minimizers == vec![ChamberPoint::zero(rs.rank())]
    });
    Ok(TheoremRun {
        ideals,
        orbits,
        checks,
        partition_ok,
        zero_region_ok,
    })
}

/// Dimension of each class's orbits, recomputed from the diagram.
pub fn class_dimension(rs: &RootSystem, class: &AmbiguityClass) -> usize {
    orbit_dimension(rs, class.representative())
}

/// `p/q` strings for a point.
pub(crate) fn point_strings(x: &ChamberPoint) -> Vec<String> {
    x.to_strings()
}

pub(crate) fn rat_string(r: &Rat) -> String {
    fmt_rat(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    /// The worse of two outcomes.
    pub fn and(self, o: Status) -> Status {
        self.max(o)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use crate::liealg::WeightedDynkinDiagram;
    use crate::rootsys::{Family, RootSystemSpec};

    fn run(f: Family, n: usize) -> (RootSystem, TheoremRun) {
        let rs = RootSystem::build(RootSystemSpec::new(f, n).unwrap());
        let cat = DiagramCatalog::new(&rs);
        let t = verify_theorem(&rs, &cat, &VerifyConfig::default()).unwrap();
        (rs, t)
    }

    #[test]
    fn a1_regions() {
        let (_, t) = run(Family::A, 1);
        assert!(t.passed());
        let sizes: Vec<usize> = t.regions().map(|r| r.ideals.len()).collect();
        assert_eq!(sizes, vec![1, 1]);
        assert_eq!(t.checks[1].minimum.minimizers, vec![ChamberPoint::from_ints(&[1])]);
    }

    #[test]
    fn a2_regions() {
        let (_, t) = run(Family::A, 2);
        assert!(t.passed());
        let got: Vec<(Vec<i64>, usize)> = t
            .regions()
            .map(|r| (r.orbit_class.representative().marks.clone(), r.ideals.len()))
            .collect();
        assert_eq!(got, vec![(vec![0, 0], 1), (vec![1, 1], 3), (vec![2, 2], 1)]);
        let mid = &t.checks[1];
        assert_eq!(
            mid.minimum.minimizers,
            vec![ChamberPoint::new(crate::exactlin::RatVec::new(vec![rat(1, 2), rat(1, 2)]))]
        );
        // only the region with theta alone plus attains it
        let attaining: Vec<String> = mid
            .minimum
            .per_region
            .iter()
            .filter(|m| m.norm_squared == mid.minimum.min_norm)
            .map(|m| m.sign_type.to_string())
            .collect();
        assert_eq!(attaining, vec!["00+"]);
        assert_eq!(t.checks[2].minimum.minimizers, vec![ChamberPoint::from_ints(&[1, 1])]);
    }

    #[test]
    fn b2_golden_set() {
        let (_, t) = run(Family::B, 2);
        assert!(t.passed());
        assert_eq!(t.orbit_count(), 4);
        let set = t.half_dynkin_set();
        let p = |a: Rat, b: Rat| ChamberPoint::new(crate::exactlin::RatVec::new(vec![a, b]));
        assert!(set.contains(&p(int(0), int(0))));
        assert!(set.contains(&p(int(0), rat(1, 2))));
        assert!(set.contains(&p(int(1), int(1))));
        assert!(!set.contains(&p(int(1), rat(1, 2))));
    }

    #[test]
    fn coroot_norm_agrees_with_gram() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::G, 2)] {
            let rs = RootSystem::build(RootSystemSpec::new(f, n).unwrap());
            let x = WeightedDynkinDiagram::new((1..=n as i64).collect()).half_point();
            assert_eq!(norm_squared_via_coroots(&rs, &x), rs.norm_squared(&x));
        }
    }

    #[test]
    fn status_order() {
        assert_eq!(Status::Pass.and(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Fail.and(Status::Inconclusive), Status::Fail);
        assert_eq!(Status::Fail.exit_code(), 1);
    }
}
