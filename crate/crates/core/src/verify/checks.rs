use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{TheoremRun, VerifyConfig, VerifyError};
use crate::exactlin::Rat;
use crate::liealg::{
    dynkin_ideal, identify_orbit, sample_on_support, AmbiguityClass, DiagramCatalog,
    WeightedDynkinDiagram,
};
use crate::rng::{tags, SplitMix64};
use crate::rootsys::RootSystem;
use crate::signtypes::{sign_type_of, Ideal, RootSet};

/// Half the Dynkin element lies in the region of its own orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfInRegion {
    pub diagram: WeightedDynkinDiagram,
    pub class: AmbiguityClass,
    /// Plus set of the sign type of `h/2`.
    pub plus: RootSet,
    pub dynkin_ideal: RootSet,
    /// Associated class of the ideal `plus`, when it was classified.
    pub associated: Option<AmbiguityClass>,
}

impl HalfInRegion {
    pub fn passed(&self) -> bool {
        self.plus == self.dynkin_ideal && self.associated.as_ref() == Some(&self.class)
    }
}

pub fn verify_prop_half_in_region(
    rs: &RootSystem,
    run: &TheoremRun,
    class: &AmbiguityClass,
) -> Vec<HalfInRegion> {
    class
        .diagrams
        .iter()
        .map(|d| {
            let plus = sign_type_of(rs, &d.half_point())
                .expect("half Dynkin elements are dominant")
                .plus;
            HalfInRegion {
                diagram: d.clone(),
                class: class.clone(),
                plus,
                dynkin_ideal: dynkin_ideal(rs, d).members,
                associated: run.class_of_members(plus).cloned(),
            }
        })
        .collect()
}

/// A sampled element whose orbit is not smaller than the target's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormViolation {
    pub support: RootSet,
    pub class: AmbiguityClass,
    pub norm_squared: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryResult {
    pub diagram: WeightedDynkinDiagram,
    pub class: AmbiguityClass,
    pub norm_squared: Rat,
    pub samples: usize,
    /// Other classes met, sorted.
    pub smaller_classes: Vec<AmbiguityClass>,
    pub violations: Vec<NormViolation>,
}

impl CorollaryResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Single-generator deletions of the ideal first, then random subsets
/// (each member kept with probability 1/2) up to `budget`.
pub fn sub_supports(ideal: &Ideal, rng: &mut SplitMix64, budget: usize) -> Vec<RootSet> {
    let mut out: Vec<RootSet> = ideal
        .generators
        .iter()
        .map(|g| ideal.members.without(g))
        .take(budget)
        .collect();
    while out.len() < budget {
        let s = RootSet::from_indices(ideal.members.iter().filter(|_| rng.coin()));
        out.push(s);
    }
    out
}

/// Elements supported inside the Dynkin ideal of `d` lie in orbits no
/// larger than that of `d`; every other orbit met must have strictly
/// smaller Dynkin element.
pub fn verify_corollary(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    class: &AmbiguityClass,
    d: &WeightedDynkinDiagram,
    rng: &mut SplitMix64,
    cfg: &VerifyConfig,
) -> Result<CorollaryResult, VerifyError> {
    let norm = rs.norm_squared(&d.dynkin_element());
    let ideal = dynkin_ideal(rs, d);
    let supports = if ideal.is_empty() {
        Vec::new()
    } else {
        sub_supports(&ideal, rng, cfg.corollary_budget)
    };
    let mut smaller = BTreeSet::new();
    let mut violations = Vec::new();
    for s in &supports {
        let e = sample_on_support(rs, *s, rng, cfg.sampling.coeff_range);
        let id = identify_orbit(rs, catalog, &e, cfg.sampling.check_triples)?;
        if &id.class == class {
            continue;
        }
        let other = rs.norm_squared(&id.class.representative().dynkin_element());
        if other >= norm {
            violations.push(NormViolation {
                support: *s,
                class: id.class.clone(),
                norm_squared: other,
            });
        }
        smaller.insert(id.class);
    }
    Ok(CorollaryResult {
        diagram: d.clone(),
        class: class.clone(),
        norm_squared: norm,
        samples: supports.len(),
        smaller_classes: smaller.into_iter().collect(),
        violations,
    })
}

/// Norm-decrease check for every diagram of every realized class.
pub fn verify_corollary_all(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    run: &TheoremRun,
    cfg: &VerifyConfig,
) -> Result<Vec<CorollaryResult>, VerifyError> {
    let jobs: Vec<(usize, usize, &AmbiguityClass, &WeightedDynkinDiagram)> = run
        .regions()
        .enumerate()
        .flat_map(|(k, r)| {
            r.orbit_class
                .diagrams
                .iter()
                .enumerate()
                .map(move |(j, d)| (k, j, &r.orbit_class, d))
        })
        .collect();
    jobs.par_iter()
        .map(|&(k, j, class, d)| {
            let mut rng =
                SplitMix64::stream(cfg.seed, tags::COROLLARY, ((k as u64) << 8) | j as u64);
            verify_corollary(rs, catalog, class, d, &mut rng, cfg)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootSystemSpec};
    use crate::verify::verify_theorem;

    fn setup(f: Family, n: usize) -> (RootSystem, DiagramCatalog, TheoremRun) {
        let rs = RootSystem::build(RootSystemSpec::new(f, n).unwrap());
        let cat = DiagramCatalog::new(&rs);
        let run = verify_theorem(&rs, &cat, &VerifyConfig::default()).unwrap();
        (rs, cat, run)
    }

    #[test]
    fn half_points_land_in_their_regions() {
        let (rs, _, run) = setup(Family::A, 2);
        for r in run.regions() {
            for c in verify_prop_half_in_region(&rs, &run, &r.orbit_class) {
                assert!(c.passed(), "{c:?}");
            }
        }
        let mid = WeightedDynkinDiagram::new(vec![1, 1]);
        let c = &verify_prop_half_in_region(&rs, &run, &AmbiguityClass::singleton(mid))[0];
        assert_eq!(c.plus, RootSet::singleton(rs.highest_root_index()));
        let zero = WeightedDynkinDiagram::zero(2);
        let c = &verify_prop_half_in_region(&rs, &run, &AmbiguityClass::singleton(zero))[0];
        assert!(c.plus.is_empty() && c.passed());
    }

    #[test]
    fn norms_decrease_b2() {
        let (rs, cat, run) = setup(Family::B, 2);
        let results = verify_corollary_all(&rs, &cat, &run, &VerifyConfig::default()).unwrap();
        assert_eq!(results.len(), 4);
        for r in &results {
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(results[0].samples, 0);
        let regular = results.last().unwrap();
        assert_eq!(regular.samples, 64);
        assert!(!regular.smaller_classes.is_empty());
    }

    #[test]
    fn a2_regular_meets_smaller_orbits() {
        let (rs, cat, run) = setup(Family::A, 2);
        let res = verify_corollary_all(&rs, &cat, &run, &VerifyConfig::default()).unwrap();
        let reg = res.last().unwrap();
        let reps: Vec<Vec<i64>> = reg
            .smaller_classes
            .iter()
            .map(|c| c.representative().marks.clone())
            .collect();
        assert_eq!(reps, vec![vec![0, 0], vec![1, 1]]);
        assert!(reg.passed());
    }

    #[test]
    fn deletions_come_first() {
        let rs = RootSystem::build(RootSystemSpec::new(Family::A, 2).unwrap());
        let ideal = dynkin_ideal(&rs, &WeightedDynkinDiagram::new(vec![2, 2]));
        let mut rng = SplitMix64::new(4);
        let s = sub_supports(&ideal, &mut rng, 5);
        assert_eq!(s.len(), 5);
        assert_eq!(s[0], RootSet::from_indices([1, 2]));
        assert_eq!(s[1], RootSet::from_indices([0, 2]));
    }
}
