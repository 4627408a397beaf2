//! Search for sl2 triples through an ideal whose neutral element is a Weyl
//! conjugate of the Dynkin element.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;

use super::checks::sub_supports;
use super::{TheoremRun, VerifyConfig, VerifyError};
use crate::exactlin::{int, Rat};
use crate::liealg::{
    identify_orbit, is_sl2_triple, sample_on_support, triple_completion, AmbiguityClass,
    DiagramCatalog, LieElement, LieError, WeightedDynkinDiagram,
};
use crate::minnorm::{min_norm_point, verify_certificate};
use crate::rng::{tags, SplitMix64};
use crate::rootsys::{ChamberPoint, RootSystem};
use crate::signtypes::{Constraint, Ideal, Polyhedron, RootSet};

/// Non-target samples tolerated at one witness before moving on. A generic
/// element of a linear space lies in a single orbit, so repeats rarely help.
const MISSES_PER_WITNESS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PropertyDMode {
    /// Target the associated orbit of the ideal.
    Weak,
    /// Target every orbit met by the ideal.
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyDCertificate {
    pub ideal: RootSet,
    pub diagram: WeightedDynkinDiagram,
    pub class: AmbiguityClass,
    /// Word in simple reflections taking the Dynkin element to `h`.
    pub witness: Vec<usize>,
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
}

/// One target of the search and what was found for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyDOutcome {
    pub target: AmbiguityClass,
    pub certificate: Option<PropertyDCertificate>,
    pub witnesses_tried: usize,
    pub samples_used: usize,
}

/// Generic samples supported on `roots`, checked against `target`; the
/// first one admitting a triple with neutral element `h` wins.
fn try_witness(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    target: &AmbiguityClass,
    roots: RootSet,
    h: &LieElement,
    rng: &mut SplitMix64,
    cfg: &VerifyConfig,
    budget: &mut usize,
) -> Result<Option<(LieElement, LieElement)>, VerifyError> {
    let mut misses = 0;
    for _ in 0..cfg.propd_samples {
        if *budget == 0 || misses >= MISSES_PER_WITNESS {
            break;
        }
        *budget -= 1;
        let e = sample_on_support(rs, roots, rng, cfg.sampling.coeff_range);
        if &identify_orbit(rs, catalog, &e, false)?.class != target {
            misses += 1;
            continue;
        }
        match triple_completion(rs, &e, h) {
            Ok(f) => return Ok(Some((e, f))),
            Err(LieError::NoCompletion(_)) | Err(LieError::NotNeutral) => misses += 1,
            Err(err) => return Err(err.into()),
        }
    }
    Ok(None)
}

/// First certificate for `target` in a fixed order: diagrams of the class,
/// then distinct Weyl images of each Dynkin element breadth first, with the
/// untouched element first. The total sample budget is `|W| * propd_samples`.
pub fn search_certificate(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    ideal: RootSet,
    target: &AmbiguityClass,
    rng: &mut SplitMix64,
    cfg: &VerifyConfig,
) -> Result<PropertyDOutcome, VerifyError> {
    let order = rs.spec().weyl_order();
    if order > cfg.weyl_ceiling {
        return Err(crate::rootsys::RootSystemError::WeylTooLarge {
            order,
            ceiling: cfg.weyl_ceiling,
        }
        .into());
    }
    let total = (order as usize).saturating_mul(cfg.propd_samples);
    let mut budget = total;
    let mut witnesses = 0;
    if target.representative().is_zero() {
        let z = LieElement::zero(rs.rank());
        return Ok(PropertyDOutcome {
            target: target.clone(),
            certificate: Some(PropertyDCertificate {
                ideal,
                diagram: target.representative().clone(),
                class: target.clone(),
                witness: Vec::new(),
                e: z.clone(),
                h: z.clone(),
                f: z,
            }),
            witnesses_tried: 0,
            samples_used: 0,
        });
    }
    let two = int(2);
    for d in &target.diagrams {
        for (y, word) in rs.weyl_orbit(&d.dynkin_element()) {
            if budget == 0 {
                break;
            }
            let roots = RootSet::from_indices(
                ideal
                    .iter()
                    .filter(|&i| rs.pairing(&rs.positive_roots()[i], &y) == two),
            );
            if roots.is_empty() {
                continue;
            }
            witnesses += 1;
            let h = LieElement::from_point(rs, &y);
            if let Some((e, f)) = try_witness(rs, catalog, target, roots, &h, rng, cfg, &mut budget)? {
                return Ok(PropertyDOutcome {
                    target: target.clone(),
                    certificate: Some(PropertyDCertificate {
                        ideal,
                        diagram: d.clone(),
                        class: target.clone(),
                        witness: word,
                        e,
                        h,
                        f,
                    }),
                    witnesses_tried: witnesses,
                    samples_used: total - budget,
                });
            }
        }
    }
    Ok(PropertyDOutcome {
        target: target.clone(),
        certificate: None,
        witnesses_tried: witnesses,
        samples_used: total - budget,
    })
}

/// Orbit classes met by the ideal: associated classes of all sub-ideals
/// plus classes of sampled sub-supports.
pub fn orbits_met(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    run: &TheoremRun,
    ideal: &Ideal,
    rng: &mut SplitMix64,
    cfg: &VerifyConfig,
) -> Result<Vec<AmbiguityClass>, VerifyError> {
    let mut met: BTreeSet<AmbiguityClass> = run
        .ideals
        .iter()
        .zip(&run.orbits)
        .filter(|(j, _)| j.members.is_subset(ideal.members))
        .map(|(_, o)| o.class.clone())
        .collect();
    if !ideal.is_empty() {
        for s in sub_supports(ideal, rng, cfg.corollary_budget) {
            let e = sample_on_support(rs, s, rng, cfg.sampling.coeff_range);
            met.insert(identify_orbit(rs, catalog, &e, false)?.class);
        }
    }
    Ok(met.into_iter().collect())
}

/// Property-D search for one ideal. `run` supplies the associated classes.
pub fn verify_property_d(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    run: &TheoremRun,
    ideal_index: usize,
    mode: PropertyDMode,
    cfg: &VerifyConfig,
) -> Result<Vec<PropertyDOutcome>, VerifyError> {
    let ideal = &run.ideals[ideal_index];
    let stream = ((ideal_index as u64) << 1) | u64::from(mode == PropertyDMode::Strong);
    let mut rng = SplitMix64::stream(cfg.seed, tags::PROPERTY_D, stream);
    let targets = match mode {
        PropertyDMode::Weak => vec![run.orbits[ideal_index].class.clone()],
        PropertyDMode::Strong => orbits_met(rs, catalog, run, ideal, &mut rng, cfg)?,
    };
    targets
        .iter()
        .map(|t| search_certificate(rs, catalog, ideal.members, t, &mut rng, cfg))
        .collect()
}

/// Runs the search over the given ideals in parallel; output follows
/// the input order.
pub fn verify_property_d_many(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    run: &TheoremRun,
    ideal_indices: &[usize],
    mode: PropertyDMode,
    cfg: &VerifyConfig,
) -> Result<Vec<(usize, Vec<PropertyDOutcome>)>, VerifyError> {
    ideal_indices
        .par_iter()
        .map(|&k| Ok((k, verify_property_d(rs, catalog, run, k, mode, cfg)?)))
        .collect()
}

/// Independent re-check of a certificate: support, Cartan neutral element,
/// all three relations, and the orbit class of `e`.
pub fn recheck_certificate(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    c: &PropertyDCertificate,
) -> Result<bool, VerifyError> {
    let in_ideal = c.e.support().iter().all(|&i| c.ideal.contains(i));
    if !in_ideal || !c.h.is_cartan() || !is_sl2_triple(rs, &c.e, &c.h, &c.f) {
        return Ok(false);
    }
    let expected_h = rs.apply_word(&c.witness, &c.diagram.dynkin_element());
    if c.h.cartan_point(rs) != expected_h && !c.e.is_zero() {
        return Ok(false);
    }
    Ok(identify_orbit(rs, catalog, &c.e, true)?.class == c.class)
}

/// The region cut out by `alpha(x) >= 1` for the roots in the support of `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuppRegionCheck {
    pub minimizer: ChamberPoint,
    pub norm_squared: Rat,
    pub certificate_ok: bool,
    /// Dominant conjugate of twice the minimizer.
    pub dominant_double: ChamberPoint,
    pub conjugate_ok: bool,
    pub equals_half_h: bool,
}

impl SuppRegionCheck {
    pub fn passed(&self) -> bool {
        self.certificate_ok && self.conjugate_ok && self.equals_half_h
    }
}

pub fn verify_supp_region(
    rs: &RootSystem,
    c: &PropertyDCertificate,
) -> Result<SuppRegionCheck, VerifyError> {
    let constraints = c
        .e
        .support()
        .into_iter()
        .map(|i| Constraint::ge(rs.root_coords(i), Rat::from_integer(1.into())))
        .collect();
    let p = Polyhedron::new(rs.rank(), constraints);
    let gram = rs.gram_coweight();
    let cert = min_norm_point(&p, gram)?;
    let m = cert.minimizer.clone();
    let (dominant_double, _) = rs.dominant_representative(&m.scale(&int(2)));
    let conjugate_ok = c
        .class
        .diagrams
        .iter()
        .any(|d| d.dynkin_element() == dominant_double);
    let half_h = c.h.cartan_point(rs).half();
    Ok(SuppRegionCheck {
        norm_squared: rs.norm_squared(&m),
        certificate_ok: verify_certificate(&p, gram, &cert).is_ok(),
        dominant_double,
        conjugate_ok,
        equals_half_h: m == half_h || (c.e.is_zero() && m.coords.iter().all(Zero::is_zero)),
        minimizer: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::dynkin_ideal;
    use crate::rootsys::{Family, RootSystemSpec};
    use crate::verify::verify_theorem;

    fn setup(f: Family, n: usize) -> (RootSystem, DiagramCatalog, TheoremRun) {
        let rs = RootSystem::build(RootSystemSpec::new(f, n).unwrap());
        let cat = DiagramCatalog::new(&rs);
        let run = verify_theorem(&rs, &cat, &VerifyConfig::default()).unwrap();
        (rs, cat, run)
    }

    #[test]
    fn dynkin_ideals_have_identity_witnesses() {
        let (rs, cat, run) = setup(Family::B, 2);
        let cfg = VerifyConfig::default();
        for r in run.regions() {
            let d = r.orbit_class.representative();
            let members = dynkin_ideal(&rs, d).members;
            let k = run.ideals.iter().position(|i| i.members == members).unwrap();
            let out = verify_property_d(&rs, &cat, &run, k, PropertyDMode::Weak, &cfg).unwrap();
            let c = out[0].certificate.as_ref().expect("certificate");
            assert!(c.witness.is_empty());
            assert!(recheck_certificate(&rs, &cat, c).unwrap());
            assert!(verify_supp_region(&rs, c).unwrap().passed());
        }
    }

    #[test]
    fn empty_ideal_is_trivial() {
        let (rs, cat, run) = setup(Family::A, 2);
        let out =
            verify_property_d(&rs, &cat, &run, 0, PropertyDMode::Strong, &VerifyConfig::default())
                .unwrap();
        assert_eq!(out.len(), 1);
        let c = out[0].certificate.as_ref().unwrap();
        assert!(c.e.is_zero() && c.h.is_zero() && c.f.is_zero());
        assert!(recheck_certificate(&rs, &cat, c).unwrap());
    }

    #[test]
    fn strong_mode_a2() {
        let (rs, cat, run) = setup(Family::A, 2);
        let all: Vec<usize> = (0..run.ideals.len()).collect();
        let res = verify_property_d_many(
            &rs,
            &cat,
            &run,
            &all,
            PropertyDMode::Strong,
            &VerifyConfig::default(),
        )
        .unwrap();
        for (_, outs) in res {
            for o in outs {
                let c = o.certificate.expect("strong certificate");
                assert!(recheck_certificate(&rs, &cat, &c).unwrap());
            }
        }
    }

    #[test]
    fn supp_region_a2_regular() {
        let rs = RootSystem::build(RootSystemSpec::new(Family::A, 2).unwrap());
        let e = LieElement::root_vector(2, 0, int(1)).add(&LieElement::root_vector(2, 1, int(1)));
        let h = LieElement::from_point(&rs, &ChamberPoint::from_ints(&[2, 2]));
        let f = triple_completion(&rs, &e, &h).unwrap();
        let d = WeightedDynkinDiagram::new(vec![2, 2]);
        let c = PropertyDCertificate {
            ideal: RootSet::full(3),
            class: AmbiguityClass::singleton(d.clone()),
            diagram: d,
            witness: vec![],
            e,
            h,
            f,
        };
        let s = verify_supp_region(&rs, &c).unwrap();
        assert_eq!(s.minimizer, ChamberPoint::from_ints(&[1, 1]));
        assert!(s.passed());
    }
}
