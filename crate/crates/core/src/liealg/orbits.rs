//! Nilpotent orbits as weighted Dynkin diagrams.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::spectrum::{ad_spectrum_with_route, AmbiguityClass, DiagramCatalog, SpectrumRoute};
use super::{jm_neutral, sample_generic, triple_completion, LieElement, LieError};
use crate::rng::SplitMix64;
use crate::rootsys::{Family, RootSystem};
use crate::signtypes::{Ideal, RootPoset, RootSet};

use super::spectrum::WeightedDynkinDiagram;

/// Root spaces by eigenvalue of a Cartan element with integer marks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieces {
    /// Signed root indices per eigenvalue.
    pub pieces: BTreeMap<i64, Vec<usize>>,
    /// Extra multiplicity of eigenvalue 0 from the Cartan subalgebra.
    pub cartan_multiplicity: usize,
}

impl GradedPieces {
    pub fn dim(&self, i: i64) -> usize {
        let roots = self.pieces.get(&i).map_or(0, Vec::len);
        if i == 0 {
            roots + self.cartan_multiplicity
        } else {
            roots
        }
    }

    pub fn total(&self) -> usize {
        self.pieces.values().map(Vec::len).sum::<usize>() + self.cartan_multiplicity
    }
}

pub fn graded_pieces(rs: &RootSystem, d: &WeightedDynkinDiagram) -> GradedPieces {
    let x = d.dynkin_element();
    let mut pieces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for idx in 0..2 * rs.num_positive() {
        let v = rs.pairing_coords(&rs.root_coords(idx), &x);
        let k = v.to_integer().to_i64().expect("small");
        pieces.entry(k).or_default().push(idx);
    }
    GradedPieces {
        pieces,
        cartan_multiplicity: rs.rank(),
    }
}

/// `dim g - dim g_0 - dim g_1`.
pub fn orbit_dimension(rs: &RootSystem, d: &WeightedDynkinDiagram) -> usize {
    let g = graded_pieces(rs, d);
    rs.dim() - g.dim(0) - g.dim(1)
}

/// Positive roots pairing to at least 2 with the Dynkin element.
pub fn dynkin_ideal(rs: &RootSystem, d: &WeightedDynkinDiagram) -> Ideal {
    let x = d.dynkin_element();
    let two = crate::exactlin::int(2);
    let members = RootSet::from_indices(
        rs.positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| rs.pairing(r, &x) >= two)
            .map(|(i, _)| i),
    );
    Ideal::from_members(&RootPoset::new(rs), members).expect("Dynkin ideals are upward closed")
}

/// Orbit data computed for one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitIdentification {
    pub class: AmbiguityClass,
    pub dimension: usize,
    pub neutral: LieElement,
    pub route: Option<SpectrumRoute>,
    /// Set when a completing `f` was found and all relations re-checked.
    pub triple_checked: bool,
}

/// Neutral element, spectrum and diagram class of a nilpotent element.
/// With `check_triple`, the neutral element is also completed to an sl2
/// triple and the relations are verified exactly.
pub fn identify_orbit(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    e: &LieElement,
    check_triple: bool,
) -> Result<OrbitIdentification, LieError> {
    let n = jm_neutral(rs, e)?;
    if n.zero_orbit {
        return Ok(OrbitIdentification {
            class: AmbiguityClass::singleton(WeightedDynkinDiagram::zero(rs.rank())),
            dimension: 0,
            neutral: n.h,
            route: None,
            triple_checked: check_triple,
        });
    }
    if check_triple {
        triple_completion(rs, e, &n.h)?;
    }
    let (spectrum, route) = ad_spectrum_with_route(rs, &n.h)?;
    let class = catalog.lookup(&spectrum)?;
    let dimension = orbit_dimension(rs, class.representative());
    Ok(OrbitIdentification {
        class,
        dimension,
        neutral: n.h,
        route: Some(route),
        triple_checked: check_triple,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    pub trials: usize,
    pub coeff_range: u64,
    pub check_triples: bool,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            trials: 8,
            coeff_range: 1_000_000,
            check_triples: true,
        }
    }
}

/// Dense orbit of an ideal, estimated from generic samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociatedOrbit {
    pub class: AmbiguityClass,
    pub dimension: usize,
    pub samples: usize,
    /// Samples that reached the maximal dimension.
    pub hits: usize,
    /// At least half of the samples reached the maximum.
    pub converged: bool,
}

/// The class of maximal orbit dimension over `trials` samples of the ideal.
pub fn associated_orbit(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    ideal: RootSet,
    rng: &mut SplitMix64,
    cfg: &SamplingConfig,
) -> Result<AssociatedOrbit, LieError> {
    let samples = sample_generic(rs, ideal, rng, cfg.trials, cfg.coeff_range);
    let mut best: Option<OrbitIdentification> = None;
    let mut hits = 0;
    let mut conflict = false;
    for e in &samples {
        let id = identify_orbit(rs, catalog, e, cfg.check_triples)?;
        match &best {
            Some(b) if id.dimension < b.dimension => {}
            Some(b) if id.dimension == b.dimension => {
                hits += 1;
                conflict |= id.class != b.class;
            }
            _ => {
                best = Some(id);
                hits = 1;
                conflict = false;
            }
        }
    }
    let best = best.expect("at least one sample");
    Ok(AssociatedOrbit {
        class: best.class,
        dimension: best.dimension,
        samples: samples.len(),
        hits,
        converged: !conflict && 2 * hits >= samples.len(),
    })
}

/// Jordan type of the standard representation for type A, from the
/// eigenvalues of `h`: the largest eigenvalue `m` starts a string
/// `m, m-2, ..., -m` giving a part of size `m + 1`.
pub fn type_a_partition(rs: &RootSystem, d: &WeightedDynkinDiagram) -> Option<Vec<usize>> {
    if rs.spec().family != Family::A {
        return None;
    }
    let cr = rs.coweight_to_coroot(&d.dynkin_element());
    let n = rs.rank();
    // eigenvalue on e_k is c_k - c_{k-1}
    let mut eig: Vec<i64> = (0..=n)
        .map(|k| {
            let hi = if k < n { cr[k].clone() } else { crate::exactlin::int(0) };
            let lo = if k > 0 { cr[k - 1].clone() } else { crate::exactlin::int(0) };
            let v = hi - lo;
            v.to_integer().to_i64().expect("integral")
        })
        .collect();
    eig.sort_unstable();
    let mut parts = Vec::new();
    while let Some(&m) = eig.last() {
        let mut v = m;
        while v >= -m {
            let pos = eig.iter().rposition(|&x| x == v)?;
            eig.remove(pos);
            v -= 2;
        }
        parts.push((m + 1) as usize);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Some(parts)
}
