//! Eigenvalues of `ad h` and the weighted Dynkin diagrams they determine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{sparse_coords, LieElement, LieError};
use crate::exactlin::modp::PrimeField;
use crate::exactlin::{int, kernel_dimension};
use crate::rootsys::{ChamberPoint, RootSystem};

/// Primes tried, in order, for the modular eigenspace computation.
pub const PRIMES: [u64; 3] = [
    (1 << 61) - 1,
    (1 << 62) - 57,
    (1 << 63) - 25,
];

/// Multiset of integer eigenvalues.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Spectrum(pub BTreeMap<i64, usize>);

impl Spectrum {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn multiplicity(&self, k: i64) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, m)| format!("{k}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Marks `alpha_i(h)` on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightedDynkinDiagram {
    pub marks: Vec<i64>,
}

impl WeightedDynkinDiagram {
    pub fn new(marks: Vec<i64>) -> Self {
        WeightedDynkinDiagram { marks }
    }

    pub fn zero(rank: usize) -> Self {
        WeightedDynkinDiagram::new(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.marks.iter().all(|&m| m == 0)
    }

    /// The Dynkin element: the dominant point whose coordinates are the marks.
    pub fn dynkin_element(&self) -> ChamberPoint {
        ChamberPoint::from_ints(&self.marks)
    }

    pub fn half_point(&self) -> ChamberPoint {
        self.dynkin_element().half()
    }
}

impl fmt::Display for WeightedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.marks.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Diagrams that share one adjoint spectrum, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct AmbiguityClass {
    pub diagrams: Vec<WeightedDynkinDiagram>,
}

impl AmbiguityClass {
    pub fn singleton(d: WeightedDynkinDiagram) -> Self {
        AmbiguityClass { diagrams: vec![d] }
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn is_ambiguous(&self) -> bool {
        self.diagrams.len() > 1
    }

    /// First diagram in sorted order; all members share every invariant
    /// computed from the spectrum.
    pub fn representative(&self) -> &WeightedDynkinDiagram {
        &self.diagrams[0]
    }

    pub fn contains(&self, d: &WeightedDynkinDiagram) -> bool {
        self.diagrams.contains(d)
    }
}

impl fmt::Display for AmbiguityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagrams.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("|"))
    }
}

/// Spectrum of `ad h` for a Cartan element given in coweight coordinates:
/// `alpha(h)` over all roots, and `0` once per simple coroot.
pub fn spectrum_of_point(rs: &RootSystem, x: &ChamberPoint) -> Spectrum {
    let mut m = BTreeMap::new();
    for r in rs.positive_roots() {
        let v = rs.pairing(r, x);
        let k = v.to_integer().to_i64().expect("integral pairing");
        assert!(v.is_integer(), "non-integral pairing {v}");
        *m.entry(k).or_default() += 1;
        *m.entry(-k).or_default() += 1;
    }
    *m.entry(0).or_default() += rs.rank();
    Spectrum(m)
}

/// Eigenvalue window `[-K, K]` with `K = 2 ht(theta)`.
pub fn eigenvalue_bound(rs: &RootSystem) -> i64 {
    2 * rs.highest_root().height
}

/// How a spectrum was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectrumRoute {
    /// Modular eigenspace dimensions whose sum equals `dim g`; each is then
    /// exact because reduction mod p can only enlarge a kernel.
    Modular(u64),
    /// Exact rational kernel dimensions.
    Exact,
}

/// Eigenvalue multiplicities of `ad h` over `[-K, K]`.
pub fn ad_spectrum(rs: &RootSystem, h: &LieElement) -> Result<Spectrum, LieError> {
    ad_spectrum_with_route(rs, h).map(|(s, _)| s)
}

pub fn ad_spectrum_with_route(
    rs: &RootSystem,
    h: &LieElement,
) -> Result<(Spectrum, SpectrumRoute), LieError> {
    for p in PRIMES {
        if let Some(s) = modular_spectrum(rs, h, PrimeField::new(p)) {
            if s.total() == rs.dim() {
                return Ok((s, SpectrumRoute::Modular(p)));
            }
        }
    }
    exact_spectrum(rs, h).map(|s| (s, SpectrumRoute::Exact))
}

/// Kernel dimensions of `ad h - k` mod p, or `None` if p divides a denominator.
pub fn modular_spectrum(rs: &RootSystem, h: &LieElement, field: PrimeField) -> Option<Spectrum> {
    let dim = rs.dim();
    let table = rs.bracket_table();
    let mut ad = vec![vec![0u64; dim]; dim];
    for (i, a) in sparse_coords(rs, h) {
        let a = field.from_rat(&a)?;
        for (j, col) in table[i].iter().enumerate() {
            for &(k, n) in col {
                ad[k][j] = field.add(ad[k][j], field.mul(a, field.from_i64(n)));
            }
        }
    }
    let bound = eigenvalue_bound(rs);
    let mut m = BTreeMap::new();
    for k in -bound..=bound {
        let mut shifted = ad.clone();
        let kk = field.from_i64(k);
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = field.sub(row[i], kk);
        }
        let nullity = dim - field.rank(shifted);
        if nullity > 0 {
            m.insert(k, nullity);
        }
    }
    Some(Spectrum(m))
}

/// Exact rational kernel dimensions; errors unless they sum to `dim g`.
pub fn exact_spectrum(rs: &RootSystem, h: &LieElement) -> Result<Spectrum, LieError> {
    let ad = super::ad_matrix(rs, h);
    let bound = eigenvalue_bound(rs);
    let mut m = BTreeMap::new();
    for k in -bound..=bound {
        let nullity = kernel_dimension(&ad.shift_diagonal(&int(k)))?;
        if nullity > 0 {
            m.insert(k, nullity);
        }
    }
    let s = Spectrum(m);
    if s.total() != rs.dim() {
        return Err(LieError::SpectrumMismatch {
            found: s.total(),
            expected: rs.dim(),
        });
    }
    Ok(s)
}

/// All `3^rank` mark vectors grouped by spectrum.
#[derive(Clone, Debug)]
pub struct DiagramCatalog {
    by_spectrum: HashMap<Spectrum, AmbiguityClass>,
}

impl DiagramCatalog {
    pub fn new(rs: &RootSystem) -> DiagramCatalog {
        let n = rs.rank();
        let mut by_spectrum: HashMap<Spectrum, AmbiguityClass> = HashMap::new();
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let marks: Vec<i64> = (0..n)
                .map(|_| {
                    let m = (c % 3) as i64;
                    c /= 3;
                    m
                })
                .collect();
            let d = WeightedDynkinDiagram::new(marks);
            let s = spectrum_of_point(rs, &d.dynkin_element());
            by_spectrum
                .entry(s)
                .or_insert_with(|| AmbiguityClass { diagrams: vec![] })
                .diagrams
                .push(d);
        }
        for class in by_spectrum.values_mut() {
            class.diagrams.sort();
        }
        DiagramCatalog { by_spectrum }
    }

    pub fn lookup(&self, s: &Spectrum) -> Result<AmbiguityClass, LieError> {
        self.by_spectrum.get(s).cloned().ok_or(LieError::NoDiagram)
    }

    /// The class containing `d`.
    pub fn class_of(&self, rs: &RootSystem, d: &WeightedDynkinDiagram) -> AmbiguityClass {
        self.lookup(&spectrum_of_point(rs, &d.dynkin_element()))
            .expect("every mark vector is catalogued")
    }
}

/// Every mark vector in `{0,1,2}^rank` whose spectrum equals `s`.
pub fn diagram_from_spectrum(rs: &RootSystem, s: &Spectrum) -> Result<AmbiguityClass, LieError> {
    DiagramCatalog::new(rs).lookup(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::RatVec;
    use crate::rootsys::{Family, RootSystemSpec};

    fn build(f: Family, n: usize) -> RootSystem {
        RootSystem::build(RootSystemSpec::new(f, n).unwrap())
    }

    fn spec(pairs: &[(i64, usize)]) -> Spectrum {
        Spectrum(pairs.iter().copied().collect())
    }

    #[test]
    fn primes_are_prime() {
        // deterministic Miller-Rabin for 64-bit inputs
        for p in PRIMES {
            let f = PrimeField::new(p);
            let (mut d, mut s) = (p - 1, 0);
            while d % 2 == 0 {
                d /= 2;
                s += 1;
            }
            for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
                let mut x = f.pow(a, d);
                if x == 1 || x == p - 1 {
                    continue;
                }
                let mut witness = true;
                for _ in 1..s {
                    x = f.mul(x, x);
                    if x == p - 1 {
                        witness = false;
                        break;
                    }
                }
                assert!(!witness, "{p} is composite");
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        let a1 = build(Family::A, 1);
        assert_eq!(ad_spectrum(&a1, &LieElement::zero(1)).unwrap(), spec(&[(0, 3)]));
        let h = LieElement::cartan(RatVec::from_ints(&[1]));
        assert_eq!(ad_spectrum(&a1, &h).unwrap(), spec(&[(-2, 1), (0, 1), (2, 1)]));
        let a2 = build(Family::A, 2);
        let reg = LieElement::from_point(&a2, &ChamberPoint::from_ints(&[2, 2]));
        assert_eq!(
            ad_spectrum(&a2, &reg).unwrap(),
            spec(&[(-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1)])
        );
    }

    #[test]
    fn modular_and_exact_routes_agree() {
        let rs = build(Family::B, 2);
        for marks in [[0, 1], [2, 0], [2, 2], [1, 0]] {
            let h = LieElement::from_point(&rs, &ChamberPoint::from_ints(&marks));
            let (m, route) = ad_spectrum_with_route(&rs, &h).unwrap();
            assert!(matches!(route, SpectrumRoute::Modular(_)));
            assert_eq!(m, exact_spectrum(&rs, &h).unwrap());
        }
    }

    #[test]
    fn non_integral_input_is_rejected() {
        let a1 = build(Family::A, 1);
        let h = LieElement::cartan(RatVec::new(vec![crate::exactlin::rat(1, 3)]));
        assert!(matches!(
            ad_spectrum(&a1, &h),
            Err(LieError::SpectrumMismatch { .. })
        ));
    }

    #[test]
    fn diagram_lookup() {
        let a2 = build(Family::A, 2);
        let zero = spectrum_of_point(&a2, &ChamberPoint::zero(2));
        assert_eq!(
            diagram_from_spectrum(&a2, &zero).unwrap(),
            AmbiguityClass::singleton(WeightedDynkinDiagram::zero(2))
        );
        let reg = spec(&[(-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1)]);
        assert_eq!(
            diagram_from_spectrum(&a2, &reg).unwrap(),
            AmbiguityClass::singleton(WeightedDynkinDiagram::new(vec![2, 2]))
        );
        assert_eq!(
            diagram_from_spectrum(&a2, &spec(&[(0, 8), (7, 1)])),
            Err(LieError::NoDiagram)
        );
    }

    #[test]
    fn d4_triality_classes() {
        let d4 = build(Family::D, 4);
        let cat = DiagramCatalog::new(&d4);
        // the end nodes 0, 2, 3 are permuted by triality
        let c = cat.class_of(&d4, &WeightedDynkinDiagram::new(vec![0, 0, 2, 2]));
        let marks: Vec<Vec<i64>> = c.diagrams.iter().map(|d| d.marks.clone()).collect();
        assert_eq!(marks, vec![vec![0, 0, 2, 2], vec![2, 0, 0, 2], vec![2, 0, 2, 0]]);
        let c = cat.class_of(&d4, &WeightedDynkinDiagram::new(vec![0, 0, 0, 0]));
        assert_eq!(c.len(), 1);
    }
}
