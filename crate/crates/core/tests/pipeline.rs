use dynkin_core::exactlin::{rat, RatVec};
use dynkin_core::liealg::{type_a_partition, DiagramCatalog};
use dynkin_core::rootsys::{ChamberPoint, Family, RootSystem, RootSystemSpec};
use dynkin_core::verify::{verify_theorem, TheoremRun, VerifyConfig};

fn run(f: Family, n: usize) -> (RootSystem, TheoremRun) {
    let rs = RootSystem::build(RootSystemSpec::new(f, n).unwrap());
    let cat = DiagramCatalog::new(&rs);
    let t = verify_theorem(&rs, &cat, &VerifyConfig::default()).unwrap();
    (rs, t)
}

/// Partitions of `n`, counted by a direct recursion.
fn partitions(n: usize, max: usize) -> usize {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|k| partitions(n - k, k)).sum()
}

#[test]
fn type_a_orbits_are_partitions() {
    for n in 1..=4 {
        let (rs, t) = run(Family::A, n);
        assert!(t.passed());
        assert_eq!(t.orbit_count(), partitions(n + 1, n + 1), "A{n}");
        // each realized class corresponds to a different partition
        let mut parts: Vec<Vec<usize>> = t
            .regions()
            .map(|r| type_a_partition(&rs, r.orbit_class.representative()).unwrap())
            .collect();
        parts.sort();
        parts.dedup();
        assert_eq!(parts.len(), t.orbit_count());
        assert!(parts.iter().all(|p| p.iter().sum::<usize>() == n + 1));
    }
}

#[test]
fn small_orbit_counts() {
    // classical counts: B2, G2 from tables; B3, C3 from partitions with
    // even (resp. odd) parts of even multiplicity
    for (f, n, want) in [(Family::B, 2, 4), (Family::G, 2, 5), (Family::B, 3, 7), (Family::C, 3, 8)] {
        let (_, t) = run(f, n);
        assert!(t.passed());
        assert_eq!(t.orbit_count(), want, "{f:?}{n}");
    }
}

#[test]
fn regions_partition_the_ideals() {
    for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::G, 2)] {
        let (rs, t) = run(f, n);
        let total: usize = t.regions().map(|r| r.ideals.len()).sum();
        assert_eq!(total as u128, rs.spec().catalan_number());
        assert!(t.partition_ok && t.zero_region_ok);
    }
}

#[test]
fn a2_region_sizes_and_minimizers() {
    let (_, t) = run(Family::A, 2);
    let sizes: Vec<usize> = t.regions().map(|r| r.ideals.len()).collect();
    assert_eq!(sizes, vec![1, 3, 1]);
    let half = |a, b| ChamberPoint::new(RatVec::new(vec![rat(a, 2), rat(b, 2)]));
    let mins: Vec<_> = t.checks.iter().map(|c| c.minimum.minimizers.clone()).collect();
    assert_eq!(mins, vec![vec![half(0, 0)], vec![half(1, 1)], vec![half(2, 2)]]);
}

#[test]
fn g2_golden_set() {
    let (_, t) = run(Family::G, 2);
    let set = t.half_dynkin_set();
    let p = |a: (i64, i64), b: (i64, i64)| ChamberPoint::new(RatVec::new(vec![rat(a.0, a.1), rat(b.0, b.1)]));
    for x in [p((0, 1), (0, 1)), p((1, 2), (0, 1)), p((1, 1), (1, 1))] {
        assert!(set.contains(&x), "{x:?}");
    }
    for x in [p((1, 2), (1, 2)), p((1, 1), (1, 3))] {
        assert!(!set.contains(&x), "{x:?}");
    }
}
