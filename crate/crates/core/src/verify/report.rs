//! Full verification runs and their canonical serialization.
//!
//! Canonical JSON has sorted keys and rationals as `p/q` strings. Wall-clock
//! timings are kept beside the report and only emitted on request, so two
//! runs with the same configuration serialize byte for byte identically.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use super::checks::{verify_corollary_all, verify_prop_half_in_region};
use super::propd::{
    recheck_certificate, verify_property_d_many, verify_supp_region, PropertyDMode,
    PropertyDOutcome,
};
use super::{point_strings, rat_string, verify_theorem, Status, TheoremRun, VerifyConfig, VerifyError};
use crate::liealg::{dynkin_ideal, AmbiguityClass, DiagramCatalog, WeightedDynkinDiagram};
use crate::rng;
use crate::rootsys::{RootSystem, RootSystemSpec};
use crate::signtypes::{RootSet, SignType};

pub const SCHEMA_VERSION: &str = "dynkin-report/1";

/// Which claims to check. The minimum-norm comparison always runs since
/// the others are built on its output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    pub theorem: bool,
    pub prop31: bool,
    pub corollary: bool,
    pub propd_weak: bool,
    pub propd_strong: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            theorem: true,
            prop31: false,
            corollary: false,
            propd_weak: false,
            propd_strong: false,
        }
    }
}

impl Checks {
    pub const NAMES: [&'static str; 5] =
        ["theorem", "prop31", "corollary", "propd-weak", "propd-strong"];

    pub fn all() -> Checks {
        Checks {
            theorem: true,
            prop31: true,
            corollary: true,
            propd_weak: true,
            propd_strong: true,
        }
    }

    /// Comma-separated names, e.g. `theorem,prop31`.
    pub fn parse(s: &str) -> Result<Checks, String> {
        let mut c = Checks {
            theorem: true,
            ..Checks::default()
        };
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name {
                "theorem" => c.theorem = true,
                "prop31" => c.prop31 = true,
                "corollary" => c.corollary = true,
                "propd-weak" => c.propd_weak = true,
                "propd-strong" => c.propd_strong = true,
                "all" => c = Checks::all(),
                other => return Err(format!("unknown check {other:?}")),
            }
        }
        Ok(c)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let flags = [
            self.theorem,
            self.prop31,
            self.corollary,
            self.propd_weak,
            self.propd_strong,
        ];
        Self::NAMES
            .iter()
            .zip(flags)
            .filter(|(_, on)| *on)
            .map(|(n, _)| *n)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrngInfo {
    pub generator: &'static str,
    pub gamma: String,
    pub mix1: String,
    pub mix2: String,
    pub stream_rule: &'static str,
    pub tags: Vec<(String, u64)>,
}

impl PrngInfo {
    pub fn current() -> PrngInfo {
        PrngInfo {
            generator: "splitmix64",
            gamma: format!("{:#018x}", rng::GAMMA),
            mix1: format!("{:#018x}", rng::MIX1),
            mix2: format!("{:#018x}", rng::MIX2),
            stream_rule: "state = mix(mix(seed ^ mix(tag)) ^ index)",
            tags: vec![
                ("orbit".into(), rng::tags::ORBIT),
                ("corollary".into(), rng::tags::COROLLARY),
                ("property_d".into(), rng::tags::PROPERTY_D),
            ],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportHeader {
    pub schema_version: &'static str,
    pub family: String,
    pub rank: usize,
    pub seed: u64,
    pub trials: usize,
    pub coeff_range: u64,
    pub check_triples: bool,
    pub weyl_ceiling: String,
    pub corollary_budget: usize,
    pub propd_samples_per_witness: usize,
    pub checks: Vec<&'static str>,
    pub prng: PrngInfo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionEntry {
    pub ideal: usize,
    pub sign_type: String,
    pub minimizer: Vec<String>,
    pub norm_squared: String,
    pub active_set: Vec<usize>,
    pub multipliers: Vec<String>,
    pub certificate_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitEntry {
    pub class: AmbiguityClass,
    pub ambiguous: bool,
    pub dimension: usize,
    pub half_points: Vec<Vec<String>>,
    pub region_count: usize,
    pub converged: bool,
    pub min_points: Vec<Vec<String>>,
    pub min_norm: String,
    pub expected_norm: String,
    pub exact_match: bool,
    pub norm_match: bool,
    pub certificates_ok: bool,
    pub regions: Vec<RegionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealEntry {
    pub index: usize,
    pub sign_type: String,
    pub generators: Vec<Vec<i64>>,
    pub class: AmbiguityClass,
    pub dimension: usize,
    pub samples: usize,
    pub hits: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremSection {
    pub ideal_count: usize,
    pub catalan_number: String,
    pub class_count: usize,
    pub orbit_count: usize,
    pub partition_ok: bool,
    pub zero_region_ok: bool,
    pub converged: bool,
    pub half_dynkin_set: Vec<Vec<String>>,
    pub orbits: Vec<OrbitEntry>,
    pub ideals: Vec<IdealEntry>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop31Entry {
    pub diagram: WeightedDynkinDiagram,
    pub half_point_sign_type: String,
    pub dynkin_ideal: String,
    pub associated: Option<AmbiguityClass>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationEntry {
    pub support: String,
    pub class: AmbiguityClass,
    pub norm_squared: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryEntry {
    pub diagram: WeightedDynkinDiagram,
    pub norm_squared: String,
    pub samples: usize,
    pub smaller_classes: Vec<AmbiguityClass>,
    pub violations: Vec<ViolationEntry>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuppRegionEntry {
    pub minimizer: Vec<String>,
    pub dominant_double: Vec<String>,
    pub certificate_ok: bool,
    pub conjugate_ok: bool,
    pub equals_half_h: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropdEntry {
    pub ideal: usize,
    pub sign_type: String,
    pub target: AmbiguityClass,
    pub found: bool,
    pub diagram: Option<WeightedDynkinDiagram>,
    pub witness: Option<Vec<usize>>,
    pub e: Option<String>,
    pub h: Option<String>,
    pub f: Option<String>,
    pub witnesses_tried: usize,
    pub samples_used: usize,
    pub recheck_ok: Option<bool>,
    pub supp_region: Option<SuppRegionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropdSection {
    pub mode: &'static str,
    pub ideals_checked: usize,
    pub targets: usize,
    pub found: usize,
    pub identity_witnesses: usize,
    pub entries: Vec<PropdEntry>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionStatus {
    pub passed: usize,
    pub total: usize,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub header: ReportHeader,
    pub theorem: TheoremSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop31: Option<(SectionStatus, Vec<Prop31Entry>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary: Option<(SectionStatus, Vec<CorollaryEntry>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propd_weak: Option<PropdSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propd_strong: Option<PropdSection>,
    pub status: Status,
    /// Seconds per phase; not part of the canonical form.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

fn roots_string(rs: &RootSystem, s: RootSet) -> String {
    SignType {
        plus: s,
        num_roots: rs.num_positive(),
    }
    .to_string()
}

fn section(passed: usize, total: usize, status: Status) -> SectionStatus {
    SectionStatus {
        passed,
        total,
        status,
    }
}

fn theorem_section(rs: &RootSystem, run: &TheoremRun) -> TheoremSection {
    let orbits = run
        .checks
        .iter()
        .map(|c| OrbitEntry {
            class: c.region.orbit_class.clone(),
            ambiguous: c.region.orbit_class.is_ambiguous(),
            dimension: c.region.dimension,
            half_points: c.half_points.iter().map(point_strings).collect(),
            region_count: c.region.ideals.len(),
            converged: c.region.converged,
            min_points: c.minimum.minimizers.iter().map(point_strings).collect(),
            min_norm: rat_string(&c.minimum.min_norm),
            expected_norm: rat_string(&c.expected_norm),
            exact_match: c.exact_match,
            norm_match: c.norm_match,
            certificates_ok: c.certificates_ok,
            regions: c
                .minimum
                .per_region
                .iter()
                .map(|m| RegionEntry {
                    ideal: m.ideal,
                    sign_type: m.sign_type.to_string(),
                    minimizer: point_strings(&m.certificate.minimizer),
                    norm_squared: rat_string(&m.norm_squared),
                    active_set: m.certificate.active_set.clone(),
                    multipliers: m.certificate.multipliers.iter().map(rat_string).collect(),
                    certificate_ok: m.certificate_ok,
                })
                .collect(),
        })
        .collect();
    let ideals = run
        .ideals
        .iter()
        .zip(&run.orbits)
        .enumerate()
        .map(|(index, (i, o))| IdealEntry {
            index,
            sign_type: SignType::of_ideal(rs, i).to_string(),
            generators: i
                .generators
                .iter()
                .map(|g| rs.positive_roots()[g].coords.clone())
                .collect(),
            class: o.class.clone(),
            dimension: o.dimension,
            samples: o.samples,
            hits: o.hits,
            converged: o.converged,
        })
        .collect();
    let status = if !run.passed() {
        Status::Fail
    } else if !run.converged() {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    TheoremSection {
        ideal_count: run.ideals.len(),
        catalan_number: rs.spec().catalan_number().to_string(),
        class_count: run.checks.len(),
        orbit_count: run.orbit_count(),
        partition_ok: run.partition_ok,
        zero_region_ok: run.zero_region_ok,
        converged: run.converged(),
        half_dynkin_set: run.half_dynkin_set().iter().map(point_strings).collect(),
        orbits,
        ideals,
        status,
    }
}

/// Distinct Dynkin ideals of all realized diagrams, as ideal indices.
pub fn dynkin_ideal_indices(rs: &RootSystem, run: &TheoremRun) -> Vec<usize> {
    let mut out = BTreeSet::new();
    for r in run.regions() {
        for d in &r.orbit_class.diagrams {
            let m = dynkin_ideal(rs, d).members;
            if let Some(k) = run.ideals.iter().position(|i| i.members == m) {
                out.insert(k);
            }
        }
    }
    out.into_iter().collect()
}

fn propd_section(
    rs: &RootSystem,
    catalog: &DiagramCatalog,
    run: &TheoremRun,
    results: Vec<(usize, Vec<PropertyDOutcome>)>,
    mode: PropertyDMode,
) -> Result<PropdSection, VerifyError> {
    let mut entries = Vec::new();
    let mut status = Status::Pass;
    let mut identity = 0;
    for (k, outs) in &results {
        for o in outs {
            let mut entry = PropdEntry {
                ideal: *k,
                sign_type: SignType::of_ideal(rs, &run.ideals[*k]).to_string(),
                target: o.target.clone(),
                found: o.certificate.is_some(),
                diagram: None,
                witness: None,
                e: None,
                h: None,
                f: None,
                witnesses_tried: o.witnesses_tried,
                samples_used: o.samples_used,
                recheck_ok: None,
                supp_region: None,
            };
            match &o.certificate {
                None => status = status.and(Status::Inconclusive),
                Some(c) => {
                    let ok = recheck_certificate(rs, catalog, c)?;
                    let s = verify_supp_region(rs, c)?;
                    if !ok || !s.passed() {
                        status = status.and(Status::Fail);
                    }
                    if c.witness.is_empty() {
                        identity += 1;
                    } else if mode == PropertyDMode::Weak {
                        // Dynkin ideals must succeed at the untouched Dynkin element
                        status = status.and(Status::Fail);
                    }
                    entry.diagram = Some(c.diagram.clone());
                    entry.witness = Some(c.witness.clone());
                    entry.e = Some(c.e.to_string());
                    entry.h = Some(c.h.to_string());
                    entry.f = Some(c.f.to_string());
                    entry.recheck_ok = Some(ok);
                    entry.supp_region = Some(SuppRegionEntry {
                        minimizer: point_strings(&s.minimizer),
                        dominant_double: point_strings(&s.dominant_double),
                        certificate_ok: s.certificate_ok,
                        conjugate_ok: s.conjugate_ok,
                        equals_half_h: s.equals_half_h,
                    });
                }
            }
            entries.push(entry);
        }
    }
    Ok(PropdSection {
        mode: match mode {
            PropertyDMode::Weak => "weak",
            PropertyDMode::Strong => "strong",
        },
        ideals_checked: results.len(),
        targets: entries.len(),
        found: entries.iter().filter(|e| e.found).count(),
        identity_witnesses: identity,
        entries,
        status,
    })
}

/// Runs the selected checks on one root system.
pub fn run_verification(
    spec: RootSystemSpec,
    cfg: &VerifyConfig,
    checks: Checks,
) -> Result<VerificationReport, VerifyError> {
    let mut timings = Vec::new();
    let t0 = Instant::now();
    let rs = RootSystem::build(spec);
    let catalog = DiagramCatalog::new(&rs);
    timings.push(("setup".to_string(), t0.elapsed().as_secs_f64()));

    let t = Instant::now();
    let run = verify_theorem(&rs, &catalog, cfg)?;
    let theorem = theorem_section(&rs, &run);
    timings.push(("theorem".to_string(), t.elapsed().as_secs_f64()));
    let mut status = theorem.status;

    let prop31 = if checks.prop31 {
        let t = Instant::now();
        let entries: Vec<Prop31Entry> = run
            .regions()
            .flat_map(|r| verify_prop_half_in_region(&rs, &run, &r.orbit_class))
            .map(|c| Prop31Entry {
                half_point_sign_type: roots_string(&rs, c.plus),
                dynkin_ideal: roots_string(&rs, c.dynkin_ideal),
                passed: c.passed(),
                associated: c.associated,
                diagram: c.diagram,
            })
            .collect();
        let passed = entries.iter().filter(|e| e.passed).count();
        let s = if passed == entries.len() {
            Status::Pass
        } else {
            Status::Fail
        };
        status = status.and(s);
        timings.push(("prop31".to_string(), t.elapsed().as_secs_f64()));
        Some((section(passed, entries.len(), s), entries))
    } else {
        None
    };

    let corollary = if checks.corollary {
        let t = Instant::now();
        let entries: Vec<CorollaryEntry> = verify_corollary_all(&rs, &catalog, &run, cfg)?
            .into_iter()
            .map(|c| CorollaryEntry {
                passed: c.passed(),
                norm_squared: rat_string(&c.norm_squared),
                samples: c.samples,
                violations: c
                    .violations
                    .iter()
                    .map(|v| ViolationEntry {
                        support: roots_string(&rs, v.support),
                        class: v.class.clone(),
                        norm_squared: rat_string(&v.norm_squared),
                    })
                    .collect(),
                smaller_classes: c.smaller_classes,
                diagram: c.diagram,
            })
            .collect();
        let passed = entries.iter().filter(|e| e.passed).count();
        let s = if passed == entries.len() {
            Status::Pass
        } else {
            Status::Fail
        };
        status = status.and(s);
        timings.push(("corollary".to_string(), t.elapsed().as_secs_f64()));
        Some((section(passed, entries.len(), s), entries))
    } else {
        None
    };

    let propd_weak = if checks.propd_weak {
        let t = Instant::now();
        let idx = dynkin_ideal_indices(&rs, &run);
        let res = verify_property_d_many(&rs, &catalog, &run, &idx, PropertyDMode::Weak, cfg)?;
        let sec = propd_section(&rs, &catalog, &run, res, PropertyDMode::Weak)?;
        status = status.and(sec.status);
        timings.push(("propd_weak".to_string(), t.elapsed().as_secs_f64()));
        Some(sec)
    } else {
        None
    };

    let propd_strong = if checks.propd_strong {
        let t = Instant::now();
        let idx: Vec<usize> = (0..run.ideals.len()).collect();
        let res = verify_property_d_many(&rs, &catalog, &run, &idx, PropertyDMode::Strong, cfg)?;
        let sec = propd_section(&rs, &catalog, &run, res, PropertyDMode::Strong)?;
        status = status.and(sec.status);
        timings.push(("propd_strong".to_string(), t.elapsed().as_secs_f64()));
        Some(sec)
    } else {
        None
    };
    timings.push(("total".to_string(), t0.elapsed().as_secs_f64()));

    Ok(VerificationReport {
        header: ReportHeader {
            schema_version: SCHEMA_VERSION,
            family: spec.family.to_string(),
            rank: spec.rank,
            seed: cfg.seed,
            trials: cfg.sampling.trials,
            coeff_range: cfg.sampling.coeff_range,
            check_triples: cfg.sampling.check_triples,
            weyl_ceiling: cfg.weyl_ceiling.to_string(),
            corollary_budget: cfg.corollary_budget,
            propd_samples_per_witness: cfg.propd_samples,
            checks: checks.names(),
            prng: PrngInfo::current(),
        },
        theorem,
        prop31,
        corollary,
        propd_weak,
        propd_strong,
        status,
        timings,
    })
}

impl VerificationReport {
    /// Sorted-key JSON without timings.
    pub fn canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    /// Canonical JSON plus a `timings` object.
    pub fn json_with_timings(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        let t: serde_json::Map<String, serde_json::Value> = self
            .timings
            .iter()
            .map(|(k, s)| (k.clone(), serde_json::json!(s)))
            .collect();
        v["timings"] = serde_json::Value::Object(t);
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    /// One row per orbit class.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "family",
            "rank",
            "class",
            "dimension",
            "regions",
            "half_points",
            "min_points",
            "min_norm",
            "exact_match",
            "norm_match",
            "certificates_ok",
        ])
        .expect("in-memory write");
        for o in &self.theorem.orbits {
            w.write_record([
                self.header.family.clone(),
                self.header.rank.to_string(),
                o.class.to_string(),
                o.dimension.to_string(),
                o.region_count.to_string(),
                join_points(&o.half_points),
                join_points(&o.min_points),
                o.min_norm.clone(),
                o.exact_match.to_string(),
                o.norm_match.to_string(),
                o.certificates_ok.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_markdown(&self) -> String {
        let h = &self.header;
        let mut s = String::new();
        let _ = writeln!(s, "# {}{} (seed {})", h.family, h.rank, h.seed);
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{} ideals, {} orbit classes, status: {}",
            self.theorem.ideal_count,
            self.theorem.class_count,
            status_word(self.status)
        );
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "| class | dim | regions | half point | min point | min norm | match |"
        );
        let _ = writeln!(s, "|---|---|---|---|---|---|---|");
        for o in &self.theorem.orbits {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} |",
                o.class,
                o.dimension,
                o.region_count,
                join_points(&o.half_points),
                join_points(&o.min_points),
                o.min_norm,
                if o.exact_match && o.norm_match { "yes" } else { "no" }
            );
        }
        let mut extra = Vec::new();
        if let Some((st, _)) = &self.prop31 {
            extra.push(("prop31", st.status, format!("{}/{}", st.passed, st.total)));
        }
        if let Some((st, _)) = &self.corollary {
            extra.push(("corollary", st.status, format!("{}/{}", st.passed, st.total)));
        }
        for (name, sec) in [("propd-weak", &self.propd_weak), ("propd-strong", &self.propd_strong)] {
            if let Some(p) = sec {
                extra.push((name, p.status, format!("{}/{}", p.found, p.targets)));
            }
        }
        if !extra.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "| check | status | count |");
            let _ = writeln!(s, "|---|---|---|");
            for (n, st, c) in extra {
                let _ = writeln!(s, "| {n} | {} | {c} |", status_word(st));
            }
        }
        s
    }
}

fn join_points(ps: &[Vec<String>]) -> String {
    ps.iter()
        .map(|p| format!("({})", p.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
    }
}
