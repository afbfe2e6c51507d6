//! Batch surveys over matching families.
//!
//! A survey enumerates a family of matching systems, builds every model
//! space, and records per-component homology and fundamental group verdicts.
//! Records come back in enumeration order regardless of how many workers ran,
//! so emissions are byte-stable. An optional JSON-lines store caches records
//! by descriptor and code-version tag; interrupted runs resume.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::homology::{homology, AbelianGroup, HomologyError, HomologyProfile};
use crate::matchings::{
    dedup_by_symmetry, enumerate_single, enumerate_two_simplex, MatchingError, MatchingSystem,
    SignType,
};
use crate::pi1::{classify, presentation, GroupVerdict, Pi1Error};
use crate::quotient::{build_quotient, QuotientError};

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error("universe of {size} systems exceeds the configured limit {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("abelianized fundamental group disagrees with H1 for {descriptor}")]
    AbelianizationMismatch { descriptor: String },
    #[error("result store: {0}")]
    Io(#[from] std::io::Error),
}

/// Knobs shared by the survey runners.
#[derive(Clone, Debug)]
pub struct SurveyOptions {
    /// Worker threads; `None` uses the global pool, `Some(1)` runs serially.
    pub jobs: Option<usize>,
    /// Hard cap on the number of systems a family may enumerate.
    pub universe_limit: usize,
    /// Collapse systems equal up to relabeling of same-coefficient simplices.
    pub dedup_symmetry: bool,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            jobs: None,
            universe_limit: 10_000,
            dedup_symmetry: false,
        }
    }
}

/// Homology and fundamental group of one connected component.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    #[serde(rename = "H")]
    pub homology: HomologyProfile,
    pub pi1: GroupVerdict,
}

/// Everything a survey keeps about one matching system.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurveyRecord {
    #[serde(rename = "desc")]
    pub descriptor: String,
    pub components: Vec<ComponentReport>,
    pub ms: u64,
}

impl SurveyRecord {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Builds the model space of one system and reports per component. Aborts
/// with the offending descriptor if the abelianized fundamental group ever
/// disagrees with first homology.
pub fn analyze_system(sys: &MatchingSystem) -> Result<SurveyRecord, SurveyError> {
    let start = Instant::now();
    let descriptor = sys.descriptor();
    let qc = build_quotient(sys)?;
    let mut components = Vec::new();
    for comp in qc.components() {
        let h = homology(&comp)?;
        let p = presentation(&comp)?;
        let verdict = classify(&p);
        if verdict.abelianization != h.group(1) {
            return Err(SurveyError::AbelianizationMismatch { descriptor });
        }
        components.push(ComponentReport {
            homology: h,
            pi1: verdict,
        });
    }
    Ok(SurveyRecord {
        descriptor,
        components,
        ms: start.elapsed().as_millis() as u64,
    })
}

fn run_batch(
    systems: Vec<MatchingSystem>,
    jobs: Option<usize>,
) -> Result<Vec<SurveyRecord>, SurveyError> {
    match jobs {
        Some(1) => systems.iter().map(analyze_system).collect(),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool");
            pool.install(|| systems.par_iter().map(analyze_system).collect())
        }
        None => systems.par_iter().map(analyze_system).collect(),
    }
}

/// A named family of matching systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurveyFamily {
    Single { n: usize },
    TwoSimplex { n: usize, sign: SignType },
}

impl SurveyFamily {
    pub fn systems(&self, opts: &SurveyOptions) -> Result<Vec<MatchingSystem>, SurveyError> {
        let systems: Vec<MatchingSystem> = match *self {
            SurveyFamily::Single { n } => {
                check_universe(factorial((n + 1) / 2), opts.universe_limit)?;
                enumerate_single(n)?.map(|m| m.to_system()).collect()
            }
            SurveyFamily::TwoSimplex { n, sign } => {
                check_universe(factorial(n + 1), opts.universe_limit)?;
                enumerate_two_simplex(n, sign)?.collect()
            }
        };
        Ok(if opts.dedup_symmetry {
            dedup_by_symmetry(systems)
        } else {
            systems
        })
    }
}

impl fmt::Display for SurveyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurveyFamily::Single { n } => write!(f, "single-{n}"),
            SurveyFamily::TwoSimplex { n, sign } => write!(f, "two-{n}-{sign}"),
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, i| acc.saturating_mul(i))
}

fn check_universe(size: usize, limit: usize) -> Result<(), SurveyError> {
    if size > limit {
        Err(SurveyError::UniverseTooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// Surveys every single-simplex matching of odd dimension n, in enumeration
/// order.
pub fn survey_single(n: usize, opts: &SurveyOptions) -> Result<Vec<SurveyRecord>, SurveyError> {
    let systems = SurveyFamily::Single { n }.systems(opts)?;
    run_batch(systems, opts.jobs)
}

/// Surveys every two-simplex system of the given sign type, in enumeration
/// order.
pub fn survey_two_simplex(
    n: usize,
    sign: SignType,
    opts: &SurveyOptions,
) -> Result<Vec<SurveyRecord>, SurveyError> {
    let systems = SurveyFamily::TwoSimplex { n, sign }.systems(opts)?;
    run_batch(systems, opts.jobs)
}

/// Result of checking one claim over a record universe.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub universe: usize,
    pub passed: usize,
    pub counterexamples: Vec<String>,
    /// Observed values relevant to the claim (e.g. the H1 isomorphism types).
    pub observed: Vec<String>,
}

impl ClaimReport {
    pub fn passed_all(&self) -> bool {
        self.counterexamples.is_empty() && self.passed == self.universe
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "claim: {}\nuniverse: {}\npassed: {}\ncounterexamples: {}\n",
            self.claim,
            self.universe,
            self.passed,
            self.counterexamples.len()
        );
        if !self.observed.is_empty() {
            out.push_str(&format!("observed: {}\n", self.observed.join(", ")));
        }
        for c in &self.counterexamples {
            out.push_str(&format!("counterexample: {c}\n"));
        }
        out
    }
}

fn claim_over_records<F>(claim: &str, records: &[SurveyRecord], mut ok: F) -> ClaimReport
where
    F: FnMut(&SurveyRecord) -> bool,
{
    let mut passed = 0;
    let mut counterexamples = Vec::new();
    for r in records {
        if ok(r) {
            passed += 1;
        } else {
            counterexamples.push(r.descriptor.clone());
        }
    }
    ClaimReport {
        claim: claim.to_string(),
        universe: records.len(),
        passed,
        counterexamples,
        observed: Vec::new(),
    }
}

/// Checks that every component's H1 lies in {0, Z/2, Z/3, Z} and reports
/// which of the four values occur.
pub fn verify_h1_membership(records: &[SurveyRecord]) -> ClaimReport {
    let allowed = [
        AbelianGroup::trivial(),
        AbelianGroup::cyclic(2),
        AbelianGroup::cyclic(3),
        AbelianGroup::free(1),
    ];
    let mut observed = Vec::new();
    let mut report = claim_over_records("h1-membership", records, |r| {
        r.components.iter().all(|c| {
            let h1 = c.homology.group(1);
            let text = h1.text();
            if !observed.contains(&text) {
                observed.push(text);
            }
            allowed.contains(&h1)
        })
    });
    observed.sort();
    report.observed = observed;
    report
}

/// Checks that every component has second Betti number zero.
pub fn verify_h2_rank_zero(records: &[SurveyRecord]) -> ClaimReport {
    claim_over_records("h2-rank", records, |r| {
        r.components
            .iter()
            .all(|c| c.homology.betti.get(2).copied().unwrap_or(0) == 0)
    })
}

/// Checks that every component's fundamental group came out trivial.
pub fn verify_pi1_trivial(records: &[SurveyRecord]) -> ClaimReport {
    claim_over_records("pi1-trivial", records, |r| {
        r.components
            .iter()
            .all(|c| c.pi1.kind == crate::pi1::GroupKind::Trivial)
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

/// Renders records as a table: one row per (record, component) with the
/// descriptor, homology by degree, and the fundamental group verdict. Row
/// order is enumeration order. Timing never appears, so output is
/// byte-stable across runs and worker counts.
pub fn emit_tables(records: &[SurveyRecord], format: TableFormat) -> String {
    let degrees = records
        .iter()
        .flat_map(|r| r.components.iter())
        .map(|c| c.homology.dim())
        .max()
        .map_or(0, |d| d + 1);
    match format {
        TableFormat::Markdown => {
            let mut header = String::from("| matching | component |");
            let mut rule = String::from("| --- | --- |");
            for d in 0..degrees {
                header.push_str(&format!(" H{d} |"));
                rule.push_str(" --- |");
            }
            header.push_str(" pi1 |");
            rule.push_str(" --- |");
            let mut out = format!("{header}\n{rule}\n");
            for r in records {
                for (i, c) in r.components.iter().enumerate() {
                    let mut row = format!("| {} | {} |", r.descriptor, i);
                    for d in 0..degrees {
                        row.push_str(&format!(" {} |", c.homology.group(d).text()));
                    }
                    row.push_str(&format!(" {} |", c.pi1.kind));
                    out.push_str(&row);
                    out.push('\n');
                }
            }
            out
        }
        TableFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["desc".to_string(), "comp".to_string()];
            header.extend((0..degrees).map(|d| format!("H{d}")));
            header.push("pi1".to_string());
            writer.write_record(&header).expect("csv write");
            for r in records {
                for (i, c) in r.components.iter().enumerate() {
                    let mut row = vec![r.descriptor.clone(), i.to_string()];
                    row.extend((0..degrees).map(|d| c.homology.group(d).text()));
                    row.push(c.pi1.kind.to_string());
                    writer.write_record(&row).expect("csv write");
                }
            }
            String::from_utf8(writer.into_inner().expect("csv flush")).expect("utf8")
        }
        TableFormat::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                desc: &'a str,
                components: &'a [ComponentReport],
            }
            let rows: Vec<Row> = records
                .iter()
                .map(|r| Row {
                    desc: &r.descriptor,
                    components: &r.components,
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("json")
        }
    }
}

/// Tag identifying the computational behavior of the pipeline; cached
/// records carry it so a change here invalidates them.
pub fn version_tag() -> String {
    let markers = [
        crate::quotient::BEHAVIOR_MARKER,
        crate::homology::BEHAVIOR_MARKER,
        crate::pi1::BEHAVIOR_MARKER,
    ]
    .join(";");
    let digest = Sha256::digest(markers.as_bytes());
    hex_prefix(&digest, 12)
}

fn hex_prefix(bytes: &[u8], len: usize) -> String {
    let mut out = String::with_capacity(len);
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
        if out.len() >= len {
            break;
        }
    }
    out.truncate(len);
    out
}

#[derive(Serialize, Deserialize)]
struct StorePayload {
    desc: String,
    components: Vec<ComponentReport>,
    ms: u64,
    v: String,
}

#[derive(Serialize, Deserialize)]
struct StoreLine {
    #[serde(flatten)]
    payload: StorePayload,
    crc: String,
}

fn payload_checksum(payload: &StorePayload) -> String {
    let json = serde_json::to_string(payload).expect("payload serializes");
    hex_prefix(&Sha256::digest(json.as_bytes()), 16)
}

/// A survey bound to an on-disk result store.
#[derive(Clone, Debug)]
pub struct SurveyPlan {
    pub family: SurveyFamily,
    pub store: PathBuf,
    pub options: SurveyOptions,
}

/// Records returned by [`run_cached`], with cache accounting.
#[derive(Debug)]
pub struct SurveyRun {
    pub records: Vec<SurveyRecord>,
    /// Records served from the store.
    pub loaded: usize,
    /// Records computed this run (and appended to the store).
    pub computed: usize,
}

/// Runs a survey against its store: records already present (matching
/// descriptor and version tag, checksum intact) are not recomputed; fresh
/// records are appended in enumeration order. Corrupt lines are skipped with
/// a warning, so interrupted runs resume cleanly.
pub fn run_cached(plan: &SurveyPlan) -> Result<SurveyRun, SurveyError> {
    let systems = plan.family.systems(&plan.options)?;
    let tag = version_tag();

    let mut cached: HashMap<String, SurveyRecord> = HashMap::new();
    if plan.store.exists() {
        let text = fs::read_to_string(&plan.store)?;
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed: StoreLine = match serde_json::from_str(line) {
                Ok(p) => p,
                Err(err) => {
                    log::warn!(
                        "store {}: skipping unparseable line {}: {err}",
                        plan.store.display(),
                        lineno + 1
                    );
                    continue;
                }
            };
            if payload_checksum(&parsed.payload) != parsed.crc {
                log::warn!(
                    "store {}: skipping line {} with bad checksum",
                    plan.store.display(),
                    lineno + 1
                );
                continue;
            }
            if parsed.payload.v != tag {
                continue;
            }
            cached.insert(
                parsed.payload.desc.clone(),
                SurveyRecord {
                    descriptor: parsed.payload.desc,
                    components: parsed.payload.components,
                    ms: parsed.payload.ms,
                },
            );
        }
    }

    let missing: Vec<MatchingSystem> = systems
        .iter()
        .filter(|sys| !cached.contains_key(&sys.descriptor()))
        .cloned()
        .collect();
    let computed = run_batch(missing, plan.options.jobs)?;

    if !computed.is_empty() {
        if let Some(parent) = plan.store.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent)?;
            }
        }
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&plan.store)?;
        for record in &computed {
            let payload = StorePayload {
                desc: record.descriptor.clone(),
                components: record.components.clone(),
                ms: record.ms,
                v: tag.clone(),
            };
            let crc = payload_checksum(&payload);
            let line = serde_json::to_string(&StoreLine { payload, crc }).expect("line serializes");
            writeln!(file, "{line}")?;
        }
    }

    let loaded = systems.len() - computed.len();
    let mut fresh: HashMap<String, SurveyRecord> = computed
        .into_iter()
        .map(|r| (r.descriptor.clone(), r))
        .collect();
    let computed_count = fresh.len();
    let records = systems
        .iter()
        .map(|sys| {
            let desc = sys.descriptor();
            fresh
                .remove(&desc)
                .or_else(|| cached.remove(&desc))
                .expect("every system is cached or computed")
        })
        .collect();
    Ok(SurveyRun {
        records,
        loaded,
        computed: computed_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::is_sphere_profile;
    use crate::pi1::GroupKind;

    fn opts_serial() -> SurveyOptions {
        SurveyOptions {
            jobs: Some(1),
            ..SurveyOptions::default()
        }
    }

    #[test]
    fn single_surveys_match_known_shapes() {
        let records = survey_single(3, &opts_serial()).unwrap();
        assert_eq!(records.len(), 2);
        for r in &records {
            assert_eq!(r.component_count(), 1);
            assert!(is_sphere_profile(&r.components[0].homology, 3));
            assert_eq!(r.components[0].pi1.kind, GroupKind::Trivial);
        }

        let records = survey_single(5, &opts_serial()).unwrap();
        assert_eq!(records.len(), 6);
        let exotic = records
            .iter()
            .find(|r| r.descriptor == "M:n=5;pi=0:3,2:5,4:1")
            .expect("exotic matching surveyed");
        let h = &exotic.components[0].homology;
        assert_eq!(h.betti, vec![1, 0, 0, 0, 1, 1]);
        assert!(h.torsion.iter().all(Vec::is_empty));
    }

    #[test]
    fn two_simplex_universe_sizes() {
        let same = survey_two_simplex(3, SignType::Same, &opts_serial()).unwrap();
        let opp = survey_two_simplex(3, SignType::Opposite, &opts_serial()).unwrap();
        assert_eq!(same.len(), 24);
        assert_eq!(opp.len(), 24);

        let mut records = same;
        records.extend(opp);
        let report = verify_h1_membership(&records);
        assert!(report.passed_all(), "{}", report.render_text());
        assert_eq!(report.universe, 48);
        assert!(report.observed.contains(&"Z/2".to_string()));
        assert!(report.observed.contains(&"Z/3".to_string()));
    }

    #[test]
    fn h2_claim_flags_synthetic_counterexample() {
        let mut records = survey_single(3, &opts_serial()).unwrap();
        assert!(verify_h2_rank_zero(&records).passed_all());
        records[0].components[0].homology.betti[2] = 1;
        let report = verify_h2_rank_zero(&records);
        assert!(!report.passed_all());
        assert_eq!(report.counterexamples, vec![records[0].descriptor.clone()]);
    }

    #[test]
    fn worker_count_does_not_change_emissions() {
        let serial = survey_two_simplex(3, SignType::Same, &opts_serial()).unwrap();
        let parallel = survey_two_simplex(
            3,
            SignType::Same,
            &SurveyOptions {
                jobs: Some(4),
                ..SurveyOptions::default()
            },
        )
        .unwrap();
        assert_eq!(
            emit_tables(&serial, TableFormat::Markdown),
            emit_tables(&parallel, TableFormat::Markdown)
        );
        assert_eq!(
            emit_tables(&serial, TableFormat::Json),
            emit_tables(&parallel, TableFormat::Json)
        );
    }

    #[test]
    fn universe_limit_is_enforced() {
        let opts = SurveyOptions {
            jobs: Some(1),
            universe_limit: 5,
            ..SurveyOptions::default()
        };
        assert!(matches!(
            survey_single(5, &opts),
            Err(SurveyError::UniverseTooLarge { size: 6, limit: 5 })
        ));
    }

    #[test]
    fn csv_round_trips_printable_fields() {
        let records = survey_single(3, &opts_serial()).unwrap();
        let text = emit_tables(&records, TableFormat::Csv);
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        assert_eq!(headers, vec!["desc", "comp", "H0", "H1", "H2", "H3", "pi1"]);
        let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 2);
        for (row, record) in rows.iter().zip(&records) {
            assert_eq!(&row[0], record.descriptor.as_str());
            assert_eq!(&row[1], "0");
            for d in 0..=3 {
                assert_eq!(&row[2 + d], record.components[0].homology.group(d).text());
            }
            assert_eq!(&row[6], record.components[0].pi1.kind.to_string().as_str());
        }
    }

    #[test]
    fn markdown_table_shape() {
        let records = survey_single(3, &opts_serial()).unwrap();
        let text = emit_tables(&records, TableFormat::Markdown);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("| matching | component | H0 |"));
        assert!(lines[2].contains("M:n=3;pi=0:1,2:3"));
    }

    #[test]
    fn json_emission_parses_back() {
        let records = survey_single(3, &opts_serial()).unwrap();
        let text = emit_tables(&records, TableFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        let rows = parsed.as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["desc"], records[0].descriptor);
        assert_eq!(rows[0]["components"][0]["H"]["betti"][0], 1);
        assert!(rows[0]["components"][0]["pi1"]["kind"].is_string());
    }

    #[test]
    fn cache_runs_twice_without_recompute() {
        let dir = tempfile::tempdir().unwrap();
        let plan = SurveyPlan {
            family: SurveyFamily::Single { n: 3 },
            store: dir.path().join("records.jsonl"),
            options: opts_serial(),
        };
        let first = run_cached(&plan).unwrap();
        assert_eq!(first.computed, 2);
        assert_eq!(first.loaded, 0);
        let before = fs::read_to_string(&plan.store).unwrap();

        let second = run_cached(&plan).unwrap();
        assert_eq!(second.computed, 0);
        assert_eq!(second.loaded, 2);
        assert_eq!(fs::read_to_string(&plan.store).unwrap(), before);
        assert_eq!(first.records, second.records);
    }

    #[test]
    fn cache_resumes_after_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let plan = SurveyPlan {
            family: SurveyFamily::Single { n: 5 },
            store: dir.path().join("records.jsonl"),
            options: opts_serial(),
        };
        let full = run_cached(&plan).unwrap();
        assert_eq!(full.computed, 6);

        // Keep only the first two lines, as if the run had been killed.
        let text = fs::read_to_string(&plan.store).unwrap();
        let partial: String = text.lines().take(2).map(|l| format!("{l}\n")).collect();
        fs::write(&plan.store, partial).unwrap();

        let resumed = run_cached(&plan).unwrap();
        assert_eq!(resumed.loaded, 2);
        assert_eq!(resumed.computed, 4);
        assert_eq!(resumed.records, full.records);
    }

    #[test]
    fn cache_skips_corrupt_lines() {
        let dir = tempfile::tempdir().unwrap();
        let plan = SurveyPlan {
            family: SurveyFamily::Single { n: 3 },
            store: dir.path().join("records.jsonl"),
            options: opts_serial(),
        };
        run_cached(&plan).unwrap();
        let text = fs::read_to_string(&plan.store).unwrap();
        // Flip a digit inside the first line's homology payload.
        let corrupted: String = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                if i == 0 {
                    format!("{}\n", l.replacen("\"betti\":[1", "\"betti\":[7", 1))
                } else {
                    format!("{l}\n")
                }
            })
            .collect();
        fs::write(&plan.store, corrupted).unwrap();

        let rerun = run_cached(&plan).unwrap();
        assert_eq!(rerun.loaded, 1);
        assert_eq!(rerun.computed, 1);
        let clean = survey_single(3, &opts_serial()).unwrap();
        assert_eq!(rerun.records, clean);
    }

    #[test]
    fn cache_invalidates_on_version_change() {
        let dir = tempfile::tempdir().unwrap();
        let plan = SurveyPlan {
            family: SurveyFamily::Single { n: 3 },
            store: dir.path().join("records.jsonl"),
            options: opts_serial(),
        };
        run_cached(&plan).unwrap();
        // Rewrite every line under a stale version tag with a fresh checksum.
        let text = fs::read_to_string(&plan.store).unwrap();
        let stale: String = text
            .lines()
            .map(|l| {
                let mut parsed: StoreLine = serde_json::from_str(l).unwrap();
                parsed.payload.v = "stale".to_string();
                parsed.crc = payload_checksum(&parsed.payload);
                format!("{}\n", serde_json::to_string(&parsed).unwrap())
            })
            .collect();
        fs::write(&plan.store, stale).unwrap();

        let rerun = run_cached(&plan).unwrap();
        assert_eq!(rerun.loaded, 0);
        assert_eq!(rerun.computed, 2);
    }

    #[test]
    fn records_satisfy_component_invariants() {
        let records = survey_two_simplex(3, SignType::Opposite, &opts_serial()).unwrap();
        for r in &records {
            assert_eq!(r.component_count(), r.components.len());
            for c in &r.components {
                assert_eq!(c.pi1.abelianization, c.homology.group(1));
            }
        }
    }
}
