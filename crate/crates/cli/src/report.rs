//! Machine-readable run reports and the matrix/instance file format.
//!
//! The report schema is fixed: every run emits exactly the fields below
//! (optionals serialize as `null`), so reports are diffable across runs.
//! Numbers pass through serde_json's shortest-round-trip formatting, which
//! reproduces every f64 bit-exactly on re-read. The only fields that vary
//! between identical runs are `timestamp` and `wall_time_ms`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use bwlab_core::{
    BoundId, BoundOutcome, CMat, InequalityReport, PairingReport, PsdCertificate, SearchRecord,
    TripleInstance, ALL_BOUNDS,
};

/// At most this many violating instances are dumped per bound; the
/// `violations` list stays nonempty iff any violation occurred.
pub const MAX_VIOLATION_DUMPS: usize = 8;

/// One dense complex matrix on disk: column-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_mat(m: &CMat) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_mat(&self) -> Result<CMat, String> {
        let data: Vec<Complex64> = self
            .entries
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        CMat::new(self.rows, self.cols, data).map_err(|e| e.to_string())
    }
}

/// Instance file consumed by `eval`: A, C are m x n and B is n x m.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub a: MatrixFile,
    pub b: MatrixFile,
    pub c: MatrixFile,
}

impl InstanceFile {
    pub fn from_instance(t: &TripleInstance) -> Self {
        Self {
            a: MatrixFile::from_mat(t.a()),
            b: MatrixFile::from_mat(t.b()),
            c: MatrixFile::from_mat(t.c()),
        }
    }

    pub fn to_instance(&self, provenance: &str) -> Result<TripleInstance, String> {
        TripleInstance::new(
            self.a.to_mat()?,
            self.b.to_mat()?,
            self.c.to_mat()?,
            provenance,
        )
        .map_err(|e| e.to_string())
    }
}

/// Full dump of one evaluated instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDump {
    pub provenance: String,
    pub a: MatrixFile,
    pub b: MatrixFile,
    pub c: MatrixFile,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: Option<f64>,
}

impl InstanceDump {
    pub fn new(t: &TripleInstance, report: &InequalityReport) -> Self {
        Self {
            provenance: t.provenance().to_string(),
            a: MatrixFile::from_mat(t.a()),
            b: MatrixFile::from_mat(t.b()),
            c: MatrixFile::from_mat(t.c()),
            lhs: report.lhs,
            rhs: report.rhs,
            ratio: report.ratio,
        }
    }
}

/// Per-bound aggregate over every instance a run evaluated.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundAggregate {
    pub bound_id: String,
    pub instances_evaluated: u64,
    pub holds_count: u64,
    pub violations: Vec<InstanceDump>,
    pub max_ratio: Option<f64>,
    pub max_ratio_instance: Option<InstanceDump>,
}

/// One hill-climb run (per bound and shape).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchSummary {
    pub bound_id: String,
    pub shape: String,
    pub trials: u64,
    pub ascent_steps: u64,
    pub rng_seed: u64,
    pub best_ratio: f64,
    pub terminated: String,
    /// `(iteration, ratio)` at the start and at every accepted step.
    pub trace: Vec<(u64, f64)>,
    pub best_instance: InstanceDump,
}

/// Structural-certificate section emitted by `eval` (null elsewhere).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub psd_min_eig: f64,
    pub psd_gram_residual: f64,
    pub lambda2_dominator: Option<f64>,
    pub lambda2_cap: Option<f64>,
    pub psd_valid: bool,
    pub pairing_ok: bool,
    pub pairing_vacuous: bool,
    pub pairing_clusters: Vec<ClusterDump>,
    pub chain_check_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterDump {
    pub value: f64,
    pub size: u64,
}

impl CertificateReport {
    pub fn new(cert: &PsdCertificate, pairing: &PairingReport, chain_check_ok: bool) -> Self {
        Self {
            psd_min_eig: cert.min_eig,
            psd_gram_residual: cert.gram_residual,
            lambda2_dominator: cert.lambda2_dominator,
            lambda2_cap: cert.lambda2_cap,
            psd_valid: cert.is_valid(),
            pairing_ok: pairing.ok,
            pairing_vacuous: pairing.vacuous,
            pairing_clusters: pairing
                .clusters
                .iter()
                .map(|c| ClusterDump {
                    value: c.value,
                    size: c.size as u64,
                })
                .collect(),
            chain_check_ok,
        }
    }
}

/// The one report document every command writes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub rng_seed: u64,
    pub timestamp: u64,
    pub wall_time_ms: u64,
    /// Set when a conjectured bound was violated somewhere in the run.
    pub discovery: bool,
    pub bounds: Vec<BoundAggregate>,
    pub searches: Vec<SearchSummary>,
    pub certificates: Option<CertificateReport>,
}

impl RunReport {
    pub fn new(command: String, rng_seed: u64) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            rng_seed,
            timestamp: 0,
            wall_time_ms: 0,
            discovery: false,
            bounds: Vec::new(),
            searches: Vec::new(),
            certificates: None,
        }
    }

    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat tabular rendering: one row per bound aggregate and one per
    /// search, tab-separated.
    pub fn to_tabular(&self) -> String {
        let mut out = String::new();
        out.push_str("section\tbound\tshape\tinstances\tholds\tviolations\tmax_or_best_ratio\tterminated\n");
        for b in &self.bounds {
            out.push_str(&format!(
                "bound\t{}\t-\t{}\t{}\t{}\t{}\t-\n",
                b.bound_id,
                b.instances_evaluated,
                b.holds_count,
                b.instances_evaluated - b.holds_count,
                b.max_ratio.map_or("-".into(), |r| format!("{r:.12}")),
            ));
        }
        for s in &self.searches {
            out.push_str(&format!(
                "search\t{}\t{}\t{}\t-\t-\t{:.12}\t{}\n",
                s.bound_id, s.shape, s.trials, s.best_ratio, s.terminated
            ));
        }
        out
    }
}

/// Accumulates per-bound statistics in catalog order.
pub struct Aggregator {
    rows: Vec<AggRow>,
}

struct AggRow {
    bound: BoundId,
    instances: u64,
    holds: u64,
    violations: Vec<InstanceDump>,
    max_ratio: Option<f64>,
    max_ratio_instance: Option<InstanceDump>,
}

impl Aggregator {
    pub fn new() -> Self {
        Self {
            rows: ALL_BOUNDS
                .iter()
                .map(|&bound| AggRow {
                    bound,
                    instances: 0,
                    holds: 0,
                    violations: Vec::new(),
                    max_ratio: None,
                    max_ratio_instance: None,
                })
                .collect(),
        }
    }

    pub fn record(&mut self, t: &TripleInstance, report: &InequalityReport) {
        let row = self
            .rows
            .iter_mut()
            .find(|r| r.bound == report.bound)
            .expect("catalog is closed");
        row.instances += 1;
        if report.holds {
            row.holds += 1;
        } else if row.violations.len() < MAX_VIOLATION_DUMPS {
            row.violations.push(InstanceDump::new(t, report));
        }
        if let Some(ratio) = report.ratio {
            if row.max_ratio.is_none_or(|cur| ratio > cur) {
                row.max_ratio = Some(ratio);
                row.max_ratio_instance = Some(InstanceDump::new(t, report));
            }
        }
    }

    pub fn record_outcomes(&mut self, t: &TripleInstance, outcomes: &[BoundOutcome]) {
        for outcome in outcomes {
            if let BoundOutcome::Evaluated(report) = outcome {
                self.record(t, report);
            }
        }
    }

    /// True when any bound with the given status has a violation.
    pub fn any_violation(&self, status: bwlab_core::BoundStatus) -> bool {
        self.rows
            .iter()
            .any(|r| r.bound.status() == status && r.holds < r.instances)
    }

    /// Rows that saw at least one instance, in catalog order.
    pub fn into_aggregates(self) -> Vec<BoundAggregate> {
        self.rows
            .into_iter()
            .filter(|r| r.instances > 0)
            .map(|r| BoundAggregate {
                bound_id: r.bound.as_str().to_string(),
                instances_evaluated: r.instances,
                holds_count: r.holds,
                violations: r.violations,
                max_ratio: r.max_ratio,
                max_ratio_instance: r.max_ratio_instance,
            })
            .collect()
    }
}

impl Default for Aggregator {
    fn default() -> Self {
        Self::new()
    }
}

impl SearchSummary {
    pub fn from_record(
        bound: BoundId,
        shape: (usize, usize),
        trials: u64,
        steps: u64,
        record: &SearchRecord,
    ) -> Self {
        let best_report = bwlab_core::eval_bound(
            bound,
            &record.best_instance,
            bwlab_core::Tolerance::default(),
        );
        let (lhs, rhs, ratio) = match &best_report {
            Ok(r) => (r.lhs, r.rhs, r.ratio),
            Err(_) => (f64::NAN, f64::NAN, None),
        };
        let best_instance = InstanceDump {
            provenance: record.best_instance.provenance().to_string(),
            a: MatrixFile::from_mat(record.best_instance.a()),
            b: MatrixFile::from_mat(record.best_instance.b()),
            c: MatrixFile::from_mat(record.best_instance.c()),
            lhs,
            rhs,
            ratio,
        };
        Self {
            bound_id: bound.as_str().to_string(),
            shape: format!("{}x{}", shape.0, shape.1),
            trials,
            ascent_steps: steps,
            rng_seed: record.rng_seed,
            best_ratio: record.best_ratio,
            terminated: record.terminated.as_str().to_string(),
            trace: record
                .trace
                .iter()
                .map(|&(i, r)| (i as u64, r))
                .collect(),
            best_instance,
        }
    }
}

/// Writes `content` to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
