//! Numerical audits of the printed statements.
//!
//! Three questions are kept apart: is a stated bound valid everywhere on
//! its domain, is the stated branch of a two-branch statement actually the
//! smaller bound, and do the figure captions agree with the predicates
//! they illustrate. A flipped branch assignment still gives a true
//! inequality, so it shows up only in the second question.

mod claims;
mod engine;
mod json;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use claims::{corrected_min, evaluate, ClaimId, Domain, Probe, FAMILY_MAX_N, KFAMILY_MAX_K};
pub use json::{reports_from_json, reports_to_json, to_string as to_json_string};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub grid_per_dim: usize,
    pub boundary_margin: f64,
    pub random_samples: u64,
    pub seed: u64,
    pub refine_depth: u32,
    /// Log-space slack before a probe counts as a violation.
    pub violation_tol: f64,
    /// `|criterion|` below which optimality probes are skipped.
    pub near_equality_band: f64,
    pub counterexample_cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            grid_per_dim: 256,
            boundary_margin: 1e-6,
            random_samples: 100_000,
            seed: 0,
            refine_depth: 3,
            violation_tol: 1e-10,
            near_equality_band: 1e-8,
            counterexample_cap: 16,
            threads: None,
        }
    }
}

impl AuditConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Config(what.into()));
        if self.grid_per_dim < 2 {
            return bad("grid_per_dim must be at least 2");
        }
        if !(self.boundary_margin > 0.0 && self.boundary_margin < 0.5) {
            return bad("boundary_margin must lie in (0, 1/2)");
        }
        if self.random_samples == 0 {
            return bad("random_samples must be positive");
        }
        if !(self.violation_tol > 0.0 && self.violation_tol.is_finite()) {
            return bad("violation_tol must be positive");
        }
        if !(self.near_equality_band > 0.0 && self.near_equality_band.is_finite()) {
            return bad("near_equality_band must be positive");
        }
        if self.counterexample_cap == 0 {
            return bad("counterexample_cap must be positive");
        }
        if self.threads == Some(0) {
            return bad("threads must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AuditKind {
    /// LHS against the stated RHS.
    Validity,
    /// Stated branch against the true minimum of the two branches.
    Optimality,
    /// Figure caption against its plotted predicate.
    Table,
    /// LHS against the pointwise minimum of the valid candidates.
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    /// Some probe could not be evaluated, or none was decidable.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub point: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs` in value space.
    pub gap: f64,
    pub log_gap: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stated: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionTally {
    pub region: String,
    pub agree: u64,
    pub disagree: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub claim: ClaimId,
    pub kind: AuditKind,
    pub samples: u64,
    pub skipped: u64,
    pub status: Status,
    pub worst_point: Option<Vec<f64>>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub gap: Option<f64>,
    pub log_gap: Option<f64>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<RegionTally>,
    /// Worst log gap after the base sweep and after each refinement round.
    pub refinement: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Counterexample {
    fn from_candidate(c: &engine::Candidate) -> Self {
        let p = c.probe;
        Self {
            point: c.point.as_slice().to_vec(),
            lhs: p.lhs.exp(),
            rhs: p.rhs.exp(),
            gap: p.lhs.exp() - p.rhs.exp(),
            log_gap: p.log_gap(),
            stated: p.stated.map(|f| f.as_str().to_owned()),
            optimal: p.optimal.map(|f| f.as_str().to_owned()),
        }
    }
}

fn inconsistent(claim: ClaimId, kind: AuditKind, detail: String) -> AuditReport {
    AuditReport {
        claim,
        kind,
        samples: 0,
        skipped: 0,
        status: Status::Inconsistent,
        worst_point: None,
        lhs: None,
        rhs: None,
        gap: None,
        log_gap: None,
        counterexamples: Vec::new(),
        regions: Vec::new(),
        refinement: Vec::new(),
        detail: Some(detail),
    }
}

fn with_pool<T: Send>(cfg: &AuditConfig, f: impl FnOnce() -> T + Send) -> Result<T> {
    match cfg.threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs one audit of `claim`.
pub fn audit(claim: ClaimId, kind: AuditKind, cfg: &AuditConfig) -> Result<AuditReport> {
    cfg.validate()?;
    if !claim.supports(kind) {
        return Err(Error::Unsupported(format!("{claim} has no {kind:?} audit")));
    }
    let cx = engine::Context { claim, kind, cfg };
    let sweep = with_pool(cfg, || engine::sweep(&cx))?;
    let t = sweep.tally;

    // violating anchors are always reported, the rest worst-first
    let mut picked: Vec<engine::Candidate> = sweep.anchors.clone();
    for c in &t.top {
        if picked.len() >= cfg.counterexample_cap {
            break;
        }
        if !picked.iter().any(|p| p.point == c.point) {
            picked.push(*c);
        }
    }
    picked.sort_by(|a, b| b.gap().total_cmp(&a.gap()).then(a.index.cmp(&b.index)));

    let decided = t.samples - t.skipped;
    let (status, detail) = match &t.first_error {
        Some((_, p, msg)) => (
            Status::Inconsistent,
            Some(format!("evaluation failed at {p:?}: {msg}")),
        ),
        None if decided == 0 || t.worst.is_none() => {
            (Status::Inconsistent, Some("no decidable probes".to_owned()))
        }
        None if t.worst.is_some_and(|w| w.gap() > cfg.violation_tol) => (Status::Fail, None),
        None => (Status::Pass, None),
    };
    let names = claim.region_names();
    let regions = t
        .regions
        .iter()
        .enumerate()
        .map(|(i, [agree, disagree])| RegionTally {
            region: names
                .get(i)
                .map_or_else(|| format!("region {i}"), |s| (*s).to_owned()),
            agree: *agree,
            disagree: *disagree,
        })
        .collect();
    let worst = t.worst.map(|w| Counterexample::from_candidate(&w));
    Ok(AuditReport {
        claim,
        kind,
        samples: t.samples,
        skipped: t.skipped,
        status,
        worst_point: worst.as_ref().map(|w| w.point.clone()),
        lhs: worst.as_ref().map(|w| w.lhs),
        rhs: worst.as_ref().map(|w| w.rhs),
        gap: worst.as_ref().map(|w| w.gap),
        log_gap: worst.as_ref().map(|w| w.log_gap),
        counterexamples: picked.iter().map(Counterexample::from_candidate).collect(),
        regions,
        refinement: sweep.trace,
        detail,
    })
}

pub fn audit_validity(claim: ClaimId, cfg: &AuditConfig) -> Result<AuditReport> {
    audit(claim, AuditKind::Validity, cfg)
}

pub fn audit_optimality(claim: ClaimId, cfg: &AuditConfig) -> Result<AuditReport> {
    audit(claim, AuditKind::Optimality, cfg)
}

/// Validity of the claim's LHS against [`corrected_min`].
pub fn audit_corrected(claim: ClaimId, cfg: &AuditConfig) -> Result<AuditReport> {
    audit(claim, AuditKind::Corrected, cfg)
}

/// Caption cross-check of a figure claim.
pub fn audit_caption(claim: ClaimId, cfg: &AuditConfig) -> Result<AuditReport> {
    audit(claim, AuditKind::Table, cfg)
}

const KINDS: [AuditKind; 4] = [
    AuditKind::Validity,
    AuditKind::Optimality,
    AuditKind::Table,
    AuditKind::Corrected,
];

/// Every applicable audit of one claim, in kind order. Errors are
/// captured as `Inconsistent` reports.
pub fn audit_claim(claim: ClaimId, cfg: &AuditConfig) -> Result<Vec<AuditReport>> {
    cfg.validate()?;
    Ok(KINDS
        .iter()
        .filter(|k| claim.supports(**k))
        .map(|&k| audit(claim, k, cfg).unwrap_or_else(|e| inconsistent(claim, k, e.to_string())))
        .collect())
}

/// Every registered claim, ordered by claim then kind.
pub fn audit_all(cfg: &AuditConfig) -> Result<Vec<AuditReport>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &claim in ClaimId::ALL {
        out.extend(audit_claim(claim, cfg)?);
    }
    Ok(out)
}

/// True when some validity audit of a printed statement failed.
pub fn any_validity_failed(reports: &[AuditReport]) -> bool {
    reports
        .iter()
        .any(|r| r.kind == AuditKind::Validity && r.status == Status::Fail)
}

/// Re-evaluates every stored counterexample from its inputs; `true` means
/// it is still a violation.
pub fn recheck(report: &AuditReport, cfg: &AuditConfig) -> Result<Vec<bool>> {
    report
        .counterexamples
        .iter()
        .map(|c| {
            let p = evaluate(
                report.claim,
                report.kind,
                &c.point,
                cfg.near_equality_band,
                cfg.boundary_margin,
            )?;
            Ok(p.is_some_and(|p| p.log_gap() > cfg.violation_tol))
        })
        .collect()
}
