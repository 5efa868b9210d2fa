//! Grid, random and refinement sweeps with a deterministic reduction.
//!
//! Every probe gets a global index. Chunks are scanned in parallel and
//! merged in index order; ties between equal gaps go to the lower index,
//! so the outcome does not depend on the number of workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::claims::{evaluate, ClaimId, Domain, Probe};
use super::{AuditConfig, AuditKind};

/// Largest coordinate count of any claim (6 angles + 6 weights).
pub(crate) const MAX_COORDS: usize = 12;

const GRID_CHUNK: u64 = 4096;
const RANDOM_BLOCK: u64 = 1024;
/// Local grid half-width in steps, per refinement round.
const REFINE_STEPS: i64 = 4;
/// Jittered probes per round for the variable-length domains.
const REFINE_JITTER: u64 = 729;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Point {
    len: u8,
    v: [f64; MAX_COORDS],
}

impl Point {
    fn new(values: &[f64]) -> Self {
        let mut v = [0.0; MAX_COORDS];
        v[..values.len()].copy_from_slice(values);
        Self {
            len: values.len() as u8,
            v,
        }
    }

    pub(crate) fn as_slice(&self) -> &[f64] {
        &self.v[..self.len as usize]
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Candidate {
    pub index: u64,
    pub point: Point,
    pub probe: Probe,
}

impl Candidate {
    pub(crate) fn gap(&self) -> f64 {
        self.probe.log_gap()
    }

    /// Worst-first order: larger gap, then lower index.
    fn beats(&self, other: &Candidate) -> bool {
        let (a, b) = (self.gap(), other.gap());
        a > b || (a == b && self.index < other.index)
    }
}

/// Running summary of a set of probes.
#[derive(Debug, Clone, Default)]
pub(crate) struct Tally {
    pub samples: u64,
    pub skipped: u64,
    pub first_error: Option<(u64, Vec<f64>, String)>,
    pub worst: Option<Candidate>,
    /// Violations (gap above tolerance), worst-first, capped.
    pub top: Vec<Candidate>,
    /// `[agree, disagree]` per caption region.
    pub regions: Vec<[u64; 2]>,
}

impl Tally {
    fn record(&mut self, index: u64, point: &[f64], cx: &Context) {
        self.samples += 1;
        let outcome = evaluate(
            cx.claim,
            cx.kind,
            point,
            cx.cfg.near_equality_band,
            cx.cfg.boundary_margin,
        );
        let probe = match outcome {
            Ok(Some(p)) if p.log_gap().is_finite() => p,
            Ok(Some(_)) => {
                self.error(index, point, "non-finite gap".into());
                return;
            }
            Ok(None) => {
                self.skipped += 1;
                return;
            }
            Err(e) => {
                self.error(index, point, e.to_string());
                return;
            }
        };
        let cand = Candidate {
            index,
            point: Point::new(point),
            probe,
        };
        let violates = cand.gap() > cx.cfg.violation_tol;
        if let Some(r) = probe.region {
            if self.regions.len() <= r {
                self.regions.resize(r + 1, [0, 0]);
            }
            self.regions[r][usize::from(violates)] += 1;
        }
        if self.worst.is_none_or(|w| cand.beats(&w)) {
            self.worst = Some(cand);
        }
        if violates {
            insert_capped(&mut self.top, cand, cx.cfg.counterexample_cap);
        }
    }

    fn error(&mut self, index: u64, point: &[f64], msg: String) {
        if self.first_error.as_ref().is_none_or(|(i, _, _)| index < *i) {
            self.first_error = Some((index, point.to_vec(), msg));
        }
    }

    pub(crate) fn merge(mut self, other: Tally, cap: usize) -> Tally {
        self.samples += other.samples;
        self.skipped += other.skipped;
        if let Some((i, p, m)) = other.first_error {
            self.error(i, &p, m);
        }
        if let Some(w) = other.worst {
            if self.worst.is_none_or(|s| w.beats(&s)) {
                self.worst = Some(w);
            }
        }
        for c in other.top {
            insert_capped(&mut self.top, c, cap);
        }
        if self.regions.len() < other.regions.len() {
            self.regions.resize(other.regions.len(), [0, 0]);
        }
        for (a, b) in self.regions.iter_mut().zip(&other.regions) {
            a[0] += b[0];
            a[1] += b[1];
        }
        self
    }
}

fn insert_capped(list: &mut Vec<Candidate>, cand: Candidate, cap: usize) {
    // refinement near a clamped corner revisits points; keep one copy
    if let Some(i) = list.iter().position(|c| c.point == cand.point) {
        if !cand.beats(&list[i]) {
            return;
        }
        list.remove(i);
    }
    let pos = list
        .iter()
        .position(|c| cand.beats(c))
        .unwrap_or(list.len());
    if pos < cap {
        list.insert(pos, cand);
        list.truncate(cap);
    }
}

pub(crate) struct Context<'a> {
    pub claim: ClaimId,
    pub kind: AuditKind,
    pub cfg: &'a AuditConfig,
}

/// Axis bounds used by the tensor grid and by refinement clamping.
fn axis_bounds(domain: Domain, cfg: &AuditConfig, axis: usize, k: f64) -> (f64, f64) {
    let m = cfg.boundary_margin;
    match domain {
        Domain::Interval(hi) => (m, hi),
        Domain::KFamily(_) if axis == 1 => (m, 1.0 / k - m),
        _ => (m, 1.0 - m),
    }
}

fn grid_len(domain: Domain, n: u64) -> u64 {
    match domain {
        Domain::Cube(d) => n.pow(d as u32),
        Domain::Interval(_) => n,
        Domain::KFamily(kmax) => kmax as u64 * n,
        Domain::Weighted(_) | Domain::Chain { .. } => 0,
    }
}

fn grid_coord(lo: f64, hi: f64, i: u64, n: u64) -> f64 {
    lo + (hi - lo) * (i as f64 / (n - 1) as f64)
}

fn grid_point(domain: Domain, cfg: &AuditConfig, index: u64, out: &mut [f64; MAX_COORDS]) -> usize {
    let n = cfg.grid_per_dim as u64;
    match domain {
        Domain::Cube(d) => {
            let mut rest = index;
            // last coordinate varies fastest
            for axis in (0..d).rev() {
                let (lo, hi) = axis_bounds(domain, cfg, axis, 1.0);
                out[axis] = grid_coord(lo, hi, rest % n, n);
                rest /= n;
            }
            d
        }
        Domain::Interval(_) => {
            let (lo, hi) = axis_bounds(domain, cfg, 0, 1.0);
            out[0] = grid_coord(lo, hi, index, n);
            1
        }
        Domain::KFamily(_) => {
            let k = (index / n + 1) as f64;
            let (lo, hi) = axis_bounds(domain, cfg, 1, k);
            out[0] = k;
            out[1] = grid_coord(lo, hi, index % n, n);
            2
        }
        Domain::Weighted(_) | Domain::Chain { .. } => unreachable!("no grid"),
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn random_point(
    domain: Domain,
    cfg: &AuditConfig,
    rng: &mut ChaCha8Rng,
    out: &mut [f64; MAX_COORDS],
) -> usize {
    let (m, top) = (cfg.boundary_margin, 1.0 - cfg.boundary_margin);
    let len = match domain {
        Domain::Cube(d) => d,
        Domain::Interval(hi) => {
            out[0] = uniform(rng, m, hi);
            return 1;
        }
        Domain::KFamily(kmax) => {
            let k = rng.random_range(1..=kmax) as f64;
            out[0] = k;
            out[1] = uniform(rng, m, 1.0 / k - m);
            return 2;
        }
        Domain::Weighted(max) => 2 * rng.random_range(1..=max),
        Domain::Chain { lo, hi, step } => lo + step * rng.random_range(0..=(hi - lo) / step),
    };
    for v in &mut out[..len] {
        *v = uniform(rng, m, top);
    }
    len
}

/// Per-(claim, kind) RNG stream base; block ids fill the low 40 bits.
fn stream_base(claim: ClaimId, kind: AuditKind) -> u64 {
    let c = ClaimId::ALL.iter().position(|&x| x == claim).unwrap_or(0) as u64;
    (c << 48) | ((kind as u64) << 44)
}

const REFINE_STREAM: u64 = 1 << 40;

fn rng_for(cfg: &AuditConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

pub(crate) struct Sweep {
    pub tally: Tally,
    pub anchors: Vec<Candidate>,
    /// Worst log gap after the base sweep and after each refinement round.
    pub trace: Vec<f64>,
}

pub(crate) fn sweep(cx: &Context) -> Sweep {
    let cfg = cx.cfg;
    let domain = cx.claim.domain();
    let cap = cfg.counterexample_cap;
    let n_grid = grid_len(domain, cfg.grid_per_dim as u64);

    let grid = (0..n_grid.div_ceil(GRID_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            let mut buf = [0.0; MAX_COORDS];
            for i in c * GRID_CHUNK..((c + 1) * GRID_CHUNK).min(n_grid) {
                let len = grid_point(domain, cfg, i, &mut buf);
                t.record(i, &buf[..len], cx);
            }
            t
        })
        .collect::<Vec<_>>();

    let n_rand = cfg.random_samples;
    let base = stream_base(cx.claim, cx.kind);
    let random = (0..n_rand.div_ceil(RANDOM_BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut t = Tally::default();
            let mut rng = rng_for(cfg, base | b);
            let mut buf = [0.0; MAX_COORDS];
            for j in b * RANDOM_BLOCK..((b + 1) * RANDOM_BLOCK).min(n_rand) {
                let len = random_point(domain, cfg, &mut rng, &mut buf);
                t.record(n_grid + j, &buf[..len], cx);
            }
            t
        })
        .collect::<Vec<_>>();

    let mut tally = grid
        .into_iter()
        .chain(random)
        .fold(Tally::default(), |acc, t| acc.merge(t, cap));

    let mut next = n_grid + n_rand;
    let mut anchors = Vec::new();
    for a in cx.claim.anchors(cx.kind) {
        let mut t = Tally::default();
        t.record(next, a, cx);
        anchors.extend(t.top.iter().copied());
        tally = tally.merge(t, cap);
        next += 1;
    }

    let mut trace = Vec::new();
    trace.extend(tally.worst.map(|w| w.gap()));
    for round in 1..=cfg.refine_depth {
        let Some(center) = tally.worst else { break };
        let points = neighbourhood(domain, cfg, center.point.as_slice(), round, base);
        let t = points
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let mut t = Tally::default();
                t.record(next + i as u64, p.as_slice(), cx);
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), |acc, t| acc.merge(t, cap));
        next += points.len() as u64;
        tally = tally.merge(t, cap);
        trace.extend(tally.worst.map(|w| w.gap()));
    }

    Sweep {
        tally,
        anchors,
        trace,
    }
}

/// Probes around `center` for one refinement round: a local tensor grid
/// for fixed-dimension domains, seeded jitter otherwise.
fn neighbourhood(
    domain: Domain,
    cfg: &AuditConfig,
    center: &[f64],
    round: u32,
    base: u64,
) -> Vec<Point> {
    let n = cfg.grid_per_dim as f64;
    let shrink = 4f64.powi(round as i32);
    match domain.dims() {
        Some(_) => {
            // KFamily refines y only; k stays put
            let axes: Vec<usize> = match domain {
                Domain::KFamily(_) => vec![1],
                _ => (0..center.len()).collect(),
            };
            let k = if matches!(domain, Domain::KFamily(_)) {
                center[0]
            } else {
                1.0
            };
            let width = 2 * REFINE_STEPS + 1;
            let total = width.pow(axes.len() as u32);
            let mut out = Vec::with_capacity(total as usize);
            for mut code in 0..total {
                let mut p = center.to_vec();
                for &axis in &axes {
                    let (lo, hi) = axis_bounds(domain, cfg, axis, k);
                    let h = (hi - lo) / (n - 1.0) / shrink;
                    let step = code % width - REFINE_STEPS;
                    code /= width;
                    p[axis] = (center[axis] + step as f64 * h).clamp(lo, hi);
                }
                out.push(Point::new(&p));
            }
            out
        }
        None => {
            let mut rng = rng_for(cfg, base | REFINE_STREAM | round as u64);
            let (lo, hi) = (cfg.boundary_margin, 1.0 - cfg.boundary_margin);
            let h = 0.2 / shrink;
            (0..REFINE_JITTER)
                .map(|_| {
                    let p: Vec<f64> = center
                        .iter()
                        .map(|&c| (c + uniform(&mut rng, -h, h)).clamp(lo, hi))
                        .collect();
                    Point::new(&p)
                })
                .collect()
        }
    }
}
