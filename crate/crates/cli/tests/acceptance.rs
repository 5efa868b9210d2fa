//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

// a NaN measurement must fail its check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinebound::audit::{
    audit_corrected, audit_optimality, audit_validity, corrected_min, evaluate, AuditConfig,
    AuditKind, ClaimId, Status,
};
use sinebound::bounds::{eval_bound, BoundForm, BoundParams, ParamVector};
use sinebound::compare::{compare_pq, compare_st, Relation};
use sinebound::regions::{curves, mask_predicate, render, FigureId, Labels};
use sinebound::specfun::{log_gamma, log_sin_pi, reflection_residual, PositiveReal, UnitOpen};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sin(x: f64) -> f64 {
    (PI * x).sin()
}

fn c1_reflection() -> Outcome {
    let start = Instant::now();
    let n = 10_000;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let x = 1e-3 + (1.0 - 2e-3) * i as f64 / (n - 1) as f64;
        let r = reflection_residual(UnitOpen::new(x).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst = worst.max(r.abs());
    }
    let t = start.elapsed();
    ensure!(worst <= 1e-12, "max residual {worst:e}");
    ensure!(t < Duration::from_secs(1), "took {t:?}");
    Ok(format!("max |residual| = {worst:.2e} in {t:.2?}"))
}

fn c2_special_values() -> Outcome {
    let g = log_gamma(PositiveReal::new(0.5).unwrap()).exp();
    let rel = (g - PI.sqrt()).abs() / PI.sqrt();
    ensure!(rel <= 1e-13, "Gamma(1/2) relative error {rel:e}");
    let s = log_sin_pi(UnitOpen::new(1.0 / 6.0).unwrap());
    let d = (s - 0.5f64.ln()).abs();
    ensure!(d <= 1e-14, "ln sin(pi/6) error {d:e}");
    Ok(format!(
        "Gamma(1/2) rel err {rel:.1e}; ln sin(pi/6) err {d:.1e}"
    ))
}

fn c3_validity_sweep() -> Outcome {
    use ClaimId::*;
    let cfg = AuditConfig {
        random_samples: 100_000,
        seed: 3,
        ..AuditConfig::default()
    };
    let start = Instant::now();
    let mut total = 0;
    for c in [T31, C32, P33, P34, P35, P36, C37a, C37b, C44, C48] {
        let r = audit_validity(c, &cfg).map_err(|e| format!("{c}: {e}"))?;
        ensure!(
            r.status == Status::Pass,
            "{c}: {:?} at {:?}",
            r.status,
            r.worst_point
        );
        ensure!(r.samples >= 100_000, "{c}: only {} samples", r.samples);
        total += r.samples;
    }
    Ok(format!(
        "10 families, {total} probes, no violation beyond 1e-10, {:.1?}",
        start.elapsed()
    ))
}

fn c4_verdicts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut checked, mut draws) = (0u64, 0u64);
    while checked < 200_000 {
        draws += 1;
        let pq = checked % 2 == 1;
        let n = if pq {
            2 * rng.random_range(1..=3)
        } else {
            rng.random_range(2..=6)
        };
        let l: Vec<f64> = (0..n).map(|_| rng.random_range(1e-6..1.0 - 1e-6)).collect();
        let p = ParamVector::new(l.clone()).map_err(|e| e.to_string())?;
        let (v, forms) = if pq {
            (compare_pq(&p), [BoundForm::P2n, BoundForm::Q2n])
        } else {
            (compare_st(&p), [BoundForm::Sn, BoundForm::Tn])
        };
        let v = v.map_err(|e| e.to_string())?;
        if v.near_boundary(1e-8) {
            continue;
        }
        let a = forms[0].eval(&l).map_err(|e| e.to_string())?.log_value;
        let b = forms[1].eval(&l).map_err(|e| e.to_string())?.log_value;
        let ok = match v.relation {
            Relation::FirstGE => a >= b,
            Relation::SecondGE => b >= a,
            Relation::Equal => false,
        };
        ensure!(
            ok,
            "{forms:?} at {l:?}: {:?} but logs {a} vs {b}",
            v.relation
        );
        checked += 1;
    }
    Ok(format!(
        "{checked} verdicts (1e5 per family) agree with direct comparison ({draws} draws)"
    ))
}

fn c5_probe_facts() -> Outcome {
    let a = BoundForm::A2.eval(&[0.25, 0.25]).unwrap().value();
    let b = BoundForm::B2.eval(&[0.25, 0.25]).unwrap().value();
    ensure!((a - (PI / 4.0).sin()).abs() <= 1e-9, "A = {a}");
    ensure!((b - (3.0 * PI / 8.0).sin()).abs() <= 1e-9, "B = {b}");
    ensure!(a < b, "A >= B");
    let r =
        audit_optimality(ClaimId::C46table, &AuditConfig::default()).map_err(|e| e.to_string())?;
    ensure!(
        r.status == Status::Fail,
        "C46table optimality {:?}",
        r.status
    );
    let c = r
        .counterexamples
        .iter()
        .find(|c| c.point == [0.25, 0.25])
        .ok_or("probe (1/4, 1/4) missing from counterexamples")?;
    ensure!(
        c.stated.as_deref() == Some("B2") && c.optimal.as_deref() == Some("A2"),
        "{c:?}"
    );
    Ok(format!(
        "A = {a:.10}, B = {b:.10}; C46table optimality Fail at (0.25, 0.25)"
    ))
}

fn c6_c413() -> Outcome {
    let cfg = AuditConfig::default();
    let r = audit_validity(ClaimId::C413, &cfg).map_err(|e| e.to_string())?;
    ensure!(r.status == Status::Fail, "validity {:?}", r.status);
    ensure!(
        r.counterexamples
            .iter()
            .all(|c| c.point[0] > 1.0 / 3.0 && c.point[0] < 1.0),
        "counterexample outside (1/3, 1)"
    );
    let half = r
        .counterexamples
        .iter()
        .find(|c| c.point == [0.5])
        .ok_or("x = 0.5 not reported")?;
    let want = 1.0 - 3f64.sqrt() / 2.0;
    ensure!(
        (half.gap - want).abs() <= 1e-9,
        "gap {} vs {want}",
        half.gap
    );
    let m = 1e-6;
    let n = 10_000;
    for i in 0..n {
        let x = m + (1.0 - 2.0 * m) * i as f64 / (n - 1) as f64;
        let (v, _) = corrected_min(ClaimId::C413, &[x]).map_err(|e| e.to_string())?;
        ensure!(
            sin(x).ln() <= v.ln() + cfg.violation_tol,
            "corrected min below LHS at {x}"
        );
    }
    let c = audit_corrected(ClaimId::C413, &cfg).map_err(|e| e.to_string())?;
    ensure!(c.status == Status::Pass, "corrected audit {:?}", c.status);
    Ok(format!(
        "Fail, gap at 0.5 = {:.10}; corrected min holds on 1e4 grid",
        half.gap
    ))
}

fn c7_c47() -> Outcome {
    let r = audit_validity(ClaimId::C47, &AuditConfig::default()).map_err(|e| e.to_string())?;
    ensure!(r.status == Status::Pass, "{:?}", r.status);
    let w = r.worst_point.as_ref().ok_or("no worst point")?[0];
    ensure!((w - 0.5).abs() < 1e-3, "worst point {w}");
    let p = evaluate(ClaimId::C47, AuditKind::Validity, &[0.5], 1e-8, 1e-6)
        .map_err(|e| e.to_string())?
        .ok_or("probe skipped")?;
    let (l, rr) = (p.lhs.exp(), p.rhs.exp());
    ensure!(
        (l - 1.0).abs() <= 1e-9 && (rr - 1.0).abs() <= 1e-9,
        "{l} {rr}"
    );
    Ok(format!("Pass; worst at x = {w}, both sides 1 at 0.5"))
}

fn c8_k_family() -> Outcome {
    let c = 3.0 * 3f64.sqrt() / 8.0;
    let n = 1_000_000;
    let mut best: f64 = 0.0;
    for i in 1..=n {
        let y = 0.25 * i as f64 / n as f64;
        best = best.max(sin(2.0 * y) * sin(y) * sin(y));
    }
    ensure!(best <= c + 1e-10, "max {best} > {c}");
    let r = audit_validity(ClaimId::EqYsin, &AuditConfig::default()).map_err(|e| e.to_string())?;
    ensure!(r.status == Status::Pass, "EqYsin {:?}", r.status);
    Ok(format!("max over (0, 1/4] = {best:.10} <= {c:.10}"))
}

fn c9_figures() -> Outcome {
    let n = 512;
    for fig in [
        FigureId::Fig1,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
    ] {
        let g = render(fig, n).map_err(|e| e.to_string())?;
        let codes = g.codes().ok_or("not a mask")?;
        for j in 0..n {
            for i in 0..n {
                let (x, y) = ((i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64);
                let v = mask_predicate(fig, x, y).map_err(|e| e.to_string())?;
                let want = if v > 0.0 {
                    0
                } else if v < 0.0 {
                    1
                } else {
                    2
                };
                ensure!(codes[j * n + i] == want, "{fig} cell ({i},{j})");
            }
        }
    }
    let g = render(FigureId::Fig2, n).map_err(|e| e.to_string())?;
    let Labels::Heights(h) = &g.labels else {
        return Err("Fig2 is not a heightfield".into());
    };
    for j in 0..n {
        let y = (j as f64 + 0.5) / n as f64;
        for i in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            let z = (y * (2.0 * x - 1.0) / (1.0 - 2.0 * y)).clamp(0.0, 1.0);
            ensure!((h[j * n + i] - z).abs() <= 1e-14, "Fig2 at ({x}, {y})");
        }
    }
    let c = curves(1.0 / 3.0).map_err(|e| e.to_string())?;
    let spread =
        c.iter().cloned().fold(f64::MIN, f64::max) - c.iter().cloned().fold(f64::MAX, f64::min);
    ensure!(spread <= 1e-12, "Fig8 spread {spread:e}");
    Ok(format!(
        "masks exact at 512^2; Fig2 within 1e-14; Fig8 spread {spread:.1e}"
    ))
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, extra: &[&str]| -> Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let mut args = vec![
            "sinebound",
            "audit",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = sinebound_cli::run(args, &mut out, &mut err);
        if code != 2 {
            return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
        }
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let start = Instant::now();
    let a = run("a.json", &[])?;
    let b = run("b.json", &[])?;
    let one = run("one.json", &["--threads", "1"])?;
    let three = run("three.json", &["--threads", "3"])?;
    ensure!(a == b, "two runs differ");
    ensure!(a == one && a == three, "worker count changes the report");
    Ok(format!(
        "{} bytes identical across 4 runs (default, default, 1 and 3 workers), {:.1?}",
        a.len(),
        start.elapsed()
    ))
}

fn c11_performance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let params: Vec<BoundParams> = (0..1000)
        .map(|_| {
            let l: Vec<f64> = (0..3).map(|_| rng.random_range(0.01..0.99)).collect();
            BoundParams::from_slice(BoundForm::S3, &l)
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut acc = 0.0;
    for i in 0..1_000_000 {
        acc += eval_bound(BoundForm::S3, &params[i % params.len()])
            .map_err(|e| e.to_string())?
            .log_value;
    }
    let t = start.elapsed();
    std::hint::black_box(acc);
    ensure!(t <= Duration::from_secs(1), "1e6 evaluations took {t:?}");
    Ok(format!("1e6 S3 evaluations in {t:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("reflection identity", c1_reflection),
        ("special values", c2_special_values),
        ("validity sweep", c3_validity_sweep),
        ("verdict consistency", c4_verdicts),
        ("probe facts", c5_probe_facts),
        ("C413 audit", c6_c413),
        ("C47 audit", c7_c47),
        ("k-family constant", c8_k_family),
        ("figures", c9_figures),
        ("determinism", c10_determinism),
        ("performance", c11_performance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
