//! Argument handling for the `sinebound` binary. [`run`] never exits the
//! process, so it can be driven from tests.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use sinebound::audit::{
    any_validity_failed, audit_all, audit_claim, reports_to_json, AuditConfig, AuditReport, ClaimId,
};
use sinebound::bounds::{eval_bound, BoundForm, BoundParams, ParamVector};
use sinebound::compare::{
    compare_pq, compare_st, sin_compare, Relation, Sharper, Verdict, Witness,
};
use sinebound::regions::{emit, render, FigureId, Format};
use sinebound::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDITY_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sinebound",
    version,
    about = "Weighted sine-product bounds and claim audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one bound form
    Eval {
        /// Form tag, e.g. S3, T_yx, P2n, CorMain
        #[arg(long)]
        form: String,
        /// Comma-separated parameters
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Decide which of two bounds is sharper
    Compare {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Comma-separated parameters (sigma,tau,lam for `lemma`)
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Run claim audits and write the reports as JSON
    Audit {
        /// Audit one claim; all claims when omitted
        #[arg(long)]
        claim: Option<String>,
        /// Grid points per axis
        #[arg(long)]
        grid: Option<usize>,
        /// Random samples per audit
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Refinement rounds around the worst point
        #[arg(long)]
        refine: Option<u32>,
        /// Worker threads; results do not depend on it
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a figure's region data
    Region {
        #[arg(long)]
        figure: String,
        #[arg(long)]
        resolution: usize,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample the three 1D curves (same data as Fig8)
    Curves {
        #[arg(long)]
        resolution: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "ST")]
    St,
    #[value(name = "PQ")]
    Pq,
    #[value(name = "lemma")]
    Lemma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Pgm,
    Svg,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Pgm => Format::Pgm,
            FormatArg::Svg => Format::Svg,
        }
    }
}

/// Formats `v` with 17 significant digits, positional where that stays
/// readable and in exponent form otherwise.
pub fn fmt17(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..16).contains(&exp) {
        let s = format!("{:.*}", (16 - exp) as usize, v);
        // rounding may carry into a new leading digit
        if s.trim_start_matches('-')
            .replace('.', "")
            .trim_start_matches('0')
            .len()
            > 17
        {
            format!("{:.*}", (15 - exp).max(0) as usize, v)
        } else {
            s
        }
    } else {
        format!("{v:.16e}")
    }
}

/// Parses a comma-separated list of finite reals.
pub fn parse_params(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::Parse(format!("bad parameter `{t}`"))),
            }
        })
        .collect()
}

fn eval(form: &str, params: &str) -> Result<String, Error> {
    let form: BoundForm = form.parse()?;
    let values = parse_params(params)?;
    let b = eval_bound(form, &BoundParams::from_slice(form, &values)?)?;
    Ok(format!(
        "{{\"form\": \"{form}\", \"sigma\": {}, \"lam\": {}, \"arg\": {}, \"value\": {}, \"log_value\": {}}}",
        fmt17(b.sigma),
        fmt17(b.lam),
        fmt17(b.arg),
        fmt17(b.value()),
        fmt17(b.log_value)
    ))
}

fn verdict_line(v: &Verdict, names: [&str; 2]) -> String {
    let rel = match v.relation {
        Relation::FirstGE => ">=",
        Relation::SecondGE => "<=",
        Relation::Equal => "=",
    };
    let sharper = match v.sharper {
        Sharper::First => names[0],
        Sharper::Second => names[1],
        Sharper::Either => "either",
    };
    let mut parts = vec![format!("{} {rel} {}", names[0], names[1])];
    match v.witness {
        Witness::Cyclic {
            delta_n,
            two_lam_n_minus_1,
            ..
        } => {
            parts.push(format!("delta={}", fmt17(delta_n)));
            parts.push(format!("factor={}", fmt17(two_lam_n_minus_1)));
        }
        Witness::Paired {
            big_delta,
            big_sigma,
            ..
        } => {
            parts.push(format!("Delta={}", fmt17(big_delta)));
            parts.push(format!("Sigma={}", fmt17(big_sigma)));
        }
        Witness::Lemma(d) => {
            parts.push(format!("diff={}", fmt17(d.diff)));
            parts.push(format!("defect={}", fmt17(d.defect)));
        }
    }
    parts.push(format!("sharper={sharper}"));
    let d = v.witness.data();
    parts.push(format!("sigma={}", fmt17(d.sigma)));
    parts.push(format!("tau={}", fmt17(d.tau)));
    parts.push(format!("lam={}", fmt17(d.lam)));
    parts.join("; ")
}

fn compare(family: FamilyArg, params: &str) -> Result<String, Error> {
    let values = parse_params(params)?;
    match family {
        FamilyArg::St => Ok(verdict_line(
            &compare_st(&ParamVector::new(values)?)?,
            ["S", "T"],
        )),
        FamilyArg::Pq => Ok(verdict_line(
            &compare_pq(&ParamVector::new(values)?)?,
            ["P", "Q"],
        )),
        FamilyArg::Lemma => {
            let [s, t, l] = values[..] else {
                return Err(Error::Arity {
                    target: "lemma comparison".into(),
                    expected: "3 (sigma,tau,lam)".into(),
                    got: values.len(),
                });
            };
            Ok(verdict_line(&sin_compare(s, t, l)?, ["first", "second"]))
        }
    }
}

struct AuditArgs {
    claim: Option<String>,
    grid: Option<usize>,
    samples: Option<u64>,
    seed: Option<u64>,
    refine: Option<u32>,
    threads: Option<usize>,
    out: PathBuf,
}

fn audit(a: AuditArgs, out: &mut dyn Write) -> Result<Vec<AuditReport>, Error> {
    let d = AuditConfig::default();
    let cfg = AuditConfig {
        grid_per_dim: a.grid.unwrap_or(d.grid_per_dim),
        random_samples: a.samples.unwrap_or(d.random_samples),
        seed: a.seed.unwrap_or(d.seed),
        refine_depth: a.refine.unwrap_or(d.refine_depth),
        threads: a.threads,
        ..d
    };
    cfg.validate()?;
    let claim = a.claim.as_deref().map(str::parse::<ClaimId>).transpose()?;
    let reports = match claim {
        Some(c) => audit_claim(c, &cfg)?,
        None => audit_all(&cfg)?,
    };
    fs::write(&a.out, reports_to_json(&reports)?)?;
    for r in &reports {
        let gap = r.log_gap.map_or_else(|| "-".to_string(), fmt17);
        writeln!(out, "{} {:?} {:?} log_gap={gap}", r.claim, r.kind, r.status)?;
    }
    Ok(reports)
}

fn region(figure: FigureId, resolution: usize, format: Format, path: PathBuf) -> Result<(), Error> {
    let grid = render(figure, resolution)?;
    emit(&grid, format, &path)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Eval { form, params } => writeln!(out, "{}", eval(&form, &params)?)?,
        Command::Compare { family, params } => writeln!(out, "{}", compare(family, &params)?)?,
        Command::Audit {
            claim,
            grid,
            samples,
            seed,
            refine,
            threads,
            out: path,
        } => {
            let args = AuditArgs {
                claim,
                grid,
                samples,
                seed,
                refine,
                threads,
                out: path,
            };
            let reports = audit(args, out)?;
            if any_validity_failed(&reports) {
                return Ok(EXIT_VALIDITY_FAILED);
            }
        }
        Command::Region {
            figure,
            resolution,
            format,
            out: path,
        } => region(figure.parse()?, resolution, format.into(), path)?,
        Command::Curves {
            resolution,
            format,
            out: path,
        } => region(FigureId::Fig8, resolution, format.into(), path)?,
    }
    Ok(EXIT_OK)
}

/// Runs one invocation. Normal output goes to `out`, a one-line
/// diagnostic to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let text = e.render().to_string();
                    let first = text.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{first}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
