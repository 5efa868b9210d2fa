//! The claims registry: what each printed statement asserts, on which
//! domain, and how both of its sides are evaluated at a point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    gamma_lemma_sides, gamma_theorem_sides, lhs_family, lhs_general, rhs_general, BoundForm,
    Family, ParamVector, WeightedAngles,
};
use crate::compare::{sin_compare, stated_region, Sharper, StatedClaim};
use crate::error::{domain, Error, Result};
use crate::specfun::ln_sin_pi;

use super::AuditKind;

macro_rules! claim_ids {
    ($($variant:ident => $tag:literal),* $(,)?) => {
        /// One entry per printed inequality, table or figure caption.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub enum ClaimId {
            $($variant,)*
        }

        impl ClaimId {
            pub const ALL: &'static [ClaimId] = &[$(ClaimId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(ClaimId::$variant => $tag,)*
                }
            }
        }

        impl FromStr for ClaimId {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($tag => Ok(ClaimId::$variant),)*
                    _ => Err(Error::Parse(format!("unknown claim `{s}`"))),
                }
            }
        }
    };
}

claim_ids! {
    L21 => "L21",
    T31 => "T31",
    C32 => "C32",
    P33 => "P33",
    P34 => "P34",
    P35 => "P35",
    P36 => "P36",
    C37a => "C37a",
    C37b => "C37b",
    C44 => "C44",
    C45 => "C45",
    EqYsin => "EqYsin",
    C46table => "C46table",
    C47 => "C47",
    C48 => "C48",
    C49table => "C49table",
    C410 => "C410",
    C411 => "C411",
    C412 => "C412",
    C413 => "C413",
    Fig1 => "Fig1",
    Fig2 => "Fig2",
    Fig3 => "Fig3",
    Fig4 => "Fig4",
    Fig5 => "Fig5",
    Fig6 => "Fig6",
    Fig7 => "Fig7",
    Fig8 => "Fig8",
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl TryFrom<String> for ClaimId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ClaimId> for String {
    fn from(c: ClaimId) -> String {
        c.as_str().to_owned()
    }
}

/// Largest `k` probed for the k-family.
pub const KFAMILY_MAX_K: u32 = 6;

/// Largest parameter count probed for the variable-length families.
pub const FAMILY_MAX_N: usize = 6;

/// Where a claim's parameters live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// The open unit cube of the given dimension.
    Cube(usize),
    /// `0 < y <= hi`.
    Interval(f64),
    /// `(k, y)` with `k = 1..=kmax` and `0 < y < 1/k`.
    KFamily(u32),
    /// `n` angles then `n` weights in (0,1), `n = 1..=max`.
    Weighted(usize),
    /// `n` parameters in (0,1), `n = lo, lo + step, .., hi`.
    Chain { lo: usize, hi: usize, step: usize },
}

impl Domain {
    /// Fixed number of coordinates, `None` for the variable-length domains.
    pub fn dims(self) -> Option<usize> {
        match self {
            Domain::Cube(d) => Some(d),
            Domain::Interval(_) => Some(1),
            Domain::KFamily(_) => Some(2),
            Domain::Weighted(_) | Domain::Chain { .. } => None,
        }
    }

    /// Checks that `p` lies in the (open) domain.
    pub fn check(self, p: &[f64]) -> Result<()> {
        let arity = |expected: String| Error::Arity {
            target: "audit point".into(),
            expected,
            got: p.len(),
        };
        let unit = |v: &[f64]| match v.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
            Some(&bad) => Err(domain("point coordinate", bad, "0 < x < 1")),
            None => Ok(()),
        };
        match self {
            Domain::Cube(d) => {
                if p.len() != d {
                    return Err(arity(d.to_string()));
                }
                unit(p)
            }
            Domain::Interval(hi) => {
                if p.len() != 1 {
                    return Err(arity("1".into()));
                }
                if p[0] > 0.0 && p[0] <= hi {
                    Ok(())
                } else {
                    Err(domain("point coordinate", p[0], "0 < y <= upper end"))
                }
            }
            Domain::KFamily(kmax) => {
                if p.len() != 2 {
                    return Err(arity("2".into()));
                }
                let k = p[0];
                if !(k >= 1.0 && k <= kmax as f64 && k.fract() == 0.0) {
                    return Err(domain("k", k, "integer in the probed range"));
                }
                if p[1] > 0.0 && k * p[1] < 1.0 {
                    Ok(())
                } else {
                    Err(domain("y", p[1], "0 < y < 1/k"))
                }
            }
            Domain::Weighted(max) => {
                if p.is_empty() || !p.len().is_multiple_of(2) || p.len() / 2 > max {
                    return Err(arity(format!("2n values, n <= {max}")));
                }
                unit(p)
            }
            Domain::Chain { lo, hi, step } => {
                let n = p.len();
                if n < lo || n > hi || !(n - lo).is_multiple_of(step) {
                    return Err(arity(format!("{lo}..={hi} step {step}")));
                }
                unit(p)
            }
        }
    }
}

/// Both sides of a claim at one point, in log-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub lhs: f64,
    pub rhs: f64,
    /// Branch put forward by the statement, when it has one.
    pub stated: Option<BoundForm>,
    /// Branch that actually is the smallest, for optimality and captions.
    pub optimal: Option<BoundForm>,
    /// Caption region index, for the figure checks.
    pub region: Option<usize>,
}

impl Probe {
    fn plain(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            stated: None,
            optimal: None,
            region: None,
        }
    }

    pub fn log_gap(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// `ln(3 sqrt 3 / 8)`, the k = 2 constant.
fn ln_ysin_constant() -> f64 {
    (3.0 * 3f64.sqrt() / 8.0).ln()
}

impl ClaimId {
    pub fn domain(self) -> Domain {
        use ClaimId::*;
        match self {
            L21 | T31 | C32 => Domain::Weighted(FAMILY_MAX_N),
            P33 | P34 => Domain::Chain {
                lo: 2,
                hi: FAMILY_MAX_N,
                step: 2,
            },
            P35 | P36 | C37a | C37b => Domain::Chain {
                lo: 2,
                hi: FAMILY_MAX_N,
                step: 1,
            },
            C45 => Domain::KFamily(KFAMILY_MAX_K),
            EqYsin => Domain::Interval(0.25),
            C47 | C413 | Fig8 => Domain::Cube(1),
            C48 | C49table | Fig3 | Fig4 => Domain::Cube(3),
            C44 | C46table | C410 | C411 | C412 | Fig1 | Fig2 | Fig5 | Fig6 | Fig7 => {
                Domain::Cube(2)
            }
        }
    }

    pub fn is_caption(self) -> bool {
        use ClaimId::*;
        matches!(self, Fig1 | Fig2 | Fig3 | Fig4 | Fig5 | Fig6 | Fig7 | Fig8)
    }

    /// Claims that assert an inequality (as opposed to a table or caption).
    pub fn has_validity(self) -> bool {
        !self.is_caption() && !matches!(self, ClaimId::C46table | ClaimId::C49table)
    }

    /// Claims with a two-branch structure.
    pub fn has_optimality(self) -> bool {
        use ClaimId::*;
        matches!(self, C45 | C46table | C49table | C410 | C411 | C412 | C413)
    }

    /// Claims for which [`corrected_min`] is defined.
    pub fn has_corrected(self) -> bool {
        use ClaimId::*;
        matches!(self, C45 | C46table | C410 | C411 | C412 | C413)
    }

    pub fn supports(self, kind: AuditKind) -> bool {
        match kind {
            AuditKind::Validity => self.has_validity(),
            AuditKind::Optimality => self.has_optimality(),
            AuditKind::Table => self.is_caption(),
            AuditKind::Corrected => self.has_corrected(),
        }
    }

    /// Names of the tallied regions, indexed by [`Probe::region`]: caption
    /// regions for the figures, `k` for the k-family.
    pub fn region_names(self) -> &'static [&'static str] {
        use ClaimId::*;
        match self {
            C45 => &["k = 1", "k = 2", "k = 3", "k = 4", "k = 5", "k = 6"],
            Fig1 => &[
                "gray (x-1/2)(y-1/2) > 0: B sharper",
                "striped (x-1/2)(y-1/2) < 0: A sharper",
            ],
            Fig2 => &["surface z = y(2x-1)/(1-2y): S = T"],
            Fig3 => &[
                "light gray delta(2z-1) > 0, z < 1/2: T sharper",
                "dark gray delta(2z-1) > 0, z > 1/2: S sharper",
            ],
            Fig4 => &[
                "light gray delta(2z-1) < 0, z < 1/2: S sharper",
                "dark gray delta(2z-1) < 0, z > 1/2: T sharper",
            ],
            Fig5 => &[
                "gray (x-1/2)(z-1/2) >= 0: S(x,x,z) sharper",
                "striped (x-1/2)(z-1/2) <= 0: T(x,x,z) sharper",
            ],
            Fig6 => &[
                "gray (x+y-1)(2y-1) >= 0: S(x,y,y) sharper",
                "striped (x+y-1)(2y-1) <= 0: T(x,y,y) sharper",
            ],
            Fig7 => &[
                "gray (4xy-x-y)(2x-1) >= 0: S(x,y,x) sharper",
                "striped (4xy-x-y)(2x-1) <= 0: T(x,y,x) sharper",
            ],
            Fig8 => &[
                "x in (0,1/3]: gray curve sin(2 pi x(1-x)) lowest",
                "x in [1/3,1): black curve sin(pi(1+2x)/3) lowest",
            ],
            _ => &[],
        }
    }

    /// Fixed probes that are always evaluated and, when they violate,
    /// always kept in the counterexample list.
    pub fn anchors(self, kind: AuditKind) -> &'static [&'static [f64]] {
        use ClaimId::*;
        match (self, kind) {
            (C413, AuditKind::Validity) => &[&[0.5]],
            (C47, AuditKind::Validity) => &[&[0.5]],
            (EqYsin, AuditKind::Validity) => &[&[0.25]],
            (C46table, AuditKind::Optimality) => &[&[0.25, 0.25]],
            (C410, AuditKind::Optimality) => &[&[0.2, 0.3]],
            _ => &[],
        }
    }

    fn stated_claim(self) -> Option<StatedClaim> {
        use ClaimId::*;
        Some(match self {
            C46table => StatedClaim::C46,
            C49table => StatedClaim::C49,
            C410 => StatedClaim::C410,
            C411 => StatedClaim::C411,
            C412 => StatedClaim::C412,
            _ => return None,
        })
    }
}

fn log_of(form: BoundForm, args: &[f64]) -> Result<f64> {
    Ok(form.eval(args)?.log_value)
}

/// Smaller of two bounds by log value; ties go to the first.
fn min_of(a: BoundForm, b: BoundForm, args: &[f64]) -> Result<(f64, BoundForm)> {
    let (la, lb) = (log_of(a, args)?, log_of(b, args)?);
    Ok(if lb < la { (lb, b) } else { (la, a) })
}

fn weighted(p: &[f64]) -> Result<WeightedAngles> {
    let n = p.len() / 2;
    WeightedAngles::new(p[..n].to_vec(), p[n..].to_vec())
}

/// Left-hand side of a claim, in log-space.
fn lhs(claim: ClaimId, p: &[f64]) -> Result<f64> {
    use ClaimId::*;
    let l = ln_sin_pi;
    Ok(match claim {
        C32 => lhs_general(&weighted(p)?).0,
        P33 | P34 => lhs_family(Family::Paired, &ParamVector::new(p.to_vec())?)?.0,
        P35 | P36 => lhs_family(Family::Cyclic, &ParamVector::new(p.to_vec())?)?.0,
        C37a | C37b => lhs_family(Family::Doubled, &ParamVector::new(p.to_vec())?)?.0,
        C44 | C46table => p[1] * l(p[0]) + (1.0 - p[0]) * l(p[1]),
        C45 => {
            let (k, y) = (p[0], p[1]);
            l(k * y) + k * l(y)
        }
        EqYsin => l(2.0 * p[0]) + 2.0 * l(p[0]),
        C47 | C413 => l(p[0]),
        C48 => {
            let (x, y, z) = (p[0], p[1], p[2]);
            y * l(x) + z * l(y) + x * l(z)
        }
        C410 => (p[0] + p[1]) * l(p[0]) + p[0] * l(p[1]),
        C411 => p[1] * l(p[0]) + (p[0] + p[1]) * l(p[1]),
        C412 => (p[0] + p[1]) * l(p[0]) + p[0] * l(p[1]),
        L21 | T31 | C49table | Fig1 | Fig2 | Fig3 | Fig4 | Fig5 | Fig6 | Fig7 | Fig8 => {
            return Err(Error::Unsupported(format!(
                "{claim} has no sine-product left side"
            )))
        }
    })
}

/// The stated right-hand side, following the printed branch structure.
fn validity(claim: ClaimId, p: &[f64]) -> Result<Probe> {
    use BoundForm::*;
    use ClaimId::*;
    let single =
        |form: BoundForm| -> Result<Probe> { Ok(Probe::plain(lhs(claim, p)?, log_of(form, p)?)) };
    match claim {
        L21 => {
            let (l, r) = gamma_lemma_sides(&weighted(p)?)?;
            Ok(Probe::plain(l, r))
        }
        T31 => {
            let (l, r) = gamma_theorem_sides(&weighted(p)?)?;
            Ok(Probe::plain(l, r))
        }
        C32 => Ok(Probe::plain(
            lhs(claim, p)?,
            rhs_general(&weighted(p)?)?.log_value,
        )),
        P33 => single(P2n),
        P34 => single(Q2n),
        P35 => single(Sn),
        P36 => single(Tn),
        ClaimId::C37a => single(BoundForm::C37a),
        ClaimId::C37b => single(BoundForm::C37b),
        C44 | C48 => {
            let [a, b] = if claim == C44 { [A2, B2] } else { [S3, T3] };
            let (r, form) = min_of(a, b, p)?;
            Ok(Probe {
                optimal: Some(form),
                ..Probe::plain(lhs(claim, p)?, r)
            })
        }
        C45 => {
            let form = if 2.0 * p[0] * p[1] <= 1.0 {
                KFamA
            } else {
                KFamB
            };
            Ok(Probe {
                stated: Some(form),
                ..single(form)?
            })
        }
        EqYsin => Ok(Probe::plain(lhs(claim, p)?, ln_ysin_constant())),
        C47 => single(Diag),
        C410 | C411 | C412 => {
            let sc = claim.stated_claim().expect("two-branch claim");
            let form = stated_region(sc, p)?
                .form(sc)
                .unwrap_or(sc.branch_forms()[0]);
            Ok(Probe {
                stated: Some(form),
                ..single(form)?
            })
        }
        C413 => {
            let form = if 3.0 * p[0] <= 1.0 { OneDA } else { OneDC };
            Ok(Probe {
                stated: Some(form),
                ..single(form)?
            })
        }
        C46table | C49table | Fig1 | Fig2 | Fig3 | Fig4 | Fig5 | Fig6 | Fig7 | Fig8 => Err(
            Error::Unsupported(format!("{claim} has no inequality semantics")),
        ),
    }
}

/// Stated branch against the true minimum of two bounds with a common
/// total weight. `None` when the point is too close to the equality
/// manifold or on the stated switch.
fn branch_probe(
    first: BoundForm,
    second: BoundForm,
    args: &[f64],
    stated: Option<BoundForm>,
    region: Option<usize>,
    band: f64,
) -> Result<Option<Probe>> {
    let Some(stated) = stated else {
        return Ok(None);
    };
    let (a, b) = (first.eval(args)?, second.eval(args)?);
    let v = sin_compare(a.sigma, b.sigma, a.lam)?;
    if v.near_boundary(band) {
        return Ok(None);
    }
    let optimal = match v.sharper {
        Sharper::First => first,
        Sharper::Second => second,
        Sharper::Either => return Ok(None),
    };
    let log = |f: BoundForm| if f == first { a.log_value } else { b.log_value };
    Ok(Some(Probe {
        lhs: log(stated),
        rhs: log(optimal),
        stated: Some(stated),
        optimal: Some(optimal),
        region,
    }))
}

fn optimality(claim: ClaimId, p: &[f64], band: f64) -> Result<Option<Probe>> {
    use BoundForm::*;
    use ClaimId::*;
    match claim {
        C45 => {
            let t = 2.0 * p[0] * p[1];
            let stated = (t != 1.0).then_some(if t < 1.0 { KFamA } else { KFamB });
            // tallied per k
            let region = Some(p[0] as usize - 1);
            branch_probe(KFamA, KFamB, p, stated, region, band)
        }
        C413 => {
            let t = 3.0 * p[0];
            let stated = (t != 1.0).then_some(if t < 1.0 { OneDA } else { OneDC });
            branch_probe(OneDA, OneDC, p, stated, None, band)
        }
        _ => match claim.stated_claim() {
            Some(sc) => {
                let [a, b] = sc.branch_forms();
                let stated = stated_region(sc, p)?.form(sc);
                branch_probe(a, b, p, stated, None, band)
            }
            None => Err(Error::Unsupported(format!(
                "{claim} has no two-branch structure"
            ))),
        },
    }
}

/// Sign of a region predicate: region 0 when positive, 1 when negative.
fn sign_region(v: f64) -> Option<usize> {
    if v > 0.0 {
        Some(0)
    } else if v < 0.0 {
        Some(1)
    } else {
        None
    }
}

fn caption(claim: ClaimId, p: &[f64], band: f64, margin: f64) -> Result<Option<Probe>> {
    use BoundForm::*;
    use ClaimId::*;
    let pick = |r: Option<usize>, forms: [BoundForm; 2]| r.map(|i| forms[i]);
    match claim {
        Fig1 => {
            let r = sign_region((p[0] - 0.5) * (p[1] - 0.5));
            branch_probe(A2, B2, p, pick(r, [B2, A2]), r, band)
        }
        Fig2 => {
            let (x, y) = (p[0], p[1]);
            let z = y * (2.0 * x - 1.0) / (1.0 - 2.0 * y);
            if !(z >= margin && z <= 1.0 - margin) {
                return Ok(None);
            }
            let (s, t) = (log_of(S3, &[x, y, z])?, log_of(T3, &[x, y, z])?);
            Ok(Some(Probe {
                region: Some(0),
                ..Probe::plain(s.max(t), s.min(t))
            }))
        }
        Fig3 | Fig4 => {
            let (x, y, z) = (p[0], p[1], p[2]);
            let d = (y * (1.0 - 2.0 * x) + z * (1.0 - 2.0 * y)) * (2.0 * z - 1.0);
            let inside = if claim == Fig3 { d > 0.0 } else { d < 0.0 };
            let r = if !inside || z == 0.5 {
                None
            } else {
                Some(usize::from(z > 0.5))
            };
            let forms = if claim == Fig3 { [T3, S3] } else { [S3, T3] };
            branch_probe(S3, T3, p, pick(r, forms), r, band)
        }
        Fig5 | Fig6 | Fig7 => {
            let (x, y) = (p[0], p[1]);
            let (pred, forms) = match claim {
                Fig5 => ((x - 0.5) * (y - 0.5), [SYx, TYx]),
                Fig6 => ((x + y - 1.0) * (2.0 * y - 1.0), [SZy, TZy]),
                _ => ((4.0 * x * y - x - y) * (2.0 * x - 1.0), [SZx, TZx]),
            };
            let r = sign_region(pred);
            branch_probe(forms[0], forms[1], p, pick(r, forms), r, band)
        }
        Fig8 => {
            let r = sign_region(1.0 - 3.0 * p[0]);
            let Some(region) = r else {
                return Ok(None);
            };
            let asserted = [OneDA, OneDC][region];
            // lowest of the three curves; all share lam = 1
            let forms = [OneDA, OneDB, OneDC];
            let logs = [log_of(OneDA, p)?, log_of(OneDB, p)?, log_of(OneDC, p)?];
            let low = (1..3).fold(0, |m, i| if logs[i] < logs[m] { i } else { m });
            let lowest = forms[low];
            if lowest == asserted {
                return Ok(Some(Probe {
                    stated: Some(asserted),
                    optimal: Some(asserted),
                    region: r,
                    ..Probe::plain(logs[low], logs[low])
                }));
            }
            branch_probe(asserted, lowest, p, Some(asserted), r, band)
        }
        _ => Err(Error::Unsupported(format!(
            "{claim} is not a figure caption"
        ))),
    }
}

/// The true pointwise minimum over a claim's valid candidate bounds.
///
/// Returns the value (not its log) and the candidate attaining it.
pub fn corrected_min(claim: ClaimId, point: &[f64]) -> Result<(f64, BoundForm)> {
    let (log, form) = corrected_log(claim, point)?;
    Ok((log.exp(), form))
}

fn corrected_log(claim: ClaimId, p: &[f64]) -> Result<(f64, BoundForm)> {
    use BoundForm::*;
    use ClaimId::*;
    let [a, b] = match claim {
        C45 => [KFamA, KFamB],
        C46table => [A2, B2],
        C410 => [SYx, TYx],
        C411 => [SZy, TZy],
        C412 => [SZx, TZx],
        C413 => [OneDA, OneDB],
        _ => {
            return Err(Error::Unsupported(format!(
                "{claim} has no corrected variant"
            )))
        }
    };
    claim.domain().check(p)?;
    min_of(a, b, p)
}

/// Evaluates one probe of `claim` for the given audit kind.
///
/// `Ok(None)` means the point was skipped: outside a caption region,
/// on a stated switch, or within `band` of an equality manifold.
pub fn evaluate(
    claim: ClaimId,
    kind: AuditKind,
    point: &[f64],
    band: f64,
    margin: f64,
) -> Result<Option<Probe>> {
    if !claim.supports(kind) {
        return Err(Error::Unsupported(format!("{claim} has no {kind:?} audit")));
    }
    claim.domain().check(point)?;
    match kind {
        AuditKind::Validity => validity(claim, point).map(Some),
        AuditKind::Optimality => optimality(claim, point, band),
        AuditKind::Table => caption(claim, point, band, margin),
        AuditKind::Corrected => {
            let (rhs, form) = corrected_log(claim, point)?;
            Ok(Some(Probe {
                optimal: Some(form),
                ..Probe::plain(lhs(claim, point)?, rhs)
            }))
        }
    }
}
