//! Sharpness verdicts between two bounds sharing a total weight.
//!
//! Two bounds `sin(pi s/l)^l` and `sin(pi t/l)^l` compare like their
//! argument fractions' distance from 1/2, so the sign of
//! `(s - t)(s + t - l)` decides which is larger. Every verdict here is
//! computed from such a polynomial sign, never from the floating values of
//! the bounds themselves.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundForm, ParamVector};
use crate::error::{domain, Error, Result};

/// Which of the two bounds is larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    FirstGE,
    SecondGE,
    Equal,
}

/// The smaller (sharper) bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sharper {
    First,
    Second,
    Either,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonData {
    pub sigma: f64,
    pub tau: f64,
    pub lam: f64,
    pub diff: f64,
    pub defect: f64,
    pub criterion: f64,
}

/// Algebraic witnesses behind a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Witness {
    Lemma(ComparisonData),
    /// `delta_n = sum l_{i+1}(1 - 2 l_i)` and `2 l_n - 1`.
    Cyclic {
        delta_n: f64,
        two_lam_n_minus_1: f64,
        #[serde(flatten)]
        data: ComparisonData,
    },
    /// `Delta_n = sum l_{2i-1}(2 l_{2i} - 1)`,
    /// `Sigma_n = sum (1 - l_{2i})(2 l_{2i-1} - 1)`.
    Paired {
        big_delta: f64,
        big_sigma: f64,
        #[serde(flatten)]
        data: ComparisonData,
    },
}

impl Witness {
    pub fn data(&self) -> &ComparisonData {
        match self {
            Witness::Lemma(d) => d,
            Witness::Cyclic { data, .. } | Witness::Paired { data, .. } => data,
        }
    }

    /// The product whose sign decides the verdict.
    pub fn criterion(&self) -> f64 {
        match *self {
            Witness::Lemma(d) => d.criterion,
            Witness::Cyclic {
                delta_n,
                two_lam_n_minus_1,
                ..
            } => delta_n * two_lam_n_minus_1,
            Witness::Paired {
                big_delta,
                big_sigma,
                ..
            } => big_delta * big_sigma,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub relation: Relation,
    pub sharper: Sharper,
    pub witness: Witness,
}

impl Verdict {
    /// `|criterion| <= band`: too close to the equality manifold to trust a
    /// floating-point sign.
    pub fn near_boundary(&self, band: f64) -> bool {
        self.witness.criterion().abs() <= band
    }
}

/// Relation from the signs of two factors whose product is `<= 0` exactly
/// when the first bound is the larger one.
fn relation_from_factors(a: f64, b: f64) -> Relation {
    match (a.partial_cmp(&0.0), b.partial_cmp(&0.0)) {
        (Some(Ordering::Equal), _) | (_, Some(Ordering::Equal)) => Relation::Equal,
        (Some(sa), Some(sb)) if sa != sb => Relation::FirstGE,
        _ => Relation::SecondGE,
    }
}

fn sharper_of(relation: Relation) -> Sharper {
    match relation {
        Relation::FirstGE => Sharper::Second,
        Relation::SecondGE => Sharper::First,
        Relation::Equal => Sharper::Either,
    }
}

fn comparison_data(sigma: f64, tau: f64, lam: f64) -> ComparisonData {
    let diff = sigma - tau;
    let defect = sigma + tau - lam;
    ComparisonData {
        sigma,
        tau,
        lam,
        diff,
        defect,
        criterion: diff * defect,
    }
}

/// Compares `sin(pi sigma/lam)` against `sin(pi tau/lam)`.
pub fn sin_compare(sigma: f64, tau: f64, lam: f64) -> Result<Verdict> {
    if !(lam > 0.0 && lam.is_finite()) {
        return Err(domain("lam", lam, "lam > 0"));
    }
    for (what, v) in [("sigma", sigma), ("tau", tau)] {
        if !(v > 0.0 && v < lam) {
            return Err(domain(what, v, "0 < value < lam"));
        }
    }
    let data = comparison_data(sigma, tau, lam);
    let relation = relation_from_factors(data.diff, data.defect);
    Ok(Verdict {
        relation,
        sharper: sharper_of(relation),
        witness: Witness::Lemma(data),
    })
}

fn bound_data(first: BoundForm, second: BoundForm, l: &[f64]) -> Result<ComparisonData> {
    let s = first.eval(l)?;
    let t = second.eval(l)?;
    Ok(comparison_data(s.sigma, t.sigma, s.lam))
}

/// `Sn` against `Tn`: `S >= T` iff `delta_n (2 l_n - 1) <= 0`.
pub fn compare_st(params: &ParamVector) -> Result<Verdict> {
    let l = params.as_slice();
    if l.len() < 2 {
        return Err(Error::Arity {
            target: "S/T comparison".into(),
            expected: "at least 2".into(),
            got: l.len(),
        });
    }
    let delta_n: f64 = l.windows(2).map(|w| w[1] * (1.0 - 2.0 * w[0])).sum();
    let factor = 2.0 * l[l.len() - 1] - 1.0;
    let relation = relation_from_factors(delta_n, factor);
    Ok(Verdict {
        relation,
        sharper: sharper_of(relation),
        witness: Witness::Cyclic {
            delta_n,
            two_lam_n_minus_1: factor,
            data: bound_data(BoundForm::Sn, BoundForm::Tn, l)?,
        },
    })
}

/// `P2n` against `Q2n`: `P >= Q` iff `Delta_n Sigma_n <= 0`.
pub fn compare_pq(params: &ParamVector) -> Result<Verdict> {
    let l = params.as_slice();
    if !l.len().is_multiple_of(2) {
        return Err(Error::Arity {
            target: "P/Q comparison".into(),
            expected: "an even number >= 2".into(),
            got: l.len(),
        });
    }
    let big_delta: f64 = l.chunks(2).map(|p| p[0] * (2.0 * p[1] - 1.0)).sum();
    let big_sigma: f64 = l.chunks(2).map(|p| (1.0 - p[1]) * (2.0 * p[0] - 1.0)).sum();
    let relation = relation_from_factors(big_delta, big_sigma);
    Ok(Verdict {
        relation,
        sharper: sharper_of(relation),
        witness: Witness::Paired {
            big_delta,
            big_sigma,
            data: bound_data(BoundForm::P2n, BoundForm::Q2n, l)?,
        },
    })
}

/// Two-branch statements whose printed region predicates are encoded
/// verbatim by [`stated_region`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatedClaim {
    /// Two-angle table: `A < B` if `(x-1/2)(y-1/2) < 0`, `A > B` if `> 0`.
    C46,
    /// Three-angle table on the signs of `z - 1/2` and
    /// `delta = y(1-2x) + z(1-2y)`.
    C49,
    /// `S(x,x,z)` if `(x-1/2)(z-1/2) >= 0`, else `T(x,x,z)`.
    C410,
    /// `S(x,y,y)` if `(x+y-1)(2y-1) >= 0`, else `T(x,y,y)`.
    C411,
    /// `S(x,y,x)` if `(4xy-x-y)(2x-1) >= 0`, else `T(x,y,x)`.
    C412,
}

impl StatedClaim {
    pub const ALL: [StatedClaim; 5] = [
        StatedClaim::C46,
        StatedClaim::C49,
        StatedClaim::C410,
        StatedClaim::C411,
        StatedClaim::C412,
    ];

    pub fn dims(self) -> usize {
        match self {
            StatedClaim::C49 => 3,
            _ => 2,
        }
    }

    /// The bound each branch puts forward as the sharper (smaller) one.
    ///
    /// For the tables, `Branch1` collects the rows asserting the first
    /// bound is smaller (`A < B`, resp. `S < T`) and `Branch2` the rows
    /// asserting the opposite.
    pub fn branch_forms(self) -> [BoundForm; 2] {
        use BoundForm::*;
        match self {
            StatedClaim::C46 => [A2, B2],
            StatedClaim::C49 => [S3, T3],
            StatedClaim::C410 => [SYx, TYx],
            StatedClaim::C411 => [SZy, TZy],
            StatedClaim::C412 => [SZx, TZx],
        }
    }
}

impl FromStr for StatedClaim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "C46" => StatedClaim::C46,
            "C49" => StatedClaim::C49,
            "C410" => StatedClaim::C410,
            "C411" => StatedClaim::C411,
            "C412" => StatedClaim::C412,
            _ => return Err(Error::Parse(format!("unknown stated claim `{s}`"))),
        })
    }
}

impl fmt::Display for StatedClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Branch1,
    Branch2,
    Boundary,
}

impl Region {
    /// The form this region puts forward, `None` on the boundary.
    pub fn form(self, claim: StatedClaim) -> Option<BoundForm> {
        let [a, b] = claim.branch_forms();
        match self {
            Region::Branch1 => Some(a),
            Region::Branch2 => Some(b),
            Region::Boundary => None,
        }
    }
}

/// Evaluates the region predicate as printed, without checking whether
/// the selected branch really is the smaller bound.
pub fn stated_region(claim: StatedClaim, point: &[f64]) -> Result<Region> {
    if point.len() != claim.dims() {
        return Err(Error::Arity {
            target: format!("{claim} region"),
            expected: claim.dims().to_string(),
            got: point.len(),
        });
    }
    if let Some(&v) = point.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
        return Err(domain("point coordinate", v, "0 < x < 1"));
    }
    let (x, y) = (point[0], point[1]);
    let region = match claim {
        StatedClaim::C46 => {
            let p = (x - 0.5) * (y - 0.5);
            if p < 0.0 {
                Region::Branch1
            } else if p > 0.0 {
                Region::Branch2
            } else {
                Region::Boundary
            }
        }
        StatedClaim::C49 => {
            let z = point[2];
            let delta = y * (1.0 - 2.0 * x) + z * (1.0 - 2.0 * y);
            if z == 0.5 || delta == 0.0 {
                Region::Boundary
            } else if (z < 0.5) == (delta > 0.0) {
                // rows "S > T": T asserted sharper
                Region::Branch2
            } else {
                Region::Branch1
            }
        }
        StatedClaim::C410 | StatedClaim::C411 | StatedClaim::C412 => {
            let p = match claim {
                StatedClaim::C410 => (x - 0.5) * (y - 0.5),
                StatedClaim::C411 => (x + y - 1.0) * (2.0 * y - 1.0),
                _ => (4.0 * x * y - x - y) * (2.0 * x - 1.0),
            };
            if p > 0.0 {
                Region::Branch1
            } else if p < 0.0 {
                Region::Branch2
            } else {
                Region::Boundary
            }
        }
    };
    Ok(region)
}
