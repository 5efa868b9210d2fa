//! Left-hand sine products and their right-hand bounds, all carried in the
//! canonical shape `sin(pi * sigma / lam)^lam` and evaluated in log-space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{compensated_sum, ln_gamma, ln_sin_pi};

/// Angles `a_i` in (0,1) with positive weights `w_i = 1/p_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedAngles {
    angles: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedAngles {
    /// Weights restricted to (0,1), i.e. exponents `1 < p_i < inf`.
    pub fn new(angles: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        let wa = Self::with_positive_weights(angles, weights)?;
        if let Some(&w) = wa.weights.iter().find(|&&w| w >= 1.0) {
            return Err(domain("weight", w, "0 < w < 1 (exponent p > 1)"));
        }
        Ok(wa)
    }

    /// Any finite positive weights; the log-concavity bound still holds.
    pub fn with_positive_weights(angles: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if angles.is_empty() || angles.len() != weights.len() {
            return Err(Error::Arity {
                target: "weighted angles".into(),
                expected: format!("{} weights, at least one", angles.len()),
                got: weights.len(),
            });
        }
        check_unit(&angles, "angle")?;
        if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(domain("weight", w, "finite w > 0"));
        }
        Ok(Self { angles, weights })
    }

    /// From Hölder exponents `p_i > 1`.
    pub fn from_exponents(angles: Vec<f64>, exponents: &[f64]) -> Result<Self> {
        if let Some(&p) = exponents.iter().find(|p| !(p.is_finite() && **p > 1.0)) {
            return Err(domain("exponent", p, "1 < p < inf"));
        }
        Self::new(angles, exponents.iter().map(|p| 1.0 / p).collect())
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// `sum w_i`, the `1/p` of the general bound.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `sum w_i a_i`.
    pub fn weighted_sum(&self) -> f64 {
        self.angles
            .iter()
            .zip(&self.weights)
            .map(|(a, w)| a * w)
            .sum()
    }

    /// Convex combination of the angles; lies in (0,1).
    pub fn mean_angle(&self) -> f64 {
        self.weighted_sum() / self.total_weight()
    }
}

/// Parameters `lambda_1..lambda_n`, each in (0,1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Arity {
                target: "parameter vector".into(),
                expected: "at least 1".into(),
                got: 0,
            });
        }
        check_unit(&values, "parameter")?;
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<f64>> for ParamVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ParamVector> for Vec<f64> {
    fn from(p: ParamVector) -> Vec<f64> {
        p.0
    }
}

fn check_unit(values: &[f64], what: &'static str) -> Result<()> {
    match values.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
        Some(&v) => Err(domain(what, v, "0 < x < 1")),
        None => Ok(()),
    }
}

/// A bound in canonical form `sin(pi * sigma / lam)^lam`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SineBound {
    pub sigma: f64,
    pub lam: f64,
    pub arg: f64,
    pub log_value: f64,
}

impl SineBound {
    /// Fails if `sigma / lam` leaves (0,1); the value is never clamped.
    pub fn new(sigma: f64, lam: f64) -> Result<Self> {
        Self::with_complement(sigma, lam - sigma, lam)
    }

    /// Like [`SineBound::new`], with `lam - sigma` supplied separately.
    ///
    /// When `sigma / lam` is close to 1 the sine is evaluated from the
    /// complement, which the polynomial forms compute without cancellation.
    pub fn with_complement(sigma: f64, complement: f64, lam: f64) -> Result<Self> {
        let arg = sigma / lam;
        if !(lam > 0.0
            && lam.is_finite()
            && arg > 0.0
            && arg < 1.0
            && sigma > 0.0
            && complement > 0.0)
        {
            return Err(Error::Invariant(format!(
                "argument fraction sigma/lam = {sigma}/{lam} outside (0,1)"
            )));
        }
        let reduced = sigma.min(complement) / lam;
        Ok(Self {
            sigma,
            lam,
            arg,
            log_value: lam * ln_sin_pi(reduced),
        })
    }

    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

/// Log of a left-hand product. Always `<= 0` on the open cube.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct LogValue(pub f64);

impl LogValue {
    pub fn value(self) -> f64 {
        self.0.exp()
    }
}

/// Parameter count accepted by a [`BoundForm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    Exact(usize),
    AtLeast(usize),
    /// Even count, at least the given number.
    Even(usize),
    /// `a_1..a_n, w_1..w_n`.
    Weighted,
    /// `k, y` with integer `k >= 1`, `0 < y < 1/k`.
    KFamily,
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arity::Exact(n) => write!(f, "exactly {n}"),
            Arity::AtLeast(n) => write!(f, "at least {n}"),
            Arity::Even(n) => write!(f, "an even number >= {n}"),
            Arity::Weighted => write!(f, "2n (angles then weights)"),
            Arity::KFamily => write!(f, "2 (k, y)"),
        }
    }
}

macro_rules! bound_forms {
    ($($variant:ident => $tag:literal, $arity:expr;)*) => {
        /// Every right-hand bound shape. Each knows its arity and its
        /// `(sigma, lam)` formulas.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum BoundForm {
            $(#[serde(rename = $tag)] $variant,)*
        }

        impl BoundForm {
            pub const ALL: &'static [BoundForm] = &[$(BoundForm::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self { $(BoundForm::$variant => $tag,)* }
            }

            pub fn arity(self) -> Arity {
                match self { $(BoundForm::$variant => $arity,)* }
            }
        }

        impl FromStr for BoundForm {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($tag => Ok(BoundForm::$variant),)*
                    _ => Err(Error::Parse(format!("unknown bound form `{s}`"))),
                }
            }
        }
    };
}

bound_forms! {
    CorMain => "CorMain", Arity::Weighted;
    P2n => "P2n", Arity::Even(2);
    Q2n => "Q2n", Arity::Even(2);
    Sn => "Sn", Arity::AtLeast(2);
    Tn => "Tn", Arity::AtLeast(2);
    C37a => "C37a", Arity::AtLeast(2);
    C37b => "C37b", Arity::AtLeast(2);
    A2 => "A2", Arity::Exact(2);
    B2 => "B2", Arity::Exact(2);
    S3 => "S3", Arity::Exact(3);
    T3 => "T3", Arity::Exact(3);
    SYx => "S_yx", Arity::Exact(2);
    TYx => "T_yx", Arity::Exact(2);
    SZy => "S_zy", Arity::Exact(2);
    TZy => "T_zy", Arity::Exact(2);
    SZx => "S_zx", Arity::Exact(2);
    TZx => "T_zx", Arity::Exact(2);
    KFamA => "KFam_A", Arity::KFamily;
    KFamB => "KFam_B", Arity::KFamily;
    Diag => "Diag", Arity::Exact(1);
    OneDA => "OneD_a", Arity::Exact(1);
    OneDB => "OneD_b", Arity::Exact(1);
    OneDC => "OneD_c", Arity::Exact(1);
}

impl fmt::Display for BoundForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Validated parameters for [`eval_bound`].
#[derive(Debug, Clone, PartialEq)]
pub enum BoundParams {
    Lambdas(ParamVector),
    Weighted(WeightedAngles),
    KFamily { k: u32, y: f64 },
}

impl BoundParams {
    /// Interprets a flat list the way `form` expects it.
    pub fn from_slice(form: BoundForm, values: &[f64]) -> Result<Self> {
        form.check_arity(values)?;
        match form.arity() {
            Arity::Weighted => {
                let n = values.len() / 2;
                Ok(BoundParams::Weighted(WeightedAngles::new(
                    values[..n].to_vec(),
                    values[n..].to_vec(),
                )?))
            }
            Arity::KFamily => {
                let (k, y) = kfamily_args(values)?;
                Ok(BoundParams::KFamily { k, y })
            }
            _ => Ok(BoundParams::Lambdas(ParamVector::new(values.to_vec())?)),
        }
    }
}

fn kfamily_args(values: &[f64]) -> Result<(u32, f64)> {
    let (k, y) = (values[0], values[1]);
    if !(k >= 1.0 && k.fract() == 0.0 && k <= u32::MAX as f64) {
        return Err(domain("k", k, "integer k >= 1"));
    }
    if !(y > 0.0 && y * k < 1.0) {
        return Err(domain("y", y, "0 < y < 1/k"));
    }
    Ok((k as u32, y))
}

impl BoundForm {
    pub fn check_arity(self, values: &[f64]) -> Result<()> {
        let n = values.len();
        let ok = match self.arity() {
            Arity::Exact(m) => n == m,
            Arity::AtLeast(m) => n >= m,
            Arity::Even(m) => n >= m && n.is_multiple_of(2),
            Arity::Weighted => n >= 2 && n.is_multiple_of(2),
            Arity::KFamily => n == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Arity {
                target: self.as_str().into(),
                expected: self.arity().to_string(),
                got: n,
            })
        }
    }

    /// Evaluates the form on a flat parameter slice, validating arity and
    /// ranges. This is the allocation-free path used by the auditor.
    pub fn eval(self, values: &[f64]) -> Result<SineBound> {
        self.check_arity(values)?;
        match self.arity() {
            Arity::Weighted => {
                let n = values.len() / 2;
                let (a, w) = values.split_at(n);
                check_unit(a, "angle")?;
                check_unit(w, "weight")?;
                let lam: f64 = w.iter().sum();
                let sigma: f64 = a.iter().zip(w).map(|(a, w)| a * w).sum();
                let complement: f64 = a.iter().zip(w).map(|(a, w)| (1.0 - a) * w).sum();
                SineBound::with_complement(sigma, complement, lam)
            }
            Arity::KFamily => {
                let (k, y) = kfamily_args(values)?;
                let k = k as f64;
                match self {
                    BoundForm::KFamA => SineBound::with_complement(1.0, k, k + 1.0),
                    _ => SineBound::new(2.0 * k * y, k + 1.0),
                }
            }
            _ => {
                check_unit(values, "parameter")?;
                let (sigma, complement, lam) = self.numerators_and_weight(values);
                SineBound::with_complement(sigma, complement, lam)
            }
        }
    }

    /// `(sigma, lam - sigma, lam)` for the polynomial forms; caller has
    /// checked arity. Each form is an instance of the weighted-angle bound
    /// with `sigma = sum w_i a_i`, so the complement `sum w_i (1 - a_i)` is
    /// written out as a sum of non-negative terms too.
    fn numerators_and_weight(self, l: &[f64]) -> (f64, f64, f64) {
        use BoundForm::*;
        let n = l.len();
        let (first, last) = (l[0], l[n - 1]);
        let sum = compensated_sum(l);
        let chain =
            |f: &dyn Fn(f64, f64) -> f64| -> f64 { l.windows(2).map(|w| f(w[0], w[1])).sum() };
        let keep = |a: f64, b: f64| b * (1.0 - a);
        let flip = |a: f64, b: f64| b * a;
        match self {
            Sn => (
                chain(&keep) + first * last,
                first * (1.0 - last) + chain(&flip),
                sum,
            ),
            Tn => (
                chain(&flip) + first * last,
                first * (1.0 - last) + chain(&keep),
                sum,
            ),
            P2n => (
                l.chunks(2).map(|p| p[0]).sum(),
                l.chunks(2).map(|p| 1.0 - p[1]).sum(),
                paired_weight(l),
            ),
            Q2n => (
                2.0 * l.chunks(2).map(|p| p[0] * (1.0 - p[1])).sum::<f64>(),
                l.chunks(2)
                    .map(|p| (1.0 - p[1]) * (1.0 - p[0]) + p[0] * p[1])
                    .sum(),
                paired_weight(l),
            ),
            C37a => (
                chain(&keep) + last * (first + 1.0 - last),
                first * (1.0 - last) + chain(&flip) + last * last,
                sum + last,
            ),
            C37b => (
                chain(&flip) + last * (first + last),
                first * (1.0 - last) + chain(&keep) + last * (1.0 - last),
                sum + last,
            ),
            A2 => (l[1], 1.0 - l[0], 1.0 - l[0] + l[1]),
            B2 => {
                let (x, y) = (l[0], l[1]);
                (
                    2.0 * y * (1.0 - x),
                    (1.0 - x) * (1.0 - y) + x * y,
                    1.0 - x + y,
                )
            }
            S3 => {
                let (x, y, z) = (l[0], l[1], l[2]);
                (
                    y * (1.0 - x) + z * (1.0 - y) + x * z,
                    x * (1.0 - z) + x * y + y * z,
                    compensated_sum(l),
                )
            }
            T3 => {
                let (x, y, z) = (l[0], l[1], l[2]);
                (
                    x * y + y * z + x * z,
                    x * (1.0 - z) + y * (1.0 - x) + z * (1.0 - y),
                    compensated_sum(l),
                )
            }
            // Two-variable slices of the three-angle pair.
            SYx => S3.numerators_and_weight(&[l[0], l[0], l[1]]),
            TYx => T3.numerators_and_weight(&[l[0], l[0], l[1]]),
            SZy => S3.numerators_and_weight(&[l[0], l[1], l[1]]),
            TZy => T3.numerators_and_weight(&[l[0], l[1], l[1]]),
            SZx => S3.numerators_and_weight(&[l[0], l[1], l[0]]),
            TZx => T3.numerators_and_weight(&[l[0], l[1], l[0]]),
            Diag | OneDA => {
                let x = l[0];
                (2.0 * x * (1.0 - x), x * x + (1.0 - x) * (1.0 - x), 1.0)
            }
            OneDB => ((1.0 + l[0]) / 3.0, (2.0 - l[0]) / 3.0, 1.0),
            OneDC => ((1.0 + 2.0 * l[0]) / 3.0, 2.0 * (1.0 - l[0]) / 3.0, 1.0),
            CorMain | KFamA | KFamB => unreachable!("handled by eval"),
        }
    }
}

fn paired_weight(l: &[f64]) -> f64 {
    l.chunks(2).map(|p| (1.0 - p[1]) + p[0]).sum()
}

/// Evaluates `form` on already-validated parameters.
pub fn eval_bound(form: BoundForm, params: &BoundParams) -> Result<SineBound> {
    match (form.arity(), params) {
        (Arity::Weighted, BoundParams::Weighted(wa)) => rhs_general(wa),
        (Arity::KFamily, BoundParams::KFamily { k, y }) => form.eval(&[*k as f64, *y]),
        (Arity::Weighted | Arity::KFamily, _)
        | (_, BoundParams::Weighted(_))
        | (_, BoundParams::KFamily { .. }) => Err(Error::Arity {
            target: form.as_str().into(),
            expected: form.arity().to_string(),
            got: 0,
        }),
        (_, BoundParams::Lambdas(p)) => form.eval(p.as_slice()),
    }
}

/// `sum w_i ln sin(pi a_i)`.
pub fn lhs_general(wa: &WeightedAngles) -> LogValue {
    LogValue(
        wa.angles
            .iter()
            .zip(&wa.weights)
            .map(|(&a, &w)| w * ln_sin_pi(a))
            .sum(),
    )
}

/// The single-sine bound with `sigma = sum w_i a_i`, `lam = sum w_i`.
pub fn rhs_general(wa: &WeightedAngles) -> Result<SineBound> {
    SineBound::new(wa.weighted_sum(), wa.total_weight())
}

fn require_holder_weights(wa: &WeightedAngles) -> Result<()> {
    match wa.weights.iter().find(|&&w| w >= 1.0) {
        Some(&w) => Err(domain("weight", w, "0 < w < 1 (exponent p > 1)")),
        None => Ok(()),
    }
}

/// Log of both sides of the Gamma log-convexity inequality
/// `Gamma(sum q_i a_i) <= prod Gamma(a_i)^{q_i}` with `q_i = p / p_i`.
pub fn gamma_lemma_sides(wa: &WeightedAngles) -> Result<(f64, f64)> {
    require_holder_weights(wa)?;
    let lam = wa.total_weight();
    let mut mean = 0.0;
    let mut right = 0.0;
    for (&a, &w) in wa.angles.iter().zip(&wa.weights) {
        let q = w / lam;
        mean += q * a;
        right += q * ln_gamma(a);
    }
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must be rejected too
    if !(mean > 0.0) {
        return Err(domain("Gamma argument", mean, "x > 0 (pole at 0)"));
    }
    Ok((ln_gamma(mean), right))
}

/// Log of both sides of the paired Gamma inequality applied to `a_i` and
/// `1 - a_i` and multiplied together.
pub fn gamma_theorem_sides(wa: &WeightedAngles) -> Result<(f64, f64)> {
    require_holder_weights(wa)?;
    let lam = wa.total_weight();
    let (mut mean, mut mean_c, mut right) = (0.0, 0.0, 0.0);
    for (&a, &w) in wa.angles.iter().zip(&wa.weights) {
        let q = w / lam;
        mean += q * a;
        mean_c += q * (1.0 - a);
        right += q * (ln_gamma(a) + ln_gamma(1.0 - a));
    }
    if !(mean > 0.0 && mean_c > 0.0) {
        return Err(domain(
            "Gamma argument",
            mean.min(mean_c),
            "x > 0 (pole at 0)",
        ));
    }
    Ok((ln_gamma(mean) + ln_gamma(mean_c), right))
}

/// Left-hand product shapes shared by pairs of bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `prod_{i<n} sin^{l_{i+1}}(pi l_i) * sin^{l_1}(pi l_n)`; bounds `Sn`, `Tn`.
    Cyclic,
    /// `prod_i sin^{1-l_{2i}}(pi l_{2i-1}) sin^{l_{2i-1}}(pi l_{2i})`; bounds `P2n`, `Q2n`.
    Paired,
    /// Cyclic product with the last factor's exponent raised to `l_1 + l_n`;
    /// bounds `C37a`, `C37b`.
    Doubled,
}

impl Family {
    pub fn bounds(self) -> [BoundForm; 2] {
        match self {
            Family::Cyclic => [BoundForm::Sn, BoundForm::Tn],
            Family::Paired => [BoundForm::P2n, BoundForm::Q2n],
            Family::Doubled => [BoundForm::C37a, BoundForm::C37b],
        }
    }

    fn check(self, l: &[f64]) -> Result<()> {
        let ok = match self {
            Family::Cyclic | Family::Doubled => l.len() >= 2,
            Family::Paired => l.len() >= 2 && l.len().is_multiple_of(2),
        };
        if !ok {
            return Err(Error::Arity {
                target: format!("{self:?} product"),
                expected: match self {
                    Family::Paired => "an even number >= 2".into(),
                    _ => "at least 2".into(),
                },
                got: l.len(),
            });
        }
        check_unit(l, "parameter")
    }
}

/// Log of the family's left-hand product.
pub fn lhs_family(family: Family, params: &ParamVector) -> Result<LogValue> {
    lhs_family_slice(family, params.as_slice())
}

pub(crate) fn lhs_family_slice(family: Family, l: &[f64]) -> Result<LogValue> {
    family.check(l)?;
    let n = l.len();
    let chain: f64 = l.windows(2).map(|w| w[1] * ln_sin_pi(w[0])).sum();
    let v = match family {
        Family::Cyclic => chain + l[0] * ln_sin_pi(l[n - 1]),
        Family::Doubled => chain + (l[0] + l[n - 1]) * ln_sin_pi(l[n - 1]),
        Family::Paired => l
            .chunks(2)
            .map(|p| (1.0 - p[1]) * ln_sin_pi(p[0]) + p[0] * ln_sin_pi(p[1]))
            .sum(),
    };
    Ok(LogValue(v))
}
