//! Scalar special functions: log-Gamma, log-Beta, the reflection identity
//! and a symmetric-reduction log of `sin(pi x)`.
//!
//! Everything downstream works in log-space, so these are the only places
//! where `Gamma` or `sin` are evaluated directly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A finite, strictly positive real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PositiveReal(f64);

impl PositiveReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Self(value))
        } else {
            Err(domain("Gamma argument", value, "finite x > 0"))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveReal {
    type Error = crate::Error;
    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<PositiveReal> for f64 {
    fn from(v: PositiveReal) -> f64 {
        v.0
    }
}

/// A real in the open interval (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct UnitOpen(f64);

impl UnitOpen {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Self(value))
        } else {
            Err(domain("unit-interval value", value, "0 < x < 1"))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for UnitOpen {
    type Error = crate::Error;
    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<UnitOpen> for f64 {
    fn from(v: UnitOpen) -> f64 {
        v.0
    }
}

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 coefficient set (Godfrey).
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// ln 2 split so that `k * LN2_HI` is exact for |k| < 2^11.
const LN2_HI: f64 = 6.931_471_803_691_238e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_7e-10;

/// Exact product `a * b = p + e`.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(terms: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for &t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    sum + carry
}

/// `a * (ln t - 1)` plus `extra` terms, with `ln t = k ln 2 + ln m` and
/// exact products so the dominant term keeps full precision for large `t`.
fn scaled_log_term(a: f64, t: f64, extra: &[f64]) -> f64 {
    let k = t.log2().floor();
    let m = t / k.exp2();
    let (p_hi, e_hi) = two_prod(a, k * LN2_HI);
    let (p_m, e_m) = two_prod(a, m.ln() - 1.0);
    let mut terms = [0.0f64; 8];
    terms[..5].copy_from_slice(&[p_hi, p_m, e_hi, e_m, a * k * LN2_LO]);
    terms[5..5 + extra.len()].copy_from_slice(extra);
    compensated_sum(&terms[..5 + extra.len()])
}

/// Above this the Stirling series is used; the g = 7 Lanczos set loses
/// about 1e-13 relative accuracy by x = 170.
const STIRLING_CUTOFF: f64 = 10.0;

// B_{2j} / (2j (2j - 1)), j = 1..8
const STIRLING_COEF: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `ln Gamma(x)` for `x >= 1`.
fn ln_gamma_ge1(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x >= STIRLING_CUTOFF {
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        let tail = STIRLING_COEF
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * inv2 + c)
            * inv;
        // (x - 1/2) ln x - x = (x - 1/2)(ln x - 1) - 1/2
        return scaled_log_term(x - 0.5, x, &[HALF_LN_2PI, -0.5, tail]);
    }
    let z = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // (z + 1/2) ln t - t = (z + 1/2)(ln t - 1) - g
    scaled_log_term(z + 0.5, t, &[HALF_LN_2PI, -LANCZOS_G, series.ln()])
}

/// Unchecked `ln Gamma(x)`; caller guarantees finite `x > 0`.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    if x < 1.0 {
        // Gamma(x) = Gamma(x + 1) / x
        ln_gamma_ge1(x + 1.0) - x.ln()
    } else {
        ln_gamma_ge1(x)
    }
}

/// `ln Gamma(x)`.
pub fn log_gamma(x: PositiveReal) -> f64 {
    ln_gamma(x.get())
}

/// `ln B(x, y) = ln Gamma(x) + ln Gamma(y) - ln Gamma(x + y)`.
pub fn log_beta(x: PositiveReal, y: PositiveReal) -> f64 {
    let (x, y) = (x.get(), y.get());
    ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)
}

/// Unchecked `ln sin(pi x)`; caller guarantees `0 < x < 1`.
///
/// The argument is folded onto (0, 1/2] first, so `x` and `1 - x` map to
/// the same reduced value whenever `1 - x` is exact.
#[inline]
pub(crate) fn ln_sin_pi(x: f64) -> f64 {
    let y = x.min(1.0 - x);
    (PI * y).sin().ln()
}

/// `ln sin(pi x)` on the open unit interval. Always `<= 0`.
pub fn log_sin_pi(x: UnitOpen) -> f64 {
    ln_sin_pi(x.get())
}

/// Checked variants taking raw `f64`.
pub fn try_log_gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(PositiveReal::new(x)?))
}

pub fn try_log_beta(x: f64, y: f64) -> Result<f64> {
    Ok(log_beta(PositiveReal::new(x)?, PositiveReal::new(y)?))
}

pub fn try_log_sin_pi(x: f64) -> Result<f64> {
    Ok(log_sin_pi(UnitOpen::new(x)?))
}

/// `ln B(1 - x, x) + ln sin(pi x) - ln pi`, which vanishes by the
/// reflection formula. Used as a self-test of the Gamma core.
pub fn reflection_residual(x: UnitOpen) -> Result<f64> {
    let complement = PositiveReal::new(1.0 - x.get())?;
    let x_pos = PositiveReal::new(x.get())?;
    Ok(log_beta(complement, x_pos) + log_sin_pi(x) - PI.ln())
}
