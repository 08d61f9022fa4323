//! Analytic results for a rank-`r` projective measurement on a Haar-random
//! pure state in dimension `d`.
//!
//! All averages are over the uniform ensemble of pure states:
//!
//! | quantity            | value                                   |
//! |---------------------|-----------------------------------------|
//! | `⟨q⟩`               | `r/d`                                   |
//! | `⟨q²⟩`              | `r(r+1)/(d(d+1))`                       |
//! | `⟨q log₂ q⟩`        | `-(r/(d ln 2)) [η(d) - η(r)]`           |
//! | `I(m)` (bits)       | `log₂(d/r) - [η(d) - η(r)]/ln 2`        |
//! | `F(m)`              | `(r+1)/(d+1)`                           |
//! | `p(m)`              | `|κ_m|² r/d`                            |
//! | `E_F(m)`            | `I(m)/(1 - F(m))`, undefined at `r = d` |
//!
//! with `η(n) = Σ_{k=1}^n 1/k`.

use std::f64::consts::{LN_2, PI};

use statrs::function::gamma::ln_gamma;

use crate::error::{check_rank, invalid, Error, Result};
use crate::measurement::check_kappa_sq;

/// Euler–Mascheroni constant, 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Largest `n` for which harmonic numbers are summed term by term.
pub const HARMONIC_DIRECT_MAX: usize = 1_000_000;

/// Neumaier-compensated sum of `1/k` for `k` in `lo..=hi`, ascending.
fn reciprocal_sum(lo: usize, hi: usize) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in lo..=hi {
        let term = 1.0 / k as f64;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn harmonic_asymptotic(n: usize) -> f64 {
    let n = n as f64;
    n.ln() + EULER_GAMMA + 0.5 / n - 1.0 / (12.0 * n * n)
}

/// Harmonic number `η(n) = Σ_{k=1}^n 1/k`.
pub fn harmonic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(invalid("harmonic number needs n >= 1"));
    }
    Ok(if n <= HARMONIC_DIRECT_MAX {
        reciprocal_sum(1, n)
    } else {
        harmonic_asymptotic(n)
    })
}

/// `η(d) - η(r)` for `1 <= r <= d`, summed directly over `r+1..=d`.
fn harmonic_gap(d: usize, r: usize) -> f64 {
    if d <= HARMONIC_DIRECT_MAX {
        reciprocal_sum(r + 1, d)
    } else {
        // both arguments >= 1 here
        harmonic(d).unwrap() - harmonic(r).unwrap()
    }
}

/// `x log₂ x`, continuously extended by 0 at `x = 0`.
pub fn x_log2_x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `⟨q⟩ = r/d`
pub fn q_bar(d: usize, r: usize) -> Result<f64> {
    check_rank(d, r)?;
    Ok(r as f64 / d as f64)
}

/// `⟨q²⟩ = r(r+1)/(d(d+1))`
pub fn q2_bar(d: usize, r: usize) -> Result<f64> {
    check_rank(d, r)?;
    let (d, r) = (d as f64, r as f64);
    Ok(r * (r + 1.0) / (d * (d + 1.0)))
}

/// `⟨q log₂ q⟩ = -(r/(d ln 2)) [η(d) - η(r)]`
pub fn q_log_q_bar(d: usize, r: usize) -> Result<f64> {
    check_rank(d, r)?;
    Ok(-(r as f64 / (d as f64 * LN_2)) * harmonic_gap(d, r))
}

/// Information gain `I(m)` in bits. Rounding residue in `(-1e-12, 0)` is
/// clamped to zero.
pub fn info_gain(d: usize, r: usize) -> Result<f64> {
    check_rank(d, r)?;
    let value = (d as f64 / r as f64).log2() - harmonic_gap(d, r) / LN_2;
    Ok(if value < 0.0 && value > -1e-12 {
        0.0
    } else {
        value
    })
}

/// Limit of `I(m)` at `r = 1` as `d → ∞`: `(1 - γ)/ln 2 ≈ 0.610` bits.
pub fn info_gain_limit() -> f64 {
    (1.0 - EULER_GAMMA) / LN_2
}

/// Posterior-averaged squared fidelity `F(m) = (r+1)/(d+1)`.
pub fn mean_fidelity(d: usize, r: usize) -> Result<f64> {
    check_rank(d, r)?;
    Ok((r as f64 + 1.0) / (d as f64 + 1.0))
}

/// `p(m) = |κ_m|² r/d`
pub fn total_probability(d: usize, r: usize, kappa_sq: f64) -> Result<f64> {
    check_rank(d, r)?;
    check_kappa_sq(kappa_sq)?;
    Ok(kappa_sq * r as f64 / d as f64)
}

/// `E_F(m) = I(m)/(1 - F(m))`. At `r = d` both numerator and denominator
/// vanish and [`Error::UndefinedEfficiency`] is returned.
pub fn efficiency(d: usize, r: usize) -> Result<f64> {
    check_rank(d, r)?;
    if r == d {
        return Err(Error::UndefinedEfficiency { dim: d });
    }
    Ok(info_gain(d, r)? / (1.0 - mean_fidelity(d, r)?))
}

/// Information gain when the candidate states are the orthonormal basis
/// instead of all pure states: `log₂(d/r)`.
pub fn distinguishable_info_gain(d: usize, r: usize) -> Result<f64> {
    check_rank(d, r)?;
    Ok((d as f64 / r as f64).log2())
}

/// `Γ((n+1)/2) / Γ((n+2)/2)` through a log-Gamma difference.
fn half_gamma_ratio(n: u32) -> f64 {
    let n = n as f64;
    (ln_gamma((n + 1.0) / 2.0) - ln_gamma((n + 2.0) / 2.0)).exp()
}

/// `∫_0^π sinⁿθ dθ = √π Γ((n+1)/2)/Γ((n+2)/2)`.
pub fn sin_power_integral(n: u32) -> f64 {
    PI.sqrt() * half_gamma_ratio(n)
}

/// `∫_0^π sinⁿθ log₂ sin θ dθ`, equal to
/// `√π Γ((n+1)/2)/Γ((n+2)/2) · [(-1)^{n+1} + Σ_{k=1}^n (-1)^{n+k+1}/(k ln 2)]`.
pub fn sin_power_log_integral(n: u32) -> f64 {
    let sign = |e: u32| if e.is_multiple_of(2) { 1.0 } else { -1.0 };
    let alternating: f64 = (1..=n).map(|k| sign(n + k + 1) / k as f64).sum();
    sin_power_integral(n) * (sign(n + 1) + alternating / LN_2)
}

/// Closed-form summary for one `(d, r, |κ_m|²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticReport {
    pub dim: usize,
    pub rank: usize,
    pub kappa_sq: f64,
    pub info_bits: f64,
    pub mean_fidelity: f64,
    pub total_prob: f64,
    /// `None` when `rank == dim`.
    pub efficiency: Option<f64>,
}

impl AnalyticReport {
    pub fn new(dim: usize, rank: usize, kappa_sq: f64) -> Result<Self> {
        let total_prob = total_probability(dim, rank, kappa_sq)?;
        let efficiency = match efficiency(dim, rank) {
            Ok(e) => Some(e),
            Err(Error::UndefinedEfficiency { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            dim,
            rank,
            kappa_sq,
            info_bits: info_gain(dim, rank)?,
            mean_fidelity: mean_fidelity(dim, rank)?,
            total_prob,
            efficiency,
        })
    }
}
