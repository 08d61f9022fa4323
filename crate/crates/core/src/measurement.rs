//! The single-outcome projective measurement `M_m = κ_m P^(r)`, where
//! `P^(r)` projects onto the first `r` basis vectors.

use num_complex::Complex64;

use crate::error::{check_rank, invalid, Error, Result};
use crate::state::PureState;

/// Below this overlap with the projector support the outcome is reported as
/// impossible.
pub const Q_IMPOSSIBLE: f64 = 1e-15;

/// Measurement operator of one outcome. Only `|κ_m|²` is kept, since no
/// observable depends on the phase of `κ_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankProjector {
    dim: usize,
    rank: usize,
    kappa_sq: f64,
}

impl RankProjector {
    pub fn new(dim: usize, rank: usize, kappa_sq: f64) -> Result<Self> {
        check_rank(dim, rank)?;
        check_kappa_sq(kappa_sq)?;
        Ok(Self {
            dim,
            rank,
            kappa_sq,
        })
    }

    /// Projector with `|κ_m|² = 1`.
    pub fn unscaled(dim: usize, rank: usize) -> Result<Self> {
        Self::new(dim, rank, 1.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kappa_sq(&self) -> f64 {
        self.kappa_sq
    }

    fn check_state(&self, state: &PureState) -> Result<()> {
        if state.dim() != self.dim {
            return Err(invalid(format!(
                "projector acts on dimension {}, state has dimension {}",
                self.dim,
                state.dim()
            )));
        }
        Ok(())
    }
}

/// `|κ_m|²` must lie in `(0, 1]` for a completing set of operators to exist.
pub(crate) fn check_kappa_sq(kappa_sq: f64) -> Result<()> {
    if !(kappa_sq > 0.0 && kappa_sq <= 1.0) {
        return Err(invalid(format!(
            "kappa_sq must lie in (0, 1], got {kappa_sq}"
        )));
    }
    Ok(())
}

/// Result of obtaining the outcome on a given state.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRecord {
    /// `q_m(a) = Σ_{k≤r} |c_k|²`
    pub q: f64,
    /// `p(m|a) = |κ_m|² q_m(a)`
    pub prob: f64,
    pub post_state: PureState,
    /// `F(m,a) = |⟨ψ(a)|ψ(m,a)⟩| = √q`
    pub fidelity_single: f64,
}

/// Weight of `state` on the projector support. Exactly 1 for the full-rank
/// (identity) projector.
pub fn q_value(proj: &RankProjector, state: &PureState) -> Result<f64> {
    proj.check_state(state)?;
    if proj.rank == proj.dim {
        return Ok(1.0);
    }
    let q: f64 = state.amplitudes()[..proj.rank]
        .iter()
        .map(|c| c.norm_sqr())
        .sum();
    Ok(q.clamp(0.0, 1.0))
}

pub fn outcome_probability(proj: &RankProjector, state: &PureState) -> Result<f64> {
    Ok(proj.kappa_sq * q_value(proj, state)?)
}

/// Applies the measurement operator and renormalizes.
///
/// Fails with [`Error::OutcomeImpossible`] when `q < Q_IMPOSSIBLE`.
pub fn collapse(proj: &RankProjector, state: &PureState) -> Result<OutcomeRecord> {
    let q = q_value(proj, state)?;
    if q < Q_IMPOSSIBLE {
        return Err(Error::OutcomeImpossible { q });
    }
    // κ_m/√p(m|a) = κ_m/(|κ_m|√q); the leftover phase of κ_m is dropped.
    let scale = q.sqrt().recip();
    let amplitudes: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if k < proj.rank {
                c * scale
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(OutcomeRecord {
        q,
        prob: proj.kappa_sq * q,
        post_state: PureState::from_normalized_unchecked(amplitudes),
        fidelity_single: q.sqrt(),
    })
}
