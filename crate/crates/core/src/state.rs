//! Pure states of a `d`-level system.
//!
//! A [`PureState`] is a unit vector of `d` complex amplitudes in a fixed
//! orthonormal basis. States can be built from explicit amplitudes, from the
//! hyperspherical angles of their real `2d`-dimensional embedding, or drawn
//! from the unitarily invariant (Haar) distribution via a [`SampleStream`].

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Result};

/// Allowed deviation of `Σ|c_k|²` from one.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Squared norms below this are treated as a degenerate Gaussian draw.
const DEGENERATE_NORM_SQR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps `amplitudes` after checking that they form a unit vector.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(invalid("a pure state needs at least one amplitude"));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(invalid(format!(
                "amplitudes are not normalized: sum |c_k|^2 = {norm_sqr}"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if amplitudes.is_empty() || !norm_sqr.is_finite() || norm_sqr < DEGENERATE_NORM_SQR {
            return Err(invalid("cannot normalize an empty or zero vector"));
        }
        let scale = norm_sqr.sqrt().recip();
        for c in &mut amplitudes {
            *c *= scale;
        }
        Ok(Self { amplitudes })
    }

    /// The basis vector `|k⟩`, with `k` counted from 1 as in `c_1 … c_d`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 || k == 0 || k > dim {
            return Err(invalid(format!("basis index {k} out of range 1..={dim}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k - 1] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Multiplies every amplitude by `e^{iχ}`.
    pub fn with_global_phase(&self, chi: f64) -> Self {
        let phase = Complex64::from_polar(1.0, chi);
        Self {
            amplitudes: self.amplitudes.iter().map(|c| c * phase).collect(),
        }
    }

    /// Construction path for the measurement module, which already
    /// guarantees unit norm.
    pub(crate) fn from_normalized_unchecked(amplitudes: Vec<Complex64>) -> Self {
        debug_assert!(!amplitudes.is_empty());
        Self { amplitudes }
    }
}

/// `⟨x|y⟩ = Σ_k conj(x_k) y_k`.
pub fn inner_product(x: &PureState, y: &PureState) -> Result<Complex64> {
    if x.dim() != y.dim() {
        return Err(invalid(format!(
            "dimension mismatch in inner product: {} vs {}",
            x.dim(),
            y.dim()
        )));
    }
    Ok(x.amplitudes
        .iter()
        .zip(&y.amplitudes)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Angles `(θ_1, …, θ_{2d-2}, φ)` of a point on the unit sphere in `2d` real
/// dimensions, with `θ_p ∈ [0, π]` and `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersphericalAngles {
    dim: usize,
    polar: Vec<f64>,
    azimuth: f64,
}

impl HypersphericalAngles {
    /// `polar[p - 1]` holds `θ_p`.
    pub fn new(dim: usize, polar: Vec<f64>, azimuth: f64) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        if polar.len() != 2 * dim - 2 {
            return Err(invalid(format!(
                "dimension {dim} needs {} polar angles, got {}",
                2 * dim - 2,
                polar.len()
            )));
        }
        if let Some((p, theta)) = polar
            .iter()
            .enumerate()
            .find(|(_, t)| !(0.0..=PI).contains(*t))
        {
            return Err(invalid(format!(
                "theta_{} = {theta} outside [0, pi]",
                p + 1
            )));
        }
        if !(0.0..TAU).contains(&azimuth) {
            return Err(invalid(format!("phi = {azimuth} outside [0, 2pi)")));
        }
        Ok(Self {
            dim,
            polar,
            azimuth,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polar(&self) -> &[f64] {
        &self.polar
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn to_state(&self) -> PureState {
        angles_to_state(self)
    }
}

/// Maps hyperspherical angles to amplitudes:
///
/// ```text
/// c_1 = sin θ_{2d-2} ⋯ sin θ_1 · e^{iφ}
/// c_k = sin θ_{2d-2} ⋯ sin θ_{2k-2} cos θ_{2k-3}
///     + i sin θ_{2d-2} ⋯ sin θ_{2k-1} cos θ_{2k-2}      (k ≥ 2)
/// ```
pub fn angles_to_state(angles: &HypersphericalAngles) -> PureState {
    let d = angles.dim;
    let theta = |p: usize| angles.polar[p - 1];

    // tail[p] = Π_{q=p}^{2d-2} sin θ_q, with tail[2d-1] = 1.
    let mut tail = vec![1.0; 2 * d];
    for p in (1..2 * d - 1).rev() {
        tail[p] = tail[p + 1] * theta(p).sin();
    }

    let mut amplitudes = Vec::with_capacity(d);
    amplitudes.push(Complex64::from_polar(tail[1], angles.azimuth));
    for k in 2..=d {
        let re = tail[2 * k - 2] * theta(2 * k - 3).cos();
        let im = tail[2 * k - 1] * theta(2 * k - 2).cos();
        amplitudes.push(Complex64::new(re, im));
    }
    PureState { amplitudes }
}

/// Reproducible source of Haar-random states.
///
/// A stream is identified by a 64-bit seed and a ChaCha stream index; chunk
/// `i` of a parallel run uses [`SampleStream::for_chunk`] with index `i`.
#[derive(Debug, Clone)]
pub struct SampleStream {
    seed: u64,
    counter: u64,
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        Self::for_chunk(seed, 0)
    }

    pub fn for_chunk(seed: u64, chunk: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        Self {
            seed,
            counter: 0,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of states drawn so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Draws one Haar-uniform state; see [`haar_sample`].
    pub fn haar_state(&mut self, dim: usize) -> Result<PureState> {
        haar_sample(dim, self)
    }
}

/// Draws a pure state from the unitarily invariant measure.
///
/// `2d` independent standard normals form the real and imaginary parts of the
/// amplitudes, and the vector is normalized. The resulting direction is
/// uniform on the unit sphere of `C^d`.
pub fn haar_sample(dim: usize, stream: &mut SampleStream) -> Result<PureState> {
    if dim == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let mut amplitudes = Vec::with_capacity(dim);
    loop {
        amplitudes.clear();
        for _ in 0..dim {
            let re: f64 = stream.rng.sample(StandardNormal);
            let im: f64 = stream.rng.sample(StandardNormal);
            amplitudes.push(Complex64::new(re, im));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if norm_sqr >= DEGENERATE_NORM_SQR {
            let scale = norm_sqr.sqrt().recip();
            for c in &mut amplitudes {
                *c *= scale;
            }
            break;
        }
    }
    stream.counter += 1;
    Ok(PureState { amplitudes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_level_angles_give_unit_amplitude() {
        let angles = HypersphericalAngles::new(1, vec![], 0.0).unwrap();
        let state = angles_to_state(&angles);
        assert_eq!(state.amplitudes(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn qubit_angles_at_right_angles_give_first_basis_vector() {
        let angles = HypersphericalAngles::new(2, vec![PI / 2.0, PI / 2.0], 0.0).unwrap();
        let state = angles_to_state(&angles);
        assert!((state.amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(state.amplitudes()[1].norm() < 1e-15);
    }

    #[test]
    fn qubit_angles_hand_evaluated() {
        let angles = HypersphericalAngles::new(2, vec![PI / 3.0, PI / 2.0], PI / 2.0).unwrap();
        let state = angles_to_state(&angles);
        let expected = [c(0.0, (PI / 3.0).sin()), c(0.5, 0.0)];
        for (got, want) in state.amplitudes().iter().zip(expected) {
            assert!((got - want).norm() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn angle_validation() {
        assert!(HypersphericalAngles::new(2, vec![0.1], 0.0).is_err());
        assert!(HypersphericalAngles::new(0, vec![], 0.0).is_err());
        assert!(HypersphericalAngles::new(2, vec![0.1, 3.5], 0.0).is_err());
        assert!(HypersphericalAngles::new(2, vec![0.1, 0.2], TAU).is_err());
        assert!(HypersphericalAngles::new(2, vec![0.0, PI], 0.0).is_ok());
    }

    #[test]
    fn amplitude_validation() {
        assert!(PureState::from_amplitudes(vec![]).is_err());
        assert!(PureState::from_amplitudes(vec![c(1.0, 1.0)]).is_err());
        assert!(PureState::from_amplitudes(vec![c(0.6, 0.0), c(0.0, 0.8)]).is_ok());
        assert!(PureState::normalized(vec![c(0.0, 0.0)]).is_err());
        assert!(PureState::basis(3, 0).is_err());
        assert!(PureState::basis(3, 4).is_err());
    }

    #[test]
    fn inner_product_basics() {
        let e1 = PureState::basis(2, 1).unwrap();
        let e2 = PureState::basis(2, 2).unwrap();
        let plus =
            PureState::from_amplitudes(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        assert_eq!(inner_product(&e1, &e2).unwrap(), c(0.0, 0.0));
        assert!((inner_product(&e1, &plus).unwrap() - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((inner_product(&plus, &plus).unwrap().norm() - 1.0).abs() < 1e-12);

        let e3 = PureState::basis(3, 1).unwrap();
        assert!(inner_product(&e1, &e3).is_err());
    }

    #[test]
    fn haar_rejects_zero_dimension() {
        let mut stream = SampleStream::new(1);
        assert!(haar_sample(0, &mut stream).is_err());
        assert_eq!(stream.counter(), 0);
    }

    #[test]
    fn haar_single_level_has_unit_modulus() {
        let mut stream = SampleStream::new(99);
        for _ in 0..10 {
            let state = haar_sample(1, &mut stream).unwrap();
            assert!((state.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
        }
        assert_eq!(stream.counter(), 10);
    }

    #[test]
    fn haar_is_reproducible() {
        let draw = |seed| {
            let mut stream = SampleStream::new(seed);
            (0..20)
                .map(|_| haar_sample(3, &mut stream).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(0xC0FFEE), draw(0xC0FFEE));
        assert_ne!(draw(0xC0FFEE), draw(0xC0FFEF));
    }

    #[test]
    fn chunk_streams_differ() {
        let mut a = SampleStream::for_chunk(7, 0);
        let mut b = SampleStream::for_chunk(7, 1);
        assert_ne!(a.haar_state(4).unwrap(), b.haar_state(4).unwrap());
        let mut a0 = SampleStream::new(7);
        let mut a1 = SampleStream::for_chunk(7, 0);
        assert_eq!(a0.haar_state(4).unwrap(), a1.haar_state(4).unwrap());
    }

    #[test]
    fn qubit_first_population_has_mean_one_half() {
        let n = 100_000;
        let mut stream = SampleStream::new(2024);
        let xs: Vec<f64> = (0..n)
            .map(|_| haar_sample(2, &mut stream).unwrap().amplitudes()[0].norm_sqr())
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let stderr = (var / n as f64).sqrt();
        assert!(
            (mean - 0.5).abs() < 5.0 * stderr,
            "mean {mean} stderr {stderr}"
        );
    }
}
