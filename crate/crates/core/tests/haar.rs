use num_complex::Complex64;
use projmeas::state::{haar_sample, PureState, SampleStream};

const SAMPLES: usize = 100_000;

/// Two-sample Kolmogorov–Smirnov statistic.
fn ks_statistic(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Critical value at significance 0.001.
fn ks_critical(n: usize, m: usize) -> f64 {
    let c = (-0.5 * (0.0005f64).ln()).sqrt();
    c * ((n + m) as f64 / (n * m) as f64).sqrt()
}

/// `|⟨e₁|Uψ⟩|²` for the unitary whose first row is `row`.
fn first_population(row: &[Complex64], state: &PureState) -> f64 {
    row.iter()
        .zip(state.amplitudes())
        .map(|(u, c)| u * c)
        .sum::<Complex64>()
        .norm_sqr()
}

fn populations(dim: usize, seed: u64, row: &[Complex64]) -> Vec<f64> {
    let mut stream = SampleStream::new(seed);
    (0..SAMPLES)
        .map(|_| first_population(row, &haar_sample(dim, &mut stream).unwrap()))
        .collect()
}

fn identity_row(dim: usize) -> Vec<Complex64> {
    let mut row = vec![Complex64::new(0.0, 0.0); dim];
    row[0] = Complex64::new(1.0, 0.0);
    row
}

#[test]
fn unitary_invariance_of_first_population() {
    let dim = 4;
    let reference = populations(dim, 1, &identity_row(dim));

    // cyclic permutation: row 1 picks the last basis vector
    let mut permutation = vec![Complex64::new(0.0, 0.0); dim];
    permutation[dim - 1] = Complex64::new(1.0, 0.0);

    let mut phase = identity_row(dim);
    phase[0] = Complex64::from_polar(1.0, 0.731);

    // discrete Fourier transform, a dense unitary
    let fourier: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(1.0 / (dim as f64).sqrt(), 0.0))
        .collect();

    let critical = ks_critical(SAMPLES, SAMPLES);
    for (name, row, seed) in [
        ("permutation", permutation, 2),
        ("diagonal phase", phase, 3),
        ("fourier", fourier, 4),
    ] {
        let d = ks_statistic(reference.clone(), populations(dim, seed, &row));
        assert!(d < critical, "{name}: KS statistic {d} exceeds {critical}");
    }
}

#[test]
fn ks_detects_non_haar_distribution() {
    // Sanity check of the test itself: uniform populations on [0, 1] differ
    // from the Beta(1, 3) law of a 4-level Haar state.
    let reference = populations(4, 5, &identity_row(4));
    let uniform: Vec<f64> = (0..SAMPLES)
        .map(|i| (i as f64 + 0.5) / SAMPLES as f64)
        .collect();
    assert!(ks_statistic(reference, uniform) > ks_critical(SAMPLES, SAMPLES));
}

#[test]
fn first_population_mean_is_one_over_dim() {
    for dim in 1..=8 {
        let xs = populations(dim, 100 + dim as u64, &identity_row(dim));
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let stderr = (var / n).sqrt();
        let target = 1.0 / dim as f64;
        if dim == 1 {
            assert!((mean - 1.0).abs() < 1e-12);
        } else {
            assert!(
                (mean - target).abs() < 5.0 * stderr,
                "d={dim}: {mean} vs {target}"
            );
        }
    }
}

#[test]
fn sampled_states_are_normalized() {
    let mut stream = SampleStream::new(77);
    for dim in 1..=12 {
        for _ in 0..200 {
            let state = haar_sample(dim, &mut stream).unwrap();
            assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
    assert_eq!(stream.counter(), 12 * 200);
}
