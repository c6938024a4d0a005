#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tightframe::linalg::{dot, norm};
use tightframe::sample::{gaussian_frame, unit_vector};
use tightframe::{tighten, Frame, Matrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn frame(dim: usize, vs: &[&[f64]]) -> Frame {
    Frame::new(dim, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
}

/// Largest condition number drawn by [`frame_strategy`]. Gaussian frames are
/// occasionally nearly singular; those are exercised by dedicated fixtures.
pub const MAX_PROPTEST_KAPPA: f64 = 1e6;

/// Gaussian frames in `R^n` for `n` in `dims`, with `n..=3n` vectors.
pub fn frame_strategy(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Frame> {
    (dims, any::<u64>())
        .prop_flat_map(|(n, seed)| {
            (n..=3 * n).prop_map(move |k| gaussian_frame(&mut rng(seed), n, k))
        })
        .prop_filter("well conditioned", |f| {
            f.analyze()
                .is_ok_and(|r| r.condition_number <= MAX_PROPTEST_KAPPA)
        })
}

pub fn rel_err(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}

/// The 200-frame corpus: n ∈ {2..6}, k ∈ {n..3n}, standard normal entries.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Frame> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.random_range(2..=6);
            let k = r.random_range(n..=3 * n);
            gaussian_frame(&mut r, n, k)
        })
        .collect()
}

/// Random tight frames with at most `max_k` vectors, produced by `tighten`.
pub fn tight_corpus(seed: u64, count: usize, max_k: usize) -> Vec<Frame> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.random_range(2..=4.min(max_k));
            let k = r.random_range(n..=max_k);
            tighten(&gaussian_frame(&mut r, n, k)).unwrap().final_frame
        })
        .collect()
}

/// `copies` rotated orthonormal bases of Rⁿ scaled by random positive
/// factors, so that many subsets are tight.
pub fn union_of_bases(r: &mut ChaCha8Rng, n: usize, copies: usize) -> Frame {
    let mut vectors = Vec::new();
    for _ in 0..copies {
        let scale = r.random_range(0.5..2.0);
        for q in random_orthonormal_basis(r, n) {
            vectors.push(q.into_iter().map(|x| scale * x).collect());
        }
    }
    Frame::new(n, vectors).unwrap()
}

/// Gram–Schmidt on Gaussian vectors.
pub fn random_orthonormal_basis(r: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < n {
        let mut v = unit_vector(r, n);
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let len = norm(&v);
        if len > 1e-6 {
            basis.push(v.into_iter().map(|x| x / len).collect());
        }
    }
    basis
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| r.random_range(-1.0..1.0))
        .collect();
    Matrix::new(rows, cols, data).unwrap()
}

/// Perturbation family with every ‖δⱼ‖ ≤ `radius` and at least one equal to it.
pub fn perturbation_family(r: &mut ChaCha8Rng, n: usize, k: usize, radius: f64) -> Vec<Vec<f64>> {
    let hit = r.random_range(0..k);
    (0..k)
        .map(|j| {
            let len = if j == hit {
                radius
            } else {
                radius * r.random_range(0.0..=1.0)
            };
            unit_vector(r, n).into_iter().map(|x| len * x).collect()
        })
        .collect()
}

pub fn add(frame: &Frame, deltas: &[Vec<f64>]) -> Frame {
    let vectors = frame
        .vectors()
        .iter()
        .zip(deltas)
        .map(|(v, d)| v.iter().zip(d).map(|(a, b)| a + b).collect())
        .collect();
    Frame::new(frame.dim(), vectors).unwrap()
}

/// `λ + 2r + r²/λ` applied to a spectrum, sorted ascending. Written out
/// here so the check does not go through the library's own shift map.
pub fn shifted_spectrum(eigenvalues: &[f64], r: f64) -> Vec<f64> {
    let mut out: Vec<f64> = eigenvalues
        .iter()
        .map(|l| l + 2.0 * r + r * r / l)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}
