//! Seeded random frames for tests, benchmarks and the `generate` subcommand.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::frame::Frame;
use crate::linalg::norm;

/// Standard normal vector in Rⁿ.
pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample(StandardNormal)).collect()
}

/// Uniformly distributed unit vector in Rⁿ.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vector(rng, dim);
        let len = norm(&v);
        if len > 1e-12 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}

/// `count` standard normal vectors in Rⁿ, resampled until they span.
///
/// # Panics
///
/// If `count < dim` (no spanning family exists) or `dim == 0`.
pub fn gaussian_frame<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> Frame {
    assert!(dim > 0 && count >= dim, "need count >= dim > 0");
    loop {
        let vectors = (0..count).map(|_| gaussian_vector(rng, dim)).collect();
        let frame = Frame::new(dim, vectors).expect("finite gaussian samples");
        if frame.analyze().is_ok() {
            return frame;
        }
    }
}
