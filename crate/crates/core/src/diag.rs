//! Single-entry perturbation that makes the frame operator of an R² frame diagonal.
//!
//! With `u₁, u₂` the rows of the synthesis matrix, the off-diagonal entry of
//! `S` is `⟨u₁, u₂⟩`. Adding `ε` to coordinate `i'` of vector `j` changes it
//! by `ε·vⱼ(i)`, where `i` is the other coordinate, so
//! `ε = −⟨u₁, u₂⟩ / vⱼ(i)` zeroes it. Dividing by the largest entry keeps
//! `ε` as small as this construction allows.

use serde::Serialize;

use crate::error::{FrameError, Result};
use crate::frame::Frame;
use crate::linalg::frame_tolerance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagResult {
    /// 0-based index of the perturbed vector.
    pub chosen_vector: usize,
    /// 0-based row of the largest-magnitude entry.
    pub chosen_entry_row: usize,
    /// 0-based coordinate that receives `epsilon`.
    pub perturb_axis: usize,
    pub epsilon: f64,
    pub perturbed: Frame,
    /// Diagonal of the perturbed frame operator.
    pub operator_diagonal: [f64; 2],
    /// Off-diagonal entry of the perturbed frame operator.
    pub off_diagonal: f64,
    /// Both diagonal entries exceed the frame tolerance.
    pub still_frame: bool,
}

/// Largest `|vⱼ(i)|`, ties to the larger `j`, then the smaller `i`.
fn largest_entry(frame: &Frame) -> (usize, usize, f64) {
    let mut best = (0, 0, 0.0_f64);
    for (j, v) in frame.vectors().iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            let (bj, _, bx) = best;
            if x.abs() > bx.abs() || (x.abs() == bx.abs() && j > bj) {
                best = (j, i, x);
            }
        }
    }
    best
}

pub fn diagonalize(frame: &Frame) -> Result<DiagResult> {
    if frame.dim() != 2 {
        return Err(FrameError::WrongDimension { dim: frame.dim() });
    }
    let (j, i, pivot) = largest_entry(frame);
    if pivot == 0.0 {
        return Err(FrameError::AllZero);
    }
    let axis = 1 - i;
    let cross: f64 = frame.vectors().iter().map(|v| v[0] * v[1]).sum();
    let epsilon = if cross == 0.0 { 0.0 } else { -cross / pivot };

    let mut vectors = frame.vectors().to_vec();
    if epsilon != 0.0 {
        vectors[j][axis] += epsilon;
    }
    let perturbed = Frame::new(2, vectors)?;
    let s = perturbed.frame_operator();
    let operator_diagonal = [s[(0, 0)], s[(1, 1)]];
    let tolerance = frame_tolerance(operator_diagonal[0].max(operator_diagonal[1]));
    Ok(DiagResult {
        chosen_vector: j,
        chosen_entry_row: i,
        perturb_axis: axis,
        epsilon,
        off_diagonal: s[(0, 1)],
        still_frame: operator_diagonal.iter().all(|&d| d > tolerance),
        operator_diagonal,
        perturbed,
    })
}
