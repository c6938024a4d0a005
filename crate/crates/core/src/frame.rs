//! Finite frames in Rⁿ: synthesis and frame operators, optimal bounds,
//! canonical dual and reconstruction.

use serde::Serialize;

use crate::error::{FrameError, Result};
use crate::linalg::{dot, frame_tolerance, norm, symmetric_eigen, Matrix, Spectrum};

/// A frame counts as tight when `κ − 1` is at most this.
pub const TIGHT_TOLERANCE: f64 = 1e-8;

/// An ordered family of `k ≥ 1` vectors in Rⁿ.
///
/// Spanning is not required: a `Frame` value may fail [`Frame::analyze`],
/// which is how degenerate perturbations and erasures are represented.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frame {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

/// Optimal frame bounds and conditioning of a frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub condition_number: f64,
    pub is_tight: bool,
    /// Spectrum of the frame operator, ascending.
    pub eigenvalues: Vec<f64>,
}

impl Frame {
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 || vectors.is_empty() {
            return Err(FrameError::Empty);
        }
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if let Some(i) = v.iter().position(|x| !x.is_finite()) {
                return Err(FrameError::NonFinite(format!("vector {j}, coordinate {i}")));
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Frame whose vectors are the columns of `t`.
    pub fn from_synthesis(t: &Matrix) -> Result<Self> {
        Self::new(t.rows(), (0..t.cols()).map(|j| t.column(j)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `k`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j]
    }

    pub fn into_vectors(self) -> Vec<Vec<f64>> {
        self.vectors
    }

    pub fn max_norm(&self) -> f64 {
        self.vectors.iter().map(|v| norm(v)).fold(0.0, f64::max)
    }

    /// Every vector multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Frame {
        Frame {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(|x| s * x).collect())
                .collect(),
        }
    }

    /// This frame followed by the vectors of `other`.
    pub fn concat(&self, other: &Frame) -> Result<Frame> {
        self.check_same_dim(other)?;
        let mut vectors = self.vectors.clone();
        vectors.extend(other.vectors.iter().cloned());
        Ok(Frame {
            dim: self.dim,
            vectors,
        })
    }

    pub(crate) fn check_same_dim(&self, other: &Frame) -> Result<()> {
        if self.dim != other.dim {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub(crate) fn check_same_shape(&self, other: &Frame) -> Result<()> {
        self.check_same_dim(other)?;
        if self.len() != other.len() {
            return Err(FrameError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// The n×k matrix whose columns are the frame vectors.
    pub fn synthesis_matrix(&self) -> Matrix {
        let k = self.len();
        let mut t = Matrix::zeros(self.dim, k);
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                t[(i, j)] = x;
            }
        }
        t
    }

    /// `S = T·Tᵀ = Σⱼ vⱼvⱼᵀ`, exactly symmetric.
    pub fn frame_operator(&self) -> Matrix {
        let n = self.dim;
        let mut s = Matrix::zeros(n, n);
        for v in &self.vectors {
            for i in 0..n {
                if v[i] == 0.0 {
                    continue;
                }
                for j in i..n {
                    s[(i, j)] += v[i] * v[j];
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                s[(j, i)] = s[(i, j)];
            }
        }
        s
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        symmetric_eigen(&self.frame_operator())
    }

    /// Optimal bounds `A = λ_min(S)`, `B = λ_max(S)` and `κ = B/A`.
    pub fn analyze(&self) -> Result<FrameReport> {
        self.analyze_with_spectrum().map(|(report, _)| report)
    }

    pub(crate) fn analyze_with_spectrum(&self) -> Result<(FrameReport, Spectrum)> {
        let spectrum = self.spectrum()?;
        let report = report_from_spectrum(&spectrum)?;
        Ok((report, spectrum))
    }

    /// `Σⱼ ⟨x, vⱼ⟩²`, evaluated as `xᵀSx`.
    pub fn frame_sum(&self, x: &[f64]) -> Result<f64> {
        let s = self.frame_operator();
        Ok(dot(x, &s.mul_vec(x)?))
    }

    /// The canonical dual `{S⁻¹vⱼ}`.
    pub fn canonical_dual(&self) -> Result<Frame> {
        let (_, spectrum) = self.analyze_with_spectrum()?;
        let vectors = self
            .vectors
            .iter()
            .map(|v| spectrum.apply_inverse(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Frame {
            dim: self.dim,
            vectors,
        })
    }

    /// `Σⱼ ⟨x, S⁻¹vⱼ⟩ vⱼ`, which recovers `x` for any frame.
    pub fn reconstruct(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(FrameError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let dual = self.canonical_dual()?;
        let mut out = vec![0.0; self.dim];
        for (v, d) in self.vectors.iter().zip(dual.vectors()) {
            let c = dot(x, d);
            for (o, vi) in out.iter_mut().zip(v) {
                *o += c * vi;
            }
        }
        Ok(out)
    }

    /// `(1/n)·Σⱼ ‖vⱼ‖²`, which is the frame bound whenever the frame is tight.
    pub fn tight_bound_identity(&self) -> f64 {
        let total: f64 = self.vectors.iter().map(|v| dot(v, v)).sum();
        total / self.dim as f64
    }
}

pub(crate) fn report_from_spectrum(spectrum: &Spectrum) -> Result<FrameReport> {
    let lower = spectrum.min();
    let upper = spectrum.max();
    let tolerance = frame_tolerance(upper);
    if lower <= tolerance {
        return Err(FrameError::NotAFrame {
            lambda_min: lower,
            tolerance,
        });
    }
    let condition_number = upper / lower;
    Ok(FrameReport {
        lower_bound: lower,
        upper_bound: upper,
        condition_number,
        is_tight: condition_number - 1.0 <= TIGHT_TOLERANCE,
        eigenvalues: spectrum.eigenvalues.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(dim: usize, vs: &[&[f64]]) -> Frame {
        Frame::new(dim, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn construction_validates_shape() {
        assert_eq!(Frame::new(2, vec![]), Err(FrameError::Empty));
        assert!(matches!(
            Frame::new(2, vec![vec![1.0, 0.0], vec![1.0]]),
            Err(FrameError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Frame::new(1, vec![vec![f64::INFINITY]]),
            Err(FrameError::NonFinite(_))
        ));
        // zero vectors are allowed
        assert!(Frame::new(2, vec![vec![0.0, 0.0]]).is_ok());
    }

    #[test]
    fn synthesis_matrix_columns() {
        let t = frame(2, &[&[1.0, 0.0], &[0.0, 2.0]]).synthesis_matrix();
        assert_eq!(
            t,
            Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap()
        );
        let t = frame(2, &[&[1.0, 1.0]]).synthesis_matrix();
        assert_eq!(t.column(0), vec![1.0, 1.0]);
        assert_eq!(t.cols(), 1);
    }

    #[test]
    fn frame_operator_examples() {
        assert_eq!(
            frame(2, &[&[1.0, 0.0], &[0.0, 1.0]]).frame_operator(),
            Matrix::identity(2)
        );
        assert_eq!(
            frame(2, &[&[1.0, 0.0], &[0.0, 2.0]]).frame_operator(),
            Matrix::from_diagonal(&[1.0, 4.0])
        );
        let f = frame(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]);
        assert_eq!(
            f.frame_operator(),
            Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap()
        );
        let t = f.synthesis_matrix();
        assert_eq!(t.matmul(&t.transpose()).unwrap(), f.frame_operator());
    }

    #[test]
    fn analyze_examples() {
        let r = frame(2, &[&[1.0, 0.0], &[0.0, 2.0]]).analyze().unwrap();
        assert_eq!(
            (r.lower_bound, r.upper_bound, r.condition_number),
            (1.0, 4.0, 4.0)
        );
        assert!(!r.is_tight);

        let r = frame(2, &[&[1.0, 0.0], &[0.0, 1.0]]).analyze().unwrap();
        assert_eq!(
            (r.lower_bound, r.upper_bound, r.condition_number),
            (1.0, 1.0, 1.0)
        );
        assert!(r.is_tight);

        let err = frame(2, &[&[1.0, 0.0], &[2.0, 0.0]]).analyze().unwrap_err();
        assert!(matches!(err, FrameError::NotAFrame { .. }));
    }

    #[test]
    fn canonical_dual_examples() {
        let d = frame(2, &[&[1.0, 0.0], &[0.0, 2.0]])
            .canonical_dual()
            .unwrap();
        assert_eq!(d.vectors(), &[vec![1.0, 0.0], vec![0.0, 0.5]]);

        let d = frame(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]])
            .canonical_dual()
            .unwrap();
        assert_close(d.vector(0), &[2.0 / 3.0, -1.0 / 3.0], 1e-14);
        assert_close(d.vector(1), &[-1.0 / 3.0, 2.0 / 3.0], 1e-14);
        assert_close(d.vector(2), &[1.0 / 3.0, 1.0 / 3.0], 1e-14);

        // tight frame with bound 2: dual is v/2
        let f = frame(2, &[&[1.0, 0.0], &[0.0, 1.0], &[-1.0, 0.0], &[0.0, -1.0]]);
        let d = f.canonical_dual().unwrap();
        for (v, dv) in f.vectors().iter().zip(d.vectors()) {
            assert_close(dv, &[v[0] / 2.0, v[1] / 2.0], 1e-15);
        }

        let bad = frame(2, &[&[1.0, 1.0]]);
        assert!(matches!(
            bad.canonical_dual(),
            Err(FrameError::NotAFrame { .. })
        ));
    }

    #[test]
    fn reconstruct_examples() {
        let f = frame(2, &[&[1.0, 0.0], &[0.0, 2.0]]);
        assert_eq!(f.reconstruct(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
        assert_close(&f.reconstruct(&[1.0, 1.0]).unwrap(), &[1.0, 1.0], 1e-15);

        let onb = frame(2, &[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(onb.reconstruct(&[3.0, -2.0]).unwrap(), vec![3.0, -2.0]);

        assert!(matches!(
            f.reconstruct(&[1.0]),
            Err(FrameError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tight_bound_identity_examples() {
        assert_eq!(
            frame(2, &[&[1.0, 0.0], &[0.0, 1.0]]).tight_bound_identity(),
            1.0
        );
        assert_eq!(
            frame(2, &[&[3.0, 0.0], &[0.0, 3.0]]).tight_bound_identity(),
            9.0
        );

        // Mercedes-Benz frame: 3 unit vectors in R², tight with bound 3/2.
        let s3 = 3f64.sqrt() / 2.0;
        let mb = frame(2, &[&[0.0, 1.0], &[-s3, -0.5], &[s3, -0.5]]);
        let r = mb.analyze().unwrap();
        assert!(r.is_tight);
        assert!((mb.tight_bound_identity() - 1.5).abs() < 1e-15);
        assert!((r.lower_bound - 1.5).abs() < 1e-14);
    }
}
