//! Additive perturbations of frames.
//!
//! The central fact used throughout: perturbing every vector by
//! `δⱼ = r·S⁻¹vⱼ` turns the frame operator `S` into `S + 2rI + r²S⁻¹`,
//! whose eigenvalues are `λ + 2r + r²/λ` for the eigenvalues `λ` of `S`.
//! [`improve_step`] uses a small `r` to reduce the condition number, and
//! [`tighten`] picks `r = √(A·B)` at every step, which merges the smallest
//! eigenvalue into the top cluster, so `n − 1` steps produce a tight frame.

use serde::Serialize;

use crate::error::{FrameError, Result};
use crate::frame::{report_from_spectrum, Frame, FrameReport, TIGHT_TOLERANCE};
use crate::linalg::{norm, operator_norm};

/// Default fraction of the admissible `r` interval used by [`improve_step`].
pub const DEFAULT_SAFETY: f64 = 0.9;
/// Two eigenvalues are in the same cluster when they differ by at most this times `λ_max`.
pub const CLUSTER_TOLERANCE: f64 = 1e-9;
/// `κ − 1` below which [`tighten`] takes no further steps: the spread left is eigensolver noise.
pub const MERGED_SPREAD: f64 = 1e-12;

/// `λ + 2r + r²/λ`: the image of an eigenvalue under the perturbation `δⱼ = r·S⁻¹vⱼ`.
pub fn spectral_shift(lambda: f64, r: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(FrameError::Domain(format!(
            "eigenvalue must be positive, got {lambda}"
        )));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(FrameError::Domain(format!(
            "shift must be positive, got {r}"
        )));
    }
    Ok(lambda + 2.0 * r + r * r / lambda)
}

/// Outcome of one conditioning step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImproveResult {
    pub perturbed: Frame,
    pub deltas: Vec<Vec<f64>>,
    pub r_used: f64,
    pub report_before: FrameReport,
    pub report_after: FrameReport,
}

/// Perturbs `frame` by `δⱼ = r·S⁻¹vⱼ` with every `‖δⱼ‖ < epsilon`.
///
/// `r = safety · min(epsilon / maxⱼ‖S⁻¹vⱼ‖, A)`. The condition number
/// strictly decreases unless the frame is already tight, in which case the
/// result is the frame scaled by `1 + r/A`.
pub fn improve_step(frame: &Frame, epsilon: f64, safety: f64) -> Result<ImproveResult> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(FrameError::Domain(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if !(safety > 0.0 && safety < 1.0) {
        return Err(FrameError::Domain(format!(
            "safety must lie in (0, 1), got {safety}"
        )));
    }
    let (report_before, spectrum) = frame.analyze_with_spectrum()?;
    let dual = frame
        .vectors()
        .iter()
        .map(|v| spectrum.apply_inverse(v))
        .collect::<Result<Vec<_>>>()?;
    let max_dual_norm = dual.iter().map(|d| norm(d)).fold(0.0, f64::max);
    let r_used = safety * (epsilon / max_dual_norm).min(report_before.lower_bound);

    let deltas: Vec<Vec<f64>> = dual
        .iter()
        .map(|d| d.iter().map(|x| r_used * x).collect())
        .collect();
    let perturbed = add_deltas(frame, &deltas)?;
    let report_after = perturbed.analyze()?;
    Ok(ImproveResult {
        perturbed,
        deltas,
        r_used,
        report_before,
        report_after,
    })
}

fn add_deltas(frame: &Frame, deltas: &[Vec<f64>]) -> Result<Frame> {
    let vectors = frame
        .vectors()
        .iter()
        .zip(deltas)
        .map(|(v, d)| v.iter().zip(d).map(|(a, b)| a + b).collect())
        .collect();
    Frame::new(frame.dim(), vectors)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl From<&FrameReport> for Bounds {
    fn from(r: &FrameReport) -> Self {
        Bounds {
            lower: r.lower_bound,
            upper: r.upper_bound,
        }
    }
}

/// One iteration of [`tighten`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TighteningStep {
    /// 1-based.
    pub step: usize,
    pub r: f64,
    pub bounds_before: Bounds,
    pub bounds_after: Bounds,
    pub eigenvalues_after: Vec<f64>,
    /// Eigenvalues of the new operator within the cluster tolerance of its maximum.
    pub top_cluster_size: usize,
    pub frame_after: Frame,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TighteningTrace {
    pub steps: Vec<TighteningStep>,
    #[serde(rename = "final")]
    pub final_frame: Frame,
    /// `v⁽ᵐ⁾ⱼ − vⱼ` for the last iterate.
    pub total_deltas: Vec<Vec<f64>>,
}

impl TighteningTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

/// Turns `frame` into a tight frame by at most `n − 1` perturbations
/// `v⁽ᵐ⁾ⱼ = v⁽ᵐ⁻¹⁾ⱼ + rₘ·S⁻¹ₘ₋₁v⁽ᵐ⁻¹⁾ⱼ` with `rₘ = √(Aₘ₋₁·Bₘ₋₁)`.
///
/// Bounds are re-read from the recomputed spectrum of every iterate. The
/// iteration runs until the spectrum has fully merged (at most `n − 1`
/// steps) rather than stopping as soon as the frame passes the tightness
/// test, so the result is tight to eigensolver precision.
pub fn tighten(frame: &Frame) -> Result<TighteningTrace> {
    let max_steps = frame.dim() - 1;
    let (mut report, mut spectrum) = frame.analyze_with_spectrum()?;
    let mut current = frame.clone();
    let mut steps = Vec::new();

    while report.condition_number - 1.0 > MERGED_SPREAD && steps.len() < max_steps {
        let r = (report.lower_bound * report.upper_bound).sqrt();
        let vectors = current
            .vectors()
            .iter()
            .map(|v| {
                let d = spectrum.apply_inverse(v)?;
                Ok(v.iter().zip(&d).map(|(a, b)| a + r * b).collect())
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        let next = Frame::new(current.dim(), vectors)?;
        let next_spectrum = next.spectrum()?;
        let next_report = report_from_spectrum(&next_spectrum)?;

        let top = next_report.upper_bound;
        let top_cluster_size = next_report
            .eigenvalues
            .iter()
            .filter(|&&l| top - l <= CLUSTER_TOLERANCE * top)
            .count();
        steps.push(TighteningStep {
            step: steps.len() + 1,
            r,
            bounds_before: Bounds::from(&report),
            bounds_after: Bounds::from(&next_report),
            eigenvalues_after: next_report.eigenvalues.clone(),
            top_cluster_size,
            frame_after: next.clone(),
        });
        current = next;
        report = next_report;
        spectrum = next_spectrum;
    }
    if report.condition_number - 1.0 > TIGHT_TOLERANCE {
        return Err(FrameError::NoConvergence {
            iterations: max_steps,
        });
    }

    let total_deltas = current
        .vectors()
        .iter()
        .zip(frame.vectors())
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect();
    Ok(TighteningTrace {
        steps,
        final_frame: current,
        total_deltas,
    })
}

/// `√(A/k)`: every family of perturbations with all `‖δⱼ‖` strictly below
/// this radius leaves a frame.
pub fn stability_radius(frame: &Frame) -> Result<f64> {
    let report = frame.analyze()?;
    Ok((report.lower_bound / frame.len() as f64).sqrt())
}

/// Paley–Wiener style certificate for a perturbed family `G` of a frame `F`,
/// using `λ = 0` and `μ` bounding `‖Σⱼ cⱼ(fⱼ − gⱼ)‖ ≤ μ‖c‖`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PwCertificate {
    pub lambda_const: f64,
    /// `√k · maxⱼ‖δⱼ‖`.
    pub mu_crude: f64,
    /// Operator norm of the delta synthesis matrix, the smallest valid `μ`.
    pub mu_sharp: f64,
    /// `mu_sharp / √A < 1`.
    pub admissible: bool,
    pub base_lower: f64,
    pub base_upper: f64,
    /// `A(1 − μ/√A)²` when admissible, otherwise 0.
    pub guaranteed_lower: f64,
    /// `B(1 + μ/√B)²`.
    pub guaranteed_upper: f64,
    /// Optimal bounds of `G` itself, when it is a frame.
    pub perturbed_report: Option<FrameReport>,
}

pub fn pw_check(base: &Frame, perturbed: &Frame) -> Result<PwCertificate> {
    base.check_same_shape(perturbed)?;
    let report = base.analyze()?;
    let deltas: Vec<Vec<f64>> = perturbed
        .vectors()
        .iter()
        .zip(base.vectors())
        .map(|(g, f)| g.iter().zip(f).map(|(a, b)| a - b).collect())
        .collect();
    let k = base.len() as f64;
    let mu_crude = k.sqrt() * deltas.iter().map(|d| norm(d)).fold(0.0, f64::max);
    let mu_sharp = operator_norm(&Frame::new(base.dim(), deltas)?.synthesis_matrix())?;
    Ok(certify(
        &report,
        mu_crude,
        mu_sharp,
        perturbed.analyze().ok(),
    ))
}

fn certify(
    report: &FrameReport,
    mu_crude: f64,
    mu_sharp: f64,
    perturbed_report: Option<FrameReport>,
) -> PwCertificate {
    let (a, b) = (report.lower_bound, report.upper_bound);
    let admissible = mu_sharp / a.sqrt() < 1.0;
    let guaranteed_lower = if admissible {
        a * (1.0 - mu_sharp / a.sqrt()).powi(2)
    } else {
        0.0
    };
    PwCertificate {
        lambda_const: 0.0,
        mu_crude,
        mu_sharp,
        admissible,
        base_lower: a,
        base_upper: b,
        guaranteed_lower,
        guaranteed_upper: b * (1.0 + mu_sharp / b.sqrt()).powi(2),
        perturbed_report,
    }
}

/// Convex (or extrapolated) combination `(1 − tⱼ)fⱼ + tⱼgⱼ` of two families.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlendResult {
    pub blended: Frame,
    /// Certificate of `G` against `F`; its `mu_sharp` is the `μ` used here.
    pub pair: PwCertificate,
    /// `maxⱼ |tⱼ|`.
    pub tau: f64,
    /// `√A/μ`; `None` when `μ = 0` (no limit).
    pub threshold: Option<f64>,
    /// `tau < threshold`: the blend is guaranteed to be a frame.
    pub certified: bool,
    /// `A(1 − μτ/√A)²` when certified, otherwise 0.
    pub guaranteed_lower: f64,
    /// `B(1 + μτ/√B)²`.
    pub guaranteed_upper: f64,
    pub blended_report: Option<FrameReport>,
}

impl BlendResult {
    /// Blending weights exceed the certified range; the blend is returned
    /// but nothing is guaranteed about it.
    pub fn tau_too_large(&self) -> bool {
        !self.certified
    }
}

pub fn blend(base: &Frame, other: &Frame, ts: &[f64]) -> Result<BlendResult> {
    base.check_same_shape(other)?;
    if ts.len() != base.len() {
        return Err(FrameError::DimensionMismatch {
            expected: base.len(),
            found: ts.len(),
        });
    }
    if let Some(t) = ts.iter().find(|t| !t.is_finite()) {
        return Err(FrameError::Domain(format!(
            "blend weight must be finite, got {t}"
        )));
    }
    let pair = pw_check(base, other)?;
    let vectors = base
        .vectors()
        .iter()
        .zip(other.vectors())
        .zip(ts)
        .map(|((f, g), &t)| {
            f.iter()
                .zip(g)
                .map(|(a, b)| (1.0 - t) * a + t * b)
                .collect()
        })
        .collect();
    let blended = Frame::new(base.dim(), vectors)?;

    let mu = pair.mu_sharp;
    let tau = ts.iter().fold(0.0, |m: f64, t| m.max(t.abs()));
    let (a, b) = (pair.base_lower, pair.base_upper);
    let threshold = (mu > 0.0).then(|| a.sqrt() / mu);
    let certified = threshold.is_none_or(|th| tau < th);
    let guaranteed_lower = if certified {
        a * (1.0 - mu * tau / a.sqrt()).powi(2)
    } else {
        0.0
    };
    let guaranteed_upper = b * (1.0 + mu * tau / b.sqrt()).powi(2);
    let blended_report = blended.analyze().ok();
    Ok(BlendResult {
        blended,
        pair,
        tau,
        threshold,
        certified,
        guaranteed_lower,
        guaranteed_upper,
        blended_report,
    })
}
