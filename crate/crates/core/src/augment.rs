//! Tightness of a tight frame after appending or erasing vectors.
//!
//! Frame operators are additive over disjoint families, so the union of a
//! tight frame (bound `A`) and another family is tight exactly when the
//! other family's operator is `c·I`, giving bound `A + c`. Read backwards,
//! erasing `p < n` vectors from a tight frame never leaves a tight frame,
//! and erasing `p ≥ n` vectors leaves one iff the erased vectors are
//! themselves a tight frame with bound below `A`.
//!
//! A corollary for scalable frames: a frame containing a scalable
//! sub-frame of `p` elements with `k − p < n` is not itself scalable.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{FrameError, Result};
use crate::frame::{Frame, FrameReport};
use crate::linalg::symmetric_eigen;

/// Relative tolerance for deciding that an appended operator is `c·I`.
pub const SCALAR_OPERATOR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendVerdict {
    pub appended_count: usize,
    pub base_bound: f64,
    /// The union is tight.
    pub combined_tight: bool,
    /// The appended vectors alone form a tight frame.
    pub appended_tight: bool,
    /// `c` with `S_added = c·I`, when the union is tight.
    pub appended_bound: Option<f64>,
    /// `A + c`, when the union is tight.
    pub combined_bound: Option<f64>,
    /// The appended family has zero frame operator.
    pub degenerate: bool,
    pub combined_report: Option<FrameReport>,
}

fn require_tight(base: &Frame) -> Result<FrameReport> {
    let report = base.analyze()?;
    if !report.is_tight {
        return Err(FrameError::NotTight {
            condition_number: report.condition_number,
        });
    }
    Ok(report)
}

/// Decides whether appending `added` to the tight frame `base` keeps it tight.
pub fn append_check(base: &Frame, added: &Frame) -> Result<AppendVerdict> {
    base.check_same_dim(added)?;
    let report = require_tight(base)?;
    let a = report.lower_bound;

    let spectrum = symmetric_eigen(&added.frame_operator())?;
    let c = spectrum.eigenvalues.iter().sum::<f64>() / spectrum.dim() as f64;
    let deviation = spectrum
        .eigenvalues
        .iter()
        .fold(0.0, |m: f64, l| m.max((l - c).abs()));
    let tolerance = SCALAR_OPERATOR_TOLERANCE * c.max(a).max(1.0);
    let combined_tight = deviation <= tolerance;
    let degenerate = spectrum.max() <= tolerance;

    Ok(AppendVerdict {
        appended_count: added.len(),
        base_bound: a,
        combined_tight,
        appended_tight: combined_tight && !degenerate,
        appended_bound: combined_tight.then_some(if degenerate { 0.0 } else { c }),
        combined_bound: combined_tight.then_some(if degenerate { a } else { a + c }),
        degenerate,
        combined_report: base.concat(added)?.analyze().ok(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ErasureRule {
    /// Fewer erasures than the dimension: the remainder is never tight.
    #[serde(rename = "p<n: never tight")]
    FewerThanDimension,
    /// At least `n` erasures: tight iff the erased vectors are tight.
    #[serde(rename = "p>=n: tight iff erased tight")]
    AtLeastDimension,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErasureVerdict {
    pub erased_count: usize,
    pub base_bound: f64,
    pub remainder_is_frame: bool,
    pub remainder_tight: bool,
    pub remainder_report: Option<FrameReport>,
    /// The erased vectors form a tight frame.
    pub erased_tight: bool,
    pub erased_bound: Option<f64>,
    pub rule_applied: ErasureRule,
    /// Tightness of the remainder as predicted by `rule_applied`.
    pub rule_prediction: bool,
}

/// Erases the vectors at `indices` (0-based) from the tight frame `base`.
pub fn erase_check(base: &Frame, indices: &[usize]) -> Result<ErasureVerdict> {
    let k = base.len();
    if indices.is_empty() {
        return Err(FrameError::InvalidIndices("no indices given".into()));
    }
    let erased: BTreeSet<usize> = indices.iter().copied().collect();
    if erased.len() != indices.len() {
        return Err(FrameError::InvalidIndices("duplicate index".into()));
    }
    if let Some(&bad) = erased.iter().find(|&&i| i >= k) {
        return Err(FrameError::InvalidIndices(format!(
            "index {bad} out of range for {k} vectors"
        )));
    }
    if erased.len() == k {
        return Err(FrameError::InvalidIndices(
            "cannot erase every vector".into(),
        ));
    }
    let report = require_tight(base)?;
    let a = report.lower_bound;

    let (gone, kept): (Vec<_>, Vec<_>) = base
        .vectors()
        .iter()
        .enumerate()
        .partition(|(j, _)| erased.contains(j));
    let collect = |part: Vec<(usize, &Vec<f64>)>| {
        Frame::new(
            base.dim(),
            part.into_iter().map(|(_, v)| v.clone()).collect(),
        )
    };
    let remainder = collect(kept)?;
    let erased_frame = collect(gone)?;

    let remainder_report = remainder.analyze().ok();
    let erased_report = erased_frame.analyze().ok();
    let erased_tight = erased_report.as_ref().is_some_and(|r| r.is_tight);
    let erased_bound = erased_report
        .as_ref()
        .filter(|r| r.is_tight)
        .map(|r| r.lower_bound);

    let p = erased.len();
    let n = base.dim();
    let (rule_applied, rule_prediction) = if p < n {
        (ErasureRule::FewerThanDimension, false)
    } else {
        // The remainder operator is (A − c)·I, a frame only when c < A.
        let below = erased_bound.is_some_and(|c| {
            let remainder_bound = a - c;
            remainder_bound > crate::linalg::frame_tolerance(a)
        });
        (ErasureRule::AtLeastDimension, erased_tight && below)
    };

    Ok(ErasureVerdict {
        erased_count: p,
        base_bound: a,
        remainder_is_frame: remainder_report.is_some(),
        remainder_tight: remainder_report.as_ref().is_some_and(|r| r.is_tight),
        remainder_report,
        erased_tight,
        erased_bound,
        rule_applied,
        rule_prediction,
    })
}
