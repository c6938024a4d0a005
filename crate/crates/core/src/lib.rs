//! Analysis and constructive repair of finite frames in Rⁿ.
//!
//! A frame is a spanning family `{vⱼ}` of `k` vectors; its frame operator
//! `S = Σⱼ vⱼvⱼᵀ` has optimal bounds `A = λ_min(S)` and `B = λ_max(S)`.
//! This crate computes those bounds, reduces the condition number `B/A`
//! by additive perturbations, tightens any frame in at most `n − 1` steps,
//! certifies perturbations that keep the frame property and decides
//! tightness after appending or erasing vectors.

pub mod augment;
pub mod cli;
pub mod diag;
pub mod error;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod perturbation;
pub mod sample;

pub use augment::{append_check, erase_check, AppendVerdict, ErasureRule, ErasureVerdict};
pub use diag::{diagonalize, DiagResult};
pub use error::{FrameError, Result};
pub use frame::{Frame, FrameReport, TIGHT_TOLERANCE};
pub use linalg::{operator_norm, spd_apply_inverse, symmetric_eigen, Matrix, Spectrum};
pub use perturbation::{
    blend, improve_step, pw_check, spectral_shift, stability_radius, tighten, BlendResult,
    ImproveResult, PwCertificate, TighteningStep, TighteningTrace,
};
