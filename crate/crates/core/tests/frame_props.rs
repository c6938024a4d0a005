mod common;

use proptest::prelude::*;
use rand::Rng;
use tightframe::linalg::{dot, norm};
use tightframe::sample::{gaussian_frame, unit_vector};
use tightframe::{symmetric_eigen, tighten};

use common::{frame_strategy, rel_err, rng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frame_operator_is_symmetric_psd(f in frame_strategy(1..=6)) {
        let s = f.frame_operator();
        prop_assert!(s.asymmetry() <= 1e-14);
        let spec = symmetric_eigen(&s).unwrap();
        prop_assert!(spec.min() >= -1e-12 * spec.max());
    }

    #[test]
    fn bounds_sandwich_frame_sums(f in frame_strategy(1..=6), seed in any::<u64>()) {
        let report = f.analyze().unwrap();
        let mut r = rng(seed);
        for _ in 0..100 {
            let x = unit_vector(&mut r, f.dim());
            // direct Σ⟨x, vⱼ⟩², independent of the operator
            let direct: f64 = f.vectors().iter().map(|v| dot(&x, v).powi(2)).sum();
            let via_operator = f.frame_sum(&x).unwrap();
            prop_assert!((direct - via_operator).abs() <= 1e-9 * report.upper_bound.max(1.0));
            prop_assert!(report.lower_bound - 1e-9 <= via_operator);
            prop_assert!(via_operator <= report.upper_bound + 1e-9);
        }
    }

    #[test]
    fn bounds_are_attained(f in frame_strategy(1..=6)) {
        let report = f.analyze().unwrap();
        let spec = f.spectrum().unwrap();
        let n = f.dim();
        let lo = f.frame_sum(&spec.eigenvectors.column(0)).unwrap();
        let hi = f.frame_sum(&spec.eigenvectors.column(n - 1)).unwrap();
        prop_assert!((lo - report.lower_bound).abs() <= 1e-9 * report.upper_bound.max(1.0));
        prop_assert!((hi - report.upper_bound).abs() <= 1e-9 * report.upper_bound.max(1.0));
    }

    #[test]
    fn dual_of_dual_is_original(f in frame_strategy(1..=6)) {
        let back = f.canonical_dual().unwrap().canonical_dual().unwrap();
        let kappa = f.analyze().unwrap().condition_number;
        for (a, b) in f.vectors().iter().zip(back.vectors()) {
            let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            prop_assert!(norm(&diff) <= 1e-12 * kappa.max(1e3) * norm(a).max(1.0));
        }
    }

    #[test]
    fn dual_operator_is_inverse(f in frame_strategy(1..=6)) {
        let s = f.frame_operator();
        let sd = f.canonical_dual().unwrap().frame_operator();
        let prod = s.matmul(&sd).unwrap();
        let id = tightframe::Matrix::identity(f.dim());
        let report = f.analyze().unwrap();
        prop_assert!(prod.sub(&id).unwrap().max_abs() <= 1e-10 * report.condition_number);
    }

    #[test]
    fn reconstruction_recovers_input(f in frame_strategy(1..=6), seed in any::<u64>()) {
        let x = tightframe::sample::gaussian_vector(&mut rng(seed), f.dim());
        let y = f.reconstruct(&x).unwrap();
        let diff: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        // forward error of a backward-stable solve grows with κ
        let kappa = f.analyze().unwrap().condition_number;
        prop_assert!(norm(&diff) <= 1e-12 * kappa.max(1e3) * norm(&x).max(1.0));
    }

    #[test]
    fn scaling_covariance(f in frame_strategy(1..=6), s in 0.01f64..100.0) {
        let a = f.analyze().unwrap();
        let b = f.scaled(s).analyze().unwrap();
        // eigenvalue errors are absolute in ‖S‖, so relative to A they scale with κ
        let tol = 1e-12 * a.condition_number;
        prop_assert!(rel_err(b.lower_bound, s * s * a.lower_bound) <= tol);
        prop_assert!(rel_err(b.upper_bound, s * s * a.upper_bound) <= 1e-12);
        prop_assert!(rel_err(b.condition_number, a.condition_number) <= tol);
    }
}

#[test]
fn tight_bound_identity_on_tightened_frames() {
    let mut r = rng(5);
    for _ in 0..50 {
        let n = 2 + (r.random_range(0..4usize));
        let k = r.random_range(n..=3 * n);
        let t = tighten(&gaussian_frame(&mut r, n, k)).unwrap().final_frame;
        let report = t.analyze().unwrap();
        assert!(report.is_tight);
        assert!(rel_err(t.tight_bound_identity(), report.lower_bound) <= 1e-10);
    }
}
