use num_complex::Complex;
use phasekit::moments::moments_from_grid;
use phasekit::phase_space::{
    apply_partial_scaling, apply_scaling, apply_squeeze, density_to_wigner, overlap, sample_to_grid,
    wigner_to_density,
};
use phasekit::{AnalyticWigner, Error, GridSpec, GridWigner, PositionDensity};
use std::f64::consts::PI;

/// `∫ W₀ W₁⁽ˢ⁾ dq dp / 2π` from the radial Gaussian integrals.
fn fidelity_closed_form(l: f64) -> f64 {
    2.0 * l * l * (l * l - 1.0) / (1.0 + l * l).powi(2)
}

fn default_grid(state: &AnalyticWigner) -> GridWigner {
    sample_to_grid(state, GridSpec::for_scale(state.scale()).unwrap()).unwrap()
}

fn fock(n: usize) -> AnalyticWigner {
    AnalyticWigner::fock(n)
}

fn scaled(n: usize, l: f64) -> AnalyticWigner {
    AnalyticWigner::scaled(n, l).unwrap()
}

#[test]
fn sampled_states_are_normalized() {
    let spec = GridSpec::new(8.0, 256).unwrap();
    for n in 0..=3 {
        let w = sample_to_grid(&fock(n), spec).unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-6, "n={n} norm={}", w.norm());
    }
    let w0 = sample_to_grid(&fock(0), spec).unwrap();
    let peak = w0.values().max();
    assert!(peak < 2.0 && peak > 1.99);
    for l in [0.25, 0.5, 1.5] {
        let w = default_grid(&scaled(1, l));
        assert!((w.norm() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn overlap_of_fock_states() {
    let spec = GridSpec::new(8.0, 512).unwrap();
    let w0 = sample_to_grid(&fock(0), spec).unwrap();
    let w1 = sample_to_grid(&fock(1), spec).unwrap();
    assert!((overlap(&w0, &w0).unwrap() - 1.0).abs() < 1e-6);
    assert!(overlap(&w0, &w1).unwrap().abs() < 1e-6);
    assert_eq!(overlap(&w0, &w1).unwrap(), overlap(&w1, &w0).unwrap());
}

#[test]
fn fidelity_matches_closed_form() {
    // frozen from an independent adaptive 2-D quadrature
    assert!((fidelity_closed_form(0.1) + 0.019_409_861_778_257_04).abs() < 1e-15);
    for l in [0.1, 0.25, 0.5, 0.75, 1.0, 1.5] {
        let spec = GridSpec::for_scale(l).unwrap();
        let w0 = sample_to_grid(&fock(0), spec).unwrap();
        let w1 = sample_to_grid(&scaled(1, l), spec).unwrap();
        let f = overlap(&w0, &w1).unwrap();
        assert!((f - fidelity_closed_form(l)).abs() < 1e-6, "λ={l}: {f}");
        if l < 1.0 {
            assert!(f < 0.0);
        }
    }
}

#[test]
fn scaling_preserves_normalization() {
    for n in 0..=3 {
        for l in [-0.5f64, -0.25, 0.25, 0.5, -1.0, 1.0, 2.0] {
            let spec = GridSpec::for_scale(f64::min(l.abs(), 1.0)).unwrap();
            let w = sample_to_grid(&fock(n), spec).unwrap();
            let s = apply_scaling(&w, l).unwrap();
            let ps = apply_partial_scaling(&w, l).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-4, "scaling n={n} λ={l}: {}", s.norm());
            assert!((ps.norm() - 1.0).abs() < 1e-4, "partial n={n} λ={l}: {}", ps.norm());
        }
    }
}

#[test]
fn scaling_first_excited_by_half_matches_analytic() {
    let spec = GridSpec::for_scale(0.5).unwrap();
    let w = sample_to_grid(&fock(1), spec).unwrap();
    let s = apply_scaling(&w, 0.5).unwrap();
    let exact = sample_to_grid(&scaled(1, 0.5), spec).unwrap();
    assert!(s.max_abs_diff(&exact).unwrap() < 1e-10);
    assert!((s.norm() - 1.0).abs() < 1e-4);
}

#[test]
fn squeezed_ground_state_moments() {
    let spec = GridSpec::new(16.0, 512).unwrap();
    let w = sample_to_grid(&fock(0), spec).unwrap();
    let sq = apply_squeeze(&w, 2.0).unwrap();
    let m = moments_from_grid(&sq).unwrap();
    assert!((m.sigma_qq - 0.125).abs() < 1e-8, "{m:?}");
    assert!((m.sigma_pp - 2.0).abs() < 1e-8, "{m:?}");
    assert!(m.sigma_qp.abs() < 1e-8);
    // against the analytic squeezed state
    let exact = sample_to_grid(&AnalyticWigner::new(0, 1.0, 2.0).unwrap(), spec).unwrap();
    let me = moments_from_grid(&exact).unwrap();
    assert!((me.sigma_qq - 0.125).abs() < 1e-8 && (me.sigma_pp - 2.0).abs() < 1e-8);
}

#[test]
fn partial_scaling_quadruples_momentum_variance() {
    let spec = GridSpec::for_scale(0.5).unwrap();
    let w = sample_to_grid(&fock(1), spec).unwrap();
    let m0 = moments_from_grid(&w).unwrap();
    let m = moments_from_grid(&apply_partial_scaling(&w, 0.5).unwrap()).unwrap();
    assert!((m.sigma_pp - 4.0 * m0.sigma_pp).abs() < 1e-8, "{m:?}");
    assert!((m.sigma_qq - m0.sigma_qq).abs() < 1e-8);
}

#[test]
fn partial_scaling_is_squeeze_then_scaling() {
    for l in [0.25f64, 0.5] {
        let spec = GridSpec::for_scale(l).unwrap();
        let w = sample_to_grid(&fock(1), spec).unwrap();
        let composed = apply_scaling(&apply_squeeze(&w, l.powf(-0.5)).unwrap(), l.sqrt()).unwrap();
        let direct = apply_partial_scaling(&w, l).unwrap();
        let diff = composed.max_abs_diff(&direct).unwrap();
        assert!(diff < 2e-3, "λ={l}: {diff}");
    }
}

#[test]
fn purity_bounded_for_valid_states() {
    let spec = GridSpec::new(16.0, 512).unwrap();
    for n in 0..=3 {
        for k in [0.5, 1.0, 2.0] {
            let w = sample_to_grid(&AnalyticWigner::new(n, 1.0, k).unwrap(), spec).unwrap();
            assert!(overlap(&w, &w).unwrap() <= 1.0 + 1e-6);
        }
    }
}

#[test]
fn ground_state_density_matrix() {
    let w0 = default_grid(&fock(0));
    let rho = wigner_to_density(&w0).unwrap();
    assert!((rho.trace() - 1.0).abs() < 1e-6);
    assert!(rho.hermiticity_error() < 1e-10);
    let spec = *rho.spec();
    let nodes = spec.nodes();
    let mut worst = 0.0f64;
    for (i, &x) in nodes.iter().enumerate() {
        assert!(rho.values()[(i, i)].re >= -1e-6);
        for (j, &y) in nodes.iter().enumerate() {
            // oracle: ψ₀(x)ψ₀(y)
            let exact = PI.powf(-0.5) * (-(x * x + y * y) / 2.0).exp();
            worst = worst.max((rho.values()[(i, j)] - Complex::new(exact, 0.0)).norm());
        }
    }
    assert!(worst < 1e-5, "max deviation {worst}");
}

#[test]
fn ground_state_wigner_from_density() {
    let spec = GridSpec::for_scale(1.0).unwrap();
    let rho = PositionDensity::from_fn(spec, |x, y| Complex::new(PI.powf(-0.5) * (-(x * x + y * y) / 2.0).exp(), 0.0))
        .unwrap();
    let w = density_to_wigner(&rho).unwrap();
    let exact = sample_to_grid(&fock(0), spec).unwrap();
    assert!(w.max_abs_diff(&exact).unwrap() < 1e-5);
}

#[test]
fn round_trip_fock_states() {
    for n in 0..=3 {
        let w = default_grid(&fock(n));
        let back = density_to_wigner(&wigner_to_density(&w).unwrap()).unwrap();
        let err = w.max_abs_diff(&back).unwrap();
        assert!(err < 1e-5, "n={n}: {err}");
        assert!((back.norm() - w.norm()).abs() < 1e-5);
    }
    let w = default_grid(&scaled(1, 0.5));
    let back = density_to_wigner(&wigner_to_density(&w).unwrap()).unwrap();
    assert!(w.max_abs_diff(&back).unwrap() < 1e-4);
}

#[test]
fn grid_too_small_reports_required_extent() {
    let err = sample_to_grid(&scaled(1, 0.1), GridSpec::new(8.0, 256).unwrap()).unwrap_err();
    assert_eq!(err, Error::GridTooSmall { extent: 8.0, required: 40.0 });
}
