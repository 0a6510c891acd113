//! The scaling family of maps on gridded Wigner functions.
//!
//! Each map is `W(q, p) ↦ c·W(a q, b p)`. The output lives on the input's
//! grid. Source values at off-node points come from the trigonometric
//! interpolant of the samples along each axis (exact for band-limited data,
//! which sampled oscillator states are to machine precision); points beyond
//! `±extent` read as zero.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::phase_space::grid::{GridSpec, GridWigner};
use crate::real::{from_usize, lit, to_f64, Real};

/// `W ↦ |λ|² W(λq, λp)`. Trace preserving but not positivity preserving.
pub fn apply_scaling<T: Real>(w: &GridWigner<T>, lambda: T) -> Result<GridWigner<T>> {
    require_nonzero(lambda)?;
    resample(w, lambda * lambda, lambda, lambda)
}

/// `W ↦ W(κq, κ⁻¹p)`, the unitary single-mode squeeze.
pub fn apply_squeeze<T: Real>(w: &GridWigner<T>, kappa: T) -> Result<GridWigner<T>> {
    if kappa <= T::zero() || !kappa.is_finite() {
        return Err(Error::DegenerateParameter(format!(
            "squeeze κ must be finite and positive, got {}",
            to_f64(kappa)
        )));
    }
    resample(w, T::one(), kappa, T::one() / kappa)
}

/// `W ↦ |λ| W(q, λp)`, momentum-only scaling. `λ = -1` is the momentum
/// reflection (transpose in the position basis).
pub fn apply_partial_scaling<T: Real>(w: &GridWigner<T>, lambda: T) -> Result<GridWigner<T>> {
    require_nonzero(lambda)?;
    resample(w, lambda.abs(), T::one(), lambda)
}

fn require_nonzero<T: Real>(lambda: T) -> Result<()> {
    if lambda == T::zero() || !lambda.is_finite() {
        return Err(Error::DegenerateParameter(format!(
            "scale λ must be finite and nonzero, got {}",
            to_f64(lambda)
        )));
    }
    Ok(())
}

/// Row `i` holds the weights that evaluate the interpolant at
/// `factor·x_i` from the samples at `x_0 … x_{n−1}`.
///
/// For even `n` the periodic cardinal function on a period `L = n·h` is
/// `S(x) = sin(πx/h) / (n·tan(πx/L))`.
fn interpolation_matrix<T: Real>(spec: &GridSpec<T>, factor: T) -> DMatrix<T> {
    let n = spec.points();
    let h = spec.spacing();
    let period = from_usize::<T>(n) * h;
    let first = spec.node(0);
    let snap = lit::<T>(1e-12);
    let pi = T::pi();
    let nf = from_usize::<T>(n);
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        let x = factor * spec.node(i);
        if x.abs() > spec.extent() {
            continue;
        }
        let s = (x - first) / h;
        let nearest = s.round();
        if (s - nearest).abs() < snap && nearest >= T::zero() && nearest < nf {
            m[(i, nearest.to_usize().expect("node index"))] = T::one();
            continue;
        }
        for k in 0..n {
            let d = x - spec.node(k);
            m[(i, k)] = (pi * d / h).sin() / (nf * (pi * d / period).tan());
        }
    }
    m
}

fn resample<T: Real>(w: &GridWigner<T>, prefactor: T, q_factor: T, p_factor: T) -> Result<GridWigner<T>> {
    let spec = *w.spec();
    if prefactor == T::one() && q_factor == T::one() && p_factor == T::one() {
        return Ok(w.clone());
    }
    let aq = interpolation_matrix(&spec, q_factor);
    let ap = if p_factor == q_factor { aq.clone() } else { interpolation_matrix(&spec, p_factor) };
    let values = (aq * w.values() * ap.transpose()) * prefactor;
    GridWigner::new(spec, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{sample_to_grid, AnalyticWigner};

    fn grid(n: usize) -> GridWigner<f64> {
        let spec = GridSpec::new(8.0, 64).unwrap();
        sample_to_grid(&AnalyticWigner::fock(n), spec).unwrap()
    }

    #[test]
    fn identity_parameters_return_input() {
        let w = grid(1);
        assert_eq!(apply_scaling(&w, 1.0).unwrap(), w);
        assert_eq!(apply_squeeze(&w, 1.0).unwrap(), w);
        assert_eq!(apply_partial_scaling(&w, 1.0).unwrap(), w);
    }

    #[test]
    fn reflections_of_even_states() {
        let w = grid(0);
        assert!(apply_scaling(&w, -1.0).unwrap().max_abs_diff(&w).unwrap() < 1e-14);
        assert!(apply_partial_scaling(&w, -1.0).unwrap().max_abs_diff(&w).unwrap() < 1e-14);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        let w = grid(0);
        assert!(apply_scaling(&w, 0.0).is_err());
        assert!(apply_partial_scaling(&w, 0.0).is_err());
        assert!(apply_squeeze(&w, 0.0).is_err());
        assert!(apply_squeeze(&w, -1.0).is_err());
    }

    #[test]
    fn outside_source_reads_zero() {
        // λ = 4 pushes the outer output nodes past the source extent
        let spec = GridSpec::new(8.0, 16).unwrap();
        let ones = GridWigner::<f64>::from_fn(spec, |_, _| 1.0).unwrap();
        let out = apply_scaling(&ones, 4.0).unwrap();
        assert_eq!(out.values()[(0, 8)], 0.0);
        assert!((out.values()[(8, 8)] - 16.0).abs() < 1e-12);
    }

    #[test]
    fn interpolant_reproduces_smooth_functions() {
        let spec = GridSpec::new(8.0, 64).unwrap();
        let a = interpolation_matrix(&spec, 0.37);
        let f = |x: f64| (-(x - 0.4) * (x - 0.4)).exp() * (1.0 + x);
        let samples = nalgebra::DVector::from_iterator(64, spec.nodes().into_iter().map(f));
        let out = a * samples;
        for i in 0..64 {
            assert!((out[i] - f(0.37 * spec.node(i))).abs() < 1e-12);
        }
    }
}
