use crate::error::{Error, Result};
use crate::phase_space::grid::{GridSpec, GridWigner};
use crate::real::{from_usize, lit, to_f64, Real};

/// Closed-form Wigner function of the Fock state `|n⟩`, optionally scaled
/// by `λ` and squeezed by `κ`:
///
/// `W(q, p) = |λ|² Wₙ(λκ q, λκ⁻¹ p)`, with
/// `Wₙ(q, p) = 2 (-1)ⁿ Lₙ(2q² + 2p²) e^{-q²-p²}`.
///
/// For `λ ≠ ±1` this is the Weyl symbol of a Hermitian, trace-one operator
/// that is in general not positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticWigner<T> {
    fock_index: usize,
    scale: T,
    squeeze: T,
}

impl<T: Real> AnalyticWigner<T> {
    pub fn new(fock_index: usize, scale: T, squeeze: T) -> Result<Self> {
        if scale == T::zero() || !scale.is_finite() {
            return Err(Error::DegenerateParameter(format!(
                "scale λ must be finite and nonzero, got {}",
                to_f64(scale)
            )));
        }
        if squeeze <= T::zero() || !squeeze.is_finite() {
            return Err(Error::DegenerateParameter(format!(
                "squeeze κ must be finite and positive, got {}",
                to_f64(squeeze)
            )));
        }
        Ok(Self { fock_index, scale, squeeze })
    }

    /// Unscaled, unsqueezed Fock state.
    pub fn fock(n: usize) -> Self {
        Self { fock_index: n, scale: T::one(), squeeze: T::one() }
    }

    pub fn scaled(n: usize, scale: T) -> Result<Self> {
        Self::new(n, scale, T::one())
    }

    pub fn fock_index(&self) -> usize {
        self.fock_index
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn squeeze(&self) -> T {
        self.squeeze
    }

    pub fn eval(&self, q: T, p: T) -> T {
        let l = self.scale;
        let k = self.squeeze;
        let (q, p) = if l == T::one() && k == T::one() { (q, p) } else { (l * k * q, l * p / k) };
        l * l * unscaled_fock_wigner(self.fock_index, q, p)
    }

    /// Smallest grid extent this module accepts for the state:
    /// `4·max(1, 1/|λκ|, κ/|λ|)`.
    pub fn required_extent(&self) -> T {
        let l = self.scale.abs();
        let k = self.squeeze;
        let widest = T::one().max(T::one() / (l * k)).max(k / l);
        lit::<T>(4.0) * widest
    }
}

fn unscaled_fock_wigner<T: Real>(n: usize, q: T, p: T) -> T {
    let two = lit::<T>(2.0);
    let r2 = q * q + p * p;
    let envelope = (-r2).exp();
    match n {
        0 => two * envelope,
        1 => two * (two * r2 - T::one()) * envelope,
        _ => {
            let sign = if n.is_multiple_of(2) { T::one() } else { -T::one() };
            two * sign * laguerre(n, two * r2) * envelope
        }
    }
}

/// Laguerre polynomial `Lₙ(x)` by the three-term recurrence.
pub fn laguerre<T: Real>(n: usize, x: T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() - x;
    for k in 1..n {
        let kf = from_usize::<T>(k);
        let next = ((lit::<T>(2.0) * kf + T::one() - x) * cur - kf * prev) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Samples `state` on the cell centres of `spec`.
pub fn sample_to_grid<T: Real>(state: &AnalyticWigner<T>, spec: GridSpec<T>) -> Result<GridWigner<T>> {
    let required = state.required_extent();
    if spec.extent() < required {
        return Err(Error::GridTooSmall { extent: to_f64(spec.extent()), required: to_f64(required) });
    }
    GridWigner::from_fn(spec, |q, p| state.eval(q, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fock_values_at_origin() {
        assert_eq!(AnalyticWigner::<f64>::fock(0).eval(0.0, 0.0), 2.0);
        assert_eq!(AnalyticWigner::<f64>::fock(1).eval(0.0, 0.0), -2.0);
        let scaled = AnalyticWigner::<f64>::scaled(1, 0.5).unwrap();
        assert!((scaled.eval(0.0, 0.0) + 0.5).abs() < 1e-15);
        assert_eq!(AnalyticWigner::<f64>::fock(2).eval(0.0, 0.0), 2.0);
        assert_eq!(AnalyticWigner::<f64>::fock(3).eval(0.0, 0.0), -2.0);
    }

    #[test]
    fn ground_state_is_exact_gaussian() {
        let w = AnalyticWigner::<f64>::fock(0);
        for &(q, p) in &[(0.3, -1.2), (2.0, 0.5), (-0.7, 0.0)] {
            assert_eq!(w.eval(q, p), 2.0 * (-q * q - p * p).exp());
        }
    }

    #[test]
    fn laguerre_matches_explicit_polynomials() {
        let x: f64 = 0.83;
        assert_eq!(laguerre(0, x), 1.0);
        assert!((laguerre(1, x) - (1.0 - x)).abs() < 1e-15);
        assert!((laguerre(2, x) - (x * x - 4.0 * x + 2.0) / 2.0).abs() < 1e-14);
        let l3 = (-x.powi(3) + 9.0 * x * x - 18.0 * x + 6.0) / 6.0;
        assert!((laguerre(3, x) - l3).abs() < 1e-14);
    }

    #[test]
    fn laguerre_form_agrees_with_closed_form_for_first_excited() {
        for &(q, p) in &[(0.3, -1.2), (1.1, 0.5)] {
            let r2: f64 = q * q + p * p;
            let via_laguerre = -2.0 * laguerre(1, 2.0 * r2) * (-r2).exp();
            assert!((via_laguerre - AnalyticWigner::<f64>::fock(1).eval(q, p)).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(AnalyticWigner::<f64>::new(1, 0.0, 1.0).is_err());
        assert!(AnalyticWigner::<f64>::new(1, 1.0, 0.0).is_err());
        assert!(AnalyticWigner::<f64>::new(1, 1.0, -2.0).is_err());
    }

    #[test]
    fn small_scale_needs_wide_grid() {
        let state = AnalyticWigner::scaled(1, 0.1).unwrap();
        let spec = GridSpec::new(8.0, 256).unwrap();
        match sample_to_grid(&state, spec) {
            Err(Error::GridTooSmall { required, .. }) => assert!((required - 40.0).abs() < 1e-12),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn single_precision_evaluation() {
        let w = AnalyticWigner::<f32>::scaled(1, 0.5).unwrap();
        assert!((w.eval(0.0, 0.0) + 0.5).abs() < 1e-6);
    }
}
