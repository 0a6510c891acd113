//! Moments of phase-space distributions and positivity of the
//! Schrödinger–Robertson uncertainty matrix.
//!
//! With `Q = (q₁…q_N, p₁…p_N)` the matrix `⟨Q_α Q_β⟩` splits into the
//! symmetrised covariance `Σ` and the commutator part `(i/2)J`; a state
//! (more generally, any Hermitian trace-one operator) respects the
//! uncertainty relation iff `Σ + (i/2)J ⪰ 0`.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gaussian::{symplectic_form, CovarianceMatrix};
use crate::phase_space::GridWigner;
use crate::real::{lit, to_f64, tolerance, Real};

/// Relative tolerance used for positivity verdicts.
pub const DEFAULT_PSD_TOLERANCE: f64 = 1e-10;
const HERMITIAN_TOLERANCE: f64 = 1e-12;
const NORMALIZATION_TOLERANCE: f64 = 1e-4;

/// Single-mode first moments and central second moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMoments<T> {
    pub mean_q: T,
    pub mean_p: T,
    pub sigma_qq: T,
    pub sigma_pp: T,
    pub sigma_qp: T,
}

impl<T: Real> SecondMoments<T> {
    /// Zero-mean moments with the given covariances.
    pub fn centred(sigma_qq: T, sigma_pp: T, sigma_qp: T) -> Self {
        Self { mean_q: T::zero(), mean_p: T::zero(), sigma_qq, sigma_pp, sigma_qp }
    }

    pub fn covariance(&self) -> CovarianceMatrix<T> {
        CovarianceMatrix::single_mode(self.sigma_qq, self.sigma_pp, self.sigma_qp)
    }
}

/// Complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T: Real> {
    entries: DMatrix<Complex<T>>,
}

impl<T: Real> HermitianMatrix<T> {
    pub fn new(entries: DMatrix<Complex<T>>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch { expected: entries.nrows(), found: entries.ncols() });
        }
        let scale = T::one().max(inf_norm(&entries));
        let tol = tolerance::<T>(HERMITIAN_TOLERANCE) * scale;
        let deviation = (&entries - entries.adjoint())
            .iter()
            .fold(T::zero(), |m, z| m.max(z.modulus()));
        if deviation > tol {
            return Err(Error::NotHermitian { tolerance: to_f64(tol), deviation: to_f64(deviation) });
        }
        Ok(Self::hermitize(entries))
    }

    /// `(M + M†)/2`, with no tolerance check.
    pub(crate) fn hermitize(m: DMatrix<Complex<T>>) -> Self {
        let half = Complex::new(lit::<T>(0.5), T::zero());
        let entries = (&m + m.adjoint()) * half;
        Self { entries }
    }

    /// Real symmetric matrix viewed as Hermitian.
    pub fn from_real(m: &DMatrix<T>) -> Result<Self> {
        Self::new(m.map(|x| Complex::new(x, T::zero())))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex<T>> {
        &self.entries
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> T {
        inf_norm(&self.entries)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        let mut ev: Vec<T> = self.entries.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        ev
    }
}

fn inf_norm<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    m.row_iter()
        .map(|row| row.iter().fold(T::zero(), |s, z| s + z.modulus()))
        .fold(T::zero(), |a, b| a.max(b))
}

/// Outcome of a positivity test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Positivity<T> {
    pub psd: bool,
    pub min_eigenvalue: T,
}

/// Quadrature moments `⟨q⟩, ⟨p⟩, σ_qq, σ_pp, σ_qp` of a gridded Wigner
/// function. Averages are normalised by the quadrature norm.
pub fn moments_from_grid<T: Real>(w: &GridWigner<T>) -> Result<SecondMoments<T>> {
    w.require_normalized(NORMALIZATION_TOLERANCE)?;
    let norm = w.norm();
    let avg = |f: &dyn Fn(T, T) -> T| w.integrate(f) / norm;
    let mean_q = avg(&|q, _| q);
    let mean_p = avg(&|_, p| p);
    let sigma_qq = avg(&|q, _| (q - mean_q) * (q - mean_q));
    let sigma_pp = avg(&|_, p| (p - mean_p) * (p - mean_p));
    let sigma_qp = avg(&|q, p| (q - mean_q) * (p - mean_p));
    Ok(SecondMoments { mean_q, mean_p, sigma_qq, sigma_pp, sigma_qp })
}

/// `[[σ_qq, σ_qp + i/2], [σ_qp − i/2, σ_pp]]`.
pub fn sr_matrix<T: Real>(m: &SecondMoments<T>) -> HermitianMatrix<T> {
    let half = lit::<T>(0.5);
    let entries = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex::new(m.sigma_qq, T::zero()),
            Complex::new(m.sigma_qp, half),
            Complex::new(m.sigma_qp, -half),
            Complex::new(m.sigma_pp, T::zero()),
        ],
    );
    HermitianMatrix { entries }
}

/// `σ_qq σ_pp − σ_qp²`; the uncertainty relation demands at least 1/4.
pub fn sr_value<T: Real>(m: &SecondMoments<T>) -> T {
    m.sigma_qq * m.sigma_pp - m.sigma_qp * m.sigma_qp
}

/// `Σ + (i/2)J` in `(q₁…q_N, p₁…p_N)` ordering.
pub fn multimode_uncertainty_matrix<T: Real>(cov: &CovarianceMatrix<T>) -> HermitianMatrix<T> {
    let j = symplectic_form::<T>(cov.modes());
    let half = lit::<T>(0.5);
    let sigma = cov.matrix();
    let entries = DMatrix::from_fn(sigma.nrows(), sigma.ncols(), |a, b| {
        Complex::new(sigma[(a, b)], half * j[(a, b)])
    });
    HermitianMatrix { entries }
}

/// `(det Σ, 1/4^N)`; valid states have the first at least the second.
pub fn det_bound<T: Real>(cov: &CovarianceMatrix<T>) -> (T, T) {
    let det = cov.matrix().clone().determinant();
    let bound = lit::<T>(0.25).powi(cov.modes() as i32);
    (det, bound)
}

/// Smallest eigenvalue and the verdict `λ_min ≥ −tol·max(1, ‖h‖_∞)`.
pub fn is_psd<T: Real>(h: &HermitianMatrix<T>, tol: T) -> Positivity<T> {
    let min_eigenvalue = h.eigenvalues()[0];
    let threshold = tol * T::one().max(h.inf_norm());
    Positivity { psd: min_eigenvalue >= -threshold, min_eigenvalue }
}

/// Determinants of the leading principal submatrices, smallest first.
pub fn leading_minors<T: Real>(h: &HermitianMatrix<T>) -> Vec<T> {
    (1..=h.dim())
        .map(|k| h.entries.view((0, 0), (k, k)).clone_owned().determinant().re)
        .collect()
}
