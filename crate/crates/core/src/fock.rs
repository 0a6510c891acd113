//! Operators in a truncated harmonic-oscillator number basis.
//!
//! States built from phase-space data are projected through the position
//! representation: `⟨m|ρ|n⟩ = ∬ ψ_m(x) ρ(x, x′) ψ_n(x′) dx dx′`, evaluated
//! on the density matrix's own grid.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::moments::HermitianMatrix;
use crate::phase_space::PositionDensity;
use crate::real::{from_usize, lit, to_f64, tolerance, Real};

/// Highest Hermite-function order supported.
pub const HERMITE_LIMIT: usize = 200;
pub const DEFAULT_DIM: usize = 32;
/// Eigenvalues below `-NEGATIVITY_THRESHOLD` mark an operator as nonpositive.
pub const NEGATIVITY_THRESHOLD: f64 = 1e-8;
const HERMITIAN_TOLERANCE: f64 = 1e-10;
// recurrence values are rescaled before they can overflow (f32 safe)
const RESCALE_AT: f64 = 1e30;

/// Hermitian operator in the number basis `|0⟩ … |dim−1⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockMatrix<T: Real> {
    entries: DMatrix<Complex<T>>,
    truncation_deficit: T,
}

impl<T: Real> FockMatrix<T> {
    pub fn new(entries: DMatrix<Complex<T>>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::DimensionMismatch { expected: entries.nrows(), found: entries.ncols() });
        }
        let scale = entries.iter().fold(T::one(), |m, z| m.max(z.modulus()));
        let tol = tolerance::<T>(HERMITIAN_TOLERANCE) * scale;
        let deviation = (&entries - entries.adjoint()).iter().fold(T::zero(), |m, z| m.max(z.modulus()));
        if deviation > tol {
            return Err(Error::NotHermitian { tolerance: to_f64(tol), deviation: to_f64(deviation) });
        }
        let half = Complex::new(lit::<T>(0.5), T::zero());
        let entries = (&entries + entries.adjoint()) * half;
        Ok(Self { entries, truncation_deficit: T::zero() })
    }

    /// Real diagonal operator, e.g. a mixture of number states.
    pub fn diagonal(weights: &[T]) -> Result<Self> {
        let n = weights.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(weights[i], T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex<T>> {
        &self.entries
    }

    pub fn element(&self, m: usize, n: usize) -> Complex<T> {
        self.entries[(m, n)]
    }

    pub fn trace(&self) -> T {
        self.entries.trace().re
    }

    /// `|1 − Tr ρ|` for projected states, zero for operators built directly.
    pub fn truncation_deficit(&self) -> T {
        self.truncation_deficit
    }

    pub fn as_operator(&self) -> FockOperator<T> {
        FockOperator { entries: self.entries.clone() }
    }
}

/// General (not necessarily Hermitian) operator in the truncated basis,
/// such as the products `Q̂_i Q̂_j` entering the moment-matrix map.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator<T: Real> {
    entries: DMatrix<Complex<T>>,
}

impl<T: Real> FockOperator<T> {
    pub fn new(entries: DMatrix<Complex<T>>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch { expected: entries.nrows(), found: entries.ncols() });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex<T>> {
        &self.entries
    }

    pub fn product(&self, other: &Self) -> Self {
        Self { entries: &self.entries * &other.entries }
    }
}

/// Eigenvalues of a [`FockMatrix`] with bookkeeping for truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
    pub min_eigenvalue: T,
    pub trace: T,
    pub truncation_deficit: T,
}

impl<T: Real> Spectrum<T> {
    pub fn is_nonpositive(&self) -> bool {
        self.min_eigenvalue < -lit::<T>(NEGATIVITY_THRESHOLD)
    }
}

/// Normalised oscillator eigenfunction `ψ_n(x)`.
pub fn hermite_function<T: Real>(n: usize, x: T) -> Result<T> {
    Ok(*hermite_functions(n, x)?.last().expect("at least one order"))
}

/// `ψ_0(x) … ψ_n(x)` by the three-term recurrence
/// `ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}`.
///
/// The Gaussian factor is carried in log form so that large `|x|` neither
/// underflows the seed nor overflows the polynomial part.
pub fn hermite_functions<T: Real>(n: usize, x: T) -> Result<Vec<T>> {
    if n > HERMITE_LIMIT {
        return Err(Error::OrderTooLarge { order: n, limit: HERMITE_LIMIT });
    }
    let two = lit::<T>(2.0);
    let rescale = lit::<T>(RESCALE_AT);
    let mut log_factor = -x * x / two;
    let mut prev = T::zero();
    let mut cur = T::pi().powf(lit(-0.25));
    let mut out = Vec::with_capacity(n + 1);
    out.push(cur * log_factor.exp());
    for k in 0..n {
        let kf = from_usize::<T>(k);
        let next = (two / (kf + T::one())).sqrt() * x * cur - (kf / (kf + T::one())).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > rescale {
            cur /= rescale;
            prev /= rescale;
            log_factor += rescale.ln();
        }
        out.push(cur * log_factor.exp());
    }
    Ok(out)
}

/// Truncated `q̂ = (a + a†)/√2` and `p̂ = (a − a†)/(i√2)`.
pub fn ladder_operators<T: Real>(dim: usize) -> Result<(FockMatrix<T>, FockMatrix<T>)> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("truncation dim must be at least 2, got {dim}")));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut q = DMatrix::from_element(dim, dim, zero);
    let mut p = DMatrix::from_element(dim, dim, zero);
    for n in 1..dim {
        let amp = (from_usize::<T>(n) / lit(2.0)).sqrt();
        q[(n - 1, n)] = Complex::new(amp, T::zero());
        q[(n, n - 1)] = Complex::new(amp, T::zero());
        p[(n - 1, n)] = Complex::new(T::zero(), -amp);
        p[(n, n - 1)] = Complex::new(T::zero(), amp);
    }
    Ok((FockMatrix::new(q)?, FockMatrix::new(p)?))
}

/// `A_ij = ½{Q̂_i, Q̂_j} + ½[Q̂_i, Q̂_j] = Q̂_i Q̂_j` for `Q̂ = (q̂, p̂)`.
///
/// `Tr(ρ A_ij)` is then the single-mode uncertainty matrix of `ρ`.
pub fn quadrature_moment_operators<T: Real>(dim: usize) -> Result<Vec<Vec<FockOperator<T>>>> {
    let (q, p) = ladder_operators::<T>(dim)?;
    let quads = [q.as_operator(), p.as_operator()];
    Ok(quads.iter().map(|a| quads.iter().map(|b| a.product(b)).collect()).collect())
}

/// Largest grid spacing that still resolves `ψ_{dim−1}` (about π samples
/// per local wavelength `2π/√(2n+1)`).
pub fn max_spacing_for_dim<T: Real>(dim: usize) -> T {
    let n = from_usize::<T>(dim.saturating_sub(1));
    lit::<T>(2.0) / (lit::<T>(2.0) * n + T::one()).sqrt()
}

/// Number-basis matrix of a position density matrix.
pub fn project_state<T: Real>(rho: &PositionDensity<T>, dim: usize) -> Result<FockMatrix<T>> {
    if dim == 0 {
        return Err(Error::InvalidParameter("truncation dim must be positive".into()));
    }
    if dim - 1 > HERMITE_LIMIT {
        return Err(Error::OrderTooLarge { order: dim - 1, limit: HERMITE_LIMIT });
    }
    let spec = *rho.spec();
    let h = spec.spacing();
    let max_spacing = max_spacing_for_dim::<T>(dim);
    if h > max_spacing {
        return Err(Error::UnderResolved { dim, spacing: to_f64(h), max_spacing: to_f64(max_spacing) });
    }
    let scale = rho.values().iter().fold(T::one(), |m, z| m.max(z.modulus()));
    let deviation = rho.hermiticity_error();
    let tol = tolerance::<T>(1e-9) * scale;
    if deviation > tol {
        return Err(Error::NotHermitian { tolerance: to_f64(tol), deviation: to_f64(deviation) });
    }

    let n = spec.points();
    let mut basis = DMatrix::from_element(n, dim, Complex::new(T::zero(), T::zero()));
    for (i, x) in spec.nodes().into_iter().enumerate() {
        for (m, v) in hermite_functions(dim - 1, x)?.into_iter().enumerate() {
            basis[(i, m)] = Complex::new(v, T::zero());
        }
    }
    let weight = Complex::new(h * h, T::zero());
    let projected = basis.transpose() * rho.values() * &basis * weight;
    let half = Complex::new(lit::<T>(0.5), T::zero());
    let entries = (&projected + projected.adjoint()) * half;
    let trace = entries.trace().re;
    Ok(FockMatrix { entries, truncation_deficit: (T::one() - trace).abs() })
}

/// Full spectrum via a dense Hermitian eigensolver.
pub fn spectrum<T: Real>(rho: &FockMatrix<T>) -> Spectrum<T> {
    let mut eigenvalues: Vec<T> = rho.entries.clone().symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Spectrum {
        min_eigenvalue: eigenvalues[0],
        trace: rho.trace(),
        truncation_deficit: rho.truncation_deficit,
        eigenvalues,
    }
}

/// The map `ρ ↦ ‖Tr(ρ A_ij)‖`.
pub fn moment_matrix<T: Real>(rho: &FockMatrix<T>, ops: &[Vec<FockOperator<T>>]) -> Result<HermitianMatrix<T>> {
    let k = ops.len();
    let d = rho.dim();
    let mut out = DMatrix::from_element(k, k, Complex::new(T::zero(), T::zero()));
    for (i, row) in ops.iter().enumerate() {
        if row.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: row.len() });
        }
        for (j, op) in row.iter().enumerate() {
            if op.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: op.dim() });
            }
            // Tr(ρA) = Σ_ab ρ_ab A_ba
            out[(i, j)] = rho.entries.component_mul(&op.entries.transpose()).sum();
        }
    }
    HermitianMatrix::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values_at_origin() {
        let psi0: f64 = hermite_function(0, 0.0).unwrap();
        assert!((psi0 - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
        assert!((psi0 - 0.751_125_544_464_942_5).abs() < 1e-15);
        assert_eq!(hermite_function::<f64>(1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn hermite_matches_explicit_forms() {
        let x: f64 = 1.3;
        let g = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
        let psi = hermite_functions(3, x).unwrap();
        assert!((psi[1] - g * 2f64.sqrt() * x).abs() < 1e-15);
        assert!((psi[2] - g * (2.0 * x * x - 1.0) / 2f64.sqrt()).abs() < 1e-15);
        assert!((psi[3] - g * (2.0 * x.powi(3) - 3.0 * x) / 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn hermite_far_tail_is_finite() {
        let v: f64 = hermite_function(200, 45.0).unwrap();
        assert!(v.is_finite());
        let v: f64 = hermite_function(200, 10.0).unwrap();
        assert!(v.is_finite() && v != 0.0);
        assert!(hermite_function::<f64>(201, 0.0).is_err());
    }

    #[test]
    fn ladder_operators_dim_two() {
        let (q, p) = ladder_operators::<f64>(2).unwrap();
        let s = 0.5f64.sqrt();
        assert_eq!(q.element(0, 1), Complex::new(s, 0.0));
        assert_eq!(q.element(1, 0), Complex::new(s, 0.0));
        assert_eq!(q.element(0, 0), Complex::new(0.0, 0.0));
        assert_eq!(p.element(0, 1), Complex::new(0.0, -s));
        assert!(ladder_operators::<f64>(1).is_err());
    }

    #[test]
    fn canonical_commutator_away_from_cutoff() {
        let dim = 8;
        let (q, p) = ladder_operators::<f64>(dim).unwrap();
        let c = q.entries() * p.entries() - p.entries() * q.entries();
        for a in 0..dim - 1 {
            for b in 0..dim - 1 {
                let expected = if a == b { Complex::new(0.0, 1.0) } else { Complex::new(0.0, 0.0) };
                assert!((c[(a, b)] - expected).norm() < 1e-12);
            }
        }
        let q2 = q.entries() * q.entries();
        assert!((q2[(1, 1)].re - 1.5).abs() < 1e-14);
    }

    #[test]
    fn moment_matrix_of_number_states() {
        let ops = quadrature_moment_operators::<f64>(6).unwrap();
        let ground = FockMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let m = moment_matrix(&ground, &ops).unwrap();
        assert!((m.entries()[(0, 0)] - Complex::new(0.5, 0.0)).norm() < 1e-14);
        assert!((m.entries()[(0, 1)] - Complex::new(0.0, 0.5)).norm() < 1e-14);
        assert!((m.entries()[(1, 0)] - Complex::new(0.0, -0.5)).norm() < 1e-14);

        let mixed = FockMatrix::diagonal(&[0.5, 0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let m = moment_matrix(&mixed, &ops).unwrap();
        assert!((m.entries()[(0, 0)] - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!((m.entries()[(1, 1)] - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!((m.entries()[(0, 1)] - Complex::new(0.0, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn moment_matrix_rejects_mismatched_dims() {
        let ops = quadrature_moment_operators::<f64>(4).unwrap();
        let rho = FockMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(moment_matrix(&rho, &ops), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn spectrum_of_number_state() {
        let s = spectrum(&FockMatrix::<f64>::diagonal(&[0.0, 1.0, 0.0, 0.0]).unwrap());
        assert_eq!(s.eigenvalues, vec![0.0, 0.0, 0.0, 1.0]);
        assert_eq!(s.min_eigenvalue, 0.0);
        assert_eq!(s.trace, 1.0);
        assert!(!s.is_nonpositive());
    }
}
