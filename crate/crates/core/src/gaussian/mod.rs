//! Second-moment description of N-mode Gaussian states and the
//! partial-scaling separability test.
//!
//! Covariances are stored in `(q₁…q_N, p₁…p_N)` order. Modes are numbered
//! from 1. A state is physical iff `Σ + (i/2)J ⪰ 0`.
//!
//! Scaling the momentum of one subsystem, `W ↦ |λ| W(q, λp)`, maps the
//! second moments of a product state onto those of another operator whose
//! uncertainty matrix stays positive for `0 < |λ| ≤ 1`. Because separable
//! states are convex mixtures of products, a negative eigenvalue of the
//! scaled uncertainty matrix for some `|λ| ≤ 1` certifies entanglement.
//! `λ = −1` reduces to the partial transpose.

mod json;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{is_psd, multimode_uncertainty_matrix, Positivity, DEFAULT_PSD_TOLERANCE};
use crate::real::{lit, to_f64, Real};

pub use json::{read_covariance, write_covariance, CovarianceFile, MatrixLayout};

/// Absolute symmetry tolerance accepted on construction.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Row/column layout of a 2N×2N covariance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// `(q₁…q_N, p₁…p_N)`.
    QBlockPBlock,
    /// `(q₁, p₁, q₂, p₂, …)`.
    Interleaved,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T: Real> {
    modes: usize,
    matrix: DMatrix<T>,
}

impl<T: Real> CovarianceMatrix<T> {
    /// Takes a matrix in `(q₁…q_N, p₁…p_N)` order. Symmetry is checked and
    /// then enforced exactly.
    pub fn new(modes: usize, matrix: DMatrix<T>) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParameter("number of modes must be positive".into()));
        }
        let dim = 2 * modes;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.nrows().max(matrix.ncols()) });
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("covariance entries must be finite".into()));
        }
        let tol = lit::<T>(SYMMETRY_TOLERANCE);
        let asym = (&matrix - matrix.transpose()).iter().fold(T::zero(), |m, x| m.max(x.abs()));
        if asym > tol {
            return Err(Error::NotSymmetric { tolerance: SYMMETRY_TOLERANCE });
        }
        let matrix = (&matrix + matrix.transpose()) * lit::<T>(0.5);
        Ok(Self { modes, matrix })
    }

    pub fn with_ordering(modes: usize, matrix: DMatrix<T>, ordering: Ordering) -> Result<Self> {
        match ordering {
            Ordering::QBlockPBlock => Self::new(modes, matrix),
            Ordering::Interleaved => {
                if matrix.nrows() != 2 * modes || matrix.ncols() != 2 * modes {
                    return Err(Error::DimensionMismatch { expected: 2 * modes, found: matrix.nrows() });
                }
                let perm = interleaved_to_block(modes);
                let m = DMatrix::from_fn(2 * modes, 2 * modes, |a, b| matrix[(perm[a], perm[b])]);
                Self::new(modes, m)
            }
        }
    }

    /// Single-mode covariance `[[σ_qq, σ_qp], [σ_qp, σ_pp]]`.
    pub fn single_mode(sigma_qq: T, sigma_pp: T, sigma_qp: T) -> Self {
        let matrix = DMatrix::from_row_slice(2, 2, &[sigma_qq, sigma_qp, sigma_qp, sigma_pp]);
        Self { modes: 1, matrix }
    }

    /// `Σ = I/2`.
    pub fn vacuum(modes: usize) -> Result<Self> {
        Self::new(modes, DMatrix::identity(2 * modes, 2 * modes) * lit::<T>(0.5))
    }

    /// Two-mode squeezed vacuum with squeezing `r`.
    pub fn two_mode_squeezed(r: T) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidParameter("squeezing r must be finite".into()));
        }
        let two_r = lit::<T>(2.0) * r;
        let c = two_r.cosh() / lit(2.0);
        let s = two_r.sinh() / lit(2.0);
        let mut m = DMatrix::identity(4, 4) * c;
        // (q1, q2, p1, p2)
        m[(0, 1)] = s;
        m[(1, 0)] = s;
        m[(2, 3)] = -s;
        m[(3, 2)] = -s;
        Self::new(2, m)
    }

    /// Product state `Σ₁ ⊕ Σ₂ ⊕ …`, modes concatenated in order.
    pub fn direct_sum(parts: &[Self]) -> Result<Self> {
        let modes: usize = parts.iter().map(|p| p.modes).sum();
        let mut m = DMatrix::zeros(2 * modes, 2 * modes);
        let mut offset = 0;
        for part in parts {
            let k = part.modes;
            for a in 0..2 * k {
                for b in 0..2 * k {
                    let ra = if a < k { offset + a } else { modes + offset + a - k };
                    let rb = if b < k { offset + b } else { modes + offset + b - k };
                    m[(ra, rb)] = part.matrix[(a, b)];
                }
            }
            offset += k;
        }
        Self::new(modes, m)
    }

    /// Covariance from raw symmetrised moments `½⟨Q_a Q_b + Q_b Q_a⟩` and
    /// means `⟨Q_a⟩`. Subtracting the means is the local displacement that
    /// brings any state to zero first moments without changing its
    /// entanglement.
    pub fn from_raw_moments(modes: usize, means: &[T], raw: DMatrix<T>) -> Result<Self> {
        if means.len() != 2 * modes {
            return Err(Error::DimensionMismatch { expected: 2 * modes, found: means.len() });
        }
        if raw.nrows() != 2 * modes || raw.ncols() != 2 * modes {
            return Err(Error::DimensionMismatch { expected: 2 * modes, found: raw.nrows() });
        }
        let centred = DMatrix::from_fn(2 * modes, 2 * modes, |a, b| raw[(a, b)] - means[a] * means[b]);
        Self::new(modes, centred)
    }

    /// Classical mixture `Σ_k w_k Σ_k` of zero-mean states.
    pub fn mixture(parts: &[(T, Self)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let modes = first.1.modes;
        let mut m = DMatrix::zeros(2 * modes, 2 * modes);
        let mut total = T::zero();
        for (w, part) in parts {
            if part.modes != modes {
                return Err(Error::DimensionMismatch { expected: modes, found: part.modes });
            }
            if *w < T::zero() {
                return Err(Error::InvalidParameter("mixture weights must be nonnegative".into()));
            }
            m += &part.matrix * *w;
            total += *w;
        }
        if (total - T::one()).abs() > lit(1e-12) {
            return Err(Error::InvalidParameter(format!("mixture weights sum to {}", to_f64(total))));
        }
        Self::new(modes, m)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn to_ordering(&self, ordering: Ordering) -> DMatrix<T> {
        match ordering {
            Ordering::QBlockPBlock => self.matrix.clone(),
            Ordering::Interleaved => {
                let perm = block_to_interleaved(self.modes);
                DMatrix::from_fn(2 * self.modes, 2 * self.modes, |a, b| self.matrix[(perm[a], perm[b])])
            }
        }
    }

    /// Index of `q_mode` (1-based mode) in the block ordering.
    pub fn q_index(&self, mode: usize) -> Result<usize> {
        self.check_mode(mode)?;
        Ok(mode - 1)
    }

    /// Index of `p_mode` (1-based mode) in the block ordering.
    pub fn p_index(&self, mode: usize) -> Result<usize> {
        self.check_mode(mode)?;
        Ok(self.modes + mode - 1)
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode == 0 || mode > self.modes {
            return Err(Error::BadMode { mode, modes: self.modes });
        }
        Ok(())
    }

    /// `D Σ D` for a diagonal `D`.
    fn diagonal_congruence(&self, d: &[T]) -> Self {
        let matrix = DMatrix::from_fn(self.matrix.nrows(), self.matrix.ncols(), |a, b| {
            d[a] * self.matrix[(a, b)] * d[b]
        });
        Self { modes: self.modes, matrix }
    }
}

// row `a` of the interleaved layout holds block-layout row `perm[a]`
fn block_to_interleaved(modes: usize) -> Vec<usize> {
    (0..2 * modes).map(|a| if a % 2 == 0 { a / 2 } else { modes + a / 2 }).collect()
}

fn interleaved_to_block(modes: usize) -> Vec<usize> {
    (0..2 * modes).map(|a| if a < modes { 2 * a } else { 2 * (a - modes) + 1 }).collect()
}

/// `J = [[0, I_N], [−I_N, 0]]`.
pub fn symplectic_form<T: Real>(modes: usize) -> DMatrix<T> {
    DMatrix::from_fn(2 * modes, 2 * modes, |a, b| {
        if b == a + modes && a < modes {
            T::one()
        } else if a == b + modes && b < modes {
            -T::one()
        } else {
            T::zero()
        }
    })
}

/// Moments of `W(κq, κ⁻¹p)` on `mode`: `q ↦ q/κ`, `p ↦ κp`.
pub fn squeeze_symplectic<T: Real>(cov: &CovarianceMatrix<T>, mode: usize, kappa: T) -> Result<CovarianceMatrix<T>> {
    let (qi, pi) = (cov.q_index(mode)?, cov.p_index(mode)?);
    if kappa <= T::zero() || !kappa.is_finite() {
        return Err(Error::DegenerateParameter(format!(
            "squeeze κ must be finite and positive, got {}",
            to_f64(kappa)
        )));
    }
    let mut d = vec![T::one(); 2 * cov.modes()];
    d[qi] = T::one() / kappa;
    d[pi] = kappa;
    Ok(cov.diagonal_congruence(&d))
}

/// Moments after `W ↦ |λ| W(q, λp)` on `mode`: entries with one `p_mode`
/// factor scale by `λ⁻¹`, `σ_{p_mode p_mode}` by `λ⁻²`.
pub fn partial_scale<T: Real>(cov: &CovarianceMatrix<T>, mode: usize, lambda: T) -> Result<CovarianceMatrix<T>> {
    let pi = cov.p_index(mode)?;
    if lambda == T::zero() || !lambda.is_finite() {
        return Err(Error::DegenerateParameter(format!(
            "scale λ must be finite and nonzero, got {}",
            to_f64(lambda)
        )));
    }
    let mut d = vec![T::one(); 2 * cov.modes()];
    d[pi] = T::one() / lambda;
    Ok(cov.diagonal_congruence(&d))
}

/// Positivity of `Σ + (i/2)J`.
pub fn is_valid_state<T: Real>(cov: &CovarianceMatrix<T>) -> Positivity<T> {
    is_psd(&multimode_uncertainty_matrix(cov), lit(DEFAULT_PSD_TOLERANCE))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Inconclusive: the scan found no negative eigenvalue.
    NoViolation,
    EntanglementDetected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparabilityReport<T> {
    /// Scanned values, ascending.
    pub lambda_grid: Vec<T>,
    /// Minimum eigenvalue of the scaled uncertainty matrix, per λ.
    pub min_eigenvalues: Vec<T>,
    /// λ with `|λ| ≤ 1` whose minimum eigenvalue is below `−tol`.
    pub violations: Vec<T>,
    /// Scanned λ with `|λ| > 1`, where a negative eigenvalue proves nothing.
    pub outside_guaranteed_region: Vec<T>,
    pub verdict: Verdict,
}

/// 40 points: `−1, −0.95, …, 0.95, 1` without zero.
pub fn default_lambda_grid<T: Real>() -> Vec<T> {
    (-20i32..=20).filter(|&k| k != 0).map(|k| lit::<T>(f64::from(k) / 20.0)).collect()
}

/// Partial-scaling scan: every mode in `partition` is scaled with the same
/// λ and the minimum eigenvalue of `Σ⁽ˢ⁾ + (i/2)J` is recorded.
pub fn separability_scan<T: Real>(
    cov: &CovarianceMatrix<T>,
    partition: &[usize],
    lambdas: &[T],
    tol: T,
) -> Result<SeparabilityReport<T>> {
    let validity = is_valid_state(cov);
    if !validity.psd {
        return Err(Error::InvalidState { min_eigenvalue: to_f64(validity.min_eigenvalue) });
    }
    if lambdas.is_empty() {
        return Err(Error::EmptyLambdaGrid);
    }
    if partition.is_empty() {
        return Err(Error::InvalidParameter("mode partition must name at least one mode".into()));
    }
    let mut modes = partition.to_vec();
    modes.sort_unstable();
    modes.dedup();
    if modes.len() == cov.modes() {
        return Err(Error::InvalidParameter("mode partition must leave at least one mode unscaled".into()));
    }
    for &m in &modes {
        cov.p_index(m)?;
    }

    let mut grid = lambdas.to_vec();
    if let Some(bad) = grid.iter().find(|l| **l == T::zero() || !l.is_finite()) {
        return Err(Error::DegenerateParameter(format!("λ grid contains {}", to_f64(*bad))));
    }
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite λ"));

    let mut min_eigenvalues = Vec::with_capacity(grid.len());
    let mut violations = Vec::new();
    let mut outside = Vec::new();
    for &lambda in &grid {
        let mut scaled = cov.clone();
        for &m in &modes {
            scaled = partial_scale(&scaled, m, lambda)?;
        }
        let min_ev = multimode_uncertainty_matrix(&scaled).eigenvalues()[0];
        min_eigenvalues.push(min_ev);
        if lambda.abs() > T::one() {
            outside.push(lambda);
        } else if min_ev < -tol {
            violations.push(lambda);
        }
    }
    let verdict = if violations.is_empty() { Verdict::NoViolation } else { Verdict::EntanglementDetected };
    Ok(SeparabilityReport {
        lambda_grid: grid,
        min_eigenvalues,
        violations,
        outside_guaranteed_region: outside,
        verdict,
    })
}
