use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::real::{from_usize, lit, to_f64, Real};

pub const DEFAULT_POINTS: usize = 512;
const MIN_POINTS: usize = 16;

/// Square phase-space grid covering `q, p ∈ [-extent, extent]` with
/// `points` cell centres per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    extent: T,
    points: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(extent: T, points: usize) -> Result<Self> {
        if extent <= T::zero() || !extent.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "extent must be positive and finite, got {}",
                to_f64(extent)
            )));
        }
        if points < MIN_POINTS || !points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be even and at least {MIN_POINTS}, got {points}"
            )));
        }
        Ok(Self { extent, points })
    }

    /// Default grid for a state scaled by `scale`: extent `8·max(1, 1/|λ|)`
    /// with [`DEFAULT_POINTS`] points.
    pub fn for_scale(scale: T) -> Result<Self> {
        if scale == T::zero() {
            return Err(Error::DegenerateParameter("scale λ must be nonzero".into()));
        }
        let stretch = T::one().max(T::one() / scale.abs());
        Self::new(lit::<T>(8.0) * stretch, DEFAULT_POINTS)
    }

    pub fn extent(&self) -> T {
        self.extent
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Cell width, identical on both axes.
    pub fn spacing(&self) -> T {
        lit::<T>(2.0) * self.extent / from_usize(self.points)
    }

    /// Coordinate of the `i`-th cell centre.
    pub fn node(&self, i: usize) -> T {
        -self.extent + (from_usize::<T>(i) + lit(0.5)) * self.spacing()
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..self.points).map(|i| self.node(i)).collect()
    }

    /// Area element `dq dp / 2π` of one cell.
    pub(crate) fn measure(&self) -> T {
        let h = self.spacing();
        h * h / T::two_pi()
    }
}

/// Wigner function sampled on a [`GridSpec`]; rows index `q`, columns `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWigner<T: Real> {
    spec: GridSpec<T>,
    values: DMatrix<T>,
}

impl<T: Real> GridWigner<T> {
    pub fn new(spec: GridSpec<T>, values: DMatrix<T>) -> Result<Self> {
        if values.nrows() != spec.points() || values.ncols() != spec.points() {
            return Err(Error::DimensionMismatch {
                expected: spec.points(),
                found: values.nrows().max(values.ncols()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite Wigner value".into()));
        }
        Ok(Self { spec, values })
    }

    pub fn from_fn(spec: GridSpec<T>, mut f: impl FnMut(T, T) -> T) -> Result<Self> {
        let nodes = spec.nodes();
        let values = DMatrix::from_fn(spec.points(), spec.points(), |i, j| f(nodes[i], nodes[j]));
        Self::new(spec, values)
    }

    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    pub fn into_values(self) -> DMatrix<T> {
        self.values
    }

    /// `∫ W dq dp / 2π`.
    pub fn norm(&self) -> T {
        self.values.sum() * self.spec.measure()
    }

    /// `∫ f(q, p) W dq dp / 2π`.
    pub fn integrate(&self, mut f: impl FnMut(T, T) -> T) -> T {
        let nodes = self.spec.nodes();
        let mut acc = T::zero();
        for (j, &p) in nodes.iter().enumerate() {
            for (i, &q) in nodes.iter().enumerate() {
                acc += f(q, p) * self.values[(i, j)];
            }
        }
        acc * self.spec.measure()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.spec != other.spec {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }

    pub(crate) fn require_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - T::one()).abs() > lit(tol) {
            return Err(Error::NotNormalized { norm: to_f64(norm), tolerance: tol });
        }
        Ok(())
    }
}

/// Phase-space overlap `∫ a·b dq dp / 2π`, i.e. `Tr(ρ_a ρ_b)`.
pub fn overlap<T: Real>(a: &GridWigner<T>, b: &GridWigner<T>) -> Result<T> {
    if a.spec != b.spec {
        return Err(Error::GridMismatch);
    }
    let sum = a
        .values
        .iter()
        .zip(b.values.iter())
        .fold(T::zero(), |acc, (&x, &y)| acc + x * y);
    Ok(sum * a.spec.measure())
}
