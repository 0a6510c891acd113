//! Transforms between a gridded Wigner function and the position-space
//! density matrix `ρ(x, x′)` on the same axis:
//!
//! `ρ(x, x′) = (1/2π) ∫ W((x+x′)/2, p) e^{ip(x−x′)} dp`
//!
//! `W(q, p) = ∫ ρ(q + u/2, q − u/2) e^{−ipu} du`
//!
//! For `x, x′` on the cell centres, `(x+x′)/2` falls either on a node or
//! halfway between two; the half-node values are obtained by a spectral
//! (FFT phase-shift) interpolation along `q`, which is exact for band-limited
//! Wigner functions and keeps the transform pair accurate to near machine
//! precision for the oscillator states used here.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::phase_space::grid::{GridSpec, GridWigner};
use crate::real::{from_usize, lit, to_f64, tolerance, Real};

const NORMALIZATION_TOLERANCE: f64 = 1e-4;
const HERMITIAN_TOLERANCE: f64 = 1e-9;

/// Density matrix `ρ(x, x′)` sampled on the `q` nodes of a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDensity<T: Real> {
    spec: GridSpec<T>,
    values: DMatrix<Complex<T>>,
}

impl<T: Real> PositionDensity<T> {
    pub fn new(spec: GridSpec<T>, values: DMatrix<Complex<T>>) -> Result<Self> {
        if values.nrows() != spec.points() || values.ncols() != spec.points() {
            return Err(Error::DimensionMismatch {
                expected: spec.points(),
                found: values.nrows().max(values.ncols()),
            });
        }
        Ok(Self { spec, values })
    }

    pub fn from_fn(spec: GridSpec<T>, mut f: impl FnMut(T, T) -> Complex<T>) -> Result<Self> {
        let nodes = spec.nodes();
        let values = DMatrix::from_fn(spec.points(), spec.points(), |i, j| f(nodes[i], nodes[j]));
        Self::new(spec, values)
    }

    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    pub fn values(&self) -> &DMatrix<Complex<T>> {
        &self.values
    }

    /// `∫ ρ(x, x) dx`.
    pub fn trace(&self) -> T {
        let diag = (0..self.spec.points()).fold(T::zero(), |acc, i| acc + self.values[(i, i)].re);
        diag * self.spec.spacing()
    }

    /// `max |ρ(x, x′) − conj ρ(x′, x)|`.
    pub fn hermiticity_error(&self) -> T {
        let n = self.spec.points();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..=i {
                let d = self.values[(i, j)] - self.values[(j, i)].conj();
                worst = worst.max(d.modulus());
            }
        }
        worst
    }
}

/// Position density matrix of a gridded Wigner function.
pub fn wigner_to_density<T: Real>(w: &GridWigner<T>) -> Result<PositionDensity<T>> {
    w.require_normalized(NORMALIZATION_TOLERANCE)?;
    let spec = *w.spec();
    let n = spec.points();
    let h = spec.spacing();
    let src = w.values();

    // rows of `centres` hold W(X_c, ·) for X_c = q_0 + c·h/2, c = 0..2n-1
    let shifted = half_node_shift(src, h);
    let mut centres: Vec<T> = Vec::with_capacity((2 * n - 1) * n);
    for c in 0..(2 * n - 1) {
        let k = c / 2;
        if c % 2 == 0 {
            centres.extend((0..n).map(|l| src[(k, l)]));
        } else {
            centres.extend((0..n).map(|l| shifted[(k, l)]));
        }
    }

    let (cos, sin) = phase_tables(&spec);
    let weight = h / T::two_pi();
    let mut values = DMatrix::from_element(n, n, Complex::new(T::zero(), T::zero()));
    for i in 0..n {
        for j in 0..=i {
            let row = &centres[(i + j) * n..(i + j + 1) * n];
            let d = i - j;
            let (c_row, s_row) = (&cos[d * n..(d + 1) * n], &sin[d * n..(d + 1) * n]);
            let mut re = T::zero();
            let mut im = T::zero();
            for l in 0..n {
                re += row[l] * c_row[l];
                im += row[l] * s_row[l];
            }
            let rho = Complex::new(re * weight, im * weight);
            values[(i, j)] = rho;
            values[(j, i)] = rho.conj();
        }
    }
    PositionDensity::new(spec, values)
}

/// Wigner function of a gridded position density matrix.
pub fn density_to_wigner<T: Real>(rho: &PositionDensity<T>) -> Result<GridWigner<T>> {
    let scale = rho.values.iter().fold(T::one(), |m, z| m.max(z.modulus()));
    let deviation = rho.hermiticity_error();
    let tol = tolerance::<T>(HERMITIAN_TOLERANCE) * scale;
    if deviation > tol {
        return Err(Error::NotHermitian { tolerance: to_f64(tol), deviation: to_f64(deviation) });
    }
    let spec = *rho.spec();
    let n = spec.points();
    let h = spec.spacing();
    let (cos, sin) = phase_tables(&spec);
    let two = lit::<T>(2.0);
    let mut values = DMatrix::zeros(n, n);
    for k in 0..n {
        let reach = k.min(n - 1 - k);
        let centre = rho.values[(k, k)].re;
        let mut acc = vec![centre; n];
        for m in 1..=reach {
            let z = rho.values[(k + m, k - m)];
            let d = 2 * m;
            let (c_row, s_row) = (&cos[d * n..(d + 1) * n], &sin[d * n..(d + 1) * n]);
            for l in 0..n {
                acc[l] += two * (z.re * c_row[l] + z.im * s_row[l]);
            }
        }
        for (l, a) in acc.into_iter().enumerate() {
            values[(k, l)] = a * two * h;
        }
    }
    GridWigner::new(spec, values)
}

/// `cos(p_l·d·h)` and `sin(p_l·d·h)` for `d = 0..n`, row-major by `d`.
fn phase_tables<T: Real>(spec: &GridSpec<T>) -> (Vec<T>, Vec<T>) {
    let n = spec.points();
    let h = spec.spacing();
    let nodes = spec.nodes();
    let mut cos = Vec::with_capacity(n * n);
    let mut sin = Vec::with_capacity(n * n);
    for d in 0..n {
        let y = from_usize::<T>(d) * h;
        for &p in &nodes {
            let (s, c) = (p * y).sin_cos();
            cos.push(c);
            sin.push(s);
        }
    }
    (cos, sin)
}

/// Values at `q_k + h/2` for every column, by a trigonometric phase shift.
fn half_node_shift<T: Real>(src: &DMatrix<T>, h: T) -> DMatrix<T> {
    let n = src.nrows();
    let mut planner = FftPlanner::<T>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let length = from_usize::<T>(n) * h;
    let shifts: Vec<Complex<T>> = (0..n)
        .map(|m| {
            if 2 * m == n {
                // Nyquist mode has no odd partner; its half-shift vanishes on the nodes
                return Complex::new(T::zero(), T::zero());
            }
            let freq = if 2 * m < n { from_usize::<T>(m) } else { -from_usize::<T>(n - m) };
            let phase = T::two_pi() * freq / length * h / lit(2.0);
            Complex::new(phase.cos(), phase.sin())
        })
        .collect();
    let norm = T::one() / from_usize(n);
    let mut out = DMatrix::zeros(n, src.ncols());
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for col in 0..src.ncols() {
        for (k, b) in buf.iter_mut().enumerate() {
            *b = Complex::new(src[(k, col)], T::zero());
        }
        forward.process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&shifts) {
            *b *= *s;
        }
        inverse.process(&mut buf);
        for (k, b) in buf.iter().enumerate() {
            out[(k, col)] = b.re * norm;
        }
    }
    out
}
