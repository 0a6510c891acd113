#![allow(dead_code)]

use phasekit::CovarianceMatrix;
use rand::Rng;

/// `ν R(θ) diag(e^{−2r}, e^{2r}) R(θ)ᵀ` with `ν ≥ 1/2`: a valid thermal
/// squeezed single-mode covariance.
pub fn single_mode(nu: f64, r: f64, theta: f64) -> CovarianceMatrix {
    let (s, c) = theta.sin_cos();
    let (a, b) = ((-2.0 * r).exp(), (2.0 * r).exp());
    let qq = nu * (c * c * a + s * s * b);
    let pp = nu * (s * s * a + c * c * b);
    let qp = nu * c * s * (a - b);
    CovarianceMatrix::single_mode(qq, pp, qp)
}

pub fn random_single_mode<R: Rng>(rng: &mut R) -> CovarianceMatrix {
    let nu = rng.random_range(0.5..3.0);
    let r = rng.random_range(-1.2..1.2);
    let theta = rng.random_range(0.0..std::f64::consts::PI);
    single_mode(nu, r, theta)
}

pub fn random_product<R: Rng>(rng: &mut R) -> CovarianceMatrix {
    CovarianceMatrix::direct_sum(&[random_single_mode(rng), random_single_mode(rng)]).unwrap()
}
