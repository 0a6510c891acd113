use std::path::PathBuf;
use std::str::FromStr;

use phasekit::fock::{project_state, spectrum as fock_spectrum};
use phasekit::gaussian::{default_lambda_grid, read_covariance, separability_scan, write_covariance, MatrixLayout};
use phasekit::moments::{is_psd, moments_from_grid, sr_matrix, sr_value, DEFAULT_PSD_TOLERANCE};
use phasekit::phase_space::{density_to_wigner, overlap, sample_to_grid, wigner_to_density, DEFAULT_POINTS};
use phasekit::{AnalyticWigner, CovarianceMatrix, GridSpec, GridWigner, Verdict};

use crate::output::{Cell, Table};

/// |sr_value − 1/4| below this reports the state as saturating the bound.
const SATURATION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] phasekit::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpec(pub usize);

impl FromStr for StateSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.strip_prefix("fock")
            .and_then(|n| n.parse().ok())
            .map(StateSpec)
            .ok_or_else(|| format!("expected a number state like `fock1`, got `{s}`"))
    }
}

impl std::fmt::Display for StateSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "fock{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid(pub Vec<f64>);

impl FromStr for LambdaGrid {
    type Err = String;

    /// `default`, `a,b,c`, or `start:stop:count` (inclusive, zero dropped).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s == "default" {
            return Ok(LambdaGrid(default_lambda_grid()));
        }
        let num = |t: &str| -> std::result::Result<f64, String> {
            let x: f64 = t.trim().parse().map_err(|_| format!("bad λ value `{t}`"))?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(format!("λ must be finite, got `{t}`"))
            }
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [one] => one.split(',').map(num).collect::<std::result::Result<_, _>>().map(LambdaGrid),
            [start, stop, count] => {
                let (a, b) = (num(start)?, num(stop)?);
                let n: usize = count.trim().parse().map_err(|_| format!("bad point count `{count}`"))?;
                if n < 2 || a >= b {
                    return Err("range needs start < stop and at least 2 points".into());
                }
                let step = (b - a) / (n - 1) as f64;
                let grid: Vec<f64> = (0..n)
                    .map(|k| if k == n - 1 { b } else { a + k as f64 * step })
                    .filter(|x| x.abs() > 1e-12 * step)
                    .collect();
                Ok(LambdaGrid(grid))
            }
            _ => Err(format!("unrecognised λ grid `{s}`")),
        }
    }
}

fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("--{name} must be finite")))
    }
}

fn grid_for(state: &AnalyticWigner, points: Option<usize>, extent: Option<f64>) -> Result<GridSpec> {
    let extent = match extent {
        Some(e) => finite("extent", e)?,
        None => 2.0 * state.required_extent(),
    };
    Ok(GridSpec::new(extent, points.unwrap_or(DEFAULT_POINTS))?)
}

fn sampled(
    state: StateSpec,
    lambda: f64,
    kappa: f64,
    points: Option<usize>,
    extent: Option<f64>,
) -> Result<(AnalyticWigner, GridWigner)> {
    let s = AnalyticWigner::new(state.0, finite("lambda", lambda)?, finite("kappa", kappa)?)?;
    let w = sample_to_grid(&s, grid_for(&s, points, extent)?)?;
    Ok((s, w))
}

pub fn fidelity(
    lambda_min: f64,
    lambda_max: f64,
    steps: usize,
    points: Option<usize>,
    extent: Option<f64>,
) -> Result<Table> {
    let (lo, hi) = (finite("lambda-min", lambda_min)?, finite("lambda-max", lambda_max)?);
    if !(lo > 0.0 && lo < hi) {
        return Err(CliError::Usage("need 0 < --lambda-min < --lambda-max".into()));
    }
    if steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    // a user-fixed grid must hold the widest state
    let fixed = match extent {
        Some(_) => Some(grid_for(&AnalyticWigner::scaled(1, lo)?, points, extent)?),
        None => None,
    };
    let mut table = Table::new("fidelity", &["lambda", "f_quadrature", "f_closed_form", "leading_term"]);
    let mut worst: f64 = 0.0;
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let l = if k == steps - 1 { hi } else { lo + k as f64 * (hi - lo) / (steps - 1) as f64 };
        let excited = AnalyticWigner::scaled(1, l)?;
        let spec = match fixed {
            Some(spec) => spec,
            None => grid_for(&excited, points, None)?,
        };
        let f = overlap(&sample_to_grid(&AnalyticWigner::fock(0), spec)?, &sample_to_grid(&excited, spec)?)?;
        let closed = 2.0 * l * l * (l * l - 1.0) / (1.0 + l * l).powi(2);
        worst = worst.max((f - closed).abs());
        rows.push(vec![l.into(), f.into(), closed.into(), (-2.0 * l * l).into()]);
    }
    table.summary("max_abs_difference", worst);
    for r in rows {
        table.row(r);
    }
    Ok(table)
}

pub fn uncertainty(
    state: StateSpec,
    lambda: f64,
    kappa: f64,
    points: Option<usize>,
    extent: Option<f64>,
) -> Result<Table> {
    let (_, w) = sampled(state, lambda, kappa, points, extent)?;
    let m = moments_from_grid(&w)?;
    let matrix = sr_matrix(&m);
    let ev = matrix.eigenvalues();
    let sr = sr_value(&m);
    let verdict = if is_psd(&matrix, DEFAULT_PSD_TOLERANCE).psd { "satisfied" } else { "violated" };
    let mut t = Table::new("uncertainty", &[]);
    t.summary("state", state.to_string())
        .summary("lambda", lambda)
        .summary("kappa", kappa)
        .summary("sigma_qq", m.sigma_qq)
        .summary("sigma_pp", m.sigma_pp)
        .summary("sigma_qp", m.sigma_qp)
        .summary("sr_value", sr)
        .summary("eigenvalue_min", ev[0])
        .summary("eigenvalue_max", ev[1])
        .summary("verdict", verdict)
        .summary("saturated", (sr - 0.25).abs() <= SATURATION_TOLERANCE);
    Ok(t)
}

pub fn spectrum(
    state: StateSpec,
    lambda: f64,
    kappa: f64,
    dim: usize,
    points: Option<usize>,
    extent: Option<f64>,
) -> Result<Table> {
    let (_, w) = sampled(state, lambda, kappa, points, extent)?;
    let rho = project_state(&wigner_to_density(&w)?, dim)?;
    let s = fock_spectrum(&rho);
    let m = moments_from_grid(&w)?;
    let sr_ok = is_psd(&sr_matrix(&m), DEFAULT_PSD_TOLERANCE).psd;
    let mut t = Table::new("spectrum", &["index", "eigenvalue"]);
    t.summary("state", state.to_string())
        .summary("lambda", lambda)
        .summary("kappa", kappa)
        .summary("dim", dim)
        .summary("trace", s.trace)
        .summary("truncation_deficit", s.truncation_deficit)
        .summary("vacuum_weight", rho.element(0, 0).re)
        .summary("min_eigenvalue", s.min_eigenvalue)
        .summary("operator", if s.is_nonpositive() { "nonpositive" } else { "positive" })
        .summary("sr_value", sr_value(&m))
        .summary("sr_verdict", if sr_ok { "satisfied" } else { "violated" });
    for (i, e) in s.eigenvalues.iter().enumerate() {
        t.row(vec![i.into(), (*e).into()]);
    }
    Ok(t)
}

pub fn separability(cov_json: &str, modes: &[usize], grid: &LambdaGrid, tol: f64) -> Result<Table> {
    let cov: CovarianceMatrix = read_covariance(cov_json)?;
    let tol = finite("tol", tol)?;
    let report = separability_scan(&cov, modes, &grid.0, tol)?;
    let mut t = Table::new("separability", &["lambda", "min_eigenvalue", "violation", "guaranteed_region"]);
    let mut modes = modes.to_vec();
    modes.sort_unstable();
    t.summary("modes", Cell::Ints(modes))
        .summary("tolerance", tol)
        .summary(
            "verdict",
            match report.verdict {
                Verdict::NoViolation => "no_violation",
                Verdict::EntanglementDetected => "entanglement_detected",
            },
        )
        .summary("violations", Cell::List(report.violations.clone()))
        .summary("outside_guaranteed_region", Cell::List(report.outside_guaranteed_region.clone()));
    for (&l, &e) in report.lambda_grid.iter().zip(&report.min_eigenvalues) {
        t.row(vec![l.into(), e.into(), report.violations.contains(&l).into(), (l.abs() <= 1.0).into()]);
    }
    Ok(t)
}

pub fn tmsv(r: f64, layout: MatrixLayout) -> Result<String> {
    let cov = CovarianceMatrix::two_mode_squeezed(finite("r", r)?)?;
    let mut s = write_covariance(&cov, layout);
    s.push('\n');
    Ok(s)
}

pub fn roundtrip(
    state: StateSpec,
    lambda: f64,
    kappa: f64,
    points: Option<usize>,
    extent: Option<f64>,
) -> Result<Table> {
    let (_, w) = sampled(state, lambda, kappa, points, extent)?;
    let rho = wigner_to_density(&w)?;
    let back = density_to_wigner(&rho)?;
    let mut t = Table::new("roundtrip", &[]);
    t.summary("state", state.to_string())
        .summary("lambda", lambda)
        .summary("kappa", kappa)
        .summary("grid", w.spec().points())
        .summary("extent", w.spec().extent())
        .summary("max_abs_error", w.max_abs_diff(&back)?)
        .summary("norm_before", w.norm())
        .summary("norm_after", back.norm())
        .summary("norm_drift", (back.norm() - w.norm()).abs())
        .summary("hermiticity_error", rho.hermiticity_error());
    Ok(t)
}
