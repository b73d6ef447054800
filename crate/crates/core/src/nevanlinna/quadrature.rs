//! Circle averages by nested trapezoidal quadrature.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub initial_nodes: usize,
    pub tolerance: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { initial_nodes: 64, tolerance: 1e-9, max_doublings: 16 }
    }
}

impl QuadratureConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        QuadratureConfig { tolerance, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_nodes < 16 {
            return Err(Error::Invalid("initial_nodes must be at least 16".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Invalid("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Mean of `h` over the circle `|z| = r`.
///
/// The node count doubles (reusing previous nodes) until two successive
/// estimates differ by less than the tolerance.
pub fn circle_mean(h: impl Fn(Complex64) -> f64, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    circle_mean_complex(|z| Complex64::new(h(z), 0.0), r, cfg).map(|c| c.re)
}

/// Complex-valued version of [`circle_mean`].
pub fn circle_mean_complex(
    h: impl Fn(Complex64) -> Complex64,
    r: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    cfg.validate()?;
    let at = |k: usize, n: usize| h(Complex64::from_polar(r, TAU * k as f64 / n as f64));
    let mut n = cfg.initial_nodes;
    let mut sum: Complex64 = (0..n).map(|k| at(k, n)).sum();
    let mut mean = sum / n as f64;
    for _ in 0..cfg.max_doublings {
        let mids: Complex64 = (0..n).map(|k| at(2 * k + 1, 2 * n)).sum();
        sum += mids;
        n *= 2;
        let next = sum / n as f64;
        if !next.is_finite() {
            return Err(Error::NonConvergence(r));
        }
        if (next - mean).norm() < cfg.tolerance {
            return Ok(next);
        }
        mean = next;
    }
    Err(Error::NonConvergence(r))
}
