//! Counting functions `N(r) = ∫_1^r n(t)/t dt` of zeros of exponential
//! polynomials.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;

use super::curve::{ExpPoly, NumericExpPoly};
use super::quadrature::{circle_mean_complex, QuadratureConfig};
use super::roots::roots;
use crate::error::{Error, Result};

/// Truncation level for multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    Infinite,
    Level(usize),
}

impl Truncation {
    fn cap(self, m: usize) -> usize {
        match self {
            Truncation::Infinite => m,
            Truncation::Level(k) => m.min(k),
        }
    }
}

/// Winding numbers must be this close to an integer.
pub const WINDING_TOLERANCE: f64 = 1e-3;

const GRID_POINTS: usize = 48;

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::Invalid(format!("radius {r} must be at least 1")));
    }
    Ok(())
}

fn nonzero(g: &ExpPoly) -> Result<()> {
    if g.is_zero() {
        return Err(Error::Invalid("cannot count zeros of the zero function".into()));
    }
    Ok(())
}

/// `(1/2πi) ∮_{|z|=t} z^p g'/g dz`: the sum of `a^p` over zeros `|a| < t`.
fn power_sum(
    g: &NumericExpPoly,
    dg: &NumericExpPoly,
    t: f64,
    p: i32,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let scaled = QuadratureConfig { tolerance: cfg.tolerance * t.powi(p).max(1.0), ..*cfg };
    circle_mean_complex(
        |z| {
            let (s1, v) = g.eval_scaled(z);
            let (s2, w) = dg.eval_scaled(z);
            z.powi(p + 1) * w / v * (s2 - s1).exp()
        },
        t,
        &scaled,
    )
}

/// Number of zeros (with multiplicity) in `|z| < t`, from the argument
/// principle. The radius is perturbed once if the winding number is not
/// within [`WINDING_TOLERANCE`] of an integer.
pub fn zero_count(g: &ExpPoly, t: f64, cfg: &QuadratureConfig) -> Result<u64> {
    nonzero(g)?;
    let (ng, ndg) = (g.numeric(), g.derivative().numeric());
    zero_count_numeric(&ng, &ndg, t, cfg).map(|c| c.count)
}

#[derive(Clone, Copy, Debug)]
struct Count {
    /// Radius actually used, after any perturbation.
    radius: f64,
    count: u64,
    raw: f64,
}

fn zero_count_numeric(g: &NumericExpPoly, dg: &NumericExpPoly, t: f64, cfg: &QuadratureConfig) -> Result<Count> {
    let mut last = f64::NAN;
    for radius in [t, t * (1.0 + 1e-3)] {
        let Ok(w) = power_sum(g, dg, radius, 0, cfg).map(|c| c.re) else {
            continue;
        };
        last = w;
        if (w - w.round()).abs() <= WINDING_TOLERANCE && w.round() >= 0.0 {
            return Ok(Count { radius, count: w.round() as u64, raw: w });
        }
    }
    Err(Error::Winding { radius: t, value: last })
}

/// `N^{[M]}(r)` for the zeros of `g`.
///
/// A single term `p·exp(q)` is handled by exact root isolation of `p`;
/// otherwise zeros are counted by the argument principle, which needs
/// `M = ∞`.
pub fn counting_n(g: &ExpPoly, r: f64, trunc: Truncation, cfg: &QuadratureConfig) -> Result<f64> {
    nonzero(g)?;
    check_radius(r)?;
    if let Some((_, p)) = g.single_term() {
        let total = roots(p)?
            .iter()
            .filter(|a| a.modulus() < r)
            .map(|a| trunc.cap(a.multiplicity) as f64 * (r / a.modulus().max(1.0)).ln())
            .sum();
        return Ok(total);
    }
    if trunc != Truncation::Infinite {
        return Err(Error::Invalid("truncated counting needs exact multiplicities".into()));
    }
    let steps = zero_count_steps(g, r, cfg)?;
    Ok(steps.counting(r))
}

/// The step function `n(t)` on `[1, r]`: the number of zeros in the closed
/// unit disk and the moduli of the zeros in `1 < |z| < r`, with repetition.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSteps {
    pub inside_unit: u64,
    pub moduli: Vec<f64>,
    /// Largest distance of any computed winding number from an integer.
    pub max_winding_defect: f64,
}

impl ZeroSteps {
    pub fn n_at(&self, t: f64) -> u64 {
        self.inside_unit + self.moduli.iter().filter(|rho| **rho < t).count() as u64
    }

    /// Exact integral of the step function: `n(1) log r + Σ log(r/|a|)`.
    pub fn counting(&self, r: f64) -> f64 {
        self.inside_unit as f64 * r.ln()
            + self.moduli.iter().filter(|rho| **rho < r).map(|rho| (r / rho).ln()).sum::<f64>()
    }
}

/// Roots of the monic polynomial with the given elementary symmetric
/// functions, by Durand–Kerner iteration.
fn roots_from_power_sums(s: &[Complex64]) -> Vec<Complex64> {
    let k = s.len();
    // Newton identities: e_j = (1/j) Σ_{i=1}^{j} (−1)^{i−1} e_{j−i} s_i.
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for j in 1..=k {
        let mut acc = Complex64::zero();
        for i in 1..=j {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += e[j - i] * s[i - 1] * sign;
        }
        e.push(acc / j as f64);
    }
    // z^k − e_1 z^{k−1} + e_2 z^{k−2} − ...
    let coeff = |j: usize| if j.is_multiple_of(2) { e[j] } else { -e[j] };
    let eval = |z: Complex64| (0..=k).fold(Complex64::zero(), |acc, j| acc * z + coeff(j));
    let scale = s.first().map_or(1.0, |x| (x.norm() / k as f64).max(1.0));
    let mut z: Vec<Complex64> =
        (0..k).map(|j| Complex64::from_polar(scale, 0.4 + TAU * j as f64 / k as f64)).collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..k {
            let denom: Complex64 = (0..k).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let step = eval(z[i]) / denom;
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-15 * scale {
            break;
        }
    }
    z
}

/// Newton's method on `g`; `None` if it fails to settle.
fn polish(g: &NumericExpPoly, dg: &NumericExpPoly, mut z: Complex64) -> Option<Complex64> {
    for _ in 0..50 {
        let (s1, v) = g.eval_scaled(z);
        let (s2, w) = dg.eval_scaled(z);
        let step = v / w * (s1 - s2).exp();
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

/// Finds `n(1)` and the zeros in each annulus of a geometric grid over
/// `[1, r]`. Zeros in an annulus come from the power sums `Σ a^p` (the
/// difference of contour integrals on its boundary circles) and are then
/// refined by Newton's method on `g`.
pub fn zero_count_steps(g: &ExpPoly, r: f64, cfg: &QuadratureConfig) -> Result<ZeroSteps> {
    nonzero(g)?;
    check_radius(r)?;
    let (ng, ndg) = (g.numeric(), g.derivative().numeric());
    let mut defect: f64 = 0.0;
    let mut count = |t: f64| -> Result<Count> {
        let c = zero_count_numeric(&ng, &ndg, t, cfg)?;
        defect = defect.max((c.raw - c.count as f64).abs());
        Ok(c)
    };
    let unit = count(1.0)?;
    let mut moduli = Vec::new();
    if r > 1.0 {
        let mut prev = unit;
        for k in 1..=GRID_POINTS {
            let cur = count(r.powf(k as f64 / GRID_POINTS as f64))?;
            if cur.count < prev.count {
                return Err(Error::Winding { radius: cur.radius, value: cur.raw });
            }
            let jump = (cur.count - prev.count) as usize;
            if jump > 0 {
                let mut sums = Vec::with_capacity(jump);
                for p in 1..=jump as i32 {
                    sums.push(
                        power_sum(&ng, &ndg, cur.radius, p, cfg)? - power_sum(&ng, &ndg, prev.radius, p, cfg)?,
                    );
                }
                for z0 in roots_from_power_sums(&sums) {
                    let z = polish(&ng, &ndg, z0)
                        .filter(|z| z.norm() > prev.radius * (1.0 - 1e-9) && z.norm() < cur.radius * (1.0 + 1e-9))
                        .unwrap_or(z0);
                    moduli.push(z.norm().clamp(prev.radius, cur.radius));
                }
            }
            prev = cur;
        }
    }
    moduli.sort_by(f64::total_cmp);
    Ok(ZeroSteps { inside_unit: unit.count, moduli, max_winding_defect: defect })
}
