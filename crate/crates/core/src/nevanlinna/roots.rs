//! Roots of rational univariate polynomials with multiplicities.
//!
//! Multiplicities come from the exact square-free decomposition; each
//! square-free factor is solved by Aberth iteration and every root is
//! enclosed in the disk `|z - c| ≤ n |p(c)/p'(c)|`. Pairwise disjoint disks
//! certify that each holds exactly one root.

use num_complex::Complex64;
use num_traits::Zero;

use super::curve::to_f64_coeffs;
use crate::error::{Error, Result};
use crate::univariate::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub center: Complex64,
    /// Radius of a disk around `center` known to contain the root.
    pub radius: f64,
    pub multiplicity: usize,
}

impl Root {
    pub fn modulus(&self) -> f64 {
        self.center.norm()
    }
}

/// All roots of a nonzero polynomial, grouped by exact multiplicity.
pub fn roots(p: &UniPoly) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::Invalid("the zero polynomial has no isolated roots".into()));
    }
    let mut out = Vec::new();
    let zero_mult = p.low_order();
    if zero_mult > 0 {
        out.push(Root { center: Complex64::zero(), radius: 0.0, multiplicity: zero_mult });
    }
    let shifted = UniPoly::new(p.coeffs()[zero_mult..].to_vec());
    for (factor, mult) in shifted.squarefree_decomposition() {
        for (center, radius) in squarefree_roots(&factor)? {
            out.push(Root { center, radius, multiplicity: mult });
        }
    }
    Ok(out)
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for x in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + x;
    }
    (p, dp)
}

/// Bound on the rounding error of Horner evaluation at `z`.
fn eval_error(c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mag = c.iter().rev().fold(0.0, |acc, x| acc * r + x.abs());
    4.0 * f64::EPSILON * c.len() as f64 * mag
}

fn squarefree_roots(p: &UniPoly) -> Result<Vec<(Complex64, f64)>> {
    let c = to_f64_coeffs(&p.monic());
    let n = c.len() - 1;
    if n == 1 {
        return Ok(vec![(Complex64::new(-c[0], 0.0), 0.0)]);
    }
    // Starting points on a circle whose radius is the geometric mean of the
    // root moduli, rotated off the real axis.
    let r0 = c[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, std::f64::consts::TAU * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (pv, dpv) = eval_with_derivative(&c, z[k]);
            if pv.is_zero() {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 =
                (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dpv) = eval_with_derivative(&c, *zk);
            let step = pv / dpv;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    let radii: Vec<f64> = z
        .iter()
        .map(|&zk| {
            let (pv, dpv) = eval_with_derivative(&c, zk);
            n as f64 * (pv.norm() + eval_error(&c, zk)) / dpv.norm()
        })
        .collect();
    for i in 0..n {
        if !radii[i].is_finite() {
            return Err(Error::RootIsolation(format!("{p}: derivative vanishes at an approximation")));
        }
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                return Err(Error::RootIsolation(format!("{p}: inclusion disks overlap")));
            }
        }
    }
    Ok(z.into_iter().zip(radii).collect())
}
