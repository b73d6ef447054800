//! Curves `f_i = p_i(z) exp(q_i(z))` and exponential polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MovingPoly;
use crate::rational::to_f64;
use crate::univariate::UniPoly;

pub(crate) fn to_f64_coeffs(p: &UniPoly) -> Vec<f64> {
    p.coeffs().iter().map(to_f64).collect()
}

pub(crate) fn horner(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, x| acc * z + x)
}

/// One component `p(z) · exp(q(z))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub p: UniPoly,
    pub q: UniPoly,
}

impl Component {
    pub fn poly(p: UniPoly) -> Self {
        Component { p, q: UniPoly::zero() }
    }

    /// `log |p(z) exp(q(z))|`, `-inf` at zeros of `p`.
    pub fn log_abs(&self, z: Complex64) -> f64 {
        self.p.eval_c64(z).norm().ln() + self.q.eval_c64(z).re
    }
}

/// Holomorphic curve `f = (f_0, ..., f_N)` given by a reduced representation.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    components: Vec<Component>,
    numeric: Vec<(Vec<f64>, Vec<f64>)>,
}

impl CurveSpec {
    /// Rejects the zero curve and representations whose components share a
    /// common zero.
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.iter().all(|c| c.p.is_zero()) {
            return Err(Error::Invalid("all curve components vanish".into()));
        }
        let g = components.iter().fold(UniPoly::zero(), |g, c| g.gcd(&c.p));
        if !g.is_constant() {
            return Err(Error::Invalid(format!("components share the factor {g}; representation is not reduced")));
        }
        let numeric = components.iter().map(|c| (to_f64_coeffs(&c.p), to_f64_coeffs(&c.q))).collect();
        Ok(CurveSpec { components, numeric })
    }

    /// Polynomial curve `(p_0, ..., p_N)`.
    pub fn polynomial(ps: Vec<UniPoly>) -> Result<Self> {
        Self::new(ps.into_iter().map(Component::poly).collect())
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    /// `log ‖f(z)‖` for the Euclidean norm, computed by log-sum-exp.
    pub fn log_norm(&self, z: Complex64) -> f64 {
        let logs: Vec<f64> =
            self.numeric.iter().map(|(p, q)| horner(p, z).norm().ln() + horner(q, z).re).collect();
        let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            return m;
        }
        let s: f64 = logs.iter().map(|l| (2.0 * (l - m)).exp()).sum();
        m + 0.5 * s.ln()
    }
}

/// `Σ_k p_k(z) exp(q_k(z))`, keyed by exponent, with zero coefficients removed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpPoly {
    terms: BTreeMap<UniPoly, UniPoly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(UniPoly::zero(), p);
        e
    }

    pub fn add_term(&mut self, exponent: UniPoly, coeff: UniPoly) {
        let entry = self.terms.entry(exponent).or_default();
        *entry = &*entry + &coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Exponent ↦ coefficient, ordered by exponent.
    pub fn terms(&self) -> &BTreeMap<UniPoly, UniPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term `p exp(q)`, if there is exactly one. Its zeros are
    /// the roots of `p` with their multiplicities.
    pub fn single_term(&self) -> Option<(&UniPoly, &UniPoly)> {
        match self.terms.len() {
            1 => self.terms.iter().next(),
            _ => None,
        }
    }

    pub fn derivative(&self) -> ExpPoly {
        let mut d = ExpPoly::zero();
        for (q, p) in &self.terms {
            d.add_term(q.clone(), &p.derivative() + &(p * &q.derivative()));
        }
        d
    }

    /// Coefficients converted to doubles for repeated evaluation.
    pub fn numeric(&self) -> NumericExpPoly {
        NumericExpPoly {
            terms: self.terms.iter().map(|(q, p)| (to_f64_coeffs(q), to_f64_coeffs(p))).collect(),
        }
    }

    pub fn log_abs(&self, z: Complex64) -> f64 {
        self.numeric().log_abs(z)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.numeric().eval(z)
    }
}

/// Double-precision form of an [`ExpPoly`].
#[derive(Clone, Debug)]
pub struct NumericExpPoly {
    terms: Vec<(Vec<f64>, Vec<f64>)>,
}

impl NumericExpPoly {
    /// Returns `(s, v)` with `g(z) = exp(s) · v`, scaling by the largest
    /// real part among the exponents to avoid overflow.
    pub fn eval_scaled(&self, z: Complex64) -> (f64, Complex64) {
        let exps: Vec<Complex64> = self.terms.iter().map(|(q, _)| horner(q, z)).collect();
        let s = exps.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
        if s == f64::NEG_INFINITY {
            return (0.0, Complex64::zero());
        }
        let v = self
            .terms
            .iter()
            .zip(&exps)
            .map(|((_, p), e)| horner(p, z) * (e - s).exp())
            .sum();
        (s, v)
    }

    pub fn log_abs(&self, z: Complex64) -> f64 {
        let (s, v) = self.eval_scaled(z);
        s + v.norm().ln()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (s, v) = self.eval_scaled(z);
        v * s.exp()
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, p)| if q.is_zero() { format!("({p})") } else { format!("({p})*exp({q})") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Q(f)`, using the reduced representation of `Q` (denominators cleared,
/// common polynomial content removed) so that the result is entire.
pub fn compose_with_curve(q: &MovingPoly, f: &CurveSpec) -> Result<ExpPoly> {
    if q.nvars() != f.nvars() {
        return Err(Error::VariableMismatch(q.nvars(), f.nvars()));
    }
    let reduced = q.reduced_representation();
    let mut out = ExpPoly::zero();
    for (m, c) in reduced.terms() {
        let mut p = c.clone();
        let mut e = UniPoly::zero();
        for (k, &a) in m.exps().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let comp = &f.components()[k];
            p = &p * &comp.p.pow(a);
            e = &e + &comp.q.scale(&crate::rational::int(a as i64));
        }
        out.add_term(e, p);
    }
    Ok(out)
}
