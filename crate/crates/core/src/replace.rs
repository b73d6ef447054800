//! Threshold combinatorics of ordered families and randomized replacement of
//! a family by `n + 1` combinations with empty common intersection on `V`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{pow, Rational};
use crate::variety::{projective_dimension, Ideal, ProjDim};

/// `D_s = dim(V ∩ Q_0 ∩ ... ∩ Q_s)` for `s = 0..l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionProfile {
    pub dims: Vec<ProjDim>,
}

impl fmt::Display for DimensionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn same_degree(family: &[Poly]) -> Result<()> {
    if let Some(first) = family.first() {
        for p in family {
            if p.degree() != first.degree() {
                return Err(Error::DegreeMismatch(p.degree(), first.degree()));
            }
        }
    }
    Ok(())
}

pub fn dimension_profile(v: &Ideal, family: &[Poly]) -> Result<DimensionProfile> {
    same_degree(family)?;
    if projective_dimension(v).is_empty() {
        return Err(Error::EmptyVariety);
    }
    let mut dims = Vec::with_capacity(family.len());
    for s in 0..family.len() {
        dims.push(projective_dimension(&v.with(&family[..=s])?));
    }
    Ok(DimensionProfile { dims })
}

/// Offset convention of a threshold vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `t_0 = 0`: thresholds index an ordered family from zero.
    ZeroBased,
    /// `t_0 = 1`.
    OneBased,
    /// Any other starting value; only differences matter.
    Shifted(u64),
}

/// Strictly increasing integers `t_0 < t_1 < ... < t_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thresholds {
    t: Vec<u64>,
}

impl Thresholds {
    pub fn new(t: Vec<u64>) -> Result<Self> {
        if t.len() < 2 {
            return Err(Error::Invalid("thresholds need n >= 1".into()));
        }
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("thresholds {t:?} are not strictly increasing")));
        }
        Ok(Thresholds { t })
    }

    pub fn values(&self) -> &[u64] {
        &self.t
    }

    /// `n`, the number of steps.
    pub fn n(&self) -> usize {
        self.t.len() - 1
    }

    /// `l = t_n`.
    pub fn l(&self) -> u64 {
        *self.t.last().unwrap()
    }

    pub fn convention(&self) -> Convention {
        match self.t[0] {
            0 => Convention::ZeroBased,
            1 => Convention::OneBased,
            k => Convention::Shifted(k),
        }
    }

    /// The same differences starting from `t_0 = 0`.
    pub fn normalized(&self) -> Thresholds {
        Thresholds { t: self.t.iter().map(|x| x - self.t[0]).collect() }
    }
}

/// `t_u` = first index where the profile reaches dimension `n − u − 1`
/// (empty for `u = n`).
pub fn thresholds_from_profile(p: &DimensionProfile, n: usize) -> Result<Thresholds> {
    if p.dims.last() != Some(&ProjDim::Empty) {
        return Err(Error::ProfileNotEmpty);
    }
    if n == 0 {
        return Err(Error::Invalid("V must have positive dimension".into()));
    }
    if p.dims[0] != ProjDim::Dim(n - 1) {
        return Err(Error::Invalid(format!("D_0 = {} but must equal {}", p.dims[0], n - 1)));
    }
    let target = |u: usize| if u == n { ProjDim::Empty } else { ProjDim::Dim(n - u - 1) };
    let mut t = Vec::with_capacity(n + 1);
    for u in 0..=n {
        let s = p.dims.iter().position(|d| *d == target(u)).ok_or_else(|| {
            Error::Invalid(format!("profile {p} skips dimension {}", target(u)))
        })?;
        t.push(s as u64);
    }
    Thresholds::new(t)
}

/// `Δ = max_{1≤s≤n} (t_s − t_0) / s`.
pub fn delta_from_thresholds(t: &Thresholds) -> Rational {
    let v = t.values();
    (1..v.len())
        .map(|s| Rational::new(BigInt::from(v[s] - v[0]), BigInt::from(s)))
        .max()
        .expect("n >= 1")
}

/// `m_n, m_{n−1}, ..., m_0` with `m_n = Δ` and
/// `m_{i−1} = t_i − t_{i−1} + max(0, m_i − Δ)`.
pub fn m_sequence(t: &Thresholds) -> Vec<Rational> {
    let delta = delta_from_thresholds(t);
    let v = t.values();
    let mut out = vec![delta.clone()];
    for i in (1..v.len()).rev() {
        let prev = out.last().unwrap();
        let excess = (prev - &delta).max(Rational::zero());
        out.push(Rational::from(BigInt::from(v[i] - v[i - 1])) + excess);
    }
    out
}

/// Both sides of `Π a_i^{t_{i+1}−t_i} ≤ (Π a_i)^Δ`, raised to `power`
/// (the denominator of `Δ`).
#[derive(Clone, Debug, PartialEq)]
pub struct ProductReport {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
    pub power: u64,
    pub delta: Rational,
}

pub fn weighted_product_inequality(t: &Thresholds, a: &[Rational]) -> Result<ProductReport> {
    if a.len() != t.n() {
        return Err(Error::Invalid(format!("need {} values a_i, got {}", t.n(), a.len())));
    }
    if a.iter().any(|x| *x < Rational::one()) || a.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid("values must satisfy a_0 >= a_1 >= ... >= 1".into()));
    }
    let delta = delta_from_thresholds(t);
    let q: u64 = delta.denom().try_into().expect("small denominator");
    let p: u64 = delta.numer().try_into().expect("small numerator");
    let v = t.values();
    let lhs_base = a
        .iter()
        .enumerate()
        .fold(Rational::one(), |acc, (i, x)| acc * pow(x, v[i + 1] - v[i]));
    let prod = a.iter().fold(Rational::one(), |acc, x| acc * x);
    let lhs = pow(&lhs_base, q);
    let rhs = pow(&prod, p);
    Ok(ProductReport { holds: lhs <= rhs, lhs, rhs, power: q, delta })
}

/// Combinations `P_u = Σ_{j≤t_u} c_{uj} Q_j` with the verified dimensions of
/// `V ∩ P_0 ∩ ... ∩ P_u`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplacementResult {
    pub thresholds: Thresholds,
    pub coefficients: Vec<Vec<Rational>>,
    pub certificate: Vec<ProjDim>,
    pub retries_used: Vec<usize>,
}

impl ReplacementResult {
    pub fn polys(&self, family: &[Poly]) -> Result<Vec<Poly>> {
        self.coefficients.iter().map(|c| combine(family, c)).collect()
    }
}

pub const DEFAULT_RETRY_BUDGET: usize = 10;

fn combine(family: &[Poly], c: &[Rational]) -> Result<Poly> {
    if c.len() > family.len() {
        return Err(Error::Invalid("coefficient vector longer than the family".into()));
    }
    let mut acc = Poly::zero(family[0].nvars(), family[0].degree());
    for (q, x) in family.iter().zip(c) {
        acc = acc.add(&q.scale(x))?;
    }
    Ok(acc)
}

fn bound_for(u: usize, n: usize) -> i64 {
    if u == n {
        -1
    } else {
        (n - u - 1) as i64
    }
}

pub fn replace_family(
    v: &Ideal,
    family: &[Poly],
    seed: u64,
    retry_budget: usize,
) -> Result<ReplacementResult> {
    let n = projective_dimension(v).dim().ok_or(Error::EmptyVariety)?;
    let profile = dimension_profile(v, family)?;
    let thresholds = thresholds_from_profile(&profile, n)?;
    let t = thresholds.values().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut coefficients = vec![vec![Rational::one()]];
    let mut chosen = vec![family[0].clone()];
    let mut certificate = vec![profile.dims[0]];
    let mut retries_used = vec![0];
    #[allow(clippy::needless_range_loop)]
    for u in 1..=n {
        let len = t[u] as usize + 1;
        let mut bound: i64 = 3;
        let mut last_dims = Vec::new();
        let mut accepted = None;
        for attempt in 0..=retry_budget {
            let c: Vec<i64> = loop {
                let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
                if c.iter().any(|x| *x != 0) {
                    break c;
                }
            };
            let c: Vec<Rational> = c.into_iter().map(|x| Rational::from_integer(x.into())).collect();
            let p = combine(family, &c)?;
            let mut trial = chosen.clone();
            trial.push(p.clone());
            let d = projective_dimension(&v.with(&trial)?);
            if d.at_most(bound_for(u, n)) {
                accepted = Some((c, p, d, attempt));
                break;
            }
            last_dims.push(d.to_string());
            bound *= 2;
        }
        let Some((c, p, d, attempt)) = accepted else {
            return Err(Error::RetryBudget { step: u, last_dims });
        };
        coefficients.push(c);
        chosen.push(p);
        certificate.push(d);
        retries_used.push(attempt);
    }
    Ok(ReplacementResult { thresholds, coefficients, certificate, retries_used })
}

/// Recomputes every certificate entry from the coefficients.
pub fn verify_certificate(v: &Ideal, family: &[Poly], r: &ReplacementResult) -> Result<bool> {
    let n = projective_dimension(v).dim().ok_or(Error::EmptyVariety)?;
    if r.coefficients.len() != n + 1 {
        return Ok(false);
    }
    let t = r.thresholds.values();
    let polys = r.polys(family)?;
    for u in 0..=n {
        if r.coefficients[u].len() != t[u] as usize + 1 {
            return Ok(false);
        }
        let d = projective_dimension(&v.with(&polys[..=u])?);
        if d != r.certificate[u] || !d.at_most(bound_for(u, n)) {
            return Ok(false);
        }
    }
    Ok(r.certificate.last() == Some(&ProjDim::Empty))
}
