//! Hilbert weights, Chow weights of linear spaces and the Evertse–Ferretti
//! lower bound for the normalized Hilbert weight.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, EchelonBasis};
use crate::monomial::Monomial;
use crate::monomial_ideal::binomial;
use crate::poly::Poly;
use crate::position::combinations;
use crate::rational::Rational;
use crate::variety::{hilbert_function, ideal_degree_part, projective_dimension, variety_degree, Ideal};

/// Nonnegative weights `c_0..c_N` on the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(c: Vec<Rational>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Invalid("empty weight vector".into()));
        }
        if c.iter().any(|x| *x < Rational::zero()) {
            return Err(Error::Invalid("weights must be nonnegative".into()));
        }
        Ok(WeightVector(c))
    }

    pub fn from_ints(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Rational {
        self.0.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, l: &Rational) -> WeightVector {
        WeightVector(self.0.iter().map(|x| x * l).collect())
    }

    /// `a · c` for the exponent vector `a` of `m`.
    pub fn weight(&self, m: &Monomial) -> Rational {
        m.exps()
            .iter()
            .zip(&self.0)
            .filter(|(e, _)| **e > 0)
            .map(|(e, c)| c * BigInt::from(*e))
            .fold(Rational::zero(), |a, b| a + b)
    }

    fn check_len(&self, nvars: usize) -> Result<()> {
        if self.0.len() != nvars {
            return Err(Error::VariableMismatch(self.0.len(), nvars));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightBasisReport {
    pub basis: Vec<Monomial>,
    pub value: Rational,
}

fn require_nonempty(i: &Ideal) -> Result<usize> {
    projective_dimension(i).dim().ok_or(Error::EmptyVariety)
}

/// `S_X(u, c)` by matroid greedy: monomials in descending weight order
/// (grevlex descending on ties) are kept when independent modulo `I_u`.
pub fn max_weight_basis(i: &Ideal, u: u32, c: &WeightVector) -> Result<WeightBasisReport> {
    if u == 0 {
        return Err(Error::Invalid("u must be positive".into()));
    }
    c.check_len(i.nvars())?;
    require_nonempty(i)?;
    let part = ideal_degree_part(i, u);
    let dim = part.monomials.len();
    let mut eb = EchelonBasis::new();
    for v in &part.vectors {
        eb.insert(v.clone());
    }
    let mut order: Vec<(usize, Rational)> =
        part.monomials.iter().enumerate().map(|(k, m)| (k, c.weight(m))).collect();
    // Stable sort keeps grevlex-descending order among equal weights.
    order.sort_by(|a, b| b.1.cmp(&a.1));
    let mut basis = Vec::new();
    let mut value = Rational::zero();
    for (k, w) in order {
        if eb.insert_unit(dim, k) {
            basis.push(part.monomials[k].clone());
            value += w;
        }
    }
    Ok(WeightBasisReport { basis, value })
}

/// Largest monomial count the exhaustive oracle accepts.
pub const ORACLE_CAP: usize = 20;

/// `S_X(u, c)` by trying every candidate basis.
pub fn brute_force_hilbert_weight(i: &Ideal, u: u32, c: &WeightVector) -> Result<Rational> {
    c.check_len(i.nvars())?;
    require_nonempty(i)?;
    let total = binomial(i.nvars() as u64 - 1 + u as u64, u as u64) as usize;
    if total > ORACLE_CAP {
        return Err(Error::OracleScale(total, ORACLE_CAP));
    }
    let part = ideal_degree_part(i, u);
    let h = hilbert_function(i, u)? as usize;
    let weights: Vec<Rational> = part.monomials.iter().map(|m| c.weight(m)).collect();
    let mut best: Option<Rational> = None;
    for subset in combinations(total, h) {
        let mut rows = part.vectors.clone();
        for &k in &subset {
            let mut e = vec![Rational::zero(); total];
            e[k] = Rational::one();
            rows.push(e);
        }
        if rank(&rows) == part.rank + h {
            let w = subset.iter().fold(Rational::zero(), |a, &k| a + &weights[k]);
            if best.as_ref().is_none_or(|b| w > *b) {
                best = Some(w);
            }
        }
    }
    best.ok_or_else(|| Error::Inconsistent("no monomial basis found".into()))
}

/// A linear subspace of `P^N`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSpace {
    /// Spanning points given by homogeneous coordinates; they must be
    /// linearly independent.
    Points(Vec<Vec<Rational>>),
    /// The span of the listed coordinate points `e_j` in `P^{nvars−1}`.
    Coordinates { nvars: usize, coords: Vec<usize> },
}

impl LinearSpace {
    fn matrix(&self) -> Result<Vec<Vec<Rational>>> {
        match self {
            LinearSpace::Points(p) => {
                let Some(width) = p.first().map(Vec::len) else {
                    return Err(Error::Invalid("no spanning points".into()));
                };
                if p.iter().any(|r| r.len() != width) {
                    return Err(Error::Invalid("points have different lengths".into()));
                }
                Ok(p.clone())
            }
            LinearSpace::Coordinates { nvars, coords } => {
                if coords.is_empty() {
                    return Err(Error::Invalid("no spanning points".into()));
                }
                coords
                    .iter()
                    .map(|&j| {
                        if j >= *nvars {
                            return Err(Error::Invalid(format!("coordinate {j} out of range")));
                        }
                        let mut e = vec![Rational::zero(); *nvars];
                        e[j] = Rational::one();
                        Ok(e)
                    })
                    .collect()
            }
        }
    }
}

/// Chow weight `e_X(c)` of a linear space: the largest `Σ_{j∈J} c_j` over
/// coordinate sets `J` whose maximal minor of the spanning matrix is nonzero.
pub fn chow_weight_linear(x: &LinearSpace, c: &WeightVector) -> Result<Rational> {
    let m = x.matrix()?;
    c.check_len(m[0].len())?;
    let k = m.len();
    if rank(&m) != k {
        return Err(Error::Invalid(format!("{k} points do not span a space of dimension {}", k - 1)));
    }
    // Maximal nonzero minors are the bases of the column matroid, so greedy
    // over columns by descending weight finds the maximum.
    let mut order: Vec<usize> = (0..m[0].len()).collect();
    order.sort_by(|a, b| c.values()[*b].cmp(&c.values()[*a]));
    let mut eb = EchelonBasis::new();
    let mut total = Rational::zero();
    for j in order {
        let col: Vec<Rational> = m.iter().map(|r| r[j].clone()).collect();
        if eb.insert(col) {
            total += &c.values()[j];
        }
    }
    Ok(total)
}

fn dim_and_degree(i: &Ideal) -> Result<(usize, u64)> {
    let n = require_nonempty(i)?;
    Ok((n, variety_degree(i)?))
}

/// `S_X(u,c) / (u H_X(u))`.
fn normalized_weight(i: &Ideal, u: u32, c: &WeightVector) -> Result<Rational> {
    let s = max_weight_basis(i, u, c)?.value;
    let h = hilbert_function(i, u)?;
    Ok(s / Rational::from_integer(BigInt::from(u as u64 * h)))
}

/// `ê(c; u) = (n+1) δ S_X(u,c) / (u H_X(u))`.
pub fn chow_weight_estimate(i: &Ideal, c: &WeightVector, u: u32) -> Result<Rational> {
    let (n, delta) = dim_and_degree(i)?;
    if u as u64 <= delta {
        return Err(Error::SmallU { u, degree: delta });
    }
    Ok(normalized_weight(i, u, c)? * BigInt::from((n as u64 + 1) * delta))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EfReport {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
    pub slack: Rational,
    /// Whether `u > δ`; below that range the bound is not asserted by the
    /// theorem and the right side is reported as computed.
    pub in_theorem_range: bool,
}

/// Checks `S/(uH) ≥ Σ_{j∈J} c_j/(n+1) − (2n+1)δ max_i c_i / u` after
/// verifying that `V` misses the coordinate subspace `{x_j = 0 : j ∈ J}`.
pub fn ef_inequality_check(i: &Ideal, c: &WeightVector, u: u32, j: &[usize]) -> Result<EfReport> {
    if u == 0 {
        return Err(Error::Invalid("u must be positive".into()));
    }
    c.check_len(i.nvars())?;
    let (n, delta) = dim_and_degree(i)?;
    let mut js = j.to_vec();
    js.sort_unstable();
    js.dedup();
    if js.len() != n + 1 || js.iter().any(|&x| x >= i.nvars()) {
        return Err(Error::Invalid(format!("J must hold {} distinct coordinates", n + 1)));
    }
    let coords: Vec<Poly> = js.iter().map(|&x| Poly::var(x, i.nvars())).collect();
    if !projective_dimension(&i.with(&coords)?).is_empty() {
        return Err(Error::CoordinatesMeetVariety(js));
    }
    let lhs = normalized_weight(i, u, c)?;
    let sum_j = js.iter().fold(Rational::zero(), |a, &x| a + &c.values()[x]);
    let rhs = sum_j / BigInt::from(n as u64 + 1)
        - c.max() * BigInt::from((2 * n as u64 + 1) * delta) / BigInt::from(u);
    let slack = &lhs - &rhs;
    Ok(EfReport {
        holds: slack >= Rational::zero(),
        lhs,
        rhs,
        slack,
        in_theorem_range: u as u64 > delta,
    })
}
