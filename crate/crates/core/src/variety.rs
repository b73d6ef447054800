//! Projective invariants of homogeneous ideals: dimension, degree, Hilbert
//! function and the degree-`u` Macaulay data.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, TermOrder};
use crate::linalg::rank;
use crate::monomial::Monomial;
use crate::monomial_ideal::{binomial, HilbertData};
use crate::poly::Poly;
use crate::rational::Rational;

/// Dimension of a projective zero set; `Empty` sorts below every dimension
/// (the `dim ∅ = −∞` convention).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjDim {
    Empty,
    Dim(usize),
}

impl ProjDim {
    pub fn is_empty(self) -> bool {
        self == ProjDim::Empty
    }

    pub fn dim(self) -> Option<usize> {
        match self {
            ProjDim::Empty => None,
            ProjDim::Dim(d) => Some(d),
        }
    }

    /// Whether this dimension is at most `bound`, reading `bound < 0` as
    /// "must be empty".
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            ProjDim::Empty => true,
            ProjDim::Dim(d) => (d as i64) <= bound,
        }
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Empty => f.write_str("EMPTY"),
            ProjDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// Homogeneous ideal given by generators; the Gröbner basis is computed lazily.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for Ideal {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.generators == o.generators
    }
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Poly>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableMismatch(g.nvars(), nvars));
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { nvars, generators, gb: OnceLock::new() })
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, generators: vec![], gb: OnceLock::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// The ideal `self + <extra>`.
    pub fn with(&self, extra: &[Poly]) -> Result<Ideal> {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(self.nvars, g)
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            if self.generators.is_empty() {
                buchberger(&[Poly::zero(self.nvars, 0)], TermOrder::Grevlex)
            } else {
                buchberger(&self.generators, TermOrder::Grevlex)
            }
        })
    }

    fn hilbert_data(&self) -> HilbertData {
        let gb = self.groebner();
        let ii = if gb.is_zero_ideal() {
            crate::monomial_ideal::MonomialIdeal::zero(self.nvars)
        } else {
            gb.initial_ideal()
        };
        ii.hilbert_data()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.groebner().contains(p)
    }
}

pub fn projective_dimension(i: &Ideal) -> ProjDim {
    match i.hilbert_data().affine_dim {
        0 => ProjDim::Empty,
        d => ProjDim::Dim(d - 1),
    }
}

/// Degree of the projective scheme (Hilbert-polynomial leading coefficient).
pub fn variety_degree(i: &Ideal) -> Result<u64> {
    let h = i.hilbert_data();
    if h.affine_dim == 0 {
        return Err(Error::EmptyVariety);
    }
    Ok(h.degree)
}

/// Spanning set `{m * g}` of `I_u` in monomial coordinates, with its rank.
#[derive(Clone, Debug)]
pub struct DegreePart {
    /// Column labels: all degree-`u` monomials, grevlex descending.
    pub monomials: Vec<Monomial>,
    pub vectors: Vec<Vec<Rational>>,
    pub rank: usize,
}

pub fn ideal_degree_part(i: &Ideal, u: u32) -> DegreePart {
    let monomials = Monomial::all_of_degree(i.nvars, u);
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut vectors = Vec::new();
    for g in &i.generators {
        if g.degree() > u {
            continue;
        }
        for m in Monomial::all_of_degree(i.nvars, u - g.degree()) {
            let mut v = vec![Rational::zero(); monomials.len()];
            for (gm, c) in g.terms() {
                v[index[&gm.mul(&m)]] = c.clone();
            }
            vectors.push(v);
        }
    }
    let rank = rank(&vectors);
    DegreePart { monomials, vectors, rank }
}

/// `H(u)`, computed from the initial ideal and from the Macaulay matrix;
/// disagreement is reported as an internal inconsistency.
pub fn hilbert_function(i: &Ideal, u: u32) -> Result<u64> {
    let by_initial = i.hilbert_data().hf(u);
    let total = binomial(i.nvars as u64 - 1 + u as u64, i.nvars as u64 - 1) as u64;
    let by_rank = total - ideal_degree_part(i, u).rank as u64;
    if by_initial != by_rank {
        return Err(Error::Inconsistent(format!(
            "H({u}): initial ideal gives {by_initial}, Macaulay rank gives {by_rank}"
        )));
    }
    Ok(by_initial)
}

/// Summary of the projective invariants of `V(I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyProfile {
    pub proj_dim: ProjDim,
    pub degree: Option<u64>,
    pub hilbert: BTreeMap<u32, u64>,
}

pub fn variety_profile(i: &Ideal, max_u: u32) -> Result<VarietyProfile> {
    let proj_dim = projective_dimension(i);
    let degree = if proj_dim.is_empty() { None } else { Some(variety_degree(i)?) };
    let mut hilbert = BTreeMap::new();
    for u in 0..=max_u {
        hilbert.insert(u, hilbert_function(i, u)?);
    }
    Ok(VarietyProfile { proj_dim, degree, hilbert })
}
