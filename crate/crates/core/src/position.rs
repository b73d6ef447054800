//! Distributive constants, subgeneral position and genericity sampling.
//!
//! Moving hypersurfaces are specialized at random rational parameter values;
//! an invariant is accepted as generic when every sample agrees. The
//! degenerate parameter locus is a proper closed set, so disagreement is
//! rare and is always surfaced through the `stable` flag.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{evaluate_moving, MovingPoly, Poly};
use crate::rational::{random_rational, Rational};
use crate::variety::{projective_dimension, Ideal, ProjDim};

/// Largest family handled by exhaustive subset enumeration.
pub const SUBSET_CAP: usize = 15;

/// One member of a hypersurface family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyEntry {
    pub name: String,
    pub degree: u32,
    pub poly: MovingPoly,
}

/// Ordered family `Q_1..Q_q` of (moving) hypersurfaces in `P^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceFamily {
    nvars: usize,
    entries: Vec<FamilyEntry>,
}

impl HypersurfaceFamily {
    pub fn new(nvars: usize, entries: Vec<FamilyEntry>) -> Result<Self> {
        for e in &entries {
            if e.poly.nvars() != nvars {
                return Err(Error::VariableMismatch(e.poly.nvars(), nvars));
            }
            if e.poly.degree() != e.degree {
                return Err(Error::DegreeMismatch(e.poly.degree(), e.degree));
            }
            if e.poly.is_zero() {
                return Err(Error::Invalid(format!("hypersurface `{}` is identically zero", e.name)));
            }
        }
        Ok(HypersurfaceFamily { nvars, entries })
    }

    /// Family of fixed hypersurfaces named `Q1, Q2, ...`.
    pub fn from_fixed(nvars: usize, polys: &[Poly]) -> Result<Self> {
        Self::new(
            nvars,
            polys
                .iter()
                .enumerate()
                .map(|(i, p)| FamilyEntry {
                    name: format!("Q{}", i + 1),
                    degree: p.degree(),
                    poly: p.to_moving(),
                })
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polys(&self) -> Vec<&MovingPoly> {
        self.entries.iter().map(|e| &e.poly).collect()
    }

    pub fn push(&mut self, e: FamilyEntry) -> Result<()> {
        let mut all = std::mem::take(&mut self.entries);
        all.push(e);
        *self = Self::new(self.nvars, all)?;
        Ok(())
    }

    fn specialize(&self, z: &Rational) -> Result<Vec<Poly>> {
        self.entries.iter().map(|e| evaluate_moving(&e.poly, z)).collect()
    }
}

/// Random specialization parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    pub seed: u64,
    pub num_points: usize,
    pub coeff_bound: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { seed: 0x5eed, num_points: 5, coeff_bound: 1000 }
    }
}

impl SamplingConfig {
    pub fn new(seed: u64, num_points: usize, coeff_bound: u64) -> Result<Self> {
        let cfg = SamplingConfig { seed, num_points, coeff_bound };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_points < 3 {
            return Err(Error::Invalid("sampling needs at least 3 points".into()));
        }
        if self.coeff_bound == 0 {
            return Err(Error::Invalid("coeff_bound must be positive".into()));
        }
        Ok(())
    }
}

/// Draws up to `num_points` distinct parameter values at which no coefficient
/// has a pole and no polynomial specializes to zero.
pub fn sample_points(polys: &[&MovingPoly], cfg: &SamplingConfig) -> Result<Vec<Rational>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out: Vec<Rational> = Vec::new();
    let attempts = 200 * cfg.num_points;
    for _ in 0..attempts {
        if out.len() == cfg.num_points {
            break;
        }
        let z = random_rational(&mut rng, cfg.coeff_bound);
        if out.contains(&z) {
            continue;
        }
        let ok = polys.iter().all(|p| {
            !p.has_pole_at(&z) && evaluate_moving(p, &z).is_ok_and(|s| !s.is_zero())
        });
        if ok {
            out.push(z);
        }
    }
    if out.is_empty() {
        return Err(Error::NoValidSamples);
    }
    Ok(out)
}

/// `codim_V S`; infinite when `V ∩ S` is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Codim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Infinite => f.write_str("INFINITE"),
        }
    }
}

fn dim_of(v: &Ideal) -> Result<usize> {
    projective_dimension(v).dim().ok_or(Error::EmptyVariety)
}

/// `dim V − dim(V ∩ ⋂ polys)`.
pub fn codim_in_v(v: &Ideal, polys: &[Poly]) -> Result<Codim> {
    let n = dim_of(v)?;
    Ok(codim_with_dim(v, n, polys))
}

fn codim_with_dim(v: &Ideal, n: usize, polys: &[Poly]) -> Codim {
    let cut = v.with(polys).expect("same variable count");
    match projective_dimension(&cut) {
        ProjDim::Empty => Codim::Infinite,
        ProjDim::Dim(d) => Codim::Finite(n - d),
    }
}

/// Codimension of the intersection for one subset (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCodim {
    pub subset: Vec<usize>,
    pub codim: Codim,
}

impl SubsetCodim {
    /// `#Γ / codim`, zero for an empty intersection.
    pub fn ratio(&self) -> Rational {
        match self.codim {
            Codim::Infinite => Rational::zero(),
            Codim::Finite(c) => Rational::new((self.subset.len() as i64).into(), (c as i64).into()),
        }
    }
}

/// Result of [`distributive_constant`].
#[derive(Clone, Debug, PartialEq)]
pub struct DistributiveReport {
    pub delta: Rational,
    /// Subset attaining `delta` (0-based indices into the family).
    pub witness: Vec<usize>,
    pub table: Vec<SubsetCodim>,
    pub stable: bool,
    pub samples_used: Vec<Rational>,
    /// Samples skipped because some member contained `V` there.
    pub degenerate_samples: Vec<Rational>,
}

/// Enumerates subsets depth-first in lexicographic order, skipping every
/// extension of a subset whose intersection with `V` is already empty.
fn subset_table(v: &Ideal, n: usize, polys: &[Poly]) -> Vec<SubsetCodim> {
    let mut table = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..polys.len()).rev().map(|i| vec![i]).collect();
    while let Some(subset) = stack.pop() {
        let chosen: Vec<Poly> = subset.iter().map(|&i| polys[i].clone()).collect();
        let codim = codim_with_dim(v, n, &chosen);
        if codim != Codim::Infinite {
            let last = *subset.last().unwrap();
            for j in (last + 1..polys.len()).rev() {
                let mut s = subset.clone();
                s.push(j);
                stack.push(s);
            }
        }
        table.push(SubsetCodim { subset, codim });
    }
    table
}

fn table_max(table: &[SubsetCodim]) -> (Rational, Vec<usize>) {
    let mut best = (Rational::zero(), Vec::new());
    for row in table {
        let r = row.ratio();
        if r > best.0 {
            best = (r, row.subset.clone());
        }
    }
    best
}

struct Specialized {
    z: Rational,
    polys: Vec<Poly>,
}

/// Specializes the family at each sample, separating out samples where some
/// member contains `V`. Errors if every sample is of that kind.
fn generic_specializations(
    v: &Ideal,
    n: usize,
    fam: &HypersurfaceFamily,
    cfg: &SamplingConfig,
) -> Result<(Vec<Specialized>, Vec<Rational>)> {
    let samples = sample_points(&fam.polys(), cfg)?;
    let mut good = Vec::new();
    let mut bad = Vec::new();
    let mut first_offender = None;
    for z in samples {
        let polys = fam.specialize(&z)?;
        let offender = polys
            .iter()
            .position(|p| codim_with_dim(v, n, std::slice::from_ref(p)) == Codim::Finite(0));
        match offender {
            Some(i) => {
                first_offender.get_or_insert(i);
                bad.push(z);
            }
            None => good.push(Specialized { z, polys }),
        }
    }
    if good.is_empty() {
        let i = first_offender.unwrap_or(0);
        return Err(Error::ContainsVariety(fam.entries[i].name.clone()));
    }
    Ok((good, bad))
}

/// Distributive constant of `fam` with respect to `V`:
/// `max_Γ #Γ / codim_V(⋂_{j∈Γ} Q_j(z)^*)` at generic `z`.
///
/// Passing the ideal of the image of a curve for `V` yields the distributive
/// constant with respect to that curve.
pub fn distributive_constant(
    v: &Ideal,
    fam: &HypersurfaceFamily,
    cfg: &SamplingConfig,
) -> Result<DistributiveReport> {
    if fam.len() > SUBSET_CAP {
        return Err(Error::SubsetCap(fam.len(), SUBSET_CAP));
    }
    if fam.nvars() != v.nvars() {
        return Err(Error::VariableMismatch(fam.nvars(), v.nvars()));
    }
    let n = dim_of(v)?;
    let (good, bad) = generic_specializations(v, n, fam, cfg)?;
    let mut best: Option<(Rational, Vec<usize>, Vec<SubsetCodim>)> = None;
    let mut first_table: Option<Vec<SubsetCodim>> = None;
    let mut stable = bad.is_empty();
    for s in &good {
        let table = subset_table(v, n, &s.polys);
        let (delta, witness) = table_max(&table);
        match &first_table {
            None => first_table = Some(table.clone()),
            Some(t) if *t != table => stable = false,
            _ => {}
        }
        if best.as_ref().is_none_or(|b| delta > b.0) {
            best = Some((delta, witness, table));
        }
    }
    let (delta, witness, table) = best.expect("at least one sample");
    Ok(DistributiveReport {
        delta,
        witness,
        table,
        stable,
        samples_used: good.into_iter().map(|s| s.z).collect(),
        degenerate_samples: bad,
    })
}

/// Result of [`subgeneral_position_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct SubgeneralReport {
    pub holds: bool,
    pub violating_subset: Option<Vec<usize>>,
    pub samples_used: Vec<Rational>,
}

/// Whether every `l + 1` members of the family have empty common
/// intersection with `V` at all generic samples.
pub fn subgeneral_position_check(
    v: &Ideal,
    fam: &HypersurfaceFamily,
    l: usize,
    cfg: &SamplingConfig,
) -> Result<SubgeneralReport> {
    if fam.len() < l + 1 {
        return Err(Error::Invalid(format!("need at least {} hypersurfaces, got {}", l + 1, fam.len())));
    }
    if fam.len() > SUBSET_CAP {
        return Err(Error::SubsetCap(fam.len(), SUBSET_CAP));
    }
    let n = dim_of(v)?;
    let (good, _) = generic_specializations(v, n, fam, cfg)?;
    for s in &good {
        for subset in combinations(fam.len(), l + 1) {
            let chosen: Vec<Poly> = subset.iter().map(|&i| s.polys[i].clone()).collect();
            if codim_with_dim(v, n, &chosen) != Codim::Infinite {
                return Ok(SubgeneralReport {
                    holds: false,
                    violating_subset: Some(subset),
                    samples_used: good.iter().map(|s| s.z.clone()).collect(),
                });
            }
        }
    }
    Ok(SubgeneralReport {
        holds: true,
        violating_subset: None,
        samples_used: good.into_iter().map(|s| s.z).collect(),
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// What [`genericity_sample`] evaluates at each parameter value.
#[derive(Clone, Copy, Debug)]
pub enum GenericityTarget<'a> {
    /// `n_z = dim ⋂ R_i(z)^*` for moving generators `R_i`.
    Dimension { nvars: usize, generators: &'a [MovingPoly] },
    /// The full subset-codimension table of a family on `V`.
    Table { variety: &'a Ideal, family: &'a HypersurfaceFamily },
}

#[derive(Clone, Debug, PartialEq)]
pub enum GenericValue {
    Dimension(ProjDim),
    Table(Vec<SubsetCodim>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericityReport {
    pub samples: Vec<Rational>,
    pub values: Vec<GenericValue>,
    pub stable: bool,
    /// Indices of samples whose value differs from the most common one.
    pub disagreeing: Vec<usize>,
}

pub fn genericity_sample(target: GenericityTarget<'_>, cfg: &SamplingConfig) -> Result<GenericityReport> {
    let (samples, values) = match target {
        GenericityTarget::Dimension { nvars, generators } => {
            let refs: Vec<&MovingPoly> = generators.iter().collect();
            let samples = sample_points(&refs, cfg)?;
            let mut values = Vec::new();
            for z in &samples {
                let polys: Vec<Poly> =
                    generators.iter().map(|g| evaluate_moving(g, z)).collect::<Result<_>>()?;
                let ideal = Ideal::new(nvars, polys)?;
                values.push(GenericValue::Dimension(projective_dimension(&ideal)));
            }
            (samples, values)
        }
        GenericityTarget::Table { variety, family } => {
            let n = dim_of(variety)?;
            let samples = sample_points(&family.polys(), cfg)?;
            let mut values = Vec::new();
            for z in &samples {
                values.push(GenericValue::Table(subset_table(variety, n, &family.specialize(z)?)));
            }
            (samples, values)
        }
    };
    let mode = values
        .iter()
        .max_by_key(|v| values.iter().filter(|w| w == v).count())
        .expect("nonempty")
        .clone();
    let disagreeing: Vec<usize> =
        values.iter().enumerate().filter(|(_, v)| **v != mode).map(|(i, _)| i).collect();
    Ok(GenericityReport { stable: disagreeing.is_empty(), samples, values, disagreeing })
}
