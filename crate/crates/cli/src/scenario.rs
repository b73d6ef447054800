//! Scenario files (`schema_version` "1").

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use smtlab::nevanlinna::{Component, CurveSpec, QuadratureConfig};
use smtlab::parse::parse_poly;
use smtlab::position::{FamilyEntry, HypersurfaceFamily, SamplingConfig};
use smtlab::rational::parse_rational;
use smtlab::{Ideal, Poly, Rational, UniPoly};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: String,
    pub variables: Vec<String>,
    #[serde(default)]
    pub variety: VarietySpec,
    #[serde(default)]
    pub hypersurfaces: Vec<HypersurfaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveFile>,
    #[serde(default)]
    pub sampling: SamplingSpec,
    #[serde(default)]
    pub analysis: Analysis,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySpec {
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceSpec {
    pub name: String,
    pub degree: u32,
    pub poly: String,
}

/// Components `p(z)·exp(q(z))`, coefficients lowest degree first.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub components: Vec<ComponentSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub p: Vec<String>,
    #[serde(default)]
    pub q: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    pub seed: u64,
    pub num_points: usize,
    pub coeff_bound: u64,
}

impl Default for SamplingSpec {
    fn default() -> Self {
        let d = SamplingConfig::default();
        SamplingSpec { seed: d.seed, num_points: d.num_points, coeff_bound: d.coeff_bound }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
    /// Coordinate indices for `ef-check`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_range: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retry_budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

fn at(path: impl Into<String>) -> impl FnOnce(smtlab::Error) -> CliError {
    let path = path.into();
    move |e| CliError::input(format!("{path}: {e}"))
}

pub fn rational_at(s: &str, path: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(at(path))
}

fn rationals_at(v: &[String], path: &str) -> Result<Vec<Rational>, CliError> {
    v.iter().enumerate().map(|(k, s)| rational_at(s, &format!("{path}[{k}]"))).collect()
}

/// Accepts a scenario, or a report whose `input` field echoes one.
pub fn parse_input(text: &str, source: &str) -> Result<Scenario, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::input(format!("{source}:{}:{}: {e}", e.line(), e.column())))?;
    let value = match value.get("input") {
        Some(inner) if value.get("command").is_some() => inner.clone(),
        _ => value,
    };
    let s: Scenario = serde_json::from_value(value).map_err(|e| CliError::input(format!("{source}: {e}")))?;
    if s.schema_version != SCHEMA_VERSION {
        return Err(CliError::input(format!(
            "{source}: schema_version is \"{}\", expected \"{SCHEMA_VERSION}\"",
            s.schema_version
        )));
    }
    let mut seen = HashSet::new();
    for v in &s.variables {
        if !seen.insert(v) {
            return Err(CliError::input(format!("{source}: variables: duplicate `{v}`")));
        }
    }
    let mut names = HashSet::new();
    for (k, h) in s.hypersurfaces.iter().enumerate() {
        if !names.insert(&h.name) {
            return Err(CliError::input(format!("{source}: hypersurfaces[{k}].name: duplicate `{}`", h.name)));
        }
    }
    Ok(s)
}

impl Scenario {
    pub fn nvars(&self) -> Result<usize, CliError> {
        match self.variables.len() {
            0 => Err(CliError::input("variables: at least one variable is required")),
            n => Ok(n),
        }
    }

    pub fn variety(&self) -> Result<Ideal, CliError> {
        let n = self.nvars()?;
        let gens: Vec<Poly> = self
            .variety
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let path = format!("variety.generators[{k}]");
                let p = parse_poly(g, &self.variables).map_err(at(&path))?;
                p.as_constant()
                    .ok_or_else(|| CliError::input(format!("{path}: coefficients must not depend on z")))
            })
            .collect::<Result<_, _>>()?;
        Ideal::new(n, gens).map_err(at("variety"))
    }

    pub fn family(&self) -> Result<HypersurfaceFamily, CliError> {
        let n = self.nvars()?;
        if self.hypersurfaces.is_empty() {
            return Err(CliError::input("hypersurfaces: the family is empty"));
        }
        let entries = self
            .hypersurfaces
            .iter()
            .enumerate()
            .map(|(k, h)| {
                let poly = parse_poly(&h.poly, &self.variables).map_err(at(format!("hypersurfaces[{k}].poly")))?;
                if poly.degree() != h.degree {
                    return Err(CliError::input(format!(
                        "hypersurfaces[{k}].degree: declared {} but `{}` has degree {}",
                        h.degree,
                        h.poly,
                        poly.degree()
                    )));
                }
                Ok(FamilyEntry { name: h.name.clone(), degree: h.degree, poly })
            })
            .collect::<Result<Vec<_>, _>>()?;
        HypersurfaceFamily::new(n, entries).map_err(at("hypersurfaces"))
    }

    /// The family with constant coefficients.
    pub fn fixed_family(&self) -> Result<Vec<Poly>, CliError> {
        let fam = self.family()?;
        fam.entries()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                e.poly.as_constant().ok_or_else(|| {
                    CliError::input(format!("hypersurfaces[{k}]: `{}` has moving coefficients", e.name))
                })
            })
            .collect()
    }

    pub fn curve(&self) -> Result<CurveSpec, CliError> {
        let Some(c) = &self.curve else {
            return Err(CliError::input("curve: missing"));
        };
        let comps = c
            .components
            .iter()
            .enumerate()
            .map(|(k, comp)| {
                let p = rationals_at(&comp.p, &format!("curve.components[{k}].p"))?;
                let q = rationals_at(&comp.q, &format!("curve.components[{k}].q"))?;
                Ok(Component { p: UniPoly::new(p), q: UniPoly::new(q) })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        CurveSpec::new(comps).map_err(at("curve"))
    }

    pub fn sampling(&self) -> Result<SamplingConfig, CliError> {
        let s = &self.sampling;
        SamplingConfig::new(s.seed, s.num_points, s.coeff_bound).map_err(at("sampling"))
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig, CliError> {
        let cfg = match self.analysis.tolerance {
            Some(t) => QuadratureConfig::with_tolerance(t),
            None => QuadratureConfig::default(),
        };
        cfg.validate().map_err(at("analysis.tolerance"))?;
        Ok(cfg)
    }

    pub fn epsilon(&self) -> Result<Rational, CliError> {
        let e = self.analysis.epsilon.as_deref().ok_or_else(|| CliError::input("analysis.epsilon: missing"))?;
        rational_at(e, "analysis.epsilon")
    }

    pub fn weights(&self) -> Result<Vec<Rational>, CliError> {
        let c = self.analysis.c.as_ref().ok_or_else(|| CliError::input("analysis.c: missing"))?;
        rationals_at(c, "analysis.c")
    }

    pub fn a_values(&self) -> Result<Option<Vec<Rational>>, CliError> {
        self.analysis.a.as_ref().map(|a| rationals_at(a, "analysis.a")).transpose()
    }

    pub fn u(&self) -> Result<u32, CliError> {
        self.analysis.u.ok_or_else(|| CliError::input("analysis.u: missing"))
    }
}
