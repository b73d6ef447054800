//! Characteristic and proximity functions, First Main Theorem residuals and
//! Second Main Theorem scenario checks. All circle integrals are normalized
//! by subtracting their value on the unit circle.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::counting::{counting_n, Truncation};
use super::curve::{compose_with_curve, horner, to_f64_coeffs, CurveSpec, ExpPoly};
use super::quadrature::{circle_mean, QuadratureConfig};
use super::roots::roots;
use crate::error::{Error, Result};
use crate::poly::MovingPoly;
use crate::position::{distributive_constant, HypersurfaceFamily, SamplingConfig};
use crate::ratfun::RationalFunction;
use crate::rational::{to_f64, Rational};
use crate::variety::{projective_dimension, variety_degree, Ideal};

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::Invalid(format!("radius {r} must be at least 1")));
    }
    Ok(())
}

/// `T_f(r) = mean_{|z|=r} log‖f‖ − mean_{|z|=1} log‖f‖`.
pub fn characteristic_t(f: &CurveSpec, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_radius(r)?;
    if r == 1.0 {
        return Ok(0.0);
    }
    let at = |rho| circle_mean(|z| f.log_norm(z), rho, cfg);
    Ok(at(r)? - at(1.0)?)
}

/// Roots closer to the circle than this modulus ratio are divided out of
/// the integrand and their Jensen term is added back exactly.
const NEAR_RATIO: f64 = 0.75;

/// `mean_{|z|=ρ} log|g|`. For a single term `p·exp(q)` the roots of `p`
/// near the circle are divided out first, since `log|z − a|` has an
/// integrable singularity that slows the trapezoid rule, and
/// `mean log|z − a| = log max(ρ, |a|)`.
fn mean_log_abs(g: &ExpPoly, rho: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let Some((q, p)) = g.single_term() else {
        let ng = g.numeric();
        return circle_mean(|z| ng.log_abs(z), rho, cfg);
    };
    let mut rest: Vec<Complex64> = to_f64_coeffs(p).into_iter().map(|c| Complex64::new(c, 0.0)).collect();
    let mut jensen = 0.0;
    for root in roots(p)? {
        let m = root.modulus();
        let ratio = m.min(rho) / m.max(rho);
        if ratio <= NEAR_RATIO {
            continue;
        }
        for _ in 0..root.multiplicity {
            rest = deflate(&rest, root.center);
        }
        jensen += root.multiplicity as f64 * rho.max(m).ln();
    }
    let qc = to_f64_coeffs(q);
    let mean = circle_mean(|z| complex_horner(&rest, z).norm().ln() + horner(&qc, z).re, rho, cfg)?;
    Ok(mean + jensen)
}

fn complex_horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, x| acc * z + x)
}

/// Quotient of `c` (lowest degree first) by `z − a`.
fn deflate(c: &[Complex64], a: Complex64) -> Vec<Complex64> {
    let n = c.len() - 1;
    let mut out = vec![Complex64::zero(); n];
    let mut carry = Complex64::zero();
    for k in (0..n).rev() {
        carry = c[k + 1] + carry * a;
        out[k] = carry;
    }
    out
}

fn composed(q: &MovingPoly, f: &CurveSpec, name: &str) -> Result<ExpPoly> {
    let g = compose_with_curve(q, f)?;
    if g.is_zero() {
        return Err(Error::Degenerate(name.to_string()));
    }
    Ok(g)
}

fn proximity_of(f: &CurveSpec, g: &ExpPoly, d: u32, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let at = |rho: f64| -> Result<f64> {
        Ok(d as f64 * circle_mean(|z| f.log_norm(z), rho, cfg)? - mean_log_abs(g, rho, cfg)?)
    };
    Ok(at(r)? - at(1.0)?)
}

/// `m_f(r, Q) = mean log(‖f‖^d / |Q(f)|)` on `|z| = r` minus the same on
/// the unit circle.
pub fn proximity_m(f: &CurveSpec, q: &MovingPoly, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_radius(r)?;
    let g = composed(q, f, &q.to_string())?;
    proximity_of(f, &g, q.degree(), r, cfg)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FmtRow {
    pub r: f64,
    pub t: f64,
    pub m: f64,
    pub n: f64,
    /// `d·T − m − N`.
    pub rho: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FmtReport {
    pub rows: Vec<FmtRow>,
    pub moving: bool,
    pub pass: bool,
    /// How `pass` was decided.
    pub criterion: String,
}

/// Residuals of `d T_f(r) = m_f(r,Q) + N_{Q(f)}(r) + ρ(r)` on a grid.
///
/// Constant `Q`: PASS iff every `|ρ(r) − ρ(r_max)| ≤ 10·tol`. Moving `Q`:
/// PASS iff `|ρ|/T_f` is non-increasing beyond the first quartile of the
/// grid, up to a noise allowance of `10·tol/T_f`.
pub fn fmt_check(f: &CurveSpec, q: &MovingPoly, grid: &[f64], cfg: &QuadratureConfig) -> Result<FmtReport> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("grid must be nonempty and increasing".into()));
    }
    for &r in grid {
        if r <= 1.0 {
            return Err(Error::Invalid(format!("grid value {r} must exceed 1")));
        }
    }
    let g = composed(q, f, &q.to_string())?;
    let d = q.degree();
    let mut rows = Vec::with_capacity(grid.len());
    for &r in grid {
        let t = characteristic_t(f, r, cfg)?;
        let m = proximity_of(f, &g, d, r, cfg)?;
        let n = counting_n(&g, r, Truncation::Infinite, cfg)?;
        rows.push(FmtRow { r, t, m, n, rho: d as f64 * t - m - n });
    }
    let noise = 10.0 * cfg.tolerance;
    let moving = q.is_moving();
    let (pass, criterion) = if moving {
        let start = rows.len() / 4;
        let ratio = |row: &FmtRow| row.rho.abs() / row.t;
        let ok = rows[start..]
            .windows(2)
            .all(|w| ratio(&w[1]) <= ratio(&w[0]) + noise / w[1].t);
        (ok, "|rho|/T non-increasing beyond the first quartile (slack 10*tol/T)".to_string())
    } else {
        let last = rows.last().unwrap().rho;
        let ok = rows.iter().all(|row| (row.rho - last).abs() <= noise);
        (ok, "max |rho(r) - rho(r_max)| <= 10*tol".to_string())
    };
    Ok(FmtReport { rows, moving, pass, criterion })
}

/// Cartan characteristic of `a = P/Q` in lowest terms:
/// `mean_{|z|=r} log max(|P|, |Q|)` minus its value on the unit circle.
/// It grows like `max(deg P, deg Q)·log r`; constants give 0.
pub fn ratfun_characteristic(a: &RationalFunction, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if a.is_zero() {
        return Err(Error::Invalid("the zero function has no characteristic".into()));
    }
    check_radius(r)?;
    if a.is_constant() || r == 1.0 {
        return Ok(0.0);
    }
    let (p, q) = (to_f64_coeffs(a.num()), to_f64_coeffs(a.den()));
    let h = |z: Complex64| horner(&p, z).norm().max(horner(&q, z).norm()).ln();
    Ok(circle_mean(h, r, cfg)? - circle_mean(h, 1.0, cfg)?)
}

/// Inputs of [`smt_check`].
#[derive(Clone, Debug)]
pub struct SmtScenario<'a> {
    pub variety: &'a Ideal,
    pub curve: &'a CurveSpec,
    pub family: &'a HypersurfaceFamily,
    pub epsilon: Rational,
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
    pub sampling: SamplingConfig,
    pub quadrature: QuadratureConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmtRow {
    pub r: f64,
    pub t_f: f64,
    pub m: Vec<f64>,
    pub n: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NevanlinnaReport {
    pub n_f: usize,
    pub degree_f: u64,
    pub delta_f: Rational,
    pub delta_stable: bool,
    pub q: usize,
    pub epsilon: Rational,
    /// `q − Δ_f (n_f + 1) − ε`.
    pub coefficient: Rational,
    pub rows: Vec<SmtRow>,
    pub fraction_holding: f64,
}

impl NevanlinnaReport {
    pub fn r_grid(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.r).collect()
    }

    /// Fraction of grid points with strictly positive margin.
    pub fn fraction_strict(&self) -> f64 {
        self.rows.iter().filter(|r| r.margin > 0.0).count() as f64 / self.rows.len() as f64
    }
}

/// Geometric grid of `samples` radii from `r_min` to `r_max`.
pub fn geometric_grid(r_min: f64, r_max: f64, samples: usize) -> Result<Vec<f64>> {
    if !(r_min >= 1.0 && r_max >= r_min && r_max.is_finite()) {
        return Err(Error::Invalid(format!("bad radius range [{r_min}, {r_max}]")));
    }
    match samples {
        0 => Err(Error::Invalid("need at least one sample".into())),
        1 => Ok(vec![r_min]),
        k => Ok((0..k)
            .map(|i| r_min * (r_max / r_min).powf(i as f64 / (k - 1) as f64))
            .collect()),
    }
}

/// Evaluates `(q − Δ_f(n_f+1) − ε) T_f(r) ≤ Σ_i N_{Q_i(f)}(r) / d_i` on a
/// geometric grid.
pub fn smt_check(s: &SmtScenario<'_>) -> Result<NevanlinnaReport> {
    let v = s.variety;
    if v.nvars() != s.curve.nvars() || s.family.nvars() != v.nvars() {
        return Err(Error::VariableMismatch(s.curve.nvars(), v.nvars()));
    }
    let n_f = projective_dimension(v).dim().ok_or(Error::EmptyVariety)?;
    let degree_f = variety_degree(v)?;
    for gen in v.generators() {
        if !compose_with_curve(&gen.to_moving(), s.curve)?.is_zero() {
            return Err(Error::CurveNotOnVariety(gen.to_string()));
        }
    }
    let composed_family: Vec<ExpPoly> = s
        .family
        .entries()
        .iter()
        .map(|e| composed(&e.poly, s.curve, &e.name))
        .collect::<Result<_>>()?;
    let position = distributive_constant(v, s.family, &s.sampling)?;
    let q = s.family.len();
    let coefficient = Rational::from_integer(q.into())
        - &position.delta * Rational::from_integer((n_f + 1).into())
        - &s.epsilon;
    let coeff_f = to_f64(&coefficient);
    let grid = geometric_grid(s.r_min, s.r_max, s.samples)?;
    let cfg = &s.quadrature;
    let mut rows = Vec::with_capacity(grid.len());
    for r in grid {
        let t_f = characteristic_t(s.curve, r, cfg)?;
        let mut m = Vec::with_capacity(q);
        let mut n = Vec::with_capacity(q);
        let mut rhs = 0.0;
        for (e, g) in s.family.entries().iter().zip(&composed_family) {
            m.push(proximity_of(s.curve, g, e.degree, r, cfg)?);
            let ni = counting_n(g, r, Truncation::Infinite, cfg)?;
            rhs += ni / e.degree as f64;
            n.push(ni);
        }
        let lhs = coeff_f * t_f;
        rows.push(SmtRow { r, t_f, m, n, lhs, rhs, margin: rhs - lhs });
    }
    let holding = rows.iter().filter(|r| r.margin >= 0.0).count();
    Ok(NevanlinnaReport {
        n_f,
        degree_f,
        delta_f: position.delta,
        delta_stable: position.stable,
        q,
        epsilon: s.epsilon.clone(),
        coefficient,
        fraction_holding: holding as f64 / rows.len() as f64,
        rows,
    })
}

/// Nearest double of an exact value, for reports.
pub fn approx(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| to_f64(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_fixed, parse_poly, parse_ratfun};
    use crate::poly::default_names;
    use crate::rational::rat;
    use crate::univariate::UniPoly;
    use super::super::curve::Component;

    fn line_curve() -> CurveSpec {
        CurveSpec::polynomial(vec![UniPoly::one(), UniPoly::z()]).unwrap()
    }

    fn conic_curve() -> CurveSpec {
        CurveSpec::polynomial(vec![UniPoly::one(), UniPoly::z(), UniPoly::z().pow(2)]).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::with_tolerance(1e-10)
    }

    #[test]
    fn characteristic_catalog() {
        let t = characteristic_t(&line_curve(), 10.0, &cfg()).unwrap();
        assert!((t - 0.5 * (101.0f64 / 2.0).ln()).abs() < 1e-9);
        assert_eq!(characteristic_t(&line_curve(), 1.0, &cfg()).unwrap(), 0.0);
        let r: f64 = 1e3;
        let t = characteristic_t(&conic_curve(), r, &cfg()).unwrap();
        let closed = 0.5 * (1.0 + r * r + r.powi(4)).ln() - 0.5 * 3f64.ln();
        assert!((t - closed).abs() < 1e-8);
    }

    #[test]
    fn proximity_catalog() {
        let n2 = default_names(2);
        let m = proximity_m(&line_curve(), &parse_poly("x1", &n2).unwrap(), 10.0, &cfg()).unwrap();
        assert!((m - ((101f64.sqrt() / 10.0).ln() - 2f64.sqrt().ln())).abs() < 1e-9);
        let m = proximity_m(&line_curve(), &parse_poly("x0", &n2).unwrap(), 10.0, &cfg()).unwrap();
        assert!((m - 0.5 * (101.0f64 / 2.0).ln()).abs() < 1e-9);
        let constant = CurveSpec::polynomial(vec![UniPoly::one(), UniPoly::zero()]).unwrap();
        let m = proximity_m(&constant, &parse_poly("x0", &n2).unwrap(), 10.0, &cfg()).unwrap();
        assert!(m.abs() < 1e-12);
        // A root exactly on the unit circle and on a quadrature node.
        let m = proximity_m(&line_curve(), &parse_poly("x0 - x1", &n2).unwrap(), 5.0, &cfg()).unwrap();
        let closed = 0.5 * (26.0f64 / 2.0).ln() - 5f64.ln();
        assert!((m - closed).abs() < 1e-9);
    }

    #[test]
    fn fmt_constant_coefficients() {
        let n2 = default_names(2);
        let grid: Vec<f64> = (2..=100).step_by(7).map(f64::from).collect();
        for q in ["x1", "x0 + x1", "3*x0 - 2*x1", "x0"] {
            let rep = fmt_check(&line_curve(), &parse_poly(q, &n2).unwrap(), &grid, &cfg()).unwrap();
            assert!(rep.pass, "{q}");
            assert!(!rep.moving);
            assert!(rep.rows.iter().all(|r| r.rho.abs() < 1e-6), "{q}");
        }
    }

    #[test]
    fn fmt_moving_coefficients() {
        let n2 = default_names(2);
        let q = parse_poly("(z)*x0 + x1", &n2).unwrap();
        let grid: Vec<f64> = (2..=60).step_by(6).map(f64::from).collect();
        let rep = fmt_check(&line_curve(), &q, &grid, &cfg()).unwrap();
        assert!(rep.moving && rep.pass);
    }

    #[test]
    fn fmt_exponential_curve() {
        let f = CurveSpec::new(vec![
            Component::poly(UniPoly::one()),
            Component { p: UniPoly::one(), q: UniPoly::z() },
        ])
        .unwrap();
        let q = parse_poly("x0 + x1", &default_names(2)).unwrap();
        let cfg = QuadratureConfig::with_tolerance(1e-8);
        let rep = fmt_check(&f, &q, &[2.0, 5.0, 8.0, 12.0], &cfg).unwrap();
        assert!(rep.pass, "{:?}", rep.rows);
        // Independent midpoint-rule oracle for mean ½ log(1 + e^{2 Re z}).
        let mean = |r: f64| {
            let n = 200_000;
            (0..n)
                .map(|k| {
                    let x = r * (std::f64::consts::TAU * (k as f64 + 0.5) / n as f64).cos();
                    0.5 * (1.0 + (2.0 * x).exp()).ln()
                })
                .sum::<f64>()
                / n as f64
        };
        for row in &rep.rows {
            assert!((row.t - (mean(row.r) - mean(1.0))).abs() < 1e-7);
        }
    }

    #[test]
    fn ratfun_catalog() {
        let c = QuadratureConfig::with_tolerance(1e-9);
        let a = parse_ratfun("z").unwrap();
        assert!((ratfun_characteristic(&a, 10.0, &c).unwrap() - 10f64.ln()).abs() < 1e-9);
        assert_eq!(ratfun_characteristic(&RationalFunction::constant(rat(7, 2)), 5.0, &c).unwrap(), 0.0);
        let b = parse_ratfun("(z^2 + 1)/(z - 2)").unwrap();
        // T(r) − 2 log r settles to a constant, so T(r)/log r → 2.
        let offset = |r: f64| ratfun_characteristic(&b, r, &c).unwrap() - 2.0 * r.ln();
        assert!((offset(1e4) - offset(1e6)).abs() < 1e-3);
        let ratio = ratfun_characteristic(&b, 1e12, &c).unwrap() / 1e12f64.ln();
        assert!((ratio - 2.0).abs() < 0.05, "{ratio}");
        assert!(ratfun_characteristic(&RationalFunction::zero(), 5.0, &c).is_err());
    }

    fn family(v: &[&str], n: usize) -> HypersurfaceFamily {
        let polys: Vec<_> = v.iter().map(|s| parse_fixed(s, &default_names(n)).unwrap()).collect();
        HypersurfaceFamily::from_fixed(n, &polys).unwrap()
    }

    #[test]
    fn smt_p1_triple() {
        let v = Ideal::zero(2);
        let f = line_curve();
        let fam = family(&["x0", "x1", "x0 + x1"], 2);
        let s = SmtScenario {
            variety: &v,
            curve: &f,
            family: &fam,
            epsilon: rat(1, 2),
            r_min: 2.0,
            r_max: 50.0,
            samples: 6,
            sampling: SamplingConfig::default(),
            quadrature: QuadratureConfig::with_tolerance(1e-8),
        };
        let rep = smt_check(&s).unwrap();
        assert_eq!((rep.n_f, rep.delta_f.clone()), (1, rat(1, 1)));
        assert_eq!(rep.coefficient, rat(1, 2));
        assert_eq!(rep.fraction_holding, 1.0);
        for row in &rep.rows {
            assert!((row.rhs - 2.0 * row.r.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn smt_degenerate_and_inconsistent() {
        let conic = Ideal::new(3, vec![parse_fixed("x0*x2 - x1^2", &default_names(3)).unwrap()]).unwrap();
        let f = conic_curve();
        let fam = family(&["x0", "x0*x2 - x1^2"], 3);
        let mut s = SmtScenario {
            variety: &conic,
            curve: &f,
            family: &fam,
            epsilon: rat(1, 2),
            r_min: 2.0,
            r_max: 5.0,
            samples: 2,
            sampling: SamplingConfig::default(),
            quadrature: cfg(),
        };
        assert_eq!(smt_check(&s), Err(Error::Degenerate("Q2".into())));
        let line = Ideal::new(3, vec![parse_fixed("x2", &default_names(3)).unwrap()]).unwrap();
        s.variety = &line;
        assert!(matches!(smt_check(&s), Err(Error::CurveNotOnVariety(_))));
    }

    #[test]
    fn grid() {
        let g = geometric_grid(5.0, 200.0, 40).unwrap();
        assert_eq!(g.len(), 40);
        assert!((g[0] - 5.0).abs() < 1e-12 && (g[39] - 200.0).abs() < 1e-9);
        assert!(geometric_grid(0.5, 2.0, 3).is_err());
    }

    #[test]
    fn deflation() {
        // (z − 2)(z + 3) = z^2 + z − 6
        let c: Vec<Complex64> = [-6.0, 1.0, 1.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let d = deflate(&c, Complex64::new(2.0, 0.0));
        assert!((d[0] - 3.0).norm() < 1e-15 && (d[1] - 1.0).norm() < 1e-15);
    }
}
