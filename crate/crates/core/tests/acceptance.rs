//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criterion 11 asks for `T_f(r)/log r` within 1% of 2 at `r = 10³`, which
//! the Euclidean characteristic of `(1, z, z²)` does not reach: it equals
//! `½ log((1+r²+r⁴)/3)`, giving about 1.9205. That line is reported as FAIL
//! and the run still succeeds when the computed value matches the closed
//! form. Every other criterion must pass.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smtlab::monomial_ideal::binomial;
use smtlab::nevanlinna::{
    characteristic_t, fmt_check, smt_check, truncation_bound, zero_count, zero_count_steps, CurveSpec, ExpPoly,
    QuadratureConfig, SmtScenario,
};
use smtlab::parse::parse_poly;
use smtlab::poly::default_names;
use smtlab::position::{distributive_constant, subgeneral_position_check, HypersurfaceFamily, SamplingConfig};
use smtlab::rational::{int, rat};
use smtlab::replace::{
    delta_from_thresholds, m_sequence, replace_family, verify_certificate, weighted_product_inequality, Thresholds,
    DEFAULT_RETRY_BUDGET,
};
use smtlab::variety::{hilbert_function, ideal_degree_part, projective_dimension, variety_degree};
use smtlab::weights::{brute_force_hilbert_weight, ef_inequality_check, max_weight_basis, WeightVector};
use smtlab::{Error, Ideal, Poly, ProjDim, Rational, UniPoly};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
    /// Known to be unattainable; the run checks `detail` against an oracle instead.
    infeasible: bool,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into(), infeasible: false }
}

fn within(t: Instant, limit: Duration) -> bool {
    t.elapsed() < limit
}

fn c1_algebra_catalog() -> Outcome {
    let t = Instant::now();
    let c = conic();
    let tc = twisted_cubic();
    let ok = projective_dimension(&c) == ProjDim::Dim(1)
        && variety_degree(&c) == Ok(2)
        && hilbert_function(&c, 2) == Ok(5)
        && projective_dimension(&tc) == ProjDim::Dim(1)
        && variety_degree(&tc) == Ok(3)
        && hilbert_function(&tc, 2) == Ok(7)
        && projective_dimension(&ideal(&["x0", "x1", "x2"], 3)) == ProjDim::Empty;
    outcome(ok && within(t, Duration::from_secs(3)), "conic (1, 2, 5), twisted cubic (1, 3, 7), <x0,x1,x2> EMPTY")
}

fn c2_dual_route_hilbert() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = 0;
    for _ in 0..50 {
        let i = random_ideal(&mut rng);
        let init = i.groebner().initial_ideal();
        for u in 0..=6 {
            let total = binomial(i.nvars() as u64 - 1 + u as u64, i.nvars() as u64 - 1) as u64;
            let macaulay = total - ideal_degree_part(&i, u).rank as u64;
            if init.standard_monomials(u).len() as u64 != macaulay {
                mismatches += 1;
            }
        }
    }
    outcome(mismatches == 0 && within(t, Duration::from_secs(30)), format!("50 ideals, u <= 6, {mismatches} mismatches"))
}

fn delta_of(v: &Ideal, fam: &[Poly]) -> Rational {
    let f = HypersurfaceFamily::from_fixed(v.nvars(), fam).unwrap();
    distributive_constant(v, &f, &SamplingConfig::default()).unwrap().delta
}

fn c3_distributive_catalog() -> Outcome {
    let p2 = Ideal::zero(3);
    let a = delta_of(&p2, &polys(&["x1", "x2", "x1 + x2"], 3));
    let b = delta_of(&p2, &polys(&["x0", "x1", "x2", "x0 + x1 + x2"], 3));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = SamplingConfig::default();
    let (mut verified, mut violations) = (0, 0);
    while verified < 30 {
        let v = if rng.gen_bool(0.5) { Ideal::zero(3) } else { Ideal::zero(4) };
        let n = v.nvars() - 1;
        let q = rng.gen_range(n + 2..=6);
        let base: Vec<Poly> = (0..2).map(|_| random_linear(&mut rng, v.nvars(), 4)).collect();
        let fam: Vec<Poly> = (0..q)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    combination(&base, &[rng.gen_range(1..=3), rng.gen_range(-3..=3)])
                } else {
                    random_linear(&mut rng, v.nvars(), 4)
                }
            })
            .collect();
        let Ok(f) = HypersurfaceFamily::from_fixed(v.nvars(), &fam) else { continue };
        let Some(l) = (n..q).find(|&l| subgeneral_position_check(&v, &f, l, &cfg).unwrap().holds) else { continue };
        let Ok(rep) = distributive_constant(&v, &f, &cfg) else { continue };
        if rep.delta > int(l as i64 - n as i64 + 1) {
            violations += 1;
        }
        verified += 1;
    }
    outcome(
        a == rat(3, 2) && b == int(1) && violations == 0,
        format!("{{x1,x2,x1+x2}} -> {a}, general lines -> {b}, {violations} violations in 30 families"),
    )
}

fn c4_replacement() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut steps, mut ok_steps, mut bad) = (0, 0, 0);
    let mut done = 0;
    while done < 50 {
        let v = if rng.gen_bool(0.5) { Ideal::zero(3) } else { Ideal::zero(4) };
        let n = v.nvars() - 1;
        let degree = rng.gen_range(1..=2);
        let mut fam: Vec<Poly> = Vec::new();
        while fam.len() < n + 1 + rng.gen_range(0..=2) {
            if !fam.is_empty() && rng.gen_bool(0.3) {
                let c: Vec<i64> = (0..fam.len()).map(|_| rng.gen_range(-2..=2)).collect();
                let p = combination(&fam, &c);
                if !p.is_zero() {
                    fam.push(p);
                }
            } else {
                fam.push(random_poly(&mut rng, v.nvars(), degree, 4, 3));
            }
        }
        let r = match replace_family(&v, &fam, done, DEFAULT_RETRY_BUDGET) {
            Err(Error::ProfileNotEmpty) | Err(Error::Invalid(_)) => continue,
            r => r,
        };
        done += 1;
        steps += n;
        match r {
            Ok(r) => {
                ok_steps += n;
                let ps = r.polys(&fam).unwrap();
                let independent = (0..=n).all(|u| {
                    let d = projective_dimension(&v.with(&ps[..=u]).unwrap());
                    if u == n { d == ProjDim::Empty } else { d.at_most((n - u - 1) as i64) }
                });
                if !independent || !verify_certificate(&v, &fam, &r).unwrap() {
                    bad += 1;
                }
            }
            Err(Error::RetryBudget { step, .. }) => ok_steps += step - 1,
            Err(_) => bad += 1,
        }
    }
    let rate = ok_steps as f64 / steps as f64;
    outcome(
        bad == 0 && rate >= 0.98 && within(t, Duration::from_secs(60)),
        format!("50 instances, {bad} invalid certificates, step success {:.1}%", 100.0 * rate),
    )
}

fn c5_exponent_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut fails, mut m0) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let mut t: Vec<u64> = rand::seq::index::sample(&mut rng, 20, n).into_iter().map(|x| x as u64 + 1).collect();
        t.push(0);
        t.sort_unstable();
        let t = Thresholds::new(t).unwrap();
        let mut a: Vec<Rational> = (0..n)
            .map(|_| {
                let den = rng.gen_range(1..=10);
                rat(rng.gen_range(den..=10 * den), den)
            })
            .collect();
        a.sort_by(|x, y| y.cmp(x));
        if !weighted_product_inequality(&t, &a).unwrap().holds {
            fails += 1;
        }
        if m_sequence(&t).last() != Some(&delta_from_thresholds(&t)) {
            m0 += 1;
        }
    }
    outcome(fails == 0 && m0 == 0, format!("500 instances, {fails} inequality failures, {m0} with m_0 != Delta"))
}

fn c6_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let anchor = max_weight_basis(&conic(), 2, &WeightVector::from_ints(&[0, 1, 0]).unwrap()).unwrap().value;
    let ideals = [
        Ideal::zero(2),
        Ideal::zero(3),
        conic(),
        ideal(&["x1^2"], 3),
        ideal(&["x0 - x1"], 3),
        ideal(&["x0*x1"], 2),
    ];
    let (mut total, mut diff) = (0, 0);
    for i in &ideals {
        for u in 1..=2 {
            for _ in 0..25 {
                let c = WeightVector::new((0..i.nvars()).map(|_| rat(rng.gen_range(0..=12), rng.gen_range(1..=4))).collect())
                    .unwrap();
                total += 1;
                if max_weight_basis(i, u, &c).unwrap().value != brute_force_hilbert_weight(i, u, &c).unwrap() {
                    diff += 1;
                }
            }
        }
    }
    outcome(anchor == int(4) && diff == 0, format!("anchor S = {anchor}, {diff} of {total} instances differ"))
}

fn c7_ef() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let catalog: [(Ideal, Vec<usize>); 4] = [
        (Ideal::zero(2), vec![0, 1]),
        (Ideal::zero(3), vec![0, 1, 2]),
        (conic(), vec![0, 2]),
        (twisted_cubic(), vec![0, 3]),
    ];
    let (mut violations, mut p1_exact) = (0, true);
    for (k, (i, j)) in catalog.iter().enumerate() {
        for u in 2..=8 {
            for _ in 0..25 {
                let c = WeightVector::new((0..i.nvars()).map(|_| rat(rng.gen_range(0..=12), rng.gen_range(1..=4))).collect())
                    .unwrap();
                let rep = ef_inequality_check(i, &c, u, j).unwrap();
                if !rep.holds {
                    violations += 1;
                }
                if k == 0 && &rep.lhs - &rep.rhs != int(3) * c.max() / int(u as i64) {
                    p1_exact = false;
                }
            }
        }
    }
    outcome(violations == 0 && p1_exact, format!("{violations} violations; P1 gap = 3 max c / u exactly: {p1_exact}"))
}

fn line_curve() -> CurveSpec {
    CurveSpec::polynomial(vec![UniPoly::one(), UniPoly::z()]).unwrap()
}

fn conic_curve() -> CurveSpec {
    CurveSpec::polynomial(vec![UniPoly::one(), UniPoly::z(), UniPoly::z().pow(2)]).unwrap()
}

fn c8_fmt() -> Outcome {
    let t = Instant::now();
    let q = parse_poly("x1", &default_names(2)).unwrap();
    let grid: Vec<f64> = (2..=100).map(f64::from).collect();
    let rep = fmt_check(&line_curve(), &q, &grid, &QuadratureConfig::with_tolerance(1e-9)).unwrap();
    let worst = rep.rows.iter().map(|r| r.rho.abs()).fold(0.0, f64::max);
    outcome(worst <= 1e-6 && within(t, Duration::from_secs(10)), format!("max |rho| = {worst:.2e} over r = 2..100"))
}

fn c9_argument_principle() -> Outcome {
    let t = Instant::now();
    let mut g = ExpPoly::from_poly(UniPoly::one());
    g.add_term(UniPoly::z(), UniPoly::one());
    let cfg = QuadratureConfig::default();
    let n10 = zero_count(&g, 10.0, &cfg).unwrap();
    let n4 = zero_count(&g, 4.0, &cfg).unwrap();
    let steps = zero_count_steps(&g, 10.0, &cfg).unwrap();
    outcome(
        n10 == 4 && n4 == 2 && steps.max_winding_defect < 1e-3 && within(t, Duration::from_secs(10)),
        format!("n(10) = {n10}, n(4) = {n4}, winding defect {:.1e}", steps.max_winding_defect),
    )
}

fn c10_smt() -> Outcome {
    let t = Instant::now();
    let v = conic();
    let f = conic_curve();
    let fam = HypersurfaceFamily::from_fixed(
        3,
        &polys(&["x0", "x2", "x0 + x1 + x2", "x0 + 2*x1 + 4*x2", "x0 - x1 + x2"], 3),
    )
    .unwrap();
    let s = SmtScenario {
        variety: &v,
        curve: &f,
        family: &fam,
        epsilon: rat(1, 2),
        r_min: 5.0,
        r_max: 200.0,
        samples: 40,
        sampling: SamplingConfig::default(),
        quadrature: QuadratureConfig::with_tolerance(1e-9),
    };
    let rep = smt_check(&s).unwrap();
    let frac = rep.fraction_strict();
    outcome(
        rep.n_f == 1 && rep.degree_f == 2 && rep.delta_f == int(1) && frac >= 0.95 && within(t, Duration::from_secs(60)),
        format!(
            "n_f = {}, delta_f = {}, Delta_f = {}, positive margin at {:.0}% of 40 radii",
            rep.n_f,
            rep.degree_f,
            rep.delta_f,
            100.0 * frac
        ),
    )
}

fn c11_slope() -> Outcome {
    let cfg = QuadratureConfig::with_tolerance(1e-10);
    let f = conic_curve();
    let r: f64 = 1e3;
    let t = characteristic_t(&f, r, &cfg).unwrap();
    let ratio = t / r.ln();
    let oracle = 0.5 * ((1.0 + r * r + r.powi(4)) / 3.0).ln() / r.ln();
    let t6 = characteristic_t(&f, 1e6, &cfg).unwrap();
    let slope = (t6 - t) / (1e6f64.ln() - r.ln());
    Outcome {
        pass: (ratio - 2.0).abs() <= 0.02,
        detail: format!(
            "T/log r = {ratio:.4} at r = 1e3 (closed form {oracle:.4}); log-log slope on [1e3, 1e6] = {slope:.6}"
        ),
        infeasible: (ratio - oracle).abs() < 1e-9 && (slope - 2.0).abs() < 0.02,
    }
}

fn c12_truncation() -> Outcome {
    let first = truncation_bound(1, &rat(1, 2)).unwrap();
    let vals: Vec<_> = (1..=10).map(|q| truncation_bound(q, &rat(1, 2)).unwrap()).collect();
    let monotone = vals.windows(2).all(|w| w[0] <= w[1]);
    outcome(first == 17.into() && monotone, format!("bound(1, 1/2) = {first}, monotone over q = 1..10: {monotone}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("algebra catalog", c1_algebra_catalog),
        ("dual-route Hilbert agreement", c2_dual_route_hilbert),
        ("distributive-constant catalog", c3_distributive_catalog),
        ("replacement certificates", c4_replacement),
        ("exponent inequality suite", c5_exponent_lemma),
        ("Hilbert-weight oracle equivalence", c6_oracle_equivalence),
        ("combined EF inequality", c7_ef),
        ("FMT closed form", c8_fmt),
        ("argument-principle counting", c9_argument_principle),
        ("SMT conic scenario", c10_smt),
        ("rational-curve slope", c11_slope),
        ("truncation bound", c12_truncation),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} [{secs:7.3}s] {name}: {}", k + 1, o.detail);
        if o.pass {
            passed += 1;
        } else if o.infeasible {
            println!("             (unattainable target; computed value matches the closed form)");
        } else {
            unexpected += 1;
        }
    }
    println!("acceptance: {passed}/12 PASS, {unexpected} unexpected FAIL");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
