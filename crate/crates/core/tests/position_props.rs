mod common;

use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smtlab::position::{distributive_constant, subgeneral_position_check, HypersurfaceFamily, SamplingConfig};
use smtlab::rational::{int, rat};
use smtlab::variety::projective_dimension;
use smtlab::{Ideal, Poly, Rational};

fn delta(v: &Ideal, fam: &[Poly]) -> Rational {
    let f = HypersurfaceFamily::from_fixed(v.nvars(), fam).unwrap();
    let rep = distributive_constant(v, &f, &SamplingConfig::default()).unwrap();
    if projective_dimension(v).dim().unwrap() >= 1 {
        assert!(rep.delta >= int(1));
    }
    rep.delta
}

/// Linear forms where some members are forced through common points, so
/// that the family is degenerate in a controlled way.
fn clustered_linear<R: Rng>(rng: &mut R, nvars: usize, q: usize) -> Vec<Poly> {
    let bases: Vec<Poly> = (0..nvars).map(|_| random_linear(rng, nvars, 4)).collect();
    let span = rng.gen_range(2..=nvars);
    let mut out = Vec::with_capacity(q);
    while out.len() < q {
        let p = if rng.gen_bool(0.5) {
            let c: Vec<i64> = (0..span).map(|_| rng.gen_range(-3..=3)).collect();
            combination(&bases[..span], &c)
        } else {
            random_linear(rng, nvars, 4)
        };
        if !p.is_zero() && !out.iter().any(|o: &Poly| o.monic() == p.monic()) {
            out.push(p);
        }
    }
    out.shuffle(rng);
    out
}

#[test]
fn catalog() {
    let p2 = Ideal::zero(3);
    assert_eq!(delta(&p2, &polys(&["x1", "x2", "x1 + x2"], 3)), rat(3, 2));
    assert_eq!(delta(&p2, &polys(&["x0", "x1", "x2", "x0 + x1 + x2"], 3)), int(1));
}

#[test]
fn subgeneral_bound_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    let varieties = [Ideal::zero(3), Ideal::zero(4), conic()];
    let cfg = SamplingConfig::default();
    let mut verified = 0;
    let mut attempts = 0;
    while verified < 30 {
        attempts += 1;
        assert!(attempts < 300, "too few subgeneral families generated");
        let v = &varieties[rng.gen_range(0..varieties.len())];
        let n = projective_dimension(v).dim().unwrap();
        let q = rng.gen_range(n + 2..=6);
        let fam = clustered_linear(&mut rng, v.nvars(), q);
        let f = HypersurfaceFamily::from_fixed(v.nvars(), &fam).unwrap();
        let Some(l) = (n..q).find(|&l| subgeneral_position_check(v, &f, l, &cfg).unwrap().holds) else {
            continue;
        };
        let d = delta(v, &fam);
        let bound = int(l as i64 - n as i64 + 1);
        assert!(d <= bound, "delta {d} exceeds {bound} for l = {l}: {fam:?}");
        verified += 1;
    }
}

#[test]
fn nested_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let plane_conic = ideal(&["x3", "x0*x2 - x1^2"], 4);
    let nested = [(Ideal::zero(3), conic()), (Ideal::zero(4), twisted_cubic()), (Ideal::zero(4), plane_conic)];
    for (v, i_f) in &nested {
        let dim_v = projective_dimension(v).dim().unwrap() as i64;
        let n_f = projective_dimension(i_f).dim().unwrap() as i64;
        for _ in 0..6 {
            let q = rng.gen_range(3..=6);
            let fam: Vec<Poly> = clustered_linear(&mut rng, v.nvars(), q);
            if fam.iter().any(|p| i_f.contains(p)) {
                continue;
            }
            let d_f = delta(i_f, &fam);
            let d_v = delta(v, &fam);
            assert!(d_f <= int(dim_v - n_f + 1) * &d_v, "{d_f} vs {d_v} for {fam:?}");
        }
    }
}

#[test]
fn adding_a_member_never_decreases_delta() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for v in [Ideal::zero(3), conic(), twisted_cubic()] {
        for _ in 0..5 {
            let mut fam = clustered_linear(&mut rng, v.nvars(), 3);
            let mut prev = delta(&v, &fam);
            for _ in 0..3 {
                fam.push(random_linear(&mut rng, v.nvars(), 3));
                let next = delta(&v, &fam);
                assert!(next >= prev);
                prev = next;
            }
        }
    }
}
