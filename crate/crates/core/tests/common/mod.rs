#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use smtlab::parse::parse_fixed;
use smtlab::poly::default_names;
use smtlab::{Ideal, Monomial, Poly, Rational};

pub fn poly(s: &str, nvars: usize) -> Poly {
    parse_fixed(s, &default_names(nvars)).unwrap()
}

pub fn polys(s: &[&str], nvars: usize) -> Vec<Poly> {
    s.iter().map(|s| poly(s, nvars)).collect()
}

pub fn ideal(gens: &[&str], nvars: usize) -> Ideal {
    Ideal::new(nvars, polys(gens, nvars)).unwrap()
}

pub fn conic() -> Ideal {
    ideal(&["x0*x2 - x1^2"], 3)
}

pub fn twisted_cubic() -> Ideal {
    ideal(&["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"], 4)
}

/// Random homogeneous polynomial with `terms` monomials and coefficients
/// in `[-bound, bound] \ {0}`.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, degree: u32, terms: usize, bound: i64) -> Poly {
    let all = Monomial::all_of_degree(nvars, degree);
    loop {
        let picked: Vec<(Monomial, Rational)> = all
            .choose_multiple(rng, terms.min(all.len()))
            .map(|m| {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-bound..=bound);
                }
                (m.clone(), Rational::from_integer(c.into()))
            })
            .collect();
        let p = Poly::from_terms(nvars, Some(degree), picked).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random linear form with every coefficient drawn from `[-bound, bound]`.
pub fn random_linear<R: Rng>(rng: &mut R, nvars: usize, bound: i64) -> Poly {
    loop {
        let c: Vec<Rational> = (0..nvars).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
        let p = Poly::linear(&c);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Ideal in at most 4 variables with 1 to 3 generators of degree at most 3.
pub fn random_ideal<R: Rng>(rng: &mut R) -> Ideal {
    let nvars = rng.gen_range(2..=4);
    let ngens = rng.gen_range(1..=3);
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let t = rng.gen_range(1..=4);
            random_poly(rng, nvars, d, t, 3)
        })
        .collect();
    Ideal::new(nvars, gens).unwrap()
}

pub fn combination(family: &[Poly], c: &[i64]) -> Poly {
    let mut acc = Poly::zero(family[0].nvars(), family[0].degree());
    for (q, x) in family.iter().zip(c) {
        acc = acc.add(&q.scale(&Rational::from_integer((*x).into()))).unwrap();
    }
    acc
}
