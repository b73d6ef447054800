//! Buchberger's algorithm for homogeneous ideals under grevlex.

use std::collections::BTreeSet;

use num_traits::One;

use crate::monomial::Monomial;
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::Poly;

/// Term order tag. Only grevlex is supported.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TermOrder {
    #[default]
    Grevlex,
}

/// Reduced Gröbner basis: monic generators sorted by leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    nvars: usize,
    generators: Vec<Poly>,
    order: TermOrder,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        normal_form(p, &self.generators, self.order)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        initial_ideal(self)
    }
}

/// Full multivariate division remainder of `p` by `basis`.
pub fn normal_form(p: &Poly, basis: &[Poly], _order: TermOrder) -> Poly {
    let basis: Vec<&Poly> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = p.clone();
    let mut rem = Poly::zero(p.nvars(), p.degree());
    while let Some((m, c)) = rest.pop_leading() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero");
                let q = lm.quotient_of(&m);
                let f = &c / lc;
                // The leading term cancels by construction; subtract the tail only.
                let mut tail = (*g).clone();
                tail.pop_leading();
                rest.sub_mul_term_assign(&q, &f, &tail);
            }
            None => rem.push_term(m, c),
        }
    }
    rem
}

fn s_polynomial(a: &Poly, b: &Poly) -> Poly {
    let (la, ca) = a.leading().expect("nonzero");
    let (lb, cb) = b.leading().expect("nonzero");
    let l = la.lcm(lb);
    let mut s = a.mul_term(&la.quotient_of(&l), &cb.clone());
    s.sub_mul_term_assign(&lb.quotient_of(&l), ca, b);
    s
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed by the normal strategy (smallest lcm degree, then
/// lexicographic on indices) with the coprime and chain criteria.
pub fn buchberger(gens: &[Poly], order: TermOrder) -> GroebnerBasis {
    let nvars = gens.first().map_or(0, Poly::nvars);
    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();

    let add = |h: Poly, basis: &mut Vec<Poly>, pairs: &mut BTreeSet<(u32, usize, usize)>| {
        let h = h.monic();
        let k = basis.len();
        let lh = h.leading_monomial().expect("nonzero").clone();
        for (i, g) in basis.iter().enumerate() {
            let d = g.leading_monomial().expect("nonzero").lcm(&lh).degree();
            pairs.insert((d, i, k));
        }
        basis.push(h);
    };

    for g in gens {
        let h = normal_form(g, &basis, order);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs);
        }
    }

    let pending = |pairs: &BTreeSet<(u32, usize, usize)>, basis: &[Poly], a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        let d = basis[a].leading_monomial().unwrap().lcm(basis[b].leading_monomial().unwrap()).degree();
        pairs.contains(&(d, a, b))
    };

    while let Some(pair) = pairs.pop_first() {
        let (_, i, j) = pair;
        let li = basis[i].leading_monomial().unwrap().clone();
        let lj = basis[j].leading_monomial().unwrap().clone();
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending(&pairs, &basis, i, k)
                && !pending(&pairs, &basis, j, k)
        });
        if chain {
            continue;
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis, order);
        if !h.is_zero() {
            add(h, &mut basis, &mut pairs);
        }
    }

    GroebnerBasis { nvars, generators: reduce_basis(basis, order), order }
}

fn reduce_basis(mut basis: Vec<Poly>, order: TermOrder) -> Vec<Poly> {
    // Minimalize: drop generators whose leading monomial is divisible by another's.
    let mut keep: Vec<Poly> = Vec::new();
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in basis {
        let lg = g.leading_monomial().unwrap();
        if keep.iter().any(|k| k.leading_monomial().unwrap().divides(lg)) {
            continue;
        }
        keep.retain(|k| !lg.divides(k.leading_monomial().unwrap()));
        keep.push(g);
    }
    // Interreduce the tails.
    let n = keep.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let others: Vec<Poly> =
            keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let mut g = keep[i].clone();
        let (lm, lc) = g.pop_leading().unwrap();
        let mut r = normal_form(&g, &others, order);
        r.push_term(lm, lc);
        out.push(r.monic());
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}

/// Leading monomials of a reduced basis, minimalized under divisibility.
pub fn initial_ideal(gb: &GroebnerBasis) -> MonomialIdeal {
    MonomialIdeal::new(
        gb.nvars,
        gb.generators.iter().filter_map(|g| g.leading_monomial().cloned()).collect(),
    )
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn satisfies_buchberger_criterion(basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j]);
            if !normal_form(&s, basis, TermOrder::Grevlex).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Whether `gb` is reduced: monic, and no term divisible by another leading monomial.
pub fn is_reduced(gb: &GroebnerBasis) -> bool {
    let lms: Vec<&Monomial> = gb.generators.iter().map(|g| g.leading_monomial().unwrap()).collect();
    gb.generators.iter().enumerate().all(|(i, g)| {
        g.leading().is_some_and(|(_, c)| c.is_one())
            && g.terms().keys().all(|m| {
                lms.iter().enumerate().all(|(j, lm)| j == i || !lm.divides(m))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_fixed;
    use crate::poly::default_names;

    fn p(s: &str, n: usize) -> Poly {
        parse_fixed(s, &default_names(n)).unwrap()
    }

    fn gb(gens: &[&str], n: usize) -> GroebnerBasis {
        let g: Vec<Poly> = gens.iter().map(|s| p(s, n)).collect();
        buchberger(&g, TermOrder::Grevlex)
    }

    #[test]
    fn normal_form_catalog() {
        let g = [p("x1^2 - x0*x2", 3)];
        // grevlex: x1^2 > x0*x2, so x1^2 -> x0*x2.
        assert_eq!(normal_form(&p("x1^2", 3), &g, TermOrder::Grevlex), p("x0*x2", 3));
        assert_eq!(normal_form(&p("x0*x2", 3), &g, TermOrder::Grevlex), p("x0*x2", 3));
        assert!(normal_form(&g[0], &g, TermOrder::Grevlex).is_zero());
    }

    #[test]
    fn buchberger_catalog() {
        let conic = gb(&["x0*x2 - x1^2"], 3);
        assert_eq!(conic.generators(), &[p("x1^2 - x0*x2", 3)]);

        let cubic = gb(&["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"], 4);
        assert_eq!(cubic.generators().len(), 3);
        for g in ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"] {
            assert!(cubic.contains(&p(g, 4)));
        }
        let lms: Vec<String> =
            cubic.generators().iter().map(|g| g.leading_monomial().unwrap().to_string()).collect();
        assert_eq!(lms, vec!["x2^2", "x1*x2", "x1^2"]);
        assert!(satisfies_buchberger_criterion(cubic.generators()));

        let lin = gb(&["x0", "x0 + x1"], 2);
        assert_eq!(lin.generators(), &[p("x1", 2), p("x0", 2)]);
    }

    #[test]
    fn twisted_cubic_s_pairs_reduce_by_hand() {
        // Independent check: the three quadrics are already a Gröbner basis,
        // i.e. each S-polynomial is an explicit combination of the generators.
        let a = p("x1^2 - x0*x2", 4);
        let b = p("x1*x2 - x0*x3", 4);
        let c = p("x2^2 - x1*x3", 4);
        // S(a, b) = x2*a - x1*b = -x0*x2^2 + x0*x1*x3 = -x0*c
        let s_ab = a.mul(&p("x2", 4)).unwrap().sub(&b.mul(&p("x1", 4)).unwrap()).unwrap();
        assert_eq!(s_ab, c.mul(&p("-x0", 4)).unwrap());
        // S(b, c) = x2*b - x1*c = -x0*x2*x3 + x1^2*x3 = x3*a
        let s_bc = b.mul(&p("x2", 4)).unwrap().sub(&c.mul(&p("x1", 4)).unwrap()).unwrap();
        assert_eq!(s_bc, a.mul(&p("x3", 4)).unwrap());
    }

    #[test]
    fn initial_ideal_catalog() {
        let cubic = gb(&["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"], 4);
        let ii = initial_ideal(&cubic);
        let names: Vec<String> = ii.generators().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["x2^2", "x1*x2", "x1^2"]);
        let lin = gb(&["x0", "x1", "x2"], 3);
        assert_eq!(initial_ideal(&lin).generators().len(), 3);
    }

    #[test]
    fn determinism_and_reducedness() {
        let gens = ["x0^2 - x1*x2", "x1^2 - x0*x2 + x2^2", "x0*x1 + 3*x2^2"];
        let a = gb(&gens, 3);
        let b = gb(&gens, 3);
        assert_eq!(a, b);
        assert!(is_reduced(&a));
        assert!(satisfies_buchberger_criterion(a.generators()));
    }
}
