//! Sparse homogeneous polynomials in `x_0..x_N`.
//!
//! The same container backs fixed hypersurfaces (rational coefficients) and
//! moving hypersurfaces (coefficients in `Q(z)`). Terms are kept in a
//! `BTreeMap` keyed by grevlex, so the leading term is the last entry.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ratfun::RationalFunction;
use crate::rational::{format_rational, Rational};
use crate::univariate::UniPoly;

/// Ring operations needed from a coefficient domain.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero_coeff() -> Self;
    fn one_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, o: &Self) -> Self;
    fn mul_coeff(&self, o: &Self) -> Self;
    fn neg_coeff(&self) -> Self;
    /// Sign and magnitude for printing; magnitude `None` means unit.
    fn display_parts(&self) -> (bool, Option<String>);
}

impl Coefficient for Rational {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn one_coeff() -> Self {
        One::one()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_coeff(&self) -> Self {
        -self
    }
    fn display_parts(&self) -> (bool, Option<String>) {
        let mag = self.abs();
        (self.is_negative(), (!mag.is_one()).then(|| format_rational(&mag)))
    }
}

impl Coefficient for RationalFunction {
    fn zero_coeff() -> Self {
        RationalFunction::zero()
    }
    fn one_coeff() -> Self {
        RationalFunction::one()
    }
    fn is_zero_coeff(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_coeff(&self) -> Self {
        -self
    }
    fn display_parts(&self) -> (bool, Option<String>) {
        match self.as_constant() {
            Some(c) => c.display_parts(),
            None => (false, Some(format!("({self})"))),
        }
    }
}

impl Coefficient for UniPoly {
    fn zero_coeff() -> Self {
        UniPoly::zero()
    }
    fn one_coeff() -> Self {
        UniPoly::one()
    }
    fn is_zero_coeff(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add_coeff(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_coeff(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_coeff(&self) -> Self {
        -self
    }
    fn display_parts(&self) -> (bool, Option<String>) {
        if self.is_constant() {
            self.coeff(0).display_parts()
        } else {
            (false, Some(format!("({self})")))
        }
    }
}

/// Homogeneous polynomial with an explicit degree tag (kept for zero too).
#[derive(Clone, PartialEq)]
pub struct Polynomial<C> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, C>,
}

/// Fixed hypersurface / ideal generator over the rationals.
pub type Poly = Polynomial<Rational>;
/// Moving hypersurface with coefficients in `Q(z)`.
pub type MovingPoly = Polynomial<RationalFunction>;

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Polynomial { nvars, degree, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from terms, merging repeats and dropping zeros.
    /// `degree` is required only when no terms are given.
    pub fn from_terms(
        nvars: usize,
        degree: Option<u32>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        let mut deg = degree;
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::VariableMismatch(m.nvars(), nvars));
            }
            match deg {
                Some(d) if d != m.degree() => return Err(Error::NonHomogeneous(d, m.degree())),
                None => deg = Some(m.degree()),
                _ => {}
            }
            let entry = map.entry(m).or_insert_with(C::zero_coeff);
            *entry = entry.add_coeff(&c);
        }
        map.retain(|_, c| !c.is_zero_coeff());
        Ok(Polynomial { nvars, degree: deg.unwrap_or(0), terms: map })
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        Self::from_terms(nvars, None, [(m, c)]).expect("single term")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero_coeff)
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::VariableMismatch(self.nvars, o.nvars));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch(self.degree, o.degree));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_into(&mut terms, m.clone(), c);
        }
        Ok(Polynomial { nvars: self.nvars, degree: self.degree, terms })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_coeff())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                add_into(&mut terms, ma.mul(mb), &ca.mul_coeff(cb));
            }
        }
        Ok(Polynomial { nvars: self.nvars, degree: self.degree + o.degree, terms })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero_coeff() {
            return Self::zero(self.nvars, self.degree);
        }
        self.map_coeffs(|a| a.mul_coeff(c))
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero_coeff() {
            return Self::zero(self.nvars, self.degree + m.degree());
        }
        Polynomial {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.mul_coeff(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::monomial(Monomial::one(self.nvars), C::one_coeff());
        for _ in 0..e {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero_coeff())
            .collect();
        Polynomial { nvars: self.nvars, degree: self.degree, terms }
    }

    pub fn try_map_coeffs<D: Coefficient>(
        &self,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<Polynomial<D>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero_coeff() {
                terms.insert(m.clone(), d);
            }
        }
        Ok(Polynomial { nvars: self.nvars, degree: self.degree, terms })
    }

    /// Renders with the given variable names in grevlex-descending term order.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let (neg, mag) = c.display_parts();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = (m.degree() > 0).then(|| m.to_string_with(names));
            match (mag, mono) {
                (Some(a), Some(b)) => s.push_str(&format!("{a}*{b}")),
                (Some(a), None) => s.push_str(&a),
                (None, Some(b)) => s.push_str(&b),
                (None, None) => s.push('1'),
            }
        }
        s
    }

    pub fn default_names(&self) -> Vec<String> {
        default_names(self.nvars)
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, C)> {
        self.terms.pop_last()
    }

    pub(crate) fn push_term(&mut self, m: Monomial, c: C) {
        add_into(&mut self.terms, m, &c);
    }

    /// `self -= c * m * g`, in place.
    pub(crate) fn sub_mul_term_assign(&mut self, m: &Monomial, c: &C, g: &Self) {
        let nc = c.neg_coeff();
        for (gm, gc) in &g.terms {
            add_into(&mut self.terms, gm.mul(m), &gc.mul_coeff(&nc));
        }
    }
}

fn add_into<C: Coefficient>(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: &C) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero_coeff() {
                v.insert(c.clone());
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get().add_coeff(c);
            if s.is_zero_coeff() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&self.default_names()))
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[deg {}]({})", self.degree, self)
    }
}

impl Poly {
    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn to_moving(&self) -> MovingPoly {
        self.map_coeffs(|c| RationalFunction::constant(c.clone()))
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Poly {
        let n = coeffs.len();
        Poly::from_terms(
            n,
            Some(1),
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(i, n), c.clone())),
        )
        .expect("linear form")
    }

    pub fn var(i: usize, nvars: usize) -> Poly {
        Poly::monomial(Monomial::var(i, nvars), <Rational as One>::one())
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps()
                    .iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (e, xi)| acc * crate::rational::pow(xi, *e as u64))
            })
            .sum()
    }
}

impl MovingPoly {
    /// Constant-coefficient view, if no coefficient depends on `z`.
    pub fn as_constant(&self) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.as_constant()?);
        }
        Some(Polynomial { nvars: self.nvars, degree: self.degree, terms })
    }

    pub fn is_moving(&self) -> bool {
        self.terms.values().any(|c| !c.is_constant())
    }

    pub fn has_pole_at(&self, z: &Rational) -> bool {
        self.terms.values().any(|c| c.is_pole(z))
    }

    /// Coefficients cleared of denominators and common polynomial content:
    /// the reduced representation of the moving hypersurface.
    pub fn reduced_representation(&self) -> Polynomial<UniPoly> {
        let mut l = UniPoly::one();
        for c in self.terms.values() {
            let g = l.gcd(c.den());
            l = (&l * c.den()).div_rem(&g).0;
        }
        let cleared: Vec<(Monomial, UniPoly)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), (&l * c.num()).div_rem(c.den()).0))
            .collect();
        let content = cleared.iter().fold(UniPoly::zero(), |g, (_, p)| g.gcd(p));
        let content = if content.is_zero() { UniPoly::one() } else { content };
        Polynomial {
            nvars: self.nvars,
            degree: self.degree,
            terms: cleared.into_iter().map(|(m, p)| (m, p.div_rem(&content).0)).collect(),
        }
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Scale,
}

/// Second operand of [`poly_arith`].
#[derive(Clone, Debug)]
pub enum Operand<'a> {
    Poly(&'a Poly),
    Scalar(&'a Rational),
}

pub fn poly_arith(op: ArithOp, a: &Poly, b: Operand<'_>) -> Result<Poly> {
    match (op, b) {
        (ArithOp::Add, Operand::Poly(b)) => a.add(b),
        (ArithOp::Mul, Operand::Poly(b)) => a.mul(b),
        (ArithOp::Scale, Operand::Scalar(c)) => Ok(a.scale(c)),
        (op, _) => Err(Error::Invalid(format!("operand kind does not match {op:?}"))),
    }
}

/// Specializes a moving hypersurface at `z = z0`.
pub fn evaluate_moving(q: &MovingPoly, z0: &Rational) -> Result<Poly> {
    q.try_map_coeffs(|c| c.eval(z0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_fixed, parse_poly};
    use crate::rational::int;
    use proptest::prelude::*;

    fn names(n: usize) -> Vec<String> {
        default_names(n)
    }

    fn p(s: &str, n: usize) -> Poly {
        parse_fixed(s, &names(n)).unwrap()
    }

    #[test]
    fn arithmetic_catalog() {
        let a = p("x0 + x1", 2);
        let b = p("x0 - x1", 2);
        assert_eq!(poly_arith(ArithOp::Mul, &a, Operand::Poly(&b)).unwrap(), p("x0^2 - x1^2", 2));

        let sq = p("x0^2", 2);
        let z = poly_arith(ArithOp::Add, &sq, Operand::Poly(&sq.neg())).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), 2);

        let c = p("x0*x2 - x1^2", 3);
        assert_eq!(
            poly_arith(ArithOp::Scale, &c, Operand::Scalar(&int(2))).unwrap(),
            p("2*x0*x2 - 2*x1^2", 3)
        );
        assert!(matches!(
            poly_arith(ArithOp::Add, &a, Operand::Poly(&sq)),
            Err(Error::DegreeMismatch(1, 2))
        ));
    }

    #[test]
    fn evaluate_moving_catalog() {
        let q = parse_poly("(z/(z-1))*x0 + x1", &names(2)).unwrap();
        assert_eq!(evaluate_moving(&q, &int(2)).unwrap(), p("2*x0 + x1", 2));
        assert!(matches!(evaluate_moving(&q, &int(1)), Err(Error::PoleAtSample { .. })));
        assert_eq!(evaluate_moving(&q, &int(0)).unwrap(), p("x1", 2));
    }

    #[test]
    fn reduced_representation_clears_denominators() {
        let q = parse_poly("(z/(z-1))*x0 + (1/(z-1))*x1", &names(2)).unwrap();
        let r = q.reduced_representation();
        assert_eq!(r.coeff(&Monomial::var(0, 2)), UniPoly::z());
        assert_eq!(r.coeff(&Monomial::var(1, 2)), UniPoly::one());
    }

    fn small_poly(n: usize, d: u32) -> impl Strategy<Value = Poly> {
        let monos = Monomial::all_of_degree(n, d);
        let k = monos.len();
        proptest::collection::vec((0..k, -5i64..=5, 1i64..=3), 0..5).prop_map(move |ts| {
            Poly::from_terms(
                n,
                Some(d),
                ts.into_iter().map(|(i, a, b)| (monos[i].clone(), crate::rational::rat(a, b))),
            )
            .unwrap()
        })
    }

    fn canonical(p: &Poly) -> bool {
        p.terms().iter().all(|(m, c)| !c.is_zero() && m.degree() == p.degree())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(a in small_poly(3, 2), b in small_poly(3, 2), c in small_poly(3, 2)) {
            let l = a.add(&b).unwrap().add(&c).unwrap();
            let r = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(&l, &r);
            let d1 = a.mul(&b.add(&c).unwrap()).unwrap();
            let d2 = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(&d1, &d2);
            prop_assert!(canonical(&l) && canonical(&d1));
        }

        #[test]
        fn print_parse_round_trip(a in small_poly(3, 3)) {
            let text = a.to_string();
            let back = parse_fixed(&text, &names(3)).unwrap();
            if a.is_zero() {
                prop_assert!(back.is_zero());
            } else {
                prop_assert_eq!(back, a);
            }
        }
    }
}
