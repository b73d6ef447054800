//! Monomial ideals and their Hilbert series.

use crate::monomial::Monomial;

/// Ideal generated by monomials, stored as a minimal antichain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Hilbert data of `k[x_0..x_N] / m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub affine_dim: usize,
    /// Normalized leading coefficient of the Hilbert polynomial; 0 when the
    /// quotient is finite-dimensional in total.
    pub degree: u64,
    /// Numerator `K(t)` of the Hilbert series `K(t) / (1 - t)^{N+1}`.
    pub numerator: Vec<i64>,
    nvars: usize,
}

impl HilbertData {
    /// Value of the Hilbert function in degree `u`.
    pub fn hf(&self, u: u32) -> u64 {
        let n = self.nvars as u64;
        let mut total: i128 = 0;
        for (k, c) in self.numerator.iter().enumerate() {
            let k = k as u64;
            if k > u as u64 || *c == 0 {
                continue;
            }
            total += *c as i128 * binomial(u as u64 - k + n - 1, n - 1) as i128;
        }
        u64::try_from(total).expect("Hilbert function is nonnegative")
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut sorted = gens;
        sorted.sort();
        sorted.dedup();
        let mut min: Vec<Monomial> = Vec::new();
        for g in sorted {
            if min.iter().any(|m| m.divides(&g)) {
                continue;
            }
            min.retain(|m| !g.divides(m));
            min.push(g);
        }
        MonomialIdeal { nvars, gens: min }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![] }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Degree-`u` monomials outside the ideal, grevlex descending.
    pub fn standard_monomials(&self, u: u32) -> Vec<Monomial> {
        Monomial::all_of_degree(self.nvars, u).into_iter().filter(|m| !self.contains(m)).collect()
    }

    /// Size of the largest variable set containing no generator's support.
    pub fn affine_dim(&self) -> usize {
        let supports: Vec<u64> = self
            .gens
            .iter()
            .map(|g| g.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for s in 0u64..(1 << self.nvars) {
            let size = s.count_ones() as usize;
            if size > best && supports.iter().all(|g| g & !s != 0) {
                best = size;
            }
        }
        best
    }

    /// Hilbert series numerator via the colon recursion
    /// `K(I + (m)) = K(I) - t^{deg m} K(I : m)`.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        trim(numerator(&self.gens, self.nvars))
    }

    pub fn hilbert_data(&self) -> HilbertData {
        let numerator = self.hilbert_numerator();
        let affine_dim = self.affine_dim();
        let (order, h) = divide_out_one_minus_t(&numerator);
        let degree = if numerator.is_empty() { 0 } else { h.iter().sum::<i64>() };
        if !numerator.is_empty() {
            debug_assert_eq!(self.nvars - order, affine_dim, "pole order vs combinatorial dimension");
        }
        HilbertData {
            affine_dim,
            degree: u64::try_from(degree).expect("positive degree"),
            numerator,
            nvars: self.nvars,
        }
    }
}

/// Hilbert data of a monomial ideal in `num_vars` variables.
pub fn monomial_hilbert_data(m: &MonomialIdeal) -> HilbertData {
    m.hilbert_data()
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] -= c;
    }
}

fn numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.degree() == 0) {
        return vec![];
    }
    let pairwise_coprime =
        gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in gens {
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, g.degree() as usize);
            acc = next;
        }
        return acc;
    }
    let (last, rest) = gens.split_last().expect("nonempty");
    let mut k = numerator(rest, nvars);
    let colon: Vec<Monomial> = rest.iter().map(|g| g.gcd(last).quotient_of(g)).collect();
    let colon = MonomialIdeal::new(nvars, colon);
    let kc = numerator(&colon.gens, nvars);
    poly_sub_shifted(&mut k, &kc, last.degree() as usize);
    k
}

/// Writes `k = (1 - t)^order * h` with `h(1) != 0`.
fn divide_out_one_minus_t(k: &[i64]) -> (usize, Vec<i64>) {
    let mut h = k.to_vec();
    let mut order = 0;
    while !h.is_empty() && h.iter().sum::<i64>() == 0 {
        // Synthetic division by (1 - t): q_i = sum_{j<=i} h_j.
        let mut q = Vec::with_capacity(h.len() - 1);
        let mut acc = 0;
        for c in &h[..h.len() - 1] {
            acc += c;
            q.push(acc);
        }
        h = trim(q);
        order += 1;
    }
    (order, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn catalog() {
        let x1sq = MonomialIdeal::new(3, vec![m(&[0, 2, 0])]);
        let h = x1sq.hilbert_data();
        assert_eq!((h.affine_dim, h.degree), (2, 2));
        for u in 0..8 {
            assert_eq!(h.hf(u), 2 * u as u64 + 1);
        }

        let irrelevant = MonomialIdeal::new(3, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]);
        let h = irrelevant.hilbert_data();
        assert_eq!(h.affine_dim, 0);
        assert_eq!(h.hf(0), 1);
        assert!((1..6).all(|u| h.hf(u) == 0));

        let zero = MonomialIdeal::zero(3);
        let h = zero.hilbert_data();
        assert_eq!((h.affine_dim, h.degree), (3, 1));
        for u in 0..8u64 {
            assert_eq!(h.hf(u as u32), (u + 2) * (u + 1) / 2);
        }
    }

    #[test]
    fn twisted_cubic_initial_ideal() {
        let ii = MonomialIdeal::new(4, vec![m(&[0, 2, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 2, 0])]);
        let h = ii.hilbert_data();
        assert_eq!((h.affine_dim, h.degree), (2, 3));
        for u in 0..8 {
            assert_eq!(h.hf(u), 3 * u as u64 + 1);
        }
    }

    #[test]
    fn minimalization() {
        let ii = MonomialIdeal::new(2, vec![m(&[2, 1]), m(&[1, 0]), m(&[1, 0])]);
        assert_eq!(ii.generators(), &[m(&[1, 0])]);
    }

    #[test]
    fn hilbert_function_matches_enumeration() {
        let cases = vec![
            vec![m(&[1, 1, 0, 0]), m(&[0, 0, 2, 1]), m(&[3, 0, 0, 0])],
            vec![m(&[2, 0, 0, 0]), m(&[1, 1, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 1, 1])],
            vec![m(&[0, 1, 2, 0]), m(&[1, 0, 0, 2])],
        ];
        for gens in cases {
            let ii = MonomialIdeal::new(4, gens);
            let h = ii.hilbert_data();
            for u in 0..=6 {
                assert_eq!(h.hf(u) as usize, ii.standard_monomials(u).len());
            }
        }
    }
}
