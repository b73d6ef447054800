//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{common_denominator, Rational};

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = common_denominator(r);
            r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination; returns the rank and, for square
/// input, the determinant.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, Option<BigInt>) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1i32;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    let det = (nrows == ncols).then(|| {
        if rank < nrows {
            BigInt::zero()
        } else {
            prev * sign
        }
    });
    (rank, det)
}

/// Exact rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    bareiss(integer_rows(rows)).0
}

/// Exact determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    assert!(rows.iter().all(|r| r.len() == rows.len()), "square matrix required");
    let scale: BigInt = rows.iter().map(common_denominator).product();
    let det = bareiss(integer_rows(rows)).1.expect("square");
    Rational::new(det, scale)
}

/// Incrementally maintained row-echelon basis of a subspace of `Q^n`.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after eliminating every pivot of the basis.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    /// Whether `v` lies outside the current span.
    pub fn is_independent(&self, v: &[Rational]) -> bool {
        self.reduce(v.to_vec()).iter().any(|x| !x.is_zero())
    }

    /// Adds `v`; returns false (and leaves the basis unchanged) if `v` is
    /// already in the span.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let v: Vec<Rational> = v.into_iter().map(|x| x * &inv).collect();
        self.rows.push((p, v));
        true
    }

    /// Inserts the unit vector `e_i` of `Q^dim`.
    pub fn insert_unit(&mut self, dim: usize, i: usize) -> bool {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        self.insert(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(determinant(&a), int(0));
        let b = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(determinant(&b), int(6));
        let c = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]];
        assert_eq!(determinant(&c), rat(1, 10) - rat(1, 12));
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        // Row swap flips the sign.
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn echelon_matches_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        let mut e = EchelonBasis::new();
        let inserted: Vec<bool> = a.iter().map(|r| e.insert(r.clone())).collect();
        assert_eq!(inserted, vec![true, false, true, false]);
        assert_eq!(e.rank(), rank(&a));
    }
}
