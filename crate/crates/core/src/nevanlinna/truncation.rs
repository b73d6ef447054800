//! The integer bound `⌊(1+ε)^{⌊q / log²(1+ε)⌋ + 1}⌋`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{pow, to_f64, Rational};

/// Rational bounds `lo ≤ ln(1+ε) ≤ hi` from the series
/// `ln x = 2 Σ y^{2k+1}/(2k+1)` with `y = (x−1)/(x+1)`.
pub fn ln1p_bounds(eps: &Rational, terms: usize) -> (Rational, Rational) {
    let two = Rational::from_integer(2.into());
    let y = eps / (&two + eps);
    let y2 = &y * &y;
    let mut power = y.clone();
    let mut sum = Rational::zero();
    for k in 0..terms {
        sum += &power / Rational::from_integer((2 * k + 1).into());
        power *= &y2;
    }
    let lo = &two * &sum;
    // Tail ≤ 2 y^{2K+1} / ((2K+1)(1 − y²)).
    let tail = &two * &power / (Rational::from_integer((2 * terms + 1).into()) * (Rational::one() - &y2));
    let hi = &lo + tail;
    (lo, hi)
}

fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

const MAX_EXPONENT: u64 = 1_000_000;

pub fn truncation_bound(q: u64, eps: &Rational) -> Result<BigInt> {
    if q == 0 {
        return Err(Error::Invalid("q must be at least 1".into()));
    }
    if *eps <= Rational::zero() || *eps >= Rational::one() {
        return Err(Error::Invalid("epsilon must lie in (0, 1)".into()));
    }
    let qr = Rational::from_integer(q.into());
    let mut terms = 8;
    let k = loop {
        let (lo, hi) = ln1p_bounds(eps, terms);
        let k_lo = floor(&(&qr / (&hi * &hi)));
        let k_hi = floor(&(&qr / (&lo * &lo)));
        if k_lo == k_hi {
            break k_lo;
        }
        if terms > 400 {
            return Err(Error::Inconsistent("could not separate the exponent from an integer".into()));
        }
        terms *= 2;
    };
    let e = k.to_u64().filter(|e| *e < MAX_EXPONENT).ok_or_else(|| {
        Error::Invalid(format!("exponent {k} is too large to evaluate exactly"))
    })? + 1;
    let value = floor(&pow(&(Rational::one() + eps), e));

    // Cross-check against double precision.
    let l = to_f64(eps).ln_1p();
    let approx_e = (q as f64 / (l * l)).floor() + 1.0;
    let approx_log = approx_e * l;
    let got_log = value.to_f64().map_or(f64::INFINITY, f64::ln);
    if (approx_e - e as f64).abs() > 1.0 || (approx_log - got_log).abs() > 1e-6 * approx_log.max(1.0) + l {
        return Err(Error::Inconsistent("exact and floating evaluations disagree".into()));
    }
    Ok(value)
}
