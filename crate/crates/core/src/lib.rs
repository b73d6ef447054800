//! Exact algebra and numerical Nevanlinna-theory checks for families of
//! moving hypersurfaces.

pub mod error;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod monomial_ideal;
pub mod nevanlinna;
pub mod parse;
pub mod poly;
pub mod position;
pub mod ratfun;
pub mod rational;
pub mod replace;
pub mod univariate;
pub mod variety;
pub mod weights;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use poly::{MovingPoly, Poly};
pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use univariate::UniPoly;
pub use variety::{Ideal, ProjDim};
