//! Numerical value distribution for curves `f: C → P^N` whose components
//! are `p(z)·exp(q(z))`.

pub mod counting;
pub mod curve;
pub mod quadrature;
pub mod roots;
pub mod theorems;
pub mod truncation;

pub use counting::{counting_n, zero_count, zero_count_steps, Truncation, ZeroSteps, WINDING_TOLERANCE};
pub use curve::{compose_with_curve, Component, CurveSpec, ExpPoly};
pub use quadrature::{circle_mean, QuadratureConfig};
pub use roots::{roots, Root};
pub use theorems::{
    characteristic_t, fmt_check, geometric_grid, proximity_m, ratfun_characteristic, smt_check, FmtReport,
    FmtRow, NevanlinnaReport, SmtRow, SmtScenario,
};
pub use truncation::truncation_bound;
