use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not homogeneous (found degrees {0} and {1})")]
    NonHomogeneous(u32, u32),
    #[error("zero denominator in coefficient")]
    ZeroDenominator,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("coefficient `{coeff}` has a pole at z = {at}")]
    PoleAtSample { coeff: String, at: String },
    #[error("polynomial has non-constant coefficients")]
    NotConstant,
    #[error("the variety is empty")]
    EmptyVariety,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("hypersurface `{0}` contains the variety at every sample")]
    ContainsVariety(String),
    #[error("family of {0} hypersurfaces exceeds the subset cap of {1}")]
    SubsetCap(usize, usize),
    #[error("every sample point hit a pole or a vanishing polynomial")]
    NoValidSamples,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension profile never becomes empty")]
    ProfileNotEmpty,
    #[error("retry budget exhausted at step {step} (last dims {last_dims:?})")]
    RetryBudget { step: usize, last_dims: Vec<String> },
    #[error("oracle scale exceeded: {0} monomials (cap {1})")]
    OracleScale(usize, usize),
    #[error("u = {u} must exceed the degree {degree}")]
    SmallU { u: u32, degree: u64 },
    #[error("coordinate set {0:?} meets the variety")]
    CoordinatesMeetVariety(Vec<usize>),
    #[error("quadrature did not converge at r = {0}")]
    NonConvergence(f64),
    #[error("composition with `{0}` vanishes identically")]
    Degenerate(String),
    #[error("winding number {value} at radius {radius} is not close to an integer")]
    Winding { radius: f64, value: f64 },
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("generator `{0}` does not vanish on the curve")]
    CurveNotOnVariety(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Errors that come from exhausting a computational budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::RetryBudget { .. }
                | Error::NonConvergence(_)
                | Error::SubsetCap(..)
                | Error::OracleScale(..)
                | Error::Winding { .. }
                | Error::RootIsolation(_)
        )
    }
}
