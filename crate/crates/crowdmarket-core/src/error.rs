//! Error type shared by every fallible operation in the crate.

use core::fmt;

/// Why an operation on market data could not produce a result.
///
/// Variants carry the first offending coordinate so a caller (for example a
/// file loader) can point at the exact entry that broke an invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum MarketError {
    /// A market with zero participants.
    EmptyMarket,
    /// Two containers that must agree in length do not.
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// A participant index outside `0..n`.
    IndexOutOfBounds { index: usize, len: usize },
    /// NaN or infinity where a finite number is required.
    NonFinite { what: &'static str, index: usize },
    /// A per-participant coefficient outside its admissible range.
    InvalidProfile {
        index: usize,
        field: &'static str,
        value: f64,
    },
    /// A market-level parameter outside its admissible range.
    InvalidParam { field: &'static str, value: f64 },
    /// The tie matrix is not square.
    GraphNotSquare { row: usize, expected: usize, found: usize },
    /// `w[i][j]` and `w[j][i]` differ by more than the symmetry tolerance.
    AsymmetricTie { i: usize, j: usize, delta: f64 },
    /// A negative tie weight.
    NegativeTie { i: usize, j: usize, value: f64 },
    /// A participant tied to itself.
    NonzeroDiagonal { i: usize, value: f64 },
    /// A solver configuration that cannot terminate meaningfully.
    InvalidSolverConfig { what: &'static str },
    /// A scenario configuration field outside its admissible range.
    InvalidConfig { what: &'static str },
    /// The linear system factorization hit a zero pivot.
    Singular {
        factorization: &'static str,
        pivot: usize,
    },
    /// An operation that requires the contraction condition was invoked on an
    /// instance violating it.
    Assumption1Required { max_ratio: f64 },
    /// The limited-information bound requires `c >= E[a] + mu*s`.
    Assumption2Violated { c: f64, required: f64 },
    /// An operation that requires an interior solution met a boundary one.
    InteriorRequired,
    /// Rejection sampling failed to produce an admissible draw.
    ResampleExhausted {
        what: &'static str,
        index: usize,
        attempts: u32,
    },
    /// Brute-force search over a reward grid of this dimension is not offered.
    BruteForceTooLarge { n: usize, max: usize },
    /// A degenerate search grid (empty range or fewer than two steps).
    InvalidGrid { what: &'static str },
}

impl fmt::Display for MarketError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MarketError::*;
        match self {
            EmptyMarket => write!(f, "market must contain at least one participant"),
            LengthMismatch {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected length {expected}, found {found}"),
            IndexOutOfBounds { index, len } => {
                write!(f, "participant index {index} out of bounds for market of {len}")
            }
            NonFinite { what, index } => write!(f, "{what}[{index}] is not finite"),
            InvalidProfile {
                index,
                field,
                value,
            } => write!(f, "profile {index}: {field} = {value} is out of range"),
            InvalidParam { field, value } => {
                write!(f, "market parameter {field} = {value} is out of range")
            }
            GraphNotSquare {
                row,
                expected,
                found,
            } => write!(f, "tie matrix row {row} has {found} entries, expected {expected}"),
            AsymmetricTie { i, j, delta } => write!(
                f,
                "tie weights ({i},{j}) and ({j},{i}) differ by {delta:e}; symmetrize first"
            ),
            NegativeTie { i, j, value } => {
                write!(f, "tie weight ({i},{j}) = {value} is negative")
            }
            NonzeroDiagonal { i, value } => {
                write!(f, "diagonal tie weight ({i},{i}) = {value} must be zero")
            }
            InvalidSolverConfig { what } => write!(f, "solver configuration: {what}"),
            InvalidConfig { what } => write!(f, "scenario configuration: {what}"),
            Singular {
                factorization,
                pivot,
            } => write!(f, "{factorization} factorization failed at pivot {pivot}: system is singular"),
            Assumption1Required { max_ratio } => write!(
                f,
                "operation requires the contraction condition; max tie ratio {max_ratio} >= 1"
            ),
            Assumption2Violated { c, required } => write!(
                f,
                "limited-information bound requires c >= E[a] + mu*s ({c} < {required})"
            ),
            InteriorRequired => write!(f, "operation requires an interior solution"),
            ResampleExhausted {
                what,
                index,
                attempts,
            } => write!(f, "{what}[{index}]: no admissible draw after {attempts} attempts"),
            BruteForceTooLarge { n, max } => write!(
                f,
                "grid search over {n} reward dimensions not offered (max {max})"
            ),
            InvalidGrid { what } => write!(f, "search grid: {what}"),
        }
    }
}

impl core::error::Error for MarketError {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, MarketError>;
