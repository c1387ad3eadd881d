use thiserror::Error;

/// Errors raised by the geometric pipelines.
///
/// Indices carried by variants are 1-based, matching how angle lists are
/// written on the command line.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("angle {index} is outside the open interval (0, pi)")]
    AngleOutOfRange { index: usize },

    #[error("angles sum to {actual_over_pi} pi, expected 2 pi")]
    SumNotTwoPi { actual_over_pi: f64 },

    #[error("at least 3 angles are required, got {len}")]
    TooFewAngles { len: usize },

    #[error("slopes {index} and {next} describe the same line")]
    DegenerateConsecutive { index: usize, next: usize },

    #[error("unwrapped normal directions turn by {total_over_pi} pi instead of 2 pi")]
    UnwrapNotTwoPi { total_over_pi: f64 },

    #[error("length mismatch: expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("polygon is not convex: edge {index} has non-positive length")]
    NotConvex { index: usize },

    #[error("origin is not interior: height {index} is non-positive")]
    OriginNotInterior { index: usize },

    #[error("matrix is not symmetric within tolerance (asymmetry {asymmetry})")]
    NotSymmetric { asymmetry: f64 },

    #[error("operation requires n = {expected}, got n = {actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("dimension n = {n} is too small; n >= 2 is required")]
    DimensionTooSmall { n: usize },

    #[error("explicit gluing graph for n = {n} is too large to enumerate")]
    GraphTooLarge { n: usize },

    #[error("two of the four line directions coincide")]
    RepeatedDirection,

    #[error("matrix is not the Gram matrix of a Napier cycle: {reason}")]
    NotNapier { reason: String },

    #[error("no seed produced a consistent angle list")]
    NoSolutionForSeed,

    #[error("angle triple sums to {sum_over_pi} pi; a sum below pi is required")]
    TripleSumNotBelowPi { sum_over_pi: f64 },

    #[error("dihedral ratio {ratio} exceeds 1 for a triple below pi")]
    RatioOutOfRange { ratio: f64 },

    #[error("closed-form cone angle disagrees with the dihedral sum by {delta}")]
    ClosedFormMismatch { delta: f64 },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
