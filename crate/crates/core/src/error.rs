use num::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("offset difference {0} is not an integer number of grid steps; rescale first")]
    GridMismatch(BigRational),

    #[error("series is not invertible: leading coefficient (at q^{0}) is zero")]
    NonInvertible(BigRational),

    #[error("exponent {exponent} outside represented range [{low}, {high}]")]
    ExponentOutOfRange {
        exponent: BigRational,
        low: BigRational,
        high: BigRational,
    },

    #[error("member {0} out of range 1..={1}")]
    MemberOutOfRange(i64, u32),

    #[error("set is not symmetric mod {n}: member {member} has no partner {partner}")]
    SymmetryViolation { n: u32, member: u32, partner: u32 },

    #[error("residue {0} = n contributes the eta factor, not a theta-quotient factor")]
    ZeroResidueFactor(u32),

    #[error("residue {0} out of range 1..={1}")]
    ResidueOutOfRange(i64, u32),

    #[error("target order {target_order} below 3x basis size {basis_size}")]
    InsufficientOrder { target_order: i64, basis_size: usize
},

    #[error("|SL2(Z/{0})| = {1} exceeds enumeration guard")]
    GroupTooLarge(u32, u64),

    #[error("{0} does not divide {1}")]
    NotADivisor(u32, u32),

    #[error("matrix ({a},{b};{c},{d}) has determinant {det}, expected 1")]
    NotUnimodular { a: i64, b: i64, c: i64, d: i64, det: i64 },

    #[error("Im(tau) = {0} is not positive")]
    NotInUpperHalfPlane(f64),

    #[error("theta denominator magnitude {0:.3e} too close to zero at the sample; resample")]
    NearZeroDenominator(f64),

    #[error("matrix ({a},{b};{c},{d}) qualifies for neither invariance lemma at n = {n}")]
    UnqualifiedMatrix { a: i64, b: i64, c: i64, d: i64, n: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
