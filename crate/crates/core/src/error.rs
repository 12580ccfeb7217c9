use thiserror::Error;

/// Errors raised by the series, group and scattering engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },

    #[error("series is not a unit (zero constant term)")]
    NotAUnit,

    #[error("series constant term must be 1, found {found}")]
    ConstantTermNotOne { found: String },

    #[error("series constant term must be 0, found {found}")]
    ConstantTermNotZero { found: String },

    #[error("term x^{x} y^{y} does not lie on the ray ({a},{b})")]
    OffRay { a: i64, b: i64, x: u32, y: u32 },

    #[error("({a},{b}) is not a primitive vector")]
    NotPrimitive { a: i64, b: i64 },

    #[error("({a},{b}) does not lie {region}")]
    OutsideQuadrant {
        a: i64,
        b: i64,
        region: &'static str,
    },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("wall function on ({a},{b}) is known to z^{available}, need z^{required}")]
    InsufficientPrecision {
        a: i64,
        b: i64,
        available: u32,
        required: u32,
    },

    #[error("cannot factorize: {0}")]
    NotFactorizable(String),

    #[error(
        "degree-{degree} residual at x^{x} y^{y} is not of wall form (u: {du}, v: {dv}); \
         composition convention is likely flipped"
    )]
    ResidualNotWallForm {
        degree: u32,
        x: u32,
        y: u32,
        du: String,
        dv: String,
    },

    #[error("ordered product disagrees with the commutator after order {0}")]
    FactorizationIncomplete(u32),

    #[error("Euler characteristic extraction needs l1 = l2 (got l1={l1}, l2={l2})")]
    UnequalMultiplicities { l1: u32, l2: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
