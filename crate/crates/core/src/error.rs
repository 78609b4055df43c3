use crate::complexplane::CPoint;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation.
    #[error("domain error in {op}: {reason}")]
    Domain {
        op: &'static str,
        reason: &'static str,
    },
    /// A non-finite value was supplied or produced.
    #[error("non-finite value in {op}")]
    NonFinite { op: &'static str },
    /// Evaluation point too close to the slit (or inside a thickened obstacle).
    #[error("point ({}, {}) is not admissible: distance to obstacle {distance:e}", point.re, point.im)]
    Inadmissible { point: CPoint, distance: f64 },
    /// Two points coincide where the kernel is singular.
    #[error("coincident points in {op}")]
    Coincident { op: &'static str },
    /// A transport step moved a particle onto or across the obstacle.
    #[error("step rejected at t = {t}: particle {index} reached the obstacle")]
    StepRejected { t: f64, index: usize },
    /// Mismatched input lengths.
    #[error("length mismatch in {op}: {left} vs {right}")]
    Length {
        op: &'static str,
        left: usize,
        right: usize,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
