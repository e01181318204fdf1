use thiserror::Error;

use crate::forms::Family;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("m = {0} is not square-free")]
    NotSquareFree(i64),
    #[error("m = {0} must be a positive integer")]
    NonPositive(i64),
    #[error("elements belong to different rings (m = {0} and m = {1})")]
    RingMismatch(i64, i64),
    #[error("t = {t} gives a reducible {family} form")]
    ReducibleParameter { family: Family, t: i64 },
    #[error("dual parameter t' = {t} gives a reducible {family} form")]
    DualParameterReducible { family: Family, t: i64 },
    #[error("root isolation hit the precision cap of 2^-{0}")]
    PrecisionExhausted(u32),
    #[error("root enclosures touch or overlap; refine before computing gaps")]
    IndistinguishableRoots,
    #[error("case {case} needs |F(u,v)| <= {rhs}, which is neither covered by a cited lemma nor searched")]
    UnresolvedCase { case: String, rhs: u64 },
    #[error("ray ({x2}, {y2}) gives a form value that is bounded identically")]
    DegenerateRay { x2: i64, y2: i64 },
    #[error("certified root gaps for t = {t} (A >= {a_lower}, B >= {b_lower}) do not dominate the preset values")]
    PresetNotApplicable { t: i64, a_lower: String, b_lower: String },
    #[error("arithmetic overflow while evaluating in Z_M")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
