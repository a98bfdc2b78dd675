use thiserror::Error;

use crate::bounds::BoundReport;
use crate::lemmas::LemmaReport;

pub type Result<T> = std::result::Result<T, Error>;

/// Whatever was computed before a budget ran out.
#[derive(Debug, Clone)]
pub enum Partial {
    Lemma(Box<LemmaReport>),
    Bound(Box<BoundReport>),
    None,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty text")]
    EmptyText,
    #[error("symbol code {code} is out of range for an alphabet of size {sigma}")]
    SymbolOutOfRange { code: u8, sigma: usize },
    #[error("text is not a Lyndon word of length at least 2 under the requested order")]
    NotFactorable,
    #[error("position {pos} is outside 1..={len}")]
    BadPosition { pos: usize, len: usize },
    #[error("[{start}..{end}] with period {period} is not a run of the text")]
    NotARun {
        start: usize,
        end: usize,
        period: usize,
    },
    #[error("text is not a square")]
    NotASquare,
    #[error("text is not a Lyndon word under the requested order")]
    NotLyndon,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("budget exceeded: {reason}")]
    BudgetExceeded { reason: String, partial: Partial },
}
