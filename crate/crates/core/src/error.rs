use thiserror::Error;

use crate::catalog::IndecLabel;

#[derive(Debug, Error)]
pub enum Error {
    #[error("n must be at least {min}, got {got}")]
    InvalidN { got: usize, min: usize },

    #[error("bimodules live over different algebras (n = {left} vs n = {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("label {label} is out of range for n = {n}")]
    LabelOutOfRange { label: IndecLabel, n: usize },

    #[error("cannot parse label {input:?}: {reason}")]
    LabelParse { input: String, reason: String },

    #[error("no catalog label matches the given bimodule: {0}")]
    NoMatch(String),

    #[error("{0} is k-split; the shift rule only applies to non-k-split bimodules")]
    KSplitInput(String),

    #[error("the given label is not k-split: {label}")]
    NotKSplit { label: IndecLabel },

    #[error("decomposition strategies disagree: {0}")]
    DecompositionMismatch(String),

    #[error("catalog check failed: {0}")]
    CatalogCheck(String),

    #[error("cell structure check failed: {0}")]
    CellMismatch(String),

    #[error("product table cache does not match this catalog: {0}")]
    StaleCache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
