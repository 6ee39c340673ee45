use thiserror::Error;

/// Errors raised while turning a grammar specification into a [`ChartModel`](crate::ChartModel).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdapterError {
    #[error("malformed spec: {0}")]
    MalformedSpec(String),
    #[error("unsupported mark `{0}`")]
    UnsupportedMark(String),
    #[error("unsupported series type `{0}`")]
    UnsupportedSeriesType(String),
    #[error("unsupported trace type `{0}`")]
    UnsupportedTraceType(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremaError {
    #[error("cannot compute extrema of an empty series")]
    EmptySeries,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SvgError {
    #[error("malformed svg: {0}")]
    MalformedSvg(String),
    #[error("svg root has neither width/height nor a viewBox")]
    MissingDimensions,
    #[error("invalid selector `{selector}`: {reason}")]
    InvalidSelector { selector: String, reason: String },
    #[error("cannot measure <{0}> element")]
    UnsupportedElement(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OnboardingError {
    #[error("unknown stage `{0}`")]
    UnknownStage(String),
    #[error("message text is empty")]
    EmptyText,
    #[error("invalid template catalog: {0}")]
    InvalidCatalog(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BundleError {
    #[error("invalid bundle json: {0}")]
    Json(String),
    #[error("schema version mismatch: expected `{expected}`, found `{found}`")]
    SchemaVersionMismatch { expected: String, found: String },
    #[error("message `{message_id}` references missing stage `{stage_id}`")]
    DanglingStageRef { message_id: String, stage_id: String },
    #[error("bundle invariant violated: {0}")]
    Invariant(String),
}
