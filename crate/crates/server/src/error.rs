use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use serde::Serialize;

use artemus_core::journey::{DisabledReason, JourneyError};

/// An error response: `{"code": ..., "detail": ...}` plus, for a refused
/// choice, the reason the option was disabled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<DisabledReason>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, detail: impl Into<String>) -> Self {
        Self {
            status,
            code,
            detail: detail.into(),
            reason: None,
        }
    }

    pub fn malformed(detail: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "MalformedJson", detail)
    }

    pub fn unknown_graph(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "UnknownDataset", format!("no graph with id `{id}`"))
    }
}

impl From<JourneyError> for ApiError {
    fn from(err: JourneyError) -> Self {
        let status = match &err {
            JourneyError::UnknownEntryPoint(_) => StatusCode::NOT_FOUND,
            JourneyError::UnpublishableGraph(_)
            | JourneyError::GraphMismatch { .. }
            | JourneyError::JourneyConcluded
            | JourneyError::ChoiceNotEnabled { .. } => StatusCode::CONFLICT,
            JourneyError::UnknownChoice(_)
            | JourneyError::IndexOutOfRange { .. }
            | JourneyError::InvalidJourney(_) => StatusCode::BAD_REQUEST,
        };
        let reason = match &err {
            JourneyError::ChoiceNotEnabled { reason, .. } => Some(reason.clone()),
            _ => None,
        };
        Self {
            status,
            code: err.code(),
            detail: err.to_string(),
            reason,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status;
        let mut response = crate::json_body(&self).into_response();
        *response.status_mut() = status;
        response
    }
}
