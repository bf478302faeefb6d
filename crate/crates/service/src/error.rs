use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

use arglayer_core::{Error, ParseError};

/// Body of every non-2xx response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
            line: None,
            column: None,
        }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    pub fn gone(id: &str) -> Self {
        Self::new(
            StatusCode::GONE,
            "session_expired",
            format!("framework `{id}` was evicted or expired"),
        )
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl From<ParseError> for ApiError {
    fn from(e: ParseError) -> Self {
        let (status, code) = if e.is_too_large() {
            (StatusCode::PAYLOAD_TOO_LARGE, "too_large")
        } else {
            (StatusCode::BAD_REQUEST, "parse_error")
        };
        ApiError {
            status,
            code,
            message: e.to_string(),
            line: e.line,
            column: e.column,
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::IndexOutOfRange { .. } => {
                Self::new(StatusCode::NOT_FOUND, "no_such_solution", e.to_string())
            }
            Error::TargetNotStable(_) => {
                Self::new(StatusCode::BAD_REQUEST, "not_stable", e.to_string())
            }
            Error::Framework(_) => {
                Self::new(StatusCode::BAD_REQUEST, "unknown_attack", e.to_string())
            }
            Error::Cancelled => {
                Self::new(StatusCode::SERVICE_UNAVAILABLE, "cancelled", e.to_string())
            }
            other => Self::internal(other.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}
