//! Error classification and exit codes.

use std::process::ExitCode;

use chainbound::Error;

#[derive(Debug)]
pub enum Failure {
    /// Invalid flags or unreadable input.
    Usage(String),
    /// The library rejected the request.
    Domain(Error),
    /// A computation ran out of budget.
    Budget(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_budget() => Failure::Budget(e),
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Domain(_) => "domain",
            Failure::Budget(_) => "budget",
        }
    }

    /// Machine-readable details, when there are any.
    pub fn details(&self) -> serde_json::Value {
        match self {
            Failure::Budget(Error::Budget(report)) => serde_json::json!(report),
            Failure::Budget(Error::SearchExhausted { limit, best }) => serde_json::json!({
                "limit": limit,
                "best": best.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
            _ => serde_json::Value::Null,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Budget(Error::SearchExhausted { limit, best }) => {
                let best: Vec<String> = best.iter().map(ToString::to_string).collect();
                format!(
                    "search budget of {limit} nodes exhausted; best antichain so far ({}): {}",
                    best.len(),
                    best.join(";")
                )
            }
            Failure::Domain(e) | Failure::Budget(e) => e.to_string(),
        }
    }
}
