//! TOML file formats for rings, models and blow-up scenarios. Rationals are
//! written as `"p/q"` (or `"p"`) strings.

mod model;
mod ring;
mod scenario;

pub use model::{
    emit_model, model_file, parse_model, parse_monomial, GeneratorEntry, ModelFile, Term,
};
pub use ring::{emit_ring, parse_ring, ring_file, NamedClass, ProductLine, RingFile};
pub use scenario::{emit_scenario, parse_scenario, ScenarioFile};

use serde::Serializer;

use crate::linalg::Q;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Syntax {
        line: Option<usize>,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("dimension mismatch in `{field}`: {message}")]
    Dimension { field: String, message: String },
    #[error("invariant `{check}` fails at {counterexample}")]
    Invariant {
        check: String,
        counterexample: String,
    },
}

impl FormatError {
    pub(crate) fn field(field: impl Into<String>, message: impl ToString) -> Self {
        FormatError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub(crate) fn dimension(field: impl Into<String>, message: impl ToString) -> Self {
        FormatError::Dimension {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

pub(crate) fn from_toml<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    toml::from_str(text).map_err(|e| FormatError::Syntax {
        line: e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1),
        message: e.message().to_string(),
    })
}

pub(crate) fn to_toml<T: serde::Serialize>(value: &T) -> String {
    toml::to_string(value).expect("file structs serialize")
}

pub fn q_to_string(q: &Q) -> String {
    q.to_string()
}

pub fn parse_q(field: &str, text: &str) -> Result<Q, FormatError> {
    text.trim()
        .parse::<Q>()
        .map_err(|e| FormatError::field(field, format!("`{text}` is not a rational ({e})")))
}

pub(crate) fn parse_q_vec(field: &str, texts: &[String]) -> Result<Vec<Q>, FormatError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_q(&format!("{field}[{i}]"), t))
        .collect()
}

pub(crate) fn q_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(q_to_string).collect()
}

pub fn ser_q<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q_to_string(q))
}

pub fn ser_q_vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(q_to_string))
}
