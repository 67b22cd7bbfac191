//! Crate-wide error type with the three failure classes surfaced by the CLI:
//! malformed input, semantically invalid input, and internal invariant breaches.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Reproduction data attached to internal failures of the coloring pipeline.
///
/// Holds enough serialized state to re-run the failing instance offline: the
/// graph, the list assignment, and the stage log accumulated up to the point
/// of failure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiagnosticsBundle {
    pub graph_text: String,
    pub lists_text: String,
    pub stage_log: Vec<String>,
}

impl DiagnosticsBundle {
    /// Writes the bundle under `dir` in a subdirectory named after a hash
    /// of the instance, so identical failures land in the same place.
    /// Returns the subdirectory path.
    pub fn persist(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let mut hasher = Sha256::new();
        hasher.update(self.graph_text.as_bytes());
        hasher.update(self.lists_text.as_bytes());
        let digest = hasher.finalize();
        let mut tag = String::with_capacity(12);
        for byte in &digest[..6] {
            tag.push_str(&format!("{byte:02x}"));
        }
        let target = dir.join(format!("starlit-{tag}"));
        std::fs::create_dir_all(&target)?;
        std::fs::write(target.join("graph.txt"), &self.graph_text)?;
        std::fs::write(target.join("lists.txt"), &self.lists_text)?;
        std::fs::write(target.join("stages.log"), self.stage_log.join("\n"))?;
        Ok(target)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally well-formed input that violates a precondition
    /// (non-subcubic graph, short list, bad parameter, ...).
    #[error("input error: {0}")]
    Input(String),

    /// Malformed text input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A pipeline invariant failed; indicates a bug, not bad input.
    #[error("internal invariant failure: {message}")]
    Internal {
        message: String,
        bundle: Option<Box<DiagnosticsBundle>>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn internal(message: impl Into<String>) -> Self {
        Error::Internal {
            message: message.into(),
            bundle: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
