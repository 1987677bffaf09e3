//! A2 webs in a disk and the rewriting engine that evaluates them.

use thiserror::Error;

pub mod builder;
pub mod canon;
pub mod clasp;
pub mod diagram;
pub mod format;
pub mod layered;
pub mod rewrite;

pub use builder::{Dir, Op, Program, TangleBuilder};
pub use canon::{canonical_closed, canonical_form, CanonicalKey};
pub use clasp::{expand_clasp, ClaspTerms};
pub use diagram::{Dart, DartId, Node, NodeId, NodeKind, WebDiagram};
pub use format::{build_web, render_web};
pub use layered::{evaluate_program, evaluate_program_closed};
pub use rewrite::{evaluate_closed, evaluate_open, reduce_to_basis, resolve_crossings, Evaluator, LinComb, WebSum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid web: {0}")]
    Validation(String),
    #[error("diagram contains a clasp box; expand clasps first")]
    ClaspPresent,
    #[error("diagram contains a crossing; resolve crossings first")]
    CrossingPresent,
    #[error("no reducible face found in a non-basis web")]
    StuckDiagram,
    #[error("diagram has a nonempty boundary")]
    NonEmptyBoundary,
    #[error("cannot build tangle: {0}")]
    Build(String),
}
