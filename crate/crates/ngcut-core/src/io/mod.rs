//! File formats, geometric feasibility checking, and pattern rendering.
//!
//! * canonical instance files (`name` / `stock` / `pieces` / piece lines);
//! * OR-Library style multi-problem import with a configurable per-piece
//!   column order;
//! * solution records in a line-oriented key-value form;
//! * ASCII and SVG renders of a cutting pattern.
//!
//! The feasibility checker here is purely geometric — it never looks at the
//! constraint matrices — so it serves as an independent check of the
//! algebraic formulation.

mod canonical;
mod feasibility;
mod ngcut;
mod record;
mod render;

pub use canonical::{parse_canonical, write_canonical};
pub use feasibility::{feasibility_check, FeasibilityReport, Violation};
pub use ngcut::{parse_ngcut, PieceField, PieceFieldOrder};
pub use record::{read_solution, write_solution, SolutionRecord};
pub use render::{placement_glyph, render_ascii, render_svg};

/// Parse failure with a 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}
