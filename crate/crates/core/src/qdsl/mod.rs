//! The `.qalg` presentation language, module specifiers and report output.

mod ast;
mod lexer;
mod parser;
mod report;
mod spec;

use thiserror::Error;

use crate::error::AlgebraError;

pub use ast::{ArrowDecl, PresentationAst, RelationExpr, Term};
pub use lexer::{tokenize, Pos, Tok, Token};
pub use parser::{build_algebra, load_algebra, parse_presentation};
pub use report::{
    bound_report_json, bound_report_text, emit_report, pd_json, pd_short, pd_table_json, to_json_string, Format,
};
pub use spec::{parse_module_spec, ModuleSpec, SpecError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: expected {expected}, found {found}")]
    Syntax { pos: Pos, expected: String, found: String },
    #[error("{pos}: arrow `{name}` declared twice")]
    DuplicateArrow { pos: Pos, name: String },
    #[error("{pos}: `{what}` given twice")]
    DuplicateStatement { pos: Pos, what: String },
    #[error("{pos}: missing `{what}` statement")]
    Missing { pos: Pos, what: String },
    #[error("{pos}: vertex {vertex} is not declared")]
    UnknownVertex { pos: Pos, vertex: u64 },
    #[error("{pos}: unknown arrow `{name}`")]
    UnknownArrow { pos: Pos, name: String },
    #[error("{pos}: field modulus {value} is not a prime below 2^32")]
    BadModulus { pos: Pos, value: u64 },
    #[error("{pos}: {message}")]
    InvalidValue { pos: Pos, message: String },
    #[error("{pos}: invalid relation: {source}")]
    InvalidRelation { pos: Pos, source: AlgebraError },
    #[error("{pos}: {source}")]
    Compile { pos: Pos, source: AlgebraError },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::DuplicateArrow { pos, .. }
            | ParseError::DuplicateStatement { pos, .. }
            | ParseError::Missing { pos, .. }
            | ParseError::UnknownVertex { pos, .. }
            | ParseError::UnknownArrow { pos, .. }
            | ParseError::BadModulus { pos, .. }
            | ParseError::InvalidValue { pos, .. }
            | ParseError::InvalidRelation { pos, .. }
            | ParseError::Compile { pos, .. } => *pos,
        }
    }
}
