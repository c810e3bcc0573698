//! Ruler-and-compass construction machine.
//!
//! A [`Workspace`] holds named points, lines, circles and arcs. Programs are
//! sequences of primitive instructions plus calls into the macro library;
//! macros expand into primitives, so every figure is reproducible from its
//! trace.

mod constructible;
mod error;
pub mod macros;
mod program;
mod script;
pub mod svg;
mod workspace;

pub use constructible::{is_constructible_ngon, FERMAT_PRIMES};
pub use error::{ConstructError, ProgramError};
pub use macros::{library, Check, MacroDef, MacroReport, Param};
pub use program::{
    run_program, Arg, BinOp, ConstructionProgram, EmitFormat, Expr, Instruction, OutputBinding,
    Predicate, Selector, Statement, StatementKind,
};
pub use workspace::{EmitRecord, Entry, Object, Origin, TraceStep, Workspace};
