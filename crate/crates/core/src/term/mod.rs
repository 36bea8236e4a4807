//! Expressions over `0, 1, a, +, -, ·, /, ⁻¹` and integer powers.

mod ast;
mod eval;
mod parse;

pub use ast::Term;
pub use eval::{eval_in, eval_term, Environment};
pub use parse::parse;
