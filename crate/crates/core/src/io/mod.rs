//! Text formats: `.kg` documents, DOT export, and the element expression
//! language.

pub mod dot;
pub mod expr;
pub mod format;

pub use dot::{graph_to_dot, lattice_to_dot};
pub use expr::{parse_kp_expr, ExprError};
pub use format::{parse_kgraph, serialize_kgraph, FormatError};
