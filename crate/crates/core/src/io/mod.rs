//! Text formats: `.cox` files, DOT views and JSON reports.

pub mod cox;
pub mod dot;
pub mod json;

pub use cox::{emit_cox, parse_cox, read_cox};
pub use dot::{emit_dot, DotView};
