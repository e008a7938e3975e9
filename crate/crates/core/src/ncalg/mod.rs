//! Exact arithmetic in truncated free associative algebras.

pub mod algebra;
pub mod comm;
pub mod context;
pub mod filtration;
pub mod parse;
pub mod poly;
pub mod word;

pub use algebra::{gr_component, Algebra, GrMatrix, GradedPiece, Ideal};
pub use comm::CommPoly;
pub use context::{AlgebraContext, Generator, Generators};
pub use filtration::FiltrationTable;
pub use parse::{parse_comm, parse_expr, parse_nc, Expr};
pub use poly::NcPoly;
pub use word::Word;
