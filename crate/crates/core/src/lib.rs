//! Truncated noncommutative thickenings of quiver moduli.
//!
//! * [`ncalg`]: free algebras truncated by tensor degree and by the
//!   commutator filtration, normal forms, two-sided ideals, graded pieces.
//! * [`quiver`]: quivers with relations, NC-valued representations, King
//!   stability for framed representations.
//! * [`charts`]: chart ideals, linear elimination, order-by-order gluing,
//!   cocycle defects, point completions, the first-order thickening.
//! * [`sheaf_bridge`]: the quivers `Q_[p,q]` of graded algebras, θ from a
//!   Hilbert polynomial, representations from graded modules.
//! * [`format`]: the versioned text formats read by the CLI.

pub mod charts;
pub mod error;
pub mod format;
pub mod linalg;
pub mod ncalg;
pub mod quiver;
pub mod rational;
pub mod sheaf_bridge;

pub use error::{Error, Result};
pub use rational::Rat;
