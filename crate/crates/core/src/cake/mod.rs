//! The cake `[0, 1)`: pieces, piecewise-constant valuations and exact
//! equal-value cutting.

mod density;
mod piece;

pub use density::{equal_split, measure, prefix_cut, Density};
pub use piece::{Interval, Piece};
