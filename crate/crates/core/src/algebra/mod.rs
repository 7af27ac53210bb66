//! Exact integer, rational, polynomial and series arithmetic.

pub mod int;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use parse::{parse_poly, parse_ratfunc};
pub use poly::PolyZ;
pub use ratfunc::RatFunc;
pub use series::{series_expand, Point, Series};
