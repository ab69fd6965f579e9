//! Exact rational arithmetic, linear algebra and linear feasibility.

mod fm;
mod hyperplane;
mod linalg;
mod rational;
mod vector;

pub use fm::{feasible, find_point, integer_row, solve, LinearSystem, DEFAULT_ROW_CAP};
pub use hyperplane::Hyperplane;
pub use linalg::{affine_rank, determinant, hyperplane_through, nullspace, rank};
pub use rational::Rational;
pub use vector::{orient_first_positive, primitive_int, RVector};
