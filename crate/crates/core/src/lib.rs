pub mod enumerate;
pub mod error;
pub mod exact;
pub mod parallel;
pub mod polytope;
pub mod poset;
pub mod slicer;
pub mod theory;
pub mod verify;

pub use error::{Error, ExactError, Result};
pub use exact::{Hyperplane, LinearSystem, RVector, Rational};
pub use parallel::Parallelism;
pub use polytope::VPolytope;
