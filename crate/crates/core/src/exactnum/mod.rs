//! Exact number types and linear algebra.

pub mod lp;
pub mod matrix;
pub mod projective;
pub mod rational;
pub mod surd;

pub use matrix::{barycentric_coords, upsilon, upsilon_punctured, RMatrix};
pub use projective::ProjRational;
pub use rational::Rational;
pub use surd::{surd_cmp, QuadSurd};
