//! The Farey tessellation and modular patterns.

pub mod farey;
pub mod pattern;
pub mod psl2;

pub use farey::{
    base_triangle, boundary_edges, expand, nesting_sequence, Address, CfDigits, FareyEdge, FareyTriangle,
    NestingSequence, Step, Target,
};
pub use pattern::{crosses, Basic2Report, Certificate, Crossing, CrossingList, GammaObj, Geodesic, Pattern, PatternSpec};
pub use psl2::{Gen, Psl2};
