pub mod binomial;
pub mod circle;
pub mod error;
pub mod io;
pub mod operators;
pub mod sequence;
pub mod solver;
pub mod stability;
pub mod ztransform;
