pub mod demo;
pub mod eval;
pub mod field;
pub mod part;
pub mod warp;
