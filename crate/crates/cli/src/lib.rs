//! Command-line and HTTP front ends for `blockade-core`.

pub mod api;
pub mod ops;
pub mod svg;
