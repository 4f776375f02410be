//! Command-line front end for `qac-core`: JSON certificates, DOT export and
//! multi-threaded search drivers.

pub mod commands;
pub mod dot;
pub mod drivers;
pub mod json;
