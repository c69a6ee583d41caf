//! File formats, theorem-check harness and command-line support for
//! [`cpvel_core`].

pub mod config;
pub mod corpus;
pub mod format;
pub mod harness;
pub mod scaling;
pub mod svg;
