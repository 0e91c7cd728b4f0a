//! Library half of the `renorm` workbench: the graph-description
//! language, run configuration, the report builders behind each
//! subcommand, and the acceptance suite that `selftest` executes.
//!
//! The binary in `main.rs` is a thin argument-parsing shell over
//! [`commands`]; everything observable is testable from here.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod dsl;

/// The corpus shipped with the workbench, in the graph-description
/// language. Commands fall back to it when no input files are given.
pub const CORPUS_DSL: &str = include_str!("corpus.g");
