//! Command-line front end for `tilepump-core`: the line-based text formats
//! (shapes, tile systems, assemblies, curve files), deterministic SVG
//! rendering, and the `tilepump` binary's subcommands.
//!
//! The parsing and rendering layers are exposed as [`formats`] and [`svg`] so
//! other tooling can consume the same files; [`run`] is the whole CLI as a
//! function from argv to exit code.

pub mod formats;
pub mod svg;

mod commands;

pub use commands::run;
