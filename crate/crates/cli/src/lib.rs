//! Command-line front end for `parrondo-lab`.

pub mod args;
pub mod commands;
pub mod mapfile;
