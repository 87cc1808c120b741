//! File formats, verification reports and the command-line front end for
//! `ncfourier-core`.

pub mod cli;
pub mod expr;
pub mod formats;
pub mod report;
pub mod verify;
