//! Holds the `acceptance` test target; see `tests/acceptance.rs`.
//!
//! It is a separate package so that the suite runs after every other test
//! target of the workspace.
