//! Verification harness: sweeps, reports and the aggregate self-test
//! behind the `eulersum` binary.

pub mod config;
pub mod grid;
pub mod report;
pub mod selftest;
