//! IO, file formats, CLI command implementations and the experiment harness
//! on top of `oramsey-core`.

pub mod cache;
pub mod commands;
pub mod experiment;
pub mod io;
pub mod parallel;
