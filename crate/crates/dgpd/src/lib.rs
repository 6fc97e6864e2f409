//! File formats, check registry, and report assembly behind the `dgpd`
//! command-line tool. The binary in `main.rs` is argument parsing plus exit
//! codes; everything it does is callable from here.

pub mod checks;
pub mod format;
pub mod report;
