//! Report and plot building blocks behind the `univalence` binary.

pub mod plot;
pub mod report;
