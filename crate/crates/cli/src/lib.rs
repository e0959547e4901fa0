//! Front end for the fair-simulation checkers: text formats, reports,
//! command implementations and the random suite.

pub mod commands;
pub mod format;
pub mod report;
pub mod suite;
