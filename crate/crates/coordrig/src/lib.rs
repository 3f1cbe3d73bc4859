//! File formats, reports, SVG rendering and the command-line front end for
//! [`coordrig_core`].

pub mod cli;
pub mod format;
pub mod report;
pub mod svg;
