//! File formats, reports, parallel search and golden fixtures for the
//! `sumlabel` command-line tool.

pub mod document;
pub mod fixtures;
pub mod report;
pub mod runner;
