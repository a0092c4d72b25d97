//! Library half of the command line tool: versioned file formats, the
//! report type, and the verification suites shared by `verify-all` and
//! the acceptance tests.

pub mod io;
pub mod report;
pub mod suites;
