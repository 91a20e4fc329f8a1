//! Expression language, verification suites and reports for `ncworlds`.

pub mod eval;
pub mod expr;
pub mod parser;
pub mod report;
pub mod suites;

pub use expr::Expr;
pub use parser::{parse, ParseError};
pub use report::SuiteReport;
pub use suites::{run_suite, Options, Suite};
