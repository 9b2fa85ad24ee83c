//! Front end: expression parsing, reports, and the random-corpus harness.

pub mod ascii;
pub mod corpus;
pub mod parse;
pub mod report;

pub use corpus::{run_corpus, CorpusError, CorpusSummary};
pub use parse::{parse_polynomial, render_polynomial, ParseError};
pub use report::{run_report, Report, ReportOptions};
