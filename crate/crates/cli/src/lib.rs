//! Expression language, commands and survey harness for the `lexdepth`
//! binary.

pub mod app;
pub mod cache;
pub mod eval;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod survey;
pub mod verify;

/// Process exit statuses. No other codes are ever returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitCode {
    Ok = 0,
    Usage = 1,
    /// Some result was inconclusive and `--strict` was given.
    Inconclusive = 2,
    /// A claimed identity failed or two independent routes disagreed.
    Violation = 3,
    Io = 4,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}
