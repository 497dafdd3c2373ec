//! The small input language: one ring, named ideals and matrices, commands.

mod report;
mod run;
mod syntax;

pub use report::{Report, Status};
pub use run::{run, RunOptions, Runner};
pub use syntax::{parse_script, Arg, Call, RingDecl, Script, Shape, Stmt, Value, COMMANDS, IDEAL_VALUED};

/// Parses and runs `text`; the exit code is that of the last report.
pub fn run_text(text: &str, opts: &RunOptions) -> (Vec<Report>, i32) {
    let reports = match parse_script(text) {
        Ok(s) => run(&s, opts),
        Err(e) => vec![Report::failure(None, &e)],
    };
    let code = reports.last().map_or(0, |r| r.status.exit_code());
    (reports, code)
}
