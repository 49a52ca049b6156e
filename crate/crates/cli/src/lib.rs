//! Batch front end for the leviflat toolkit: request parsing, command
//! dispatch, the end-to-end hypersurface analysis and report emission.

pub mod commands;
pub mod input;
pub mod pipeline;
pub mod report;
pub mod run;

pub use input::{parse_input, parse_tolerance, AnalysisRequest, Command, InputError, Options, Overrides};
pub use report::{emit_batch, emit_report, Format, Report, Stage, Status, Tier, Verdict};

use leviflat::algebra::poly::roster;
use leviflat::Roster;

use crate::run::Run;

pub(crate) fn input_roster(names: &[String]) -> Roster {
    roster(names)
}

/// Runs one request on its own generator, seeded from its options.
pub fn run_request(req: &AnalysisRequest) -> Report {
    let mut run = Run::new(req);
    let outcome = match req.command {
        Command::Intersect => commands::intersect(&mut run),
        Command::Pencil => commands::pencil(&mut run),
        Command::Segre => commands::segre(&mut run),
        Command::Leviflat => commands::leviflat_cmd(&mut run),
        Command::Invariance => commands::invariance(&mut run),
        Command::Lion => commands::lion(&mut run),
        Command::Analyze => pipeline::analyze(&mut run),
    };
    run.finish(outcome)
}

/// The full pipeline on a real hypersurface request, whatever its command.
pub fn run_analyze(req: &AnalysisRequest) -> Report {
    let mut req = req.clone();
    req.command = Command::Analyze;
    run_request(&req)
}

/// Runs independent requests concurrently; reports keep input order.
pub fn run_batch(reqs: &[AnalysisRequest]) -> Vec<Report> {
    std::thread::scope(|s| {
        let handles: Vec<_> = reqs.iter().map(|r| s.spawn(move || run_request(r))).collect();
        handles.into_iter().map(|h| h.join().expect("request thread panicked")).collect()
    })
}

/// Exit code of a batch: the most severe status wins.
pub fn batch_exit_code(reports: &[Report]) -> i32 {
    reports.iter().map(|r| r.status.exit_code()).max().unwrap_or(0)
}
