//! Acceptance suite: runs every criterion, prints one line per criterion and
//! fails when any criterion fails or overruns its time limit.

use std::process::ExitCode;

use onerel::suite::run_suite;

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temporary directory");
    let reports = match run_suite(dir.path()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance suite could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("\nrunning {} acceptance criteria", reports.len());
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.ok()).count();
    println!("\nacceptance result: {} passed; {failed} failed\n", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
