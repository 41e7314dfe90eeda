//! Runs every acceptance criterion once and prints one verdict line each.
//! Uses its own harness so the lines show up without `--nocapture`.

use std::process::ExitCode;

use trilit::acceptance::{run_all, AcceptanceConfig};

fn main() -> ExitCode {
    // `cargo test -- --list` and filters from libtest are not meaningful here.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let reports = run_all(&AcceptanceConfig::default());
    let mut failed = 0;
    for r in &reports {
        println!("{}", r.line());
        if !(r.passed && r.within_budget()) {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", reports.len() - failed, reports.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
