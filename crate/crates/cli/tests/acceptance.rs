//! Runs every acceptance check and prints one PASS/FAIL line per criterion.

use std::process::ExitCode;

use scattering_cli::verify;

fn main() -> ExitCode {
    let reports = verify::run(None, None);
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        reports.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
