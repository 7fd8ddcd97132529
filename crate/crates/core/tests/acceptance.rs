use std::process::ExitCode;

use monvar::verify::{run_all, Mode, Status};

fn main() -> ExitCode {
    let report = run_all(Mode::Full);
    for c in &report.checks {
        let verdict = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped(budget)",
        };
        println!(
            "criterion {:>2} {verdict}: {} [{:.1} ms] {}",
            c.id, c.name, c.elapsed_ms, c.details
        );
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
