//! One line per acceptance criterion; exits with status 1 if any fails.

use std::process::ExitCode;

use airyband::verify::{run_claims, VerifyOptions};

fn main() -> ExitCode {
    let results = match run_claims(&VerifyOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: could not run the claim suite: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failed = 0;
    for r in &results {
        let tag = if r.passed() { "PASS" } else { "FAIL" };
        if !r.passed() {
            failed += 1;
        }
        println!(
            "[{tag}] criterion {:>2} {:<22} lhs = {:.6e} rhs = {:.3e} ({:.2} s): {}",
            r.criterion, r.claim_id, r.lhs, r.rhs, r.seconds, r.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
