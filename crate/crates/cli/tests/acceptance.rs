use std::process::ExitCode;

use spiderweb_cli::acceptance::run_all;

fn main() -> ExitCode {
    let results = run_all(None);
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!("acceptance: {} of {} criteria passed", results.len() - failed.len(), results.len());
    if results.len() == 11 && failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
