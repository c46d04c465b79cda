//! Runs acceptance criteria 1 to 10 and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use green_workbench::catalog::{run_criterion, ALL_CRITERIA};

fn main() {
    let mut failed = Vec::new();
    for id in ALL_CRITERIA {
        let outcome = run_criterion(id, &[]);
        println!("{}", outcome.line());
        for f in outcome.failures.iter().skip(1).take(5) {
            println!("    {f}");
        }
        if !outcome.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
