//! Runs the full check suite and prints one verdict line per criterion.

use std::process::ExitCode;

use slitflow::analysis::{describe, run_checks, CheckContext, Status};

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let ctx = CheckContext::new(0);
    let results = match run_checks(None, &ctx, dir.path(), |r| eprintln!("{}", describe(r))) {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL suite: {e}");
            return ExitCode::FAILURE;
        }
    };

    let mut failed = 0;
    for n in 1..=16u8 {
        match results.iter().find(|r| r.criterion == Some(n)) {
            Some(r) => {
                let verdict = if r.status == Status::Pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                let detail = match (r.headline(), &r.error) {
                    (_, Some(e)) => e.clone(),
                    (Some(i), None) => {
                        format!("{} = {:.6e} ({})", i.label, i.measured, i.tolerance)
                    }
                    (None, None) => String::from("no items"),
                };
                if r.status != Status::Pass {
                    failed += 1;
                }
                println!("{verdict} criterion {n:>2} {}: {detail}", r.name);
            }
            None => {
                failed += 1;
                println!("FAIL criterion {n:>2}: no check registered");
            }
        }
    }

    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap_or_default();
    let rows = summary.lines().count().saturating_sub(1);
    if rows < 10 {
        failed += 1;
        println!("FAIL summary.csv has {rows} rows");
    }
    println!("{} of 16 criteria passed", 16 - failed.min(16));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
