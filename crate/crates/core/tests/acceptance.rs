//! Runs every acceptance criterion with seed 7 and prints one line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lamplighter_core::selftest::{self, run_criterion, SelftestReport, DEFAULT_SEED};

fn budget(id: u8) -> Option<Duration> {
    match id {
        1 | 9 => Some(Duration::from_secs(60)),
        4 | 6 | 11 => Some(Duration::from_secs(120)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let mut outcomes = Vec::new();
    let mut all = true;
    for id in 1..=11 {
        let start = Instant::now();
        let o = run_criterion(id, DEFAULT_SEED);
        let took = start.elapsed();
        let in_time = budget(id).is_none_or(|b| took <= b);
        let pass = o.pass && in_time;
        all &= pass;
        println!(
            "{} {:>2} {} ({:.1} s{})",
            if pass { "PASS" } else { "FAIL" },
            id,
            o.title,
            took.as_secs_f64(),
            if in_time {
                ""
            } else {
                ", over the time budget"
            }
        );
        for d in &o.details {
            println!("        {d}");
        }
        outcomes.push(o);
    }

    let start = Instant::now();
    let first = SelftestReport {
        schema: "lamplighter.selftest/1",
        seed: DEFAULT_SEED,
        outcomes: {
            let mut v = outcomes;
            v.push(run_criterion(12, DEFAULT_SEED));
            v
        },
    }
    .to_text();
    let second = selftest::run(DEFAULT_SEED).to_text();
    let same = first == second;
    all &= same;
    println!(
        "{} 12 determinism ({:.1} s)",
        if same { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    println!(
        "        two selftest reports with seed {DEFAULT_SEED}: {} ({} bytes)",
        if same { "byte-identical" } else { "DIFFERENT" },
        first.len()
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
