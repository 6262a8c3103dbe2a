//! Reproduces the worked example: closed forms for block norms and the two
//! block asymptotic models they produce, checked against direct computation.

use barrier_models::section6::{verify_section6, Section6Config};

fn main() -> barrier_models::Result<()> {
    let report = verify_section6(&Section6Config::default())?;
    for c in &report.checks {
        println!("{:<28} {}", c.name, if c.passed { "pass" } else { "FAIL" });
    }
    println!("all passed: {}", report.all_passed);
    Ok(())
}
