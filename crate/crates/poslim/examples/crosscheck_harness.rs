//! The randomized law harness: seeded instances, covariant and
//! contravariant, checked against the implication theorems. Violations
//! would indicate implementation bugs and print the offending instance.

use poslim::checks::{crosscheck_theorems, CrosscheckParams};

fn main() {
    let params = CrosscheckParams {
        seed: 2024,
        count: 100,
        ..CrosscheckParams::default()
    };
    let report = crosscheck_theorems(&params);
    println!(
        "checked {} covariant and {} contravariant instances",
        report.instances, report.instances
    );
    if report.violations.is_empty() {
        println!("all laws hold");
    } else {
        for v in &report.violations {
            println!("violation at instance {}: {}", v.index, v.law);
        }
    }
}
