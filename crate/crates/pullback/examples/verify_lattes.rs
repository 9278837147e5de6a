//! Exact checks of the Lattès semiconjugacy for the quartic example.
use pullback::lattes::{fiber_cross_ratio, semiconjugacy_check};

fn main() {
    let r = semiconjugacy_check(5, 1).unwrap();
    for c in &r.checks {
        println!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    println!("fiber cross-ratio {}", fiber_cross_ratio(true).unwrap());
}
