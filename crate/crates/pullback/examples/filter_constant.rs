//! Runs the combinatorial criteria for a constant pullback map.
use pullback::dynamics::{constant_pullback_filter, FilterOptions};
use pullback::portrait::Portrait;

fn main() {
    for name in ["quartic_lattes.json", "z2_plus_i.json"] {
        let text = std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let p = Portrait::from_json(&text).unwrap();
        let r = constant_pullback_filter(&p, FilterOptions::default()).unwrap();
        println!("{name}: {:?}", r.verdict);
        for b in r.blocking() {
            println!("  {} ({}): {}", b.filter, b.citation, b.detail);
        }
    }
}
