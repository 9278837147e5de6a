//! Reproduces both tables of surviving graphs and reports differences.
use pullback::dynamics::FilterOptions;
use pullback::tables::reproduce_tables;

fn main() {
    for r in reproduce_tables(FilterOptions::default()).unwrap() {
        println!("{}: {} found, {} expected, match {}", r.name, r.found_count, r.expected_count, r.matches);
        for g in &r.only_found {
            println!("  only found {:?}", g.map);
        }
    }
}
