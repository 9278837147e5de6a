//! Enumerates cubic portraits and keeps the graphs no criterion blocks.
use pullback::dynamics::{surviving_graphs, FilterOptions};
use pullback::tables::{TableFixture, CUBIC_FIXTURE};

fn main() {
    let spec = TableFixture::parse(CUBIC_FIXTURE).unwrap().spec;
    let graphs = surviving_graphs(&spec, FilterOptions::default()).unwrap();
    println!("{} surviving graphs", graphs.len());
    for g in graphs {
        println!("  {:?}", g.to_json().map);
    }
}
