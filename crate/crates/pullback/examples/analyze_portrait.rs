//! Reads a portrait, prints its functional graph and the rank lower bound.
use pullback::dynamics::build_graph;
use pullback::portrait::Portrait;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| format!("{}/fixtures/quartic_lattes.json", env!("CARGO_MANIFEST_DIR")));
    let text = std::fs::read_to_string(&path).expect("readable portrait file");
    let p = Portrait::from_json(&text).expect("valid portrait");
    println!("degree {}, |A| = {}, |B| = {}", p.degree, p.a.len(), p.b.len());
    println!("ell1 = {}, ell2 = {}, rank >= {}", p.ell1(), p.ell2(), p.rank_lower_bound());
    if let Ok(g) = build_graph(&p) {
        for c in g.decompose().components {
            println!("cycle {:?} with {} trees", c.cycle, c.trees.len());
        }
    }
}
