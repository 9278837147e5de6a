//! Local pushforward of a Laurent series under z -> z^m.
use std::collections::BTreeMap;

use pullback::pushforward::laurent_local_pushforward;
use pullback::ratfield::{Elem, Field};

fn main() {
    let q = Field::rationals();
    let a: BTreeMap<i64, Elem> = (-1..=6).map(|k| (k, q.from_int(k + 2))).collect();
    for m in 2..=3 {
        let b = laurent_local_pushforward(m, &a, 4).unwrap();
        let terms: Vec<String> = b.iter().filter(|(_, c)| !c.is_zero()).map(|(j, c)| format!("{c} w^{j}")).collect();
        println!("m = {m}: {}", terms.join(" + "));
    }
}
