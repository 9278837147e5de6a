//! Blow-up of the pushforward near the image of a simple critical point.
use pullback::pushforward::asymptotic_constant;
use pullback::ratfield::{parse_ratfunc, rat, Field};

fn main() {
    let g = parse_ratfunc("z^2", &Field::rationals(), "z").unwrap();
    let u: Vec<_> = (1..=4).map(|i| rat(i, 1)).collect();
    let t = [rat(1, 1_000_000), rat(1, 100_000_000)];
    let r = asymptotic_constant(&g, &rat(0, 1), &u, &t, 256).unwrap();
    println!("closed form {} fitted {:.12} rel err {:.2e}", r.closed, r.fitted.real().to_f64(), r.rel_err);
}
