//! Exact pushforward of a quadratic differential.
use pullback::pushforward::pushforward;
use pullback::ratfield::{parse_field, parse_ratfunc, Field};

fn main() {
    let q = Field::rationals();
    let g = parse_ratfunc("z^2", &q, "z").unwrap();
    let qd = parse_ratfunc("1/((z^2-1)*(z^2-4))", &q, "z").unwrap();
    println!("z^2 pushes {qd} dz^2 to {} dz^2", pushforward(&g, &qd).unwrap());

    let k = parse_field("w: w^2+w+1; c: c^3-2").unwrap();
    let g = parse_ratfunc("(-1*z*(z^3+2))/(2*z^3+1)", &k, "z").unwrap();
    let qd = parse_ratfunc("1/(z*(z^3+2))", &k, "z").unwrap();
    println!("quartic example: {}", pushforward(&g, &qd).unwrap());
}
