//! Cauchy-like determinant by expansion and by its closed form.
use pullback::pushforward::cauchy_like_det;
use pullback::ratfield::Field;

fn main() {
    let q = Field::rationals();
    let u: Vec<_> = (1..=5).map(|i| q.from_int(i)).collect();
    let w: Vec<_> = (1..=3).map(|i| q.from_int(-i)).collect();
    let r = cauchy_like_det(&w, &u).unwrap();
    println!("direct {} closed {} agree {}", r.direct, r.closed, r.agree());
}
