//! Rank of the coderivative of the pullback map next to its combinatorial bound.
use pullback::pushforward::{coderivative_rank, portrait_of_map};
use pullback::ratfield::{parse_field, parse_point, parse_ratfunc, Field, ProjPoint};

fn points(list: &[&str], k: &Field) -> Vec<ProjPoint> {
    list.iter().map(|s| parse_point(s, k).unwrap()).collect()
}

fn main() {
    let k = parse_field("w: w^2+w+1; c: c^3-2").unwrap();
    let g = parse_ratfunc("(-1*z*(z^3+2))/(2*z^3+1)", &k, "z").unwrap();
    let a = points(&["-c", "-c*w", "-c*w^2", "0"], &k);
    let b = points(&["-1", "-w", "-w^2", "0"], &k);
    let (rank, m) = coderivative_rank(&g, &a, &b).unwrap();
    println!("quartic example: rank {rank} ({}x{} matrix)", m.entries.len(), m.entries.first().map_or(0, |r| r.len()));
    let named = |pts: &[ProjPoint], prefix: &str| {
        pts.iter().enumerate().map(|(i, p)| (format!("{prefix}{i}"), p.clone())).collect::<Vec<_>>()
    };
    let p = portrait_of_map(&g, &named(&a, "a"), &named(&b, "b"), false).unwrap();
    println!("combinatorial bound {}", p.rank_lower_bound());
}
