use std::collections::BTreeMap;

use super::PushError;
use crate::portrait::{FiberSlot, Portrait};
use crate::ratfield::{Poly, ProjPoint, RatFunc};

/// Finite critical points of `g` are the roots of `P'Q - PQ'` (poles of
/// order two or more included); returned squarefree.
pub fn critical_points_poly(g: &RatFunc) -> Poly {
    let (p, q) = (g.num(), g.den());
    (&(&p.derivative() * q) - &(p * &q.derivative())).radical()
}

/// Local degree of `g` at infinity.
pub fn local_degree_at_infinity(g: &RatFunc) -> usize {
    let (p, q) = (g.num(), g.den());
    let (dp, dq) = (p.deg(), q.deg());
    if dp != dq {
        return (dp - dq).unsigned_abs() as usize;
    }
    let c = p.lc().unwrap() / q.lc().unwrap();
    let rest = p - &q.scale(&c);
    (dp - rest.deg()) as usize
}

/// Polynomial whose roots are the finite points over `b`, with multiplicity.
fn fiber_poly(g: &RatFunc, b: &ProjPoint) -> Poly {
    match b {
        ProjPoint::Finite(v) => g.num() - &g.den().scale(v),
        ProjPoint::Infinity => g.den().clone(),
    }
}

/// Local degree of `g` at `a`.
fn local_degree(g: &RatFunc, a: &ProjPoint) -> usize {
    match a {
        ProjPoint::Infinity => local_degree_at_infinity(g),
        ProjPoint::Finite(x) => fiber_poly(g, &g.eval_proj(a)).root_multiplicity(x),
    }
}

/// Checks `g(A) ⊆ B` and that every critical value of `g` lies in `B`.
pub fn check_admissible(g: &RatFunc, a: &[ProjPoint], b: &[ProjPoint]) -> Result<(), PushError> {
    if g.degree() == 0 {
        return Err(PushError::ConstantMap);
    }
    for x in a {
        let y = g.eval_proj(x);
        if !b.contains(&y) {
            return Err(PushError::AdmissibilityViolated(format!("g({x}) = {y} is not in B")));
        }
    }
    let r = b.iter().fold(Poly::one(g.field()), |acc, y| &acc * &fiber_poly(g, y));
    if !critical_points_poly(g).divides(&r) {
        return Err(PushError::AdmissibilityViolated("a finite critical point maps outside B".into()));
    }
    if local_degree_at_infinity(g) > 1 && !b.contains(&g.value_at_infinity()) {
        return Err(PushError::AdmissibilityViolated("the critical point at infinity maps outside B".into()));
    }
    Ok(())
}

/// Reads the portrait of an admissible map off its fibers.
///
/// Unlabeled slots come from the squarefree decomposition of each fiber
/// polynomial, so no roots are ever computed.
pub fn portrait_of_map(
    g: &RatFunc,
    a: &[(String, ProjPoint)],
    b: &[(String, ProjPoint)],
    dynamical: bool,
) -> Result<Portrait, PushError> {
    let apts: Vec<ProjPoint> = a.iter().map(|(_, p)| p.clone()).collect();
    let bpts: Vec<ProjPoint> = b.iter().map(|(_, p)| p.clone()).collect();
    check_admissible(g, &apts, &bpts)?;
    let mut fibers = BTreeMap::new();
    for (bname, bpt) in b {
        let mut slots = Vec::new();
        let mut rest = fiber_poly(g, bpt);
        let mut inf_done = false;
        for (aname, apt) in a.iter().filter(|(_, p)| g.eval_proj(p) == *bpt) {
            let m = local_degree(g, apt);
            slots.push(FiberSlot::new(m as u32, Some(aname)));
            match apt {
                ProjPoint::Finite(x) => rest = rest.div_exact(&Poly::linear_root(x).pow(m as u32)),
                ProjPoint::Infinity => inf_done = true,
            }
        }
        for (i, f) in rest.squarefree_decomposition().iter().enumerate() {
            for _ in 0..f.deg().max(0) {
                slots.push(FiberSlot::new(i as u32 + 1, None));
            }
        }
        if !inf_done && g.value_at_infinity() == *bpt {
            slots.push(FiberSlot::new(local_degree_at_infinity(g) as u32, None));
        }
        fibers.insert(bname.clone(), slots);
    }
    let p = Portrait {
        degree: g.degree() as u32,
        a: a.iter().map(|(n, _)| n.clone()).collect(),
        b: b.iter().map(|(n, _)| n.clone()).collect(),
        dynamical,
        fibers,
    };
    Ok(p.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::samples::{quartic_lattes, z2_plus_i};
    use crate::ratfield::{parse_field, parse_point, parse_ratfunc, Field};

    fn named(list: &[(&str, &str)], k: &Field) -> Vec<(String, ProjPoint)> {
        list.iter().map(|(n, s)| (n.to_string(), parse_point(s, k).unwrap())).collect()
    }

    #[test]
    fn quartic_portrait() {
        let k = parse_field("w: w^2+w+1; c: c^3-2").unwrap();
        let g = parse_ratfunc("(-1*z*(z^3+2))/(2*z^3+1)", &k, "z").unwrap();
        let a = named(&[("v1", "-c"), ("v2", "-c*w"), ("v3", "-c*w^2"), ("p", "0")], &k);
        let b = named(&[("v1", "-1"), ("v2", "-w"), ("v3", "-w^2"), ("p", "0")], &k);
        let p = portrait_of_map(&g, &a, &b, true).unwrap();
        assert!(p.validate().valid(), "{:?}", p.validate().failures());
        assert_eq!(p, quartic_lattes().canonical());
    }

    #[test]
    fn z2_plus_i_portrait() {
        let k = parse_field("w^2+1").unwrap();
        let g = parse_ratfunc("z^2+w", &k, "z").unwrap();
        let m = named(&[("i", "w"), ("i-1", "w-1"), ("-i", "-w"), ("inf", "inf")], &k);
        let p = portrait_of_map(&g, &m, &m, true).unwrap();
        assert_eq!(p, z2_plus_i().canonical());
    }

    #[test]
    fn missing_critical_value() {
        let q = Field::rationals();
        let g = parse_ratfunc("z^2-1", &q, "z").unwrap();
        let pts: Vec<ProjPoint> = ["0", "1", "2", "inf"].iter().map(|s| parse_point(s, &q).unwrap()).collect();
        assert!(matches!(check_admissible(&g, &pts[..0], &pts), Err(PushError::AdmissibilityViolated(_))));
        let pts: Vec<ProjPoint> = ["0", "-1", "inf", "2"].iter().map(|s| parse_point(s, &q).unwrap()).collect();
        assert!(matches!(check_admissible(&g, &pts[3..], &pts[..3]), Err(PushError::AdmissibilityViolated(_))));
        assert!(check_admissible(&g, &pts[..3], &pts[..3]).is_ok());
    }

    #[test]
    fn infinity_degree() {
        let q = Field::rationals();
        let r = |s: &str| parse_ratfunc(s, &q, "z").unwrap();
        assert_eq!(local_degree_at_infinity(&r("z^3")), 3);
        assert_eq!(local_degree_at_infinity(&r("1/z^2")), 2);
        assert_eq!(local_degree_at_infinity(&r("(z^2+1)/(z^2+z)")), 1);
        assert_eq!(local_degree_at_infinity(&r("(z^2+1)/z^2")), 2);
    }
}
