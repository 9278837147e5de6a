use proptest::prelude::*;
use pullback::bicritical::{curve_fiber, normal_form_check, BicriticalClass, Case};
use pullback::monodromy::Perm;
use pullback::pushforward::{cauchy_closed_form, cauchy_like_det, pushforward};
use pullback::ratfield::{cross_ratio, parse_field, parse_ratfunc, rat, Elem, Field, Poly, ProjPoint, RatFunc};

fn qw() -> Field {
    parse_field("w: w^2+w+1").unwrap()
}

fn elem_qw(a: i64, b: i64, k: &Field) -> Elem {
    let w = k.gen().unwrap();
    &k.from_int(a) + &(&w * &k.from_int(b))
}

fn poly(k: &Field, c: &[i64]) -> Poly {
    Poly::from_ints(k, c)
}

fn nonconstant_map(k: &Field, num: &[i64], den: &[i64]) -> Option<RatFunc> {
    let den = poly(k, den);
    if den.is_zero() {
        return None;
    }
    let g = RatFunc::new(&poly(k, num), &den).ok()?;
    (g.degree() > 0).then_some(g)
}

fn mobius(k: &Field, m: [i64; 4]) -> Option<RatFunc> {
    if m[0] * m[3] - m[1] * m[2] == 0 {
        return None;
    }
    RatFunc::new(&poly(k, &[m[1], m[0]]), &poly(k, &[m[3], m[2]])).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_in_qw(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9, e in -9i64..9, f in -9i64..9) {
        let k = qw();
        let (x, y, z) = (elem_qw(a, b, &k), elem_qw(c, d, &k), elem_qw(e, f, &k));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), k.one());
        }
    }

    #[test]
    fn cross_ratio_is_mobius_invariant(
        pts in proptest::sample::subsequence((-12i64..12).collect::<Vec<_>>(), 4),
        m in proptest::array::uniform4(-5i64..5),
    ) {
        let q = Field::rationals();
        let Some(h) = mobius(&q, m) else { return Ok(()) };
        let z: Vec<ProjPoint> = pts.iter().map(|&p| ProjPoint::Finite(q.from_int(p))).collect();
        let hz: Vec<ProjPoint> = z.iter().map(|p| h.eval_proj(p)).collect();
        let before = cross_ratio([&z[0], &z[1], &z[2], &z[3]]).unwrap();
        let after = cross_ratio([&hz[0], &hz[1], &hz[2], &hz[3]]).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn ratfunc_display_parses_back(
        num in proptest::collection::vec(-20i64..20, 1..5),
        den in proptest::collection::vec(-20i64..20, 1..4),
        a in -5i64..5,
    ) {
        let k = qw();
        let den = poly(&k, &den);
        prop_assume!(!den.is_zero());
        let r = RatFunc::new(&poly(&k, &num), &den).unwrap().scale(&elem_qw(1, a, &k));
        let back = parse_ratfunc(&r.to_string(), &k, "z").unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn pushforward_is_linear(
        g in (proptest::collection::vec(-4i64..4, 1..4), proptest::collection::vec(-4i64..4, 1..3)),
        r1 in proptest::array::uniform2(-6i64..6),
        r2 in proptest::array::uniform2(-6i64..6),
        c in -3i64..3,
    ) {
        let q = Field::rationals();
        let Some(g) = nonconstant_map(&q, &g.0, &g.1) else { return Ok(()) };
        prop_assume!(r1[0] != r1[1] && r2[0] != r2[1]);
        let q1 = RatFunc::new(&Poly::one(&q), &(&poly(&q, &[-r1[0], 1]) * &poly(&q, &[-r1[1], 1]))).unwrap();
        let q2 = RatFunc::new(&poly(&q, &[1]), &poly(&q, &[-r2[0], 1]).pow(3)).unwrap();
        let sum = &q1.scale(&q.from_int(c)) + &q2;
        let lhs = pushforward(&g, &sum).unwrap();
        let rhs = &pushforward(&g, &q1).unwrap().scale(&q.from_int(c)) + &pushforward(&g, &q2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_is_functorial(
        g in proptest::array::uniform3(-3i64..4),
        h in proptest::array::uniform4(-3i64..4),
        r in proptest::array::uniform2(-5i64..5),
    ) {
        let q = Field::rationals();
        let Some(g) = nonconstant_map(&q, &[g[0], g[1], g[2]], &[1]) else { return Ok(()) };
        let Some(h) = mobius(&q, h) else { return Ok(()) };
        prop_assume!(r[0] != r[1]);
        let qd = RatFunc::new(&Poly::one(&q), &(&poly(&q, &[-r[0], 1]) * &poly(&q, &[-r[1], 1]))).unwrap();
        let direct = pushforward(&g.compose(&h), &qd).unwrap();
        let staged = pushforward(&g, &pushforward(&h, &qd).unwrap()).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn cauchy_closed_form_matches_expansion(vals in proptest::sample::subsequence((-15i64..15).collect::<Vec<_>>(), 8), m in 1usize..4) {
        let q = Field::rationals();
        let w: Vec<Elem> = vals[..m].iter().map(|&v| q.from_int(v)).collect();
        let u: Vec<Elem> = vals[m..m + m + 2].iter().map(|&v| q.from_rational(rat(v, 2))).collect();
        prop_assume!(w.iter().all(|x| !u.contains(x)));
        let r = cauchy_like_det(&w, &u).unwrap();
        prop_assert!(r.agree());
        prop_assert_eq!(r.closed, cauchy_closed_form(&w, &u).unwrap());
    }

    #[test]
    fn permutations_form_a_group(a in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), b in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), c in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let (a, b, c) = (Perm::from_images(a).unwrap(), Perm::from_images(b).unwrap(), Perm::from_images(c).unwrap());
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&Perm::identity(6)), a.clone());
        prop_assert_eq!(a.cycle_type().iter().sum::<usize>(), 6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bicritical_fibers_pass_normal_form_checks(d in 2u32..5, ks in (0u32..4, 0u32..4), case in 0usize..3, tp in -9i64..10) {
        let case = [Case::SplitFixed, Case::TwoCycle, Case::SharedImage][case];
        let Ok(c) = BicriticalClass::new(d, ks.0 % d, ks.1 % d, case) else { return Ok(()) };
        let t = c.field().from_int(tp);
        let Ok(fiber) = curve_fiber(&c, &t) else { return Ok(()) };
        prop_assert!(fiber.len() <= 2);
        for pt in &fiber {
            let r = normal_form_check(pt, &c).unwrap();
            prop_assert!(r.passed(), "{:?}", r);
        }
    }
}
