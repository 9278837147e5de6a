//! The curve `y^2 = x^3 + 1`, its map `[-2]`, and the diagram relating it to
//! the Belyi map `h(z) = -z(z-2)^3/(2z-1)^3` and to `g(z) = -z(z^3+2)/(2z^3+1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ratfield::{cross_ratio, parse_ratfunc, CrossRatioError, Elem, Field, Poly, ProjPoint, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LattesError {
    #[error("point is not on y^2 = x^3 + 1")]
    NotOnCurve,
    #[error("closed form of [-2] needs y != 0")]
    TorsionDenominator,
    #[error("translation pole: a = -lambda")]
    PoleAtTorsion,
    #[error("lambda is not a cube root of unity")]
    NotCubeRoot,
    #[error("two fiber values coincide")]
    DegenerateFiber,
    #[error("identity failed: {0}")]
    CheckFailed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum EllipticPoint {
    Affine { x: Elem, y: Elem },
    Infinity,
}

impl EllipticPoint {
    pub fn affine(x: Elem, y: Elem) -> Result<EllipticPoint, LattesError> {
        let one = x.field().one();
        if &y * &y != &x.pow(3) + &one {
            return Err(LattesError::NotOnCurve);
        }
        Ok(EllipticPoint::Affine { x, y })
    }

    pub fn neg(&self) -> EllipticPoint {
        match self {
            EllipticPoint::Affine { x, y } => EllipticPoint::Affine { x: x.clone(), y: -y },
            EllipticPoint::Infinity => EllipticPoint::Infinity,
        }
    }

    pub fn coords(&self) -> Option<(&Elem, &Elem)> {
        match self {
            EllipticPoint::Affine { x, y } => Some((x, y)),
            EllipticPoint::Infinity => None,
        }
    }
}

impl std::fmt::Display for EllipticPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EllipticPoint::Affine { x, y } => write!(f, "({x}, {y})"),
            EllipticPoint::Infinity => f.write_str("O"),
        }
    }
}

/// Chord and tangent law.
pub fn ec_add(p: &EllipticPoint, q: &EllipticPoint) -> EllipticPoint {
    let ((x1, y1), (x2, y2)) = match (p.coords(), q.coords()) {
        (None, _) => return q.clone(),
        (_, None) => return p.clone(),
        (Some(a), Some(b)) => (a, b),
    };
    let slope = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return EllipticPoint::Infinity;
        }
        let f = x1.field();
        (&(x1 * x1) * &f.from_int(3)).checked_div(&(y1 * &f.from_int(2))).unwrap()
    } else {
        (y2 - y1).checked_div(&(x2 - x1)).unwrap()
    };
    let x3 = &(&(&slope * &slope) - x1) - x2;
    let y3 = &(&slope * &(x1 - &x3)) - y1;
    EllipticPoint::Affine { x: x3, y: y3 }
}

/// `[-2]P` by the closed form `(x(x^3-8)/(4(x^3+1)), -(y^4+18y^2-27)/(8y^3))`.
pub fn mul_neg2(p: &EllipticPoint) -> Result<EllipticPoint, LattesError> {
    let (x, y) = p.coords().ok_or(LattesError::TorsionDenominator)?;
    if y.is_zero() {
        return Err(LattesError::TorsionDenominator);
    }
    let f = x.field();
    let x3 = x.pow(3);
    let nx = (x * &(&x3 - &f.from_int(8))).checked_div(&(&(&x3 + &f.one()) * &f.from_int(4))).unwrap();
    let y2 = y * y;
    let ny = -(&(&(&y2 * &y2) + &(&y2 * &f.from_int(18))) - &f.from_int(27)).checked_div(&(&y.pow(3) * &f.from_int(8))).unwrap();
    Ok(EllipticPoint::Affine { x: nx, y: ny })
}

/// `P + (-lambda, 0) = ((b/(a+lambda))^2 - a + lambda, -3 lambda^2 b/(a+lambda)^2)`.
pub fn torsion_translate(p: &EllipticPoint, lambda: &Elem) -> Result<EllipticPoint, LattesError> {
    if !lambda.pow(3).is_one() {
        return Err(LattesError::NotCubeRoot);
    }
    let (a, b) = p.coords().ok_or(LattesError::PoleAtTorsion)?;
    let s = a + lambda;
    if s.is_zero() {
        return Err(LattesError::PoleAtTorsion);
    }
    let r = b.checked_div(&s).unwrap();
    let x = &(&(&r * &r) - a) + lambda;
    let three = a.field().from_int(3);
    let y = -(&(&(&lambda.pow(2) * &three) * b).checked_div(&(&s * &s)).unwrap());
    Ok(EllipticPoint::Affine { x, y })
}

/// `Q(w)` with `w^2 + w + 1 = 0`.
pub fn eisenstein_field() -> Field {
    Field::algebraic(&Poly::from_ints(&Field::rationals(), &[1, 1, 1]), "w").unwrap()
}

/// `Q(w)(a)[b]/(b^2 - a^3 - 1)` and its generic point `(a, b)`.
pub fn generic_point() -> (Field, EllipticPoint) {
    let fa = Field::function(&eisenstein_field(), "a");
    let a = fa.gen().unwrap();
    let m = Poly::new(&fa, vec![-(&a.pow(3) + &fa.one()), fa.zero(), fa.one()]);
    let fb = Field::algebraic(&m, "b").unwrap();
    let b = fb.gen().unwrap();
    let a = fb.embed(&a);
    (fb.clone(), EllipticPoint::Affine { x: a, y: b })
}

/// The four `y`-values over `pi(P)` in the printed order
/// `b, -3b/(a+1)^2, -3w^2 b/(a+w)^2, -3w b/(a+w^2)^2`.
pub fn fiber_y_values(p: &EllipticPoint, w: &Elem) -> Result<[Elem; 4], LattesError> {
    let (a, b) = p.coords().ok_or(LattesError::DegenerateFiber)?;
    let one = a.field().one();
    let mut out = vec![b.clone()];
    for (lam, coef) in [(one.clone(), one.clone()), (w.clone(), w.pow(2)), (w.pow(2), w.clone())] {
        let s = a + &lam;
        if s.is_zero() {
            return Err(LattesError::DegenerateFiber);
        }
        let three = a.field().from_int(3);
        out.push(-(&(&(&coef * &three) * b).checked_div(&(&s * &s)).unwrap()));
    }
    Ok(out.try_into().unwrap())
}

/// Cross-ratio of the fiber `y`-values at `P`; `w` is a primitive cube root of unity.
pub fn fiber_cross_ratio_at(p: &EllipticPoint, w: &Elem) -> Result<Elem, LattesError> {
    let ys = fiber_y_values(p, w)?;
    let pts: Vec<ProjPoint> = ys.into_iter().map(ProjPoint::Finite).collect();
    cross_ratio([&pts[0], &pts[1], &pts[2], &pts[3]]).map_err(|e| match e {
        CrossRatioError::DegenerateTuple => LattesError::DegenerateFiber,
        CrossRatioError::Arith(_) => LattesError::DegenerateFiber,
    })
}

/// The point `(1, sqrt 2)` over `Q(w)(sqrt 2)`.
pub fn sample_point() -> EllipticPoint {
    let k = eisenstein_field();
    let m = Poly::new(&k, vec![k.from_int(-2), k.zero(), k.one()]);
    let f = Field::algebraic(&m, "s").unwrap();
    EllipticPoint::Affine { x: f.one(), y: f.gen().unwrap() }
}

/// Cross-ratio of a generic fiber: at the generic point when `symbolic`, at `(1, sqrt 2)` otherwise.
pub fn fiber_cross_ratio(symbolic: bool) -> Result<Elem, LattesError> {
    let p = if symbolic { generic_point().1 } else { sample_point() };
    let w = p.coords().unwrap().0.field().generator_named("w").unwrap();
    fiber_cross_ratio_at(&p, &w)
}

/// `1/(1 + w)`, which equals `-w`.
pub fn expected_cross_ratio() -> Elem {
    let w = eisenstein_field().gen().unwrap();
    (&w + &w.field().one()).inv().unwrap()
}

/// Values of the cross-ratio over all 24 orderings of the four points.
pub fn cross_ratio_orbit(values: &[Elem; 4]) -> Vec<Elem> {
    let pts: Vec<ProjPoint> = values.iter().cloned().map(ProjPoint::Finite).collect();
    let mut out: Vec<Elem> = Vec::new();
    for perm in crate::monodromy::all_perms(4) {
        let i = perm.images();
        if let Ok(v) = cross_ratio([&pts[i[0]], &pts[i[1]], &pts[i[2]], &pts[i[3]]]) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// `pi(x, y) = (y + 1)/2`.
pub fn projection(p: &EllipticPoint) -> ProjPoint {
    match p.coords() {
        Some((_, y)) => ProjPoint::Finite((y + &y.field().one()).checked_div(&y.field().from_int(2)).unwrap()),
        None => ProjPoint::Infinity,
    }
}

pub fn belyi_h() -> RatFunc {
    parse_ratfunc("-z*(z-2)^3/(2*z-1)^3", &Field::rationals(), "z").unwrap()
}

pub fn example_g(field: &Field) -> RatFunc {
    parse_ratfunc("-z*(z^3+2)/(2*z^3+1)", field, "z").unwrap()
}

/// `mu(z) = (-w z - 1)/(w^2 z + 1)`.
pub fn conjugacy_mu(field: &Field) -> RatFunc {
    let w = field.generator_named("w").expect("field contains w");
    let one = field.one();
    RatFunc::new(&Poly::new(field, vec![-&one, -&w]), &Poly::new(field, vec![one.clone(), w.pow(2)])).unwrap()
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct LattesReport {
    pub checks: Vec<Check>,
}

impl LattesReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }
}

/// `h(pi(P)) = pi([-2]P)` at one point; `None` when `[-2]` has no closed form there.
fn square_commutes(p: &EllipticPoint, h: &RatFunc) -> Option<bool> {
    let q = mul_neg2(p).ok()?;
    let f = p.coords()?.0.field().clone();
    Some(h.embed(&f).eval_proj(&projection(p)) == projection(&q))
}

/// A random point over `Q(w)(sqrt(a^3 + 1))` with small rational `a`.
pub fn random_point(rng: &mut impl Rng) -> EllipticPoint {
    let k = eisenstein_field();
    loop {
        let a = k.from_rational(crate::ratfield::rat(rng.gen_range(-40..=40), rng.gen_range(1..=9)));
        let rhs = &a.pow(3) + &k.one();
        if rhs.is_zero() {
            continue;
        }
        if let Some(b) = rhs.sqrt() {
            return EllipticPoint::Affine { x: a, y: b };
        }
        let f = Field::algebraic(&Poly::new(&k, vec![-rhs, k.zero(), k.one()]), "b").unwrap();
        return EllipticPoint::Affine { x: f.embed(&a), y: f.gen().unwrap() };
    }
}

/// Group law and closed forms at `samples` random points: `[-2]` against
/// `-(P + P)`, translation by each 2-torsion point, associativity, inverses.
pub fn group_law_samples(samples: usize, seed: u64) -> LattesReport {
    let mut r = LattesReport { checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut neg2, mut trans, mut assoc, mut inv) = (0, 0, 0, 0);
    for _ in 0..samples {
        let p = random_point(&mut rng);
        let f = p.coords().unwrap().0.field().clone();
        let w = f.generator_named("w").unwrap();
        let q = mul_neg2(&p).unwrap();
        if q == ec_add(&p.neg(), &p.neg()) {
            neg2 += 1;
        }
        let lams = [f.one(), w.clone(), w.pow(2)];
        if lams.iter().all(|l| {
            let t = EllipticPoint::Affine { x: -l, y: f.zero() };
            torsion_translate(&p, l).ok() == Some(ec_add(&p, &t))
        }) {
            trans += 1;
        }
        let s = torsion_translate(&p, &w).unwrap();
        if ec_add(&ec_add(&p, &q), &s) == ec_add(&p, &ec_add(&q, &s)) {
            assoc += 1;
        }
        if ec_add(&p, &p.neg()) == EllipticPoint::Infinity && ec_add(&p, &EllipticPoint::Infinity) == p {
            inv += 1;
        }
    }
    let n = samples;
    r.push("[-2] closed form = -(P + P)", neg2 == n, format!("{neg2}/{n}"));
    r.push("translation closed form = group law, all lambda", trans == n, format!("{trans}/{n}"));
    r.push("associativity", assoc == n, format!("{assoc}/{n}"));
    r.push("identity and inverses", inv == n, format!("{inv}/{n}"));
    r
}

/// Checks the diagram, the closed forms and the fiber cross-ratio as exact identities.
pub fn semiconjugacy_check(samples: usize, seed: u64) -> Result<LattesReport, LattesError> {
    let mut r = LattesReport { checks: Vec::new() };
    let h = belyi_h();
    let (_, gp) = generic_point();

    let sym = square_commutes(&gp, &h) == Some(true);
    r.push("h o pi = pi o [-2] (generic point)", sym, "over Q(w)(a)[b]/(b^2 - a^3 - 1)".into());

    let closed = mul_neg2(&gp).ok() == Some(ec_add(&gp.neg(), &gp.neg()));
    r.push("[-2] closed form = -(P + P) (generic point)", closed, String::new());

    let k = eisenstein_field();
    let w = k.gen().unwrap();
    let fw = gp.coords().unwrap().0.field().embed(&w);
    let ys = fiber_y_values(&gp, &fw)?;
    let translates: Vec<Elem> = [fw.field().one(), fw.clone(), fw.pow(2)]
        .iter()
        .map(|l| torsion_translate(&gp, l).map(|t| t.coords().unwrap().1.clone()))
        .collect::<Result<_, _>>()?;
    let group = [fw.field().one(), fw.clone(), fw.pow(2)].iter().all(|l| {
        let t = EllipticPoint::Affine { x: -l, y: fw.field().zero() };
        torsion_translate(&gp, l).ok() == Some(ec_add(&gp, &t))
    });
    r.push("translation closed form = group law, all lambda", group, String::new());
    r.push(
        "fiber y-values are y(P + T), T 2-torsion",
        ys[1..] == translates[..] && ys[0] == *gp.coords().unwrap().1,
        String::new(),
    );

    let cr = fiber_cross_ratio_at(&gp, &fw)?;
    let expect = expected_cross_ratio();
    let ok = cr == fw.field().embed(&expect);
    let detail = if ok { format!("{expect}") } else { format!("got {cr}; orbit {:?}", cross_ratio_orbit(&ys).iter().map(|e| e.to_string()).collect::<Vec<_>>()) };
    r.push("fiber cross-ratio = 1/(1 + w)", ok, detail);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut good = 0;
    for _ in 0..samples {
        let p = random_point(&mut rng);
        if square_commutes(&p, &h) == Some(true) {
            good += 1;
        }
    }
    r.push("h o pi = pi o [-2] (sampled points)", good == samples, format!("{good}/{samples}"));

    let mu = conjugacy_mu(&k);
    let lhs = mu.compose(&h.embed(&k));
    let rhs = example_g(&k).compose(&mu);
    r.push("mu o h = g o mu", lhs == rhs, format!("{}", lhs.display("z")));

    if let Some(c) = r.checks.iter().find(|c| !c.passed) {
        return Err(LattesError::CheckFailed(c.name.clone()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> EllipticPoint {
        let q = Field::rationals();
        EllipticPoint::affine(q.from_int(x), q.from_int(y)).unwrap()
    }

    #[test]
    fn group_law() {
        assert_eq!(ec_add(&pt(2, 3), &pt(-1, 0)), pt(0, -1));
        assert_eq!(ec_add(&pt(2, 3), &EllipticPoint::Infinity), pt(2, 3));
        assert_eq!(ec_add(&pt(0, 1), &pt(0, 1)), pt(0, -1));
        assert_eq!(ec_add(&pt(0, 1), &pt(0, -1)), EllipticPoint::Infinity);
        assert!(EllipticPoint::affine(Field::rationals().one(), Field::rationals().one()).is_err());
    }

    #[test]
    fn times_minus_two() {
        assert_eq!(mul_neg2(&pt(0, 1)).unwrap(), pt(0, 1));
        assert_eq!(mul_neg2(&pt(2, 3)).unwrap(), pt(0, -1));
        assert_eq!(mul_neg2(&pt(2, 3)).unwrap(), ec_add(&pt(2, -3), &pt(2, -3)));
        assert_eq!(mul_neg2(&pt(-1, 0)).unwrap_err(), LattesError::TorsionDenominator);
    }

    #[test]
    fn translation() {
        let one = Field::rationals().one();
        assert_eq!(torsion_translate(&pt(2, 3), &one).unwrap(), pt(0, -1));
        assert_eq!(torsion_translate(&pt(0, 1), &one).unwrap(), pt(2, -3));
        assert_eq!(torsion_translate(&pt(-1, 0), &one).unwrap_err(), LattesError::PoleAtTorsion);
    }

    #[test]
    fn cross_ratio_constant() {
        let e = expected_cross_ratio();
        let w = eisenstein_field().gen().unwrap();
        assert_eq!(e, -&w);
        assert_eq!(fiber_cross_ratio(true).unwrap(), fiber_cross_ratio(true).unwrap().field().embed(&e));
        let s = fiber_cross_ratio(false).unwrap();
        assert_eq!(s, s.field().embed(&e));
    }

    #[test]
    fn torsion_fiber_degenerates() {
        let k = eisenstein_field();
        let p = EllipticPoint::affine(k.from_int(2), k.from_int(3)).unwrap();
        assert_eq!(fiber_cross_ratio_at(&p, &k.gen().unwrap()).unwrap_err(), LattesError::DegenerateFiber);
    }

    #[test]
    fn sampled_group_law() {
        let r = group_law_samples(10, 1);
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn diagram_commutes() {
        let r = semiconjugacy_check(20, 7).unwrap();
        assert!(r.passed(), "{r:#?}");
        let h = belyi_h();
        assert_eq!(square_commutes(&pt(0, 1), &h), Some(true));
        assert_eq!(square_commutes(&pt(2, 3), &h), Some(true));
    }
}
