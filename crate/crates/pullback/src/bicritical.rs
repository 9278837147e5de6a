//! Hurwitz correspondences of bicritical maps with four postcritical points.
//!
//! Marked points are normalized to `v1 = inf`, `v2 = 0`, `f(v1) = 1` and the
//! fourth point at `t` (target) or `t'` (source). Maps are written as
//! `g(z) = ((z + x)/(z + y))^d`, whose critical values are `0` and `inf`.
//! Each postcritical graph gives two equations in `(x, y, t')`, one linear,
//! cutting out a curve that is generically two-to-one over the `t'` line.

use serde::Serialize;
use serde_json::{json, Value};

use crate::portrait::Portrait;
use crate::pushforward::{critical_points_poly, portrait_of_map, PushError};
use crate::ratfield::{cyclotomic, elem_to_json, ArithError, Elem, Field, Poly, ProjPoint, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BicriticalError {
    #[error("t' must avoid 0 and 1")]
    DegenerateParameter,
    #[error("the root of unity is 1")]
    TrivialRoot,
    #[error("degree must be at least 2")]
    BadDegree,
    #[error("normal form check failed: {0}")]
    CheckFailed(String),
    #[error("no witness found among the first {0} parameters")]
    WitnessSearchFailed(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Push(#[from] PushError),
}

/// Postcritical graph of the map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// `v1 -> a -> a`, `v2 -> b -> b`: `1 + x = l (1 + y)`, `y (t' + x) = l' x (t' + y)`.
    SplitFixed,
    /// `v1 -> a <-> b <- v2`: `t' + x = l (t' + y)`, `y (1 + x) = l' x (1 + y)`.
    TwoCycle,
    /// `v1 -> a`, `v2 -> a`, `a -> b -> b`: `x = l' y`, `(t' + x)(1 + y) = l (1 + x)(t' + y)`.
    SharedImage,
}

impl Case {
    pub fn parse(s: &str) -> Option<Case> {
        match s {
            "split" => Some(Case::SplitFixed),
            "cycle" => Some(Case::TwoCycle),
            "shared" => Some(Case::SharedImage),
            _ => None,
        }
    }
}

/// A Hurwitz class: degree, the two roots of unity `l = zeta^k`, `l' = zeta^k'`, and the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicriticalClass {
    pub d: u32,
    pub k: u32,
    pub k_prime: u32,
    pub case: Case,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub x: Elem,
    pub y: Elem,
    pub t_prime: Elem,
}

impl BicriticalClass {
    pub fn new(d: u32, k: u32, k_prime: u32, case: Case) -> Result<BicriticalClass, BicriticalError> {
        if d < 2 {
            return Err(BicriticalError::BadDegree);
        }
        if k % d == 0 || k_prime % d == 0 {
            return Err(BicriticalError::TrivialRoot);
        }
        Ok(BicriticalClass { d, k: k % d, k_prime: k_prime % d, case })
    }

    /// `Q(zeta_d)`.
    pub fn field(&self) -> Field {
        Field::algebraic(&cyclotomic(self.d), "zeta").expect("cyclotomic polynomials are squarefree")
    }

    pub fn lambdas(&self) -> (Elem, Elem) {
        let z = self.field().gen().unwrap();
        (z.pow(self.k), z.pow(self.k_prime))
    }

    /// Coefficients `(A, B, C)` of `A y^2 + B y + C` and `(alpha, beta)` with `x = alpha + beta y`.
    fn quadratic(&self, tp: &Elem) -> ((Elem, Elem, Elem), (Elem, Elem)) {
        let (l, lp) = self.lambdas();
        let one = tp.field().one();
        let lin = |alpha: Elem, beta: Elem, s: Elem| {
            let a = &(&one - &lp) * &beta;
            let b = &(&(&one - &lp) * &alpha) + &(&s - &(&(&lp * &s) * &beta));
            let c = -(&(&lp * &s) * &alpha);
            ((a, b, c), (alpha, beta))
        };
        match self.case {
            Case::SplitFixed => lin(&l - &one, l.clone(), tp.clone()),
            Case::TwoCycle => lin(&(&l - &one) * tp, l.clone(), one.clone()),
            Case::SharedImage => {
                // (t' + mu y)(1 + y) = l (1 + mu y)(t' + y) with mu = l'
                let mu = lp;
                let a = &mu * &(&one - &l);
                let b = &(tp + &mu) - &(&l + &(&(&l * &mu) * tp));
                let c = tp * &(&one - &l);
                ((a, b, c), (tp.field().zero(), mu))
            }
        }
    }

    /// `t` at a curve point: `(x/y)^d`, or `((1+x)/(1+y))^d` for a shared image.
    pub fn map_t(&self, pt: &CurvePoint) -> Result<Elem, BicriticalError> {
        let r = match self.case {
            Case::SharedImage => {
                let one = pt.x.field().one();
                (&one + &pt.x).checked_div(&(&one + &pt.y))?
            }
            _ => pt.x.checked_div(&pt.y)?,
        };
        Ok(r.pow(self.d))
    }

    fn admissible(&self, pt: &CurvePoint) -> bool {
        if pt.x.is_zero() || pt.y.is_zero() || pt.x == pt.y {
            return false;
        }
        match self.map_t(pt) {
            Ok(t) => !t.is_zero() && !t.is_one() && (self.case != Case::SharedImage || !pt.x.pow(self.d).is_zero()),
            Err(_) => false,
        }
    }
}

/// `t` at a curve point.
pub fn map_t(pt: &CurvePoint, c: &BicriticalClass) -> Result<Elem, BicriticalError> {
    c.map_t(pt)
}

/// Points of the curve over `t'`, exact, in a field containing `zeta_d` and
/// the square root of the discriminant.
pub fn curve_fiber(c: &BicriticalClass, t_prime: &Elem) -> Result<Vec<CurvePoint>, BicriticalError> {
    let k = c.field();
    let tp = k.coerce(t_prime).ok_or(BicriticalError::Arith(ArithError::FieldMismatch))?;
    if tp.is_zero() || tp.is_one() {
        return Err(BicriticalError::DegenerateParameter);
    }
    let ((a, b, cc), _) = c.quadratic(&tp);
    let disc = &(&b * &b) - &(&(&a * &cc) * &k.from_int(4));
    let (field, s) = match disc.sqrt() {
        Some(s) => (k.clone(), s),
        None => {
            let m = Poly::new(&k, vec![-disc.clone(), k.zero(), k.one()]);
            let f = Field::algebraic(&m, "s")?;
            let s = f.gen().unwrap();
            (f, s)
        }
    };
    let tp = field.coerce(&tp).unwrap();
    let ((a, b, _), (alpha, beta)) = c.quadratic(&tp);
    let two_a = &a * &field.from_int(2);
    let mut ys = vec![(&(-&b) + &s).checked_div(&two_a)?];
    if !s.is_zero() {
        ys.push((&(-&b) - &s).checked_div(&two_a)?);
    }
    Ok(ys
        .into_iter()
        .map(|y| CurvePoint { x: &alpha + &(&beta * &y), y, t_prime: tp.clone() })
        .filter(|p| c.admissible(p))
        .collect())
}

/// `((z + x)/(z + y))^d`.
pub fn normal_form(pt: &CurvePoint, d: u32) -> RatFunc {
    let f = pt.x.field();
    let num = Poly::new(f, vec![pt.x.clone(), f.one()]);
    let den = Poly::new(f, vec![pt.y.clone(), f.one()]);
    RatFunc::new(&num.pow(d), &den.pow(d)).expect("nonzero denominator")
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub checks: Vec<(String, bool)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Verifies the normal form at a curve point as exact identities.
pub fn normal_form_check(pt: &CurvePoint, c: &BicriticalClass) -> Result<CheckReport, BicriticalError> {
    let g = normal_form(pt, c.d);
    let f = pt.x.field();
    let fin = |e: &Elem| ProjPoint::Finite(e.clone());
    let at = |z: &Elem| g.eval_proj(&fin(z));
    let t = c.map_t(pt)?;
    let (one, zero) = (f.one(), f.zero());
    let crit = &Poly::linear_root(&-&pt.x) * &Poly::linear_root(&-&pt.y);
    let mut checks = vec![
        ("critical points -x, -y".to_string(), critical_points_poly(&g) == crit),
        ("g(-x) = 0".to_string(), at(&-&pt.x) == fin(&zero)),
        ("g(-y) = inf".to_string(), at(&-&pt.y) == ProjPoint::Infinity),
        ("g(inf) = 1".to_string(), g.value_at_infinity() == fin(&one)),
    ];
    let (g0, g1, gt) = match c.case {
        Case::SplitFixed => (&t, &one, &t),
        Case::TwoCycle => (&t, &t, &one),
        Case::SharedImage => (&one, &t, &t),
    };
    checks.push((format!("g(0) = {g0}"), at(&zero) == fin(g0)));
    checks.push((format!("g(1) = {g1}"), at(&one) == fin(g1)));
    checks.push((format!("g(t') = {gt}"), at(&pt.t_prime) == fin(gt)));
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(BicriticalError::CheckFailed(name.clone()));
    }
    Ok(CheckReport { checks })
}

/// Portrait of the normal form with `v1 = inf`, `v2 = 0`, `a = 1`, `b = t'` (source) and `b = t` (target).
pub fn normal_form_portrait(pt: &CurvePoint, c: &BicriticalClass) -> Result<Portrait, BicriticalError> {
    let g = normal_form(pt, c.d);
    let f = pt.x.field();
    let t = c.map_t(pt)?;
    let named = |b: &Elem| {
        vec![
            ("v1".to_string(), ProjPoint::Infinity),
            ("v2".to_string(), ProjPoint::Finite(f.zero())),
            ("a".to_string(), ProjPoint::Finite(f.one())),
            ("b".to_string(), ProjPoint::Finite(b.clone())),
        ]
    };
    Ok(portrait_of_map(&g, &named(&pt.t_prime), &named(&t), true)?)
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub class: BicriticalClass,
    pub t_primes: [Elem; 2],
    pub fibers: [Vec<CurvePoint>; 2],
    /// `t` at the two points over the first parameter; distinct.
    pub t_values: Vec<Elem>,
    pub normal_forms: Vec<RatFunc>,
    /// True when the curve splits over the algebraic closure.
    pub curve_reducible: bool,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        let pt = |p: &CurvePoint| json!({"x": p.x.to_string(), "y": p.y.to_string(), "field": p.x.field().to_string()});
        json!({
            "class": self.class,
            "tprime": self.t_primes.iter().map(elem_to_json).collect::<Vec<_>>(),
            "points": self.fibers.iter().map(|f| f.iter().map(pt).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "t_values": self.t_values.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "normal_form": self.normal_forms.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "curve_reducible": self.curve_reducible,
        })
    }
}

/// The deterministic parameter sequence `-3, -2, 2, 3, -4, 4, -5, 5, ...`.
pub fn t_prime_sequence(n: usize) -> Vec<i64> {
    let mut out = vec![-3, -2, 2, 3];
    let mut k = 4;
    while out.len() < n {
        out.push(-k);
        out.push(k);
        k += 1;
    }
    out.truncate(n);
    out
}

/// Discriminant of the defining quadratic as a polynomial in `t'`, by interpolation at three points.
fn discriminant_poly(c: &BicriticalClass) -> Poly {
    let k = c.field();
    let xs: Vec<Elem> = (2..5).map(|i| k.from_int(i)).collect();
    let ys: Vec<Elem> = xs
        .iter()
        .map(|x| {
            let ((a, b, cc), _) = c.quadratic(x);
            &(&b * &b) - &(&(&a * &cc) * &k.from_int(4))
        })
        .collect();
    let mut out = Poly::zero(&k);
    for i in 0..3 {
        let mut term = Poly::constant(ys[i].clone());
        for j in (0..3).filter(|&j| j != i) {
            let lin = Poly::linear_root(&xs[j]);
            term = (&term * &lin).scale(&(&xs[i] - &xs[j]).inv().unwrap());
        }
        out = &out + &term;
    }
    out
}

fn curve_reducible(c: &BicriticalClass) -> bool {
    let d = discriminant_poly(c);
    match d.degree() {
        None | Some(0) => true,
        Some(1) => false,
        _ => {
            let (a, b, cc) = (d.coeff(2), d.coeff(1), d.coeff(0));
            (&(&b * &b) - &(&(&a * &cc) * &d.field().from_int(4))).is_zero()
        }
    }
}

/// Certifies that the correspondence is not constant: over one parameter
/// the curve has two points with different `t`, and a second parameter has
/// a nonempty fiber as well.
pub fn nonconstancy_witness(c: &BicriticalClass) -> Result<Witness, BicriticalError> {
    const TRIES: usize = 40;
    let k = c.field();
    let mut found: Vec<(Elem, Vec<CurvePoint>)> = Vec::new();
    for n in t_prime_sequence(TRIES) {
        let tp = k.from_int(n);
        let Ok(fiber) = curve_fiber(c, &tp) else { continue };
        if fiber.is_empty() {
            continue;
        }
        if found.is_empty() {
            if fiber.len() != 2 {
                continue;
            }
            let t0 = c.map_t(&fiber[0])?;
            let t1 = c.map_t(&fiber[1])?;
            if t0 == t1 || fiber.iter().any(|p| normal_form_check(p, c).is_err()) {
                continue;
            }
        }
        found.push((tp, fiber));
        if found.len() == 2 {
            break;
        }
    }
    if found.len() < 2 {
        return Err(BicriticalError::WitnessSearchFailed(TRIES));
    }
    let (tp2, f2) = found.pop().unwrap();
    let (tp1, f1) = found.pop().unwrap();
    let t_values = f1.iter().map(|p| c.map_t(p)).collect::<Result<Vec<_>, _>>()?;
    let normal_forms = f1.iter().map(|p| normal_form(p, c.d)).collect();
    Ok(Witness {
        class: c.clone(),
        t_primes: [tp1, tp2],
        fibers: [f1, f2],
        t_values,
        normal_forms,
        curve_reducible: curve_reducible(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_graph;
    use crate::ratfield::rat;

    fn split2() -> BicriticalClass {
        BicriticalClass::new(2, 1, 1, Case::SplitFixed).unwrap()
    }

    #[test]
    fn quadratic_fiber() {
        let c = split2();
        let q = Field::rationals();
        let pts = curve_fiber(&c, &q.from_int(-3)).unwrap();
        let xy: Vec<(Elem, Elem)> = pts.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        assert_eq!(xy.len(), 2);
        assert!(xy.contains(&(q.from_int(-3), q.from_int(1))));
        assert!(xy.contains(&(q.from_int(1), q.from_int(-3))));
        let ts: Vec<Elem> = pts.iter().map(|p| map_t(p, &c).unwrap()).collect();
        assert!(ts.contains(&q.from_int(9)) && ts.contains(&q.from_rational(rat(1, 9))));
        for p in &pts {
            assert!(normal_form_check(p, &c).unwrap().passed());
        }
    }

    #[test]
    fn extension_fiber() {
        let c = split2();
        let pts = curve_fiber(&c, &Field::rationals().from_int(8)).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].x.field().degree_over_base(), 2);
        for p in &pts {
            assert!(normal_form_check(p, &c).unwrap().passed());
        }
    }

    #[test]
    fn degenerate_inputs() {
        let q = Field::rationals();
        assert_eq!(curve_fiber(&split2(), &q.zero()).unwrap_err(), BicriticalError::DegenerateParameter);
        assert_eq!(curve_fiber(&split2(), &q.one()).unwrap_err(), BicriticalError::DegenerateParameter);
        assert_eq!(BicriticalClass::new(3, 3, 1, Case::TwoCycle).unwrap_err(), BicriticalError::TrivialRoot);
    }

    #[test]
    fn off_curve_point_fails() {
        let c = BicriticalClass::new(3, 1, 2, Case::SplitFixed).unwrap();
        let w = nonconstancy_witness(&c).unwrap();
        let p = &w.fibers[0][0];
        let bad = CurvePoint { x: p.x.clone(), y: p.y.clone(), t_prime: &p.t_prime + &p.x.field().one() };
        assert!(matches!(normal_form_check(&bad, &c), Err(BicriticalError::CheckFailed(_))));
    }

    #[test]
    fn witnesses_small_degrees() {
        for d in 2..=4 {
            for k in 1..d {
                for kp in 1..d {
                    for case in [Case::SplitFixed, Case::TwoCycle, Case::SharedImage] {
                        let c = BicriticalClass::new(d, k, kp, case).unwrap();
                        let w = nonconstancy_witness(&c).unwrap_or_else(|e| panic!("{c:?}: {e}"));
                        assert_ne!(w.t_values[0], w.t_values[1]);
                    }
                }
            }
        }
    }

    #[test]
    fn portraits_match_graphs() {
        for (case, edges) in [
            (Case::SplitFixed, [("a", "a"), ("b", "b"), ("v1", "a"), ("v2", "b")]),
            (Case::TwoCycle, [("a", "b"), ("b", "a"), ("v1", "a"), ("v2", "b")]),
            (Case::SharedImage, [("a", "b"), ("b", "b"), ("v1", "a"), ("v2", "a")]),
        ] {
            let c = BicriticalClass::new(3, 1, 2, case).unwrap();
            let w = nonconstancy_witness(&c).unwrap();
            let p = normal_form_portrait(&w.fibers[0][0], &c).unwrap();
            assert!(p.validate().valid(), "{:?}", p.validate().failures());
            let g = build_graph(&p).unwrap().to_json();
            let expect: std::collections::BTreeMap<String, String> =
                edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
            assert_eq!(g.map, expect, "{case:?}");
        }
    }
}
