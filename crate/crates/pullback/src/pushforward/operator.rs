use super::{common_field, PushError};
use crate::ratfield::{Elem, Field, Poly, RatFunc};

fn wronskian(g: &RatFunc) -> Poly {
    let (p, q) = (g.num(), g.den());
    &(&p.derivative() * q) - &(p * &q.derivative())
}

/// Coefficients of `p(beta + t)` in `t`, `beta` the generator of `e`.
fn taylor(p: &Poly, e: &Field) -> Vec<Elem> {
    let shift = Poly::new(e, vec![e.gen().unwrap(), e.one()]);
    p.embed(e).compose(&shift).coeffs().to_vec()
}

fn coeff(v: &[Elem], i: usize, e: &Field) -> Elem {
    v.get(i).cloned().unwrap_or_else(|| e.zero())
}

/// Characteristic polynomial of multiplication by `x` in `e`, over the base,
/// from the power traces.
fn charpoly(x: &Elem, e: &Field) -> Poly {
    let k = e.base().unwrap();
    let n = e.degree_over_base();
    let mut p = Vec::with_capacity(n + 1);
    let mut xp = e.one();
    p.push(k.from_int(n as i64));
    for _ in 0..n {
        xp = &xp * x;
        p.push(e.trace(&xp));
    }
    let mut c = vec![k.one()];
    for j in 1..=n {
        let mut s = p[j].clone();
        for i in 1..j {
            s = &s + &(&c[i] * &p[j - i]);
        }
        c.push(-&s.checked_div(&k.from_int(j as i64)).unwrap());
    }
    c.reverse();
    Poly::new(k, c)
}

/// Coefficientwise trace of a polynomial in `z` over `e` down to its base.
fn trace_poly(p: &Poly, e: &Field) -> Poly {
    Poly::new(e.base().unwrap(), p.coeffs().iter().map(|c| e.trace(c)).collect())
}

/// Splits `s` into the part sharing roots with `q` and the rest.
fn split_by(s: &Poly, q: &Poly) -> (Poly, Poly) {
    let s1 = Poly::gcd(s, q).monic();
    let s2 = s.div_exact(&s1).monic();
    (s1, s2)
}

/// Monic squarefree polynomial whose roots are `g(beta)` over the roots
/// `beta` of `s` where `g` is finite.
fn image_poly(g: &RatFunc, s: &Poly) -> Result<Poly, PushError> {
    let k = g.field();
    let (_, s2) = split_by(&s.radical(), g.den());
    if s2.degree().unwrap_or(0) == 0 {
        return Ok(Poly::one(k));
    }
    let e = Field::algebraic(&s2, "v")?;
    let v = e.gen().unwrap();
    let gamma = g.num().embed(&e).eval(&v).checked_div(&g.den().embed(&e).eval(&v))?;
    Ok(charpoly(&gamma, &e).radical())
}

/// `sum_j a_j p_j` where `a/b = sum a_j u^j + O(1/u)` at infinity and
/// `p_j` are the power sums of the roots of `P - z Q`.
fn infinity_part(g: &RatFunc, a: &Poly, b: &Poly) -> Result<RatFunc, PushError> {
    let k = g.field();
    let (c, _) = a.divrem(b)?;
    let Some(m) = c.degree() else { return Ok(RatFunc::zero(k)) };
    let d = g.degree();
    let f: Vec<RatFunc> = (0..=d)
        .map(|i| RatFunc::from_poly(&Poly::new(k, vec![g.num().coeff(i), -&g.den().coeff(i)])))
        .collect();
    let mut p = vec![RatFunc::constant(&k.from_int(d as i64))];
    for j in 1..=m {
        let mut s = RatFunc::zero(k);
        for i in 1..=j.min(d) {
            if i < j {
                s = &s + &(&f[d - i] * &p[j - i]);
            } else {
                s = &s + &f[d - j].scale(&k.from_int(j as i64));
            }
        }
        p.push((-&s).checked_div(&f[d])?);
    }
    let mut out = RatFunc::zero(k);
    for (j, pj) in p.iter().enumerate() {
        out = &out + &pj.scale(&c.coeff(j));
    }
    Ok(out)
}

/// Trace over the roots `beta` of `piece` of the residue of
/// `a(u) F'(u) / (b(u) F(u))` at `u = beta`, where every such root has
/// multiplicity `mult` in `b` and `F = P - z Q`.
fn residue_part(g: &RatFunc, a: &Poly, b: &Poly, piece: &Poly, mult: usize) -> Result<RatFunc, PushError> {
    let e = Field::algebraic(piece, "v")?;
    let n = mult;
    let bt = taylor(b, &e);
    let lead = coeff(&bt, n, &e).inv()?;
    let mut ib = vec![lead.clone()];
    for j in 1..n {
        let mut s = e.zero();
        for i in 1..=j {
            s = &s + &(&coeff(&bt, n + i, &e) * &ib[j - i]);
        }
        ib.push(-&(&lead * &s));
    }
    let at = taylor(a, &e);
    let ab: Vec<Elem> = (0..n)
        .map(|j| (0..=j).fold(e.zero(), |s, i| &s + &(&coeff(&at, i, &e) * &ib[j - i])))
        .collect();
    let (pt, qt) = (taylor(g.num(), &e), taylor(g.den(), &e));
    let fk: Vec<Poly> =
        (0..=n).map(|i| Poly::new(&e, vec![coeff(&pt, i, &e), -&coeff(&qt, i, &e)])).collect();
    let dfk: Vec<Poly> = (0..n).map(|i| fk[i + 1].scale(&e.from_int(i as i64 + 1))).collect();
    let num: Vec<Poly> = (0..n)
        .map(|j| (0..=j).fold(Poly::zero(&e), |s, i| &s + &dfk[j - i].scale(&ab[i])))
        .collect();
    let q0 = coeff(&qt, 0, &e);
    if q0.is_zero() {
        // Poles of g: F(beta) = P(beta) is a unit.
        let inv0 = coeff(&pt, 0, &e).inv()?;
        let mut x: Vec<Poly> = Vec::with_capacity(n);
        for j in 0..n {
            let mut s = num[j].clone();
            for i in 1..=j {
                s = &s - &(&fk[i] * &x[j - i]);
            }
            x.push(s.scale(&inv0));
        }
        return Ok(RatFunc::from_poly(&trace_poly(&x[n - 1], &e)));
    }
    // X_j = T_j / F0^(j+1)
    let f0 = &fk[0];
    let f0p: Vec<Poly> = (0..n).map(|i| f0.pow(i as u32)).collect();
    let mut t: Vec<Poly> = Vec::with_capacity(n);
    for j in 0..n {
        let mut s = &num[j] * &f0p[j];
        for i in 1..=j {
            s = &s - &(&(&fk[i] * &t[j - i]) * &f0p[i - 1]);
        }
        t.push(s);
    }
    // F0 = -Q(beta) (z - gamma) and chi(z) = (z - gamma) adj(z).
    let gamma = coeff(&pt, 0, &e).checked_div(&q0)?;
    let chi = charpoly(&gamma, &e);
    let adj = chi.embed(&e).div_exact(&Poly::linear_root(&gamma));
    let scale = (-&q0).inv()?.pow(n as u32);
    let top = (&t[n - 1] * &adj.pow(n as u32)).scale(&scale);
    Ok(RatFunc::new(&trace_poly(&top, &e), &chi.pow(n as u32))?)
}

/// Coefficient of the pushforward of `q(z) dz^2` under `g`.
///
/// The answer is `sum h(u)` over the roots of `F_z = P - z Q` with
/// `h = q / g'^2 = q_num Q^4 / (q_den W^2)` and `W = P'Q - PQ'`. By the
/// residue theorem applied to `h F'/F` this equals the polynomial part of `h`
/// at infinity paired with the power sums of the roots, minus the residues
/// at the roots of `q_den W^2`. Those roots do not move with `z`, so all
/// work happens over finite extensions of the coefficient field.
pub fn pushforward(g: &RatFunc, q: &RatFunc) -> Result<RatFunc, PushError> {
    let k = common_field(g.field(), q.field())?;
    let (g, q) = (g.embed(&k), q.embed(&k));
    if g.degree() == 0 {
        return Err(PushError::ConstantMap);
    }
    if q.is_zero() {
        return Ok(RatFunc::zero(&k));
    }
    let w = wronskian(&g);
    let a = q.num() * &g.den().pow(4);
    let b = q.den() * &w.pow(2);
    let mut out = infinity_part(&g, &a, &b)?;
    for (i, s) in b.squarefree_decomposition().iter().enumerate() {
        let (s1, s2) = split_by(s, g.den());
        for piece in [s1, s2] {
            if piece.degree().unwrap_or(0) > 0 {
                out = &out - &residue_part(&g, &a, &b, &piece, i + 1)?;
            }
        }
    }

    // Poles may only sit over poles of q, critical values, or g(inf).
    let mut allowed = image_poly(&g, &(q.den() * &w))?;
    if let Some(c) = g.value_at_infinity().finite() {
        allowed = &allowed * &Poly::linear_root(c);
    }
    if !out.den().radical().divides(&allowed) {
        return Err(PushError::PostCheckFailed);
    }
    Ok(out)
}

/// Monic squarefree polynomial whose roots are the finite critical values of
/// `g`, apart from a possible critical value at `g(inf)`.
pub fn critical_value_poly(g: &RatFunc) -> Result<Poly, PushError> {
    if g.degree() == 0 {
        return Err(PushError::ConstantMap);
    }
    image_poly(g, &wronskian(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{parse_field, parse_ratfunc};

    fn rf(s: &str, k: &Field) -> RatFunc {
        parse_ratfunc(s, k, "z").unwrap()
    }

    #[test]
    fn square_map() {
        let q = Field::rationals();
        let out = pushforward(&rf("z^2", &q), &rf("1/((z^2-1)*(z^2-4))", &q)).unwrap();
        assert_eq!(out, rf("1/(2*z*(z-1)*(z-4))", &q));
    }

    #[test]
    fn inversion() {
        let q = Field::rationals();
        let qd = rf("1/(z*(z-1)*(z-3))", &q);
        let out = pushforward(&rf("1/z", &q), &qd).unwrap();
        let expect = qd.compose(&rf("1/z", &q)) * rf("1/z^4", &q);
        assert_eq!(out, expect);
    }

    #[test]
    fn quartic_vanishes() {
        // The fiber of g over 0 is {0, -2^(1/3) w^j}, the marked source points.
        let k = parse_field("w^2+w+1").unwrap();
        let g = rf("(-1*z*(z^3+2))/(2*z^3+1)", &k);
        let out = pushforward(&g, &rf("1/(z*(z^3+2))", &k)).unwrap();
        assert!(out.is_zero(), "{}", out);
    }

    #[test]
    fn quartic_map_on_its_fixed_points() {
        // g fixes 0, -1, -w, -w^2; on that marking the pushforward is -q/2.
        let k = parse_field("w^2+w+1").unwrap();
        let g = rf("(-1*z*(z^3+2))/(2*z^3+1)", &k);
        let q = rf("1/(z*(z^3+1))", &k);
        assert_eq!(pushforward(&g, &q).unwrap(), q.scale(&k.from_rational(crate::ratfield::rat(-1, 2))));
    }

    #[test]
    fn constant_map() {
        let q = Field::rationals();
        assert_eq!(pushforward(&rf("3", &q), &rf("1/z", &q)).unwrap_err(), PushError::ConstantMap);
    }

    #[test]
    fn critical_values_of_square() {
        let q = Field::rationals();
        assert_eq!(critical_value_poly(&rf("z^2+1", &q)).unwrap(), rf("z-1", &q).num().clone());
    }
}
