use super::PushError;
use crate::ratfield::{Elem, Field, Poly, ProjPoint, RatFunc};

/// `coeff(z) dz^2` together with the set of points where it may have poles.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticDifferential {
    pub coeff: RatFunc,
    pub poles: Vec<ProjPoint>,
}

impl QuadraticDifferential {
    /// Checks integrability: simple poles only, all of them declared.
    pub fn new(coeff: RatFunc, poles: Vec<ProjPoint>) -> Result<QuadraticDifferential, PushError> {
        if !coeff.is_zero() {
            let (num, den) = (coeff.num(), coeff.den());
            let gap = den.deg() - num.deg();
            if gap < 3 {
                return Err(PushError::NotIntegrable(format!("pole of order {} at infinity", 4 - gap)));
            }
            if gap == 3 && !poles.iter().any(|p| p.is_infinity()) {
                return Err(PushError::NotIntegrable("undeclared pole at infinity".into()));
            }
            if !Poly::gcd(den, &den.derivative()).is_constant() {
                return Err(PushError::NotIntegrable("pole of order at least two".into()));
            }
            if !den.divides(&finite_product(coeff.field(), &poles)) {
                return Err(PushError::NotIntegrable("undeclared finite pole".into()));
            }
        }
        Ok(QuadraticDifferential { coeff, poles })
    }

    /// Pushforward under `g`, required to be integrable with poles in `target`.
    pub fn push(&self, g: &RatFunc, target: &[ProjPoint]) -> Result<QuadraticDifferential, PushError> {
        let c = super::pushforward(g, &self.coeff)?;
        QuadraticDifferential::new(c, target.to_vec())
            .map_err(|e| PushError::AdmissibilityViolated(format!("pushforward leaves the target space: {e}")))
    }
}

impl std::fmt::Display for QuadraticDifferential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} dz^2", self.coeff)
    }
}

/// Product of `z - u` over the finite points.
pub(crate) fn finite_product(field: &Field, pts: &[ProjPoint]) -> Poly {
    pts.iter().filter_map(|p| p.finite()).fold(Poly::one(field), |acc, u| &acc * &Poly::linear_root(u))
}

fn finite_points(pts: &[ProjPoint]) -> Vec<Elem> {
    pts.iter().filter_map(|p| p.finite().cloned()).collect()
}

fn check_points(marked: &[ProjPoint]) -> Result<Field, PushError> {
    if marked.len() < 4 {
        return Err(PushError::TooFewPoints(marked.len()));
    }
    for i in 0..marked.len() {
        for j in 0..i {
            if marked[i] == marked[j] {
                return Err(PushError::DuplicatePoint(marked[i].to_string()));
            }
        }
    }
    let mut field = Field::rationals();
    for u in marked.iter().filter_map(|p| p.finite()) {
        field = super::common_field(&field, u.field())?;
    }
    Ok(field)
}

/// Basis of integrable quadratic differentials with poles in `marked`.
///
/// With infinity marked and finite points `u1, ..., un` the basis is
/// `1/((z-u1)(z-u2)(z-ut))` for `t = 3..n`; otherwise it is
/// `z^k / prod (z - ui)` for `k = 0..n-4`.
pub fn qd_basis(marked: &[ProjPoint]) -> Result<Vec<QuadraticDifferential>, PushError> {
    let field = check_points(marked)?;
    let marked: Vec<ProjPoint> = marked.iter().map(|p| p.embed(&field)).collect();
    let u = finite_points(&marked);
    let lin = |x: &Elem| Poly::linear_root(x);
    let one = Poly::one(&field);
    let coeffs: Vec<RatFunc> = if u.len() < marked.len() {
        let base = &lin(&u[0]) * &lin(&u[1]);
        u[2..].iter().map(|ut| RatFunc::new(&one, &(&base * &lin(ut))).unwrap()).collect()
    } else {
        let den = finite_product(&field, &marked);
        (0..u.len() - 3).map(|k| RatFunc::new(&Poly::monomial(field.one(), k), &den).unwrap()).collect()
    };
    Ok(coeffs.into_iter().map(|c| QuadraticDifferential { coeff: c, poles: marked.clone() }).collect())
}

/// Residue of `phi` at a simple pole `u` (zero if `u` is not a pole).
fn residue(phi: &RatFunc, u: &Elem) -> Result<Elem, PushError> {
    let den = phi.den();
    if !den.eval(u).is_zero() {
        return Ok(u.field().zero());
    }
    let dd = den.derivative().eval(u);
    if dd.is_zero() {
        return Err(PushError::AdmissibilityViolated(format!("pole of order two at {u}")));
    }
    Ok(&phi.num().eval(u) / &dd)
}

/// Coordinates of `phi(z) dz^2` in [`qd_basis`] of `marked`.
pub fn expand_in_basis(phi: &RatFunc, marked: &[ProjPoint]) -> Result<Vec<Elem>, PushError> {
    let basis = qd_basis(marked)?;
    let field = super::common_field(basis[0].coeff.field(), phi.field())?;
    let phi = phi.embed(&field);
    let marked: Vec<ProjPoint> = marked.iter().map(|p| p.embed(&field)).collect();
    let u = finite_points(&marked);
    let coords: Vec<Elem> = if u.len() < marked.len() {
        u[2..]
            .iter()
            .map(|ut| Ok(&residue(&phi, ut)? * &(&(ut - &u[0]) * &(ut - &u[1]))))
            .collect::<Result<_, PushError>>()?
    } else {
        let p = &phi * &RatFunc::from_poly(&finite_product(&field, &marked));
        if !p.den().is_one() {
            return Err(PushError::AdmissibilityViolated(format!("pole outside the marked set in {phi}")));
        }
        (0..basis.len()).map(|k| p.num().coeff(k)).collect()
    };
    let back = basis
        .iter()
        .zip(&coords)
        .fold(RatFunc::zero(&field), |acc, (b, c)| &acc + &b.coeff.embed(&field).scale(c));
    if back != phi {
        return Err(PushError::AdmissibilityViolated(format!("{phi} is not integrable with poles in the marked set")));
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{parse_field, parse_point, parse_ratfunc};

    fn pts(list: &[&str], k: &Field) -> Vec<ProjPoint> {
        list.iter().map(|s| parse_point(s, k).unwrap()).collect()
    }

    #[test]
    fn basis_with_infinity() {
        let q = Field::rationals();
        let b = qd_basis(&pts(&["0", "1", "-1", "inf"], &q)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].coeff, parse_ratfunc("1/(z^3-z)", &q, "z").unwrap());
        let b = qd_basis(&pts(&["0", "1", "2", "3", "inf"], &q)).unwrap();
        assert_eq!(b[0].coeff, parse_ratfunc("1/(z*(z-1)*(z-2))", &q, "z").unwrap());
        assert_eq!(b[1].coeff, parse_ratfunc("1/(z*(z-1)*(z-3))", &q, "z").unwrap());
    }

    #[test]
    fn basis_without_infinity() {
        let k = parse_field("w^2+w+1").unwrap();
        let b = qd_basis(&pts(&["0", "-1", "-w", "-w^2"], &k)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].coeff, parse_ratfunc("1/(z*(z^3+1))", &k, "z").unwrap());
    }

    #[test]
    fn basis_errors() {
        let q = Field::rationals();
        assert_eq!(qd_basis(&pts(&["0", "1", "inf"], &q)).unwrap_err(), PushError::TooFewPoints(3));
        assert!(matches!(qd_basis(&pts(&["0", "1", "1", "inf"], &q)), Err(PushError::DuplicatePoint(_))));
    }

    #[test]
    fn expansion_round_trip() {
        let q = Field::rationals();
        let m = pts(&["0", "1", "2", "3", "inf"], &q);
        let phi = parse_ratfunc("3/(z*(z-1)*(z-2)) - 1/(2*z*(z-1)*(z-3))", &q, "z").unwrap();
        let c = expand_in_basis(&phi, &m).unwrap();
        assert_eq!(c, vec![q.from_int(3), q.from_rational(crate::ratfield::rat(-1, 2))]);
        let m = pts(&["0", "1", "2", "3", "4"], &q);
        let phi = parse_ratfunc("(z-7)/(z*(z-1)*(z-2)*(z-3)*(z-4))", &q, "z").unwrap();
        let c = expand_in_basis(&phi, &m).unwrap();
        assert_eq!(c, vec![q.from_int(-7), q.from_int(1)]);
    }

    #[test]
    fn expansion_rejects_outside_poles() {
        let q = Field::rationals();
        let m = pts(&["0", "1", "2", "inf"], &q);
        let phi = parse_ratfunc("1/(z*(z-1)*(z-5))", &q, "z").unwrap();
        assert!(matches!(expand_in_basis(&phi, &m), Err(PushError::AdmissibilityViolated(_))));
    }

    #[test]
    fn integrability() {
        let q = Field::rationals();
        let r = |s: &str| parse_ratfunc(s, &q, "z").unwrap();
        assert!(QuadraticDifferential::new(r("1/(z*(z-1))"), pts(&["0", "1", "inf"], &q)).is_err());
        assert!(QuadraticDifferential::new(r("1/(z^2*(z-1)^2)"), pts(&["0", "1"], &q)).is_err());
        assert!(QuadraticDifferential::new(r("1/(z*(z-1)*(z-2))"), pts(&["0", "1", "2"], &q)).is_err());
        assert!(QuadraticDifferential::new(r("1/(z*(z-1)*(z-2))"), pts(&["0", "1", "2", "inf"], &q)).is_ok());
    }
}
