use std::fmt;

use super::field::{ArithError, Elem, Field};

/// A point of the Riemann sphere over a field.
#[derive(Clone, PartialEq, Debug)]
pub enum ProjPoint {
    Finite(Elem),
    Infinity,
}

impl ProjPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(&self) -> Option<&Elem> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    pub fn embed(&self, field: &Field) -> ProjPoint {
        match self {
            ProjPoint::Finite(x) => ProjPoint::Finite(field.coerce(x).expect("point outside the field tower")),
            ProjPoint::Infinity => ProjPoint::Infinity,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{}", x),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrossRatioError {
    #[error("two of the four points coincide")]
    DegenerateTuple,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `(z1-z2)(z3-z4) / ((z1-z3)(z2-z4))`. A point at infinity is handled as a
/// limit: `(inf - b)` becomes `1` and `(a - inf)` becomes `-1`.
pub fn cross_ratio(z: [&ProjPoint; 4]) -> Result<Elem, CrossRatioError> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if z[i] == z[j] {
                return Err(CrossRatioError::DegenerateTuple);
            }
        }
    }
    let field = z
        .iter()
        .filter_map(|p| p.finite())
        .map(|x| x.field().clone())
        .reduce(|a, b| if a.contains_field(&b) { a } else { b })
        .expect("at most one point is infinite");
    let diff = |i: usize, j: usize| -> Elem {
        match (z[i], z[j]) {
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a - b,
            (ProjPoint::Infinity, _) => field.one(),
            (_, ProjPoint::Infinity) => -field.one(),
        }
    };
    let num = &diff(0, 1) * &diff(2, 3);
    let den = &diff(0, 2) * &diff(1, 3);
    Ok(num.checked_div(&den)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::rat;

    fn pt(n: i64, d: i64) -> ProjPoint {
        ProjPoint::Finite(Field::rationals().from_rational(rat(n, d)))
    }

    #[test]
    fn standard_values() {
        let t = cross_ratio([&pt(0, 1), &pt(1, 1), &pt(2, 1), &pt(3, 1)]).unwrap();
        assert_eq!(t.as_q().unwrap(), rat(1, 4));
        let z = pt(5, 7);
        let t = cross_ratio([&z, &pt(0, 1), &ProjPoint::Infinity, &pt(1, 1)]).unwrap();
        assert_eq!(t.as_q().unwrap(), rat(5, 7));
        assert_eq!(
            cross_ratio([&pt(0, 1), &pt(0, 1), &pt(2, 1), &pt(3, 1)]).unwrap_err(),
            CrossRatioError::DegenerateTuple
        );
    }
}
