use serde::Serialize;

use super::PushError;
use crate::ratfield::{elem_to_json, linalg, Elem, Field};

#[derive(Clone, Debug, PartialEq)]
pub struct CauchyReport {
    /// Determinant by cofactor expansion.
    pub direct: Elem,
    /// Product formula.
    pub closed: Elem,
}

impl CauchyReport {
    pub fn agree(&self) -> bool {
        self.direct == self.closed
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct J {
            direct: serde_json::Value,
            closed: serde_json::Value,
            agree: bool,
        }
        serde_json::to_value(J { direct: elem_to_json(&self.direct), closed: elem_to_json(&self.closed), agree: self.agree() })
            .unwrap()
    }
}

fn check(w: &[Elem], u: &[Elem]) -> Result<(), PushError> {
    let m = w.len();
    if m == 0 {
        return Err(PushError::DegenerateInput("no rows".into()));
    }
    if u.len() < m + 2 {
        return Err(PushError::DegenerateInput(format!("need at least {} values of u, got {}", m + 2, u.len())));
    }
    let pts: Vec<&Elem> = w.iter().chain(&u[..m + 2]).collect();
    for i in 0..pts.len() {
        for j in 0..i {
            if pts[i] == pts[j] {
                return Err(PushError::DegenerateInput(format!("repeated value {}", pts[i])));
            }
        }
    }
    Ok(())
}

/// `[1/((w_j - u_1)(w_j - u_2)(w_j - u_t))]` for rows `j` and columns `t = 3..m+2`.
pub fn cauchy_matrix(w: &[Elem], u: &[Elem]) -> Result<linalg::Matrix, PushError> {
    check(w, u)?;
    let m = w.len();
    w.iter()
        .map(|wj| {
            let base = &(wj - &u[0]) * &(wj - &u[1]);
            u[2..m + 2].iter().map(|ut| Ok((&base * &(wj - ut)).inv()?)).collect()
        })
        .collect()
}

/// `prod_j 1/((w_j-u_1)(w_j-u_2))` times the Cauchy determinant of `1/(w_j - u_t)`.
pub fn cauchy_closed_form(w: &[Elem], u: &[Elem]) -> Result<Elem, PushError> {
    check(w, u)?;
    let m = w.len();
    let y = &u[2..m + 2];
    let mut num = w[0].field().one();
    let mut den = w[0].field().one();
    for (i, wi) in w.iter().enumerate() {
        den = &den * &(&(wi - &u[0]) * &(wi - &u[1]));
        for j in (i + 1)..m {
            num = &num * &(&(&w[j] - wi) * &(&y[i] - &y[j]));
        }
        for yt in y {
            den = &den * &(wi - yt);
        }
    }
    Ok(num.checked_div(&den)?)
}

/// Both evaluations of the determinant from the full-rank argument.
pub fn cauchy_like_det(w: &[Elem], u: &[Elem]) -> Result<CauchyReport, PushError> {
    let mat = cauchy_matrix(w, u)?;
    let field: Field = mat[0][0].field().clone();
    Ok(CauchyReport { direct: linalg::det_expand(&mat, &field), closed: cauchy_closed_form(w, u)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::rat;

    fn ints(v: &[i64]) -> Vec<Elem> {
        let q = Field::rationals();
        v.iter().map(|&x| q.from_int(x)).collect()
    }

    #[test]
    fn two_by_two() {
        let r = cauchy_like_det(&ints(&[4, 5]), &ints(&[0, 1, 2, 3])).unwrap();
        assert_eq!(r.direct, Field::rationals().from_rational(rat(-1, 2880)));
        assert!(r.agree());
    }

    #[test]
    fn one_by_one() {
        let r = cauchy_like_det(&ints(&[3]), &ints(&[0, 1, 2])).unwrap();
        assert_eq!(r.closed, Field::rationals().from_rational(rat(1, 6)));
        assert!(r.agree());
    }

    #[test]
    fn degenerate() {
        assert!(cauchy_like_det(&ints(&[2]), &ints(&[0, 1, 2])).is_err());
        assert!(cauchy_like_det(&ints(&[4, 5]), &ints(&[0, 1, 2])).is_err());
        assert!(cauchy_like_det(&ints(&[4, 4]), &ints(&[0, 1, 2, 3])).is_err());
    }
}
