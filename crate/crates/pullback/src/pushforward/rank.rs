use serde_json::Value;

use super::{basis, check_admissible, common_field, expand_in_basis, pushforward, PushError};
use crate::ratfield::{elem_to_json, linalg, Elem, Field, ProjPoint, RatFunc};

/// Matrix of the pushforward from `Q(C - A)` to `Q(C - B)` in the bases of
/// [`super::qd_basis`]; column `j` is the image of the `j`-th source element.
#[derive(Clone, Debug)]
pub struct CoderivativeMatrix {
    pub field: Field,
    pub entries: linalg::Matrix,
    pub source_basis: Vec<basis::QuadraticDifferential>,
    pub target_basis: Vec<basis::QuadraticDifferential>,
}

impl CoderivativeMatrix {
    pub fn rows(&self) -> usize {
        self.target_basis.len()
    }

    pub fn cols(&self) -> usize {
        self.source_basis.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(|r| Value::Array(r.iter().map(elem_to_json).collect())).collect())
    }
}

/// Builds the matrix after checking that `(g, A, B)` is admissible.
pub fn coderivative_matrix(g: &RatFunc, a: &[ProjPoint], b: &[ProjPoint]) -> Result<CoderivativeMatrix, PushError> {
    let mut field = g.field().clone();
    for p in a.iter().chain(b).filter_map(|p| p.finite()) {
        field = common_field(&field, p.field())?;
    }
    let g = g.embed(&field);
    let a: Vec<ProjPoint> = a.iter().map(|p| p.embed(&field)).collect();
    let b: Vec<ProjPoint> = b.iter().map(|p| p.embed(&field)).collect();
    check_admissible(&g, &a, &b)?;
    let source = if a.len() < 4 { Vec::new() } else { basis::qd_basis(&a)? };
    let target = if b.len() < 4 { Vec::new() } else { basis::qd_basis(&b)? };
    let mut cols: Vec<Vec<Elem>> = Vec::new();
    for q in &source {
        let phi = pushforward(&g, &q.coeff)?;
        cols.push(if target.is_empty() {
            if !phi.is_zero() {
                return Err(PushError::AdmissibilityViolated("nonzero pushforward into a trivial space".into()));
            }
            Vec::new()
        } else {
            expand_in_basis(&phi, &b)?
        });
    }
    let entries = (0..target.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(CoderivativeMatrix { field, entries, source_basis: source, target_basis: target })
}

/// Exact rank of the coderivative of the pullback map at the marking `(A, B)` realized by `g`.
pub fn coderivative_rank(g: &RatFunc, a: &[ProjPoint], b: &[ProjPoint]) -> Result<(usize, CoderivativeMatrix), PushError> {
    let m = coderivative_matrix(g, a, b)?;
    Ok((m.rank(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{parse_field, parse_point, parse_ratfunc};

    fn pts(list: &[&str], k: &Field) -> Vec<ProjPoint> {
        list.iter().map(|s| parse_point(s, k).unwrap()).collect()
    }

    #[test]
    fn quartic_rank_zero() {
        let k = parse_field("w: w^2+w+1; c: c^3-2").unwrap();
        let g = parse_ratfunc("(-1*z*(z^3+2))/(2*z^3+1)", &k, "z").unwrap();
        let a = pts(&["0", "-c", "-c*w", "-c*w^2"], &k);
        let b = pts(&["0", "-1", "-w", "-w^2"], &k);
        let (r, mat) = coderivative_rank(&g, &a, &b).unwrap();
        assert_eq!(r, 0);
        assert_eq!((mat.rows(), mat.cols()), (1, 1));
        let (r, _) = coderivative_rank(&g, &b, &b).unwrap();
        assert_eq!(r, 1);
    }

    #[test]
    fn z2_plus_i_rank_one() {
        let k = parse_field("w^2+1").unwrap();
        let g = parse_ratfunc("z^2+w", &k, "z").unwrap();
        let m = pts(&["w", "w-1", "-w", "inf"], &k);
        assert_eq!(coderivative_rank(&g, &m, &m).unwrap().0, 1);
    }

    #[test]
    fn three_points() {
        let q = Field::rationals();
        let g = parse_ratfunc("z^2", &q, "z").unwrap();
        let m = pts(&["0", "1", "inf"], &q);
        let (r, mat) = coderivative_rank(&g, &m, &m).unwrap();
        assert_eq!((r, mat.cols()), (0, 0));
    }

    #[test]
    fn missing_critical_value() {
        let q = Field::rationals();
        let g = parse_ratfunc("z^2-1", &q, "z").unwrap();
        let m = pts(&["-1", "1", "2", "inf"], &q);
        let b = pts(&["0", "1", "2", "3", "inf"], &q);
        assert!(matches!(coderivative_rank(&g, &m, &b), Err(PushError::AdmissibilityViolated(_))));
    }
}
