//! Gaussian elimination over an exact field.

use super::field::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

fn echelon(m: &Matrix) -> (Matrix, usize, bool) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut odd = false;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        if p != rank {
            a.swap(p, rank);
            odd = !odd;
        }
        let inv = a[rank][c].inv().expect("nonzero pivot");
        for r in (rank + 1)..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..cols {
                let v = &a[r][k] - &(&f * &a[rank][k]);
                a[r][k] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (a, rank, odd)
}

pub fn rank(m: &Matrix) -> usize {
    echelon(m).1
}

/// Determinant of a square matrix; `field` supplies the value for the empty matrix.
pub fn det(m: &Matrix, field: &Field) -> Elem {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return field.one();
    }
    let (a, rank, odd) = echelon(m);
    if rank < n {
        return field.zero();
    }
    let mut d = if odd { -a[0][0].field().one() } else { a[0][0].field().one() };
    for (i, row) in a.iter().enumerate() {
        d = &d * &row[i];
    }
    d
}

/// Cofactor expansion along the first row. Exponential; meant for small
/// matrices and as an independent check on [`det`].
pub fn det_expand(m: &Matrix, field: &Field) -> Elem {
    let n = m.len();
    if n == 0 {
        return field.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = field.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Matrix = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * &det_expand(&minor, field);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_det() {
        let q = Field::rationals();
        let e = |n| q.from_int(n);
        let m = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(6)], vec![e(0), e(1), e(1)]];
        assert_eq!(rank(&m), 2);
        assert!(det(&m, &q).is_zero());
        let m = vec![vec![e(0), e(2)], vec![e(3), e(1)]];
        assert_eq!(det(&m, &q), e(-6));
        assert_eq!(det_expand(&m, &q), e(-6));
    }
}
