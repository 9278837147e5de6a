use std::collections::BTreeMap;

use super::PushError;
use crate::ratfield::{Elem, Field};

/// Local pushforward under `w -> w^m` of `sum a_k w^k dw^2`.
///
/// The image is `sum b_j z^j dz^2` with `b_j = a_{m(j+2)-2} / m`; entries
/// `-1 <= j <= j_max` are returned, zeros included.
pub fn laurent_local_pushforward(m: u32, a: &BTreeMap<i64, Elem>, j_max: i64) -> Result<BTreeMap<i64, Elem>, PushError> {
    if m < 1 {
        return Err(PushError::DegenerateInput("local degree must be positive".into()));
    }
    if let Some((&k, _)) = a.iter().find(|(&k, v)| k < -1 && !v.is_zero()) {
        return Err(PushError::DegenerateInput(format!("coefficient at index {k} is a pole of order above one")));
    }
    let field = a.values().next().map(|e| e.field().clone()).unwrap_or_else(Field::rationals);
    let m = i64::from(m);
    let scale = field.from_int(m).inv()?;
    Ok((-1..=j_max)
        .map(|j| {
            let b = a.get(&(m * (j + 2) - 2)).map(|c| c * &scale).unwrap_or_else(|| field.zero());
            (j, b)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pushforward::pushforward;
    use crate::ratfield::{parse_ratfunc, rat, RatFunc};

    fn series(entries: &[(i64, i64)]) -> BTreeMap<i64, Elem> {
        let q = Field::rationals();
        entries.iter().map(|&(k, v)| (k, q.from_int(v))).collect()
    }

    #[test]
    fn formula_values() {
        let q = Field::rationals();
        let b = laurent_local_pushforward(2, &series(&[(0, 5)]), 3).unwrap();
        assert_eq!(b[&-1], q.from_rational(rat(5, 2)));
        let b = laurent_local_pushforward(3, &series(&[(1, 6)]), 3).unwrap();
        assert_eq!(b[&-1], q.from_int(2));
        let b = laurent_local_pushforward(2, &series(&[(-1, 1)]), 5).unwrap();
        assert!(b.values().all(|x| x.is_zero()));
    }

    #[test]
    fn matches_global_trace() {
        // w^k dw^2 pushed forward by w^m is a monomial in z.
        let q = Field::rationals();
        for m in 2..=4u32 {
            let g = parse_ratfunc(&format!("z^{m}"), &q, "z").unwrap();
            for k in -1..=8i64 {
                let qk = RatFunc::x(&q).pow(k).unwrap();
                let exact = pushforward(&g, &qk).unwrap();
                let local = laurent_local_pushforward(m, &series(&[(k, 1)]), 10).unwrap();
                let from_series = local
                    .iter()
                    .fold(RatFunc::zero(&q), |acc, (&j, c)| &acc + &RatFunc::x(&q).pow(j).unwrap().scale(c));
                assert_eq!(exact, from_series, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn rejects_double_pole() {
        assert!(laurent_local_pushforward(2, &series(&[(-2, 1)]), 3).is_err());
    }
}
