use super::field::Field;
use super::poly::Poly;

/// The cyclotomic polynomial `Φ_d` over the rationals, in the variable of
/// the returned polynomial.
pub fn cyclotomic(d: u32) -> Poly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let q = Field::rationals();
    let mut coeffs = vec![0i64; d as usize + 1];
    coeffs[0] = -1;
    coeffs[d as usize] = 1;
    let mut p = Poly::from_ints(&q, &coeffs);
    for e in 1..d {
        if d % e == 0 {
            p = p.div_exact(&cyclotomic(e));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let q = Field::rationals();
        assert_eq!(cyclotomic(3), Poly::from_ints(&q, &[1, 1, 1]));
        assert_eq!(cyclotomic(4), Poly::from_ints(&q, &[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::from_ints(&q, &[1, -1, 1]));
        assert_eq!(cyclotomic(2), Poly::from_ints(&q, &[1, 1]));
        assert_eq!(cyclotomic(12).degree(), Some(4));
    }
}
