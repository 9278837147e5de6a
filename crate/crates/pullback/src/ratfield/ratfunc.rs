use std::fmt;

use super::field::{ArithError, Elem, Field};
use super::poly::Poly;
use super::proj::ProjPoint;

/// Reduced quotient `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: &Poly, den: &Poly) -> Result<RatFunc, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (num, den) = if num.field() == den.field() {
            (num.clone(), den.clone())
        } else if den.field().contains_field(num.field()) {
            (num.embed(den.field()), den.clone())
        } else {
            (num.clone(), den.embed(num.field()))
        };
        if num.is_zero() {
            return Ok(RatFunc::zero(num.field()));
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let l = d.lc().unwrap().clone();
        if !l.is_one() {
            let inv = l.inv()?;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: &Poly) -> RatFunc {
        RatFunc { num: p.clone(), den: Poly::one(p.field()) }
    }

    pub fn constant(c: &Elem) -> RatFunc {
        RatFunc::from_poly(&Poly::constant(c.clone()))
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(&Poly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(&Poly::one(field))
    }

    pub fn x(field: &Field) -> RatFunc {
        RatFunc::from_poly(&Poly::x(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `max(deg num, deg den)`, the degree of the induced map of the sphere.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn embed(&self, field: &Field) -> RatFunc {
        RatFunc { num: self.num.embed(field), den: self.den.embed(field) }
    }

    fn add_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.den == b.den {
            return RatFunc::new(&(&a.num + &b.num), &a.den).unwrap();
        }
        let n = &(&a.num * &b.den) + &(&b.num * &a.den);
        RatFunc::new(&n, &(&a.den * &b.den)).unwrap()
    }

    fn sub_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
        RatFunc::add_impl(a, &-b)
    }

    fn mul_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
        RatFunc::new(&(&a.num * &b.num), &(&a.den * &b.den)).unwrap()
    }

    fn div_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.checked_div(b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RatFunc::new(&(&self.num * &other.den), &(&self.den * &other.num))
    }

    pub fn inv(&self) -> Result<RatFunc, ArithError> {
        RatFunc::new(&self.den, &self.num)
    }

    pub fn scale(&self, c: &Elem) -> RatFunc {
        RatFunc::new(&self.num.scale(c), &self.den).unwrap()
    }

    pub fn pow(&self, n: i64) -> Result<RatFunc, ArithError> {
        if n < 0 {
            let r = self.inv()?;
            return Ok(RatFunc { num: r.num.pow((-n) as u32), den: r.den.pow((-n) as u32) });
        }
        Ok(RatFunc { num: self.num.pow(n as u32), den: self.den.pow(n as u32) })
    }

    /// Value at a finite point, `None` at a pole.
    pub fn eval(&self, x: &Elem) -> Option<Elem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).checked_div(&d).unwrap())
    }

    /// Value at infinity as a point of the sphere.
    pub fn value_at_infinity(&self) -> ProjPoint {
        let (dn, dd) = (self.num.deg(), self.den.deg());
        if dn > dd {
            ProjPoint::Infinity
        } else if dn < dd {
            ProjPoint::Finite(self.field().zero())
        } else {
            ProjPoint::Finite(self.num.lc().unwrap().checked_div(self.den.lc().unwrap()).unwrap())
        }
    }

    /// Value at a point of the sphere.
    pub fn eval_proj(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Infinity => self.value_at_infinity(),
            ProjPoint::Finite(x) => match self.eval(x) {
                Some(v) => ProjPoint::Finite(v),
                None => ProjPoint::Infinity,
            },
        }
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(&n, &(&self.den * &self.den)).unwrap()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let n = self.degree();
        let (p, q) = (&inner.num, &inner.den);
        let mut qpows = vec![Poly::one(p.field())];
        let mut ppows = vec![Poly::one(p.field())];
        for i in 1..=n {
            qpows.push(&qpows[i - 1] * q);
            ppows.push(&ppows[i - 1] * p);
        }
        let homog = |f: &Poly| {
            let mut acc = Poly::zero(p.field());
            for (i, c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&ppows[i] * &qpows[n - i]).scale(c);
                }
            }
            acc
        };
        RatFunc::new(&homog(&self.num), &homog(&self.den)).expect("composition of a nonconstant map")
    }

    pub fn display<'a>(&'a self, var: &'a str) -> RatFuncDisplay<'a> {
        RatFuncDisplay { r: self, var }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &RatFunc) -> bool {
        self.num == other.num && self.den == other.den
    }
}

forward_binop!(RatFunc, Add, add, RatFunc::add_impl);
forward_binop!(RatFunc, Sub, sub, RatFunc::sub_impl);
forward_binop!(RatFunc, Mul, mul, RatFunc::mul_impl);
forward_binop!(RatFunc, Div, div, RatFunc::div_impl);

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

pub struct RatFuncDisplay<'a> {
    r: &'a RatFunc,
    var: &'a str,
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.den.is_one() {
            write!(f, "{}", self.r.num.display(self.var))
        } else {
            write!(f, "({})/({})", self.r.num.display(self.var), self.r.den.display(self.var))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factors() {
        let q = Field::rationals();
        let r = RatFunc::new(&Poly::from_ints(&q, &[-1, 0, 1]), &Poly::from_ints(&q, &[-1, 1])).unwrap();
        assert_eq!(r, RatFunc::from_poly(&Poly::from_ints(&q, &[1, 1])));
        let r = RatFunc::new(&Poly::from_ints(&q, &[2]), &Poly::from_ints(&q, &[4, 2])).unwrap();
        assert!(r.den().lc().unwrap().is_one());
    }

    #[test]
    fn composition_and_infinity() {
        let q = Field::rationals();
        let z = RatFunc::x(&q);
        let inv = z.inv().unwrap();
        let sq = &z * &z;
        assert_eq!(sq.compose(&inv), (&z * &z).inv().unwrap());
        assert_eq!(inv.value_at_infinity(), ProjPoint::Finite(q.zero()));
        assert_eq!(sq.eval_proj(&ProjPoint::Infinity), ProjPoint::Infinity);
    }
}
