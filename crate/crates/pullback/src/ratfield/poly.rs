use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::field::{ArithError, Elem, Field};

/// Dense univariate polynomial, coefficients stored lowest degree first with
/// no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Poly {
        let coeffs = coeffs
            .into_iter()
            .map(|c| field.coerce(&c).expect("coefficient outside the polynomial field"))
            .collect();
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn from_rationals(field: &Field, coeffs: &[BigRational]) -> Poly {
        Poly::new(field, coeffs.iter().map(|c| field.from_rational(c.clone())).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Elem) -> Poly {
        let mut p = Poly { field: c.field().clone(), coeffs: vec![c] };
        p.trim();
        p
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![field.zero(), field.one()] }
    }

    pub fn monomial(c: Elem, k: usize) -> Poly {
        let f = c.field().clone();
        let mut coeffs = vec![f.zero(); k];
        coeffs.push(c);
        let mut p = Poly { field: f, coeffs };
        p.trim();
        p
    }

    /// `x - r`.
    pub fn linear_root(r: &Elem) -> Poly {
        Poly { field: r.field().clone(), coeffs: vec![-r, r.field().one()] }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    /// Number of nonzero terms.
    pub fn terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Same polynomial with coefficients moved into a larger field.
    pub fn embed(&self, field: &Field) -> Poly {
        if self.field == *field {
            return self.clone();
        }
        Poly::new(field, self.coeffs.clone())
    }

    fn lift(a: &Poly, b: &Poly) -> (Poly, Poly) {
        if a.field == b.field {
            (a.clone(), b.clone())
        } else if b.field.contains_field(&a.field) {
            (a.embed(&b.field), b.clone())
        } else if a.field.contains_field(&b.field) {
            (a.clone(), b.embed(&a.field))
        } else {
            panic!("{}: {} vs {}", ArithError::FieldMismatch, a.field, b.field)
        }
    }

    fn add_impl(a: &Poly, b: &Poly) -> Poly {
        if a.field != b.field {
            let (x, y) = Poly::lift(a, b);
            return Poly::add_impl(&x, &y);
        }
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        let mut p = Poly { field: a.field.clone(), coeffs };
        p.trim();
        p
    }

    fn sub_impl(a: &Poly, b: &Poly) -> Poly {
        Poly::add_impl(a, &-b)
    }

    fn mul_impl(a: &Poly, b: &Poly) -> Poly {
        if a.field != b.field {
            let (x, y) = Poly::lift(a, b);
            return Poly::mul_impl(&x, &y);
        }
        if a.is_zero() || b.is_zero() {
            return Poly::zero(&a.field);
        }
        let mut coeffs = vec![a.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
        let mut p = Poly { field: a.field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        if c.field() != &self.field && !self.field.contains_field(c.field()) {
            return self.embed(c.field()).scale(c);
        }
        let mut p = Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        p.trim();
        p
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), ArithError> {
        if self.field != d.field {
            let (x, y) = Poly::lift(self, d);
            return x.divrem(&y);
        }
        let dl = d.lc().ok_or(ArithError::DivisionByZero)?;
        let dn = d.coeffs.len() - 1;
        let inv = dl.inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dn {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    if !dj.is_zero() {
                        r[k + j] = &r[k + j] - &(&c * dj);
                    }
                }
            }
            q[k] = c;
        }
        r.truncate(dn);
        let mut qp = Poly { field: self.field.clone(), coeffs: q };
        let mut rp = Poly { field: self.field.clone(), coeffs: r };
        qp.trim();
        rp.trim();
        Ok((qp, rp))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, ArithError> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut r0, mut r1) = Poly::lift(a, b);
        while !r1.is_zero() {
            let r = r0.rem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
        }
        r0.monic()
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (a, b) = Poly::lift(a, b);
        let f = a.field.clone();
        let (mut r0, mut r1) = (a, b);
        let (mut s0, mut s1) = (Poly::one(&f), Poly::zero(&f));
        let (mut t0, mut t1) = (Poly::zero(&f), Poly::one(&f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = c.inv().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        let mut p = Poly { field: self.field.clone(), coeffs };
        p.trim();
        p
    }

    /// Horner evaluation; the point may live in an extension of the coefficient field.
    pub fn eval(&self, x: &Elem) -> Elem {
        let target = if x.field().contains_field(&self.field) { x.field().clone() } else { self.field.clone() };
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(inner.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one(&self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Yun's squarefree decomposition: entry `i` is the monic product of the
    /// distinct roots of multiplicity exactly `i + 1`.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = Poly::gcd(&f, &fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let a = Poly::gcd(&b, &d);
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = &c - &b.derivative();
            out.push(a);
        }
        while out.last().map(|p| p.is_one()).unwrap_or(false) {
            out.pop();
        }
        out
    }

    /// Product of the distinct roots, monic.
    pub fn radical(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::one(&self.field);
        }
        self.monic().div_exact(&Poly::gcd(self, &self.derivative()))
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Elem) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(r);
        let mut p = self.embed(lin.field());
        let mut k = 0;
        loop {
            let (q, rem) = p.divrem(&lin).expect("monic divisor");
            if !rem.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    pub fn display<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { p: self, var }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

forward_binop!(Poly, Add, add, Poly::add_impl);
forward_binop!(Poly, Sub, sub, Poly::sub_impl);
forward_binop!(Poly, Mul, mul, Poly::mul_impl);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        if p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..p.coeffs.len()).rev() {
            let c = &p.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            if let Some(q) = c.as_q() {
                let neg = q.is_negative();
                let a = q.abs();
                if neg {
                    write!(f, "-")?;
                } else if !first {
                    write!(f, "+")?;
                }
                let one = a == BigRational::from_integer(BigInt::from(1));
                if k == 0 {
                    write!(f, "{}", a)?;
                } else if one {
                    write!(f, "{}", mono)?;
                } else {
                    write!(f, "{}*{}", a, mono)?;
                }
            } else {
                if !first {
                    write!(f, "+")?;
                }
                let cs = if c.is_atomic() { c.to_string() } else { format!("({})", c) };
                if k == 0 {
                    write!(f, "{}", cs)?;
                } else {
                    write!(f, "{}*{}", cs, mono)?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn ext_euclid_examples() {
        let f = q();
        let a = Poly::from_ints(&f, &[1, 0, 1]);
        let b = Poly::x(&f);
        let (g, s, t) = Poly::ext_gcd(&a, &b);
        assert!(g.is_one());
        assert!(s.is_one());
        assert_eq!(t, Poly::from_ints(&f, &[0, -1]));
        let (g, s, t) = Poly::ext_gcd(&Poly::zero(&f), &b);
        assert_eq!(g, b);
        assert!(s.is_zero());
        assert!(t.is_one());
    }

    #[test]
    fn squarefree_parts() {
        let f = q();
        let x = Poly::x(&f);
        let one = Poly::one(&f);
        let p = &(&(&x - &one).pow(3) * &(&x + &one)) * &x.pow(2);
        let parts = p.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], &x + &one);
        assert_eq!(parts[1], x.clone());
        assert_eq!(parts[2], &x - &one);
        assert_eq!(p.radical(), &(&(&x - &one) * &(&x + &one)) * &x);
        assert_eq!(p.root_multiplicity(&f.one()), 3);
    }

    #[test]
    fn display_is_compact() {
        let f = q();
        let p = Poly::from_rationals(&f, &[super::super::rat(1, 2), super::super::rat(-3, 1), super::super::rat(0, 1), super::super::rat(1, 1)]);
        assert_eq!(p.to_string(), "z^3-3*z+1/2");
        assert_eq!(Poly::from_ints(&f, &[0, -1]).to_string(), "-z");
    }
}
