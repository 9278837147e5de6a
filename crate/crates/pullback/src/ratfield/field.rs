use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible modulo the defining polynomial")]
    NonInvertible,
    #[error("modulus is not squarefree")]
    NotSquarefree,
    #[error("modulus must have positive degree")]
    ConstantModulus,
    #[error("operands live in unrelated fields")]
    FieldMismatch,
}

enum Kind {
    Rationals,
    Algebraic { base: Field, modulus: Poly, name: String },
    Function { base: Field, name: String },
}

/// Handle to a field in a tower. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Kind>);

#[derive(Clone)]
enum Repr {
    Q(BigRational),
    Alg(Poly),
    Func(Box<RatFunc>),
}

/// An element of a [`Field`], stored in canonical reduced form.
#[derive(Clone)]
pub struct Elem {
    field: Field,
    repr: Repr,
}

impl Field {
    pub fn rationals() -> Field {
        static Q: OnceLock<Field> = OnceLock::new();
        Q.get_or_init(|| Field(Arc::new(Kind::Rationals))).clone()
    }

    /// `base[name]/(modulus)`. The modulus is made monic and must be squarefree.
    pub fn algebraic(modulus: &Poly, name: &str) -> Result<Field, ArithError> {
        let base = modulus.field().clone();
        match modulus.degree() {
            None | Some(0) => return Err(ArithError::ConstantModulus),
            _ => {}
        }
        let m = modulus.monic();
        let g = Poly::gcd(&m, &m.derivative());
        if g.degree() != Some(0) {
            return Err(ArithError::NotSquarefree);
        }
        Ok(Field(Arc::new(Kind::Algebraic { base, modulus: m, name: name.to_string() })))
    }

    /// The rational function field `base(name)`.
    pub fn function(base: &Field, name: &str) -> Field {
        Field(Arc::new(Kind::Function { base: base.clone(), name: name.to_string() }))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(*self.0, Kind::Rationals)
    }

    pub(crate) fn kind_name(&self) -> &'static str {
        match &*self.0 {
            Kind::Rationals => "rationals",
            Kind::Algebraic { .. } => "algebraic",
            Kind::Function { .. } => "function",
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            Kind::Rationals => None,
            Kind::Algebraic { base, .. } | Kind::Function { base, .. } => Some(base),
        }
    }

    /// Name of the adjoined generator or transcendental.
    pub fn name(&self) -> Option<&str> {
        match &*self.0 {
            Kind::Rationals => None,
            Kind::Algebraic { name, .. } | Kind::Function { name, .. } => Some(name),
        }
    }

    /// Defining polynomial of an algebraic extension.
    pub fn modulus(&self) -> Option<&Poly> {
        match &*self.0 {
            Kind::Algebraic { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    /// Degree over the immediate base; 0 for rationals and function fields.
    pub fn degree_over_base(&self) -> usize {
        self.modulus().and_then(|m| m.degree()).unwrap_or(0)
    }

    pub fn zero(&self) -> Elem {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem { field: self.clone(), repr: Repr::Q(q) },
            Kind::Algebraic { base, .. } => {
                let c = base.from_rational(q);
                self.wrap_alg(Poly::constant(c))
            }
            Kind::Function { base, .. } => {
                let c = base.from_rational(q);
                Elem { field: self.clone(), repr: Repr::Func(Box::new(RatFunc::constant(&c))) }
            }
        }
    }

    /// The adjoined generator (`w` of an algebraic extension, `a` of `K(a)`).
    pub fn gen(&self) -> Option<Elem> {
        match &*self.0 {
            Kind::Rationals => None,
            Kind::Algebraic { base, modulus, .. } => {
                Some(self.wrap_alg(Poly::x(base).rem(modulus).expect("monic modulus")))
            }
            Kind::Function { base, .. } => Some(Elem {
                field: self.clone(),
                repr: Repr::Func(Box::new(RatFunc::x(base))),
            }),
        }
    }

    /// Finds the generator called `name` anywhere in the tower, as an element of `self`.
    pub fn generator_named(&self, name: &str) -> Option<Elem> {
        let mut f = self.clone();
        loop {
            if f.name() == Some(name) {
                return self.coerce(&f.gen()?);
            }
            f = f.base()?.clone();
        }
    }

    /// All generator names from the top of the tower down.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut f = self.clone();
        while let Some(n) = f.name() {
            out.push(n.to_string());
            f = f.base().unwrap().clone();
        }
        out
    }

    fn wrap_alg(&self, p: Poly) -> Elem {
        Elem { field: self.clone(), repr: Repr::Alg(p) }
    }

    /// Element of this algebraic field with the given polynomial representative over the base.
    pub fn from_poly_rep(&self, p: &Poly) -> Elem {
        let m = self.modulus().expect("algebraic field");
        let p = p.embed(self.base().unwrap());
        self.wrap_alg(p.rem(m).expect("monic modulus"))
    }

    /// Element `r(a)` of the function field `base(a)`.
    pub fn from_ratfunc(&self, r: &RatFunc) -> Elem {
        assert_eq!(self.kind_name(), "function");
        let r = r.embed(self.base().unwrap());
        Elem { field: self.clone(), repr: Repr::Func(Box::new(r)) }
    }

    /// Image of a base-field element.
    pub fn embed(&self, c: &Elem) -> Elem {
        match &*self.0 {
            Kind::Rationals => c.clone(),
            Kind::Algebraic { .. } => self.wrap_alg(Poly::constant(c.clone())),
            Kind::Function { .. } => {
                Elem { field: self.clone(), repr: Repr::Func(Box::new(RatFunc::constant(c))) }
            }
        }
    }

    /// Moves `e` into this field if its field is a subfield along the tower.
    pub fn coerce(&self, e: &Elem) -> Option<Elem> {
        if *self == e.field {
            return Some(e.clone());
        }
        let base = self.base()?;
        let c = base.coerce(e)?;
        Some(self.embed(&c))
    }

    /// True if `other` appears in this field's tower (including itself).
    pub fn contains_field(&self, other: &Field) -> bool {
        let mut f = self.clone();
        loop {
            if f == *other {
                return true;
            }
            match f.base() {
                Some(b) => f = b.clone(),
                None => return false,
            }
        }
    }

    /// Trace from this algebraic extension down to its base.
    pub fn trace(&self, e: &Elem) -> Elem {
        let m = self.modulus().expect("trace needs an algebraic extension");
        let base = self.base().unwrap();
        let e = self.coerce(e).expect("element of this field");
        let h = e.alg_rep().unwrap();
        let sums = power_sums(m);
        let mut acc = base.zero();
        for (k, pk) in sums.iter().enumerate() {
            let c = h.coeff(k);
            if !c.is_zero() {
                acc = &acc + &(&c * pk);
            }
        }
        acc
    }

    /// Norm down to the base, computed from the characteristic polynomial of multiplication.
    pub fn norm(&self, e: &Elem) -> Elem {
        let mat = self.mult_matrix(e);
        super::linalg::det(&mat, self.base().unwrap())
    }

    /// Matrix of multiplication by `e` on the power basis, columns are images of `w^j`.
    pub fn mult_matrix(&self, e: &Elem) -> Vec<Vec<Elem>> {
        let n = self.degree_over_base();
        let g = self.gen().unwrap();
        let mut col = self.coerce(e).unwrap();
        let mut cols = Vec::with_capacity(n);
        for _ in 0..n {
            let rep = col.alg_rep().unwrap().clone();
            cols.push((0..n).map(|i| rep.coeff(i)).collect::<Vec<_>>());
            col = &col * &g;
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Square root inside this field, if one exists and can be found.
    ///
    /// Complete for rationals and for towers of degree-2 steps over them;
    /// elsewhere only base-field roots are found.
    pub fn sqrt(&self, e: &Elem) -> Option<Elem> {
        let e = self.coerce(e)?;
        if e.is_zero() {
            return Some(e);
        }
        match &*self.0 {
            Kind::Rationals => {
                let q = e.as_q().unwrap();
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &n * &n == *q.numer() && &d * &d == *q.denom() {
                    Some(self.from_rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Kind::Function { base, .. } => {
                let r = e.func_rep().unwrap();
                if r.is_constant() {
                    let c = base.sqrt(&r.num().coeff(0))?;
                    return Some(self.embed(&c));
                }
                None
            }
            Kind::Algebraic { base, modulus, .. } => {
                let rep = e.alg_rep().unwrap();
                if rep.degree() == Some(0) {
                    if let Some(c) = base.sqrt(&rep.coeff(0)) {
                        return Some(self.embed(&c));
                    }
                }
                if modulus.degree() != Some(2) {
                    return None;
                }
                // x = (D + n)/t where n = N(x), t = Tr(x), t^2 = Tr(D) + 2n, n^2 = N(D).
                let tr = self.trace(&e);
                let conj = &self.embed(&tr) - &e;
                let nd = (&e * &conj).alg_rep().unwrap().coeff(0);
                let nu = base.sqrt(&nd)?;
                for s in [nu.clone(), -&nu] {
                    let t2 = &tr + &(&s + &s);
                    if let Some(t) = base.sqrt(&t2) {
                        if !t.is_zero() {
                            let x = (&e + &self.embed(&s)).checked_div(&self.embed(&t)).ok()?;
                            if &x * &x == e {
                                return Some(x);
                            }
                        }
                    }
                }
                // Trace-zero root: x = c*(2w + p) with c in the base.
                if rep.degree() == Some(0) {
                    let p = modulus.coeff(1);
                    let g = self.gen().unwrap();
                    let delta = &(&g + &g) + &self.embed(&p);
                    let d2 = (&delta * &delta).alg_rep().unwrap().coeff(0);
                    let c = base.sqrt(&rep.coeff(0).checked_div(&d2).ok()?)?;
                    let x = &self.embed(&c) * &delta;
                    if &x * &x == e {
                        return Some(x);
                    }
                }
                None
            }
        }
    }

    /// Structural equality behind [`PartialEq`].
    fn same(&self, other: &Field) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Kind::Rationals, Kind::Rationals) => true,
            (
                Kind::Algebraic { base: b1, modulus: m1, name: n1 },
                Kind::Algebraic { base: b2, modulus: m2, name: n2 },
            ) => n1 == n2 && b1 == b2 && m1 == m2,
            (Kind::Function { base: b1, name: n1 }, Kind::Function { base: b2, name: n2 }) => {
                n1 == n2 && b1 == b2
            }
            _ => false,
        }
    }
}

/// Power sums `p_0..p_{n-1}` of the roots of a monic polynomial of degree `n`.
fn power_sums(m: &Poly) -> Vec<Elem> {
    let n = m.degree().unwrap();
    let f = m.field();
    let mut p: Vec<Elem> = vec![f.from_int(n as i64)];
    for k in 1..n {
        let mut acc = &f.from_int(k as i64) * &m.coeff(n - k);
        for i in 1..k {
            acc = &acc + &(&m.coeff(n - i) * &p[k - i]);
        }
        p.push(-&acc);
    }
    p
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        self.same(other)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Algebraic { base, modulus, name } => {
                write!(f, "{}[{}]/({})", base, name, modulus.display(name))
            }
            Kind::Function { base, name } => write!(f, "{}({})", base, name),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn lift(a: &Elem, b: &Elem) -> (Elem, Elem) {
    if a.field == b.field {
        return (a.clone(), b.clone());
    }
    if let Some(bb) = a.field.coerce(b) {
        return (a.clone(), bb);
    }
    if let Some(aa) = b.field.coerce(a) {
        return (aa, b.clone());
    }
    panic!("{}: {} vs {}", ArithError::FieldMismatch, a.field, b.field)
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_zero(),
            Repr::Alg(p) => p.is_zero(),
            Repr::Func(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_q().map(|q| q.is_one()).unwrap_or(false)
    }

    /// The rational value if this element lies in the prime field.
    pub fn as_q(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Q(q) => Some(q.clone()),
            Repr::Alg(p) => match p.degree() {
                None => Some(BigRational::zero()),
                Some(0) => p.coeff(0).as_q(),
                _ => None,
            },
            Repr::Func(r) => {
                if r.is_constant() {
                    r.num().coeff(0).as_q()
                } else {
                    None
                }
            }
        }
    }

    /// Value in the base field when this element is a constant of the top layer.
    pub fn as_base(&self) -> Option<Elem> {
        match &self.repr {
            Repr::Q(_) => None,
            Repr::Alg(p) => match p.degree() {
                None => Some(self.field.base().unwrap().zero()),
                Some(0) => Some(p.coeff(0)),
                _ => None,
            },
            Repr::Func(r) => {
                if r.is_constant() {
                    Some(r.num().coeff(0))
                } else {
                    None
                }
            }
        }
    }

    /// Moves this element down the tower as far as possible.
    pub fn lower_into(&self, target: &Field) -> Option<Elem> {
        let mut e = self.clone();
        loop {
            if e.field == *target {
                return Some(e);
            }
            e = e.as_base()?;
        }
    }

    pub(crate) fn alg_rep(&self) -> Option<&Poly> {
        match &self.repr {
            Repr::Alg(p) => Some(p),
            _ => None,
        }
    }

    /// Polynomial representative over the base of an algebraic element.
    pub fn poly_rep(&self) -> Option<Poly> {
        self.alg_rep().cloned()
    }

    /// The rational function behind an element of `K(a)`.
    pub fn func_rep(&self) -> Option<&RatFunc> {
        match &self.repr {
            Repr::Func(r) => Some(r),
            _ => None,
        }
    }

    fn add_same(a: &Elem, b: &Elem) -> Elem {
        let repr = match (&a.repr, &b.repr) {
            (Repr::Q(x), Repr::Q(y)) => Repr::Q(x + y),
            (Repr::Alg(x), Repr::Alg(y)) => Repr::Alg(x + y),
            (Repr::Func(x), Repr::Func(y)) => Repr::Func(Box::new(&**x + &**y)),
            _ => unreachable!(),
        };
        Elem { field: a.field.clone(), repr }
    }

    fn mul_same(a: &Elem, b: &Elem) -> Elem {
        let repr = match (&a.repr, &b.repr) {
            (Repr::Q(x), Repr::Q(y)) => Repr::Q(x * y),
            (Repr::Alg(x), Repr::Alg(y)) => {
                let m = a.field.modulus().unwrap();
                Repr::Alg((x * y).rem(m).expect("monic modulus"))
            }
            (Repr::Func(x), Repr::Func(y)) => Repr::Func(Box::new(&**x * &**y)),
            _ => unreachable!(),
        };
        Elem { field: a.field.clone(), repr }
    }

    fn add_impl(a: &Elem, b: &Elem) -> Elem {
        if a.field == b.field {
            return Elem::add_same(a, b);
        }
        let (x, y) = lift(a, b);
        Elem::add_same(&x, &y)
    }

    fn sub_impl(a: &Elem, b: &Elem) -> Elem {
        Elem::add_impl(a, &-b)
    }

    fn mul_impl(a: &Elem, b: &Elem) -> Elem {
        if a.field == b.field {
            return Elem::mul_same(a, b);
        }
        let (x, y) = lift(a, b);
        Elem::mul_same(&x, &y)
    }

    fn div_impl(a: &Elem, b: &Elem) -> Elem {
        a.checked_div(b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn inv(&self) -> Result<Elem, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Q(q) => Repr::Q(q.recip()),
            Repr::Alg(p) => {
                let m = self.field.modulus().unwrap();
                let (g, s, _) = Poly::ext_gcd(p, m);
                if g.degree() != Some(0) {
                    return Err(ArithError::NonInvertible);
                }
                Repr::Alg(s.rem(m).expect("monic modulus"))
            }
            Repr::Func(r) => Repr::Func(Box::new(r.inv()?)),
        };
        Ok(Elem { field: self.field.clone(), repr })
    }

    pub fn checked_div(&self, other: &Elem) -> Result<Elem, ArithError> {
        let (a, b) = lift(self, other);
        Ok(Elem::mul_same(&a, &b.inv()?))
    }

    pub fn pow(&self, n: u32) -> Elem {
        let mut result = self.field.one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    pub fn powi(&self, n: i64) -> Result<Elem, ArithError> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.inv()?.pow((-n) as u32))
        }
    }

    pub fn sqrt(&self) -> Option<Elem> {
        self.field.sqrt(self)
    }

    /// Whether printing needs parentheses when used as a factor.
    pub(crate) fn is_atomic(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_integer() && !q.is_negative(),
            Repr::Alg(p) => match p.degree() {
                None => true,
                Some(0) => p.coeff(0).is_atomic(),
                _ => p.terms() == 1 && p.lc().map(|c| c.is_one()).unwrap_or(false),
            },
            Repr::Func(r) => {
                r.den().degree() == Some(0)
                    && r.num().terms() <= 1
                    && r.num().lc().map(|c| c.is_one()).unwrap_or(true)
            }
        }
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Elem) -> bool {
        let (a, b) = if self.field == other.field {
            (self.clone(), other.clone())
        } else if let Some(bb) = self.field.coerce(other) {
            (self.clone(), bb)
        } else if let Some(aa) = other.field.coerce(self) {
            (aa, other.clone())
        } else {
            return false;
        };
        match (&a.repr, &b.repr) {
            (Repr::Q(x), Repr::Q(y)) => x == y,
            (Repr::Alg(x), Repr::Alg(y)) => x == y,
            (Repr::Func(x), Repr::Func(y)) => x == y,
            _ => false,
        }
    }
}

forward_binop!(Elem, Add, add, Elem::add_impl);
forward_binop!(Elem, Sub, sub, Elem::sub_impl);
forward_binop!(Elem, Mul, mul, Elem::mul_impl);
forward_binop!(Elem, Div, div, Elem::div_impl);

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        let repr = match &self.repr {
            Repr::Q(q) => Repr::Q(-q),
            Repr::Alg(p) => Repr::Alg(-p),
            Repr::Func(r) => Repr::Func(Box::new(-&**r)),
        };
        Elem { field: self.field.clone(), repr }
    }
}

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Q(q) => write!(f, "{}", q),
            Repr::Alg(p) => write!(f, "{}", p.display(self.field.name().unwrap())),
            Repr::Func(r) => write!(f, "{}", r.display(self.field.name().unwrap())),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qw() -> Field {
        let q = Field::rationals();
        Field::algebraic(&Poly::from_ints(&q, &[1, 1, 1]), "w").unwrap()
    }

    #[test]
    fn omega_arithmetic() {
        let k = qw();
        let w = k.gen().unwrap();
        assert_eq!(&w * &w, -&w - k.one());
        let inv = (k.one() + &w).inv().unwrap();
        assert_eq!(inv, -&w);
        assert_eq!(w.pow(3), k.one());
    }

    #[test]
    fn rational_sum() {
        let q = Field::rationals();
        let a = q.from_rational(super::super::rat(2, 3));
        let b = q.from_rational(super::super::rat(1, 6));
        assert_eq!(a + b, q.from_rational(super::super::rat(5, 6)));
    }

    #[test]
    fn zero_divisor_is_reported() {
        let q = Field::rationals();
        let k = Field::algebraic(&Poly::from_ints(&q, &[-1, 0, 1]), "s").unwrap();
        let s = k.gen().unwrap();
        assert_eq!((&s - &k.one()).inv().unwrap_err(), ArithError::NonInvertible);
        assert_eq!(k.zero().inv().unwrap_err(), ArithError::DivisionByZero);
    }

    #[test]
    fn modulus_must_be_squarefree() {
        let q = Field::rationals();
        let m = Poly::from_ints(&q, &[1, 2, 1]);
        assert_eq!(Field::algebraic(&m, "w").unwrap_err(), ArithError::NotSquarefree);
    }

    #[test]
    fn square_roots_in_quadratic_fields() {
        let k = qw();
        let m3 = k.from_int(-3);
        let r = k.sqrt(&m3).unwrap();
        assert_eq!(&r * &r, m3);
        let w = k.gen().unwrap();
        let sq = &(&w + &k.from_int(2)) * &(&w + &k.from_int(2));
        let r = k.sqrt(&sq).unwrap();
        assert_eq!(&r * &r, sq);
        assert!(k.sqrt(&k.from_int(2)).is_none());
    }

    #[test]
    fn trace_and_norm() {
        let k = qw();
        let w = k.gen().unwrap();
        assert_eq!(k.trace(&w), Field::rationals().from_int(-1));
        assert_eq!(k.norm(&w), Field::rationals().from_int(1));
        assert_eq!(k.trace(&k.one()), Field::rationals().from_int(2));
    }

    #[test]
    fn function_field_tower() {
        let k = qw();
        let ka = Field::function(&k, "a");
        let a = ka.gen().unwrap();
        let w = ka.generator_named("w").unwrap();
        let x = (&a + &w).inv().unwrap();
        assert_eq!(&x * &(&a + &w), ka.one());
    }
}
