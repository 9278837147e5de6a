//! Exact arithmetic over towers of fields.
//!
//! A [`Field`] is either the rationals, a simple algebraic extension
//! `base[w]/(m(w))` with `m` monic and squarefree, or a rational function
//! field `base(a)`. Towers nest freely, so `Q(w)(a)[b]/(b^2 - a^3 - 1)` is an
//! ordinary value. Elements carry a handle to their field and coerce upward
//! along the tower when mixed in arithmetic.
//!
//! Irreducibility of a modulus is never checked. Working modulo a reducible
//! polynomial is allowed and a zero divisor surfaces as
//! [`ArithError::NonInvertible`] when it is inverted.

macro_rules! forward_binop {
    ($t:ty, $tr:ident, $m:ident, $f:path) => {
        impl std::ops::$tr<&$t> for &$t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                $f(self, o)
            }
        }
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                $f(&self, &o)
            }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                $f(&self, o)
            }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                $f(self, &o)
            }
        }
    };
}

mod cyclotomic;
mod field;
pub mod linalg;
mod parse;
mod poly;
mod proj;
mod ratfunc;

pub use cyclotomic::cyclotomic;
pub use field::{ArithError, Elem, Field};
pub use parse::{parse_elem, parse_field, parse_point, parse_poly, parse_ratfunc, ParseError};
pub use poly::Poly;
pub use proj::{cross_ratio, CrossRatioError, ProjPoint};
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Extended Euclid on polynomials: returns `(g, s, t)` with `s*a + t*b = g`
/// and `g` monic (or zero when both inputs vanish).
pub fn poly_ext_euclid(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    Poly::ext_gcd(a, b)
}

/// Serializes an element as JSON: rationals as `"p/q"` strings, algebraic
/// elements as coefficient arrays over the base, function-field elements as
/// printed rational functions.
pub fn elem_to_json(e: &Elem) -> serde_json::Value {
    if let Some(q) = e.as_q() {
        return serde_json::Value::String(q.to_string());
    }
    match e.field().kind_name() {
        "algebraic" => {
            let p = e.alg_rep().expect("algebraic element");
            let deg = e.field().degree_over_base();
            let mut out = Vec::with_capacity(deg);
            for i in 0..deg {
                out.push(elem_to_json(&p.coeff(i)));
            }
            serde_json::Value::Array(out)
        }
        _ => serde_json::Value::String(e.to_string()),
    }
}
