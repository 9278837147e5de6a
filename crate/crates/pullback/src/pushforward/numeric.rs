//! Multiprecision numerics: complex embeddings of exact elements, polynomial
//! roots, direct fiber sums, and the asymptotic constant at a simple critical point.

use num_rational::BigRational;
use rug::{Complex, Float, Integer};
use serde_json::{json, Value};

use super::PushError;
use crate::ratfield::{Elem, Field, Poly, RatFunc};

pub const DEFAULT_PRECISION: u32 = 256;

fn big_to_rug(n: &num_bigint::BigInt) -> Integer {
    Integer::from_str_radix(&n.to_str_radix(16), 16).expect("hex digits")
}

pub fn rational_to_complex(q: &BigRational, prec: u32) -> Complex {
    let r = rug::Rational::from((big_to_rug(q.numer()), big_to_rug(q.denom())));
    Complex::with_val(prec, (Float::with_val(prec, &r), 0))
}

/// Complex value of an element of the rationals or of an algebraic tower over them.
///
/// Each generator is sent to the root of its modulus with the largest
/// imaginary part (then the largest real part), so `w^2+w+1` gives
/// `w = exp(2 pi i / 3)` and `w^2+1` gives `w = i`.
pub fn to_complex(e: &Elem, prec: u32) -> Result<Complex, PushError> {
    let field = e.field();
    if let Some(q) = e.as_q() {
        return Ok(rational_to_complex(&q, prec));
    }
    let Some(m) = field.modulus() else {
        return Err(PushError::NumericFailure(format!("no complex embedding of {field}")));
    };
    let gen = preferred_root(m, prec)?;
    let rep = e.poly_rep().unwrap();
    let coeffs = rep.coeffs().iter().map(|c| to_complex(c, prec)).collect::<Result<Vec<_>, _>>()?;
    Ok(horner(&coeffs, &gen, prec).0)
}

fn preferred_root(m: &Poly, prec: u32) -> Result<Complex, PushError> {
    let coeffs = m.coeffs().iter().map(|c| to_complex(c, prec)).collect::<Result<Vec<_>, _>>()?;
    let roots = poly_roots(&coeffs, prec)?;
    let key = |z: &Complex| (z.imag().to_f64(), z.real().to_f64());
    Ok(roots
        .into_iter()
        .max_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap())
}

/// Value and derivative of the polynomial with coefficients `c` (low degree first).
pub fn horner(c: &[Complex], x: &Complex, prec: u32) -> (Complex, Complex) {
    let mut p = Complex::with_val(prec, 0);
    let mut dp = Complex::with_val(prec, 0);
    for a in c.iter().rev() {
        dp = Complex::with_val(prec, &dp * x) + &p;
        p = Complex::with_val(prec, &p * x) + a;
    }
    (p, dp)
}

fn abs(z: &Complex, prec: u32) -> Float {
    Float::with_val(prec, z.abs_ref())
}

/// All complex roots by Aberth iteration, to roughly `prec` bits.
pub fn poly_roots(coeffs: &[Complex], prec: u32) -> Result<Vec<Complex>, PushError> {
    let mut c: Vec<Complex> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = abs(&c[n], prec).to_f64();
    let radius = 1.0 + c[..n].iter().map(|a| abs(a, prec).to_f64() / lead).fold(0.0, f64::max);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex::with_val(prec, (radius * th.cos(), radius * th.sin()))
        })
        .collect();
    let tol = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    for _ in 0..2000 {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner(&c, &z[k], prec);
            if p.is_zero() {
                continue;
            }
            let ratio = Complex::with_val(prec, &p / &dp);
            let mut s = Complex::with_val(prec, 0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let diff = Complex::with_val(prec, &z[k] - zj);
                    s += Complex::with_val(prec, diff.recip_ref());
                }
            }
            let denom = Complex::with_val(prec, 1) - Complex::with_val(prec, &ratio * &s);
            let step = Complex::with_val(prec, &ratio / &denom);
            let scale = abs(&z[k], prec).max(&Float::with_val(prec, 1));
            if abs(&step, prec) > Float::with_val(prec, &tol * &scale) {
                done = false;
            }
            z[k] -= step;
        }
        if done {
            return Ok(z);
        }
    }
    Err(PushError::NumericFailure("root iteration did not converge".into()))
}

fn poly_to_complex(p: &Poly, prec: u32) -> Result<Vec<Complex>, PushError> {
    p.coeffs().iter().map(|c| to_complex(c, prec)).collect()
}

/// `r(x)` numerically; `None` at a pole.
pub fn eval_ratfunc(r: &RatFunc, x: &Complex, prec: u32) -> Result<Option<Complex>, PushError> {
    let n = horner(&poly_to_complex(r.num(), prec)?, x, prec).0;
    let d = horner(&poly_to_complex(r.den(), prec)?, x, prec).0;
    if d.is_zero() {
        return Ok(None);
    }
    Ok(Some(Complex::with_val(prec, &n / &d)))
}

/// `sum q(w) / g'(w)^2` over the solutions of `g(w) = z0` that satisfy `pick`.
fn branch_sum(
    g: &RatFunc,
    q: &RatFunc,
    z0: &Complex,
    prec: u32,
    pick: impl Fn(&[Complex]) -> Vec<Complex>,
) -> Result<Complex, PushError> {
    let pc = poly_to_complex(g.num(), prec)?;
    let qc = poly_to_complex(g.den(), prec)?;
    let len = pc.len().max(qc.len());
    let zero = Complex::with_val(prec, 0);
    let f: Vec<Complex> = (0..len)
        .map(|i| Complex::with_val(prec, pc.get(i).unwrap_or(&zero) - Complex::with_val(prec, z0 * qc.get(i).unwrap_or(&zero))))
        .collect();
    let roots = poly_roots(&f, prec)?;
    let dg = g.derivative();
    let mut s = Complex::with_val(prec, 0);
    for w in pick(&roots) {
        let qv = eval_ratfunc(q, &w, prec)?.ok_or_else(|| PushError::NumericFailure("fiber meets a pole of q".into()))?;
        let d = eval_ratfunc(&dg, &w, prec)?.ok_or_else(|| PushError::NumericFailure("fiber meets a pole of g".into()))?;
        if d.is_zero() {
            return Err(PushError::NumericFailure("fiber meets a critical point".into()));
        }
        s += Complex::with_val(prec, &qv / Complex::with_val(prec, d.square_ref()));
    }
    Ok(s)
}

/// The defining fiber sum of the pushforward at `z0`, from numerically computed preimages.
pub fn fiber_sum(g: &RatFunc, q: &RatFunc, z0: &Complex, prec: u32) -> Result<Complex, PushError> {
    branch_sum(g, q, z0, prec, |r| r.to_vec())
}

#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    /// `1 / (prod (c - u_i) g''(c))`, exact.
    pub closed: Elem,
    pub closed_value: Complex,
    pub fitted: Complex,
    pub rel_err: f64,
    pub samples: Vec<(BigRational, Complex)>,
}

fn complex_json(z: &Complex) -> Value {
    json!([format!("{:.40e}", z.real()), format!("{:.40e}", z.imag())])
}

impl AsymptoticReport {
    pub fn to_json(&self) -> Value {
        json!({
            "C_closed": crate::ratfield::elem_to_json(&self.closed),
            "C_closed_value": complex_json(&self.closed_value),
            "C_fitted": complex_json(&self.fitted),
            "rel_err": self.rel_err,
            "samples": self.samples.iter().map(|(t, s)| json!({"t": t.to_string(), "sum": complex_json(s)})).collect::<Vec<_>>(),
        })
    }
}

/// Near a simple critical point `c` the two branches of `g^{-1}(g(c) + t)`
/// contribute `C/t + O(1)` to the pushforward of `dz^2 / prod (z - u_i)`.
/// Fits `C` from the samples (`t S(t)` for one sample, least squares on
/// `C/t + D` for more) and compares it with the closed form.
pub fn asymptotic_constant(
    g: &RatFunc,
    c_star: &BigRational,
    u: &[BigRational],
    t_samples: &[BigRational],
    prec: u32,
) -> Result<AsymptoticReport, PushError> {
    let q = Field::rationals();
    if !g.field().is_rationals() {
        return Err(PushError::DegenerateInput("the map must have rational coefficients".into()));
    }
    if t_samples.is_empty() {
        return Err(PushError::DegenerateInput("no samples".into()));
    }
    let c = q.from_rational(c_star.clone());
    let g1 = g.derivative();
    let g2 = g1.derivative();
    let v = g.eval(&c).ok_or_else(|| PushError::NotSimpleCritical(format!("g has a pole at {c}")))?;
    match g1.eval(&c) {
        Some(d) if d.is_zero() => {}
        _ => return Err(PushError::NotSimpleCritical(format!("g'({c}) is not zero"))),
    }
    let gpp = g2.eval(&c).unwrap();
    if gpp.is_zero() {
        return Err(PushError::NotSimpleCritical(format!("g''({c}) = 0")));
    }
    let mut prod = q.one();
    for ui in u {
        let d = &c - &q.from_rational(ui.clone());
        if d.is_zero() {
            return Err(PushError::DegenerateInput(format!("{c} is one of the u_i")));
        }
        prod = &prod * &d;
    }
    let closed = (&prod * &gpp).inv()?;
    let den = u.iter().fold(Poly::one(&q), |acc, ui| &acc * &Poly::linear_root(&q.from_rational(ui.clone())));
    let qd = RatFunc::new(&Poly::one(&q), &den).unwrap();
    let cc = rational_to_complex(c_star, prec);
    let vc = to_complex(&v, prec)?;
    let nearest_two = |roots: &[Complex]| {
        let mut r = roots.to_vec();
        r.sort_by(|a, b| {
            let da = abs(&Complex::with_val(prec, a - &cc), prec);
            let db = abs(&Complex::with_val(prec, b - &cc), prec);
            da.partial_cmp(&db).unwrap()
        });
        r.truncate(2);
        r
    };
    let mut samples = Vec::new();
    for t in t_samples {
        if t <= &BigRational::from_integer(0.into()) {
            return Err(PushError::DegenerateInput("samples must be positive".into()));
        }
        let z0 = Complex::with_val(prec, &vc + rational_to_complex(t, prec));
        samples.push((t.clone(), branch_sum(g, &qd, &z0, prec, nearest_two)?));
    }
    let fitted = if samples.len() == 1 {
        Complex::with_val(prec, &samples[0].1 * rational_to_complex(&samples[0].0, prec))
    } else {
        // minimise sum |S_i - C x_i - D|^2 with real x_i = 1/t_i
        let xs: Vec<Complex> = samples.iter().map(|(t, _)| rational_to_complex(&t.recip(), prec)).collect();
        let n = Complex::with_val(prec, samples.len() as u32);
        let (mut sx, mut sxx, mut sy, mut sxy) = (n.clone() * 0, n.clone() * 0, n.clone() * 0, n.clone() * 0);
        for (x, (_, y)) in xs.iter().zip(&samples) {
            sx += x;
            sxx += Complex::with_val(prec, x * x);
            sy += y;
            sxy += Complex::with_val(prec, x * y);
        }
        let num = Complex::with_val(prec, &n * &sxy) - Complex::with_val(prec, &sx * &sy);
        let det = Complex::with_val(prec, &n * &sxx) - Complex::with_val(prec, &sx * &sx);
        Complex::with_val(prec, &num / &det)
    };
    let closed_value = to_complex(&closed, prec)?;
    let err = abs(&Complex::with_val(prec, &fitted - &closed_value), prec);
    let rel_err = Float::with_val(prec, &err / &abs(&closed_value, prec)).to_f64();
    Ok(AsymptoticReport { closed, closed_value, fitted, rel_err, samples })
}
