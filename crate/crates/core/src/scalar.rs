//! Exact scalars: the rationals and the cyclotomic fields Q(zeta_m).
//!
//! A cyclotomic element is stored as its coefficient vector in the power
//! basis `1, z, ..., z^(phi(m)-1)`, always reduced modulo the m-th cyclotomic
//! polynomial. The rational field is the conductor-1 case but is kept as its
//! own [`FieldSpec`] variant so that rational-only work never touches the
//! polynomial code.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

/// Errors raised by scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("field {0} has no primitive root of unity of the requested order")]
    NotCyclotomic(FieldSpec),
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    /// Q(zeta_m) for the given conductor `m >= 1`.
    Cyclotomic(u32),
}

impl FieldSpec {
    pub fn cyclotomic(conductor: u32) -> FieldSpec {
        assert!(conductor >= 1, "conductor must be positive");
        FieldSpec::Cyclotomic(conductor)
    }

    pub fn conductor(self) -> u32 {
        match self {
            FieldSpec::Rational => 1,
            FieldSpec::Cyclotomic(m) => m,
        }
    }

    /// Degree of the field over Q, i.e. Euler's phi of the conductor.
    pub fn degree(self) -> usize {
        match self {
            FieldSpec::Rational => 1,
            FieldSpec::Cyclotomic(m) => totient(m),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar {
            field: self,
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(self, num: i64, den: i64) -> Scalar {
        self.from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(self, q: BigRational) -> Scalar {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = q;
        Scalar {
            field: self,
            coeffs,
        }
    }

    /// `zeta_m^k`, with `k` reduced modulo the conductor.
    pub fn root_of_unity(self, k: i64) -> Result<Scalar, ScalarError> {
        match self {
            FieldSpec::Rational => {
                if k == 0 {
                    Ok(self.one())
                } else {
                    Err(ScalarError::NotCyclotomic(self))
                }
            }
            FieldSpec::Cyclotomic(m) => {
                let e = k.rem_euclid(m as i64) as usize;
                let mut poly = vec![BigRational::zero(); e + 1];
                poly[e] = BigRational::one();
                Ok(Scalar::from_poly(self, poly))
            }
        }
    }

    pub fn parse(self, text: &str) -> Result<Scalar, ScalarError> {
        parse_scalar(self, text)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Cyclotomic(m) => write!(f, "Q(zeta_{m})"),
        }
    }
}

/// An exact element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    coeffs: Vec<BigRational>,
}

/// The four field operations accepted by [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Scalar {
    /// Builds a scalar from an arbitrary polynomial in `z`, reducing it.
    pub fn from_poly(field: FieldSpec, mut poly: Vec<BigRational>) -> Scalar {
        let deg = field.degree();
        if let FieldSpec::Cyclotomic(m) = field {
            if poly.len() > deg {
                reduce_mod(&mut poly, &cyclotomic_modulus(m));
            }
        } else {
            // Rational field: z is not available, only the constant term counts.
            assert!(
                poly.iter().skip(1).all(Zero::is_zero),
                "non-constant polynomial in the rational field"
            );
            poly.truncate(1);
        }
        poly.resize(deg, BigRational::zero());
        Scalar {
            field,
            coeffs: poly,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Power-basis coordinates, length `phi(m)`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The constant coefficient if the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field != other.field {
            Err(ScalarError::FieldMismatch {
                left: self.field,
                right: other.field,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(Scalar {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(Scalar {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        if self.coeffs.len() == 1 {
            return Ok(Scalar {
                field: self.field,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        let mut prod = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Scalar::from_poly(self.field, prod))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic modulus.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let m = self.field.conductor();
        let modulus = cyclotomic_modulus(m);
        let inv = poly_inverse_mod(&self.coeffs, &modulus);
        Ok(Scalar::from_poly(self.field, inv))
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Re-reduces the stored coefficients. Stored values are always canonical,
    /// so this is the identity; it exists for the idempotence property.
    pub fn normalized(&self) -> Scalar {
        Scalar::from_poly(self.field, self.coeffs.clone())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p/q`; cyclotomic elements as `c0 + c1*z + c2*z^2`
    /// with zero terms dropped and negative terms written with ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        write!(f, "{out}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Polynomials over Q, dense, lowest degree first.

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// `p mod modulus` in place, for a monic or general nonzero modulus.
fn reduce_mod(p: &mut Poly, modulus: &[BigRational]) {
    let dm = poly_degree(modulus).expect("zero modulus");
    let lead = modulus[dm].clone();
    while let Some(dp) = poly_degree(p) {
        if dp < dm {
            break;
        }
        let factor = &p[dp] / &lead;
        let shift = dp - dm;
        for (i, c) in modulus.iter().enumerate().take(dm + 1) {
            if !c.is_zero() {
                p[shift + i] -= &factor * c;
            }
        }
    }
    p.truncate(dm.max(1));
    if p.is_empty() {
        p.push(BigRational::zero());
    }
}

/// Exact division with remainder: returns (quotient, remainder).
fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Poly, Poly) {
    let dd = poly_degree(den).expect("division by zero polynomial");
    let mut rem: Poly = num.to_vec();
    let dn = match poly_degree(&rem) {
        Some(d) if d >= dd => d,
        _ => {
            let mut r = rem;
            trim(&mut r);
            return (vec![BigRational::zero()], r);
        }
    };
    let mut quot = vec![BigRational::zero(); dn - dd + 1];
    while let Some(dr) = poly_degree(&rem) {
        if dr < dd {
            break;
        }
        let factor = &rem[dr] / &den[dd];
        let shift = dr - dd;
        for (i, c) in den.iter().enumerate().take(dd + 1) {
            if !c.is_zero() {
                rem[shift + i] -= &factor * c;
            }
        }
        quot[shift] = factor;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo an irreducible `modulus`.
fn poly_inverse_mod(a: &[BigRational], modulus: &[BigRational]) -> Poly {
    // Invariant: s_i * a == r_i (mod modulus).
    let (mut r0, mut r1): (Poly, Poly) = (modulus.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while poly_degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let c = r1[0].clone();
    assert!(!c.is_zero(), "element is not invertible modulo the cyclotomic polynomial");
    let mut inv: Poly = s1.iter().map(|x| x / &c).collect();
    reduce_mod(&mut inv, modulus);
    inv
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Arc<Poly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn cyclotomic_modulus(m: u32) -> Arc<Poly> {
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(m));
    CYCLOTOMIC_CACHE.lock().unwrap().insert(m, p.clone());
    p
}

fn compute_cyclotomic(m: u32) -> Poly {
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    let mut p = vec![BigRational::zero(); m as usize + 1];
    p[0] = -BigRational::one();
    p[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = poly_divmod(&p, &cyclotomic_modulus(d));
            debug_assert!(r.iter().all(Zero::is_zero));
            p = q;
        }
    }
    p
}

fn totient(mut m: u32) -> usize {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// The m-th cyclotomic polynomial, coefficients lowest degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<BigRational> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    cyclotomic_modulus(m).as_ref().clone()
}

// ---------------------------------------------------------------------------
// Parsing.

fn parse_error(text: &str, reason: impl Into<String>) -> ScalarError {
    ScalarError::Parse {
        text: text.to_string(),
        reason: reason.into(),
    }
}

fn parse_rational(text: &str, s: &str) -> Result<BigRational, ScalarError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| parse_error(text, format!("bad integer {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| parse_error(text, format!("bad integer {den:?}")))?;
    if d.is_zero() {
        return Err(parse_error(text, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_scalar(field: FieldSpec, text: &str) -> Result<Scalar, ScalarError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(parse_error(text, "empty"));
    }
    // Split into signed terms.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    terms.push((negative, current));

    let mut poly: Poly = vec![BigRational::zero(); 1];
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(parse_error(text, "dangling sign"));
        }
        let (coef_str, mono) = match term.find('z') {
            None => (term.as_str(), None),
            Some(pos) => {
                let prefix = &term[..pos];
                let coef = match prefix.strip_suffix('*') {
                    Some(c) if !c.is_empty() => c,
                    Some(_) => return Err(parse_error(text, "missing coefficient before '*'")),
                    None if prefix.is_empty() => "",
                    None => return Err(parse_error(text, "expected '*' before z")),
                };
                (coef, Some(&term[pos + 1..]))
            }
        };
        let mut coef = if coef_str.is_empty() {
            if mono.is_none() {
                return Err(parse_error(text, "empty term"));
            }
            BigRational::one()
        } else {
            parse_rational(text, coef_str)?
        };
        if neg {
            coef = -coef;
        }
        let exp: usize = match mono {
            None => 0,
            Some("") => 1,
            Some(rest) => {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| parse_error(text, "expected '^' after z"))?;
                e.parse()
                    .map_err(|_| parse_error(text, format!("bad exponent {e:?}")))?
            }
        };
        if exp > 0 && field == FieldSpec::Rational {
            return Err(parse_error(text, "z is not available in the rational field"));
        }
        if poly.len() <= exp {
            poly.resize(exp + 1, BigRational::zero());
        }
        poly[exp] += coef;
    }
    if let FieldSpec::Cyclotomic(m) = field {
        // Exponents are taken modulo m before reduction so large powers stay cheap.
        let m = m as usize;
        if poly.len() > m {
            let mut folded = vec![BigRational::zero(); m];
            for (k, c) in poly.into_iter().enumerate() {
                folded[k % m] += c;
            }
            poly = folded;
        }
    }
    Ok(Scalar::from_poly(field, poly))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(p: &[BigRational]) -> Vec<i64> {
        p.iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(ints(&cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_six_matches_exact_division() {
        // Oracle: (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1)) by long division.
        let mut num = vec![q(0, 1); 7];
        num[0] = q(-1, 1);
        num[6] = q(1, 1);
        let den = poly_mul(&poly_mul(&[q(-1, 1), q(1, 1)], &[q(1, 1), q(1, 1)]), &[q(1, 1), q(1, 1), q(1, 1)]);
        let (quot, rem) = poly_divmod(&num, &den);
        assert!(rem.iter().all(Zero::is_zero));
        assert_eq!(ints(&quot), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(6), quot);
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Rational;
        let s = f.from_frac(1, 2) + f.from_frac(1, 3);
        assert_eq!(s, f.from_frac(5, 6));
        assert_eq!(s.to_string(), "5/6");
        assert_eq!(
            f.one().checked_div(&f.zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn gaussian_units() {
        let f = FieldSpec::cyclotomic(4);
        let i = f.root_of_unity(1).unwrap();
        assert_eq!(&i * &i, f.from_int(-1));
        assert_eq!(f.root_of_unity(2).unwrap(), f.from_int(-1));
        assert_eq!(f.root_of_unity(5).unwrap(), i);
        assert_eq!(f.root_of_unity(-1).unwrap(), -&i);
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let f = FieldSpec::cyclotomic(5);
        let z = f.root_of_unity(1).unwrap();
        let mut sum = f.zero();
        for k in 0..5 {
            sum = sum + z.pow(k);
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn cube_root_squared() {
        let f = FieldSpec::cyclotomic(3);
        let z2 = f.root_of_unity(2).unwrap();
        assert_eq!(z2, f.parse("-1 - z").unwrap());
        assert_eq!(z2.to_string(), "-1 - z");
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = FieldSpec::Rational.one();
        let b = FieldSpec::cyclotomic(4).one();
        assert!(matches!(
            arith(&a, &b, ArithOp::Add),
            Err(ScalarError::FieldMismatch { .. })
        ));
        assert!(matches!(
            FieldSpec::Rational.root_of_unity(1),
            Err(ScalarError::NotCyclotomic(_))
        ));
        assert_eq!(FieldSpec::Rational.root_of_unity(0).unwrap(), a);
    }

    #[test]
    fn parser_forms() {
        let f = FieldSpec::cyclotomic(8);
        let a = f.parse(" 1/2 + 3*z^2 - z ").unwrap();
        assert_eq!(a.to_string(), "1/2 - z + 3*z^2");
        assert_eq!(f.parse("z^8").unwrap(), f.one());
        assert_eq!(f.parse("-z^4").unwrap(), f.one());
        assert_eq!(FieldSpec::Rational.parse("-4/6").unwrap().to_string(), "-2/3");
        assert!(FieldSpec::Rational.parse("z").is_err());
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("").is_err());
        assert!(f.parse("2z").is_err());
        assert!(f.parse("1 +").is_err());
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let f = FieldSpec::cyclotomic(12);
        let a = f.parse("2 - z + 5/3*z^3").unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
    }
}
