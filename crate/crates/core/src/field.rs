//! Pluggable exact scalar fields: arbitrary-precision rationals (the ground
//! truth) and large prime fields for fast randomized verification.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Identifies the scalar field a point or section is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldSpec {
    Rational,
    /// Prime field of the given (odd, > 2^30) modulus.
    Fp(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("unknown field tag `{0}` (expected `rational` or `fp:<p>`)")]
    UnknownTag(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need p > 2^30)")]
    ModulusTooSmall(u64),
    #[error("cannot parse `{0}` as a scalar of {1}")]
    BadScalar(String, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
}

impl FieldSpec {
    /// Parses `rational` or `fp:<p>`, validating primality and size of p.
    pub fn parse(tag: &str) -> Result<Self, FieldError> {
        if tag == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(ptext) = tag.strip_prefix("fp:") {
            let p: u64 = ptext
                .parse()
                .map_err(|_| FieldError::UnknownTag(tag.to_string()))?;
            let spec = FieldSpec::Fp(p);
            spec.validate()?;
            return Ok(spec);
        }
        Err(FieldError::UnknownTag(tag.to_string()))
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        if let FieldSpec::Fp(p) = *self {
            if p <= (1 << 30) {
                return Err(FieldError::ModulusTooSmall(p));
            }
            if !is_prime_u64(p) {
                return Err(FieldError::NotPrime(p));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element. Fp values are kept reduced to `0..p` and carry
/// their modulus so mixed-field arithmetic is detectable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

impl Value {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Value::Rat(_) => FieldSpec::Rational,
            Value::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Value::from_i64(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> Self {
        Value::from_i64(spec, 1)
    }

    pub fn from_i64(spec: FieldSpec, x: i64) -> Self {
        match spec {
            FieldSpec::Rational => Value::Rat(BigRational::from_integer(BigInt::from(x))),
            FieldSpec::Fp(p) => {
                let m = x.rem_euclid(p as i64) as u64;
                Value::Fp { v: m, p }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rat(r) => r.is_zero(),
            Value::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Value::Rat(r) => r.is_one(),
            Value::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Fp { v: a, p }, Value::Fp { v: b, p: p2 }) => {
                assert_eq!(p, p2, "mixed moduli");
                Value::Fp {
                    v: addmod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn sub(&self, other: &Value) -> Value {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Rat(a) => Value::Rat(-a),
            Value::Fp { v, p } => Value::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Fp { v: a, p }, Value::Fp { v: b, p: p2 }) => {
                assert_eq!(p, p2, "mixed moduli");
                Value::Fp {
                    v: mulmod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Value> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Value::Rat(a) => Value::Rat(a.recip()),
            Value::Fp { v, p } => Value::Fp {
                v: powmod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Value) -> Result<Value, FieldError> {
        let inv = other.inv().ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    pub fn pow(&self, e: u64) -> Value {
        let mut acc = Value::one(self.spec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Parses an exact scalar string: an optional-sign integer, a `num/den`
    /// fraction, or a finite decimal. Fp scalars are integers reduced mod p.
    pub fn parse(spec: FieldSpec, s: &str) -> Result<Value, FieldError> {
        let bad = || FieldError::BadScalar(s.to_string(), spec);
        let s = s.trim();
        match spec {
            FieldSpec::Rational => {
                if let Some((num, den)) = s.split_once('/') {
                    let n: BigInt = num.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = den.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Value::Rat(BigRational::new(n, d)))
                } else if let Some((int, frac)) = s.split_once('.') {
                    let digits = frac.trim();
                    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
                        return Err(bad());
                    }
                    let int = if int.is_empty() || int == "-" || int == "+" {
                        format!("{int}0")
                    } else {
                        int.to_string()
                    };
                    let whole: BigInt = int.parse().map_err(|_| bad())?;
                    let num: BigInt = digits.parse().map_err(|_| bad())?;
                    let den = BigInt::from(10u32).pow(digits.len() as u32);
                    let frac_part = BigRational::new(num, den.clone());
                    let whole_part = BigRational::from_integer(whole.clone());
                    let r = if whole.is_negative() || int.starts_with('-') {
                        whole_part - frac_part
                    } else {
                        whole_part + frac_part
                    };
                    Ok(Value::Rat(r))
                } else {
                    let n: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(Value::Rat(BigRational::from_integer(n)))
                }
            }
            FieldSpec::Fp(p) => {
                let n: i128 = s.parse().map_err(|_| bad())?;
                let m = n.rem_euclid(p as i128) as u64;
                Ok(Value::Fp { v: m, p })
            }
        }
    }

    /// Exact string form; inverse of `parse` on canonical output.
    pub fn render(&self) -> String {
        match self {
            Value::Rat(r) => r.to_string(),
            Value::Fp { v, .. } => v.to_string(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 2147483647; // 2^31 - 1

    #[test]
    fn parse_and_render_roundtrip() {
        for s in ["0", "5", "-3", "3/7", "-12/5"] {
            let v = Value::parse(FieldSpec::Rational, s).unwrap();
            assert_eq!(Value::parse(FieldSpec::Rational, &v.render()).unwrap(), v);
        }
        let half = Value::parse(FieldSpec::Rational, "0.5").unwrap();
        assert_eq!(half, Value::parse(FieldSpec::Rational, "1/2").unwrap());
        let neg = Value::parse(FieldSpec::Rational, "-2.25").unwrap();
        assert_eq!(neg, Value::parse(FieldSpec::Rational, "-9/4").unwrap());
    }

    #[test]
    fn fp_field_axioms_spot_checks() {
        let a = Value::from_i64(FieldSpec::Fp(P), -7);
        let b = Value::from_i64(FieldSpec::Fp(P), 9);
        assert_eq!(a.add(&b), Value::from_i64(FieldSpec::Fp(P), 2));
        assert_eq!(a.mul(&b), Value::from_i64(FieldSpec::Fp(P), -63));
        let inv = b.inv().unwrap();
        assert!(b.mul(&inv).is_one());
        assert!(Value::zero(FieldSpec::Fp(P)).inv().is_none());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let x = Value::parse(FieldSpec::Rational, "-3/2").unwrap();
        let mut acc = Value::one(FieldSpec::Rational);
        for _ in 0..7 {
            acc = acc.mul(&x);
        }
        assert_eq!(x.pow(7), acc);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("rational").unwrap(), FieldSpec::Rational);
        assert_eq!(
            FieldSpec::parse(&format!("fp:{P}")).unwrap(),
            FieldSpec::Fp(P)
        );
        assert!(FieldSpec::parse("fp:4").is_err());
        assert!(FieldSpec::parse("fp:1048573").is_err()); // prime but too small
        assert!(FieldSpec::parse("float").is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(P));
        assert!(is_prime_u64(3037000493));
        assert!(!is_prime_u64(3037000494));
        assert!(!is_prime_u64(1));
    }
}
