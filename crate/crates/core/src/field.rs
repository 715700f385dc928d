//! Exact scalars over a prime field `F_p` or the rationals.
//!
//! A [`Scalar`] carries its field with it, so arithmetic can check that both
//! operands live in the same field. Prime-field values are canonical residues
//! in `0..p`; rationals are reduced `num::BigRational` fractions. Nothing
//! here ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// The field a computation runs over: `F_p` for a prime `p`, or `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// Prime field `F_p`. Primality is checked by trial division; sizes are
    /// desk-scale so this is never the bottleneck.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn rationals() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// The prime modulus, if this is a prime field.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rationals => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// Embed a signed integer (reduced mod `p` in the prime case).
    pub fn from_i64(&self, x: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let r = x.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: r }
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(x))),
        }
    }

    /// All field elements in natural order. Prime fields only.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Prime(p) => Ok((0..*p).map(|v| Scalar::Fp { p: *p, val: v }).collect()),
            FieldSpec::Rationals => Err(Error::PrimeFieldRequired),
        }
    }

    /// Parse one scalar: a decimal residue for prime fields, `a` or `a/b`
    /// for rationals. Prime-field input may carry a sign; it is reduced to
    /// the canonical residue.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(0, "empty scalar"));
        }
        match self {
            FieldSpec::Prime(p) => {
                let (neg, digits) = match s.strip_prefix('-') {
                    Some(d) => (true, d),
                    None => (false, s),
                };
                let raw: u128 = digits
                    .parse()
                    .map_err(|_| Error::parse(0, format!("`{s}` is not a residue mod {p}")))?;
                let mut val = (raw % *p as u128) as u64;
                if neg && val != 0 {
                    val = p - val;
                }
                Ok(Scalar::Fp { p: *p, val })
            }
            FieldSpec::Rationals => {
                let rat = match s.split_once('/') {
                    Some((num, den)) => {
                        let n = BigInt::from_str(num.trim())
                            .map_err(|_| Error::parse(0, format!("bad numerator `{num}`")))?;
                        let d = BigInt::from_str(den.trim())
                            .map_err(|_| Error::parse(0, format!("bad denominator `{den}`")))?;
                        if d.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        BigRational::new(n, d)
                    }
                    None => {
                        let n = BigInt::from_str(s)
                            .map_err(|_| Error::parse(0, format!("`{s}` is not a rational")))?;
                        BigRational::from_integer(n)
                    }
                };
                Ok(Scalar::Rat(rat))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// An exact field element. Prime-field values store their modulus so that
/// mixed-field arithmetic is caught immediately.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { p: u64, val: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
            Scalar::Rat(_) => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Canonical residue, for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { val, .. } => Some(*val),
            Scalar::Rat(_) => None,
        }
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: mod_pow(*val, *p - 2, *p) },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    /// `self` raised to a non-negative integer power.
    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order in a prime field. Errors on zero or rationals.
    pub fn mult_order(&self) -> Result<u64> {
        match self {
            Scalar::Fp { p, val } => {
                if *val == 0 {
                    return Err(Error::DivisionByZero);
                }
                let group = *p - 1;
                let mut ord = group;
                for (f, _) in factorize(group) {
                    while ord % f == 0 && mod_pow(*val, ord / f, *p) == 1 {
                        ord /= f;
                    }
                }
                Ok(ord)
            }
            Scalar::Rat(_) => Err(Error::PrimeFieldRequired),
        }
    }

    /// True when this generates the full multiplicative group of its prime
    /// field.
    pub fn is_primitive(&self) -> bool {
        match self {
            Scalar::Fp { p, .. } => self.mult_order().map(|o| o == *p - 1).unwrap_or(false),
            Scalar::Rat(_) => false,
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Natural total order: residues `0 < 1 < ... < p-1` for a prime field, the
/// usual order on `Q`. Scalars from different fields compare by field first
/// so that the order stays total.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Fp { p: p1, val: v1 }, Scalar::Fp { p: p2, val: v2 }) => {
                p1.cmp(p2).then(v1.cmp(v2))
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Fp { .. }, Scalar::Rat(_)) => Ordering::Less,
            (Scalar::Rat(_), Scalar::Fp { .. }) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $fp:expr, $rat:expr) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.check_same_field(rhs);
                match (self, rhs) {
                    (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => {
                        #[allow(clippy::redundant_closure_call)]
                        Scalar::Fp { p: *p, val: ($fp)(*a, *b, *p) }
                    }
                    (Scalar::Rat(a), Scalar::Rat(b)) => {
                        #[allow(clippy::redundant_closure_call)]
                        Scalar::Rat(($rat)(a, b))
                    }
                    _ => unreachable!(),
                }
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

scalar_binop!(
    Add,
    add,
    |a: u64, b: u64, p: u64| ((a as u128 + b as u128) % p as u128) as u64,
    |a: &BigRational, b: &BigRational| a + b
);
scalar_binop!(
    Sub,
    sub,
    |a: u64, b: u64, p: u64| ((a as u128 + p as u128 - b as u128) % p as u128) as u64,
    |a: &BigRational, b: &BigRational| a - b
);
scalar_binop!(
    Mul,
    mul,
    |a: u64, b: u64, p: u64| ((a as u128 * b as u128) % p as u128) as u64,
    |a: &BigRational, b: &BigRational| a * b
);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { p, val } => Scalar::Fp { p: *p, val: if *val == 0 { 0 } else { p - val } },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// All primitive elements of `F_p`, ascending. There are `phi(p-1)` of them.
pub fn primitive_elements(p: u64) -> Result<Vec<Scalar>> {
    let field = FieldSpec::prime(p)?;
    let group = p - 1;
    let factors = factorize(group);
    let mut out = Vec::new();
    for a in 1..p {
        let primitive = factors.iter().all(|(f, _)| mod_pow(a, group / f, p) != 1);
        if primitive {
            out.push(field.from_i64(a as i64));
        }
    }
    Ok(out)
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    #[test]
    fn primality_check_at_construction() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(7919).is_ok());
        assert!(matches!(FieldSpec::prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(FieldSpec::prime(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn inverse_in_f7() {
        let a = f7().from_i64(4);
        assert_eq!(a.inv().unwrap(), f7().from_i64(2));
        assert_eq!(f7().one().inv().unwrap(), f7().one());
        assert!(matches!(f7().zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_of_rational() {
        let q = FieldSpec::rationals();
        let a = q.parse_scalar("3/2").unwrap();
        assert_eq!(a.inv().unwrap(), q.parse_scalar("2/3").unwrap());
    }

    #[test]
    fn primitive_elements_examples() {
        let vals = |p: u64| {
            primitive_elements(p)
                .unwrap()
                .iter()
                .map(|s| s.residue().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(vals(7), vec![3, 5]);
        assert_eq!(vals(2), vec![1]);
        // Derived by direct exponentiation: 2 and 3 have order 4 mod 5, 4 has order 2.
        assert_eq!(vals(5), vec![2, 3]);
    }

    #[test]
    fn primitive_elements_generate_everything() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let prims = primitive_elements(p).unwrap();
            assert_eq!(prims.len() as u64, euler_phi(p - 1));
            for alpha in &prims {
                let mut seen = std::collections::BTreeSet::new();
                let mut x = alpha.field().one();
                for _ in 0..p - 1 {
                    seen.insert(x.clone());
                    x = &x * alpha;
                }
                assert_eq!(seen.len() as u64, p - 1, "alpha = {alpha} mod {p}");
            }
        }
    }

    fn euler_phi(n: u64) -> u64 {
        (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = f7();
        assert_eq!(f.parse_scalar("12").unwrap(), f.from_i64(5));
        assert_eq!(f.parse_scalar("-1").unwrap(), f.from_i64(6));
        assert!(f.parse_scalar("1/2").is_err());
        let q = FieldSpec::rationals();
        assert_eq!(q.parse_scalar("-4/6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse_scalar("5").unwrap().to_string(), "5");
    }

    #[test]
    fn mult_order_works() {
        let f = f7();
        assert_eq!(f.from_i64(3).mult_order().unwrap(), 6);
        assert_eq!(f.from_i64(2).mult_order().unwrap(), 3);
        assert_eq!(f.from_i64(6).mult_order().unwrap(), 2);
        assert!(f.from_i64(3).is_primitive());
        assert!(!f.from_i64(2).is_primitive());
    }

    proptest! {
        // Field axioms on random triples, for a prime field and for Q.
        #[test]
        fn axioms_f13(a in 0i64..13, b in 0i64..13, c in 0i64..13) {
            let f = FieldSpec::prime(13).unwrap();
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &(-&a), f.zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), f.one());
            }
        }

        #[test]
        fn axioms_rationals(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20) {
            let q = FieldSpec::rationals();
            let a = q.parse_scalar(&format!("{an}/{ad}")).unwrap();
            let b = q.parse_scalar(&format!("{bn}/{bd}")).unwrap();
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) * &b.inv().unwrap(), a);
            }
        }
    }
}
