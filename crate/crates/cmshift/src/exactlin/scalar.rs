//! Exact scalars over Q or a prime field F_p.
//!
//! Every scalar is kept in canonical form: rationals in lowest terms,
//! prime-field elements as representatives in [0, p).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The coefficient field: Q or F_p with p prime, p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec, Error> {
        if p >= 1 << 31 {
            return Err(Error::BadField(format!("prime {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Fp { v: 1, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v: m, p: *p }
            }
        }
    }

    /// Characteristic of the field (0 for Q).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element. Prime-field values carry their modulus so
/// arithmetic needs no external context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "element not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for n < 3.2e18
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
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

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp { v: (a + b) % p, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp { v: (a + p - b) % p, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp { v: mulmod(*a, *b, *p), p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "division by zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "division by zero");
                Scalar::Fp { v: invmod(*v, *p), p: *p }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Fused multiply-add: self + a*b.  The hot path of row reduction.
    pub fn fma(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Scalar::Rat(s), Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(s + x * y),
            (Scalar::Fp { v: s, p }, Scalar::Fp { v: x, .. }, Scalar::Fp { v: y, .. }) => {
                Scalar::Fp { v: ((*s as u128 + *x as u128 * *y as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Deterministic total order used only for canonical sorting.
    pub fn cmp_canonical(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Fp { v: a, .. }, Scalar::Fp { v: b, .. }) => a.cmp(b),
            _ => panic!("field mismatch"),
        }
    }

    /// Parse "a", "-a" or "a/b" in the given field.
    pub fn parse(s: &str, field: &FieldSpec) -> Result<Scalar, Error> {
        let bad = || Error::BadScalar(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            let d: i64 = den.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(field.from_i64(n).div(&field.from_i64(d)))
        } else {
            let n: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(field.from_i64(n))
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Content-normalize a row of rationals: scale so entries are integers
/// with gcd 1 (keeps intermediate growth under control during elimination).
pub fn primitive_part(row: &mut [Scalar]) {
    if row.is_empty() || !matches!(row[0], Scalar::Rat(_)) {
        return;
    }
    let mut lcm_den = BigInt::one();
    for s in row.iter() {
        if let Scalar::Rat(r) = s {
            lcm_den = num_integer::lcm(lcm_den, r.denom().clone());
        }
    }
    let mut gcd_num = BigInt::zero();
    for s in row.iter() {
        if let Scalar::Rat(r) = s {
            let n = r.numer() * &lcm_den / r.denom();
            gcd_num = num_integer::gcd(gcd_num, n);
        }
    }
    if gcd_num.is_zero() {
        return;
    }
    let scale = BigRational::new(lcm_den, gcd_num.abs());
    for s in row.iter_mut() {
        if let Scalar::Rat(r) = s {
            *s = Scalar::Rat(&*r * &scale);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::prime(101).unwrap();
        let a = f.from_i64(45);
        let b = f.from_i64(-3);
        assert_eq!(b, f.from_i64(98));
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(a.add(&b), f.from_i64(42));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(FieldSpec::prime(91).is_err());
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2147483647).is_ok());
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn rational_parse() {
        let f = FieldSpec::Rationals;
        let h = Scalar::parse("1/2", &f).unwrap();
        assert!(h.add(&h).is_one());
        assert!(Scalar::parse("3/0", &f).is_err());
    }
}
