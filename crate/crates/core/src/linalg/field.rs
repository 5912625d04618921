use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rat::{mulmod, powmod, Rat};

/// Runtime description of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldSpecError {
    #[error("unknown field `{0}` (expected `Q` or `F<p>`)")]
    Unknown(String),
    #[error("characteristic {0} is not a prime below 2^32")]
    NotPrime(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldSpecError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(FieldSpecError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix('F').map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(FieldSpecError::Unknown(s.to_string())),
        }
    }
}

/// Arithmetic context for a field. Elements are plain values; the context
/// carries whatever runtime data (the characteristic) the operations need.
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` when the rational has no image (denominator divisible by p).
    fn from_rat(&self, r: &Rat) -> Option<Self::Elem>;
    /// Canonical rational representative (residues in `[0, p)` for `F_p`).
    fn to_rat(&self, a: &Self::Elem) -> Rat;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rat(&Rat::from_int(n)).expect("integers always map")
    }

    fn parse_elem(&self, s: &str) -> Option<Self::Elem> {
        self.from_rat(&s.parse().ok()?)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a.add(b)
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a.sub(b)
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a.mul(b)
    }
    fn neg(&self, a: &Rat) -> Rat {
        a.neg()
    }
    fn inv(&self, a: &Rat) -> Rat {
        a.inv()
    }
    fn from_rat(&self, r: &Rat) -> Option<Rat> {
        Some(r.clone())
    }
    fn to_rat(&self, a: &Rat) -> Rat {
        a.clone()
    }
}

/// `F_p` for a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is a prime below 2^32.
    pub fn new(p: u64) -> Self {
        assert!(p < 1 << 32 && is_prime(p), "{p} is not a supported prime");
        PrimeField { p }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        powmod(*a, self.p - 2, self.p)
    }
    fn from_rat(&self, r: &Rat) -> Option<u64> {
        r.residue(self.p)
    }
    fn to_rat(&self, a: &u64) -> Rat {
        Rat::from_int(*a as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F7".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(7));
        assert_eq!("F9".parse::<FieldSpec>(), Err(FieldSpecError::NotPrime(9)));
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(101).to_string(), "F101");
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(7);
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.parse_elem("1/2"), Some(4));
        assert_eq!(f.parse_elem("1/7"), None);
    }
}
