//! Constructible commutative rings.
//!
//! A [`RingDesc`] is a base ring (`Z`, `Q` or `Z/n`) followed by an ordered
//! list of adjoined generators, each optionally subject to a pure-power
//! relation `v^k = 0`. Elements are sparse polynomials in the generators with
//! canonical base coefficients, so equality is structural.

mod elem;
mod idempotent;
mod matrix;
mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use elem::RingElem;
pub use idempotent::{
    factorize, lift_idempotent, lift_idempotent_with_cap, split_ring, split_ring_with_bound,
    RingComponent, DEFAULT_FACTOR_BOUND, DEFAULT_LIFT_CAP,
};
pub(crate) use idempotent::split_base;
pub use matrix::SquareMatrix;
pub use poly::Polynomial;

/// Names reserved for series variables; ring generators may not use them.
pub const RESERVED_VARIABLES: [&str; 4] = ["x", "y", "z", "t"];

pub type Ring = Arc<RingDesc>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Base {
    Integers,
    Rationals,
    IntegersMod(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub grade: i64,
    /// `Some(k)` means `name^k = 0`.
    pub nilpotency: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDesc {
    base: Base,
    generators: Vec<Generator>,
}

impl RingDesc {
    pub fn integers() -> RingDesc {
        RingDesc {
            base: Base::Integers,
            generators: Vec::new(),
        }
    }

    pub fn rationals() -> RingDesc {
        RingDesc {
            base: Base::Rationals,
            generators: Vec::new(),
        }
    }

    pub fn integers_mod(n: u64) -> Result<RingDesc> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("modulus {n} must be at least 2")));
        }
        Ok(RingDesc {
            base: Base::IntegersMod(n),
            generators: Vec::new(),
        })
    }

    /// Adjoins a generator of the given grade, optionally with `name^k = 0`.
    pub fn with_generator(mut self, name: &str, grade: i64, nilpotency: Option<u32>) -> Result<RingDesc> {
        if !is_identifier(name) {
            return Err(Error::InvalidRing(format!("'{name}' is not an identifier")));
        }
        if RESERVED_VARIABLES.contains(&name) {
            return Err(Error::InvalidRing(format!("'{name}' is reserved for series variables")));
        }
        if self.generators.iter().any(|g| g.name == name) {
            return Err(Error::InvalidRing(format!("duplicate generator '{name}'")));
        }
        if nilpotency == Some(0) {
            return Err(Error::InvalidRing(format!("power relation on '{name}' must be positive")));
        }
        self.generators.push(Generator {
            name: name.to_string(),
            grade,
            nilpotency,
        });
        Ok(self)
    }

    pub fn into_ring(self) -> Ring {
        Arc::new(self)
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// `n` for `Z/n`, `0` otherwise.
    pub fn characteristic(&self) -> u64 {
        match self.base {
            Base::IntegersMod(n) => n,
            _ => 0,
        }
    }

    pub fn has_power_relations(&self) -> bool {
        self.generators.iter().any(|g| g.nilpotency.is_some())
    }

    /// Same generators over a different base.
    pub(crate) fn with_base(&self, base: Base) -> RingDesc {
        RingDesc {
            base,
            generators: self.generators.clone(),
        }
    }

    pub(crate) fn canonical(&self, c: BigRational) -> BigRational {
        match self.base {
            Base::Integers => {
                debug_assert!(c.is_integer(), "non-integral coefficient in Z");
                c
            }
            Base::Rationals => c,
            Base::IntegersMod(n) => {
                debug_assert!(c.is_integer(), "non-integral coefficient in Z/n");
                BigRational::from_integer(c.to_integer().mod_floor(&BigInt::from(n)))
            }
        }
    }

    pub(crate) fn base_is_unit(&self, c: &BigRational) -> bool {
        match self.base {
            Base::Integers => c.is_integer() && c.abs().is_one(),
            Base::Rationals => !c.is_zero(),
            Base::IntegersMod(n) => c.to_integer().gcd(&BigInt::from(n)).is_one(),
        }
    }

    pub(crate) fn base_is_nilpotent(&self, c: &BigRational) -> bool {
        match self.base {
            Base::Integers | Base::Rationals => c.is_zero(),
            Base::IntegersMod(n) => {
                let rad = radical(n);
                c.to_integer().mod_floor(&BigInt::from(rad)).is_zero()
            }
        }
    }

    pub(crate) fn base_inverse(&self, c: &BigRational) -> Option<BigRational> {
        match self.base {
            Base::Integers => self.base_is_unit(c).then(|| c.clone()),
            Base::Rationals => (!c.is_zero()).then(|| c.recip()),
            Base::IntegersMod(n) => {
                let n = BigInt::from(n);
                let a = c.to_integer().mod_floor(&n);
                let ext = a.extended_gcd(&n);
                ext.gcd
                    .is_one()
                    .then(|| BigRational::from_integer(ext.x.mod_floor(&n)))
            }
        }
    }
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::Integers => f.write_str("Z")?,
            Base::Rationals => f.write_str("Q")?,
            Base::IntegersMod(n) => write!(f, "Z/{n}")?,
        }
        if !self.generators.is_empty() {
            f.write_str("[")?;
            for (i, g) in self.generators.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(&g.name)?;
                if g.grade != 0 {
                    write!(f, ":{}", g.grade)?;
                }
                if let Some(k) = g.nilpotency {
                    write!(f, ";{}^{}", g.name, k)?;
                }
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    let mut n = n;
    let mut rad = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            rad *= p;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        rad *= n;
    }
    rad
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Errors unless `ring` has characteristic exactly the prime `p`.
pub(crate) fn require_characteristic(ring: &RingDesc, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if ring.characteristic() != p {
        return Err(Error::WrongCharacteristic(p));
    }
    Ok(())
}

pub(crate) fn check_same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}
