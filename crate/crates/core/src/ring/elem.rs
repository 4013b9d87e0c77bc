use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_same_ring, Base, Ring, RingDesc};
use crate::error::{Error, Result};
use crate::fmt_terms::{write_terms, Term};

/// Exponent vector over the generators of a ring.
pub(crate) type Monomial = Vec<u32>;

/// Bound on the number of multiplications spent discovering a nilpotency
/// index or summing a geometric series.
pub(crate) const NILPOTENCY_CAP: u32 = 1 << 16;

/// An element of a [`RingDesc`] in canonical form.
#[derive(Clone)]
pub struct RingElem {
    ring: Ring,
    terms: BTreeMap<Monomial, BigRational>,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({self} in {})", self.ring)
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for RingElem {}

impl RingElem {
    pub fn zero(ring: &Ring) -> RingElem {
        RingElem {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> RingElem {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: &Ring, n: i64) -> RingElem {
        Self::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: &Ring, n: BigInt) -> RingElem {
        let mut e = Self::zero(ring);
        e.insert(vec![0; ring.num_generators()], BigRational::from_integer(n));
        e
    }

    /// A rational constant; only `Q`-based rings accept non-integers.
    pub fn from_rational(ring: &Ring, q: BigRational) -> Result<RingElem> {
        if !q.is_integer() && *ring.base() != Base::Rationals {
            return Err(Error::InvalidArgument(format!("fraction {q} outside a Q-algebra")));
        }
        let mut e = Self::zero(ring);
        e.insert(vec![0; ring.num_generators()], q);
        Ok(e)
    }

    pub fn generator(ring: &Ring, index: usize) -> RingElem {
        let mut mono = vec![0; ring.num_generators()];
        mono[index] = 1;
        let mut e = Self::zero(ring);
        e.insert(mono, BigRational::one());
        e
    }

    pub fn generator_named(ring: &Ring, name: &str) -> Result<RingElem> {
        let idx = ring
            .generator_index(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no generator '{name}' in {ring}")))?;
        Ok(Self::generator(ring, idx))
    }

    /// Builds an element from raw terms, canonicalising coefficients and
    /// applying the power relations.
    pub(crate) fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> RingElem {
        let mut e = Self::zero(ring);
        for (m, c) in terms {
            e.insert(m, c);
        }
        e
    }

    fn insert(&mut self, mono: Monomial, c: BigRational) {
        debug_assert_eq!(mono.len(), self.ring.num_generators());
        if self.killed(&mono) {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = self.ring.canonical(c);
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let c = self.ring.canonical(o.get() + c);
                if c.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    fn killed(&self, mono: &[u32]) -> bool {
        self.ring
            .generators()
            .iter()
            .zip(mono)
            .any(|(g, &e)| matches!(g.nilpotency, Some(k) if e >= k))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_coeff().is_one()
    }

    pub(crate) fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the empty monomial.
    pub fn constant_coeff(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.ring.num_generators()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.insert(mono, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_int(&self, n: i64) -> RingElem {
        self.mul_bigint(&BigInt::from(n))
    }

    pub fn mul_bigint(&self, n: &BigInt) -> RingElem {
        let n = BigRational::from_integer(n.clone());
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), c * &n)))
    }

    /// Multiplies by a base-ring scalar (must be integral outside `Q`).
    pub(crate) fn mul_scalar(&self, q: &BigRational) -> RingElem {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), c * q)))
    }

    pub fn pow(&self, mut k: u32) -> RingElem {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Structural nilpotence test: the image after killing every
    /// power-relation generator must have nilpotent base coefficients.
    pub fn is_nilpotent(&self) -> bool {
        let ring = &self.ring;
        self.terms.iter().all(|(m, c)| {
            let touches_relation = ring
                .generators()
                .iter()
                .zip(m)
                .any(|(g, &e)| g.nilpotency.is_some() && e > 0);
            touches_relation || ring.base_is_nilpotent(c)
        })
    }

    /// A unit plus a nilpotent: constant coefficient is a base unit and the
    /// remainder is nilpotent.
    pub fn is_unit(&self) -> bool {
        let c = self.constant_coeff();
        if !self.ring.base_is_unit(&c) {
            return false;
        }
        let rest = self - &Self::from_rational_unchecked(&self.ring, c);
        rest.is_nilpotent()
    }

    fn from_rational_unchecked(ring: &Ring, q: BigRational) -> RingElem {
        let mut e = Self::zero(ring);
        e.insert(vec![0; ring.num_generators()], q);
        e
    }

    /// Inverse of a unit via the geometric series in its nilpotent part.
    pub fn invert_unit(&self) -> Result<RingElem> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let c = self.constant_coeff();
        let c_inv = self.ring.base_inverse(&c).expect("unit constant");
        let c_inv_elem = Self::from_rational_unchecked(&self.ring, c_inv);
        // self = c (1 + m) with m nilpotent
        let m = &(self * &c_inv_elem) - &Self::one(&self.ring);
        let neg_m = -&m;
        let mut sum = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        for _ in 0..NILPOTENCY_CAP {
            power = &power * &neg_m;
            if power.is_zero() {
                return Ok(&sum * &c_inv_elem);
            }
            sum = &sum + &power;
        }
        Err(Error::NotAUnit(format!("{self} (geometric series did not terminate)")))
    }

    /// Smallest `m >= 1` with `self^m = 0`, or `None` if not nilpotent.
    pub fn nilpotency_index(&self) -> Option<u32> {
        if self.is_zero() {
            return Some(1);
        }
        if !self.is_nilpotent() {
            return None;
        }
        let mut power = self.clone();
        for m in 2..=NILPOTENCY_CAP {
            power = &power * self;
            if power.is_zero() {
                return Some(m);
            }
        }
        None
    }

    /// The set of grades of the monomials present (empty for zero).
    pub fn grades(&self) -> BTreeSet<i64> {
        self.terms
            .keys()
            .map(|m| {
                self.ring
                    .generators()
                    .iter()
                    .zip(m)
                    .map(|(g, &e)| g.grade * e as i64)
                    .sum()
            })
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.grades().len() <= 1
    }

    /// Replaces generator `index` by `value` everywhere.
    pub fn substitute(&self, index: usize, value: &RingElem) -> RingElem {
        let mut out = Self::zero(&self.ring);
        let mut powers: Vec<RingElem> = vec![Self::one(&self.ring)];
        for (m, c) in &self.terms {
            let e = m[index] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest[index] = 0;
            let term = Self::from_terms(&self.ring, [(rest, c.clone())]);
            out = &out + &(&term * &powers[e]);
        }
        out
    }

    /// Reinterprets the element in `target`, which must have the same
    /// generator list; coefficients are canonicalised there.
    pub(crate) fn coerce(&self, target: &Ring) -> RingElem {
        debug_assert_eq!(target.num_generators(), self.ring.num_generators());
        Self::from_terms(target, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Sets every power-relation generator to zero.
    pub fn reduced_image(&self) -> RingElem {
        let ring = &self.ring;
        Self::from_terms(
            ring,
            self.terms
                .iter()
                .filter(|(m, _)| {
                    ring.generators()
                        .iter()
                        .zip(m.iter())
                        .all(|(g, &e)| g.nilpotency.is_none() || e == 0)
                })
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub(crate) fn fmt_terms(&self) -> Vec<Term> {
        // lexicographically largest exponent vector first
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = monomial_string(&self.ring, m);
                Term::scalar(c.clone(), mono)
            })
            .collect()
    }
}

fn monomial_string(ring: &RingDesc, m: &[u32]) -> String {
    let parts: Vec<String> = ring
        .generators()
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| if e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
        .collect();
    parts.join("*")
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.fmt_terms())
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &'a RingElem) -> RingElem {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &'a RingElem) -> RingElem {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &'a RingElem) -> RingElem {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> Ring {
        RingDesc::integers_mod(n).unwrap().into_ring()
    }

    fn dual_numbers() -> Ring {
        RingDesc::integers().with_generator("e", 0, Some(2)).unwrap().into_ring()
    }

    #[test]
    fn modular_addition() {
        let r = zmod(4);
        let s = &RingElem::from_int(&r, 2) + &RingElem::from_int(&r, 3);
        assert_eq!(s, RingElem::from_int(&r, 1));
    }

    #[test]
    fn power_relation_kills_square() {
        let r = dual_numbers();
        let e = RingElem::generator(&r, 0);
        assert!((&e * &e).is_zero());
    }

    #[test]
    fn free_generators_multiply() {
        let r = RingDesc::integers()
            .with_generator("a11", -1, None)
            .unwrap()
            .with_generator("a12", -2, None)
            .unwrap()
            .into_ring();
        let p = &RingElem::generator(&r, 0) * &RingElem::generator(&r, 1);
        assert_eq!(p.to_string(), "a11*a12");
        assert_eq!(p.grades().into_iter().collect::<Vec<_>>(), vec![-3]);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = RingElem::one(&zmod(4));
        let b = RingElem::one(&zmod(6));
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn nilpotence() {
        let r = zmod(12);
        assert!(RingElem::from_int(&r, 6).is_nilpotent());
        assert!(!RingElem::from_int(&r, 4).is_nilpotent());
        assert!(RingElem::zero(&RingDesc::rationals().into_ring()).is_nilpotent());
        let d = dual_numbers();
        let one_plus_e = &RingElem::one(&d) + &RingElem::generator(&d, 0);
        assert!(!one_plus_e.is_nilpotent());
        assert_eq!(RingElem::from_int(&r, 6).nilpotency_index(), Some(2));
    }

    #[test]
    fn units_and_inverses() {
        let r = zmod(12);
        let five = RingElem::from_int(&r, 5);
        assert!(five.is_unit());
        assert_eq!(five.invert_unit().unwrap(), five);

        let d = dual_numbers();
        let e = RingElem::generator(&d, 0);
        let one = RingElem::one(&d);
        let inv = (&one + &e).invert_unit().unwrap();
        assert_eq!(inv, &one - &e);

        let z = RingDesc::integers().into_ring();
        assert!(!RingElem::from_int(&z, 2).is_unit());
        assert!(matches!(RingElem::from_int(&z, 2).invert_unit(), Err(Error::NotAUnit(_))));
        assert!(RingElem::from_int(&z, -1).is_unit());
    }

    #[test]
    fn unit_over_nonreduced_polynomial_ring() {
        // 1 + 2a is a unit in (Z/4)[a]; 1 + a is not
        let r = RingDesc::integers_mod(4).unwrap().with_generator("a", 0, None).unwrap().into_ring();
        let a = RingElem::generator(&r, 0);
        let one = RingElem::one(&r);
        let u = &one + &a.mul_int(2);
        assert!(u.is_unit());
        assert!((&u * &u.invert_unit().unwrap()).is_one());
        assert!(!(&one + &a).is_unit());
    }

    #[test]
    fn substitution() {
        let r = RingDesc::integers().with_generator("a", 0, None).unwrap().with_generator("b", 0, None).unwrap().into_ring();
        let a = RingElem::generator(&r, 0);
        let b = RingElem::generator(&r, 1);
        let f = &(&a * &a) + &b;
        let g = f.substitute(0, &b);
        assert_eq!(g, &(&b * &b) + &b);
    }
}
