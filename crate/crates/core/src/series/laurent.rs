use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fmt_terms::{power_string, write_terms, Term};
use crate::ring::{check_same_ring, Ring, RingElem};

use super::TruncSeries;

/// Order used for series that are known exactly, such as finite tails and
/// monomials.
pub const EXACT_ORDER: i64 = i64::MAX / 4;

/// Single-variable Laurent series `sum_{m <= k < N} a_k x^k + O(x^N)`.
///
/// `lower` is a bound, not necessarily the valuation; it only matters for
/// how much precision a product keeps.
#[derive(Clone)]
pub struct LaurentSeries {
    ring: Ring,
    var: String,
    lower: i64,
    order: i64,
    terms: BTreeMap<i64, RingElem>,
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.var == other.var && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for LaurentSeries {}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self} + O({}^{}) over {})", self.var, self.order, self.ring)
    }
}

impl LaurentSeries {
    pub fn zero(ring: &Ring, var: &str, lower: i64, order: i64) -> Result<LaurentSeries> {
        if order <= lower {
            return Err(Error::InvalidArgument(format!("Laurent order {order} must exceed lower bound {lower}")));
        }
        Ok(LaurentSeries {
            ring: ring.clone(),
            var: var.to_string(),
            lower,
            order,
            terms: BTreeMap::new(),
        })
    }

    pub fn new(
        ring: &Ring,
        var: &str,
        lower: i64,
        order: i64,
        terms: impl IntoIterator<Item = (i64, RingElem)>,
    ) -> Result<LaurentSeries> {
        let mut s = Self::zero(ring, var, lower, order)?;
        for (k, c) in terms {
            check_same_ring(ring, c.ring())?;
            if k < lower {
                return Err(Error::InvalidArgument(format!("exponent {k} below lower bound {lower}")));
            }
            s.add_term(k, c);
        }
        Ok(s)
    }

    /// `c x^k` known up to `x^order`.
    pub fn monomial(c: &RingElem, var: &str, k: i64, order: i64) -> Result<LaurentSeries> {
        Self::new(c.ring(), var, k, order, [(k, c.clone())])
    }

    /// `x^shift * s` for a univariate truncated series `s`.
    pub fn from_trunc(s: &TruncSeries, shift: i64) -> LaurentSeries {
        debug_assert_eq!(s.num_vars(), 1);
        let mut out = LaurentSeries {
            ring: s.ring().clone(),
            var: s.vars()[0].clone(),
            lower: shift,
            order: shift + s.order().max(1) as i64,
            terms: BTreeMap::new(),
        };
        if s.order() == 0 {
            out.order = shift;
            out.lower = shift - 1;
        }
        for (e, c) in s.terms() {
            out.add_term(e[0] as i64 + shift, c.clone());
        }
        out
    }

    /// The nonnegative part shifted down by `shift`, as a truncated series:
    /// the coefficient of `x^k` in the result is `a_{k + shift}`.
    /// Terms below `x^shift` are dropped.
    pub fn to_trunc(&self, shift: i64) -> TruncSeries {
        let order = (self.order - shift).max(0) as u32;
        let mut out = TruncSeries::zero(&self.ring, &[self.var.as_str()], order);
        for (&k, c) in &self.terms {
            if k >= shift {
                out.add_term(vec![(k - shift) as u32], c.clone());
            }
        }
        out
    }

    fn add_term(&mut self, k: i64, c: RingElem) {
        if k >= self.order || c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&k) {
            Some(existing) => existing + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, sum);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn lower_bound(&self) -> i64 {
        self.lower
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RingElem)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> RingElem {
        self.terms.get(&k).cloned().unwrap_or_else(|| RingElem::zero(&self.ring))
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// The coefficient of `x^-1`.
    pub fn residue(&self) -> RingElem {
        self.coeff(-1)
    }

    pub fn truncate(&self, order: i64) -> LaurentSeries {
        let mut out = self.clone();
        out.order = order.min(self.order).max(self.lower + 1);
        out.terms.retain(|&k, _| k < out.order);
        out
    }

    fn check_compatible(&self, other: &LaurentSeries) -> Result<()> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.var != other.var {
            return Err(Error::VariableMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_compatible(other)?;
        let lower = self.lower.min(other.lower);
        let order = self.order.min(other.order).max(lower + 1);
        let mut out = Self::zero(&self.ring, &self.var, lower, order)?;
        for (&k, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> LaurentSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn checked_sub(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_compatible(other)?;
        let lower = self.lower + other.lower;
        let order = (self.order + other.lower).min(other.order + self.lower);
        let mut out = Self::zero(&self.ring, &self.var, lower, order)?;
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                out.add_term(i + j, a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RingElem) -> Result<LaurentSeries> {
        check_same_ring(&self.ring, c.ring())?;
        let mut out = self.clone();
        out.terms.clear();
        for (&k, a) in &self.terms {
            out.add_term(k, a * c);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> LaurentSeries {
        let mut acc = Self::monomial(&RingElem::one(&self.ring), &self.var, 0, EXACT_ORDER).expect("valid");
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("compatible");
        }
        acc
    }

    pub fn rename(&self, var: &str) -> LaurentSeries {
        let mut out = self.clone();
        out.var = var.to_string();
        out
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            lower: self.lower + k,
            order: self.order + k,
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Formal derivative; bounds drop by one.
    pub fn derivative(&self) -> LaurentSeries {
        let mut out = LaurentSeries {
            ring: self.ring.clone(),
            var: self.var.clone(),
            lower: self.lower - 1,
            order: self.order - 1,
            terms: BTreeMap::new(),
        };
        for (&k, c) in &self.terms {
            out.add_term(k - 1, c.mul_int(k));
        }
        out
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(&k, c)| Term::elem(c.clone(), power_string(&self.var, k)))
            .collect();
        write_terms(f, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDesc;

    fn z() -> Ring {
        RingDesc::integers().into_ring()
    }

    fn mono(r: &Ring, c: i64, k: i64, order: i64) -> LaurentSeries {
        LaurentSeries::monomial(&RingElem::from_int(r, c), "x", k, order).unwrap()
    }

    #[test]
    fn inverse_times_variable() {
        let r = z();
        let p = mono(&r, 1, -1, 5).checked_mul(&mono(&r, 1, 1, 5)).unwrap();
        assert_eq!(p.to_string(), "1");
    }

    #[test]
    fn square_of_polar_part() {
        let r = z();
        let s = mono(&r, 1, -1, 4).checked_add(&mono(&r, 1, 0, 4)).unwrap();
        let sq = s.checked_mul(&s).unwrap();
        assert_eq!(sq.to_string(), "x^-2 + 2*x^-1 + 1");
        assert_eq!(sq.lower_bound(), -2);
        assert_eq!(sq.order(), 3);
    }

    #[test]
    fn nilpotent_polar_part_squares_to_zero() {
        let r = RingDesc::integers().with_generator("e", 0, Some(2)).unwrap().into_ring();
        let s = LaurentSeries::monomial(&RingElem::generator(&r, 0), "x", -1, 3).unwrap();
        assert!(s.checked_mul(&s).unwrap().is_zero());
    }

    #[test]
    fn derivative_of_inverse() {
        let r = z();
        let d = mono(&r, 1, -1, 3).derivative();
        assert_eq!(d.to_string(), "-x^-2");
        assert_eq!((d.lower_bound(), d.order()), (-2, 2));
    }

    #[test]
    fn residue_and_shift() {
        let r = z();
        let s = mono(&r, 3, -1, 2).checked_add(&mono(&r, 5, 1, 2)).unwrap();
        assert_eq!(s.residue(), RingElem::from_int(&r, 3));
        assert_eq!(s.shift(1).to_string(), "3 + 5*x^2");
        assert_eq!(s.to_trunc(-1).to_string(), "3 + 5*x^2");
    }
}
