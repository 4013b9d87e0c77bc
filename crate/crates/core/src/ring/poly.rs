use std::fmt;

use super::{check_same_ring, Ring, RingElem};
use crate::error::{Error, Result};
use crate::fmt_terms::{power_string, write_terms, Term};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// Trailing zeros are stripped, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    coeffs: Vec<RingElem>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.display("t"))
    }
}

impl Polynomial {
    pub fn new(ring: &Ring, coeffs: Vec<RingElem>) -> Result<Polynomial> {
        for c in &coeffs {
            check_same_ring(ring, c.ring())?;
        }
        Ok(Self::from_coeffs(ring, coeffs))
    }

    pub(crate) fn from_coeffs(ring: &Ring, mut coeffs: Vec<RingElem>) -> Polynomial {
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        Polynomial {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &Ring) -> Polynomial {
        Self::from_coeffs(ring, Vec::new())
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Self::from_coeffs(ring, vec![RingElem::one(ring)])
    }

    pub fn constant(c: RingElem) -> Polynomial {
        let ring = c.ring().clone();
        Self::from_coeffs(&ring, vec![c])
    }

    /// The monomial `t^k`.
    pub fn monomial(ring: &Ring, k: usize) -> Polynomial {
        let mut coeffs = vec![RingElem::zero(ring); k + 1];
        coeffs[k] = RingElem::one(ring);
        Self::from_coeffs(ring, coeffs)
    }

    /// `t - c`.
    pub fn linear_root(c: &RingElem) -> Polynomial {
        let ring = c.ring().clone();
        Self::from_coeffs(&ring, vec![-c, RingElem::one(&ring)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RingElem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| RingElem::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(RingElem::is_one)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Self::from_coeffs(&self.ring, coeffs))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Self::from_coeffs(&self.ring, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut coeffs = vec![RingElem::zero(&self.ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Self::from_coeffs(&self.ring, coeffs))
    }

    pub fn scale(&self, c: &RingElem) -> Polynomial {
        Self::from_coeffs(&self.ring, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Division with remainder by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        check_same_ring(&self.ring, &divisor.ring)?;
        if !divisor.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "divisor {} is not monic",
                divisor.display("t")
            )));
        }
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(&self.ring), self.clone()));
        }
        let mut quot = vec![RingElem::zero(&self.ring); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let lead = rem[k].clone();
            if lead.is_zero() {
                continue;
            }
            quot[k - d] = lead.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k - d + j] = &rem[k - d + j] - &(&lead * c);
            }
        }
        rem.truncate(d);
        Ok((Self::from_coeffs(&self.ring, quot), Self::from_coeffs(&self.ring, rem)))
    }

    pub fn eval(&self, at: &RingElem) -> Result<RingElem> {
        check_same_ring(&self.ring, at.ring())?;
        let mut acc = RingElem::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        Ok(acc)
    }

    /// Substitutes another polynomial for the variable.
    pub fn compose(&self, inner: &Polynomial) -> Result<Polynomial> {
        check_same_ring(&self.ring, &inner.ring)?;
        let mut acc = Self::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(inner)?.checked_add(&Self::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// Canonical text in the variable `var`, highest degree first.
    pub fn display(&self, var: &str) -> String {
        struct D<'a>(&'a Polynomial, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let terms: Vec<Term> = self
                    .0
                    .coeffs
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| Term::elem(c.clone(), power_string(self.1, k as i64)))
                    .collect();
                write_terms(f, &terms)
            }
        }
        D(self, var).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDesc;

    #[test]
    fn monic_division() {
        let r = RingDesc::integers().into_ring();
        let one = RingElem::one(&r);
        // (t^3 + 2t + 1) = (t^2 + t + 3)(t - 1) + 4
        let f = Polynomial::new(&r, vec![one.clone(), RingElem::from_int(&r, 2), RingElem::zero(&r), one.clone()]).unwrap();
        let g = Polynomial::linear_root(&one);
        let (q, rem) = f.div_rem_monic(&g).unwrap();
        assert_eq!(q.display("t"), "t^2 + t + 3");
        assert_eq!(rem.display("t"), "4");
        assert_eq!(q.checked_mul(&g).unwrap().checked_add(&rem).unwrap(), f);
    }

    #[test]
    fn product_of_linear_factors_prints_canonically() {
        let r = RingDesc::integers()
            .with_generator("a", 0, Some(2))
            .unwrap()
            .with_generator("b", 0, Some(2))
            .unwrap()
            .into_ring();
        let a = RingElem::generator(&r, 0);
        let b = RingElem::generator(&r, 1);
        let p = Polynomial::linear_root(&a).checked_mul(&Polynomial::linear_root(&b)).unwrap();
        assert_eq!(p.display("t"), "t^2 + (-a - b)*t + a*b");
    }
}
