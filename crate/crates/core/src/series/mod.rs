//! Truncated multivariate power series and single-variable Laurent series.
//!
//! A [`TruncSeries`] of order `N` knows every coefficient of total degree
//! below `N` exactly and nothing above. Binary operations report the
//! smallest order both operands justify; nothing ever extends precision.

mod laurent;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::fmt_terms::{power_string, write_terms, Term};
use crate::ring::{check_same_ring, Base, Polynomial, Ring, RingElem};

pub use laurent::{LaurentSeries, EXACT_ORDER};

pub type Exponent = Vec<u32>;

#[derive(Clone)]
pub struct TruncSeries {
    ring: Ring,
    vars: Vec<String>,
    order: u32,
    terms: BTreeMap<Exponent, RingElem>,
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.vars == other.vars && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for TruncSeries {}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({self} + O(deg {}) over {})", self.order, self.ring)
    }
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl TruncSeries {
    pub fn zero(ring: &Ring, vars: &[&str], order: u32) -> TruncSeries {
        TruncSeries {
            ring: ring.clone(),
            vars: vars.iter().map(|v| v.to_string()).collect(),
            order,
            terms: BTreeMap::new(),
        }
    }

    fn zero_like(&self, order: u32) -> TruncSeries {
        TruncSeries {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: &RingElem, vars: &[&str], order: u32) -> TruncSeries {
        let mut s = Self::zero(c.ring(), vars, order);
        s.add_term(vec![0; vars.len()], c.clone());
        s
    }

    pub fn one(ring: &Ring, vars: &[&str], order: u32) -> TruncSeries {
        Self::constant(&RingElem::one(ring), vars, order)
    }

    /// The series consisting of the single variable `vars[index]`.
    pub fn var(ring: &Ring, vars: &[&str], index: usize, order: u32) -> TruncSeries {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut s = Self::zero(ring, vars, order);
        s.add_term(e, RingElem::one(ring));
        s
    }

    pub fn from_terms(
        ring: &Ring,
        vars: &[&str],
        order: u32,
        terms: impl IntoIterator<Item = (Exponent, RingElem)>,
    ) -> Result<TruncSeries> {
        let mut s = Self::zero(ring, vars, order);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::InvalidArgument(format!("exponent {e:?} does not match {} variables", vars.len())));
            }
            check_same_ring(ring, c.ring())?;
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// A univariate series from a dense polynomial, truncated at `order`.
    pub fn from_polynomial(p: &Polynomial, var: &str, order: u32) -> TruncSeries {
        let mut s = Self::zero(p.ring(), &[var], order);
        for (k, c) in p.coeffs().iter().enumerate() {
            s.add_term(vec![k as u32], c.clone());
        }
        s
    }

    /// The stored coefficients of a univariate series as a polynomial.
    pub fn to_polynomial(&self) -> Polynomial {
        debug_assert_eq!(self.vars.len(), 1);
        let n = self.terms.keys().map(|e| e[0] as usize + 1).max().unwrap_or(0);
        let coeffs = (0..n).map(|k| self.coeff(&[k as u32])).collect();
        Polynomial::new(&self.ring, coeffs).expect("same ring")
    }

    fn add_term(&mut self, e: Exponent, c: RingElem) {
        if degree(&e) >= self.order || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &RingElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> RingElem {
        self.terms.get(e).cloned().unwrap_or_else(|| RingElem::zero(&self.ring))
    }

    pub fn constant_term(&self) -> RingElem {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Largest exponent of variable `index` among stored terms.
    pub fn max_exponent(&self, index: usize) -> u32 {
        self.terms.keys().map(|e| e[index]).max().unwrap_or(0)
    }

    pub fn truncate(&self, order: u32) -> TruncSeries {
        let order = order.min(self.order);
        let mut out = self.zero_like(order);
        for (e, c) in &self.terms {
            if degree(e) < order {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Same coefficients under new variable names.
    pub fn rename_vars(&self, vars: &[&str]) -> Result<TruncSeries> {
        if vars.len() != self.vars.len() {
            return Err(Error::InvalidArgument("variable count changed on rename".into()));
        }
        let mut out = self.clone();
        out.vars = vars.iter().map(|v| v.to_string()).collect();
        Ok(out)
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.truncate(other.order);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> TruncSeries {
        let mut out = self.zero_like(self.order);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c);
        }
        out
    }

    pub fn checked_mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = self.zero_like(order);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da >= order {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da + degree(eb) >= order {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RingElem) -> Result<TruncSeries> {
        check_same_ring(&self.ring, c.ring())?;
        let mut out = self.zero_like(self.order);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        Ok(out)
    }

    pub fn mul_int(&self, n: i64) -> TruncSeries {
        let mut out = self.zero_like(self.order);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.mul_int(n));
        }
        out
    }

    pub fn pow(&self, k: u32) -> TruncSeries {
        let mut result = self.zero_like(self.order);
        result.add_term(vec![0; self.vars.len()], RingElem::one(&self.ring));
        for _ in 0..k {
            result = result.checked_mul(self).expect("compatible");
        }
        result
    }

    /// Substitutes `inners[i]` for the `i`-th variable of `self`.
    ///
    /// Inner series may have nilpotent constant terms; a constant term of
    /// nilpotency index `v` costs `v - 1` degrees of precision, because the
    /// unknown tail of the outer series then reaches lower degrees.
    pub fn compose(&self, inners: &[TruncSeries]) -> Result<TruncSeries> {
        self.compose_with_cancel(inners, None)
    }

    pub(crate) fn compose_with_cancel(&self, inners: &[TruncSeries], cancel: Option<&CancelToken>) -> Result<TruncSeries> {
        if inners.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "composition needs {} inner series, got {}",
                self.vars.len(),
                inners.len()
            )));
        }
        let Some(first) = inners.first() else {
            return Ok(self.clone());
        };
        check_same_ring(&self.ring, &first.ring)?;
        let mut order = self.order as i64;
        let mut inner_order = u32::MAX;
        for inner in inners {
            first.check_compatible(inner)?;
            let c = inner.constant_term();
            let nu = c
                .nilpotency_index()
                .ok_or_else(|| Error::NonNilpotentConstantTerm(c.to_string()))?;
            order -= nu as i64 - 1;
            inner_order = inner_order.min(inner.order);
        }
        let order = order.min(inner_order as i64);
        if order < 1 {
            return Err(Error::OrderTooLow(format!(
                "composition leaves no known coefficients (outer order {})",
                self.order
            )));
        }
        let order = order as u32;
        let mut result = first.zero_like(order);
        // powers[i][k] = inners[i]^k
        let mut powers: Vec<Vec<TruncSeries>> = Vec::with_capacity(inners.len());
        for (i, inner) in inners.iter().enumerate() {
            let inner = inner.truncate(order);
            let mut ps = vec![result.one_like()];
            for _ in 0..self.max_exponent(i) {
                CancelToken::check(cancel)?;
                let next = ps.last().unwrap().checked_mul(&inner)?;
                ps.push(next);
            }
            powers.push(ps);
        }
        for (e, c) in &self.terms {
            CancelToken::check(cancel)?;
            let mut term = result.one_like();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.checked_mul(&powers[i][k as usize])?;
                }
            }
            for (te, tc) in &term.terms {
                result.add_term(te.clone(), c * tc);
            }
        }
        Ok(result)
    }

    fn one_like(&self) -> TruncSeries {
        let mut s = self.zero_like(self.order);
        s.add_term(vec![0; self.vars.len()], RingElem::one(&self.ring));
        s
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<TruncSeries> {
        let c = self.constant_term();
        let c_inv = c.invert_unit()?;
        let rest = self.checked_sub(&Self::constant(&c, &self.var_refs(), self.order))?;
        // self = c (1 + c^-1 rest); sum the geometric series in -c^-1 rest
        let step = rest.scale(&(-&c_inv))?;
        let mut sum = self.one_like();
        let mut power = self.one_like();
        for _ in 1..self.order {
            power = power.checked_mul(&step)?;
            if power.is_zero() {
                break;
            }
            sum = sum.checked_add(&power)?;
        }
        sum.scale(&c_inv)
    }

    /// Compositional inverse of a univariate coordinate `f = u x + ...`,
    /// `u` a unit, solved one degree at a time.
    pub fn revert(&self) -> Result<TruncSeries> {
        if self.vars.len() != 1 {
            return Err(Error::InvalidArgument("reversion needs a univariate series".into()));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::NotACoordinate(format!("{self} has nonzero constant term")));
        }
        let lead = self.coeff(&[1]);
        let lead_inv = lead
            .invert_unit()
            .map_err(|_| Error::NotACoordinate(format!("linear coefficient {lead} is not a unit")))?;
        let mut g = self.zero_like(self.order);
        g.add_term(vec![1], lead_inv.clone());
        for d in 2..self.order {
            let fg = self.compose(std::slice::from_ref(&g))?;
            let err = fg.coeff(&[d]);
            if !err.is_zero() {
                g.add_term(vec![d], -&(&lead_inv * &err));
            }
        }
        Ok(g)
    }

    /// Formal partial derivative; the result knows one degree less.
    pub fn derivative(&self, index: usize) -> TruncSeries {
        let mut out = self.zero_like(self.order.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[index] -= 1;
            out.add_term(d, c.mul_int(e[index] as i64));
        }
        out
    }

    /// Formal antiderivative with zero constant of integration; needs `Q`.
    pub fn integrate(&self, index: usize) -> Result<TruncSeries> {
        if *self.ring.base() != Base::Rationals {
            return Err(Error::RequiresRationalCoefficients(self.ring.to_string()));
        }
        let mut out = self.zero_like(self.order + 1);
        for (e, c) in &self.terms {
            let mut d = e.clone();
            d[index] += 1;
            let q = BigRational::new(BigInt::from(1), BigInt::from(d[index]));
            out.add_term(d, c.mul_scalar(&q));
        }
        Ok(out)
    }

    /// Re-expresses `self` in a larger variable list: variable `i` of `self`
    /// becomes `vars[positions[i]]`.
    pub fn embed(&self, vars: &[&str], positions: &[usize]) -> TruncSeries {
        debug_assert_eq!(positions.len(), self.vars.len());
        let mut out = Self::zero(&self.ring, vars, self.order);
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                f[positions[i]] += k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Sets variable `index` to zero, keeping the variable list.
    pub fn set_zero(&self, index: usize) -> TruncSeries {
        let mut out = self.zero_like(self.order);
        for (e, c) in &self.terms {
            if e[index] == 0 {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Keeps only the listed variables, dropping terms that involve others.
    pub fn restrict_to(&self, keep: &[usize]) -> TruncSeries {
        let vars: Vec<&str> = keep.iter().map(|&i| self.vars[i].as_str()).collect();
        let mut out = Self::zero(&self.ring, &vars, self.order);
        for (e, c) in &self.terms {
            let dropped = e.iter().enumerate().any(|(i, &k)| k > 0 && !keep.contains(&i));
            if !dropped {
                out.terms.insert(keep.iter().map(|&i| e[i]).collect(), c.clone());
            }
        }
        out
    }

    pub(crate) fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// Terms in print order: ascending total degree, then descending lex.
    pub(crate) fn sorted_terms(&self) -> Vec<(&Exponent, &RingElem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        v
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<Term> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = self
                    .vars
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| power_string(v, k as i64))
                    .collect();
                Term::elem(c.clone(), mono.join("*"))
            })
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

    fn q() -> Ring {
        RingDesc::rationals().into_ring()
    }

    fn dual() -> Ring {
        RingDesc::integers().with_generator("e", 0, Some(2)).unwrap().into_ring()
    }

    fn x(ring: &Ring, order: u32) -> TruncSeries {
        TruncSeries::var(ring, &["x"], 0, order)
    }

    fn one(ring: &Ring, order: u32) -> TruncSeries {
        TruncSeries::one(ring, &["x"], order)
    }

    #[test]
    fn bivariate_products() {
        let r = z();
        let xs = TruncSeries::var(&r, &["x", "y"], 0, 5);
        let ys = TruncSeries::var(&r, &["x", "y"], 1, 5);
        assert_eq!(xs.checked_mul(&ys).unwrap().to_string(), "x*y");
        let s = xs.truncate(3).checked_add(&ys).unwrap();
        assert_eq!(s.pow(2).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn difference_of_squares() {
        let r = z();
        let a = one(&r, 3).checked_add(&x(&r, 3)).unwrap();
        let b = one(&r, 3).checked_sub(&x(&r, 3)).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap().to_string(), "1 - x^2");
    }

    #[test]
    fn order_is_minimum() {
        let r = z();
        let s = x(&r, 3).checked_add(&x(&r, 7)).unwrap();
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn mismatches_are_errors() {
        let r = z();
        let a = x(&r, 3);
        let b = TruncSeries::var(&r, &["y"], 0, 3);
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch { .. })));
        let c = x(&q(), 3);
        assert!(matches!(a.checked_mul(&c), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn compose_square_with_sum() {
        let r = z();
        let t = TruncSeries::var(&r, &["t"], 0, 3);
        let outer = t.pow(2);
        let xs = TruncSeries::var(&r, &["x", "y"], 0, 3);
        let ys = TruncSeries::var(&r, &["x", "y"], 1, 3);
        let got = outer.compose(&[xs.checked_add(&ys).unwrap()]).unwrap();
        assert_eq!(got.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn compose_geometric_with_nilpotent_constant() {
        // 1/(1-t) known to order 4, inner e + x known to order 3
        let r = dual();
        let e = RingElem::generator(&r, 0);
        let t = TruncSeries::var(&r, &["t"], 0, 4);
        let outer = TruncSeries::one(&r, &["t"], 4).checked_sub(&t).unwrap().invert().unwrap();
        let inner = TruncSeries::constant(&e, &["x"], 3).checked_add(&x(&r, 3)).unwrap();
        let got = outer.compose(&[inner]).unwrap();
        assert_eq!(got.order(), 3);
        assert_eq!(got.to_string(), "(e + 1) + (2*e + 1)*x + (3*e + 1)*x^2");
    }

    #[test]
    fn compose_identity() {
        let r = z();
        let t = TruncSeries::var(&r, &["t"], 0, 6);
        let inner = one(&r, 6).checked_add(&x(&r, 6)).unwrap().invert().unwrap().checked_sub(&one(&r, 6)).unwrap();
        assert_eq!(t.compose(std::slice::from_ref(&inner)).unwrap(), inner);
    }

    #[test]
    fn compose_rejects_unit_constant() {
        let r = z();
        let t = TruncSeries::var(&r, &["t"], 0, 4);
        let inner = one(&r, 4).checked_add(&x(&r, 4)).unwrap();
        assert!(matches!(t.compose(&[inner]), Err(Error::NonNilpotentConstantTerm(_))));
    }

    #[test]
    fn inversion() {
        let r = z();
        let a = one(&r, 4).checked_add(&x(&r, 4)).unwrap();
        assert_eq!(a.invert().unwrap().to_string(), "1 - x + x^2 - x^3");

        let qr = q();
        let two = TruncSeries::constant(&RingElem::from_int(&qr, 2), &["x"], 2);
        let b = two.checked_add(&x(&qr, 2)).unwrap();
        assert_eq!(b.invert().unwrap().to_string(), "1/2 - 1/4*x");

        let d = dual();
        let e = TruncSeries::constant(&RingElem::generator(&d, 0), &["x"], 2);
        let c = one(&d, 2).checked_add(&e).unwrap().checked_add(&x(&d, 2)).unwrap();
        let inv = c.invert().unwrap();
        // (1 - e) - (1 - 2e) x
        assert_eq!(inv.to_string(), "(-e + 1) + (2*e - 1)*x");
        assert_eq!(c.checked_mul(&inv).unwrap(), one(&d, 2));

        let two_z = TruncSeries::constant(&RingElem::from_int(&r, 2), &["x"], 3);
        assert!(matches!(two_z.invert(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn reversion() {
        let r = z();
        let xs = x(&r, 4);
        assert_eq!(xs.revert().unwrap(), xs);
        let f = xs.checked_add(&xs.pow(2)).unwrap();
        let g = f.revert().unwrap();
        assert_eq!(g.to_string(), "x - x^2 + 2*x^3");
        assert_eq!(f.compose(std::slice::from_ref(&g)).unwrap(), xs);
        assert_eq!(g.compose(std::slice::from_ref(&f)).unwrap(), xs);

        let qr = q();
        let two_x = x(&qr, 4).mul_int(2);
        assert_eq!(two_x.revert().unwrap().to_string(), "1/2*x");

        assert!(matches!(xs.mul_int(2).revert(), Err(Error::NotACoordinate(_))));
    }

    #[test]
    fn derivatives() {
        let r = z();
        let cube = x(&r, 5).pow(3);
        let d = cube.derivative(0);
        assert_eq!(d.to_string(), "3*x^2");
        assert_eq!(d.order(), 4);

        let dr = dual();
        let e = TruncSeries::constant(&RingElem::generator(&dr, 0), &["x"], 5);
        let s = e.checked_add(&x(&dr, 5).pow(2)).unwrap();
        assert_eq!(s.derivative(0).to_string(), "2*x");
    }

    #[test]
    fn integration_needs_rationals() {
        let qr = q();
        let s = one(&qr, 3).checked_add(&x(&qr, 3)).unwrap();
        assert_eq!(s.integrate(0).unwrap().to_string(), "x + 1/2*x^2");
        assert!(matches!(x(&z(), 3).integrate(0), Err(Error::RequiresRationalCoefficients(_))));
    }
}
