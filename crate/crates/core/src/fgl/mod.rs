//! One-dimensional commutative formal group laws over constructible rings.

mod charp;
mod universal;

use std::fmt;

use crate::cancel::CancelToken;
use crate::error::{Axiom, Error, Result};
use crate::ring::{check_same_ring, Base, Ring, RingElem};
use crate::series::TruncSeries;

pub use charp::{additive_decompose, frobenius_decompose, height, landweber_sequence, Height, LandweberTerm, Regularity};
pub use universal::{universal_fgl, universal_fgl_with_cancel, universal_generator_name, Relation, UniversalFgl};

const XY: [&str; 2] = ["x", "y"];
const XYZ: [&str; 3] = ["x", "y", "z"];

/// A bivariate series `F(x, y)` in the variables `x, y`.
///
/// Values built by [`Fgl::validate`] and the named constructors satisfy the
/// unit, commutativity and associativity axioms to `order()`. [`Fgl::assume`]
/// skips the checks; the universal law uses it because its associativity
/// constraints are exported as relations rather than imposed.
#[derive(Clone, PartialEq, Eq)]
pub struct Fgl {
    series: TruncSeries,
}

impl fmt::Debug for Fgl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fgl({:?})", self.series)
    }
}

impl fmt::Display for Fgl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.series.fmt(f)
    }
}

impl Fgl {
    /// Checks the axioms on `series` truncated to `order`, reporting the
    /// first failure: unit, then commutativity, then associativity.
    pub fn validate(series: &TruncSeries, order: u32) -> Result<Fgl> {
        Self::validate_with_cancel(series, order, None)
    }

    pub fn validate_with_cancel(series: &TruncSeries, order: u32, cancel: Option<&CancelToken>) -> Result<Fgl> {
        let fgl = Self::assume_order(series, order)?;
        fgl.check_unit()?;
        fgl.check_commutativity()?;
        CancelToken::check(cancel)?;
        let assoc = fgl.associator(cancel)?;
        if let Some((e, c)) = assoc.sorted_terms().into_iter().next() {
            return Err(Error::AxiomViolation {
                axiom: Axiom::Associativity,
                exponent: e.clone(),
                value: c.to_string(),
            });
        }
        Ok(fgl)
    }

    /// Wraps `series` without checking any axiom.
    pub fn assume(series: &TruncSeries) -> Result<Fgl> {
        Self::assume_order(series, series.order())
    }

    fn assume_order(series: &TruncSeries, order: u32) -> Result<Fgl> {
        if series.vars() != XY {
            return Err(Error::InvalidArgument(format!(
                "a formal group law must be a series in x, y; got [{}]",
                series.vars().join(",")
            )));
        }
        if series.order() < order {
            return Err(Error::OrderTooLow(format!("series known to order {}, asked for {order}", series.order())));
        }
        if order < 2 {
            return Err(Error::OrderTooLow(format!("order {order} is below 2")));
        }
        Ok(Fgl {
            series: series.truncate(order),
        })
    }

    pub fn additive(ring: &Ring, order: u32) -> Fgl {
        let x = TruncSeries::var(ring, &XY, 0, order);
        let y = TruncSeries::var(ring, &XY, 1, order);
        Fgl {
            series: x.checked_add(&y).expect("same ring"),
        }
    }

    /// `x + y + a x y`.
    pub fn h(a: &RingElem, order: u32) -> Fgl {
        let ring = a.ring();
        let x = TruncSeries::var(ring, &XY, 0, order);
        let y = TruncSeries::var(ring, &XY, 1, order);
        let xy = x.checked_mul(&y).expect("same ring").scale(a).expect("same ring");
        Fgl {
            series: x.checked_add(&y).and_then(|s| s.checked_add(&xy)).expect("same ring"),
        }
    }

    /// `x + y + x y`.
    pub fn multiplicative(ring: &Ring, order: u32) -> Fgl {
        Self::h(&RingElem::one(ring), order)
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    pub fn ring(&self) -> &Ring {
        self.series.ring()
    }

    pub fn order(&self) -> u32 {
        self.series.order()
    }

    fn x(&self) -> TruncSeries {
        TruncSeries::var(self.ring(), &["x"], 0, self.order())
    }

    fn check_unit(&self) -> Result<()> {
        // F(x, 0) - x, terms (k, 0) in ascending k
        let x = TruncSeries::var(self.ring(), &XY, 0, self.order());
        let diff = self.series.set_zero(1).checked_sub(&x)?;
        if let Some((e, c)) = diff.sorted_terms().into_iter().next() {
            return Err(Error::AxiomViolation {
                axiom: Axiom::Unit,
                exponent: e.clone(),
                value: c.to_string(),
            });
        }
        Ok(())
    }

    fn check_commutativity(&self) -> Result<()> {
        let swapped = self.series.embed(&XY, &[1, 0]);
        let diff = self.series.checked_sub(&swapped)?;
        if let Some((e, c)) = diff.sorted_terms().into_iter().next() {
            return Err(Error::AxiomViolation {
                axiom: Axiom::Commutativity,
                exponent: e.clone(),
                value: c.to_string(),
            });
        }
        Ok(())
    }

    /// `F(F(x, y), z) - F(x, F(y, z))` in the variables `x, y, z`.
    pub(crate) fn associator(&self, cancel: Option<&CancelToken>) -> Result<TruncSeries> {
        let f = &self.series;
        let n = self.order();
        let fxy = f.embed(&XYZ, &[0, 1]);
        let fyz = f.embed(&XYZ, &[1, 2]);
        let x = TruncSeries::var(self.ring(), &XYZ, 0, n);
        let z = TruncSeries::var(self.ring(), &XYZ, 2, n);
        let left = f.compose_with_cancel(&[fxy, z], cancel)?;
        CancelToken::check(cancel)?;
        let right = f.compose_with_cancel(&[x, fyz], cancel)?;
        left.checked_sub(&right)
    }

    /// `F(a, b)` for ring elements whose degree-`N` monomials all vanish,
    /// so that the truncation does not matter.
    pub fn eval_at(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        check_same_ring(self.ring(), a.ring())?;
        check_same_ring(self.ring(), b.ring())?;
        let n = self.order();
        for k in 0..=n {
            if !(&a.pow(k) * &b.pow(n - k)).is_zero() {
                return Err(Error::OrderTooLow(format!(
                    "F({a}, {b}) needs terms beyond order {n}: ({a})^{k}*({b})^{} is nonzero",
                    n - k
                )));
            }
        }
        let mut acc = RingElem::zero(self.ring());
        for (e, c) in self.series.terms() {
            acc = &acc + &(c * &(&a.pow(e[0]) * &b.pow(e[1])));
        }
        Ok(acc)
    }

    /// The formal inverse `i(x)` with `F(x, i(x)) = 0`.
    pub fn inverse_series(&self) -> Result<TruncSeries> {
        let x = self.x();
        let mut inv = x.neg();
        for d in 2..self.order() {
            let err = self.series.compose(&[x.clone(), inv.clone()])?.coeff(&[d]);
            if !err.is_zero() {
                let fix = TruncSeries::from_terms(self.ring(), &["x"], self.order(), [(vec![d], -&err)])?;
                inv = inv.checked_add(&fix)?;
            }
        }
        Ok(inv)
    }

    /// `[n](x)`, with `[n] = F(x, [n-1])` for positive `n` and
    /// `[-n] = [n](i(x))`.
    pub fn n_series(&self, n: i64) -> Result<TruncSeries> {
        self.n_series_with_cancel(n, None)
    }

    pub fn n_series_with_cancel(&self, n: i64, cancel: Option<&CancelToken>) -> Result<TruncSeries> {
        let x = self.x();
        let mut acc = TruncSeries::zero(self.ring(), &["x"], self.order());
        for _ in 0..n.unsigned_abs() {
            CancelToken::check(cancel)?;
            acc = self.series.compose_with_cancel(&[x.clone(), acc], cancel)?;
        }
        if n < 0 {
            acc = acc.compose_with_cancel(&[self.inverse_series()?], cancel)?;
        }
        Ok(acc)
    }

    /// `F_f(x, y) = f(F(g(x), g(y)))` with `g` the compositional inverse of
    /// the coordinate `f`; the result is revalidated.
    pub fn conjugate(&self, f: &TruncSeries) -> Result<Fgl> {
        check_same_ring(self.ring(), f.ring())?;
        let g = f.revert()?;
        let gx = g.embed(&XY, &[0]);
        let gy = g.embed(&XY, &[1]);
        let inner = self.series.compose(&[gx, gy])?;
        let out = f.compose(&[inner])?;
        Fgl::validate(&out, out.order())
    }

    /// The invariant differential's denominator `H(x) = dF/dy (x, 0)`.
    pub fn invariant_differential(&self) -> TruncSeries {
        let d = self.series.derivative(1).set_zero(1);
        d.restrict_to(&[0])
    }

    /// The normalized logarithm, `f(x) = int dt / H(t)`, checked against
    /// `f(F(x, y)) = f(x) + f(y)`.
    pub fn log(&self) -> Result<TruncSeries> {
        if *self.ring().base() != Base::Rationals {
            return Err(Error::RequiresRationalCoefficients(self.ring().to_string()));
        }
        let h = self.invariant_differential();
        let log = h.invert()?.integrate(0)?;
        let lx = log.embed(&XY, &[0]);
        let ly = log.embed(&XY, &[1]);
        let lhs = log.compose(std::slice::from_ref(&self.series))?;
        let rhs = lx.checked_add(&ly)?;
        let diff = lhs.checked_sub(&rhs)?;
        if let Some((e, c)) = diff.sorted_terms().into_iter().next() {
            return Err(Error::VerificationFailed(format!(
                "log(F(x,y)) - log(x) - log(y) has coefficient {c} at exponent {e:?}"
            )));
        }
        Ok(log)
    }
}

/// Whether `phi(F(x, y)) = G(phi(x), phi(y))` at the common order.
pub fn hom_check(f: &Fgl, g: &Fgl, phi: &TruncSeries) -> Result<bool> {
    check_same_ring(f.ring(), g.ring())?;
    check_same_ring(f.ring(), phi.ring())?;
    if phi.num_vars() != 1 {
        return Err(Error::InvalidArgument("a homomorphism is a univariate series".into()));
    }
    if !phi.constant_term().is_zero() {
        return Err(Error::InvalidArgument(format!("homomorphism {phi} has a nonzero constant term")));
    }
    let lhs = phi.compose(std::slice::from_ref(&f.series))?;
    let px = phi.embed(&XY, &[0]);
    let py = phi.embed(&XY, &[1]);
    let rhs = g.series.compose(&[px, py])?;
    let order = lhs.order().min(rhs.order());
    Ok(lhs.truncate(order) == rhs.truncate(order))
}
