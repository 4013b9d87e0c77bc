//! Characteristic-p tools: additive and Frobenius decompositions, heights
//! and Landweber sequences.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{require_characteristic, Base, RingElem};
use crate::series::TruncSeries;

use super::{Fgl, XY};

/// Coefficients `(a_0, a_1, ...)` with `f = sum a_k x^(p^k)`, after checking
/// `f(x + y) = f(x) + f(y)`. Trailing zero coefficients are dropped.
pub fn additive_decompose(f: &TruncSeries, p: u64) -> Result<Vec<RingElem>> {
    require_characteristic(f.ring(), p)?;
    if f.num_vars() != 1 {
        return Err(Error::InvalidArgument("additive decomposition needs a univariate series".into()));
    }
    let x = TruncSeries::var(f.ring(), &XY, 0, f.order());
    let y = TruncSeries::var(f.ring(), &XY, 1, f.order());
    let lhs = f.compose(&[x.checked_add(&y)?])?;
    let rhs = f.embed(&XY, &[0]).checked_add(&f.embed(&XY, &[1]))?;
    let diff = lhs.checked_sub(&rhs)?;
    if let Some((e, c)) = diff.sorted_terms().into_iter().next() {
        return Err(Error::NotAdditive {
            exponent: e.clone(),
            value: c.to_string(),
        });
    }
    let mut out = Vec::new();
    let mut q = 1u64;
    while q < f.order() as u64 {
        out.push(f.coeff(&[q as u32]));
        q *= p;
    }
    while out.last().is_some_and(RingElem::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// The series `v` with `f = v(x_1^p, ..., x_d^p)`; every partial derivative
/// of `f` must vanish. The result knows `ceil(N / p)` degrees.
pub fn frobenius_decompose(f: &TruncSeries, p: u64) -> Result<TruncSeries> {
    require_characteristic(f.ring(), p)?;
    for i in 0..f.num_vars() {
        if !f.derivative(i).is_zero() {
            return Err(Error::DerivativeNotZero);
        }
    }
    let p32 = p as u32;
    let order = f.order().div_ceil(p32);
    let mut terms = Vec::with_capacity(f.num_terms());
    for (e, c) in f.terms() {
        if e.iter().any(|k| k % p32 != 0) {
            // a coefficient killed by its exponent without p dividing it;
            // impossible over a base of prime characteristic
            return Err(Error::DerivativeNotZero);
        }
        terms.push((e.iter().map(|k| k / p32).collect(), c.clone()));
    }
    TruncSeries::from_terms(f.ring(), &f.var_refs(), order, terms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Height {
    /// Every exponent of `[p](x)` with nonzero coefficient is divisible by
    /// `p^height`; `unit` says whether the coefficient of `x^(p^height)` is
    /// a unit.
    Finite { height: u32, unit: bool },
    /// `[p](x)` vanishes to the given order.
    InfiniteUpToOrder(u32),
}

pub fn height(f: &Fgl, p: u64) -> Result<Height> {
    require_characteristic(f.ring(), p)?;
    let ps = f.n_series(p as i64)?;
    if ps.is_zero() {
        return Ok(Height::InfiniteUpToOrder(f.order()));
    }
    let valuation = |mut k: u64| {
        let mut v = 0;
        while k.is_multiple_of(p) {
            k /= p;
            v += 1;
        }
        v
    };
    let height = ps.terms().map(|(e, _)| valuation(e[0] as u64)).min().unwrap();
    let unit = ps.coeff(&[p.pow(height) as u32]).is_unit();
    Ok(Height::Finite { height, unit })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regularity {
    Regular,
    ZeroDivisor,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LandweberTerm {
    pub n: u32,
    /// `u_0 = p` in the original ring; later terms live in `Z/p[...]`
    /// modulo the earlier ones.
    pub value: RingElem,
    pub regularity: Regularity,
}

/// `u_0 = p, u_1, ..., u_nmax` with `u_n` the coefficient of `x^(p^n)` in
/// `[p](x)` modulo `(u_0, ..., u_{n-1})`.
///
/// The quotients are tracked as `Z/p[gens]` with generators eliminated when
/// some `u_n` is linear in one of them with unit coefficient; such a
/// quotient is again a polynomial ring over a field, so regularity means
/// nonzero. The sequence stops after a unit (the quotient is zero) or when a
/// quotient can no longer be represented this way.
pub fn landweber_sequence(f: &Fgl, p: u64, nmax: u32) -> Result<Vec<LandweberTerm>> {
    let ring = f.ring();
    if *ring.base() != Base::Integers || ring.has_power_relations() {
        return Err(Error::UnsupportedRing(format!(
            "Landweber sequences need Z or a polynomial ring over Z, got {ring}"
        )));
    }
    if !crate::ring::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let top = (p as u128).checked_pow(nmax).unwrap_or(u128::MAX);
    if top >= f.order() as u128 {
        return Err(Error::OrderTooLow(format!(
            "u_{nmax} needs the coefficient of x^{top}, beyond order {}",
            f.order()
        )));
    }
    let mut out = vec![LandweberTerm {
        n: 0,
        value: RingElem::from_bigint(ring, BigInt::from(p)),
        regularity: Regularity::Regular,
    }];
    if nmax == 0 {
        return Ok(out);
    }
    let ps = f.n_series(p as i64)?;
    let quotient = ring.with_base(Base::IntegersMod(p)).into_ring();
    let mut eliminations: Vec<(usize, RingElem)> = Vec::new();
    let mut q = 1u64;
    for n in 1..=nmax {
        q *= p;
        let mut u = ps.coeff(&[q as u32]).coerce(&quotient);
        for (idx, value) in &eliminations {
            u = u.substitute(*idx, value);
        }
        if u.is_zero() {
            out.push(LandweberTerm {
                n,
                value: u,
                regularity: Regularity::ZeroDivisor,
            });
            continue;
        }
        let unit = u.is_unit();
        let elim = linear_elimination(&u);
        out.push(LandweberTerm {
            n,
            value: u,
            regularity: Regularity::Regular,
        });
        match elim {
            Some(e) if !unit => {
                for (_, v) in eliminations.iter_mut() {
                    *v = v.substitute(e.0, &e.1);
                }
                eliminations.push(e);
            }
            _ => break,
        }
    }
    Ok(out)
}

/// For `u = c g + r` with `c` a unit constant and `r` free of the generator
/// `g`, returns `(g, -r / c)`.
fn linear_elimination(u: &RingElem) -> Option<(usize, RingElem)> {
    let ring = u.ring();
    for idx in 0..ring.num_generators() {
        let involving: Vec<_> = u.terms().iter().filter(|(m, _)| m[idx] > 0).collect();
        if involving.len() != 1 {
            continue;
        }
        let (m, c) = involving[0];
        if m.iter().enumerate().any(|(i, &k)| if i == idx { k != 1 } else { k != 0 }) {
            continue;
        }
        let Some(inv) = ring.base_inverse(c) else { continue };
        let g = RingElem::generator(ring, idx);
        let rest = u - &(&g * &RingElem::from_terms(ring, [(vec![0; ring.num_generators()], c.clone())]));
        return Some((idx, (-&rest).mul_scalar(&inv)));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingDesc};

    fn fp(p: u64) -> Ring {
        RingDesc::integers_mod(p).unwrap().into_ring()
    }

    fn x(ring: &Ring, order: u32) -> TruncSeries {
        TruncSeries::var(ring, &["x"], 0, order)
    }

    #[test]
    fn additive_decompositions() {
        for p in [2u64, 3, 5] {
            let r = fp(p);
            let f = x(&r, 12).checked_add(&x(&r, 12).pow(p as u32)).unwrap();
            let got: Vec<String> = additive_decompose(&f, p).unwrap().iter().map(|c| c.to_string()).collect();
            assert_eq!(got, vec!["1", "1"]);
        }
        let r3 = fp(3);
        match additive_decompose(&x(&r3, 5).pow(2), 3) {
            Err(Error::NotAdditive { exponent, value }) => {
                assert_eq!(exponent, vec![1, 1]);
                assert_eq!(value, "2");
            }
            other => panic!("{other:?}"),
        }
        assert!(additive_decompose(&TruncSeries::zero(&r3, &["x"], 5), 3).unwrap().is_empty());
        assert!(matches!(
            additive_decompose(&x(&fp(9), 5), 3),
            Err(Error::WrongCharacteristic(3))
        ));
    }

    #[test]
    fn frobenius_decompositions() {
        let r = fp(2);
        assert_eq!(frobenius_decompose(&x(&r, 8).pow(2), 2).unwrap().to_string(), "x");
        let ra = RingDesc::integers_mod(2).unwrap().with_generator("a", 0, None).unwrap().into_ring();
        let a = RingElem::generator(&ra, 0);
        let f = x(&ra, 8).pow(2).scale(&a).unwrap().checked_add(&x(&ra, 8).pow(4)).unwrap();
        let v = frobenius_decompose(&f, 2).unwrap();
        assert_eq!(v.to_string(), "a*x + x^2");
        assert_eq!(v.order(), 4);
        assert!(matches!(frobenius_decompose(&x(&r, 8), 2), Err(Error::DerivativeNotZero)));
    }

    #[test]
    fn heights() {
        for (p, order) in [(2u64, 8u32), (3, 27), (5, 8)] {
            let r = fp(p);
            assert_eq!(
                height(&Fgl::multiplicative(&r, order), p).unwrap(),
                Height::Finite { height: 1, unit: true }
            );
            assert_eq!(height(&Fgl::additive(&r, order), p).unwrap(), Height::InfiniteUpToOrder(order));
        }
        let z = RingDesc::integers().into_ring();
        assert!(matches!(height(&Fgl::additive(&z, 4), 2), Err(Error::WrongCharacteristic(2))));
    }

    #[test]
    fn landweber_multiplicative_and_additive() {
        let z = RingDesc::integers().into_ring();
        for p in [2u64, 3, 5] {
            let m = landweber_sequence(&Fgl::multiplicative(&z, 8), p, 1).unwrap();
            assert_eq!(m.len(), 2);
            assert_eq!(m[0].value.to_string(), p.to_string());
            assert_eq!(m[0].regularity, Regularity::Regular);
            assert!(m[1].value.is_one());
            assert_eq!(m[1].regularity, Regularity::Regular);

            let a = landweber_sequence(&Fgl::additive(&z, 8), p, 1).unwrap();
            assert!(a[1].value.is_zero());
            assert_eq!(a[1].regularity, Regularity::ZeroDivisor);
        }
        let only = landweber_sequence(&Fgl::multiplicative(&z, 4), 3, 0).unwrap();
        assert_eq!(only.len(), 1);
        assert!(matches!(
            landweber_sequence(&Fgl::multiplicative(&z, 4), 2, 2),
            Err(Error::OrderTooLow(_))
        ));
        assert!(matches!(
            landweber_sequence(&Fgl::multiplicative(&fp(2), 4), 2, 1),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn landweber_eliminates_generators() {
        // H_v over Z[v]: [2](x) = 2x + v x^2, so u_1 = v, and modulo (2, v)
        // the law is additive: u_2 = 0
        let r = RingDesc::integers().with_generator("v", -1, None).unwrap().into_ring();
        let f = Fgl::h(&RingElem::generator(&r, 0), 8);
        let seq = landweber_sequence(&f, 2, 2).unwrap();
        assert_eq!(seq[1].value.to_string(), "v");
        assert_eq!(seq[1].regularity, Regularity::Regular);
        assert!(seq[2].value.is_zero());
        assert_eq!(seq[2].regularity, Regularity::ZeroDivisor);
    }
}
