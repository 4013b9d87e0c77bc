//! Meromorphic functions on the formal line: degree, the factorization
//! `f = x^k u g`, inverses, residues and composition with Weierstrass
//! series.

use crate::divisor::{Divisor, MeroDivisor};
use crate::error::{Error, Result};
use crate::ring::{split_base, Base, Polynomial, RingDesc, RingElem, DEFAULT_FACTOR_BOUND};
use crate::series::{LaurentSeries, TruncSeries, EXACT_ORDER};
use crate::weierstrass;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDegree {
    pub idempotent: RingElem,
    pub component: RingDesc,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeroDegree {
    Constant(i64),
    /// Degrees on the prime-power components of a `Z/n` base.
    Split(Vec<ComponentDegree>),
}

enum Scan {
    Degree(i64),
    AllNilpotent,
    Mixed(i64, RingElem),
}

fn scan(f: &LaurentSeries) -> Scan {
    for k in f.lower_bound()..f.order() {
        let a = f.coeff(k);
        if a.is_unit() {
            return Scan::Degree(k);
        }
        if !a.is_nilpotent() {
            return Scan::Mixed(k, a);
        }
    }
    Scan::AllNilpotent
}

pub fn mero_degree(f: &LaurentSeries) -> Result<MeroDegree> {
    match scan(f) {
        Scan::Degree(k) => Ok(MeroDegree::Constant(k)),
        Scan::AllNilpotent => Err(Error::NotInvertible(format!("every known coefficient of {f} is nilpotent"))),
        Scan::Mixed(k, a) => {
            let ring = f.ring();
            let not_constant = || {
                Error::NotConstantDegree(format!("coefficient {a} of x^{k} is neither nilpotent nor a unit"))
            };
            let n = match ring.base() {
                Base::IntegersMod(n) => *n,
                _ => return Err(not_constant()),
            };
            let parts = split_base(ring, n, DEFAULT_FACTOR_BOUND)?;
            if parts.len() < 2 {
                return Err(not_constant());
            }
            let mut out = Vec::with_capacity(parts.len());
            for part in parts {
                let target = part.component.clone().into_ring();
                let local = LaurentSeries::new(
                    &target,
                    f.var(),
                    f.lower_bound(),
                    f.order(),
                    f.terms().map(|(j, c)| (j, c.coerce(&target))),
                )?;
                let degree = match scan(&local) {
                    Scan::Degree(d) => d,
                    Scan::AllNilpotent => {
                        return Err(Error::NotInvertible(format!("{f} is nilpotent on the component {}", part.component)))
                    }
                    Scan::Mixed(..) => return Err(not_constant()),
                };
                out.push(ComponentDegree {
                    idempotent: part.idempotent,
                    component: part.component,
                    degree,
                });
            }
            Ok(MeroDegree::Split(out))
        }
    }
}

fn constant_degree(f: &LaurentSeries) -> Result<i64> {
    match mero_degree(f)? {
        MeroDegree::Constant(k) => Ok(k),
        MeroDegree::Split(parts) => Err(Error::NotConstantDegree(format!(
            "{f} has degrees {:?} on the components of {}",
            parts.iter().map(|p| p.degree).collect::<Vec<_>>(),
            f.ring()
        ))),
    }
}

/// `f = x^k u g` with `u` a unit series and `g = 1 + sum_{j>0} b_j x^-j`,
/// `b_j` nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeroFactorization {
    pub degree: i64,
    /// Known to order `N - k` where `N` is the order of `f`.
    pub u: TruncSeries,
    /// Exact.
    pub tail: LaurentSeries,
    /// The Weierstrass polynomial `h` of `x^s f` and the shift `s`.
    h: Polynomial,
    shift: i64,
}

impl MeroFactorization {
    /// `x^k u g`, with the order that `u` justifies.
    pub fn product(&self) -> Result<LaurentSeries> {
        LaurentSeries::from_trunc(&self.u, self.degree).checked_mul(&self.tail)
    }
}

pub fn mero_factor(f: &LaurentSeries) -> Result<MeroFactorization> {
    let k = constant_degree(f)?;
    let s = (-f.lower_bound()).max(0);
    let g = f.to_trunc(-s);
    let fac = weierstrass::factor(&g)?;
    let d = fac.h.degree().unwrap() as i64;
    debug_assert_eq!(d, k + s);
    let u = fac.u.truncate((f.order() - k).max(0) as u32);
    let tail = LaurentSeries::new(
        f.ring(),
        f.var(),
        -d,
        EXACT_ORDER,
        (0..=d).map(|j| (-j, fac.h.coeff((d - j) as usize))),
    )?;
    Ok(MeroFactorization {
        degree: k,
        u,
        tail,
        h: fac.h,
        shift: s,
    })
}

/// `div(f) = V(h) - s[0]` where `x^s f = h u` is a Weierstrass factorization.
pub fn mero_divisor(f: &LaurentSeries) -> Result<MeroDivisor> {
    let fac = mero_factor(f)?;
    Ok(MeroDivisor::new(Divisor::new(fac.h)?, fac.shift as usize))
}

/// The coefficient of `x^-1`.
pub fn residue(f: &LaurentSeries) -> RingElem {
    f.residue()
}

/// `x^-k u^-1 g^-1`, with `g^-1` summed as a terminating geometric series.
pub fn laurent_invert(f: &LaurentSeries) -> Result<LaurentSeries> {
    let fac = mero_factor(f)?;
    let ring = f.ring();
    let u_inv = fac.u.invert()?;
    // tail as a polynomial in w = 1/x: 1 + sum b_j w^j
    let d = -fac.tail.lower_bound();
    let w_coeffs: Vec<RingElem> = (0..=d).map(|j| fac.tail.coeff(-j)).collect();
    let nil = Polynomial::new(ring, w_coeffs)?.checked_sub(&Polynomial::one(ring))?;
    let mut inv = Polynomial::one(ring);
    let mut power = Polynomial::one(ring);
    loop {
        power = power.checked_mul(&nil.neg())?;
        if power.is_zero() {
            break;
        }
        inv = inv.checked_add(&power)?;
    }
    let big_d = inv.degree().unwrap_or(0) as i64;
    let inv = LaurentSeries::new(
        ring,
        f.var(),
        -big_d,
        EXACT_ORDER,
        inv.coeffs().iter().enumerate().map(|(j, c)| (-(j as i64), c.clone())),
    )?;
    LaurentSeries::from_trunc(&u_inv, -fac.degree).checked_mul(&inv)
}

/// `f(g(x))` for a Laurent series `f` and a Weierstrass series `g` of
/// degree `d >= 1`. The unknown tail of `f` can reach down to degree
/// `d (N - nu + 1)`, `nu` bounding the nilpotency of `g`'s lower
/// coefficients, so the result is cut there.
pub fn compose_weierstrass(f: &LaurentSeries, g: &TruncSeries) -> Result<LaurentSeries> {
    crate::ring::check_same_ring(f.ring(), g.ring())?;
    let report = weierstrass::degree(g)?;
    let d = report.degree as i64;
    if d == 0 {
        return Err(Error::NotWeierstrass(format!("{g} has Weierstrass degree 0")));
    }
    let nu: i64 = report.nilpotency.iter().map(|&m| m as i64 - 1).sum::<i64>() + 1;
    let g_l = LaurentSeries::from_trunc(g, 0).rename(f.var());
    let one = LaurentSeries::monomial(&RingElem::one(f.ring()), f.var(), 0, EXACT_ORDER)?;
    let mut acc = LaurentSeries::zero(f.ring(), f.var(), 0, EXACT_ORDER)?;
    let lowest = f.valuation().unwrap_or(0).min(0);
    let highest = f.terms().map(|(j, _)| j).max().unwrap_or(0).max(0);
    if highest > 0 {
        let mut power = one.clone();
        for j in 1..=highest {
            power = power.checked_mul(&g_l)?;
            let c = f.coeff(j);
            if !c.is_zero() {
                acc = acc.checked_add(&power.scale(&c)?)?;
            }
        }
    }
    let c0 = f.coeff(0);
    if !c0.is_zero() {
        acc = acc.checked_add(&one.scale(&c0)?)?;
    }
    if lowest < 0 {
        let g_inv = laurent_invert(&g_l)?;
        let mut power = one;
        for j in 1..=-lowest {
            power = power.checked_mul(&g_inv)?;
            let c = f.coeff(-j);
            if !c.is_zero() {
                acc = acc.checked_add(&power.scale(&c)?)?;
            }
        }
    }
    Ok(acc.truncate(d.saturating_mul(f.order() - nu + 1)))
}
