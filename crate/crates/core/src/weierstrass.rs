//! Weierstrass degree, preparation `g = h u`, and reduction modulo `g`.
//!
//! The truncated input `g` is treated as the exact polynomial formed by its
//! stored coefficients. Factoring it then has an exact answer, and its `u`
//! is reported at the input's order, so `h u = g` holds to that order.

use crate::error::{Error, Result};
use crate::ring::{check_same_ring, Polynomial, Ring, RingElem};
use crate::series::TruncSeries;

pub const DEFAULT_ITERATION_CAP: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassReport {
    pub degree: u32,
    /// The unit coefficient `a_n`.
    pub unit: RingElem,
    /// Nilpotency index of each `a_k`, `k < n`.
    pub nilpotency: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Monic of degree `n`, lower coefficients nilpotent.
    pub h: Polynomial,
    /// Unit series, known to the order of `g`.
    pub u: TruncSeries,
}

fn require_univariate(g: &TruncSeries) -> Result<()> {
    if g.num_vars() != 1 {
        return Err(Error::InvalidArgument(format!(
            "Weierstrass operations need a univariate series, got variables [{}]",
            g.vars().join(",")
        )));
    }
    Ok(())
}

pub fn degree(g: &TruncSeries) -> Result<WeierstrassReport> {
    require_univariate(g)?;
    let mut nilpotency = Vec::new();
    for k in 0..g.order() {
        let a = g.coeff(&[k]);
        if a.is_unit() {
            return Ok(WeierstrassReport {
                degree: k,
                unit: a,
                nilpotency,
            });
        }
        match a.nilpotency_index() {
            Some(m) => nilpotency.push(m),
            None => {
                return Err(Error::NotWeierstrass(format!(
                    "coefficient {a} of x^{k} is neither nilpotent nor a unit"
                )))
            }
        }
    }
    Err(Error::NotWeierstrass(format!("no unit coefficient below order {}", g.order())))
}

pub fn factor(g: &TruncSeries) -> Result<Factorization> {
    factor_with_cap(g, DEFAULT_ITERATION_CAP)
}

pub fn factor_with_cap(g: &TruncSeries, cap: u32) -> Result<Factorization> {
    let report = degree(g)?;
    let ring = g.ring().clone();
    let n = report.degree as usize;
    let order = g.order() as usize;
    if n >= order {
        return Err(Error::OrderTooLow(format!("Weierstrass degree {n} is not below order {order}")));
    }
    if n == 0 {
        return Ok(Factorization {
            h: Polynomial::one(&ring),
            u: g.clone(),
        });
    }
    // Any product of `nu` elements of the ideal of lower coefficients is 0.
    let nu: usize = report.nilpotency.iter().map(|&m| m as usize - 1).sum::<usize>() + 1;
    let work = order.max((nu + 1) * n + 1);
    let gc: Vec<RingElem> = (0..order).map(|k| g.coeff(&[k as u32])).collect();

    // x^n = -U^-1 L modulo g, where g = L + x^n U
    let lower = &gc[..n];
    let upper = &gc[n..];
    let upper_inv = series_inverse(&ring, upper, work)?;
    let q = mul_trunc(&ring, &upper_inv, lower, work);

    // f represents x^n; rewrite x^n f_high with -Q until only degrees < n remain
    let mut f = vec![RingElem::zero(&ring); work];
    f[n] = RingElem::one(&ring);
    let mut iterations = 0;
    loop {
        let high = &f[n..];
        if high.iter().all(RingElem::is_zero) {
            break;
        }
        iterations += 1;
        if iterations > cap {
            return Err(Error::VerificationFailed(format!("x^{n} reduction did not settle within {cap} iterations")));
        }
        let prod = mul_trunc(&ring, high, &q, work);
        let mut next: Vec<RingElem> = f[..n].to_vec();
        next.resize(work, RingElem::zero(&ring));
        for (slot, p) in next.iter_mut().zip(&prod) {
            *slot = &*slot - p;
        }
        f = next;
    }
    // h = x^n - r
    let mut hc: Vec<RingElem> = f[..n].iter().map(|c| -c).collect();
    hc.push(RingElem::one(&ring));
    let h = Polynomial::new(&ring, hc)?;

    let u = divide_by_weierstrass_polynomial(&ring, &gc, &h, order, nu, cap)?;
    let u = TruncSeries::from_polynomial(&Polynomial::new(&ring, u)?, &g.vars()[0], g.order());
    let check = TruncSeries::from_polynomial(&h, &g.vars()[0], g.order()).checked_mul(&u)?;
    if check != *g {
        return Err(Error::VerificationFailed(format!("h*u = {check} differs from g = {g}")));
    }
    Ok(Factorization { h, u })
}

/// `u` with `h u = g`, for `h = x^n + b` monic with nilpotent `b`, as the
/// fixed point of `u = (g - b u) / x^n`, reported to `order` coefficients.
fn divide_by_weierstrass_polynomial(
    ring: &Ring,
    g: &[RingElem],
    h: &Polynomial,
    order: usize,
    nu: usize,
    cap: u32,
) -> Result<Vec<RingElem>> {
    let n = h.degree().unwrap();
    let b = &h.coeffs()[..n];
    let work = order + n * (nu + 2);
    let mut u = vec![RingElem::zero(ring); work];
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > cap {
            return Err(Error::VerificationFailed(format!("division by {} did not settle", h.display("x"))));
        }
        let bu = mul_trunc(ring, b, &u, work + n);
        let mut next = vec![RingElem::zero(ring); work];
        for (k, slot) in next.iter_mut().enumerate() {
            let gk = g.get(k + n).cloned().unwrap_or_else(|| RingElem::zero(ring));
            *slot = &gk - &bu[k + n];
        }
        if next == u {
            break;
        }
        u = next;
    }
    u.truncate(order);
    Ok(u)
}

fn mul_trunc(ring: &Ring, a: &[RingElem], b: &[RingElem], order: usize) -> Vec<RingElem> {
    let mut out = vec![RingElem::zero(ring); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

fn series_inverse(ring: &Ring, a: &[RingElem], order: usize) -> Result<Vec<RingElem>> {
    let c_inv = a[0].invert_unit()?;
    let mut inv = vec![RingElem::zero(ring); order];
    inv[0] = c_inv.clone();
    for k in 1..order {
        let mut s = RingElem::zero(ring);
        for j in 1..=k.min(a.len() - 1) {
            s = &s + &(&a[j] * &inv[k - j]);
        }
        inv[k] = -&(&s * &c_inv);
    }
    Ok(inv)
}

/// The representative of `f` modulo `g` of degree below the Weierstrass
/// degree of `g`; `f` is read as the polynomial of its stored terms.
pub fn reduce(f: &TruncSeries, g: &TruncSeries) -> Result<Polynomial> {
    require_univariate(f)?;
    check_same_ring(f.ring(), g.ring())?;
    let fac = factor(g)?;
    let (_, rem) = f.to_polynomial().div_rem_monic(&fac.h)?;
    Ok(rem)
}
