//! Idempotent lifting and the Chinese-remainder splitting of `Z/n`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{Base, Ring, RingDesc, RingElem};
use crate::error::{Error, Result};

pub const DEFAULT_LIFT_CAP: u32 = 64;
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

pub fn lift_idempotent(e: &RingElem) -> Result<RingElem> {
    lift_idempotent_with_cap(e, DEFAULT_LIFT_CAP)
}

/// Lifts an idempotent modulo nilpotents to the unique genuine idempotent.
///
/// With `f = 1 - e` and `(ef)^n = 0`, returns `e^n (1 + c)^-1` where
/// `c = e^n + f^n - 1`. The exponent `n` is found by repeated squaring of
/// `ef` and may not exceed `cap`.
pub fn lift_idempotent_with_cap(e: &RingElem, cap: u32) -> Result<RingElem> {
    let ring = e.ring();
    let one = RingElem::one(ring);
    let defect = &(e * e) - e;
    if !defect.is_nilpotent() {
        return Err(Error::NotAlmostIdempotent(e.to_string()));
    }
    let f = &one - e;
    let ef = e * &f;
    let mut n = 1u32;
    let mut power = ef;
    while !power.is_zero() {
        if n * 2 > cap {
            return Err(Error::NotAlmostIdempotent(format!("{e} (nilpotency exponent exceeds {cap})")));
        }
        power = &power * &power;
        n *= 2;
    }
    let en = e.pow(n);
    let fnn = f.pow(n);
    let c = &(&en + &fnn) - &one;
    let inv = (&one + &c).invert_unit()?;
    Ok(&en * &inv)
}

/// One factor of a Chinese-remainder decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingComponent {
    /// Idempotent of the original ring cutting out this component.
    pub idempotent: RingElem,
    /// The component ring `Z/p^k`.
    pub component: RingDesc,
}

/// Prime-power factorisation by trial division up to `bound`.
///
/// Errors if a cofactor remains whose primality could not be settled within
/// the bound.
pub fn factorize(n: u64, bound: u64) -> Result<Vec<(u64, u32)>> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if p > bound {
            return Err(Error::UnsupportedRing(format!("cofactor {n} exceeds the trial-division bound {bound}")));
        }
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn split_ring(ring: &Ring) -> Result<Vec<RingComponent>> {
    split_ring_with_bound(ring, DEFAULT_FACTOR_BOUND)
}

/// Complete orthogonal idempotent decomposition of `Z/n` along its
/// prime-power factors, ordered by prime.
pub fn split_ring_with_bound(ring: &Ring, bound: u64) -> Result<Vec<RingComponent>> {
    let n = match ring.base() {
        Base::IntegersMod(n) if ring.num_generators() == 0 => *n,
        _ => return Err(Error::UnsupportedRing(format!("splitting is only available for Z/n, got {ring}"))),
    };
    split_base(ring, n, bound)
}

/// Splits the base `Z/n` of `ring`, keeping its generators on every
/// component.
pub(crate) fn split_base(ring: &Ring, n: u64, bound: u64) -> Result<Vec<RingComponent>> {
    let factors = factorize(n, bound)?;
    let big_n = BigInt::from(n);
    factors
        .into_iter()
        .map(|(p, k)| {
            let q = p.pow(k);
            let cofactor = BigInt::from(n / q);
            let big_q = BigInt::from(q);
            let inv = cofactor.mod_floor(&big_q).extended_gcd(&big_q).x.mod_floor(&big_q);
            let e = (&cofactor * inv).mod_floor(&big_n);
            Ok(RingComponent {
                idempotent: RingElem::from_bigint(ring, e),
                component: ring.with_base(Base::IntegersMod(q)),
            })
        })
        .collect()
}
