//! Random generators shared by the integration tests.
#![allow(dead_code)]

use fgcalc::parse::parse_ring;
use fgcalc::ring::{Ring, RingElem};
use fgcalc::series::{LaurentSeries, TruncSeries};
use rand::rngs::StdRng;
use rand::Rng;

/// Small local rings with plenty of nilpotents.
pub const POOL: [&str; 3] = ["Z/4", "Z/8", "Z/3[e;e^3]"];

pub fn ring(text: &str) -> Ring {
    parse_ring(text).unwrap().into_ring()
}

pub fn int(r: &Ring, n: i64) -> RingElem {
    RingElem::from_int(r, n)
}

fn modulus(r: &Ring) -> i64 {
    r.characteristic() as i64
}

pub fn nilpotent(r: &Ring, rng: &mut StdRng) -> RingElem {
    if r.num_generators() == 0 {
        // Z/2^k: the even residues
        return int(r, 2 * rng.gen_range(0..modulus(r) / 2));
    }
    let p = modulus(r);
    let e = RingElem::generator(r, 0);
    &int(r, rng.gen_range(0..p)).checked_mul(&e).unwrap() + &int(r, rng.gen_range(0..p)).checked_mul(&e.pow(2)).unwrap()
}

pub fn unit(r: &Ring, rng: &mut StdRng) -> RingElem {
    if r.num_generators() == 0 {
        return int(r, 2 * rng.gen_range(0..modulus(r) / 2) + 1);
    }
    &int(r, rng.gen_range(1..modulus(r))) + &nilpotent(r, rng)
}

pub fn any(r: &Ring, rng: &mut StdRng) -> RingElem {
    if rng.gen_bool(0.5) {
        unit(r, rng)
    } else {
        nilpotent(r, rng)
    }
}

/// Coefficients below `x^n` nilpotent, a unit at `x^n`, anything above.
pub fn weierstrass(r: &Ring, rng: &mut StdRng, n: u32, order: u32) -> TruncSeries {
    let terms: Vec<(Vec<u32>, RingElem)> = (0..order)
        .map(|k| {
            let c = if k < n {
                nilpotent(r, rng)
            } else if k == n {
                unit(r, rng)
            } else {
                any(r, rng)
            };
            (vec![k], c)
        })
        .collect();
    TruncSeries::from_terms(r, &["x"], order, terms).unwrap()
}

/// A Laurent series of constant degree `k` whose polar part starts at
/// `lower`: nilpotent coefficients below `x^k`, a unit at `x^k`.
pub fn laurent(r: &Ring, rng: &mut StdRng, lower: i64, k: i64, order: i64) -> LaurentSeries {
    let terms: Vec<(i64, RingElem)> = (lower..order)
        .map(|j| {
            let c = if j < k {
                nilpotent(r, rng)
            } else if j == k {
                unit(r, rng)
            } else {
                any(r, rng)
            };
            (j, c)
        })
        .collect();
    LaurentSeries::new(r, "x", lower, order, terms).unwrap()
}

/// `x + sum c_k x^k` with random coefficients from `coeff`.
pub fn coordinate(r: &Ring, order: u32, mut coeff: impl FnMut() -> RingElem) -> TruncSeries {
    let terms: Vec<(Vec<u32>, RingElem)> = (1..order)
        .map(|k| (vec![k], if k == 1 { RingElem::one(r) } else { coeff() }))
        .collect();
    TruncSeries::from_terms(r, &["x"], order, terms).unwrap()
}
