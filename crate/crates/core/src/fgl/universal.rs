use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::ring::{Ring, RingDesc, RingElem};
use crate::series::TruncSeries;

use super::{Fgl, XY};

/// One coefficient of the associator `F(F(x,y),z) - F(x,F(y,z))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    /// Exponent of `x^i y^j z^k`.
    pub exponent: Vec<u32>,
    pub poly: RingElem,
}

/// The symmetric-generator model of the universal law to a given order.
///
/// Symmetry is built in by using one generator `a_kl` for both `x^k y^l`
/// and `x^l y^k`; associativity is not imposed, only reported as
/// `relations`.
#[derive(Debug, Clone)]
pub struct UniversalFgl {
    pub order: u32,
    pub ring: Ring,
    pub fgl: Fgl,
    /// Nonzero associator coefficients, in print order.
    pub relations: Vec<Relation>,
}

/// `a11`, `a12`, ...; indices of two or more digits are separated as
/// `a_k_l` so that names stay unambiguous.
pub fn universal_generator_name(k: u32, l: u32) -> String {
    if k < 10 && l < 10 {
        format!("a{k}{l}")
    } else {
        format!("a_{k}_{l}")
    }
}

/// Index pairs `(k, l)` with `1 <= k <= l`, `k + l < order`, ordered by
/// total degree and then by `k`.
fn index_pairs(order: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 2..order {
        for k in 1..=d / 2 {
            out.push((k, d - k));
        }
    }
    out
}

pub fn universal_fgl(order: u32) -> Result<UniversalFgl> {
    universal_fgl_with_cancel(order, None)
}

pub fn universal_fgl_with_cancel(order: u32, cancel: Option<&CancelToken>) -> Result<UniversalFgl> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!("universal law needs order >= 2, got {order}")));
    }
    let pairs = index_pairs(order);
    let mut desc = RingDesc::integers();
    for &(k, l) in &pairs {
        desc = desc.with_generator(&universal_generator_name(k, l), 1 - k as i64 - l as i64, None)?;
    }
    let ring = desc.into_ring();
    let mut terms = vec![
        (vec![1, 0], RingElem::one(&ring)),
        (vec![0, 1], RingElem::one(&ring)),
    ];
    for (idx, &(k, l)) in pairs.iter().enumerate() {
        let a = RingElem::generator(&ring, idx);
        terms.push((vec![k, l], a.clone()));
        if k != l {
            terms.push((vec![l, k], a));
        }
    }
    let series = TruncSeries::from_terms(&ring, &XY, order, terms)?;
    let fgl = Fgl::assume(&series)?;
    let assoc = fgl.associator(cancel)?;
    let relations = assoc
        .sorted_terms()
        .into_iter()
        .map(|(e, c)| Relation {
            exponent: e.clone(),
            poly: c.clone(),
        })
        .collect();
    Ok(UniversalFgl {
        order,
        ring,
        fgl,
        relations,
    })
}
