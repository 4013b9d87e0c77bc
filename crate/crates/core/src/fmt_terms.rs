//! Shared canonical printing of sums of terms.
//!
//! Every printed form is accepted by the expression parser and parses back
//! to the same value.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::ring::RingElem;

pub(crate) enum Coeff {
    Scalar(BigRational),
    Elem(RingElem),
}

pub(crate) struct Term {
    coeff: Coeff,
    /// Monomial in the printed variables; empty for a constant.
    mono: String,
}

impl Term {
    pub(crate) fn scalar(c: BigRational, mono: String) -> Term {
        Term {
            coeff: Coeff::Scalar(c),
            mono,
        }
    }

    pub(crate) fn elem(c: RingElem, mono: String) -> Term {
        Term {
            coeff: Coeff::Elem(c),
            mono,
        }
    }

    fn sign_and_body(&self) -> (bool, String) {
        match &self.coeff {
            Coeff::Scalar(c) => scalar_body(c, &self.mono),
            Coeff::Elem(e) if e.num_terms() == 1 => {
                let c = e.terms().values().next().unwrap();
                let gens = e.fmt_terms();
                let mono = join_mono(&gens[0].mono, &self.mono);
                scalar_body(c, &mono)
            }
            Coeff::Elem(e) => {
                let body = if self.mono.is_empty() {
                    format!("({e})")
                } else {
                    format!("({e})*{}", self.mono)
                };
                (false, body)
            }
        }
    }
}

fn join_mono(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

fn scalar_body(c: &BigRational, mono: &str) -> (bool, String) {
    let neg = c.is_negative();
    let abs = c.abs();
    let body = if mono.is_empty() {
        abs.to_string()
    } else if abs.is_one() {
        mono.to_string()
    } else {
        format!("{abs}*{mono}")
    };
    (neg, body)
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, term) in terms.iter().enumerate() {
        let (neg, body) = term.sign_and_body();
        match (i == 0, neg) {
            (true, false) => f.write_str(&body)?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
    }
    Ok(())
}

/// `name`, `name^e`, or empty for exponent zero.
pub(crate) fn power_string(name: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    }
}
