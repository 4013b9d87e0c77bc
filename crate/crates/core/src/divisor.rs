//! Effective divisors on the formal line, stored as Weierstrass polynomials
//! `f_D(t) = t^n + a_1 t^(n-1) + ... + a_n` with nilpotent `a_i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fgl::Fgl;
use crate::ring::{check_same_ring, Polynomial, Ring, RingElem, SquareMatrix};
use crate::series::TruncSeries;
use crate::weierstrass;

#[derive(Clone, PartialEq, Eq)]
pub struct Divisor {
    poly: Polynomial,
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({})", self.poly.display("t"))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display("t"))
    }
}

impl Divisor {
    pub fn new(poly: Polynomial) -> Result<Divisor> {
        if !poly.is_monic() {
            return Err(Error::NotWeierstrass(format!("{} is not monic", poly.display("t"))));
        }
        let n = poly.degree().unwrap();
        if let Some(c) = poly.coeffs()[..n].iter().find(|c| !c.is_nilpotent()) {
            return Err(Error::NotWeierstrass(format!(
                "{} has non-nilpotent coefficient {c}",
                poly.display("t")
            )));
        }
        Ok(Divisor { poly })
    }

    /// The degree-0 divisor, `f = 1`.
    pub fn zero(ring: &Ring) -> Divisor {
        Divisor {
            poly: Polynomial::one(ring),
        }
    }

    /// The point `[0]`, `f = t`.
    pub fn origin(ring: &Ring) -> Divisor {
        Divisor {
            poly: Polynomial::monomial(ring, 1),
        }
    }

    /// `prod (t - c_i)`.
    pub fn from_points(ring: &Ring, roots: &[RingElem]) -> Result<Divisor> {
        let mut poly = Polynomial::one(ring);
        for c in roots {
            check_same_ring(ring, c.ring())?;
            if !c.is_nilpotent() {
                return Err(Error::NotNilpotentRoot(c.to_string()));
            }
            poly = poly.checked_mul(&Polynomial::linear_root(c))?;
        }
        Ok(Divisor { poly })
    }

    /// The divisor of zeros of a Weierstrass series.
    pub fn of_series(g: &TruncSeries) -> Result<Divisor> {
        Ok(Divisor {
            poly: weierstrass::factor(g)?.h,
        })
    }

    pub fn ring(&self) -> &Ring {
        self.poly.ring()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    pub fn sum(&self, other: &Divisor) -> Result<Divisor> {
        Ok(Divisor {
            poly: self.poly.checked_mul(&other.poly)?,
        })
    }

    /// `(c_1, ..., c_n)`, the non-leading coefficients of `f_D` from the top.
    pub fn chern(&self) -> Vec<RingElem> {
        let n = self.degree();
        (1..=n).map(|i| self.poly.coeff(n - i)).collect()
    }

    /// Multiplication by the class of `t` on `R[t]/f_D`, basis `1, t, ...`.
    fn companion(&self) -> SquareMatrix {
        let ring = self.ring();
        let n = self.degree();
        let mut m = SquareMatrix::zero(ring, n);
        for i in 0..n {
            if i + 1 < n {
                m.set(i + 1, i, RingElem::one(ring));
            }
            m.set(i, n - 1, -&self.poly.coeff(i));
        }
        m
    }

    /// The translation product `D * E`: the characteristic polynomial of
    /// `F(a, b)` acting on `R[a]/f_D (x) R[b]/f_E`.
    pub fn star(&self, other: &Divisor, fgl: &Fgl) -> Result<Divisor> {
        check_same_ring(self.ring(), other.ring())?;
        check_same_ring(self.ring(), fgl.ring())?;
        let ring = self.ring();
        let (n, m) = (self.degree(), other.degree());
        let a = self.companion().kronecker(&SquareMatrix::identity(ring, m))?;
        let b = SquareMatrix::identity(ring, n).kronecker(&other.companion())?;
        let order = fgl.order();
        let mut a_pows = vec![SquareMatrix::identity(ring, n * m)];
        let mut b_pows = vec![SquareMatrix::identity(ring, n * m)];
        for _ in 0..order {
            a_pows.push(a_pows.last().unwrap().checked_mul(&a)?);
            b_pows.push(b_pows.last().unwrap().checked_mul(&b)?);
        }
        for k in 0..=order as usize {
            if !a_pows[k].checked_mul(&b_pows[order as usize - k])?.is_zero() {
                return Err(Error::OrderTooLow(format!(
                    "the law's order {order} does not reach the nilpotency of these divisors"
                )));
            }
        }
        let mut z = SquareMatrix::zero(ring, n * m);
        for (e, c) in fgl.series().terms() {
            let term = a_pows[e[0] as usize].checked_mul(&b_pows[e[1] as usize])?.scale(c);
            z = z.checked_add(&term)?;
        }
        Ok(Divisor { poly: z.charpoly() })
    }

    /// `lambda^k` of the split divisor `sum [c_i]`: the product over
    /// `k`-subsets of `t - (F-sum of the subset)`.
    pub fn lambda(fgl: &Fgl, roots: &[RingElem], k: usize) -> Result<Divisor> {
        let ring = fgl.ring();
        for c in roots {
            check_same_ring(ring, c.ring())?;
            if !c.is_nilpotent() {
                return Err(Error::NotNilpotentRoot(c.to_string()));
            }
        }
        if k > roots.len() {
            return Err(Error::InvalidArgument(format!("lambda^{k} of a divisor of degree {}", roots.len())));
        }
        let mut points = Vec::new();
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mut acc = RingElem::zero(ring);
            for &i in &subset {
                acc = fgl.eval_at(&acc, &roots[i])?;
            }
            points.push(acc);
            // next k-subset in lexicographic order
            let Some(pos) = (0..k).rev().find(|&i| subset[i] < roots.len() - k + i) else {
                break;
            };
            subset[pos] += 1;
            for j in pos + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
        Self::from_points(ring, &points)
    }
}

/// `D - k [0]`, kept with `D` not divisible by `t` whenever `k > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeroDivisor {
    positive: Divisor,
    shift: usize,
}

impl fmt::Display for MeroDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.positive)
        } else {
            write!(f, "V({}) - {}[0]", self.positive, self.shift)
        }
    }
}

impl MeroDivisor {
    pub fn new(positive: Divisor, shift: usize) -> MeroDivisor {
        let mut coeffs = positive.poly.coeffs().to_vec();
        let mut shift = shift;
        let mut stripped = 0;
        while shift > 0 && stripped + 1 < coeffs.len() && coeffs[stripped].is_zero() {
            stripped += 1;
            shift -= 1;
        }
        coeffs.drain(..stripped);
        let ring = positive.ring().clone();
        MeroDivisor {
            positive: Divisor {
                poly: Polynomial::new(&ring, coeffs).expect("same ring"),
            },
            shift,
        }
    }

    pub fn positive(&self) -> &Divisor {
        &self.positive
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn degree(&self) -> i64 {
        self.positive.degree() as i64 - self.shift as i64
    }

    pub fn sum(&self, other: &MeroDivisor) -> Result<MeroDivisor> {
        Ok(Self::new(self.positive.sum(&other.positive)?, self.shift + other.shift))
    }

    /// `-(D - k[0]) = E - (m - k)[0]` where `f_D f_E = t^m`.
    pub fn negate(&self) -> Result<MeroDivisor> {
        let ring = self.positive.ring().clone();
        let f = &self.positive.poly;
        // t is nilpotent modulo f_D; find t^m = 0 there
        let mut m = 0;
        loop {
            let (_, rem) = Polynomial::monomial(&ring, m).div_rem_monic(f)?;
            if rem.is_zero() {
                break;
            }
            m += 1;
            if m > 1 << 16 {
                return Err(Error::NotWeierstrass(format!("t is not nilpotent modulo {}", f.display("t"))));
            }
        }
        let (e, _) = Polynomial::monomial(&ring, m).div_rem_monic(f)?;
        let e = Divisor::new(e)?;
        if m >= self.shift {
            Ok(Self::new(e, m - self.shift))
        } else {
            let lifted = e.sum(&Divisor {
                poly: Polynomial::monomial(&ring, self.shift - m),
            })?;
            Ok(Self::new(lifted, 0))
        }
    }
}
