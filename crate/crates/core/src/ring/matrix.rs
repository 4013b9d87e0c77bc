use std::fmt;

use super::{check_same_ring, Polynomial, Ring, RingElem};
use crate::error::{Error, Result};

/// Square matrix over a [`RingDesc`](super::RingDesc), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    ring: Ring,
    dim: usize,
    entries: Vec<RingElem>,
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl SquareMatrix {
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<RingElem>>) -> Result<SquareMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidArgument(format!("matrix row of length {} in a {dim}x{dim} matrix", row.len())));
            }
            for e in row {
                check_same_ring(ring, e.ring())?;
                entries.push(e);
            }
        }
        Ok(SquareMatrix {
            ring: ring.clone(),
            dim,
            entries,
        })
    }

    pub fn zero(ring: &Ring, dim: usize) -> SquareMatrix {
        SquareMatrix {
            ring: ring.clone(),
            dim,
            entries: vec![RingElem::zero(ring); dim * dim],
        }
    }

    pub fn identity(ring: &Ring, dim: usize) -> SquareMatrix {
        let mut m = Self::zero(ring, dim);
        for i in 0..dim {
            m.set(i, i, RingElem::one(ring));
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RingElem) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElem::is_zero)
    }

    pub fn checked_add(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(SquareMatrix {
            ring: self.ring.clone(),
            dim: self.dim,
            entries,
        })
    }

    pub fn checked_mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.check_compatible(other)?;
        let n = self.dim;
        let mut out = Self::zero(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RingElem) -> SquareMatrix {
        SquareMatrix {
            ring: self.ring.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn neg(&self) -> SquareMatrix {
        SquareMatrix {
            ring: self.ring.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    fn check_compatible(&self, other: &SquareMatrix) -> Result<()> {
        check_same_ring(&self.ring, &other.ring)?;
        if self.dim != other.dim {
            return Err(Error::InvalidArgument(format!("dimension mismatch: {} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    /// Kronecker product `self ⊗ other`, indexing `(i, j) -> i * other.dim + j`.
    pub fn kronecker(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        check_same_ring(&self.ring, &other.ring)?;
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zero(&self.ring, n * m);
        for i in 0..n {
            for i2 in 0..n {
                let a = self.get(i, i2);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    for j2 in 0..m {
                        out.set(i * m + j, i2 * m + j2, a * other.get(j, j2));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluates a polynomial at this matrix (Horner).
    pub fn eval_polynomial(&self, p: &Polynomial) -> Result<SquareMatrix> {
        check_same_ring(&self.ring, p.ring())?;
        let id = Self::identity(&self.ring, self.dim);
        let mut acc = Self::zero(&self.ring, self.dim);
        for c in p.coeffs().iter().rev() {
            acc = acc.checked_mul(self)?.checked_add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// `det(t I - M)` by the Samuelson–Berkowitz recursion, which uses only
    /// ring operations and so is valid over rings with zero divisors.
    pub fn charpoly(&self) -> Polynomial {
        let ring = &self.ring;
        // coefficients highest degree first
        let mut v: Vec<RingElem> = vec![RingElem::one(ring)];
        for r in 0..self.dim {
            // leading r x r block A, row R = M[r][..r], column C = M[..r][r]
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(RingElem::one(ring));
            toeplitz.push(-self.get(r, r));
            // A^k C for k = 0..r-1
            let mut col: Vec<RingElem> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rc = (0..r).fold(RingElem::zero(ring), |acc, j| &acc + &(self.get(r, j) * &col[j]));
                toeplitz.push(-&rc);
                col = (0..r)
                    .map(|i| (0..r).fold(RingElem::zero(ring), |acc, j| &acc + &(self.get(i, j) * &col[j])))
                    .collect();
            }
            let mut next = vec![RingElem::zero(ring); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        *slot = &*slot + &(&toeplitz[i - j] * vj);
                    }
                }
            }
            v = next;
        }
        v.reverse();
        Polynomial::from_coeffs(ring, v)
    }

    /// `det((u - 1) A + 1)` as a polynomial in `u`; for an idempotent `A`
    /// of rank `i` this is `u^i`.
    pub fn idempotent_rank_polynomial(&self) -> Polynomial {
        let ring = &self.ring;
        let n = self.dim;
        // det(t I + A) = sum_j p_j t^j, so det(I + s A) = sum_j p_j s^(n-j)
        let p = self.neg().charpoly();
        let coeffs_in_s: Vec<RingElem> = (0..=n).map(|k| p.coeff(n - k)).collect();
        let in_s = Polynomial::from_coeffs(ring, coeffs_in_s);
        let s = Polynomial::from_coeffs(ring, vec![RingElem::from_int(ring, -1), RingElem::one(ring)]);
        in_s.compose(&s).expect("same ring")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDesc;

    fn int_matrix(ring: &Ring, rows: &[&[i64]]) -> SquareMatrix {
        SquareMatrix::from_rows(
            ring,
            rows.iter().map(|r| r.iter().map(|&v| RingElem::from_int(ring, v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_charpoly() {
        let z = RingDesc::integers().into_ring();
        let p = SquareMatrix::identity(&z, 2).charpoly();
        assert_eq!(p.display("t"), "t^2 - 2*t + 1");
    }

    #[test]
    fn nilpotent_shift_charpoly() {
        let z = RingDesc::integers().into_ring();
        let m = int_matrix(&z, &[&[0, 0], &[1, 0]]);
        assert_eq!(m.charpoly().display("t"), "t^2");
    }

    #[test]
    fn rank_polynomial_of_projection() {
        let z = RingDesc::integers().into_ring();
        let a = int_matrix(&z, &[&[1, 0], &[0, 0]]);
        assert_eq!(a.idempotent_rank_polynomial().display("u"), "u");
        let id = SquareMatrix::identity(&z, 3);
        assert_eq!(id.idempotent_rank_polynomial().display("u"), "u^3");
    }

    #[test]
    fn empty_matrix_has_unit_charpoly() {
        let z = RingDesc::integers().into_ring();
        assert_eq!(SquareMatrix::zero(&z, 0).charpoly(), Polynomial::one(&z));
    }

    #[test]
    fn three_by_three_against_hand_expansion() {
        // det(tI - M) for M = [[2,1,0],[0,3,1],[1,0,1]]
        // = t^3 - 6t^2 + 11t - 7
        let z = RingDesc::integers().into_ring();
        let m = int_matrix(&z, &[&[2, 1, 0], &[0, 3, 1], &[1, 0, 1]]);
        assert_eq!(m.charpoly().display("t"), "t^3 - 6*t^2 + 11*t - 7");
    }
}
