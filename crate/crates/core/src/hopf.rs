//! Finite free Hopf algebras given by structure constants in a basis
//! `e_0, ..., e_{m-1}`.
//!
//! * `mult[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
//! * `comult[i][j][k]` is the coefficient of `e_j (x) e_k` in `psi(e_i)`.
//! * `unit[k]` gives `eta(1)` and `counit[i]` is `eps(e_i)`.
//! * `antipode[i][j]` is the coefficient of `e_j` in `chi(e_i)`.
//!
//! The text format is JSON; see `docs/hopf-format.md`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::{parse_elem, parse_ring, ParseError};
use crate::ring::{check_same_ring, Ring, RingDesc, RingElem};

type Tensor3 = Vec<Vec<Vec<RingElem>>>;
type Matrix = Vec<Vec<RingElem>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHopf {
    ring: Ring,
    rank: usize,
    mult: Tensor3,
    unit: Vec<RingElem>,
    comult: Tensor3,
    counit: Vec<RingElem>,
    antipode: Option<Matrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopfAxiom {
    Associativity,
    LeftUnit,
    RightUnit,
    Coassociativity,
    LeftCounit,
    RightCounit,
    /// `psi(ab) = psi(a) psi(b)`
    Compatibility,
    ComultUnit,
    CounitUnit,
    CounitMultiplicative,
    LeftAntipode,
    RightAntipode,
}

impl fmt::Display for HopfAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HopfAxiom::Associativity => "associativity",
            HopfAxiom::LeftUnit => "left-unit",
            HopfAxiom::RightUnit => "right-unit",
            HopfAxiom::Coassociativity => "coassociativity",
            HopfAxiom::LeftCounit => "left-counit",
            HopfAxiom::RightCounit => "right-counit",
            HopfAxiom::Compatibility => "compatibility",
            HopfAxiom::ComultUnit => "comult-unit",
            HopfAxiom::CounitUnit => "counit-unit",
            HopfAxiom::CounitMultiplicative => "counit-multiplicative",
            HopfAxiom::LeftAntipode => "left-antipode",
            HopfAxiom::RightAntipode => "right-antipode",
        };
        f.write_str(s)
    }
}

/// One failing entry of a bialgebra identity. `indices` lists the input
/// basis indices followed by the output coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: HopfAxiom,
    pub indices: Vec<usize>,
    pub lhs: RingElem,
    pub rhs: RingElem,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{} at ({}): {} != {}", self.axiom, idx.join(","), self.lhs, self.rhs)
    }
}

fn zeros(ring: &Ring, m: usize) -> Vec<RingElem> {
    vec![RingElem::zero(ring); m]
}

fn zero_matrix(ring: &Ring, m: usize) -> Matrix {
    vec![zeros(ring, m); m]
}

fn zero_tensor(ring: &Ring, m: usize) -> Tensor3 {
    vec![zero_matrix(ring, m); m]
}

fn basis(ring: &Ring, m: usize, i: usize) -> Vec<RingElem> {
    let mut v = zeros(ring, m);
    v[i] = RingElem::one(ring);
    v
}

fn add_assign(acc: &mut RingElem, x: RingElem) {
    *acc = &*acc + &x;
}

impl FiniteHopf {
    pub fn new(
        ring: &Ring,
        mult: Tensor3,
        unit: Vec<RingElem>,
        comult: Tensor3,
        counit: Vec<RingElem>,
        antipode: Option<Matrix>,
    ) -> Result<FiniteHopf> {
        let m = unit.len();
        if m == 0 {
            return Err(Error::InvalidArgument("Hopf algebra rank must be positive".into()));
        }
        let cube = |t: &Tensor3, what: &str| -> Result<()> {
            if t.len() != m || t.iter().any(|r| r.len() != m || r.iter().any(|c| c.len() != m)) {
                return Err(Error::InvalidArgument(format!("{what} must be {m}x{m}x{m}")));
            }
            Ok(())
        };
        cube(&mult, "mult")?;
        cube(&comult, "comult")?;
        if counit.len() != m {
            return Err(Error::InvalidArgument(format!("counit must have length {m}")));
        }
        if let Some(chi) = &antipode {
            if chi.len() != m || chi.iter().any(|r| r.len() != m) {
                return Err(Error::InvalidArgument(format!("antipode must be {m}x{m}")));
            }
        }
        let all = mult
            .iter()
            .chain(&comult)
            .flatten()
            .flatten()
            .chain(&unit)
            .chain(&counit)
            .chain(antipode.iter().flatten().flatten());
        for c in all {
            check_same_ring(ring, c.ring())?;
        }
        Ok(FiniteHopf {
            ring: ring.clone(),
            rank: m,
            mult,
            unit,
            comult,
            counit,
            antipode,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mult(&self) -> &Tensor3 {
        &self.mult
    }

    pub fn unit(&self) -> &[RingElem] {
        &self.unit
    }

    pub fn comult(&self) -> &Tensor3 {
        &self.comult
    }

    pub fn counit(&self) -> &[RingElem] {
        &self.counit
    }

    pub fn antipode(&self) -> Option<&Matrix> {
        self.antipode.as_ref()
    }

    pub fn with_antipode(&self, chi: Matrix) -> Result<FiniteHopf> {
        Self::new(
            &self.ring,
            self.mult.clone(),
            self.unit.clone(),
            self.comult.clone(),
            self.counit.clone(),
            Some(chi),
        )
    }

    /// Product of two vectors in basis coordinates.
    pub fn multiply(&self, a: &[RingElem], b: &[RingElem]) -> Vec<RingElem> {
        let m = self.rank;
        let mut out = zeros(&self.ring, m);
        for i in 0..m {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for k in 0..m {
                    if !self.mult[i][j][k].is_zero() {
                        add_assign(&mut out[k], &ab * &self.mult[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// `psi(v)` as an `m x m` coefficient matrix.
    pub fn comultiply(&self, v: &[RingElem]) -> Matrix {
        let m = self.rank;
        let mut out = zero_matrix(&self.ring, m);
        for i in 0..m {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..m {
                for k in 0..m {
                    if !self.comult[i][j][k].is_zero() {
                        add_assign(&mut out[j][k], &v[i] * &self.comult[i][j][k]);
                    }
                }
            }
        }
        out
    }

    pub fn apply_counit(&self, v: &[RingElem]) -> RingElem {
        let mut acc = RingElem::zero(&self.ring);
        for (a, e) in v.iter().zip(&self.counit) {
            add_assign(&mut acc, a * e);
        }
        acc
    }

    /// Applies a linear map given row-wise on basis vectors, as stored for
    /// the antipode.
    pub fn apply_linear(&self, map: &Matrix, v: &[RingElem]) -> Vec<RingElem> {
        let mut out = zeros(&self.ring, self.rank);
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in map[i].iter().enumerate() {
                add_assign(&mut out[j], a * c);
            }
        }
        out
    }

    /// Every failing entry of the bialgebra identities, plus the antipode
    /// identities when an antipode is present. Empty means valid.
    pub fn check(&self) -> Vec<Violation> {
        let m = self.rank;
        let r = &self.ring;
        let mut out = Vec::new();
        let mut push = |axiom, indices: Vec<usize>, lhs: &RingElem, rhs: &RingElem| {
            if lhs != rhs {
                out.push(Violation {
                    axiom,
                    indices,
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                });
            }
        };
        let e: Vec<Vec<RingElem>> = (0..m).map(|i| basis(r, m, i)).collect();

        for i in 0..m {
            for j in 0..m {
                let ij = &self.mult[i][j];
                for k in 0..m {
                    let left = self.multiply(ij, &e[k]);
                    let right = self.multiply(&e[i], &self.mult[j][k]);
                    for l in 0..m {
                        push(HopfAxiom::Associativity, vec![i, j, k, l], &left[l], &right[l]);
                    }
                }
            }
        }
        for i in 0..m {
            let left = self.multiply(&self.unit, &e[i]);
            let right = self.multiply(&e[i], &self.unit);
            for l in 0..m {
                push(HopfAxiom::LeftUnit, vec![i, l], &left[l], &e[i][l]);
                push(HopfAxiom::RightUnit, vec![i, l], &right[l], &e[i][l]);
            }
        }

        for i in 0..m {
            let psi = &self.comult[i];
            // (psi (x) 1) psi and (1 (x) psi) psi as m^3 tensors
            let mut left = zero_tensor(r, m);
            let mut right = zero_tensor(r, m);
            for a in 0..m {
                for b in 0..m {
                    let c = &psi[a][b];
                    if c.is_zero() {
                        continue;
                    }
                    for x in 0..m {
                        for y in 0..m {
                            let ca = &self.comult[a][x][y];
                            if !ca.is_zero() {
                                add_assign(&mut left[x][y][b], c * ca);
                            }
                            let cb = &self.comult[b][x][y];
                            if !cb.is_zero() {
                                add_assign(&mut right[a][x][y], c * cb);
                            }
                        }
                    }
                }
            }
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        push(HopfAxiom::Coassociativity, vec![i, j, k, l], &left[j][k][l], &right[j][k][l]);
                    }
                }
            }
            let mut lc = zeros(r, m);
            let mut rc = zeros(r, m);
            for a in 0..m {
                for b in 0..m {
                    add_assign(&mut lc[b], &self.counit[a] * &psi[a][b]);
                    add_assign(&mut rc[a], &psi[a][b] * &self.counit[b]);
                }
            }
            for l in 0..m {
                push(HopfAxiom::LeftCounit, vec![i, l], &lc[l], &e[i][l]);
                push(HopfAxiom::RightCounit, vec![i, l], &rc[l], &e[i][l]);
            }
        }

        for i in 0..m {
            for j in 0..m {
                let left = self.comultiply(&self.mult[i][j]);
                let right = self.tensor_product(&self.comult[i], &self.comult[j]);
                for k in 0..m {
                    for l in 0..m {
                        push(HopfAxiom::Compatibility, vec![i, j, k, l], &left[k][l], &right[k][l]);
                    }
                }
                let lhs = self.apply_counit(&self.mult[i][j]);
                let rhs = &self.counit[i] * &self.counit[j];
                push(HopfAxiom::CounitMultiplicative, vec![i, j], &lhs, &rhs);
            }
        }
        let psi_unit = self.comultiply(&self.unit);
        for k in 0..m {
            for l in 0..m {
                let rhs = &self.unit[k] * &self.unit[l];
                push(HopfAxiom::ComultUnit, vec![k, l], &psi_unit[k][l], &rhs);
            }
        }
        push(HopfAxiom::CounitUnit, vec![], &self.apply_counit(&self.unit), &RingElem::one(r));

        if let Some(chi) = &self.antipode {
            for (axiom, i, l, lhs, rhs) in self.antipode_defects(chi) {
                push(axiom, vec![i, l], &lhs, &rhs);
            }
        }
        out
    }

    /// Product in `H (x) H` of two coefficient matrices.
    fn tensor_product(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let m = self.rank;
        let mut out = zero_matrix(&self.ring, m);
        for p in 0..m {
            for q in 0..m {
                if a[p][q].is_zero() {
                    continue;
                }
                for s in 0..m {
                    for t in 0..m {
                        if b[s][t].is_zero() {
                            continue;
                        }
                        let c = &a[p][q] * &b[s][t];
                        for k in 0..m {
                            if self.mult[p][s][k].is_zero() {
                                continue;
                            }
                            let ck = &c * &self.mult[p][s][k];
                            for l in 0..m {
                                if !self.mult[q][t][l].is_zero() {
                                    add_assign(&mut out[k][l], &ck * &self.mult[q][t][l]);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Entries where `mu(1 (x) chi) psi` or `mu(chi (x) 1) psi` differs
    /// from `eta eps`.
    fn antipode_defects(&self, chi: &Matrix) -> Vec<(HopfAxiom, usize, usize, RingElem, RingElem)> {
        let m = self.rank;
        let mut out = Vec::new();
        let chis: Vec<Vec<RingElem>> = (0..m).map(|k| chi[k].clone()).collect();
        for i in 0..m {
            let mut left = zeros(&self.ring, m);
            let mut right = zeros(&self.ring, m);
            for j in 0..m {
                for k in 0..m {
                    let c = &self.comult[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    let ej = basis(&self.ring, m, j);
                    let ek = basis(&self.ring, m, k);
                    let l1 = self.multiply(&ej, &chis[k]);
                    let r1 = self.multiply(&chis[j], &ek);
                    for l in 0..m {
                        add_assign(&mut left[l], c * &l1[l]);
                        add_assign(&mut right[l], c * &r1[l]);
                    }
                }
            }
            for l in 0..m {
                let target = &self.counit[i] * &self.unit[l];
                if left[l] != target {
                    out.push((HopfAxiom::LeftAntipode, i, l, left[l].clone(), target.clone()));
                }
                if right[l] != target {
                    out.push((HopfAxiom::RightAntipode, i, l, right[l].clone(), target));
                }
            }
        }
        out
    }

    /// `eps(v) = 1` and `psi(v) = v (x) v`.
    pub fn is_grouplike(&self, v: &[RingElem]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::InvalidArgument(format!("vector must have length {}", self.rank)));
        }
        for c in v {
            check_same_ring(&self.ring, c.ring())?;
        }
        if !self.apply_counit(v).is_one() {
            return Ok(false);
        }
        let psi = self.comultiply(v);
        for j in 0..self.rank {
            for k in 0..self.rank {
                if psi[j][k] != &v[j] * &v[k] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Antipode by recursion along the basis order. Needs `eta(1) = e_0` and
    /// `psi(e_i) - e_0 (x) e_i` supported on `e_j (x) e_k` with `k < i`.
    pub fn compute_antipode(&self) -> Result<Matrix> {
        let m = self.rank;
        let r = &self.ring;
        if self.unit != basis(r, m, 0) {
            return Err(Error::NotFiltered("the unit is not the first basis element".into()));
        }
        let mut chi: Matrix = Vec::with_capacity(m);
        for i in 0..m {
            let mut v = zeros(r, m);
            v[0] = self.counit[i].clone();
            for j in 0..m {
                for k in 0..m {
                    let mut a = self.comult[i][j][k].clone();
                    if j == 0 && k == i {
                        a = &a - &RingElem::one(r);
                    }
                    if a.is_zero() {
                        continue;
                    }
                    if k >= i {
                        return Err(Error::NotFiltered(format!(
                            "reduced comultiplication of e_{i} has coefficient {a} on e_{j} (x) e_{k}"
                        )));
                    }
                    let term = self.multiply(&basis(r, m, j), &chi[k]);
                    for l in 0..m {
                        v[l] = &v[l] - &(&a * &term[l]);
                    }
                }
            }
            chi.push(v);
        }
        if let Some((axiom, i, l, lhs, rhs)) = self.antipode_defects(&chi).into_iter().next() {
            return Err(Error::AntipodeVerificationFailed(format!(
                "{axiom} fails at e_{i}, coordinate {l}: {lhs} != {rhs}"
            )));
        }
        Ok(chi)
    }

    /// Structure constants transposed on the dual basis.
    pub fn cartier_dual(&self) -> FiniteHopf {
        let m = self.rank;
        let mut mult = zero_tensor(&self.ring, m);
        let mut comult = zero_tensor(&self.ring, m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    mult[i][j][k] = self.comult[k][i][j].clone();
                    comult[i][j][k] = self.mult[j][k][i].clone();
                }
            }
        }
        let antipode = self
            .antipode
            .as_ref()
            .map(|chi| (0..m).map(|i| (0..m).map(|j| chi[j][i].clone()).collect()).collect());
        FiniteHopf {
            ring: self.ring.clone(),
            rank: m,
            mult,
            unit: self.counit.clone(),
            comult,
            counit: self.unit.clone(),
            antipode,
        }
    }
}

// Bundled examples.

fn builder(ring: &Ring, m: usize) -> (Tensor3, Vec<RingElem>, Tensor3, Vec<RingElem>) {
    (zero_tensor(ring, m), zeros(ring, m), zero_tensor(ring, m), zeros(ring, m))
}

fn fp(p: u64) -> Result<Ring> {
    if !crate::ring::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(RingDesc::integers_mod(p)?.into_ring())
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// The rank-1 Hopf algebra `R` itself.
pub fn trivial(ring: &Ring) -> FiniteHopf {
    let one = RingElem::one(ring);
    FiniteHopf::new(
        ring,
        vec![vec![vec![one.clone()]]],
        vec![one.clone()],
        vec![vec![vec![one.clone()]]],
        vec![one.clone()],
        Some(vec![vec![one]]),
    )
    .expect("well-formed")
}

/// Group algebra `R[Z/n]` with basis `g^0, ..., g^{n-1}`.
pub fn group_algebra(ring: &Ring, n: usize) -> Result<FiniteHopf> {
    if n == 0 {
        return Err(Error::InvalidArgument("group order must be positive".into()));
    }
    let one = RingElem::one(ring);
    let (mut mult, _, mut comult, _) = builder(ring, n);
    let mut chi = zero_matrix(ring, n);
    for i in 0..n {
        for j in 0..n {
            mult[i][j][(i + j) % n] = one.clone();
        }
        comult[i][i][i] = one.clone();
        chi[i][(n - i) % n] = one.clone();
    }
    FiniteHopf::new(ring, mult, basis(ring, n, 0), comult, vec![one; n], Some(chi))
}

/// Functions on `Z/n` with the basis of point indicators.
pub fn function_algebra(ring: &Ring, n: usize) -> Result<FiniteHopf> {
    Ok(group_algebra(ring, n)?.cartier_dual())
}

/// Truncated divided powers of rank `p` over `F_p`:
/// `e_i e_j = C(i+j, i) e_{i+j}` and `psi(e_n) = sum e_i (x) e_{n-i}`.
pub fn divided_power(p: u64) -> Result<FiniteHopf> {
    let ring = fp(p)?;
    let m = p as usize;
    let (mut mult, _, mut comult, _) = builder(&ring, m);
    for i in 0..m {
        for j in 0..m - i {
            mult[i][j][i + j] = RingElem::from_int(&ring, binomial(i + j, i));
        }
        for j in 0..=i {
            comult[i][j][i - j] = RingElem::one(&ring);
        }
    }
    FiniteHopf::new(&ring, mult, basis(&ring, m, 0), comult, basis(&ring, m, 0), None)
}

/// `F_p[x]/(x^p)` with `x` primitive, in the basis `1, x, ..., x^{p-1}`.
pub fn truncated_primitive(p: u64) -> Result<FiniteHopf> {
    let ring = fp(p)?;
    let m = p as usize;
    let (mut mult, _, mut comult, _) = builder(&ring, m);
    for i in 0..m {
        for j in 0..m - i {
            mult[i][j][i + j] = RingElem::one(&ring);
        }
        for j in 0..=i {
            comult[i][j][i - j] = RingElem::from_int(&ring, binomial(i, j));
        }
    }
    FiniteHopf::new(&ring, mult, basis(&ring, m, 0), comult, basis(&ring, m, 0), None)
}

/// Looks up a bundled example: `trivial`, `group:N`, `functions:N`,
/// `divided-power:P`, `truncated-primitive:P`. Integral examples are over Z.
pub fn example(name: &str) -> Result<FiniteHopf> {
    let z = RingDesc::integers().into_ring();
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (name, None),
    };
    let num = || -> Result<u64> {
        arg.and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("example '{name}' needs a numeric parameter")))
    };
    match kind {
        "trivial" if arg.is_none() => Ok(trivial(&z)),
        "group" => group_algebra(&z, num()? as usize),
        "functions" => function_algebra(&z, num()? as usize),
        "divided-power" => divided_power(num()?),
        "truncated-primitive" => truncated_primitive(num()?),
        _ => Err(Error::InvalidArgument(format!("unknown Hopf example '{name}'"))),
    }
}

/// Names of the examples exercised by the test suite.
pub const BUNDLED_EXAMPLES: [&str; 11] = [
    "trivial",
    "group:2",
    "group:3",
    "functions:2",
    "functions:3",
    "divided-power:2",
    "divided-power:3",
    "divided-power:5",
    "truncated-primitive:2",
    "truncated-primitive:3",
    "truncated-primitive:5",
];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfFile {
    ring: String,
    rank: usize,
    mult: Vec<Vec<Vec<(usize, String)>>>,
    unit: Vec<String>,
    comult: Vec<Vec<(usize, usize, String)>>,
    counit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode: Option<Vec<Vec<(usize, String)>>>,
}

fn index(k: usize, m: usize, what: &str) -> Result<usize> {
    if k < m {
        Ok(k)
    } else {
        Err(Error::InvalidArgument(format!("{what} index {k} out of range for rank {m}")))
    }
}

fn dense(ring: &Ring, m: usize, v: &[String], what: &str) -> Result<Vec<RingElem>> {
    if v.len() != m {
        return Err(Error::InvalidArgument(format!("{what} must have {m} entries")));
    }
    v.iter().map(|s| parse_elem(s, ring)).collect()
}

impl FiniteHopf {
    pub fn from_json(text: &str) -> Result<FiniteHopf> {
        let file: HopfFile = serde_json::from_str(text).map_err(|e| {
            ParseError::at(e.line(), e.column().max(1), format!("invalid Hopf file: {e}"))
        })?;
        let ring = parse_ring(&file.ring)?.into_ring();
        let m = file.rank;
        if m == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        if file.mult.len() != m || file.mult.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidArgument(format!("mult must be a {m}x{m} table of entry lists")));
        }
        if file.comult.len() != m {
            return Err(Error::InvalidArgument(format!("comult must have {m} entry lists")));
        }
        let mut mult = zero_tensor(&ring, m);
        for (i, row) in file.mult.iter().enumerate() {
            for (j, entries) in row.iter().enumerate() {
                for (k, c) in entries {
                    let k = index(*k, m, "mult")?;
                    add_assign(&mut mult[i][j][k], parse_elem(c, &ring)?);
                }
            }
        }
        let mut comult = zero_tensor(&ring, m);
        for (i, entries) in file.comult.iter().enumerate() {
            for (j, k, c) in entries {
                let (j, k) = (index(*j, m, "comult")?, index(*k, m, "comult")?);
                add_assign(&mut comult[i][j][k], parse_elem(c, &ring)?);
            }
        }
        let antipode = match &file.antipode {
            None => None,
            Some(rows) => {
                if rows.len() != m {
                    return Err(Error::InvalidArgument(format!("antipode must have {m} entry lists")));
                }
                let mut chi = zero_matrix(&ring, m);
                for (i, entries) in rows.iter().enumerate() {
                    for (j, c) in entries {
                        let j = index(*j, m, "antipode")?;
                        add_assign(&mut chi[i][j], parse_elem(c, &ring)?);
                    }
                }
                Some(chi)
            }
        };
        let unit = dense(&ring, m, &file.unit, "unit")?;
        let counit = dense(&ring, m, &file.counit, "counit")?;
        FiniteHopf::new(&ring, mult, unit, comult, counit, antipode)
    }

    pub fn to_json(&self) -> String {
        let m = self.rank;
        let s = |c: &RingElem| c.to_string();
        let file = HopfFile {
            ring: self.ring.to_string(),
            rank: m,
            mult: (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| (0..m).filter(|&k| !self.mult[i][j][k].is_zero()).map(|k| (k, s(&self.mult[i][j][k]))).collect())
                        .collect()
                })
                .collect(),
            unit: self.unit.iter().map(s).collect(),
            comult: (0..m)
                .map(|i| {
                    let mut v = Vec::new();
                    for j in 0..m {
                        for k in 0..m {
                            if !self.comult[i][j][k].is_zero() {
                                v.push((j, k, s(&self.comult[i][j][k])));
                            }
                        }
                    }
                    v
                })
                .collect(),
            counit: self.counit.iter().map(s).collect(),
            antipode: self.antipode.as_ref().map(|chi| {
                chi.iter()
                    .map(|row| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, s(c))).collect())
                    .collect()
            }),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}
