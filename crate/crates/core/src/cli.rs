//! The `fgcalc` command-line front-end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::divisor::Divisor;
use crate::error::{Error, ErrorClass, Result};
use crate::fgl::{self, Fgl, Height, Regularity};
use crate::fmt_terms::power_string;
use crate::hopf::{self, FiniteHopf};
use crate::parse::{parse_elem, parse_elem_list, parse_laurent, parse_polynomial, parse_ring, parse_series};
use crate::residue::{self, MeroDegree};
use crate::ring::{lift_idempotent, split_ring, Ring};
use crate::series::{LaurentSeries, TruncSeries};
use crate::weierstrass;

pub const DEFAULT_ORDER: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "fgcalc", version, about = "Exact formal group law calculator")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct RingArg {
    /// Coefficient ring, e.g. "Z", "Z/4", "Q[a:-1]", "Z[e;e^2]"
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

#[derive(Args, Debug, Serialize)]
pub struct OrderArg {
    /// Truncation order (terms of total degree below this are kept)
    #[arg(long, default_value_t = DEFAULT_ORDER, value_parser = clap::value_parser!(u32).range(2..))]
    pub order: u32,
}

#[derive(Args, Debug, Serialize)]
#[group(required = true, multiple = false)]
pub struct FglChoice {
    /// Formal group law as an expression in the two --vars
    #[arg(long, allow_hyphen_values = true)]
    pub fgl: Option<String>,
    /// The universal law over its Lazard generators (ignores --ring)
    #[arg(long)]
    pub universal: bool,
    /// F(x,y) = x + y
    #[arg(long)]
    pub additive: bool,
    /// F(x,y) = x + y + xy
    #[arg(long)]
    pub multiplicative: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct FglArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub choice: FglChoice,
    /// Names of the two variables of --fgl
    #[arg(long, default_value = "x,y")]
    pub vars: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub ring: RingArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub order: OrderArg,
}

#[derive(Args, Debug, Serialize)]
pub struct SeriesArgs {
    /// Univariate power series
    #[arg(long, allow_hyphen_values = true)]
    pub series: String,
    /// Series variable
    #[arg(long, default_value = "x")]
    pub var: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub ring: RingArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub order: OrderArg,
}

#[derive(Args, Debug, Serialize)]
pub struct LaurentArgs {
    /// Laurent series; negative powers of the variable are allowed
    #[arg(long, allow_hyphen_values = true)]
    pub laurent: String,
    #[arg(long, default_value = "x")]
    pub var: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub ring: RingArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub order: OrderArg,
}

#[derive(Args, Debug, Serialize)]
#[group(required = true, multiple = false)]
pub struct HopfSource {
    /// JSON file in the format of docs/hopf-format.md
    #[arg(long)]
    pub file: Option<String>,
    /// Bundled example: trivial, group:N, functions:N, divided-power:P, truncated-primitive:P
    #[arg(long)]
    pub example: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ElemArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub elem: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub ring: RingArg,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Validate a formal group law to the given order
    FglCheck(FglArgs),
    /// The universal formal group law
    FglUniversal(OrderArg),
    /// Associativity relations among the universal coefficients
    FglRelations(OrderArg),
    /// The n-series [n](x)
    FglNseries {
        #[command(flatten)]
        #[serde(flatten)]
        fgl: FglArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Transport a law along a coordinate change f(x)
    FglConjugate {
        #[command(flatten)]
        #[serde(flatten)]
        fgl: FglArgs,
        /// Coordinate f(x) with f(0) = 0 and unit linear coefficient
        #[arg(long, allow_hyphen_values = true)]
        coord: String,
    },
    /// Whether phi(F(x,y)) = G(phi(x), phi(y))
    FglHomCheck {
        #[command(flatten)]
        #[serde(flatten)]
        fgl: FglArgs,
        /// Target law G in the same --vars
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Candidate homomorphism phi(x)
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// H(x) = dF/dy(x, 0); the invariant differential is dx/H(x)
    FglInvdiff(FglArgs),
    /// Logarithm (Q-algebras only)
    FglLog(FglArgs),
    /// Height in characteristic p
    FglHeight {
        #[command(flatten)]
        #[serde(flatten)]
        fgl: FglArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Landweber sequence u_0 = p, u_1, ..., u_nmax
    FglLandweber {
        #[command(flatten)]
        #[serde(flatten)]
        fgl: FglArgs,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        nmax: u32,
    },
    /// Write f(x) = v(x^p)
    FglFrobeniusDecompose {
        #[command(flatten)]
        #[serde(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Write an additive series as sum a_k x^(p^k)
    FglAdditiveDecompose {
        #[command(flatten)]
        #[serde(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Weierstrass degree of a series
    WsDegree(SeriesArgs),
    /// Factor g = h u with h a Weierstrass polynomial and u a unit
    WsFactor(SeriesArgs),
    /// Reduce f modulo the Weierstrass series --by
    WsReduce {
        #[command(flatten)]
        #[serde(flatten)]
        series: SeriesArgs,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Divisor with the given nilpotent points
    DivFrompoints {
        /// Comma-separated nilpotent ring elements
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        #[command(flatten)]
        #[serde(flatten)]
        ring: RingArg,
    },
    /// Sum of two divisors, given as polynomials in t
    DivSum {
        #[arg(long, allow_hyphen_values = true)]
        div: String,
        #[arg(long, allow_hyphen_values = true)]
        div2: String,
        #[command(flatten)]
        #[serde(flatten)]
        ring: RingArg,
    },
    /// Translation product of two divisors under a formal group law
    DivStar {
        #[command(flatten)]
        #[serde(flatten)]
        fgl: FglArgs,
        #[arg(long, allow_hyphen_values = true)]
        div: String,
        #[arg(long, allow_hyphen_values = true)]
        div2: String,
    },
    /// k-th exterior power of the divisor with the given points
    DivLambda {
        #[command(flatten)]
        #[serde(flatten)]
        fgl: FglArgs,
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        #[arg(long)]
        k: usize,
    },
    /// Chern coefficients c_1, ..., c_n of a divisor
    DivChern {
        #[arg(long, allow_hyphen_values = true)]
        div: String,
        #[command(flatten)]
        #[serde(flatten)]
        ring: RingArg,
    },
    /// Degree of a meromorphic series
    MeroDeg(LaurentArgs),
    /// Factor x^k u g of a meromorphic series
    MeroFactor(LaurentArgs),
    /// Residue, optionally of f(g(x)) g'(x)
    Res {
        #[command(flatten)]
        #[serde(flatten)]
        laurent: LaurentArgs,
        /// Weierstrass series g to substitute
        #[arg(long, allow_hyphen_values = true)]
        compose: Option<String>,
    },
    /// Whether an element is nilpotent
    RingNilpotent(ElemArgs),
    /// Whether an element is a unit
    RingUnit(ElemArgs),
    /// Idempotent lift of an element idempotent modulo nilpotents
    RingLiftIdempotent(ElemArgs),
    /// Chinese-remainder splitting of Z/n
    RingSplit(RingArg),
    /// Check the Hopf algebra axioms
    HopfCheck(HopfSource),
    /// Antipode by triangular recursion
    HopfAntipode(HopfSource),
    /// Cartier dual, as a Hopf file
    HopfDual(HopfSource),
    /// Whether a vector is grouplike
    HopfGrouplike {
        #[command(flatten)]
        #[serde(flatten)]
        source: HopfSource,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::FglCheck(_) => "fgl-check",
            Command::FglUniversal(_) => "fgl-universal",
            Command::FglRelations(_) => "fgl-relations",
            Command::FglNseries { .. } => "fgl-nseries",
            Command::FglConjugate { .. } => "fgl-conjugate",
            Command::FglHomCheck { .. } => "fgl-hom-check",
            Command::FglInvdiff(_) => "fgl-invdiff",
            Command::FglLog(_) => "fgl-log",
            Command::FglHeight { .. } => "fgl-height",
            Command::FglLandweber { .. } => "fgl-landweber",
            Command::FglFrobeniusDecompose { .. } => "fgl-frobenius-decompose",
            Command::FglAdditiveDecompose { .. } => "fgl-additive-decompose",
            Command::WsDegree(_) => "ws-degree",
            Command::WsFactor(_) => "ws-factor",
            Command::WsReduce { .. } => "ws-reduce",
            Command::DivFrompoints { .. } => "div-frompoints",
            Command::DivSum { .. } => "div-sum",
            Command::DivStar { .. } => "div-star",
            Command::DivLambda { .. } => "div-lambda",
            Command::DivChern { .. } => "div-chern",
            Command::MeroDeg(_) => "mero-deg",
            Command::MeroFactor(_) => "mero-factor",
            Command::Res { .. } => "res",
            Command::RingNilpotent(_) => "ring-nilpotent",
            Command::RingUnit(_) => "ring-unit",
            Command::RingLiftIdempotent(_) => "ring-lift-idempotent",
            Command::RingSplit(_) => "ring-split",
            Command::HopfCheck(_) => "hopf-check",
            Command::HopfAntipode(_) => "hopf-antipode",
            Command::HopfDual(_) => "hopf-dual",
            Command::HopfGrouplike { .. } => "hopf-grouplike",
        }
    }
}

/// Result of a command: text lines, the structured value, and context.
struct Outcome {
    text: String,
    value: Value,
    ring: Option<String>,
    order: Option<u32>,
    /// Exit with the verification status even though nothing errored.
    failed: bool,
}

impl Outcome {
    fn new(text: impl Into<String>, value: Value) -> Outcome {
        Outcome {
            text: text.into(),
            value,
            ring: None,
            order: None,
            failed: false,
        }
    }

    fn string(s: impl ToString) -> Outcome {
        let s = s.to_string();
        Outcome::new(s.clone(), Value::String(s))
    }

    fn ring(mut self, ring: &Ring) -> Outcome {
        self.ring = Some(ring.to_string());
        self
    }

    fn order(mut self, order: u32) -> Outcome {
        self.order = Some(order);
        self
    }
}

pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Parse => 2,
        ErrorClass::Precondition => 3,
        ErrorClass::Verification => 4,
        ErrorClass::UnsupportedRing => 5,
        ErrorClass::Cancelled => 1,
    }
}

fn ring_of(arg: &RingArg) -> Result<Ring> {
    Ok(parse_ring(&arg.ring)?.into_ring())
}

fn split_vars(vars: &str) -> Vec<&str> {
    vars.split(',').map(str::trim).collect()
}

impl FglArgs {
    fn load(&self) -> Result<Fgl> {
        let order = self.order.order;
        let c = &self.choice;
        if c.universal {
            return Ok(fgl::universal_fgl(order)?.fgl);
        }
        let ring = ring_of(&self.ring)?;
        if c.additive {
            return Ok(Fgl::additive(&ring, order));
        }
        if c.multiplicative {
            return Ok(Fgl::multiplicative(&ring, order));
        }
        let text = c.fgl.as_deref().expect("clap enforces one choice");
        let s = self.parse_bivariate(text, &ring)?;
        Fgl::validate(&s, order)
    }

    fn parse_bivariate(&self, text: &str, ring: &Ring) -> Result<TruncSeries> {
        let vars = split_vars(&self.vars);
        if vars.len() != 2 {
            return Err(Error::InvalidArgument(format!("--vars needs two names, got '{}'", self.vars)));
        }
        parse_series(text, ring, &vars, self.order.order)?.rename_vars(&["x", "y"])
    }

    fn parse_univariate(&self, text: &str, ring: &Ring) -> Result<TruncSeries> {
        let var = split_vars(&self.vars)[0];
        parse_series(text, ring, &[var], self.order.order)?.rename_vars(&["x"])
    }
}

impl SeriesArgs {
    fn load(&self) -> Result<TruncSeries> {
        let ring = ring_of(&self.ring)?;
        parse_series(&self.series, &ring, &[self.var.as_str()], self.order.order)
    }
}

impl LaurentArgs {
    fn load(&self) -> Result<LaurentSeries> {
        let ring = ring_of(&self.ring)?;
        parse_laurent(&self.laurent, &ring, &self.var, self.order.order as i64)
    }
}

impl HopfSource {
    fn load(&self) -> Result<FiniteHopf> {
        match (&self.file, &self.example) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
                FiniteHopf::from_json(&text)
            }
            (None, Some(name)) => hopf::example(name),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

fn lines(items: &[String]) -> String {
    items.join("\n")
}

fn fgl_outcome(f: &Fgl) -> Outcome {
    Outcome::string(f.series()).ring(f.ring()).order(f.order())
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    use Command::*;
    Ok(match cmd {
        FglCheck(a) => {
            let f = a.load()?;
            Outcome::string("valid").ring(f.ring()).order(f.order())
        }
        FglUniversal(o) => fgl_outcome(&fgl::universal_fgl(o.order)?.fgl),
        FglRelations(o) => {
            let u = fgl::universal_fgl(o.order)?;
            let text: Vec<String> = u
                .relations
                .iter()
                .map(|r| {
                    let mono: Vec<String> = ["x", "y", "z"]
                        .iter()
                        .zip(&r.exponent)
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| power_string(v, e as i64))
                        .collect();
                    format!("{}: {}", mono.join("*"), r.poly)
                })
                .collect();
            let value = u
                .relations
                .iter()
                .map(|r| json!({"exponent": r.exponent, "relation": r.poly.to_string()}))
                .collect();
            Outcome::new(lines(&text), Value::Array(value)).ring(&u.ring).order(u.order)
        }
        FglNseries { fgl, n } => {
            let f = fgl.load()?;
            Outcome::string(f.n_series(*n)?).ring(f.ring()).order(f.order())
        }
        FglConjugate { fgl, coord } => {
            let f = fgl.load()?;
            let c = fgl.parse_univariate(coord, f.ring())?;
            fgl_outcome(&f.conjugate(&c)?)
        }
        FglHomCheck { fgl: a, target, phi } => {
            let f = a.load()?;
            let g = Fgl::validate(&a.parse_bivariate(target, f.ring())?, a.order.order)?;
            let phi = a.parse_univariate(phi, f.ring())?;
            let ok = fgl::hom_check(&f, &g, &phi)?;
            Outcome::new(ok.to_string(), Value::Bool(ok)).ring(f.ring()).order(f.order())
        }
        FglInvdiff(a) => {
            let f = a.load()?;
            let h = f.invariant_differential();
            Outcome::string(h.to_string()).ring(f.ring()).order(h.order())
        }
        FglLog(a) => {
            let f = a.load()?;
            Outcome::string(f.log()?).ring(f.ring()).order(f.order())
        }
        FglHeight { fgl: a, prime } => {
            let f = a.load()?;
            let (text, value) = match fgl::height(&f, *prime)? {
                Height::Finite { height, unit } => (
                    format!("height {height}{}", if unit { " (unit)" } else { " (not a unit)" }),
                    json!({"height": height, "unit": unit}),
                ),
                Height::InfiniteUpToOrder(n) => {
                    (format!("infinite up to order {n}"), json!({"infinite_up_to_order": n}))
                }
            };
            Outcome::new(text, value).ring(f.ring()).order(f.order())
        }
        FglLandweber { fgl: a, prime, nmax } => {
            let f = a.load()?;
            let seq = fgl::landweber_sequence(&f, *prime, *nmax)?;
            let reg = |r: Regularity| match r {
                Regularity::Regular => "regular",
                Regularity::ZeroDivisor => "zero-divisor",
                Regularity::Unknown => "unknown",
            };
            let text: Vec<String> =
                seq.iter().map(|t| format!("u{} = {} ({})", t.n, t.value, reg(t.regularity))).collect();
            let value = seq
                .iter()
                .map(|t| json!({"n": t.n, "value": t.value.to_string(), "regularity": reg(t.regularity)}))
                .collect();
            Outcome::new(lines(&text), Value::Array(value)).ring(f.ring()).order(f.order())
        }
        FglFrobeniusDecompose { series, prime } => {
            let s = series.load()?;
            let v = fgl::frobenius_decompose(&s, *prime)?;
            Outcome::string(&v).ring(s.ring()).order(v.order())
        }
        FglAdditiveDecompose { series, prime } => {
            let s = series.load()?;
            let coeffs = fgl::additive_decompose(&s, *prime)?;
            let strs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            Outcome::new(strs.join(", "), json!(strs)).ring(s.ring()).order(s.order())
        }
        WsDegree(a) => {
            let s = a.load()?;
            let r = weierstrass::degree(&s)?;
            let value = json!({"degree": r.degree, "unit": r.unit.to_string(), "nilpotency": r.nilpotency});
            Outcome::new(r.degree.to_string(), value).ring(s.ring()).order(s.order())
        }
        WsFactor(a) => {
            let s = a.load()?;
            let f = weierstrass::factor(&s)?;
            let h = f.h.display(&a.var);
            let value = json!({"h": h, "u": f.u.to_string()});
            Outcome::new(format!("h = {h}\nu = {}", f.u), value).ring(s.ring()).order(s.order())
        }
        WsReduce { series, by } => {
            let f = series.load()?;
            let g = parse_series(by, f.ring(), &[series.var.as_str()], series.order.order)?;
            Outcome::string(weierstrass::reduce(&f, &g)?.display(&series.var)).ring(f.ring()).order(f.order())
        }
        DivFrompoints { roots, ring } => {
            let r = ring_of(ring)?;
            let d = Divisor::from_points(&r, &parse_elem_list(roots, &r)?)?;
            Outcome::string(d).ring(&r)
        }
        DivSum { div, div2, ring } => {
            let r = ring_of(ring)?;
            let d = Divisor::new(parse_polynomial(div, &r, "t")?)?;
            let e = Divisor::new(parse_polynomial(div2, &r, "t")?)?;
            Outcome::string(d.sum(&e)?).ring(&r)
        }
        DivStar { fgl: a, div, div2 } => {
            let f = a.load()?;
            let d = Divisor::new(parse_polynomial(div, f.ring(), "t")?)?;
            let e = Divisor::new(parse_polynomial(div2, f.ring(), "t")?)?;
            Outcome::string(d.star(&e, &f)?).ring(f.ring()).order(f.order())
        }
        DivLambda { fgl: a, roots, k } => {
            let f = a.load()?;
            let roots = parse_elem_list(roots, f.ring())?;
            Outcome::string(Divisor::lambda(&f, &roots, *k)?).ring(f.ring()).order(f.order())
        }
        DivChern { div, ring } => {
            let r = ring_of(ring)?;
            let d = Divisor::new(parse_polynomial(div, &r, "t")?)?;
            let strs: Vec<String> = d.chern().iter().map(|c| c.to_string()).collect();
            Outcome::new(strs.join(", "), json!(strs)).ring(&r)
        }
        MeroDeg(a) => {
            let f = a.load()?;
            let o = match residue::mero_degree(&f)? {
                MeroDegree::Constant(d) => Outcome::new(d.to_string(), json!(d)),
                MeroDegree::Split(parts) => {
                    let text: Vec<String> = parts
                        .iter()
                        .map(|c| format!("{} {} {}", c.idempotent, c.component, c.degree))
                        .collect();
                    let value = parts
                        .iter()
                        .map(|c| {
                            json!({"idempotent": c.idempotent.to_string(), "component": c.component.to_string(), "degree": c.degree})
                        })
                        .collect();
                    Outcome::new(lines(&text), Value::Array(value))
                }
            };
            o.ring(f.ring()).order(a.order.order)
        }
        MeroFactor(a) => {
            let f = a.load()?;
            let m = residue::mero_factor(&f)?;
            let value = json!({"degree": m.degree, "u": m.u.to_string(), "tail": m.tail.to_string()});
            Outcome::new(format!("degree = {}\nu = {}\ntail = {}", m.degree, m.u, m.tail), value)
                .ring(f.ring())
                .order(a.order.order)
        }
        Res { laurent, compose } => {
            let f = laurent.load()?;
            let rho = match compose {
                None => residue::residue(&f),
                Some(g) => {
                    let g = parse_series(g, f.ring(), &[laurent.var.as_str()], laurent.order.order)?;
                    let fg = residue::compose_weierstrass(&f, &g)?;
                    let dg = LaurentSeries::from_trunc(&g.derivative(0), 0).rename(&laurent.var);
                    residue::residue(&fg.checked_mul(&dg)?)
                }
            };
            Outcome::string(rho).ring(f.ring()).order(laurent.order.order)
        }
        RingNilpotent(a) => {
            let r = ring_of(&a.ring)?;
            let b = parse_elem(&a.elem, &r)?.is_nilpotent();
            Outcome::new(b.to_string(), Value::Bool(b)).ring(&r)
        }
        RingUnit(a) => {
            let r = ring_of(&a.ring)?;
            let b = parse_elem(&a.elem, &r)?.is_unit();
            Outcome::new(b.to_string(), Value::Bool(b)).ring(&r)
        }
        RingLiftIdempotent(a) => {
            let r = ring_of(&a.ring)?;
            Outcome::string(lift_idempotent(&parse_elem(&a.elem, &r)?)?).ring(&r)
        }
        RingSplit(a) => {
            let r = ring_of(a)?;
            let parts = split_ring(&r)?;
            let text: Vec<String> = parts.iter().map(|c| format!("{} {}", c.idempotent, c.component)).collect();
            let value = parts
                .iter()
                .map(|c| json!({"idempotent": c.idempotent.to_string(), "component": c.component.to_string()}))
                .collect();
            Outcome::new(lines(&text), Value::Array(value)).ring(&r)
        }
        HopfCheck(src) => {
            let h = src.load()?;
            let v = h.check();
            let text = if v.is_empty() {
                "valid".to_string()
            } else {
                lines(&v.iter().map(|v| v.to_string()).collect::<Vec<_>>())
            };
            let value = v
                .iter()
                .map(|v| {
                    json!({"axiom": v.axiom, "indices": v.indices, "lhs": v.lhs.to_string(), "rhs": v.rhs.to_string()})
                })
                .collect();
            let mut o = Outcome::new(text, Value::Array(value)).ring(h.ring());
            o.failed = !v.is_empty();
            o
        }
        HopfAntipode(src) => {
            let h = src.load()?;
            let chi = h.compute_antipode()?;
            let rows: Vec<String> = chi
                .iter()
                .enumerate()
                .map(|(i, row)| format!("chi(e{i}) = {}", basis_combination(row)))
                .collect();
            let value = json!(chi.iter().map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
            Outcome::new(lines(&rows), value).ring(h.ring())
        }
        HopfDual(src) => {
            let h = src.load()?;
            let d = h.cartier_dual();
            let text = d.to_json();
            let value: Value = serde_json::from_str(&text).expect("own output");
            Outcome::new(text, value).ring(h.ring())
        }
        HopfGrouplike { source, vector } => {
            let h = source.load()?;
            let v = parse_elem_list(vector, h.ring())?;
            let b = h.is_grouplike(&v)?;
            Outcome::new(b.to_string(), Value::Bool(b)).ring(h.ring())
        }
    })
}

/// `sum c_j e_j` with zero terms dropped.
fn basis_combination(row: &[crate::ring::RingElem]) -> String {
    let terms: Vec<String> = row
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            if c.is_one() {
                format!("e{j}")
            } else if c.num_terms() == 1 {
                format!("{c}*e{j}")
            } else {
                format!("({c})*e{j}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// to the given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let name = cli.command.name();
    let inputs = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    match dispatch(&cli.command) {
        Ok(o) => {
            match cli.format {
                Format::Text => {
                    let _ = writeln!(out, "{}", o.text);
                }
                Format::Json => {
                    let doc = json!({
                        "command": name,
                        "inputs": inputs,
                        "result": o.value,
                        "order": o.order,
                        "ring": o.ring,
                    });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
                }
            }
            if o.failed {
                exit_code(ErrorClass::Verification)
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "fgcalc: error[{}]: {e}", e.code());
            if cli.format == Format::Json {
                let doc = json!({
                    "command": name,
                    "inputs": inputs,
                    "error": {"code": e.code(), "message": e.to_string()},
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            exit_code(e.class())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["fgcalc"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn multiplicative_two_series() {
        let (code, out, _) = call(&["fgl-nseries", "--ring", "Q", "--fgl", "x+y+x*y", "--n", "2", "--order", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "2*x + x^2\n");
    }

    #[test]
    fn idempotent_lift() {
        let (code, out, _) = call(&["ring-lift-idempotent", "--ring", "Z/12", "--elem", "3"]);
        assert_eq!((code, out.as_str()), (0, "9\n"));
    }

    #[test]
    fn exit_codes_by_class() {
        assert_eq!(call(&["ring-unit", "--ring", "Z[", "--elem", "1"]).0, 2);
        assert_eq!(call(&["ring-lift-idempotent", "--ring", "Z/12", "--elem", "2"]).0, 3);
        assert_eq!(call(&["fgl-check", "--fgl", "x+y+x^2*y^2", "--order", "6"]).0, 4);
        assert_eq!(call(&["fgl-landweber", "--ring", "Z/4", "--additive", "--prime", "2"]).0, 5);
        let (code, _, err) = call(&["fgl-log", "--ring", "Z", "--multiplicative"]);
        assert_eq!(code, 3);
        assert!(err.contains("requires_rational_coefficients"), "{err}");
    }

    #[test]
    fn json_schema() {
        let (code, out, _) = call(&["--format", "json", "ring-unit", "--ring", "Z/12", "--elem", "5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], "ring-unit");
        assert_eq!(v["result"], true);
        assert_eq!(v["ring"], "Z/12");
        assert_eq!(v["inputs"]["elem"], "5");
        assert!(v["order"].is_null());
    }

    #[test]
    fn order_must_be_at_least_two() {
        assert_eq!(call(&["fgl-universal", "--order", "1"]).0, 2);
    }
}
