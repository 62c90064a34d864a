//! Euler characteristic calculus: combination rules, surgery, Betti numbers,
//! handle counts, the Kervaire semicharacteristic and curvatura integra,
//! plus a small expression language over these rules.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// A space described only by χ and a few flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiManifold {
    pub chi: i64,
    pub dim: u32,
    pub closed: bool,
    pub orientable: Option<bool>,
}

impl ChiManifold {
    /// Closed odd-dimensional descriptors must have χ = 0.
    pub fn new(chi: i64, dim: u32, closed: bool, orientable: Option<bool>) -> Result<Self, Error> {
        if closed && dim % 2 == 1 && chi != 0 {
            return Err(Error::InconsistentInput(format!(
                "closed {dim}-manifold with χ = {chi}; odd-dimensional closed manifolds have χ = 0"
            )));
        }
        Ok(ChiManifold {
            chi,
            dim,
            closed,
            orientable,
        })
    }

    fn known(chi: i64, dim: u32, closed: bool, orientable: bool) -> Self {
        Self::new(chi, dim, closed, Some(orientable)).expect("consistent by construction")
    }

    pub fn point() -> Self {
        Self::known(1, 0, true, true)
    }

    pub fn sphere(n: u32) -> Self {
        Self::known(chi_sphere(n), n, true, true)
    }

    pub fn disk(n: u32) -> Self {
        Self::known(1, n, false, true)
    }

    pub fn euclidean(n: u32) -> Self {
        Self::known(1, n, false, true)
    }

    /// The n-torus (S¹)ⁿ.
    pub fn torus(n: u32) -> Self {
        Self::known(if n == 0 { 1 } else { 0 }, n, true, true)
    }

    pub fn real_projective(n: u32) -> Self {
        Self::known(chi_real_projective(n), n, true, n % 2 == 1 || n == 0)
    }

    pub fn klein_bottle() -> Self {
        Self::known(0, 2, true, false)
    }

    pub fn mobius_strip() -> Self {
        Self::known(0, 2, false, false)
    }

    /// Closed orientable surface of genus g, or nonorientable with κ
    /// projective-plane summands.
    pub fn surface(orientable: bool, genus: u32) -> Result<Self, Error> {
        if !orientable && genus == 0 {
            return Err(Error::invalid("nonorientable genus must be at least 1"));
        }
        Ok(Self::known(
            chi_surface(orientable, genus),
            2,
            true,
            orientable,
        ))
    }
}

/// χ(Sⁿ) = 1 + (−1)ⁿ.
pub fn chi_sphere(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        2
    } else {
        0
    }
}

/// 2 − 2g for orientable surfaces, 2 − κ otherwise.
pub fn chi_surface(orientable: bool, genus: u32) -> i64 {
    let g = genus as i64;
    if orientable {
        2 - 2 * g
    } else {
        2 - g
    }
}

/// From the double cover Sⁿ → RPⁿ: χ(RPⁿ) = χ(Sⁿ)/2.
pub fn chi_real_projective(n: u32) -> i64 {
    chi_sphere(n) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// χ(M ⊔ N ⊔ …) = Σ χ.
    DisjointUnion,
    /// χ(M × N × …) = Π χ.
    Product,
    /// χ(M ∪ N) = χ(M) + χ(N) − χ(M ∩ N); arguments M, N, M ∩ N.
    Excision,
    /// A k-sheeted cover of M: k · χ(M).
    Covering(u32),
    /// Fibre F over base M: χ(F) · χ(M).
    Fibration,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::DisjointUnion => f.write_str("disjoint union"),
            Rule::Product => f.write_str("product"),
            Rule::Excision => f.write_str("excision"),
            Rule::Covering(k) => write!(f, "{k}-sheeted covering"),
            Rule::Fibration => f.write_str("fibration"),
        }
    }
}

pub fn chi_combine(rule: Rule, args: &[i64]) -> Result<i64, Error> {
    let arity = |want: usize| {
        if args.len() == want {
            Ok(())
        } else {
            Err(Error::InvalidArguments(format!(
                "{rule} takes {want} arguments, got {}",
                args.len()
            )))
        }
    };
    match rule {
        Rule::DisjointUnion | Rule::Product if args.is_empty() => Err(Error::InvalidArguments(
            format!("{rule} needs at least one argument"),
        )),
        Rule::DisjointUnion => Ok(args.iter().sum()),
        Rule::Product => Ok(args.iter().product()),
        Rule::Excision => {
            arity(3)?;
            Ok(args[0] + args[1] - args[2])
        }
        Rule::Covering(k) => {
            arity(1)?;
            Ok(k as i64 * args[0])
        }
        Rule::Fibration => {
            arity(2)?;
            Ok(args[0] * args[1])
        }
    }
}

/// χ after a p-surgery on an even-dimensional manifold: +2 for odd p,
/// −2 for even p.
pub fn chi_surgery(chi: i64, p: u32) -> i64 {
    if p % 2 == 1 {
        chi + 2
    } else {
        chi - 2
    }
}

/// Σ (−1)^k β_k.
pub fn chi_from_betti(betti: &[u64]) -> i64 {
    alternating_sum(betti)
}

fn alternating_sum(values: &[u64]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum()
}

/// For M = ∂V with dim M even: χ(M) = 2χ(V).
pub fn boundary_parity_check(chi_m: i64, dim_m: u32, chi_v: i64) -> Result<bool, Error> {
    if !dim_m.is_multiple_of(2) {
        return Err(Error::invalid(format!("dim M = {dim_m} must be even")));
    }
    Ok(chi_m == 2 * chi_v)
}

/// Handle (or cell) counts k_0..k_n by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleComplex {
    counts: Vec<u64>,
}

impl HandleComplex {
    /// No handles, indices 0..=dim allowed.
    pub fn empty(dim: usize) -> Self {
        HandleComplex {
            counts: vec![0; dim + 1],
        }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        HandleComplex { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn dim(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn attach(&self, index: usize) -> Result<HandleComplex, Error> {
        if index >= self.counts.len() {
            return Err(Error::invalid(format!(
                "handle index {index} exceeds dimension {}",
                self.dim()
            )));
        }
        let mut next = self.clone();
        next.counts[index] += 1;
        Ok(next)
    }
}

/// χ = Σ (−1)^i k_i.
pub fn handle_chi(h: &HandleComplex) -> i64 {
    alternating_sum(&h.counts)
}

/// Σ_{0 ≤ j ≤ (n−1)/2} dim H_j mod 2, given those dimensions.
pub fn semicharacteristic(betti_mod2: &[u64]) -> u8 {
    (betti_mod2.iter().fold(0u64, |acc, &b| acc ^ (b & 1))) as u8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "ring", content = "value", rename_all = "lowercase")]
pub enum CurvaturaIntegra {
    Integer(i64),
    Mod2(u8),
}

impl fmt::Display for CurvaturaIntegra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvaturaIntegra::Integer(v) => write!(f, "{v}"),
            CurvaturaIntegra::Mod2(v) => write!(f, "{v} (mod 2)"),
        }
    }
}

/// Kervaire's formula: Hopf(M) + χ/2 in Z for even n, Hopf(M) + χ_{1/2} in
/// Z₂ for odd n.
pub fn curvatura_integra(
    n: u32,
    chi: i64,
    semichar: u8,
    hopf: i64,
) -> Result<CurvaturaIntegra, Error> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if n.is_multiple_of(2) {
        if chi % 2 != 0 {
            return Err(Error::InconsistentInput(format!(
                "χ = {chi} is odd in even dimension {n}"
            )));
        }
        Ok(CurvaturaIntegra::Integer(hopf + chi / 2))
    } else {
        Ok(CurvaturaIntegra::Mod2(
            ((hopf.rem_euclid(2) as u8) + (semichar & 1)) % 2,
        ))
    }
}

/// Value of a χ expression: the characteristic and, when known, the
/// dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiValue {
    pub chi: i64,
    pub dim: Option<u32>,
}

/// Evaluates a χ expression, e.g. `product(sphere(2), sphere(3))`.
pub fn evaluate_chi(expr: &str) -> Result<ChiValue, Error> {
    let mut parser = Parser { src: expr, pos: 0 };
    let node = parser.expr()?;
    parser.skip_ws();
    if parser.pos != expr.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    eval(&node)
}

#[derive(Debug)]
enum Node {
    Int(i64),
    Call(String, Vec<Node>, usize),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, Error> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' => {
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                self.src[start..self.pos]
                    .parse()
                    .map(Node::Int)
                    .map_err(|_| self.error("bad integer"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name = self.src[start..self.pos].to_ascii_lowercase();
                if !self.eat('(') {
                    return Err(self.error("expected '('"));
                }
                let mut args = Vec::new();
                if !self.eat(')') {
                    loop {
                        args.push(self.expr()?);
                        if self.eat(')') {
                            break;
                        }
                        if !self.eat(',') {
                            return Err(self.error("expected ',' or ')'"));
                        }
                    }
                }
                Ok(Node::Call(name, args, start))
            }
            _ => Err(self.error("expected a number or a function call")),
        }
    }
}

fn eval(node: &Node) -> Result<ChiValue, Error> {
    let (name, args, at) = match node {
        Node::Int(v) => return Ok(ChiValue { chi: *v, dim: None }),
        Node::Call(name, args, at) => (name.as_str(), args, *at),
    };
    let ctx = |msg: String| Error::InvalidArguments(format!("{name} (column {}): {msg}", at + 1));
    let int = |n: &Node| match n {
        Node::Int(v) => Ok(*v),
        Node::Call(..) => Err(ctx("expected an integer argument".into())),
    };
    let nonneg = |n: &Node| {
        int(n).and_then(|v| u32::try_from(v).map_err(|_| ctx(format!("{v} must be ≥ 0"))))
    };
    let want = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(ctx(format!("takes {k} arguments, got {}", args.len())))
        }
    };
    let space = |m: ChiManifold| ChiValue {
        chi: m.chi,
        dim: Some(m.dim),
    };
    let values = || args.iter().map(eval).collect::<Result<Vec<_>, _>>();
    let chis = |vs: &[ChiValue]| vs.iter().map(|v| v.chi).collect::<Vec<_>>();
    let same_dim = |vs: &[ChiValue]| {
        let first = vs.first().and_then(|v| v.dim);
        vs.iter().all(|v| v.dim == first).then_some(first).flatten()
    };
    match name {
        "point" | "pt" => want(0).map(|_| space(ChiManifold::point())),
        "sphere" => {
            want(1)?;
            Ok(space(ChiManifold::sphere(nonneg(&args[0])?)))
        }
        "disk" | "ball" => {
            want(1)?;
            Ok(space(ChiManifold::disk(nonneg(&args[0])?)))
        }
        "euclidean" => {
            want(1)?;
            Ok(space(ChiManifold::euclidean(nonneg(&args[0])?)))
        }
        "torus" => {
            want(1)?;
            Ok(space(ChiManifold::torus(nonneg(&args[0])?)))
        }
        "rp" => {
            want(1)?;
            Ok(space(ChiManifold::real_projective(nonneg(&args[0])?)))
        }
        "klein" => want(0).map(|_| space(ChiManifold::klein_bottle())),
        "mobius" | "crosscap" => want(0).map(|_| space(ChiManifold::mobius_strip())),
        "surface" | "nonorientable" => {
            want(1)?;
            let m = ChiManifold::surface(name == "surface", nonneg(&args[0])?)
                .map_err(|e| ctx(e.to_string()))?;
            Ok(space(m))
        }
        "union" => {
            let vs = values()?;
            let chi =
                chi_combine(Rule::DisjointUnion, &chis(&vs)).map_err(|e| ctx(e.to_string()))?;
            Ok(ChiValue {
                chi,
                dim: same_dim(&vs),
            })
        }
        "product" | "bundle" => {
            let vs = values()?;
            let rule = if name == "bundle" {
                Rule::Fibration
            } else {
                Rule::Product
            };
            let chi = chi_combine(rule, &chis(&vs)).map_err(|e| ctx(e.to_string()))?;
            let dim = vs.iter().try_fold(0u32, |acc, v| v.dim.map(|d| acc + d));
            Ok(ChiValue { chi, dim })
        }
        "glue" => {
            let vs = values()?;
            let chi = chi_combine(Rule::Excision, &chis(&vs)).map_err(|e| ctx(e.to_string()))?;
            Ok(ChiValue {
                chi,
                dim: same_dim(&vs[..2]),
            })
        }
        "cover" => {
            want(2)?;
            let k = nonneg(&args[0])?;
            let base = eval(&args[1])?;
            let chi =
                chi_combine(Rule::Covering(k), &[base.chi]).map_err(|e| ctx(e.to_string()))?;
            Ok(ChiValue { chi, dim: base.dim })
        }
        "surgery" => {
            want(2)?;
            let m = eval(&args[0])?;
            let p = nonneg(&args[1])?;
            match m.dim {
                Some(d) if d % 2 == 0 => Ok(ChiValue {
                    chi: chi_surgery(m.chi, p),
                    dim: m.dim,
                }),
                Some(d) => Err(ctx(format!("surgery rule needs even dimension, got {d}"))),
                None => Err(ctx("surgery needs a space of known dimension".into())),
            }
        }
        "handles" | "betti" | "cells" => {
            let counts = args
                .iter()
                .map(|a| nonneg(a).map(u64::from))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ChiValue {
                chi: alternating_sum(&counts),
                dim: counts.len().checked_sub(1).map(|d| d as u32),
            })
        }
        _ => Err(Error::Parse(format!(
            "unknown function {name:?} at column {}",
            at + 1
        ))),
    }
}
