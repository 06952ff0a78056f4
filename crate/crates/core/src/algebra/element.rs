use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::degree::DegreeDelta;
use crate::error::{Error, Result};
use crate::graph::{KGraph, VertexId};
use crate::path::{vertex_path, Path};

pub type Scalar = BigRational;

/// `s_mu s_nu*`, with `s(mu) = s(nu)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub mu: Path,
    pub nu: Path,
}

impl Monomial {
    pub fn new(mu: Path, nu: Path) -> Result<Self> {
        if mu.source() != nu.source() {
            return Err(Error::EndpointMismatch {
                source_vertex: mu.source().to_string(),
                range: nu.source().to_string(),
            });
        }
        Ok(Monomial { mu, nu })
    }

    pub fn source(&self) -> &VertexId {
        self.mu.source()
    }

    /// `d(mu) - d(nu)`.
    pub fn grade(&self) -> DegreeDelta {
        DegreeDelta::between(self.mu.degree(), self.nu.degree())
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial {
            mu: self.nu.clone(),
            nu: self.mu.clone(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let ids = |p: &Path| p.edges().iter().map(|e| e.id.clone()).collect::<Vec<_>>();
        self.mu
            .degree()
            .cmp(other.mu.degree())
            .then_with(|| self.nu.degree().cmp(other.nu.degree()))
            .then_with(|| ids(&self.mu).cmp(&ids(&other.mu)))
            .then_with(|| ids(&self.nu).cmp(&ids(&other.nu)))
            .then_with(|| self.mu.range().cmp(other.mu.range()))
            .then_with(|| self.nu.range().cmp(other.nu.range()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.mu.is_vertex(), self.nu.is_vertex()) {
            (true, true) => write!(f, "p({})", self.mu.range()),
            (false, true) => write!(f, "s({})", self.mu),
            (true, false) => write!(f, "adj(s({}))", self.nu),
            (false, false) => write!(f, "s({})*adj(s({}))", self.mu, self.nu),
        }
    }
}

/// A finite `Q`-combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    graph: u64,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero<G: KGraph + ?Sized>(g: &G) -> Self {
        Element {
            graph: g.fingerprint(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial<G: KGraph + ?Sized>(g: &G, m: Monomial, coeff: Scalar) -> Self {
        let mut out = Element::zero(g);
        out.add_term(m, coeff);
        out
    }

    pub fn graph(&self) -> u64 {
        self.graph
    }

    pub(crate) fn check<G: KGraph + ?Sized>(&self, g: &G) -> Result<()> {
        if self.graph == g.fingerprint() {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    fn same_graph(&self, other: &Element) -> Result<()> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// True when no term is stored. Use [`super::is_zero`] for equality in the algebra.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_graph(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, t: &Scalar) -> Element {
        if t.is_zero() {
            return Element {
                graph: self.graph,
                terms: BTreeMap::new(),
            };
        }
        Element {
            graph: self.graph,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * t)).collect(),
        }
    }

    /// `a*`: swaps the legs of every monomial.
    pub fn involution(&self) -> Element {
        Element {
            graph: self.graph,
            terms: self.terms.iter().map(|(m, c)| (m.adjoint(), c.clone())).collect(),
        }
    }

    /// The terms of grade `n`.
    pub fn graded_component(&self, n: &DegreeDelta) -> Element {
        Element {
            graph: self.graph,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.grade() == *n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Grades that occur, in order.
    pub fn grades(&self) -> BTreeSet<DegreeDelta> {
        self.terms.keys().map(Monomial::grade).collect()
    }

    pub(crate) fn with_terms(&self, terms: BTreeMap<Monomial, Scalar>) -> Element {
        Element {
            graph: self.graph,
            terms,
        }
    }
}

/// Formats a rational as `p/q`, with `q = 1` spelled out.
pub fn format_scalar(c: &Scalar) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Accepts `p`, `p/q` and finite decimals such as `-1.25`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Scalar::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        let denom = num::pow(BigInt::from(10), frac.len());
        return Ok(Scalar::new(digits, denom));
    }
    Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    coeff: String,
    mu: &'a Path,
    nu: &'a Path,
    source: &'a VertexId,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermJson {
                coeff: format_scalar(c),
                mu: &m.mu,
                nu: &m.nu,
                source: m.source(),
            })?;
        }
        seq.end()
    }
}

fn check_path<G: KGraph + ?Sized>(g: &G, p: &Path) -> Result<()> {
    if !g.has_vertex(p.range()) {
        return Err(Error::UnknownVertex(p.range().to_string()));
    }
    for e in p.edges() {
        if g.edge(&e.id).as_ref() != Some(e) {
            return Err(Error::UnknownEdge(e.id.to_string()));
        }
    }
    Ok(())
}

/// `p_v`.
pub fn unit<G: KGraph + ?Sized>(g: &G, v: &VertexId) -> Result<Element> {
    let p = vertex_path(g, v)?;
    Ok(Element::monomial(g, Monomial { mu: p.clone(), nu: p }, Scalar::one()))
}

/// `s_lambda`.
pub fn gen<G: KGraph + ?Sized>(g: &G, lambda: &Path) -> Result<Element> {
    check_path(g, lambda)?;
    let s = Path::vertex(lambda.source().clone(), g.rank());
    Ok(Element::monomial(
        g,
        Monomial {
            mu: lambda.clone(),
            nu: s,
        },
        Scalar::one(),
    ))
}

/// `s_{lambda*}`.
pub fn gen_star<G: KGraph + ?Sized>(g: &G, lambda: &Path) -> Result<Element> {
    Ok(gen(g, lambda)?.involution())
}
