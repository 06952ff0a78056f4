//! Unique infinite paths and line points.
//!
//! A vertex `v` is a line point when `v Lambda^infinity` is a single path and that path
//! is aperiodic. The unique path exists exactly when every vertex reachable from `v`
//! receives one edge of each color; on such a path a revisited vertex is the same thing
//! as periodicity.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::closure::{hereditary_closure, is_hereditary};
use super::verdict::{AnalysisOptions, Verdict3};
use super::vertex_set::{LevelSet, VertexSet};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{Edge, KGraph, KGraphPresentation, LevelPresentation, VertexId};
use crate::path::{path_from_edges, Path};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PathKind {
    /// `prefix` followed by `cycle` repeated forever, with `r(cycle) = s(cycle) = s(prefix)`.
    EventuallyPeriodic { prefix: Path, cycle: Path },
    /// `x(p) = x(q)` for incomparable degrees `p` and `q`.
    Revisiting { p: Degree, q: Degree },
    /// No vertex is visited twice because `rank` strictly increases along `successor`.
    RankCertified { successor: String, rank: String },
}

/// The unique infinite path `x` with `r(x) = base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitePathDescriptor {
    pub base: VertexId,
    #[serde(flatten)]
    pub kind: PathKind,
}

impl InfinitePathDescriptor {
    pub fn is_periodic(&self) -> bool {
        !matches!(self.kind, PathKind::RankCertified { .. })
    }

    /// `x(n)`.
    pub fn vertex_at<G: KGraph + ?Sized>(&self, g: &G, n: &Degree) -> Result<VertexId> {
        Ok(follow(g, &self.base, n)?
            .last()
            .map_or_else(|| self.base.clone(), |e| e.source.clone()))
    }

    /// The segment `x(m, n)` for `m <= n`.
    pub fn segment<G: KGraph + ?Sized>(&self, g: &G, m: &Degree, n: &Degree) -> Result<Path> {
        let len = n.checked_sub(m).ok_or_else(|| Error::DegreeNotBelow {
            requested: m.to_string(),
            available: n.to_string(),
        })?;
        let start = self.vertex_at(g, m)?;
        let edges = follow(g, &start, &len)?;
        path_from_edges(g, start, edges)
    }

    /// `sigma^p(x)`, the unique path at `x(p)`.
    pub fn shift(&self, g: &KGraphPresentation, p: &Degree, opts: AnalysisOptions) -> Result<InfinitePathDescriptor> {
        let v = self.vertex_at(g, p)?;
        if let PathKind::RankCertified { .. } = self.kind {
            return Ok(InfinitePathDescriptor {
                base: v,
                kind: self.kind.clone(),
            });
        }
        match unique_path(g, &v, opts)? {
            UniquePath::Unique(d) => Ok(d),
            _ => Err(Error::Invalid(format!("{v} has no unique path"))),
        }
    }
}

/// Walks the unique path of degree `n` from `v`, one color at a time.
fn follow<G: KGraph + ?Sized>(g: &G, v: &VertexId, n: &Degree) -> Result<Vec<Edge>> {
    let mut at = v.clone();
    let mut out = Vec::new();
    for c in n.color_word() {
        let mut es = g.edges_into(&at, c);
        if es.len() != 1 {
            return Err(Error::Invalid(format!("{at} receives {} edges of color {c}", es.len())));
        }
        let e = es.remove(0);
        at = e.source.clone();
        out.push(e);
    }
    Ok(out)
}

fn step<G: KGraph + ?Sized>(g: &G, v: &VertexId, color: usize) -> VertexId {
    g.edges_into(v, color).remove(0).source
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NoReason {
    /// Two distinct paths of degree `m` leave the vertex.
    Branch { m: Degree, first: Path, second: Path },
    /// The unique path satisfies `x(p) = x(q)`.
    Periodic { p: Degree, q: Degree, vertex: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinePointCertificate {
    pub vertex: VertexId,
    #[serde(flatten)]
    pub verdict: Verdict3<InfinitePathDescriptor, NoReason>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniquePath {
    Branch { m: Degree, first: Path, second: Path },
    Unique(InfinitePathDescriptor),
    Unknown { bound: usize },
}

/// Vertices that might branch, one per translation class for level presentations.
fn candidates(g: &KGraphPresentation, reach: &VertexSet) -> Vec<VertexId> {
    match (g, reach) {
        (_, VertexSet::Finite(s)) => s.iter().cloned().collect(),
        (KGraphPresentation::Level(l), VertexSet::Level(s)) => {
            let mut out: Vec<VertexId> = s.explicit.iter().cloned().collect();
            for (name, mask) in &s.masks {
                for (j, bit) in mask.iter().enumerate() {
                    if *bit {
                        out.push(l.block_vertex(name, s.tail_start + j));
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

fn branching_color<G: KGraph + ?Sized>(g: &G, v: &VertexId) -> Option<(usize, Vec<Edge>)> {
    (1..=g.rank())
        .map(|c| (c, g.edges_into(v, c)))
        .find(|(_, es)| es.len() > 1)
}

/// The nearest vertex reachable from `v` with two edges of one color, as a pair of
/// distinct paths of equal degree.
fn find_branch(g: &KGraphPresentation, v: &VertexId) -> Result<Option<(Degree, Path, Path)>> {
    if matches!(g, KGraphPresentation::Omega(_)) {
        return Ok(None);
    }
    let reach = hereditary_closure(g, &VertexSet::from_vertices(g, [v])?)?;
    if !candidates(g, &reach).iter().any(|u| branching_color(g, u).is_some()) {
        return Ok(None);
    }
    // a branching vertex is reachable, so the search below terminates
    let mut parent: HashMap<VertexId, Option<Edge>> = HashMap::new();
    parent.insert(v.clone(), None);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(u) = queue.pop_front() {
        if let Some((c, es)) = branching_color(g, &u) {
            let mut edges = Vec::new();
            let mut at = u.clone();
            while let Some(Some(e)) = parent.get(&at) {
                at = e.range.clone();
                edges.push(e.clone());
            }
            edges.reverse();
            let m = Degree::of_colors(g.rank(), &edges.iter().map(|e| e.color).collect::<Vec<_>>())
                .add(&Degree::unit(g.rank(), c));
            let extend = |e: &Edge| {
                let mut word = edges.clone();
                word.push(e.clone());
                path_from_edges(g, v.clone(), word)
            };
            return Ok(Some((m, extend(&es[0])?, extend(&es[1])?)));
        }
        for c in 1..=g.rank() {
            for e in g.edges_into(&u, c) {
                if !parent.contains_key(&e.source) {
                    parent.insert(e.source.clone(), Some(e.clone()));
                    queue.push_back(e.source);
                }
            }
        }
    }
    Err(Error::Invalid(format!("no branching vertex reachable from {v}")))
}

fn eventually_periodic<G: KGraph + ?Sized>(
    g: &G,
    v: &VertexId,
    p: &Degree,
    q: &Degree,
) -> Result<InfinitePathDescriptor> {
    let prefix = path_from_edges(g, v.clone(), follow(g, v, p)?)?;
    let at = prefix.source().clone();
    let len = q.checked_sub(p).expect("p <= q");
    let cycle = path_from_edges(g, at.clone(), follow(g, &at, &len)?)?;
    Ok(InfinitePathDescriptor {
        base: v.clone(),
        kind: PathKind::EventuallyPeriodic { prefix, cycle },
    })
}

/// Walks color 1 until a vertex repeats; always succeeds on finite graphs.
fn color_one_revisit<G: KGraph + ?Sized>(g: &G, v: &VertexId, limit: usize) -> Option<(usize, usize)> {
    let mut seen = HashMap::new();
    let mut at = v.clone();
    for j in 0..=limit {
        if let Some(&i) = seen.get(&at) {
            return Some((i, j));
        }
        seen.insert(at.clone(), j);
        at = step(g, &at, 1);
    }
    None
}

/// One-dimensional level presentations: the walk either revisits a vertex or repeats a
/// block type one or more levels deeper, after which it is a translate of itself.
fn level_walk(l: &LevelPresentation, v: &VertexId) -> Result<InfinitePathDescriptor> {
    let mut seen: HashMap<VertexId, usize> = HashMap::new();
    let mut types: HashMap<String, (usize, usize)> = HashMap::new();
    let mut trail: Vec<VertexId> = Vec::new();
    let mut at = v.clone();
    for j in 0.. {
        if let Some(&i) = seen.get(&at) {
            let (p, q) = (Degree::new(vec![i as u32]), Degree::new(vec![j as u32]));
            return eventually_periodic(l, v, &p, &q);
        }
        if let Some((name, level)) = l.split_block(&at) {
            if let Some(&(i, earlier)) = types.get(name) {
                let cycle: Vec<&str> = trail[i..]
                    .iter()
                    .map(|u| l.split_block(u).map_or(u.as_str(), |(n, _)| n))
                    .collect();
                return Ok(InfinitePathDescriptor {
                    base: v.clone(),
                    kind: PathKind::RankCertified {
                        successor: format!("block types {} -> {name}", cycle.join(" -> ")),
                        rank: format!("level, +{} per cycle", level - earlier),
                    },
                });
            }
            types.insert(name.to_string(), (j, level));
        }
        seen.insert(at.clone(), j);
        trail.push(at.clone());
        at = step(l, &at, 1);
    }
    unreachable!()
}

/// Searches degrees of total size at most `bound` for `x(p) = x(q)`.
fn degree_revisit<G: KGraph + ?Sized>(g: &G, v: &VertexId, bound: usize) -> Option<(Degree, Degree)> {
    let k = g.rank();
    let mut at: HashMap<Degree, VertexId> = HashMap::new();
    let mut first: HashMap<VertexId, Degree> = HashMap::new();
    at.insert(Degree::zero(k), v.clone());
    first.insert(v.clone(), Degree::zero(k));
    let mut layer = vec![Degree::zero(k)];
    for _ in 0..bound {
        let mut next = BTreeSet::new();
        for n in &layer {
            for c in 1..=k {
                next.insert(n.add(&Degree::unit(k, c)));
            }
        }
        for n in &next {
            let c = (1..=k).find(|&c| n.get(c) > 0).expect("nonzero degree");
            let mut prev = n.coords().to_vec();
            prev[c - 1] -= 1;
            let u = step(g, &at[&Degree::new(prev)], c);
            if let Some(p) = first.get(&u) {
                return Some((p.clone(), n.clone()));
            }
            first.insert(u.clone(), n.clone());
            at.insert(n.clone(), u);
        }
        layer = next.into_iter().collect();
    }
    None
}

/// Decides whether `v` has a unique infinite path and, if so, describes it.
pub fn unique_path(g: &KGraphPresentation, v: &VertexId, opts: AnalysisOptions) -> Result<UniquePath> {
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    if let Some((m, first, second)) = find_branch(g, v)? {
        return Ok(UniquePath::Branch { m, first, second });
    }
    let k = g.rank();
    let descriptor = match g {
        KGraphPresentation::Omega(_) => InfinitePathDescriptor {
            base: v.clone(),
            kind: PathKind::RankCertified {
                successor: "n -> n + e_i".into(),
                rank: "coordinate sum".into(),
            },
        },
        KGraphPresentation::Skeleton(s) => {
            let (i, j) = color_one_revisit(s, v, s.vertices().len()).expect("finite graph");
            eventually_periodic(
                s,
                v,
                &Degree::unit(k, 1).scaled(i as u32),
                &Degree::unit(k, 1).scaled(j as u32),
            )?
        }
        KGraphPresentation::Level(l) if k == 1 => level_walk(l, v)?,
        KGraphPresentation::Level(l) => match degree_revisit(l, v, opts.depth_bound) {
            Some((p, q)) if p.le(&q) => eventually_periodic(l, v, &p, &q)?,
            Some((p, q)) => InfinitePathDescriptor {
                base: v.clone(),
                kind: PathKind::Revisiting { p, q },
            },
            None => {
                return Ok(UniquePath::Unknown {
                    bound: opts.depth_bound,
                })
            }
        },
    };
    Ok(UniquePath::Unique(descriptor))
}

pub fn is_line_point(g: &KGraphPresentation, v: &VertexId, opts: AnalysisOptions) -> Result<LinePointCertificate> {
    let verdict = match unique_path(g, v, opts)? {
        UniquePath::Branch { m, first, second } => Verdict3::No(NoReason::Branch { m, first, second }),
        UniquePath::Unknown { bound } => Verdict3::Unknown { bound },
        UniquePath::Unique(d) => match &d.kind {
            PathKind::RankCertified { .. } => Verdict3::Yes(d),
            PathKind::EventuallyPeriodic { prefix, cycle } => Verdict3::No(NoReason::Periodic {
                p: prefix.degree().clone(),
                q: prefix.degree().add(cycle.degree()),
                vertex: prefix.source().clone(),
            }),
            PathKind::Revisiting { p, q } => Verdict3::No(NoReason::Periodic {
                vertex: d.vertex_at(g, p)?,
                p: p.clone(),
                q: q.clone(),
            }),
        },
    };
    Ok(LinePointCertificate {
        vertex: v.clone(),
        verdict,
    })
}

/// The line points of a graph with the certificates that decided them.
///
/// For level presentations one block representative per block vertex is certified:
/// the block is translation invariant, so the verdict holds on every level.
#[derive(Clone, Debug, Serialize)]
pub struct LinePoints {
    pub set: VertexSet,
    pub certificates: Vec<LinePointCertificate>,
    pub unknown: Vec<VertexId>,
    /// The set was checked to be hereditary (only meaningful when nothing is unknown).
    pub hereditary: bool,
}

impl LinePoints {
    pub fn is_exact(&self) -> bool {
        self.unknown.is_empty()
    }
}

pub fn line_points(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<LinePoints> {
    let (set, certificates) = match g {
        KGraphPresentation::Omega(o) => {
            let zero = o.vertex(&Degree::zero(o.rank()));
            (VertexSet::all(g), vec![is_line_point(g, &zero, opts)?])
        }
        KGraphPresentation::Skeleton(s) => {
            let certs = s
                .vertices()
                .iter()
                .map(|v| is_line_point(g, v, opts))
                .collect::<Result<Vec<_>>>()?;
            let yes: Vec<&VertexId> = certs.iter().filter(|c| c.verdict.is_yes()).map(|c| &c.vertex).collect();
            (VertexSet::from_vertices(g, yes)?, certs)
        }
        KGraphPresentation::Level(l) => {
            let mut reps: Vec<VertexId> = l.core_vertices().cloned().collect();
            reps.extend(l.block_vertices().iter().map(|b| l.block_vertex(b, l.base())));
            let certs = reps
                .iter()
                .map(|v| is_line_point(g, v, opts))
                .collect::<Result<Vec<_>>>()?;
            let yes: BTreeSet<&str> = certs
                .iter()
                .filter(|c| c.verdict.is_yes())
                .map(|c| l.split_block(&c.vertex).map_or(c.vertex.as_str(), |(n, _)| n))
                .collect();
            let set = LevelSet::tabulate(l, l.base(), 1, |v| {
                yes.contains(l.split_block(v).map_or(v.as_str(), |(n, _)| n))
            });
            (VertexSet::Level(set), certs)
        }
    };
    let unknown: Vec<VertexId> = certificates
        .iter()
        .filter(|c| c.verdict.is_unknown())
        .map(|c| c.vertex.clone())
        .collect();
    let hereditary = unknown.is_empty() && is_hereditary(g, &set)?;
    Ok(LinePoints {
        set,
        certificates,
        unknown,
        hereditary,
    })
}
