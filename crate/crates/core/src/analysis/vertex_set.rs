//! Vertex sets that may be infinite.
//!
//! * finite graphs: explicit sets;
//! * level presentations: explicit members below `tail_start`, then for every block
//!   vertex a membership mask of length `period` repeating along the levels;
//! * `Omega_k`: finitely many points plus a finite union of up-sets `{n : n >= m}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{KGraph, KGraphPresentation, LevelPresentation, OmegaGraph, VertexId};

#[derive(Clone, Debug)]
pub struct LevelSet {
    pub(crate) tail_start: usize,
    pub(crate) period: usize,
    pub(crate) explicit: BTreeSet<VertexId>,
    pub(crate) masks: BTreeMap<String, Vec<bool>>,
}

#[derive(Clone, Debug)]
pub struct LatticeSet {
    pub(crate) points: BTreeSet<Degree>,
    pub(crate) ups: BTreeSet<Degree>,
}

#[derive(Clone, Debug)]
pub enum VertexSet {
    Finite(BTreeSet<VertexId>),
    Level(LevelSet),
    Lattice(LatticeSet),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn level_vertices(g: &LevelPresentation, level: usize) -> Vec<VertexId> {
    if level < g.base() {
        g.core_levels()[level].clone()
    } else {
        g.block_vertices().iter().map(|b| g.block_vertex(b, level)).collect()
    }
}

impl LevelSet {
    pub(crate) fn empty(g: &LevelPresentation) -> Self {
        LevelSet {
            tail_start: g.base(),
            period: 1,
            explicit: BTreeSet::new(),
            masks: g.block_vertices().iter().map(|b| (b.clone(), vec![false])).collect(),
        }
    }

    pub(crate) fn all(g: &LevelPresentation) -> Self {
        LevelSet {
            tail_start: g.base(),
            period: 1,
            explicit: g.core_vertices().cloned().collect(),
            masks: g.block_vertices().iter().map(|b| (b.clone(), vec![true])).collect(),
        }
    }

    pub(crate) fn contains(&self, g: &LevelPresentation, v: &VertexId) -> bool {
        match g.split_block(v) {
            Some((name, level)) if level >= self.tail_start => self
                .masks
                .get(name)
                .is_some_and(|m| m[(level - self.tail_start) % self.period]),
            _ => self.explicit.contains(v),
        }
    }

    pub(crate) fn realign(&self, g: &LevelPresentation, start: usize, period: usize) -> LevelSet {
        let mut explicit = self.explicit.clone();
        for level in self.tail_start..start {
            for v in level_vertices(g, level) {
                if self.contains(g, &v) {
                    explicit.insert(v);
                }
            }
        }
        let masks = g
            .block_vertices()
            .iter()
            .map(|b| {
                let m = (0..period)
                    .map(|j| self.contains(g, &g.block_vertex(b, start + j)))
                    .collect();
                (b.clone(), m)
            })
            .collect();
        LevelSet {
            tail_start: start,
            period,
            explicit,
            masks,
        }
    }

    fn zip(&self, other: &LevelSet, g: &LevelPresentation, op: impl Fn(bool, bool) -> bool) -> LevelSet {
        let start = self.tail_start.max(other.tail_start);
        let period = lcm(self.period, other.period);
        let a = self.realign(g, start, period);
        let b = other.realign(g, start, period);
        let mut explicit = BTreeSet::new();
        for level in 0..start {
            for v in level_vertices(g, level) {
                if op(a.explicit.contains(&v), b.explicit.contains(&v)) {
                    explicit.insert(v);
                }
            }
        }
        let masks = a
            .masks
            .iter()
            .map(|(name, ma)| {
                let mb = &b.masks[name];
                (name.clone(), ma.iter().zip(mb).map(|(x, y)| op(*x, *y)).collect())
            })
            .collect();
        LevelSet {
            tail_start: start,
            period,
            explicit,
            masks,
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.explicit.is_empty() && self.masks.values().all(|m| m.iter().all(|b| !b))
    }

    /// Rebuilds the set by evaluating `member` on every explicit level and on one period
    /// of the tail. Only valid when membership is periodic from `tail_start` on.
    pub(crate) fn tabulate(
        g: &LevelPresentation,
        tail_start: usize,
        period: usize,
        mut member: impl FnMut(&VertexId) -> bool,
    ) -> LevelSet {
        let mut explicit = BTreeSet::new();
        for level in 0..tail_start {
            for v in level_vertices(g, level) {
                if member(&v) {
                    explicit.insert(v);
                }
            }
        }
        let masks = g
            .block_vertices()
            .iter()
            .map(|b| {
                let m = (0..period)
                    .map(|j| member(&g.block_vertex(b, tail_start + j)))
                    .collect();
                (b.clone(), m)
            })
            .collect();
        LevelSet {
            tail_start,
            period,
            explicit,
            masks,
        }
    }
}

impl LatticeSet {
    pub(crate) fn normalized(mut self) -> Self {
        let ups: Vec<Degree> = self.ups.iter().cloned().collect();
        self.ups = ups
            .iter()
            .filter(|m| !ups.iter().any(|n| n != *m && n.le(m)))
            .cloned()
            .collect();
        let ups = &self.ups;
        self.points.retain(|p| !ups.iter().any(|m| m.le(p)));
        self
    }

    pub(crate) fn contains_point(&self, p: &Degree) -> bool {
        self.points.contains(p) || self.ups.iter().any(|m| m.le(p))
    }

    pub fn up_sets(&self) -> impl Iterator<Item = &Degree> {
        self.ups.iter()
    }

    pub fn points(&self) -> impl Iterator<Item = &Degree> {
        self.points.iter()
    }
}

impl VertexSet {
    pub fn empty(g: &KGraphPresentation) -> Self {
        match g {
            KGraphPresentation::Skeleton(_) => VertexSet::Finite(BTreeSet::new()),
            KGraphPresentation::Level(l) => VertexSet::Level(LevelSet::empty(l)),
            KGraphPresentation::Omega(_) => VertexSet::Lattice(LatticeSet {
                points: BTreeSet::new(),
                ups: BTreeSet::new(),
            }),
        }
    }

    pub fn all(g: &KGraphPresentation) -> Self {
        match g {
            KGraphPresentation::Skeleton(s) => VertexSet::Finite(s.vertices().iter().cloned().collect()),
            KGraphPresentation::Level(l) => VertexSet::Level(LevelSet::all(l)),
            KGraphPresentation::Omega(o) => VertexSet::Lattice(LatticeSet {
                points: BTreeSet::new(),
                ups: [Degree::zero(o.rank())].into_iter().collect(),
            }),
        }
    }

    /// A finite set of vertices, in the representation native to `g`.
    pub fn from_vertices<'a>(g: &KGraphPresentation, vs: impl IntoIterator<Item = &'a VertexId>) -> Result<Self> {
        let vs: BTreeSet<VertexId> = vs.into_iter().cloned().collect();
        if let Some(v) = vs.iter().find(|v| !g.has_vertex(v)) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(match g {
            KGraphPresentation::Skeleton(_) => VertexSet::Finite(vs),
            KGraphPresentation::Level(l) => {
                let deepest = vs.iter().filter_map(|v| l.level_of(v)).max().unwrap_or(0);
                let start = (deepest + 1).max(l.base());
                let mut set = LevelSet::empty(l).realign(l, start, 1);
                set.explicit = vs;
                VertexSet::Level(set)
            }
            KGraphPresentation::Omega(o) => VertexSet::Lattice(LatticeSet {
                points: vs.iter().filter_map(|v| o.point(v)).collect(),
                ups: BTreeSet::new(),
            }),
        })
    }

    pub fn contains(&self, g: &KGraphPresentation, v: &VertexId) -> bool {
        match (self, g) {
            (VertexSet::Finite(s), _) => s.contains(v),
            (VertexSet::Level(s), KGraphPresentation::Level(l)) => s.contains(l, v),
            (VertexSet::Lattice(s), KGraphPresentation::Omega(o)) => o.point(v).is_some_and(|p| s.contains_point(&p)),
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            VertexSet::Finite(s) => s.is_empty(),
            VertexSet::Level(s) => s.is_empty(),
            VertexSet::Lattice(s) => s.points.is_empty() && s.ups.is_empty(),
        }
    }

    pub fn union(&self, other: &VertexSet, g: &KGraphPresentation) -> VertexSet {
        self.combine(other, g, |a, b| a || b)
    }

    pub fn intersection(&self, other: &VertexSet, g: &KGraphPresentation) -> VertexSet {
        self.combine(other, g, |a, b| a && b)
    }

    /// Members of `self` outside `other`.
    pub fn difference(&self, other: &VertexSet, g: &KGraphPresentation) -> VertexSet {
        self.combine(other, g, |a, b| a && !b)
    }

    fn combine(&self, other: &VertexSet, g: &KGraphPresentation, op: impl Fn(bool, bool) -> bool + Copy) -> VertexSet {
        match (self, other, g) {
            (VertexSet::Finite(a), VertexSet::Finite(b), _) => {
                let all: BTreeSet<&VertexId> = a.iter().chain(b).collect();
                VertexSet::Finite(
                    all.into_iter()
                        .filter(|v| op(a.contains(*v), b.contains(*v)))
                        .cloned()
                        .collect(),
                )
            }
            (VertexSet::Level(a), VertexSet::Level(b), KGraphPresentation::Level(l)) => {
                VertexSet::Level(a.zip(b, l, op))
            }
            (VertexSet::Lattice(a), VertexSet::Lattice(b), KGraphPresentation::Omega(o)) => {
                VertexSet::Lattice(lattice_combine(o, a, b, op))
            }
            _ => panic!("vertex sets from different presentations"),
        }
    }

    pub fn is_subset(&self, other: &VertexSet, g: &KGraphPresentation) -> bool {
        self.difference(other, g).is_empty()
    }

    pub fn set_eq(&self, other: &VertexSet, g: &KGraphPresentation) -> bool {
        self.is_subset(other, g) && other.is_subset(self, g)
    }

    pub fn is_all(&self, g: &KGraphPresentation) -> bool {
        VertexSet::all(g).is_subset(self, g)
    }

    /// Members on the finite window of `g` of the given depth, sorted.
    pub fn members_in_window(&self, g: &KGraphPresentation, depth: usize) -> Vec<VertexId> {
        let (vs, _) = g.window(depth);
        let mut out: Vec<VertexId> = vs.into_iter().filter(|v| self.contains(g, v)).collect();
        out.sort();
        out
    }

    /// Some vertex of `g` outside the set, if one exists.
    pub fn some_outside(&self, g: &KGraphPresentation) -> Option<VertexId> {
        match (self, g) {
            (VertexSet::Finite(s), KGraphPresentation::Skeleton(sk)) => {
                sk.vertices().iter().find(|v| !s.contains(*v)).cloned()
            }
            (VertexSet::Level(s), KGraphPresentation::Level(l)) => {
                let limit = s.tail_start + s.period;
                (0..limit)
                    .flat_map(|level| level_vertices(l, level))
                    .find(|v| !s.contains(l, v))
            }
            (VertexSet::Lattice(s), KGraphPresentation::Omega(o)) => {
                if s.ups.is_empty() {
                    // finitely many points: step past all of them along color 1
                    let far = s.points.iter().map(|p| p.get(1)).max().map_or(0, |m| m + 1);
                    let mut coords = vec![0; o.rank()];
                    coords[0] = far;
                    return Some(o.vertex(&Degree::new(coords)));
                }
                // a point with every coordinate below some generator is outside all up-sets
                let zero = Degree::zero(o.rank());
                if s.contains_point(&zero) {
                    // the up-set of 0 is everything
                    return None;
                }
                // otherwise 0 itself may be listed explicitly; search a small box
                let bound = s
                    .ups
                    .iter()
                    .chain(&s.points)
                    .flat_map(|d| d.coords().iter().copied())
                    .max()
                    .unwrap_or(0)
                    + 1;
                Degree::new(vec![bound; o.rank()])
                    .below()
                    .into_iter()
                    .find(|p| !s.contains_point(p))
                    .map(|p| o.vertex(&p))
            }
            _ => None,
        }
    }
}

fn lattice_combine(o: &OmegaGraph, a: &LatticeSet, b: &LatticeSet, op: impl Fn(bool, bool) -> bool) -> LatticeSet {
    let (union, inter) = (op(true, false) && op(false, true), !op(true, false) && !op(false, true));
    if union {
        return LatticeSet {
            points: a.points.union(&b.points).cloned().collect(),
            ups: a.ups.union(&b.ups).cloned().collect(),
        }
        .normalized();
    }
    if inter {
        let ups = a
            .ups
            .iter()
            .flat_map(|m| b.ups.iter().map(move |n| m.join(n)))
            .collect();
        let points = a
            .points
            .iter()
            .chain(&b.points)
            .filter(|p| a.contains_point(p) && b.contains_point(p))
            .cloned()
            .collect();
        return LatticeSet { points, ups }.normalized();
    }
    // difference: only finite results are representable; infinite differences of up-sets
    // are returned as their first witness box, which is all callers need (emptiness).
    let mut points = BTreeSet::new();
    let mut ups = BTreeSet::new();
    for p in &a.points {
        if !b.contains_point(p) {
            points.insert(p.clone());
        }
    }
    for m in &a.ups {
        let covered = b.ups.iter().any(|n| n.le(m));
        if !covered {
            // the up-set of m is not inside b's up-sets: some far point escapes
            let far = b.ups.iter().map(|n| n.join(m)).fold(m.clone(), |acc, d| acc.join(&d));
            let escape = (1..=o.rank())
                .map(|c| {
                    let mut coords = m.coords().to_vec();
                    coords[c - 1] = far.get(c) + 1;
                    for (i, x) in coords.iter_mut().enumerate() {
                        if i + 1 != c {
                            *x = m.get(i + 1);
                        }
                    }
                    Degree::new(coords)
                })
                .find(|p| !b.contains_point(p));
            if let Some(p) = escape {
                ups.insert(p);
            } else {
                ups.insert(m.clone());
            }
        }
    }
    LatticeSet { points, ups }.normalized()
}

#[derive(Serialize)]
struct PeriodicMask<'a> {
    tail_start: usize,
    period: usize,
    masks: BTreeMap<&'a str, String>,
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |it: Vec<String>| format!("{{{}}}", it.join(", "));
        match self {
            VertexSet::Finite(set) => write!(f, "{}", list(set.iter().map(|v| v.to_string()).collect())),
            VertexSet::Level(set) => {
                let mut parts = Vec::new();
                if !set.explicit.is_empty() {
                    parts.push(list(set.explicit.iter().map(|v| v.to_string()).collect()));
                }
                for (b, mask) in &set.masks {
                    let phases: Vec<String> = mask
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| **m)
                        .map(|(j, _)| j.to_string())
                        .collect();
                    if phases.is_empty() {
                        continue;
                    }
                    if set.period == 1 {
                        parts.push(format!("{{{b}@L : L >= {}}}", set.tail_start));
                    } else {
                        parts.push(format!(
                            "{{{b}@L : L >= {}, (L - {}) mod {} in {}}}",
                            set.tail_start,
                            set.tail_start,
                            set.period,
                            list(phases)
                        ));
                    }
                }
                if parts.is_empty() {
                    write!(f, "{{}}")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
            VertexSet::Lattice(set) => {
                let mut parts = Vec::new();
                if !set.points.is_empty() {
                    parts.push(list(set.points.iter().map(|d| d.to_string()).collect()));
                }
                parts.extend(set.ups.iter().map(|d| format!("{{n : n >= {d}}}")));
                if parts.is_empty() {
                    write!(f, "{{}}")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
        }
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        match self {
            VertexSet::Finite(set) => {
                map.serialize_entry("explicit", set)?;
                map.serialize_entry("periodic_mask", &None::<()>)?;
            }
            VertexSet::Level(set) => {
                map.serialize_entry("explicit", &set.explicit)?;
                let masks = set
                    .masks
                    .iter()
                    .map(|(k, m)| (k.as_str(), m.iter().map(|b| if *b { '1' } else { '0' }).collect()))
                    .collect();
                map.serialize_entry(
                    "periodic_mask",
                    &PeriodicMask {
                        tail_start: set.tail_start,
                        period: set.period,
                        masks,
                    },
                )?;
            }
            VertexSet::Lattice(set) => {
                let pts: Vec<&[u32]> = set.points.iter().map(|d| d.coords()).collect();
                let ups: Vec<&[u32]> = set.ups.iter().map(|d| d.coords()).collect();
                map.serialize_entry("explicit", &pts)?;
                map.serialize_entry("up_sets", &ups)?;
            }
        }
        map.end()
    }
}
