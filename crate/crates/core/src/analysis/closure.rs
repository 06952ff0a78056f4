//! Hereditary and saturated hereditary closures.
//!
//! The saturated closure is built in strata: `Sigma^0` is the hereditary closure and
//! `Sigma^N` adds every vertex all of whose edges of some single color have their
//! source in `Sigma^(N-1)`. The strata also drive [`connect_witness`].

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::vertex_set::{LatticeSet, LevelSet, VertexSet};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{Edge, KGraph, KGraphPresentation, LevelPresentation, VertexId};
use crate::path::{path_from_edges, Path};

fn check_members(g: &KGraphPresentation, w: &VertexSet) -> Result<()> {
    if let VertexSet::Finite(s) = w {
        if let Some(v) = s.iter().find(|v| !g.has_vertex(v)) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
    }
    Ok(())
}

fn out_edges<G: KGraph + ?Sized>(g: &G, v: &VertexId) -> Vec<Edge> {
    (1..=g.rank()).flat_map(|c| g.edges_into(v, c)).collect()
}

/// Smallest hereditary set containing `w`.
pub fn hereditary_closure(g: &KGraphPresentation, w: &VertexSet) -> Result<VertexSet> {
    check_members(g, w)?;
    Ok(match (g, w) {
        (KGraphPresentation::Skeleton(s), VertexSet::Finite(start)) => {
            let mut seen: BTreeSet<VertexId> = start.clone();
            let mut queue: VecDeque<VertexId> = start.iter().cloned().collect();
            while let Some(v) = queue.pop_front() {
                for e in out_edges(s, &v) {
                    if seen.insert(e.source.clone()) {
                        queue.push_back(e.source);
                    }
                }
            }
            VertexSet::Finite(seen)
        }
        (KGraphPresentation::Level(l), VertexSet::Level(set)) => VertexSet::Level(level_hereditary(l, set)),
        (KGraphPresentation::Omega(_), VertexSet::Lattice(set)) => VertexSet::Lattice(
            LatticeSet {
                points: BTreeSet::new(),
                ups: set.ups.iter().chain(&set.points).cloned().collect(),
            }
            .normalized(),
        ),
        _ => return Err(Error::Invalid("vertex set does not belong to this graph".into())),
    })
}

/// Block vertices reached inside one level from `names` along edges that stay on the level.
fn intra_level(l: &LevelPresentation, names: BTreeSet<String>) -> BTreeSet<String> {
    let mut seen = names.clone();
    let mut queue: VecDeque<String> = names.into_iter().collect();
    while let Some(n) = queue.pop_front() {
        for c in 1..=l.rank() {
            for t in l.template_edges_into(&n, c) {
                if t.drop == 0 && seen.insert(t.source.clone()) {
                    queue.push_back(t.source.clone());
                }
            }
        }
    }
    seen
}

fn drops(l: &LevelPresentation, names: &BTreeSet<String>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for n in names {
        for c in 1..=l.rank() {
            out.extend(
                l.template_edges_into(n, c)
                    .iter()
                    .filter(|t| t.drop == 1)
                    .map(|t| t.source.clone()),
            );
        }
    }
    out
}

/// Sweeps the levels downward. Past the tail of `w` the per-level state together with
/// the phase of `w`'s mask determines everything below, so the first repeated state
/// closes the period.
fn level_hereditary(l: &LevelPresentation, w: &LevelSet) -> LevelSet {
    let base = l.base();
    let mut core: BTreeSet<VertexId> = l.core_vertices().filter(|v| w.contains(l, v)).cloned().collect();
    let mut queue: VecDeque<VertexId> = core.iter().cloned().collect();
    let mut entry = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for e in out_edges(l, &v) {
            match l.split_block(&e.source) {
                Some((name, _)) => {
                    entry.insert(name.to_string());
                }
                None => {
                    if core.insert(e.source.clone()) {
                        queue.push_back(e.source);
                    }
                }
            }
        }
    }
    let members_at = |level: usize| -> BTreeSet<String> {
        l.block_vertices()
            .iter()
            .filter(|b| w.contains(l, &l.block_vertex(b, level)))
            .cloned()
            .collect()
    };
    let phase_from = base.max(w.tail_start);
    let mut rows: Vec<BTreeSet<String>> = Vec::new();
    let mut seen: HashMap<(BTreeSet<String>, usize), usize> = HashMap::new();
    let mut carry = entry;
    let mut level = base;
    let (start, period) = loop {
        let mut here = members_at(level);
        here.extend(carry);
        let row = intra_level(l, here);
        carry = drops(l, &row);
        if level >= phase_from {
            let key = (row.clone(), (level - w.tail_start) % w.period);
            if let Some(&first) = seen.get(&key) {
                break (first, level - first);
            }
            seen.insert(key, level);
        }
        rows.push(row);
        level += 1;
    };
    let mut explicit = core;
    for lv in base..start {
        explicit.extend(rows[lv - base].iter().map(|b| l.block_vertex(b, lv)));
    }
    let masks = l
        .block_vertices()
        .iter()
        .map(|b| {
            let m = (0..period).map(|j| rows[start + j - base].contains(b)).collect();
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

fn sigma_member<G: KGraph + ?Sized>(g: &G, v: &VertexId, inside: impl Fn(&VertexId) -> bool) -> bool {
    (1..=g.rank()).any(|c| {
        let es = g.edges_into(v, c);
        !es.is_empty() && es.iter().all(|e| inside(&e.source))
    })
}

/// `x` together with every vertex whose edges of one color all have sources in `x`.
fn sigma_step(g: &KGraphPresentation, x: &VertexSet) -> VertexSet {
    match (g, x) {
        (KGraphPresentation::Skeleton(s), VertexSet::Finite(set)) => {
            let mut out = set.clone();
            for v in s.vertices() {
                if sigma_member(s, v, |u| set.contains(u)) {
                    out.insert(v.clone());
                }
            }
            VertexSet::Finite(out)
        }
        (KGraphPresentation::Level(l), VertexSet::Level(set)) => {
            // sources of edges into level `j` live on `j` or `j + 1`, so the result is
            // periodic with the same tail as `set`
            VertexSet::Level(LevelSet::tabulate(l, set.tail_start, set.period, |v| {
                set.contains(l, v) || sigma_member(l, v, |u| set.contains(l, u))
            }))
        }
        (KGraphPresentation::Omega(o), VertexSet::Lattice(set)) => {
            // each vertex receives one edge per color, from n + e_c
            let mut ups = set.ups.clone();
            for m in &set.ups {
                for c in 1..=o.rank() {
                    if m.get(c) > 0 {
                        let mut coords = m.coords().to_vec();
                        coords[c - 1] -= 1;
                        ups.insert(Degree::new(coords));
                    }
                }
            }
            let mut points = set.points.clone();
            for p in &set.points {
                for c in 1..=o.rank() {
                    if p.get(c) > 0 {
                        let mut coords = p.coords().to_vec();
                        coords[c - 1] -= 1;
                        let q = Degree::new(coords);
                        if (1..=o.rank()).any(|d| set.contains_point(&q.add(&Degree::unit(o.rank(), d)))) {
                            points.insert(q);
                        }
                    }
                }
            }
            VertexSet::Lattice(LatticeSet { points, ups }.normalized())
        }
        _ => x.clone(),
    }
}

/// The strata `Sigma^0(w) ⊆ Sigma^1(w) ⊆ ...` up to the first repetition.
pub fn closure_strata(g: &KGraphPresentation, w: &VertexSet) -> Result<Vec<VertexSet>> {
    let mut strata = vec![hereditary_closure(g, w)?];
    loop {
        let last = strata.last().expect("nonempty");
        let next = sigma_step(g, last);
        if next.set_eq(last, g) {
            return Ok(strata);
        }
        strata.push(next);
    }
}

/// Smallest saturated hereditary set containing `w`.
pub fn saturated_hereditary_closure(g: &KGraphPresentation, w: &VertexSet) -> Result<VertexSet> {
    Ok(closure_strata(g, w)?.pop().expect("nonempty"))
}

pub fn is_hereditary(g: &KGraphPresentation, h: &VertexSet) -> Result<bool> {
    Ok(hereditary_closure(g, h)?.set_eq(h, g))
}

pub fn is_saturated_hereditary(g: &KGraphPresentation, h: &VertexSet) -> Result<bool> {
    Ok(saturated_hereditary_closure(g, h)?.set_eq(h, g))
}

/// A path from `v` into `Sigma^0(w)`, descending the strata one edge at a time.
///
/// At each step the lowest color whose edges all land one stratum lower is used, and
/// among its edges the smallest id.
pub fn connect_witness(g: &KGraphPresentation, v: &VertexId, w: &VertexSet) -> Result<Path> {
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let strata = closure_strata(g, w)?;
    let level_of = |u: &VertexId| strata.iter().position(|s| s.contains(g, u));
    let mut n = level_of(v).ok_or_else(|| Error::OutsideClosure(v.to_string()))?;
    let mut at = v.clone();
    let mut edges = Vec::new();
    while n > 0 {
        let below = &strata[n - 1];
        let step = (1..=g.rank())
            .map(|c| g.edges_into(&at, c))
            .find(|es| !es.is_empty() && es.iter().all(|e| below.contains(g, &e.source)))
            .and_then(|es| es.into_iter().next())
            .expect("every vertex of a stratum descends by one color");
        at = step.source.clone();
        edges.push(step);
        n = level_of(&at).expect("sources stay inside the closure");
    }
    path_from_edges(g, v.clone(), edges)
}
