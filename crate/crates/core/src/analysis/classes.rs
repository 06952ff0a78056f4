//! The equivalence `v ~ w` of line points: their unique paths share a vertex.
//!
//! For a line point the hereditary closure of `{v}` is exactly the vertex set of its
//! unique path, so `v ~ w` iff those closures meet. The saturated closures of
//! equivalent line points coincide, which is how class membership is tested.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::closure::{hereditary_closure, saturated_hereditary_closure};
use super::line_point::{is_line_point, line_points};
use super::verdict::{AnalysisOptions, Verdict3};
use super::vertex_set::VertexSet;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{KGraph, KGraphPresentation, VertexId};

/// `x(m) = y(n) = vertex` for the unique paths `x` at `v` and `y` at `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meeting {
    pub m: Degree,
    pub n: Degree,
    pub vertex: VertexId,
}

/// First degree (in order of total size) at which the unique path from `v` satisfies
/// `target`, searching at most `bound` layers.
fn locate(
    g: &KGraphPresentation,
    v: &VertexId,
    bound: usize,
    target: impl Fn(&VertexId) -> bool,
) -> Option<(Degree, VertexId)> {
    let k = g.rank();
    let mut layer: BTreeSet<Degree> = [Degree::zero(k)].into();
    let mut at: HashMap<Degree, VertexId> = [(Degree::zero(k), v.clone())].into();
    for depth in 0..=bound {
        for n in &layer {
            if target(&at[n]) {
                return Some((n.clone(), at[n].clone()));
            }
        }
        if depth == bound {
            break;
        }
        let mut next = BTreeSet::new();
        for n in &layer {
            for c in 1..=k {
                let m = n.add(&Degree::unit(k, c));
                if !at.contains_key(&m) {
                    let u = g.edges_into(&at[n], c).remove(0).source;
                    at.insert(m.clone(), u);
                }
                next.insert(m);
            }
        }
        layer = next;
    }
    None
}

fn require_line_point(g: &KGraphPresentation, v: &VertexId, opts: AnalysisOptions) -> Result<()> {
    match is_line_point(g, v, opts)?.verdict {
        Verdict3::Yes(_) => Ok(()),
        Verdict3::No(_) => Err(Error::NotLinePoint(v.to_string())),
        Verdict3::Unknown { bound } => Err(Error::Undecided(format!("{v} is undecided at depth {bound}"))),
    }
}

pub fn line_point_equivalent(
    g: &KGraphPresentation,
    v: &VertexId,
    w: &VertexId,
    opts: AnalysisOptions,
) -> Result<Verdict3<Meeting, String>> {
    require_line_point(g, v, opts)?;
    require_line_point(g, w, opts)?;
    if let KGraphPresentation::Omega(o) = g {
        let (a, b) = (o.point(v).expect("vertex"), o.point(w).expect("vertex"));
        let j = a.join(&b);
        return Ok(Verdict3::Yes(Meeting {
            m: j.checked_sub(&a).expect("join dominates"),
            n: j.checked_sub(&b).expect("join dominates"),
            vertex: o.vertex(&j),
        }));
    }
    let hv = hereditary_closure(g, &VertexSet::from_vertices(g, [v])?)?;
    let hw = hereditary_closure(g, &VertexSet::from_vertices(g, [w])?)?;
    let common = hv.intersection(&hw, g);
    if common.is_empty() {
        return Ok(Verdict3::No(format!("the unique paths at {v} and {w} share no vertex")));
    }
    // on a 1-graph the walk along x is guaranteed to reach the common part
    let bound = if g.rank() == 1 {
        usize::MAX - 1
    } else {
        opts.depth_bound
    };
    let Some((m, vertex)) = locate(g, v, bound, |u| common.contains(g, u)) else {
        return Ok(Verdict3::Unknown { bound });
    };
    let Some((n, _)) = locate(g, w, bound, |u| *u == vertex) else {
        return Ok(Verdict3::Unknown { bound });
    };
    Ok(Verdict3::Yes(Meeting { m, n, vertex }))
}

#[derive(Clone, Debug, Serialize)]
pub struct LinePointClass {
    pub representative: VertexId,
    /// Saturated hereditary closure of the representative; the class is its line points.
    pub closure: VertexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinePointClasses {
    pub classes: Vec<LinePointClass>,
    /// False when some class might have been missed: undecided line points, or a level
    /// presentation of rank above one where representatives are only sampled.
    pub complete: bool,
}

/// Classes of `~`, one representative each.
///
/// On level presentations the representatives are drawn from the first
/// `base + 2 * (block size + 1)` levels. For rank one every class meets that window:
/// a line point's path enters a cycle of block types, and translating that cycle back
/// by whole periods lands on the first levels of the block.
pub fn line_point_classes(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<LinePointClasses> {
    let lp = line_points(g, opts)?;
    let mut complete = lp.is_exact();
    let candidates: Vec<VertexId> = match g {
        KGraphPresentation::Omega(o) => vec![o.vertex(&Degree::zero(o.rank()))],
        KGraphPresentation::Skeleton(s) => s.vertices().iter().filter(|v| lp.set.contains(g, v)).cloned().collect(),
        KGraphPresentation::Level(l) => {
            complete &= l.rank() == 1;
            let horizon = l.base() + 2 * (l.block_vertices().len() + 1);
            let mut vs = l.vertices_up_to(horizon);
            vs.retain(|v| lp.set.contains(g, v));
            vs
        }
    };
    let mut classes: Vec<LinePointClass> = Vec::new();
    for v in candidates {
        if classes.iter().any(|c| c.closure.contains(g, &v)) {
            continue;
        }
        let closure = saturated_hereditary_closure(g, &VertexSet::from_vertices(g, [&v])?)?;
        classes.push(LinePointClass {
            representative: v,
            closure,
        });
    }
    Ok(LinePointClasses { classes, complete })
}
