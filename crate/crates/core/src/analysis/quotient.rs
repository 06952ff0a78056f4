//! The quotient graph `Lambda \ H`: vertices outside `H` and the edges whose source is
//! outside `H`.

use std::collections::BTreeSet;

use super::closure::is_saturated_hereditary;
use super::vertex_set::{level_vertices, LevelSet, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{
    BlockEdge, BlockSquare, Edge, EdgeId, FiniteSkeleton, KGraph, KGraphPresentation, LevelPresentation, Square,
    VertexId,
};

/// `Lambda \ H` for a saturated hereditary `H`.
///
/// For a level presentation the levels before the tail of `H` become core levels. When
/// `H` repeats with period `p > 1` the block is regrouped into chunks of `p` levels and
/// the block vertex `b` at phase `j` of a chunk is renamed `b%j`; chunk `L` holds the
/// old levels `s + (L - s) p + j`, where `s` is where the tail of `H` starts.
pub fn quotient_graph(g: &KGraphPresentation, h: &VertexSet) -> Result<KGraphPresentation> {
    if !is_saturated_hereditary(g, h)? {
        return Err(Error::NotSaturatedHereditary(
            "quotient needs a saturated hereditary set",
        ));
    }
    Ok(match (g, h) {
        (KGraphPresentation::Skeleton(s), _) => {
            let keep = |v: &VertexId| !h.contains(g, v);
            let vertices: Vec<VertexId> = s.vertices().iter().filter(|v| keep(v)).cloned().collect();
            let edges: Vec<Edge> = s.edges().iter().filter(|e| keep(&e.source)).cloned().collect();
            let kept: BTreeSet<&EdgeId> = edges.iter().map(|e| &e.id).collect();
            let squares = s
                .squares()
                .iter()
                .filter(|sq| sq.left.iter().chain(&sq.right).all(|id| kept.contains(id)))
                .cloned()
                .collect();
            KGraphPresentation::Skeleton(FiniteSkeleton::new(s.rank(), vertices, edges, squares))
        }
        (KGraphPresentation::Omega(o), _) => {
            if h.is_empty() {
                g.clone()
            } else {
                // the only nonempty saturated hereditary set of Omega_k is everything
                KGraphPresentation::Skeleton(FiniteSkeleton::new(o.rank(), vec![], vec![], vec![]))
            }
        }
        (KGraphPresentation::Level(l), VertexSet::Level(set)) => KGraphPresentation::Level(level_quotient(l, set)),
        _ => return Err(Error::Invalid("vertex set does not belong to this graph".into())),
    })
}

fn level_quotient(l: &LevelPresentation, h: &LevelSet) -> LevelPresentation {
    let (s, p) = (h.tail_start, h.period);
    let keep = |v: &VertexId| !h.contains(l, v);
    let phased = |name: &str, j: usize| {
        if p == 1 {
            name.to_string()
        } else {
            format!("{name}%{j}")
        }
    };
    let vid = |v: &VertexId| match l.split_block(v) {
        Some((b, lv)) if lv >= s => VertexId::new(format!("{}@{}", phased(b, (lv - s) % p), s + (lv - s) / p)),
        _ => v.clone(),
    };
    let eid = |e: &Edge| match l.split_block(&e.range) {
        Some((_, lv)) if lv >= s => {
            let (t, _) = e.id.as_str().rsplit_once('@').expect("block edge id");
            EdgeId::new(format!("{}@{}", phased(t, (lv - s) % p), s + (lv - s) / p))
        }
        _ => e.id.clone(),
    };
    let rename = |e: &Edge| Edge {
        id: eid(e),
        color: e.color,
        range: vid(&e.range),
        source: vid(&e.source),
    };
    let instance = |t: &str, level: usize| l.edge(&EdgeId::new(format!("{t}@{level}"))).expect("template instance");
    let drop_of = |t: &str| {
        l.block_edges()
            .iter()
            .find(|b| b.id == t)
            .map_or(0, |b| b.drop as usize)
    };
    let masked = |name: &str, j: usize| h.masks.get(name).is_some_and(|m| m[j]);

    let core_levels: Vec<Vec<VertexId>> = (0..s)
        .map(|lv| level_vertices(l, lv).into_iter().filter(keep).collect())
        .collect();
    let block_vertices: Vec<String> = (0..p)
        .flat_map(|j| {
            l.block_vertices()
                .iter()
                .filter(move |b| !masked(b, j))
                .map(move |b| phased(b, j))
        })
        .collect();

    let mut core_edges: Vec<Edge> = l.core_edges().iter().filter(|e| keep(&e.source)).cloned().collect();
    for level in l.base()..s {
        for t in l.block_edges() {
            let e = instance(&t.id, level);
            if keep(&e.source) {
                core_edges.push(e);
            }
        }
    }
    let core_edges: Vec<Edge> = core_edges.iter().map(rename).collect();

    let mut block_edges = Vec::new();
    for j in 0..p {
        for t in l.block_edges() {
            let j2 = (j + t.drop as usize) % p;
            if !masked(&t.range, j) && !masked(&t.source, j2) {
                block_edges.push(BlockEdge {
                    id: phased(&t.id, j),
                    color: t.color,
                    range: phased(&t.range, j),
                    source: phased(&t.source, j2),
                    drop: ((j + t.drop as usize) / p) as u32,
                });
            }
        }
    }

    let edge_kept = |id: &EdgeId| l.edge(id).is_some_and(|e| keep(&e.source));
    let mut core_squares: Vec<Square> = l
        .core_squares()
        .iter()
        .filter(|sq| sq.left.iter().chain(&sq.right).all(edge_kept))
        .map(|sq| Square {
            left: [sq.left[0].clone(), eid(&l.edge(&sq.left[1]).expect("edge"))],
            right: [sq.right[0].clone(), eid(&l.edge(&sq.right[1]).expect("edge"))],
        })
        .collect();
    for level in l.base()..s {
        for sq in l.block_squares() {
            let a = instance(&sq.left[0], level);
            let b = instance(&sq.left[1], level + drop_of(&sq.left[0]));
            let c = instance(&sq.right[0], level);
            let d = instance(&sq.right[1], level + drop_of(&sq.right[0]));
            if [&a, &b, &c, &d].iter().all(|e| keep(&e.source)) {
                core_squares.push(Square {
                    left: [eid(&a), eid(&b)],
                    right: [eid(&c), eid(&d)],
                });
            }
        }
    }

    let kept_templates: BTreeSet<&str> = block_edges.iter().map(|t| t.id.as_str()).collect();
    let mut block_squares = Vec::new();
    for j in 0..p {
        for sq in l.block_squares() {
            let ids = [
                phased(&sq.left[0], j),
                phased(&sq.left[1], (j + drop_of(&sq.left[0])) % p),
                phased(&sq.right[0], j),
                phased(&sq.right[1], (j + drop_of(&sq.right[0])) % p),
            ];
            if ids.iter().all(|id| kept_templates.contains(id.as_str())) {
                let [a, b, c, d] = ids;
                block_squares.push(BlockSquare {
                    left: [a, b],
                    right: [c, d],
                });
            }
        }
    }
    LevelPresentation::new(
        l.rank(),
        core_levels,
        block_vertices,
        core_edges,
        block_edges,
        core_squares,
        block_squares,
    )
}
