//! Socle, essentiality and semisimplicity read off the line points.
//!
//! The socle is the graded ideal of the saturated hereditary closure of the line
//! points; it is zero iff there are no line points, essential iff every vertex
//! connects to a line point, and everything iff the closure is every vertex.

use std::collections::{BTreeSet, VecDeque};

use super::classes::line_point_classes;
use super::closure::saturated_hereditary_closure;
use super::line_point::{line_points, LinePoints, NoReason};
use super::verdict::{AnalysisOptions, Verdict3};
use super::vertex_set::{LevelSet, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{KGraph, KGraphPresentation, VertexId};

fn first_line_point(lp: &LinePoints) -> Option<VertexId> {
    lp.certificates
        .iter()
        .find(|c| c.verdict.is_yes())
        .map(|c| c.vertex.clone())
}

/// `closure(P_l)`, the vertex set of the socle.
pub fn socle_vertices(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<VertexSet> {
    let lp = line_points(g, opts)?;
    let closure = saturated_hereditary_closure(g, &lp.set)?;
    if lp.is_exact() || closure.is_all(g) {
        Ok(closure)
    } else {
        Err(Error::Undecided(format!(
            "line-point status of {} unknown at depth {}",
            lp.unknown.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(", "),
            opts.depth_bound
        )))
    }
}

/// Yes iff there are no line points; a line point witnesses No.
pub fn socle_is_zero(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<Verdict3<String, VertexId>> {
    let lp = line_points(g, opts)?;
    Ok(match first_line_point(&lp) {
        Some(v) => Verdict3::No(v),
        None if lp.is_exact() => Verdict3::Yes("no line points".into()),
        None => Verdict3::Unknown {
            bound: opts.depth_bound,
        },
    })
}

/// Yes iff the closure of the line points is every vertex; No carries a vertex outside.
pub fn is_semisimple(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<Verdict3<String, VertexId>> {
    let lp = line_points(g, opts)?;
    let closure = saturated_hereditary_closure(g, &lp.set)?;
    Ok(if closure.is_all(g) {
        Verdict3::Yes("the closure of the line points is every vertex".into())
    } else if lp.is_exact() {
        Verdict3::No(closure.some_outside(g).expect("closure is not everything"))
    } else {
        Verdict3::Unknown {
            bound: opts.depth_bound,
        }
    })
}

/// Vertices from which some path ends in `x`.
fn reaching(g: &KGraphPresentation, x: &VertexSet) -> VertexSet {
    let hits = |v: &VertexId, inside: &dyn Fn(&VertexId) -> bool| {
        (1..=g.rank()).any(|c| g.edges_into(v, c).iter().any(|e| inside(&e.source)))
    };
    match (g, x) {
        (KGraphPresentation::Skeleton(s), VertexSet::Finite(set)) => {
            let mut out: BTreeSet<VertexId> = set.clone();
            let mut queue: VecDeque<VertexId> = set.iter().cloned().collect();
            while let Some(u) = queue.pop_front() {
                for v in s.vertices() {
                    if !out.contains(v) && (1..=s.rank()).any(|c| s.edges_into(v, c).iter().any(|e| e.source == u)) {
                        out.insert(v.clone());
                        queue.push_back(v.clone());
                    }
                }
            }
            VertexSet::Finite(out)
        }
        (KGraphPresentation::Level(l), VertexSet::Level(set)) => {
            // edges into level j start on j or j + 1, so the tail shape is preserved
            let mut cur = set.clone();
            loop {
                let next = LevelSet::tabulate(l, cur.tail_start, cur.period, |v| {
                    cur.contains(l, v) || hits(v, &|u| cur.contains(l, u))
                });
                if VertexSet::Level(next.clone()).set_eq(&VertexSet::Level(cur.clone()), g) {
                    return VertexSet::Level(cur);
                }
                cur = next;
            }
        }
        (KGraphPresentation::Omega(o), VertexSet::Lattice(set)) => {
            // an up-set is reached from everywhere, a point from the points below it
            if set.up_sets().next().is_some() {
                return VertexSet::all(g);
            }
            let below: Vec<VertexId> = set.points().flat_map(|p| p.below()).map(|q| o.vertex(&q)).collect();
            VertexSet::from_vertices(g, &below).expect("lattice points are vertices")
        }
        _ => x.clone(),
    }
}

/// Yes iff every vertex connects to a line point.
pub fn socle_essential(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<Verdict3<String, VertexId>> {
    let lp = line_points(g, opts)?;
    let reach = reaching(g, &lp.set);
    Ok(if reach.is_all(g) {
        Verdict3::Yes("every vertex connects to a line point".into())
    } else if lp.is_exact() {
        Verdict3::No(reach.some_outside(g).expect("reach is not everything"))
    } else {
        Verdict3::Unknown {
            bound: opts.depth_bound,
        }
    })
}

/// Exact test for finite 1-graphs: every cycle has an exit and every vertex reaches
/// every cycle.
fn finite_one_graph(g: &KGraphPresentation) -> Option<Verdict3<String, String>> {
    let KGraphPresentation::Skeleton(s) = g else {
        return None;
    };
    if s.rank() != 1 {
        return None;
    }
    let reach_from = |v: &VertexId| {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([v.clone()]);
        while let Some(u) = queue.pop_front() {
            for e in s.edges_into(&u, 1) {
                if seen.insert(e.source.clone()) {
                    queue.push_back(e.source);
                }
            }
        }
        seen
    };
    let reach: Vec<(VertexId, BTreeSet<VertexId>)> = s.vertices().iter().map(|v| (v.clone(), reach_from(v))).collect();
    // a vertex lies on a cycle iff it reaches itself
    let on_cycle: Vec<&VertexId> = reach.iter().filter(|(v, r)| r.contains(v)).map(|(v, _)| v).collect();
    for v in &on_cycle {
        let component: Vec<&VertexId> = on_cycle
            .iter()
            .copied()
            .filter(|u| {
                reach.iter().any(|(w, r)| w == *u && r.contains(*v))
                    && reach.iter().any(|(w, r)| w == *v && r.contains(*u))
            })
            .collect();
        if component.iter().all(|u| s.edges_into(u, 1).len() == 1) {
            return Some(Verdict3::No(format!(
                "the cycle through {v} has no exit, so its path is periodic"
            )));
        }
    }
    for (v, r) in &reach {
        if let Some(u) = on_cycle.iter().find(|u| !r.contains(**u)) {
            return Some(Verdict3::No(format!("{v} does not reach the cycle through {u}")));
        }
    }
    Some(Verdict3::Yes(
        "every cycle has an exit and every vertex reaches every cycle".into(),
    ))
}

/// A bounded probe for cofinality together with aperiodicity.
///
/// Exact for finite 1-graphs. Elsewhere it answers No when a unique path is periodic or
/// when two line points are inequivalent, Yes when the graph is semisimple with a single
/// line-point class, and Unknown otherwise.
pub fn is_cofinal_and_aperiodic(g: &KGraphPresentation, opts: AnalysisOptions) -> Result<Verdict3<String, String>> {
    if let Some(v) = finite_one_graph(g) {
        return Ok(v);
    }
    let lp = line_points(g, opts)?;
    if let Some(c) = lp
        .certificates
        .iter()
        .find(|c| matches!(c.verdict, Verdict3::No(NoReason::Periodic { .. })))
    {
        return Ok(Verdict3::No(format!(
            "the only infinite path at {} is periodic",
            c.vertex
        )));
    }
    let classes = line_point_classes(g, opts)?;
    if classes.classes.len() >= 2 {
        let (a, b) = (&classes.classes[0].representative, &classes.classes[1].representative);
        return Ok(Verdict3::No(format!("{a} does not connect to the unique path at {b}")));
    }
    if classes.classes.len() == 1 && classes.complete && is_semisimple(g, opts)?.is_yes() {
        return Ok(Verdict3::Yes("semisimple with a single line-point class".into()));
    }
    Ok(Verdict3::Unknown {
        bound: opts.depth_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{comb, omega, one_vertex, FiniteSkeleton};

    fn skel(vs: &[&str], es: &[(&str, &str, &str)]) -> KGraphPresentation {
        KGraphPresentation::Skeleton(FiniteSkeleton::one_graph(vs, es))
    }

    #[test]
    fn examples() {
        let opts = AnalysisOptions::default();
        let t1 = skel(&["v"], &[("e", "v", "v")]);
        let t5 = skel(
            &["w", "u1", "u2"],
            &[("f", "w", "u1"), ("g", "w", "u2"), ("a", "u1", "u1"), ("c", "u2", "u2")],
        );
        assert!(socle_vertices(&t1, opts).unwrap().is_empty());
        assert!(socle_is_zero(&t5, opts).unwrap().is_yes());
        assert_eq!(socle_essential(&t1, opts).unwrap(), Verdict3::No("v".into()));
        assert!(is_cofinal_and_aperiodic(&t1, opts).unwrap().is_no());

        let ov = KGraphPresentation::Skeleton(one_vertex(2, &[1, 1], None).unwrap());
        assert!(socle_is_zero(&ov, opts).unwrap().is_yes());
        assert_eq!(is_semisimple(&ov, opts).unwrap(), Verdict3::No("v".into()));

        let o1 = KGraphPresentation::Omega(omega(1).unwrap());
        assert_eq!(socle_is_zero(&o1, opts).unwrap(), Verdict3::No("0".into()));
        assert!(is_semisimple(&o1, opts).unwrap().is_yes());
        assert!(socle_vertices(&o1, opts).unwrap().is_all(&o1));
        assert!(is_cofinal_and_aperiodic(&o1, opts).unwrap().is_yes());

        for n in 1..=3 {
            let c = KGraphPresentation::Level(comb(n).unwrap());
            assert!(is_semisimple(&c, opts).unwrap().is_yes());
            assert!(socle_essential(&c, opts).unwrap().is_yes());
        }
        let c2 = KGraphPresentation::Level(comb(2).unwrap());
        assert!(is_cofinal_and_aperiodic(&c2, opts).unwrap().is_no());
    }

    #[test]
    fn finite_one_graph_probe() {
        let opts = AnalysisOptions::default();
        // two loops at one vertex: simple
        let o2 = skel(&["v"], &[("e", "v", "v"), ("f", "v", "v")]);
        assert!(is_cofinal_and_aperiodic(&o2, opts).unwrap().is_yes());
        // T5: u1 does not reach u2's loop
        let t5 = skel(
            &["w", "u1", "u2"],
            &[("f", "w", "u1"), ("g", "w", "u2"), ("a", "u1", "u1"), ("c", "u2", "u2")],
        );
        assert!(is_cofinal_and_aperiodic(&t5, opts).unwrap().is_no());
    }
}
