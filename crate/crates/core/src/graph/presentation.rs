use std::fmt;

use serde::{Deserialize, Serialize};

use super::builtin::{comb, omega, one_vertex, OmegaGraph};
use super::level::LevelPresentation;
use super::skeleton::FiniteSkeleton;
use super::validate::{check_vertex, ValidationReport};
use super::{Edge, EdgeId, KGraph, VertexId};
use crate::error::Result;

/// A k-graph given as finite data.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum KGraphPresentation {
    Skeleton(FiniteSkeleton),
    Level(LevelPresentation),
    Omega(OmegaGraph),
}

/// Descriptor of a built-in family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum FamilyDescriptor {
    Omega {
        k: usize,
    },
    Comb {
        n: usize,
    },
    OneVertex {
        k: usize,
        sizes: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        perms: Option<Vec<Vec<usize>>>,
    },
}

impl FamilyDescriptor {
    pub fn build(&self) -> Result<KGraphPresentation> {
        Ok(match self {
            FamilyDescriptor::Omega { k } => KGraphPresentation::Omega(omega(*k)?),
            FamilyDescriptor::Comb { n } => KGraphPresentation::Level(comb(*n)?),
            FamilyDescriptor::OneVertex { k, sizes, perms } => {
                KGraphPresentation::Skeleton(one_vertex(*k, sizes, perms.as_deref())?)
            }
        })
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Omega { k } => write!(f, "builtin:omega:{k}"),
            FamilyDescriptor::Comb { n } => write!(f, "builtin:comb:{n}"),
            FamilyDescriptor::OneVertex { k, sizes, perms } => {
                let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
                write!(f, "builtin:onevertex:{k}:{}", sizes.join(","))?;
                if let Some(perms) = perms {
                    let parts: Vec<String> = perms
                        .iter()
                        .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                        .collect();
                    write!(f, ":{}", parts.join(";"))?;
                }
                Ok(())
            }
        }
    }
}

impl KGraphPresentation {
    pub fn validate(&self) -> ValidationReport {
        match self {
            KGraphPresentation::Skeleton(s) => {
                let mut violations = s.structural_violations();
                if violations.is_empty() {
                    for v in s.vertices() {
                        check_vertex(s, v, &mut violations);
                    }
                }
                ValidationReport::from_violations(violations)
            }
            KGraphPresentation::Level(l) => ValidationReport::from_violations(l.violations()),
            // Every vertex of Omega_k receives exactly one edge per color and the squares
            // are the lattice commutations, so there is nothing to check.
            KGraphPresentation::Omega(_) => ValidationReport::from_violations(Vec::new()),
        }
    }

    /// All vertices, when there are finitely many.
    pub fn finite_vertices(&self) -> Option<&[VertexId]> {
        match self {
            KGraphPresentation::Skeleton(s) => Some(s.vertices()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, KGraphPresentation::Skeleton(_))
    }

    fn inner(&self) -> &dyn KGraph {
        match self {
            KGraphPresentation::Skeleton(s) => s,
            KGraphPresentation::Level(l) => l,
            KGraphPresentation::Omega(o) => o,
        }
    }

    /// A finite window of the graph: every vertex for skeletons, levels `0..=depth` for
    /// level presentations and the box `[0, depth]^k` for `Omega_k`. Edges are those
    /// with both endpoints in the window.
    pub fn window(&self, depth: usize) -> (Vec<VertexId>, Vec<Edge>) {
        match self {
            KGraphPresentation::Skeleton(s) => (s.vertices().to_vec(), s.edges().to_vec()),
            KGraphPresentation::Level(l) => {
                let vs = l.vertices_up_to(depth);
                let set: std::collections::BTreeSet<&VertexId> = vs.iter().collect();
                let es = l
                    .edges_up_to(depth)
                    .into_iter()
                    .filter(|e| set.contains(&e.source))
                    .collect();
                (vs, es)
            }
            KGraphPresentation::Omega(o) => {
                let k = o.rank();
                let corner = crate::degree::Degree::new(vec![depth as u32; k]);
                let points = corner.below();
                let vs: Vec<VertexId> = points.iter().map(|p| o.vertex(p)).collect();
                let mut es = Vec::new();
                for p in &points {
                    for c in 1..=k {
                        if p.get(c) < depth as u32 {
                            es.extend(o.edges_into(&o.vertex(p), c));
                        }
                    }
                }
                (vs, es)
            }
        }
    }
}

impl KGraph for KGraphPresentation {
    fn rank(&self) -> usize {
        self.inner().rank()
    }
    fn has_vertex(&self, v: &VertexId) -> bool {
        self.inner().has_vertex(v)
    }
    fn edges_into(&self, v: &VertexId, color: usize) -> Vec<Edge> {
        self.inner().edges_into(v, color)
    }
    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        self.inner().edge(id)
    }
    fn square(&self, first: &Edge, second: &Edge) -> Option<(Edge, Edge)> {
        self.inner().square(first, second)
    }
    fn fingerprint(&self) -> u64 {
        self.inner().fingerprint()
    }
}
