//! k-graph presentations and the lookup interface shared by every presentation kind.

mod builtin;
mod level;
mod presentation;
mod skeleton;
mod validate;

use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use builtin::{comb, omega, one_vertex, OmegaGraph};
pub use level::{BlockEdge, BlockSquare, LevelPresentation};
pub use presentation::{FamilyDescriptor, KGraphPresentation};
pub use skeleton::{FiniteSkeleton, Square};
pub use validate::{ValidationReport, Violation, ViolationKind};

macro_rules! opaque_id {
    ($name:ident) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(s: impl AsRef<str>) -> Self {
                $name(Arc::from(s.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", &*self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name::new(s)
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(Arc::from(s))
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

opaque_id!(VertexId);
opaque_id!(EdgeId);

/// A path of degree `e_color`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub color: usize,
    pub range: VertexId,
    pub source: VertexId,
}

impl Edge {
    pub fn new(id: impl Into<EdgeId>, color: usize, range: impl Into<VertexId>, source: impl Into<VertexId>) -> Self {
        Edge {
            id: id.into(),
            color,
            range: range.into(),
            source: source.into(),
        }
    }
}

/// Local structure of a row-finite k-graph: everything path arithmetic needs.
///
/// Paths run from their range to their source, so the edges "leaving" a vertex `v`
/// while walking a path are the edges with range `v`.
pub trait KGraph {
    fn rank(&self) -> usize;

    fn has_vertex(&self, v: &VertexId) -> bool;

    /// Edges of the given color with range `v`, sorted by id.
    fn edges_into(&self, v: &VertexId, color: usize) -> Vec<Edge>;

    fn edge(&self, id: &EdgeId) -> Option<Edge>;

    /// For a composable pair `first . second` of distinct colors `(i, j)`, the unique
    /// pair `(f, e)` of colors `(j, i)` with the same range and source.
    fn square(&self, first: &Edge, second: &Edge) -> Option<(Edge, Edge)>;

    /// Stable identifier used to reject mixing elements of different graphs.
    fn fingerprint(&self) -> u64;
}

impl<G: KGraph + ?Sized> KGraph for &G {
    fn rank(&self) -> usize {
        (**self).rank()
    }
    fn has_vertex(&self, v: &VertexId) -> bool {
        (**self).has_vertex(v)
    }
    fn edges_into(&self, v: &VertexId, color: usize) -> Vec<Edge> {
        (**self).edges_into(v, color)
    }
    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        (**self).edge(id)
    }
    fn square(&self, first: &Edge, second: &Edge) -> Option<(Edge, Edge)> {
        (**self).square(first, second)
    }
    fn fingerprint(&self) -> u64 {
        (**self).fingerprint()
    }
}

pub(crate) fn fingerprint_of(text: &str) -> u64 {
    // FNV-1a; stable across runs and platforms unlike `DefaultHasher`.
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}
