//! Infinite k-graphs given by finitely many core levels followed by one block of
//! vertices repeated at every deeper level.
//!
//! Level `l` of the repeated block holds the vertices `name@l` for `l >= base`, where
//! `base` is the number of core levels. Block edges have their range at some level
//! `l` and their source at `l` or `l + 1`; their concrete ids are `id@l`. Core edges have
//! their range in the core and their source in the core or on level `base`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::skeleton::Square;
use super::validate::{check_vertex, Violation, ViolationKind};
use super::{fingerprint_of, Edge, EdgeId, KGraph, VertexId};

/// A template edge of the repeated block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEdge {
    pub id: String,
    pub color: usize,
    pub range: String,
    pub source: String,
    /// 0: source on the same level as the range; 1: source one level deeper.
    #[serde(default)]
    pub drop: u32,
}

/// A factorization square between two template 2-paths of the block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSquare {
    pub left: [String; 2],
    pub right: [String; 2],
}

#[derive(Clone, Debug)]
pub struct LevelPresentation {
    k: usize,
    core_levels: Vec<Vec<VertexId>>,
    block_vertices: Vec<String>,
    core_edges: Vec<Edge>,
    block_edges: Vec<BlockEdge>,
    core_squares: Vec<Square>,
    block_squares: Vec<BlockSquare>,
    core_level_of: HashMap<VertexId, usize>,
    block_index: BTreeSet<String>,
    core_by_id: HashMap<EdgeId, Edge>,
    core_into: HashMap<(VertexId, usize), Vec<Edge>>,
    template_by_id: HashMap<String, BlockEdge>,
    template_into: HashMap<(String, usize), Vec<BlockEdge>>,
    core_square_map: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    block_square_map: HashMap<(String, String), (String, String)>,
    conflicts: Vec<Violation>,
    fingerprint: u64,
}

impl LevelPresentation {
    pub fn new(
        k: usize,
        core_levels: Vec<Vec<VertexId>>,
        block_vertices: Vec<String>,
        core_edges: Vec<Edge>,
        block_edges: Vec<BlockEdge>,
        core_squares: Vec<Square>,
        block_squares: Vec<BlockSquare>,
    ) -> Self {
        let mut conflicts = Vec::new();
        let mut core_level_of = HashMap::new();
        for (level, vs) in core_levels.iter().enumerate() {
            for v in vs {
                if core_level_of.insert(v.clone(), level).is_some() {
                    conflicts.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("duplicate core vertex {v}"),
                        vec![v.to_string()],
                    ));
                }
            }
        }
        let block_index: BTreeSet<String> = block_vertices.iter().cloned().collect();
        if block_index.len() != block_vertices.len() {
            conflicts.push(Violation::new(
                ViolationKind::DanglingEndpoint,
                "duplicate block vertex name",
                vec![],
            ));
        }
        let mut core_by_id = HashMap::new();
        let mut core_into: HashMap<(VertexId, usize), Vec<Edge>> = HashMap::new();
        for e in &core_edges {
            if core_by_id.insert(e.id.clone(), e.clone()).is_some() {
                conflicts.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("duplicate core edge {}", e.id),
                    vec![e.id.to_string()],
                ));
            }
            core_into.entry((e.range.clone(), e.color)).or_default().push(e.clone());
        }
        for list in core_into.values_mut() {
            list.sort();
        }
        let mut template_by_id = HashMap::new();
        let mut template_into: HashMap<(String, usize), Vec<BlockEdge>> = HashMap::new();
        for e in &block_edges {
            if template_by_id.insert(e.id.clone(), e.clone()).is_some() {
                conflicts.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("duplicate block edge {}", e.id),
                    vec![e.id.clone()],
                ));
            }
            template_into
                .entry((e.range.clone(), e.color))
                .or_default()
                .push(e.clone());
        }
        for list in template_into.values_mut() {
            list.sort_by(|a, b| a.id.cmp(&b.id));
        }
        let mut core_square_map = HashMap::new();
        for sq in &core_squares {
            let l = (sq.left[0].clone(), sq.left[1].clone());
            let r = (sq.right[0].clone(), sq.right[1].clone());
            for (from, to) in [(l.clone(), r.clone()), (r, l)] {
                if let Some(prev) = core_square_map.insert(from.clone(), to.clone()) {
                    if prev != to {
                        conflicts.push(Violation::new(
                            ViolationKind::NonBijectiveSquare,
                            format!("2-path {}.{} is identified twice", from.0, from.1),
                            vec![from.0.to_string(), from.1.to_string()],
                        ));
                    }
                }
            }
        }
        let mut block_square_map = HashMap::new();
        for sq in &block_squares {
            let l = (sq.left[0].clone(), sq.left[1].clone());
            let r = (sq.right[0].clone(), sq.right[1].clone());
            for (from, to) in [(l.clone(), r.clone()), (r, l)] {
                if let Some(prev) = block_square_map.insert(from.clone(), to.clone()) {
                    if prev != to {
                        conflicts.push(Violation::new(
                            ViolationKind::NonBijectiveSquare,
                            format!("block 2-path {}.{} is identified twice", from.0, from.1),
                            vec![from.0.clone(), from.1.clone()],
                        ));
                    }
                }
            }
        }
        let mut text = format!("level;k={k};");
        for (l, vs) in core_levels.iter().enumerate() {
            for v in vs {
                text.push_str(&format!("c{l}:{v};"));
            }
        }
        for b in &block_vertices {
            text.push_str(&format!("b:{b};"));
        }
        for e in &core_edges {
            text.push_str(&format!("ce:{}:{}:{}:{};", e.id, e.color, e.range, e.source));
        }
        for e in &block_edges {
            text.push_str(&format!("be:{}:{}:{}:{}:{};", e.id, e.color, e.range, e.source, e.drop));
        }
        for s in &core_squares {
            text.push_str(&format!(
                "cs:{}.{}={}.{};",
                s.left[0], s.left[1], s.right[0], s.right[1]
            ));
        }
        for s in &block_squares {
            text.push_str(&format!(
                "bs:{}.{}={}.{};",
                s.left[0], s.left[1], s.right[0], s.right[1]
            ));
        }
        LevelPresentation {
            k,
            core_levels,
            block_vertices,
            core_edges,
            block_edges,
            core_squares,
            block_squares,
            core_level_of,
            block_index,
            core_by_id,
            core_into,
            template_by_id,
            template_into,
            core_square_map,
            block_square_map,
            conflicts,
            fingerprint: fingerprint_of(&text),
        }
    }

    /// First level made of block copies.
    pub fn base(&self) -> usize {
        self.core_levels.len()
    }

    pub fn core_levels(&self) -> &[Vec<VertexId>] {
        &self.core_levels
    }

    pub fn core_vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.core_levels.iter().flatten()
    }

    pub fn block_vertices(&self) -> &[String] {
        &self.block_vertices
    }

    pub fn core_edges(&self) -> &[Edge] {
        &self.core_edges
    }

    pub fn block_edges(&self) -> &[BlockEdge] {
        &self.block_edges
    }

    pub fn core_squares(&self) -> &[Square] {
        &self.core_squares
    }

    pub fn block_squares(&self) -> &[BlockSquare] {
        &self.block_squares
    }

    pub fn block_vertex(&self, name: &str, level: usize) -> VertexId {
        VertexId::new(format!("{name}@{level}"))
    }

    /// `(name, level)` for a block vertex id.
    pub fn split_block(&self, v: &VertexId) -> Option<(&str, usize)> {
        if self.core_level_of.contains_key(v) {
            return None;
        }
        let (name, level) = v.as_str().rsplit_once('@')?;
        let level: usize = level.parse().ok()?;
        let name = self.block_index.get(name)?;
        (level >= self.base()).then_some((name.as_str(), level))
    }

    pub fn level_of(&self, v: &VertexId) -> Option<usize> {
        self.core_level_of
            .get(v)
            .copied()
            .or_else(|| self.split_block(v).map(|(_, l)| l))
    }

    /// Template edges of the given color with range at block vertex `name`.
    pub fn template_edges_into(&self, name: &str, color: usize) -> &[BlockEdge] {
        self.template_into
            .get(&(name.to_string(), color))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    fn instantiate(&self, t: &BlockEdge, level: usize) -> Edge {
        Edge {
            id: EdgeId::new(format!("{}@{level}", t.id)),
            color: t.color,
            range: self.block_vertex(&t.range, level),
            source: self.block_vertex(&t.source, level + t.drop as usize),
        }
    }

    fn split_block_edge(&self, id: &EdgeId) -> Option<(&BlockEdge, usize)> {
        if self.core_by_id.contains_key(id) {
            return None;
        }
        let (name, level) = id.as_str().rsplit_once('@')?;
        let level: usize = level.parse().ok()?;
        let t = self.template_by_id.get(name)?;
        (level >= self.base()).then_some((t, level))
    }

    /// Vertices on levels `0..=max_level`, core first, then block copies level by level.
    pub fn vertices_up_to(&self, max_level: usize) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.core_levels.iter().take(max_level + 1).flatten().cloned().collect();
        for level in self.base()..=max_level {
            out.extend(self.block_vertices.iter().map(|b| self.block_vertex(b, level)));
        }
        out
    }

    /// Edges whose range lies on a level `<= max_level`.
    pub fn edges_up_to(&self, max_level: usize) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .core_edges
            .iter()
            .filter(|e| self.core_level_of.get(&e.range).is_some_and(|&l| l <= max_level))
            .cloned()
            .collect();
        for level in self.base()..=max_level {
            out.extend(self.block_edges.iter().map(|t| self.instantiate(t, level)));
        }
        out
    }

    fn is_vertex(&self, v: &VertexId) -> bool {
        self.core_level_of.contains_key(v) || self.split_block(v).is_some()
    }

    pub(crate) fn violations(&self) -> Vec<Violation> {
        let mut out = self.conflicts.clone();
        for name in &self.block_vertices {
            if name.contains('@') {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("block vertex name {name:?} may not contain '@'"),
                    vec![name.clone()],
                ));
            }
        }
        for e in &self.core_edges {
            if e.color == 0 || e.color > self.k {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("edge {} has color {} outside 1..={}", e.id, e.color, self.k),
                    vec![e.id.to_string()],
                ));
            }
            if !self.core_level_of.contains_key(&e.range) {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("core edge {} must have its range in the core", e.id),
                    vec![e.id.to_string(), e.range.to_string()],
                ));
            }
            if !self.is_vertex(&e.source) {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("core edge {} refers to unknown vertex {}", e.id, e.source),
                    vec![e.id.to_string(), e.source.to_string()],
                ));
            } else if let (Some(lr), Some(ls)) = (self.level_of(&e.range), self.level_of(&e.source)) {
                if ls < lr {
                    out.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("core edge {} climbs from level {ls} to {lr}", e.id),
                        vec![e.id.to_string()],
                    ));
                }
                if ls > self.base() {
                    out.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("core edge {} must enter the block at level {}", e.id, self.base()),
                        vec![e.id.to_string()],
                    ));
                }
            }
        }
        for t in &self.block_edges {
            if t.color == 0 || t.color > self.k {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("block edge {} has color {} outside 1..={}", t.id, t.color, self.k),
                    vec![t.id.clone()],
                ));
            }
            for end in [&t.range, &t.source] {
                if !self.block_index.contains(end) {
                    out.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("block edge {} refers to unknown block vertex {end}", t.id),
                        vec![t.id.clone(), end.clone()],
                    ));
                }
            }
            if t.drop > 1 {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    format!("block edge {} drops {} levels; at most 1 is allowed", t.id, t.drop),
                    vec![t.id.clone()],
                ));
            }
        }
        for sq in &self.core_squares {
            for id in sq.left.iter().chain(&sq.right) {
                if self.edge(id).is_none() {
                    out.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("core square refers to unknown edge {id}"),
                        vec![id.to_string()],
                    ));
                }
            }
            if !self.core_by_id.contains_key(&sq.left[0]) || !self.core_by_id.contains_key(&sq.right[0]) {
                out.push(Violation::new(
                    ViolationKind::DanglingEndpoint,
                    "a core square must start with core edges on both sides",
                    vec![sq.left[0].to_string(), sq.right[0].to_string()],
                ));
            }
        }
        for sq in &self.block_squares {
            for id in sq.left.iter().chain(&sq.right) {
                if !self.template_by_id.contains_key(id) {
                    out.push(Violation::new(
                        ViolationKind::DanglingEndpoint,
                        format!("block square refers to unknown block edge {id}"),
                        vec![id.clone()],
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        // One representative of every block vertex suffices: the block is translation invariant.
        let mut reps: Vec<VertexId> = self.core_vertices().cloned().collect();
        reps.extend(self.block_vertices.iter().map(|b| self.block_vertex(b, self.base())));
        for v in &reps {
            check_vertex(self, v, &mut out);
        }
        out
    }
}

impl KGraph for LevelPresentation {
    fn rank(&self) -> usize {
        self.k
    }

    fn has_vertex(&self, v: &VertexId) -> bool {
        self.is_vertex(v)
    }

    fn edges_into(&self, v: &VertexId, color: usize) -> Vec<Edge> {
        if self.core_level_of.contains_key(v) {
            return self
                .core_into
                .get(&(v.clone(), color))
                .map(|l| l.iter().filter(|e| self.is_vertex(&e.source)).cloned().collect())
                .unwrap_or_default();
        }
        match self.split_block(v) {
            Some((name, level)) => self
                .template_edges_into(name, color)
                .iter()
                .map(|t| self.instantiate(t, level))
                .collect(),
            None => Vec::new(),
        }
    }

    fn edge(&self, id: &EdgeId) -> Option<Edge> {
        if let Some(e) = self.core_by_id.get(id) {
            return Some(e.clone());
        }
        self.split_block_edge(id).map(|(t, level)| self.instantiate(t, level))
    }

    fn square(&self, first: &Edge, second: &Edge) -> Option<(Edge, Edge)> {
        if self.core_by_id.contains_key(&first.id) {
            let (a, b) = self.core_square_map.get(&(first.id.clone(), second.id.clone()))?;
            return Some((self.edge(a)?, self.edge(b)?));
        }
        let (t1, level) = self.split_block_edge(&first.id)?;
        let (t2, _) = self.split_block_edge(&second.id)?;
        let (a, b) = self.block_square_map.get(&(t1.id.clone(), t2.id.clone()))?;
        let ta = self.template_by_id.get(a)?;
        let tb = self.template_by_id.get(b)?;
        Some((
            self.instantiate(ta, level),
            self.instantiate(tb, level + ta.drop as usize),
        ))
    }

    fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}
