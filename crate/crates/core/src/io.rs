//! Graph files, built-in URIs and DOT export.
//!
//! A graph file is JSON or TOML:
//!
//! ```json
//! { "format_version": 1, "k": 1, "kind": "skeleton",
//!   "vertices": ["v"], "edges": [{"id": "e", "color": 1, "range": "v", "source": "v"}] }
//! ```
//!
//! `kind = "level"` reads `vertices`/`edges`/`squares` as the core and takes
//! `level = {core_levels, periodic_block = {vertices, edges, squares}}`.
//! `kind = "family"` takes `family = {name, params}`.

use std::fmt::Write as _;
use std::path::Path as FsPath;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    BlockEdge, BlockSquare, Edge, FamilyDescriptor, FiniteSkeleton, KGraph, KGraphPresentation, LevelPresentation,
    Square, VertexId,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Skeleton,
    Level,
    Family,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perms: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub name: String,
    #[serde(default)]
    pub params: FamilyParams,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<BlockEdge>,
    #[serde(default)]
    pub squares: Vec<BlockSquare>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    #[serde(default)]
    pub core_levels: Vec<Vec<VertexId>>,
    pub periodic_block: BlockSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub kind: GraphKind,
    #[serde(default)]
    pub vertices: Vec<VertexId>,
    #[serde(default)]
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub squares: Vec<Square>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<LevelSpec>,
}

impl FamilySpec {
    pub fn descriptor(&self) -> Result<FamilyDescriptor> {
        let need =
            |x: Option<usize>, what: &str| x.ok_or_else(|| Error::Parse(format!("family {} needs {what}", self.name)));
        let p = &self.params;
        Ok(match self.name.as_str() {
            "omega" => FamilyDescriptor::Omega { k: need(p.k, "k")? },
            "comb" => FamilyDescriptor::Comb { n: need(p.n, "n")? },
            "onevertex" | "one_vertex" => {
                let sizes = p
                    .sizes
                    .clone()
                    .ok_or_else(|| Error::Parse("family onevertex needs sizes".into()))?;
                FamilyDescriptor::OneVertex {
                    k: p.k.unwrap_or(sizes.len()),
                    sizes,
                    perms: p.perms.clone(),
                }
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        })
    }
}

impl GraphFile {
    pub fn build(&self) -> Result<KGraphPresentation> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {}; expected {FORMAT_VERSION}",
                self.format_version
            )));
        }
        let k = || self.k.ok_or_else(|| Error::Parse("missing k".into()));
        let g = match self.kind {
            GraphKind::Skeleton => KGraphPresentation::Skeleton(FiniteSkeleton::new(
                k()?,
                self.vertices.clone(),
                self.edges.clone(),
                self.squares.clone(),
            )),
            GraphKind::Level => {
                let level = self
                    .level
                    .as_ref()
                    .ok_or_else(|| Error::Parse("kind level needs a level table".into()))?;
                KGraphPresentation::Level(LevelPresentation::new(
                    k()?,
                    level.core_levels.clone(),
                    level.periodic_block.vertices.clone(),
                    self.edges.clone(),
                    level.periodic_block.edges.clone(),
                    self.squares.clone(),
                    level.periodic_block.squares.clone(),
                ))
            }
            GraphKind::Family => {
                let family = self
                    .family
                    .as_ref()
                    .ok_or_else(|| Error::Parse("kind family needs a family table".into()))?;
                family.descriptor()?.build()?
            }
        };
        if let Some(k) = self.k {
            if k != g.rank() {
                return Err(Error::RankMismatch {
                    expected: k,
                    got: g.rank(),
                });
            }
        }
        Ok(g)
    }

    /// Parses JSON, falling back to TOML.
    pub fn parse(text: &str) -> Result<GraphFile> {
        if text.trim().is_empty() {
            return Err(Error::Parse("empty graph file".into()));
        }
        match serde_json::from_str(text) {
            Ok(f) => Ok(f),
            Err(json) if text.trim_start().starts_with('{') => Err(Error::Parse(format!("invalid JSON: {json}"))),
            Err(_) => toml::from_str(text).map_err(|e| Error::Parse(format!("invalid TOML: {e}"))),
        }
    }
}

fn usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not a number: {x:?}")))
        })
        .collect()
}

/// `builtin:omega:k`, `builtin:comb:n` or `builtin:onevertex:k:N1,...,Nk[:p1;p2;...]`
/// where each `p` is a comma-separated permutation for one color pair.
impl FromStr for FamilyDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed builtin URI {s:?}"));
        let rest = s.strip_prefix("builtin:").ok_or_else(bad)?;
        let parts: Vec<&str> = rest.split(':').collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["omega", k] => Ok(FamilyDescriptor::Omega { k: num(k)? }),
            ["comb", n] => Ok(FamilyDescriptor::Comb { n: num(n)? }),
            ["onevertex", k, sizes] => Ok(FamilyDescriptor::OneVertex {
                k: num(k)?,
                sizes: usize_list(sizes)?,
                perms: None,
            }),
            ["onevertex", k, sizes, perms] => Ok(FamilyDescriptor::OneVertex {
                k: num(k)?,
                sizes: usize_list(sizes)?,
                perms: Some(perms.split(';').map(usize_list).collect::<Result<_>>()?),
            }),
            _ => Err(bad()),
        }
    }
}

/// Loads a graph from a built-in URI or a JSON/TOML file.
pub fn load(source: &str) -> Result<KGraphPresentation> {
    if source.starts_with("builtin:") {
        return source.parse::<FamilyDescriptor>()?.build();
    }
    let text = std::fs::read_to_string(FsPath::new(source)).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    GraphFile::parse(&text)?.build()
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text of the colored skeleton; infinite graphs are cut at `depth`.
///
/// Arrows point from source to range; the label is the color `c1..ck`.
pub fn to_dot(g: &KGraphPresentation, depth: usize) -> String {
    let (vertices, edges) = g.window(depth);
    let mut out = String::from("digraph kgraph {\n");
    let _ = writeln!(out, "  // k = {}", g.rank());
    if !g.is_finite() {
        let _ = writeln!(out, "  // truncated at depth {depth}");
    }
    for v in &vertices {
        let _ = writeln!(out, "  {};", quoted(v.as_str()));
    }
    for e in &edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"c{}\", id={}];",
            quoted(e.source.as_str()),
            quoted(e.range.as_str()),
            e.color,
            quoted(e.id.as_str())
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uris_round_trip() {
        for uri in [
            "builtin:omega:2",
            "builtin:comb:3",
            "builtin:onevertex:2:1,1",
            "builtin:onevertex:2:2,2:0,2,1,3",
        ] {
            let d: FamilyDescriptor = uri.parse().unwrap();
            assert_eq!(d.to_string(), uri);
        }
        assert!("builtin:comb".parse::<FamilyDescriptor>().is_err());
        assert!("builtin:square:2".parse::<FamilyDescriptor>().is_err());
    }

    #[test]
    fn json_and_toml() {
        let json = r#"{"format_version": 1, "k": 1, "kind": "skeleton", "vertices": ["v"],
            "edges": [{"id": "e", "color": 1, "range": "v", "source": "v"}]}"#;
        let g = GraphFile::parse(json).unwrap().build().unwrap();
        assert!(g.validate().ok);
        let toml = r#"
format_version = 1
k = 1
kind = "skeleton"
vertices = ["v"]
[[edges]]
id = "e"
color = 1
range = "v"
source = "v"
"#;
        let h = GraphFile::parse(toml).unwrap().build().unwrap();
        assert_eq!(g.fingerprint(), h.fingerprint());

        let fam = r#"{"format_version": 1, "kind": "family", "family": {"name": "comb", "params": {"n": 2}}}"#;
        let c = GraphFile::parse(fam).unwrap().build().unwrap();
        assert_eq!(c.fingerprint(), load("builtin:comb:2").unwrap().fingerprint());

        assert!(matches!(GraphFile::parse("{ not json"), Err(Error::Parse(_))));
        assert!(matches!(GraphFile::parse(""), Err(Error::Parse(_))));
        let v2 = json.replace("\"format_version\": 1", "\"format_version\": 2");
        assert!(GraphFile::parse(&v2).unwrap().build().is_err());
    }

    #[test]
    fn level_file() {
        let json = r#"{"format_version": 1, "k": 1, "kind": "level",
            "vertices": ["t"], "edges": [{"id": "d", "color": 1, "range": "t", "source": "c@1"}],
            "level": {"core_levels": [["t"]], "periodic_block": {"vertices": ["c"],
                "edges": [{"id": "v", "color": 1, "range": "c", "source": "c", "drop": 1}]}}}"#;
        let g = GraphFile::parse(json).unwrap().build().unwrap();
        assert!(g.validate().ok, "{:?}", g.validate());
        assert!(g.has_vertex(&"c@5".into()));
    }

    #[test]
    fn dot_output() {
        let t5 = KGraphPresentation::Skeleton(FiniteSkeleton::one_graph(
            &["w", "u1", "u2"],
            &[("f", "w", "u1"), ("g", "w", "u2"), ("a", "u1", "u1"), ("c", "u2", "u2")],
        ));
        let dot = to_dot(&t5, 0);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 3);
        assert!(dot.contains("\"u1\" -> \"w\" [label=\"c1\", id=\"f\"];"));
        let comb = load("builtin:comb:2").unwrap();
        assert_eq!(to_dot(&comb, 3), to_dot(&comb, 3));
    }
}
