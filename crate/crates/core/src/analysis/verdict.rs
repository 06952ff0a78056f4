use serde::Serialize;

/// Default search depth for analyses that quantify over infinite paths.
pub const DEFAULT_DEPTH_BOUND: usize = 64;

/// A three-valued answer. `Yes` and `No` carry witnesses; `Unknown` records the depth
/// at which the search gave up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "lowercase")]
pub enum Verdict3<Y, N = Y> {
    Yes(Y),
    No(N),
    Unknown { bound: usize },
}

impl<Y, N> Verdict3<Y, N> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict3::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict3::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict3::Unknown { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict3::Yes(_) => "yes",
            Verdict3::No(_) => "no",
            Verdict3::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub depth_bound: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            depth_bound: DEFAULT_DEPTH_BOUND,
        }
    }
}
