//! Degrees in `N^k` and grading indices in `Z^k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A degree `n = (n_1, ..., n_k)` in `N^k`, ordered componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn new(coords: Vec<u32>) -> Self {
        Degree(coords)
    }

    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The standard basis vector `e_color`; colors are 1-based.
    pub fn unit(k: usize, color: usize) -> Self {
        let mut coords = vec![0; k];
        coords[color - 1] = 1;
        Degree(coords)
    }

    /// `(1, ..., 1)`.
    pub fn ones(k: usize) -> Self {
        Degree(vec![1; k])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, color: usize) -> u32 {
        self.0[color - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total length `|n| = n_1 + ... + n_k`.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.le(self) {
            return None;
        }
        Some(Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scaled(&self, factor: u32) -> Degree {
        Degree(self.0.iter().map(|c| c * factor).collect())
    }

    /// The canonical color word `1^{n_1} 2^{n_2} ... k^{n_k}`.
    pub fn color_word(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i + 1, n as usize))
            .collect()
    }

    /// Degree of a color word.
    pub fn of_colors(k: usize, colors: &[usize]) -> Degree {
        let mut coords = vec![0; k];
        for &c in colors {
            coords[c - 1] += 1;
        }
        Degree(coords)
    }

    pub fn delta(&self) -> DegreeDelta {
        DegreeDelta(self.0.iter().map(|&c| i64::from(c)).collect())
    }

    /// All degrees `m` with `m <= self`, in lexicographic order.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=bound).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Degree {
    type Err = Error;

    /// Accepts `1,2`, `(1,2)` or a single `3`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        body.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad degree component {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Degree)
    }
}

/// A grading index in `Z^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeDelta(Vec<i64>);

impl DegreeDelta {
    pub fn new(coords: Vec<i64>) -> Self {
        DegreeDelta(coords)
    }

    pub fn zero(k: usize) -> Self {
        DegreeDelta(vec![0; k])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `a - b` for degrees.
    pub fn between(a: &Degree, b: &Degree) -> DegreeDelta {
        DegreeDelta(
            a.coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| i64::from(*x) - i64::from(*y))
                .collect(),
        )
    }

    pub fn add(&self, other: &DegreeDelta) -> DegreeDelta {
        DegreeDelta(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> DegreeDelta {
        DegreeDelta(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for DegreeDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DegreeDelta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        body.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad grading component {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(DegreeDelta)
    }
}
