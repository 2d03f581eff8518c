//! Permutations in one-line notation, classical pattern containment and the
//! symmetry group generated by reverse, complement and inverse.
//!
//! Positions and values in the public API are 1-based. A permutation of
//! length `n` holds every value of `1..=n` exactly once.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Builds a permutation, checking that `values` is a rearrangement of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = (v as usize).wrapping_sub(1);
            if idx >= n || seen[idx] {
                return Err(Error::NotPermutation(format!(
                    "{values:?} is not a rearrangement of 1..={n}"
                )));
            }
            seen[idx] = true;
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u32> {
        self.0
    }

    /// Value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u32 {
        self.0[pos - 1]
    }

    /// 1-based position of `value`, if present.
    pub fn position_of(&self, value: u32) -> Option<usize> {
        self.0.iter().position(|&v| v == value).map(|i| i + 1)
    }

    /// Reads the permutation right to left.
    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// Maps every value `v` to `n - v + 1`.
    pub fn complement(&self) -> Self {
        let n = self.0.len() as u32;
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    /// The permutation sending `self(i)` to `i`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation(inv)
    }

    /// The restriction to values `1..=m`, positions compacted.
    pub fn restrict(&self, m: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .copied()
                .filter(|&v| v as usize <= m)
                .collect(),
        )
    }

    /// Compact text form: concatenated digits when `n <= 9`, otherwise values
    /// joined by `.`.
    pub fn compact(&self) -> String {
        if self.0.len() <= 9 {
            self.0.iter().map(|v| char::from(b'0' + *v as u8)).collect()
        } else {
            join(&self.0, ".")
        }
    }
}

fn join(values: &[u32], sep: &str) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for Permutation {
    /// Comma-separated one-line notation, e.g. `2,4,5,1,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0, ","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,4,5,1,3`, `2.4.5.1.3` or the compact digit form `24513`
    /// (compact only for `n <= 9`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation(Vec::new()));
        }
        let values: Vec<u32> = if s.contains(',') || s.contains('.') {
            s.split([',', '.'])
                .map(|tok| {
                    tok.trim().parse::<u32>().map_err(|_| {
                        Error::Parse(format!("bad permutation entry {tok:?} in {s:?}"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            if s.len() > 9 {
                return Err(Error::Parse(format!(
                    "compact permutation {s:?} longer than 9; use comma-separated form"
                )));
            }
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.compact())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A pattern compiled for repeated containment queries.
#[derive(Debug, Clone)]
pub(crate) struct CompiledPattern {
    len: usize,
    /// `below[k][l]` is true iff `pattern[l] < pattern[k]`, for `l < k`.
    below: Vec<Vec<bool>>,
    /// Index (0-based) of the pattern's largest entry.
    max_index: usize,
}

impl CompiledPattern {
    pub(crate) fn new(pattern: &Permutation) -> Self {
        let p = pattern.values();
        let below = (0..p.len())
            .map(|k| (0..k).map(|l| p[l] < p[k]).collect())
            .collect();
        let max_index = p.iter().position(|&v| v as usize == p.len()).unwrap_or(0);
        CompiledPattern {
            len: p.len(),
            below,
            max_index,
        }
    }

    /// First occurrence (0-based positions) in lexicographic position order.
    pub(crate) fn find<T: Copy + Ord>(&self, perm: &[T]) -> Option<Vec<usize>> {
        if self.len == 0 {
            return Some(Vec::new());
        }
        if self.len > perm.len() {
            return None;
        }
        let mut chosen = Vec::with_capacity(self.len);
        if self.search(perm, &mut chosen, 0, None) {
            Some(chosen)
        } else {
            None
        }
    }

    /// Whether some occurrence maps the pattern's maximum onto position `pos`
    /// (0-based). Only meaningful when `perm[pos]` is the maximum of `perm`.
    pub(crate) fn occurs_with_max_at<T: Copy + Ord>(&self, perm: &[T], pos: usize) -> bool {
        if self.len == 0 || self.len > perm.len() {
            return false;
        }
        // Room on both sides for the entries left and right of the maximum.
        if pos < self.max_index || perm.len() - pos < self.len - self.max_index {
            return false;
        }
        let mut chosen = Vec::with_capacity(self.len);
        self.search(perm, &mut chosen, 0, Some(pos))
    }

    fn search<T: Copy + Ord>(
        &self,
        perm: &[T],
        chosen: &mut Vec<usize>,
        start: usize,
        pinned_max: Option<usize>,
    ) -> bool {
        let k = chosen.len();
        if k == self.len {
            return true;
        }
        let remaining = self.len - k;
        let mut hi = perm.len() - remaining;
        let mut lo = start;
        if let Some(q) = pinned_max {
            match k.cmp(&self.max_index) {
                std::cmp::Ordering::Less => hi = hi.min(q - (self.max_index - k)),
                std::cmp::Ordering::Equal => {
                    if q < lo || q > hi {
                        return false;
                    }
                    lo = q;
                    hi = q;
                }
                std::cmp::Ordering::Greater => {}
            }
        }
        let row = &self.below[k];
        for pos in lo..=hi {
            let v = perm[pos];
            let consistent = chosen
                .iter()
                .zip(row)
                .all(|(&c, &is_below)| (perm[c] < v) == is_below);
            if consistent {
                chosen.push(pos);
                if self.search(perm, chosen, pos + 1, pinned_max) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// True iff some subsequence of `perm` is order-isomorphic to `pattern`.
pub fn contains_pattern(perm: &Permutation, pattern: &Permutation) -> bool {
    find_occurrence(perm, pattern).is_some()
}

/// The lexicographically first occurrence of `pattern` in `perm`, as 1-based
/// positions.
pub fn find_occurrence(perm: &Permutation, pattern: &Permutation) -> Option<Vec<usize>> {
    CompiledPattern::new(pattern)
        .find(perm.values())
        .map(|pos| pos.into_iter().map(|p| p + 1).collect())
}

/// True iff `perm` contains none of the patterns in `set`.
pub fn avoids_all(perm: &Permutation, set: &PatternSet) -> bool {
    first_violation(perm, set).is_none()
}

/// The first pattern of `set` (in set order) contained in `perm`, with the
/// 1-based positions of its first occurrence.
pub fn first_violation<'a>(
    perm: &Permutation,
    set: &'a PatternSet,
) -> Option<(&'a Permutation, Vec<usize>)> {
    set.patterns()
        .iter()
        .find_map(|pat| find_occurrence(perm, pat).map(|occ| (pat, occ)))
}

/// One element of the order-8 group generated by reverse, complement and
/// inverse. Applied as inverse first, then reverse, then complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub inverse: bool,
    pub reverse: bool,
    pub complement: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        inverse: false,
        reverse: false,
        complement: false,
    };

    /// All eight group elements, identity first.
    pub fn all() -> [Symmetry; 8] {
        let mut out = [Symmetry::IDENTITY; 8];
        for (bits, slot) in out.iter_mut().enumerate() {
            *slot = Symmetry {
                inverse: bits & 4 != 0,
                reverse: bits & 1 != 0,
                complement: bits & 2 != 0,
            };
        }
        out
    }

    pub fn apply(&self, p: &Permutation) -> Permutation {
        let mut q = if self.inverse { p.inverse() } else { p.clone() };
        if self.reverse {
            q = q.reverse();
        }
        if self.complement {
            q = q.complement();
        }
        q
    }
}

/// A non-empty set of forbidden patterns, stored sorted and without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternSet(Vec<Permutation>);

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut v: Vec<Permutation> = patterns.into_iter().collect();
        if v.is_empty() {
            return Err(Error::InvalidPatternSet("pattern set is empty".into()));
        }
        if v.iter().any(Permutation::is_empty) {
            return Err(Error::InvalidPatternSet(
                "patterns must have length >= 1".into(),
            ));
        }
        v.sort();
        v.dedup();
        Ok(PatternSet(v))
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The image of the whole set under `sym`.
    pub fn apply(&self, sym: Symmetry) -> PatternSet {
        let mut v: Vec<Permutation> = self.0.iter().map(|p| sym.apply(p)).collect();
        v.sort();
        PatternSet(v)
    }

    /// Lexicographically least image under the eight symmetries.
    pub fn canonical(&self) -> PatternSet {
        Symmetry::all()
            .iter()
            .map(|&s| self.apply(s))
            .min()
            .expect("group is non-empty")
    }

    /// Text key of the canonical form, e.g. `1234|1243|1324|1342`.
    pub fn canonical_key(&self) -> String {
        self.canonical().key()
    }

    /// Text key of this set as stored (not canonicalised).
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(Permutation::compact)
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

/// The orbit of `set` under the symmetry group acting pattern-wise, sorted.
pub fn symmetry_orbit(set: &PatternSet) -> Vec<PatternSet> {
    let mut orbit: Vec<PatternSet> = Symmetry::all().iter().map(|&s| set.apply(s)).collect();
    orbit.sort();
    orbit.dedup();
    orbit
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Permutation::compact).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    /// Patterns separated by `,`, `|` or whitespace, each in compact digit
    /// form or dotted form (`1.2.10.3...`).
    fn from_str(s: &str) -> Result<Self> {
        let patterns = s
            .split(|c: char| c == ',' || c == '|' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(Permutation::from_str)
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(patterns)
    }
}

impl Serialize for PatternSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PatternSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Permutation>::deserialize(deserializer)?;
        PatternSet::new(v).map_err(serde::de::Error::custom)
    }
}

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(Permutation(current.clone()));
        // next lexicographic permutation
        let Some(i) = (1..current.len())
            .rev()
            .find(|&i| current[i - 1] < current[i])
        else {
            break;
        };
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("successor exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}
