//! Exhaustive generation of pattern-avoiding permutations.
//!
//! Every avoider of length `k + 1` arises from an avoider of length `k` by
//! inserting the new maximum `k + 1` somewhere, because deleting the maximum
//! never creates a pattern. The traversal keeps one level (the frontier) at a
//! time and, when extending a clean parent, only looks for occurrences that
//! use the new maximum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{CompiledPattern, PatternSet, Permutation};

pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

/// Exact counts `|S_n(set)|` for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoiderSequence {
    pub patterns: PatternSet,
    /// `counts[n - 1] = |S_n|`.
    pub counts: Vec<u64>,
}

impl AvoiderSequence {
    pub fn n_max(&self) -> usize {
        self.counts.len()
    }

    /// Count for length `n` (1-based), if computed.
    pub fn count(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.counts.get(i)).copied()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, c));
        }
        out
    }
}

/// Generation engine for one pattern set.
#[derive(Debug, Clone)]
pub struct AvoiderTree {
    compiled: Vec<CompiledPattern>,
    patterns: PatternSet,
    budget: usize,
}

/// A level of the tree stored as a flat buffer of equal-length permutations.
#[derive(Debug, Clone)]
struct Level {
    len: usize,
    data: Vec<u8>,
}

impl Level {
    fn count(&self) -> usize {
        self.data.len().checked_div(self.len).unwrap_or(0)
    }

    fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks_exact(self.len)
    }
}

impl AvoiderTree {
    pub fn new(patterns: &PatternSet) -> Self {
        AvoiderTree {
            compiled: patterns
                .patterns()
                .iter()
                .map(CompiledPattern::new)
                .collect(),
            patterns: patterns.clone(),
            budget: DEFAULT_NODE_BUDGET,
        }
    }

    /// Maximum number of permutations allowed in a stored frontier.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    fn root(&self) -> Level {
        let clean = self.compiled.iter().all(|c| c.find(&[1u8]).is_none());
        Level {
            len: 1,
            data: if clean { vec![1] } else { Vec::new() },
        }
    }

    /// Whether inserting the maximum at `pos` of `child` keeps it clean,
    /// given the parent was clean.
    fn child_is_clean(&self, child: &[u8], pos: usize) -> bool {
        self.compiled
            .iter()
            .all(|c| !c.occurs_with_max_at(child, pos))
    }

    /// Calls `visit` for every clean child of `parent` in insertion-position order.
    fn for_each_child(&self, parent: &[u8], buf: &mut Vec<u8>, mut visit: impl FnMut(&[u8])) {
        let new_max = parent.len() as u8 + 1;
        for pos in 0..=parent.len() {
            buf.clear();
            buf.extend_from_slice(&parent[..pos]);
            buf.push(new_max);
            buf.extend_from_slice(&parent[pos..]);
            if self.child_is_clean(buf, pos) {
                visit(buf);
            }
        }
    }

    fn next_level(&self, level: &Level) -> Result<Level> {
        let len = level.len + 1;
        let mut data = Vec::new();
        let mut buf = Vec::with_capacity(len);
        for parent in level.iter() {
            self.for_each_child(parent, &mut buf, |child| data.extend_from_slice(child));
            if data.len() / len > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                    length: len,
                    reached: data.len() / len,
                });
            }
        }
        Ok(Level { len, data })
    }

    fn check_length(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Domain("length must be >= 1".into()));
        }
        if n > u8::MAX as usize {
            return Err(Error::Domain(format!("length {n} exceeds 255")));
        }
        Ok(())
    }

    /// All avoiders of length `n`.
    pub fn generate(&self, n: usize) -> Result<Vec<Permutation>> {
        Self::check_length(n)?;
        let mut level = self.root();
        while level.len < n {
            level = self.next_level(&level)?;
        }
        Ok(level
            .iter()
            .map(|p| Permutation::from_vec_unchecked(p.iter().map(|&v| v as u32).collect()))
            .collect())
    }

    /// Counts for `n = 1..=n_max`. The last level is counted without being stored.
    pub fn count_sequence(&self, n_max: usize) -> Result<AvoiderSequence> {
        let mut counts = Vec::with_capacity(n_max);
        let outcome = self.count_into(n_max, &mut counts);
        outcome.map(|()| AvoiderSequence {
            patterns: self.patterns.clone(),
            counts,
        })
    }

    /// Like [`count_sequence`](Self::count_sequence) but leaves the counts
    /// computed so far in `counts` when the budget runs out.
    pub fn count_into(&self, n_max: usize, counts: &mut Vec<u64>) -> Result<()> {
        Self::check_length(n_max)?;
        counts.clear();
        let mut level = self.root();
        counts.push(level.count() as u64);
        while level.len < n_max {
            if level.len + 1 == n_max {
                let mut last: u64 = 0;
                let mut buf = Vec::with_capacity(n_max);
                for parent in level.iter() {
                    let mut here = 0u64;
                    self.for_each_child(parent, &mut buf, |_| here += 1);
                    last = last
                        .checked_add(here)
                        .ok_or(Error::Overflow("avoider count"))?;
                }
                counts.push(last);
                break;
            }
            level = self.next_level(&level)?;
            counts.push(level.count() as u64);
        }
        Ok(())
    }
}

/// All permutations of length `n` avoiding every pattern in `set`.
pub fn generate_avoiders(set: &PatternSet, n: usize) -> Result<Vec<Permutation>> {
    AvoiderTree::new(set).generate(n)
}

/// `|S_n(set)|` for `n = 1..=n_max` with the default node budget.
pub fn count_sequence(set: &PatternSet, n_max: usize) -> Result<AvoiderSequence> {
    AvoiderTree::new(set).count_sequence(n_max)
}

/// The allowed insertions of the new maximum into an avoider, as permutations.
pub fn children(set: &PatternSet, parent: &Permutation) -> Vec<Permutation> {
    let tree = AvoiderTree::new(set);
    let parent: Vec<u8> = parent.values().iter().map(|&v| v as u8).collect();
    let mut out = Vec::new();
    let mut buf = Vec::new();
    tree.for_each_child(&parent, &mut buf, |c| {
        out.push(Permutation::from_vec_unchecked(
            c.iter().map(|&v| v as u32).collect(),
        ))
    });
    out
}
