//! Symmetry classes of four-pattern sets of length-4 patterns and prefix
//! comparison of their counting sequences against a target sequence.
//!
//! A "match" is only ever a statement about the computed prefix.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::avoid::{AvoiderSequence, AvoiderTree, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::numbers::central_binomial;
use crate::perm::{all_permutations, symmetry_orbit, PatternSet, Permutation};

pub use crate::numbers::catalan;

pub const CACHE_SCHEMA_VERSION: u32 = 1;

/// The twelve classes whose counts start like the central binomial
/// coefficients: the class of the code-word bijection, the
/// insertion-encoding class, then ten further quadruples.
pub const CANDIDATES: [&str; 12] = [
    "2431,4231,1432,4132",
    "3124,4123,3142,4132",
    "1234,1243,1324,1342",
    "1234,1243,1342,1423",
    "1234,1243,1342,2341",
    "1243,1324,1342,1423",
    "1243,1324,1342,1432",
    "1243,2143,2413,2431",
    "1324,1342,1423,1432",
    "1324,1342,1432,4132",
    "1342,1423,1432,2431",
    "1342,2413,2431,3142",
];

pub fn candidate_sets() -> Vec<PatternSet> {
    CANDIDATES
        .iter()
        .map(|s| s.parse().expect("static pattern set"))
        .collect()
}

/// One orbit of pattern sets under the symmetry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryClass {
    /// The lexicographically least member.
    pub representative: PatternSet,
    pub orbit_size: usize,
}

impl SymmetryClass {
    pub fn of(set: &PatternSet) -> Self {
        SymmetryClass {
            representative: set.canonical(),
            orbit_size: symmetry_orbit(set).len(),
        }
    }

    pub fn key(&self) -> String {
        self.representative.key()
    }
}

/// All `size`-element subsets of `items`, in lexicographic index order.
fn subsets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(
        items: &[T],
        size: usize,
        start: usize,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Every set of `set_size` distinct patterns of length `pattern_len`.
pub fn all_pattern_sets(pattern_len: usize, set_size: usize) -> Vec<PatternSet> {
    let perms: Vec<Permutation> = all_permutations(pattern_len);
    subsets(&perms, set_size)
        .into_iter()
        .map(|s| PatternSet::new(s).expect("non-empty"))
        .collect()
}

/// One representative per symmetry class of `set_size`-subsets of the
/// length-`pattern_len` permutations, sorted by canonical key.
pub fn enumerate_classes(pattern_len: usize, set_size: usize) -> Vec<SymmetryClass> {
    let mut by_key: BTreeMap<PatternSet, usize> = BTreeMap::new();
    for set in all_pattern_sets(pattern_len, set_size) {
        *by_key.entry(set.canonical()).or_default() += 1;
    }
    by_key
        .into_iter()
        .map(|(representative, orbit_size)| SymmetryClass {
            representative,
            orbit_size,
        })
        .collect()
}

/// The classes of four-element sets of length-4 patterns.
pub fn enumerate_quadruple_classes() -> Vec<SymmetryClass> {
    enumerate_classes(4, 4)
}

/// The sequence a scan compares against, indexed from `n = 1`.
#[derive(Clone)]
pub struct SequenceTarget {
    label: String,
    expected: Arc<dyn Fn(usize) -> Option<u64> + Send + Sync>,
}

impl SequenceTarget {
    pub fn new(
        label: impl Into<String>,
        expected: impl Fn(usize) -> Option<u64> + Send + Sync + 'static,
    ) -> Self {
        SequenceTarget {
            label: label.into(),
            expected: Arc::new(expected),
        }
    }

    /// `b_{n-1} = C(2n-2, n-1)`.
    pub fn central_binomial() -> Self {
        SequenceTarget::new("central-binomial", |n| {
            n.checked_sub(1)
                .and_then(|k| central_binomial(k as u64).ok())
        })
    }

    /// A finite list of terms, `values[0]` being the term for `n = 1`.
    pub fn from_values(label: impl Into<String>, values: Vec<u64>) -> Self {
        SequenceTarget::new(label, move |n| {
            n.checked_sub(1).and_then(|i| values.get(i)).copied()
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn expected(&self, n: usize) -> Option<u64> {
        (self.expected)(n)
    }
}

impl fmt::Debug for SequenceTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceTarget")
            .field("label", &self.label)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every computed term equals the target (where the target is defined).
    MatchesPrefix,
    /// First length (1-based) whose count differs from the target.
    DivergesAt(usize),
    /// The node budget ran out before a divergence was found.
    BudgetExceeded,
}

impl Verdict {
    pub fn describe(&self, target_label: &str) -> String {
        match self {
            Verdict::MatchesPrefix => format!("matches-{target_label}-prefix"),
            Verdict::DivergesAt(n) => format!("diverges-at-n={n}"),
            Verdict::BudgetExceeded => "budget-exceeded".to_string(),
        }
    }

    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::MatchesPrefix)
    }
}

/// Compares computed counts with the target. `complete` is false when the
/// budget stopped the computation early.
pub fn classify(counts: &[u64], complete: bool, target: &SequenceTarget) -> Verdict {
    let diverges = counts
        .iter()
        .enumerate()
        .find(|&(i, &c)| target.expected(i + 1).is_some_and(|e| e != c))
        .map(|(i, _)| i + 1);
    match (diverges, complete) {
        (Some(n), _) => Verdict::DivergesAt(n),
        (None, true) => Verdict::MatchesPrefix,
        (None, false) => Verdict::BudgetExceeded,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub canonical_key: String,
    pub orbit_size: usize,
    pub counts: AvoiderSequence,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub n_max: usize,
    pub target_label: String,
    pub reports: Vec<ClassReport>,
    pub total_subsets: usize,
    pub total_classes: usize,
}

#[derive(Serialize, Deserialize)]
struct ReportRow {
    canonical_key: String,
    patterns: PatternSet,
    orbit_size: usize,
    counts: Vec<u64>,
    verdict: String,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    n_max: usize,
    target: String,
    total_subsets: usize,
    total_classes: usize,
    matches: usize,
    reports: Vec<ReportRow>,
}

impl ScanResult {
    pub fn matches(&self) -> usize {
        self.reports.iter().filter(|r| r.verdict.is_match()).count()
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            n_max: self.n_max,
            target: self.target_label.clone(),
            total_subsets: self.total_subsets,
            total_classes: self.total_classes,
            matches: self.matches(),
            reports: self
                .reports
                .iter()
                .map(|r| ReportRow {
                    canonical_key: r.canonical_key.clone(),
                    patterns: r.counts.patterns.clone(),
                    orbit_size: r.orbit_size,
                    counts: r.counts.counts.clone(),
                    verdict: r.verdict.describe(&self.target_label),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
    }

    /// One row per class and length: `canonical_key,orbit_size,n,count,expected,verdict`.
    pub fn to_csv(&self, target: &SequenceTarget) -> String {
        let mut out = String::from("canonical_key,orbit_size,n,count,expected,verdict\n");
        for r in &self.reports {
            let verdict = r.verdict.describe(&self.target_label);
            for (i, c) in r.counts.counts.iter().enumerate() {
                let expected = target
                    .expected(i + 1)
                    .map(|e| e.to_string())
                    .unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.canonical_key,
                    r.orbit_size,
                    i + 1,
                    c,
                    expected,
                    verdict
                ));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    entries: BTreeMap<String, Vec<u64>>,
}

/// Exact counts per canonical key, optionally backed by a JSON file.
#[derive(Debug, Default)]
pub struct CountCache {
    path: Option<PathBuf>,
    entries: Mutex<BTreeMap<String, Vec<u64>>>,
}

impl CountCache {
    pub fn in_memory() -> Self {
        CountCache::default()
    }

    /// Opens `path`, starting empty if it does not exist.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => {
                let file: CacheFile = serde_json::from_str(&text)
                    .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
                if file.schema_version != CACHE_SCHEMA_VERSION {
                    return Err(Error::Cache(format!(
                        "{}: schema version {} (expected {CACHE_SCHEMA_VERSION})",
                        path.display(),
                        file.schema_version
                    )));
                }
                file.entries
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        Ok(CountCache {
            path: Some(path),
            entries: Mutex::new(entries),
        })
    }

    /// Cached counts for `key` truncated to `n_max`, if at least that many are known.
    pub fn get(&self, key: &str, n_max: usize) -> Option<Vec<u64>> {
        let entries = self.entries.lock().expect("cache lock");
        entries
            .get(key)
            .filter(|c| c.len() >= n_max)
            .map(|c| c[..n_max].to_vec())
    }

    /// Stores `counts` unless a longer prefix is already known.
    pub fn insert(&self, key: &str, counts: &[u64]) {
        let mut entries = self.entries.lock().expect("cache lock");
        let slot = entries.entry(key.to_string()).or_default();
        if counts.len() > slot.len() {
            *slot = counts.to_vec();
        }
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes the cache back to its file (no-op for in-memory caches).
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let file = CacheFile {
            schema_version: CACHE_SCHEMA_VERSION,
            entries: self.entries.lock().expect("cache lock").clone(),
        };
        let text = serde_json::to_string(&file).map_err(|e| Error::Cache(e.to_string()))?;
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        }
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub budget: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Counts one class up to `n_max`, through the cache when given.
pub fn report_class(
    class: &SymmetryClass,
    n_max: usize,
    target: &SequenceTarget,
    options: ScanOptions,
    cache: Option<&CountCache>,
) -> Result<ClassReport> {
    let key = class.key();
    let (counts, complete) = match cache.and_then(|c| c.get(&key, n_max)) {
        Some(counts) => (counts, true),
        None => {
            let tree = AvoiderTree::new(&class.representative).with_budget(options.budget);
            let mut counts = Vec::new();
            let complete = match tree.count_into(n_max, &mut counts) {
                Ok(()) => true,
                Err(Error::BudgetExceeded { .. }) => false,
                Err(e) => return Err(e),
            };
            if let Some(c) = cache {
                c.insert(&key, &counts);
            }
            (counts, complete)
        }
    };
    let verdict = classify(&counts, complete, target);
    Ok(ClassReport {
        canonical_key: key,
        orbit_size: class.orbit_size,
        counts: AvoiderSequence {
            patterns: class.representative.clone(),
            counts,
        },
        verdict,
    })
}

/// Counts every class in `classes` (in parallel) and classifies it.
pub fn scan_classes(
    classes: &[SymmetryClass],
    n_max: usize,
    target: &SequenceTarget,
    options: ScanOptions,
    cache: Option<&CountCache>,
) -> Result<ScanResult> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be >= 1".into()));
    }
    let reports = classes
        .par_iter()
        .map(|c| report_class(c, n_max, target, options, cache))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        n_max,
        target_label: target.label().to_string(),
        total_subsets: classes.iter().map(|c| c.orbit_size).sum(),
        total_classes: classes.len(),
        reports,
    })
}

/// Scans all classes of four length-4 patterns.
pub fn scan_for_sequence(
    n_max: usize,
    target: &SequenceTarget,
    options: ScanOptions,
    cache: Option<&CountCache>,
) -> Result<ScanResult> {
    if n_max < 4 {
        return Err(Error::Domain("n_max must be >= 4".into()));
    }
    scan_classes(
        &enumerate_quadruple_classes(),
        n_max,
        target,
        options,
        cache,
    )
}

/// Checks the twelve candidate classes against `b_{n-1}`, in list order.
/// Each report carries the listed pattern set; its key is the canonical one.
pub fn verify_candidate_list(
    n_max: usize,
    options: ScanOptions,
    cache: Option<&CountCache>,
) -> Result<Vec<ClassReport>> {
    if n_max < 4 {
        return Err(Error::Domain("n_max must be >= 4".into()));
    }
    let listed = candidate_sets();
    let classes: Vec<SymmetryClass> = listed.iter().map(SymmetryClass::of).collect();
    let target = SequenceTarget::central_binomial();
    let mut reports = scan_classes(&classes, n_max, &target, options, cache)?.reports;
    for (report, set) in reports.iter_mut().zip(listed) {
        report.counts.patterns = set;
    }
    Ok(reports)
}
