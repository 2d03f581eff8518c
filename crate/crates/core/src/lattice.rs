//! North/East lattice paths below the barrier `y = x + i`, the reflection
//! argument that counts them, and the resulting count of code words.
//!
//! A non-decreasing tail `t_1 <= t_2 <= ...` with `2 <= t_j <= j + i` is drawn
//! as a path whose `j`-th East step sits at height `t_j - 2`, with North steps
//! filling the gaps and a final North run up to height `len + i - 1`. The bound
//! on `t_j` is exactly the condition that the path never touches the barrier.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{binomial, pow2};

pub use crate::numbers::central_binomial;

/// Default cap on `east + north` for brute-force enumeration.
pub const BRUTE_STEP_LIMIT: u64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    North,
    East,
}

impl Step {
    pub fn flipped(self) -> Step {
        match self {
            Step::North => Step::East,
            Step::East => Step::North,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    fn step(self, s: Step) -> Point {
        match s {
            Step::North => Point::new(self.x, self.y + 1),
            Step::East => Point::new(self.x + 1, self.y),
        }
    }

    pub fn on_barrier(self, barrier: i64) -> bool {
        self.y == self.x + barrier
    }

    /// Mirror image in the line `y = x + barrier`.
    pub fn reflect(self, barrier: i64) -> Point {
        Point::new(self.y - barrier, self.x + barrier)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A path of unit steps starting at an arbitrary lattice point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnchoredPath {
    pub start: Point,
    pub steps: Vec<Step>,
}

impl AnchoredPath {
    pub fn new(start: Point, steps: Vec<Step>) -> Self {
        AnchoredPath { start, steps }
    }

    /// Every visited lattice point, start included.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for &s in &self.steps {
            cur = cur.step(s);
            out.push(cur);
        }
        out
    }

    pub fn end(&self) -> Point {
        let east = self.steps.iter().filter(|&&s| s == Step::East).count() as i64;
        let north = self.steps.len() as i64 - east;
        Point::new(self.start.x + east, self.start.y + north)
    }

    /// Index into [`points`](Self::points) of the first point on the barrier.
    pub fn first_touch(&self, barrier: i64) -> Option<usize> {
        self.points().iter().position(|p| p.on_barrier(barrier))
    }

    pub fn touches(&self, barrier: i64) -> bool {
        self.first_touch(barrier).is_some()
    }
}

impl From<LatticePath> for AnchoredPath {
    fn from(p: LatticePath) -> Self {
        AnchoredPath::new(Point::ORIGIN, p.steps)
    }
}

/// A North/East path starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePath {
    pub steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn east(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::East).count()
    }

    pub fn north(&self) -> usize {
        self.steps.len() - self.east()
    }

    pub fn end(&self) -> Point {
        Point::new(self.east() as i64, self.north() as i64)
    }

    pub fn points(&self) -> Vec<Point> {
        self.anchored().points()
    }

    pub fn touches(&self, barrier: i64) -> bool {
        self.anchored().touches(barrier)
    }

    fn anchored(&self) -> AnchoredPath {
        AnchoredPath::new(Point::ORIGIN, self.steps.clone())
    }

    /// JSON record `{"east", "north", "barrier", "steps"}`.
    pub fn record(&self, barrier: u64) -> PathRecord {
        PathRecord {
            east: self.east() as u64,
            north: self.north() as u64,
            barrier,
            steps: self.to_string(),
        }
    }
}

impl fmt::Display for LatticePath {
    /// Step string over `N`/`E`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::North => "N",
                Step::East => "E",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'N' => Ok(Step::North),
                'E' => Ok(Step::East),
                other => Err(Error::Parse(format!("bad step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

/// Serialized form of a path together with its target and barrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub east: u64,
    pub north: u64,
    pub barrier: u64,
    pub steps: String,
}

impl PathRecord {
    /// Parses the steps and checks them against `east`/`north`.
    pub fn path(&self) -> Result<LatticePath> {
        let path: LatticePath = self.steps.parse()?;
        if path.east() as u64 != self.east || path.north() as u64 != self.north {
            return Err(Error::InvalidPath(format!(
                "steps end at {} but record says ({},{})",
                path.end(),
                self.east,
                self.north
            )));
        }
        Ok(path)
    }
}

/// Paths from the origin to `(east, north)` that never touch `y = x + barrier`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathFamily {
    pub east: u64,
    pub north: u64,
    pub barrier: u64,
}

impl PathFamily {
    pub fn new(east: u64, north: u64, barrier: u64) -> Result<Self> {
        if barrier < 1 {
            return Err(Error::Domain("barrier must be >= 1".into()));
        }
        Ok(PathFamily {
            east,
            north,
            barrier,
        })
    }

    pub fn contains(&self, path: &LatticePath) -> bool {
        path.end() == Point::new(self.east as i64, self.north as i64)
            && !path.touches(self.barrier as i64)
    }

    /// Depth-first enumeration of the family, in lexicographic step order.
    pub fn enumerate(&self) -> Vec<LatticePath> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.walk(Point::ORIGIN, &mut cur, &mut |steps| {
            out.push(LatticePath::new(steps.to_vec()))
        });
        out
    }

    fn walk(&self, at: Point, cur: &mut Vec<Step>, visit: &mut impl FnMut(&[Step])) {
        if at.on_barrier(self.barrier as i64) {
            return;
        }
        if at.x as u64 == self.east && at.y as u64 == self.north {
            visit(cur);
            return;
        }
        for s in [Step::North, Step::East] {
            let next = at.step(s);
            if next.x as u64 <= self.east && next.y as u64 <= self.north {
                cur.push(s);
                self.walk(next, cur, visit);
                cur.pop();
            }
        }
    }
}

/// Maps a word tail to its path; `i` is the length of the marker segment.
pub fn tail_to_path(tail: &[u32], i: usize) -> Result<LatticePath> {
    if i < 1 {
        return Err(Error::InvalidTail(
            "marker segment length must be >= 1".into(),
        ));
    }
    let mut steps = Vec::with_capacity(2 * tail.len() + i);
    let mut height = 0u32;
    let mut prev = 2u32;
    for (j, &t) in tail.iter().enumerate() {
        let j = j + 1;
        if t < 2 || t as usize > j + i {
            return Err(Error::InvalidTail(format!(
                "entry {j} is {t}, outside 2..={}",
                j + i
            )));
        }
        if t < prev {
            return Err(Error::InvalidTail(format!("entry {j} decreases")));
        }
        prev = t;
        let reduced = t - 2;
        while height < reduced {
            steps.push(Step::North);
            height += 1;
        }
        steps.push(Step::East);
    }
    let top = (tail.len() + i - 1) as u32;
    while height < top {
        steps.push(Step::North);
        height += 1;
    }
    Ok(LatticePath::new(steps))
}

/// Inverse of [`tail_to_path`].
pub fn path_to_tail(path: &LatticePath, i: usize) -> Result<Vec<u32>> {
    if i < 1 {
        return Err(Error::InvalidPath("barrier must be >= 1".into()));
    }
    let a = path.east();
    let want = Point::new(a as i64, (a + i - 1) as i64);
    if path.end() != want {
        return Err(Error::InvalidPath(format!(
            "ends at {} instead of {want}",
            path.end()
        )));
    }
    if let Some(idx) = path.anchored().first_touch(i as i64) {
        return Err(Error::InvalidPath(format!(
            "touches y = x + {i} at {}",
            path.points()[idx]
        )));
    }
    let mut height = 0u32;
    let mut tail = Vec::with_capacity(a);
    for s in &path.steps {
        match s {
            Step::North => height += 1,
            Step::East => tail.push(height + 2),
        }
    }
    Ok(tail)
}

/// The difference form `C(2n-i-1, n-1) - C(2n-i-1, n)`.
pub fn good_paths_difference(i: u64, n: u64) -> Result<u64> {
    let top = 2 * n as i64 - i as i64 - 1;
    let all = binomial(top, n as i64 - 1)?;
    let bad = binomial(top, n as i64)?;
    all.checked_sub(bad)
        .ok_or(Error::Overflow("good path difference"))
}

/// The ratio form `C(2n-i-1, n-1) * i / n`.
pub fn good_paths_ratio(i: u64, n: u64) -> Result<u64> {
    let top = 2 * n as i64 - i as i64 - 1;
    let all = binomial(top, n as i64 - 1)? as u128;
    let scaled = all * i as u128;
    debug_assert_eq!(scaled % n as u128, 0);
    u64::try_from(scaled / n as u128).map_err(|_| Error::Overflow("good path ratio"))
}

/// Number of barrier-avoiding paths `(0,0) -> (a, n-1)` for `a = n - i`,
/// computed by the reflection formula.
pub fn count_paths_closed(a: u64, i: u64, n: u64) -> Result<u64> {
    if i < 1 || i > n {
        return Err(Error::Domain(format!("need 1 <= i <= n, got i={i} n={n}")));
    }
    if a != n - i {
        return Err(Error::Domain(format!(
            "need a = n - i, got a={a} n={n} i={i}"
        )));
    }
    let diff = good_paths_difference(i, n)?;
    let ratio = good_paths_ratio(i, n)?;
    assert_eq!(diff, ratio, "the two closed forms disagree at i={i} n={n}");
    Ok(diff)
}

/// Counts the family by explicit depth-first enumeration.
pub fn count_paths_brute(a: u64, north: u64, barrier: u64) -> Result<u64> {
    count_paths_brute_with_limit(a, north, barrier, BRUTE_STEP_LIMIT)
}

pub fn count_paths_brute_with_limit(a: u64, north: u64, barrier: u64, limit: u64) -> Result<u64> {
    if a + north > limit {
        return Err(Error::BudgetExceeded {
            budget: limit as usize,
            length: (a + north) as usize,
            reached: (a + north) as usize,
        });
    }
    let family = PathFamily::new(a, north, barrier)?;
    let mut count = 0u64;
    family.walk(Point::ORIGIN, &mut Vec::new(), &mut |_| count += 1);
    Ok(count)
}

/// All North/East paths from `from` to `to`.
pub fn all_paths(from: Point, to: Point) -> Vec<AnchoredPath> {
    fn go(at: Point, to: Point, cur: &mut Vec<Step>, start: Point, out: &mut Vec<AnchoredPath>) {
        if at == to {
            out.push(AnchoredPath::new(start, cur.clone()));
            return;
        }
        for s in [Step::North, Step::East] {
            let next = at.step(s);
            if next.x <= to.x && next.y <= to.y {
                cur.push(s);
                go(next, to, cur, start, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if to.x >= from.x && to.y >= from.y {
        go(from, to, &mut Vec::new(), from, &mut out);
    }
    out
}

/// Reflects the part of `path` before its first touch of `y = x + barrier`.
///
/// A bad path from the origin becomes a path from `(-barrier, barrier)` with
/// the same end point, and applying the map again restores the original.
pub fn reflect_bad_path(path: &AnchoredPath, barrier: i64) -> Result<AnchoredPath> {
    let touch = path
        .first_touch(barrier)
        .ok_or_else(|| Error::InvalidPath(format!("path never touches y = x + {barrier}")))?;
    let mut steps = path.steps.clone();
    for s in &mut steps[..touch] {
        *s = s.flipped();
    }
    Ok(AnchoredPath::new(path.start.reflect(barrier), steps))
}

/// `W_n` as the sum over marker-segment lengths `i` of `2^i * w(n-i, i)`.
pub fn codeword_count_decomposed(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    (1..=n).try_fold(0u64, |acc, i| {
        let term = pow2(i as u32)?
            .checked_mul(count_paths_closed(n - i, i, n)?)
            .ok_or(Error::Overflow("codeword count"))?;
        acc.checked_add(term)
            .ok_or(Error::Overflow("codeword count"))
    })
}

fn big_binomial(a: u64, b: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for k in 1..=b {
        acc = acc * BigInt::from(a - b + k) / BigInt::from(k);
    }
    acc
}

fn pow2_rational(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Both sides of
/// `sum_{j<n} 2^(m-j) C(m+j-1, j) (m-j) = n 2^(m-n+1) C(m+n-1, n)`.
///
/// The sides are rational: powers of two turn fractional once `n > m + 1`.
pub fn identity_check(m: u64, n: u64) -> Result<(BigRational, BigRational)> {
    if m < 1 || n < 1 {
        return Err(Error::Domain(format!("need m, n >= 1, got m={m} n={n}")));
    }
    let m_i = m as i64;
    let lhs = (0..n).fold(BigRational::zero(), |acc, j| {
        let j_i = j as i64;
        let term = pow2_rational(m_i - j_i)
            * BigRational::from_integer(big_binomial(m + j - 1, j) * BigInt::from(m_i - j_i));
        acc + term
    });
    let rhs = BigRational::from_integer(BigInt::from(n) * big_binomial(m + n - 1, n))
        * pow2_rational(m_i - n as i64 + 1);
    Ok((lhs, rhs))
}
