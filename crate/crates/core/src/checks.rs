//! Self-verification suites: each check compares two independent routes to
//! the same quantity and records both values.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::avoid::{count_sequence, generate_avoiders};
use crate::codeword::{decode, encode, enumerate_codewords, forbidden_patterns};
use crate::error::Result;
use crate::lattice::{
    all_paths, codeword_count_decomposed, count_paths_brute, count_paths_closed, identity_check,
    reflect_bad_path, Point,
};
use crate::numbers::{binomial, central_binomial};
use crate::perm::{all_permutations, avoids_all};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(
        name: impl Into<String>,
        expected: T,
        actual: T,
    ) -> Self {
        Check {
            name: name.into(),
            passed: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: expected {} actual {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.expected,
            self.actual
        )
    }
}

/// Round trips both ways and image equality for `n = 1..=n_max`.
pub fn bijection_suite(n_max: usize) -> Result<Vec<Check>> {
    let forbidden = forbidden_patterns();
    let mut out = Vec::new();
    for n in 1..=n_max {
        let avoiders = generate_avoiders(&forbidden, n)?;
        let mut image = BTreeSet::new();
        let mut perm_roundtrip_failures = 0usize;
        for p in &avoiders {
            let w = encode(p)?;
            if decode(&w) != *p {
                perm_roundtrip_failures += 1;
            }
            image.insert(w);
        }
        let words = enumerate_codewords(n - 1);
        let word_roundtrip_failures = words
            .iter()
            .filter(|w| {
                let p = decode(w);
                !avoids_all(&p, &forbidden) || encode(&p).ok().as_ref() != Some(*w)
            })
            .count();
        let word_set: BTreeSet<_> = words.into_iter().collect();
        out.push(Check::compare(
            format!("bijection n={n} decode(encode(p)) failures"),
            0,
            perm_roundtrip_failures,
        ));
        out.push(Check::compare(
            format!("bijection n={n} encode(decode(w)) failures"),
            0,
            word_roundtrip_failures,
        ));
        out.push(Check::compare(
            format!("bijection n={n} |image| = |W_(n-1)|"),
            word_set.len(),
            image.len(),
        ));
        out.push(Check::compare(
            format!("bijection n={n} image = W_(n-1)"),
            true,
            image == word_set,
        ));
    }
    Ok(out)
}

/// Tree counts against `b_{n-1}`, and against brute-force filtering for `n <= 8`.
pub fn counts_suite(n_max: usize) -> Result<Vec<Check>> {
    let forbidden = forbidden_patterns();
    let seq = count_sequence(&forbidden, n_max)?;
    let mut out = Vec::new();
    for (i, &c) in seq.counts.iter().enumerate() {
        let n = i + 1;
        out.push(Check::compare(
            format!("S_{n} = b_{}", n - 1),
            central_binomial(n as u64 - 1)?,
            c,
        ));
        if n <= 8 {
            let brute = all_permutations(n)
                .iter()
                .filter(|p| avoids_all(p, &forbidden))
                .count() as u64;
            out.push(Check::compare(format!("S_{n} tree = filter"), brute, c));
        }
    }
    Ok(out)
}

/// Closed-form path counts against enumeration for `1 <= i <= n <= n_max`.
pub fn paths_suite(n_max: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for i in 1..=n {
            out.push(Check::compare(
                format!("w({},{i}) closed = brute", n - i),
                count_paths_brute(n - i, n - 1, i)?,
                count_paths_closed(n - i, i, n)?,
            ));
        }
    }
    Ok(out)
}

/// Reflection pairs bad paths with the paths from `(-i, i)`, for `n <= n_max`.
pub fn reflection_suite(n_max: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for i in 1..=n {
            let barrier = i as i64;
            let target = Point::new((n - i) as i64, n as i64 - 1);
            let bad: BTreeSet<_> = all_paths(Point::ORIGIN, target)
                .into_iter()
                .filter(|p| p.touches(barrier))
                .collect();
            let mut images = BTreeSet::new();
            let mut involution_ok = true;
            for p in &bad {
                let q = reflect_bad_path(p, barrier)?;
                involution_ok &= reflect_bad_path(&q, barrier)? == *p;
                images.insert(q);
            }
            let mirror: BTreeSet<_> = all_paths(Point::new(-barrier, barrier), target)
                .into_iter()
                .collect();
            let formula = binomial(2 * n as i64 - i as i64 - 1, n as i64)?;
            let label = format!("reflection n={n} i={i}");
            out.push(Check::compare(
                format!("{label} #bad = C(2n-i-1,n)"),
                formula,
                bad.len() as u64,
            ));
            out.push(Check::compare(
                format!("{label} image = mirror family"),
                true,
                images == mirror,
            ));
            out.push(Check::compare(
                format!("{label} involution"),
                true,
                involution_ok,
            ));
        }
    }
    Ok(out)
}

/// Both sides of the summation identity for `1 <= m <= m_max`, `1 <= n <= n_max`,
/// plus `W_n = C(2n, n)` from the diagonal.
pub fn identity_suite(m_max: u64, n_max: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            let (lhs, rhs) = identity_check(m, n)?;
            out.push(Check::compare(format!("identity m={m} n={n}"), rhs, lhs));
        }
    }
    for n in 1..=m_max.min(n_max) {
        let (lhs, _) = identity_check(n, n)?;
        let w = lhs / BigRational::from_integer(BigInt::from(n));
        let b = BigRational::from_integer(BigInt::from(central_binomial(n)?));
        out.push(Check::compare(
            format!("W_{n} from diagonal = C(2n,n)"),
            b,
            w,
        ));
    }
    Ok(out)
}

/// Direct word enumeration, the decomposed sum and `C(2n, n)` for `n <= n_max`.
pub fn codewords_suite(n_max: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let b = central_binomial(n)?;
        out.push(Check::compare(
            format!("|W_{n}| = C(2n,n)"),
            b,
            enumerate_codewords(n as usize).len() as u64,
        ));
        out.push(Check::compare(
            format!("decomposed W_{n} = C(2n,n)"),
            b,
            codeword_count_decomposed(n)?,
        ));
    }
    Ok(out)
}
