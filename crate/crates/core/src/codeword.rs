//! Code words and the bijection with permutations avoiding
//! {2431, 4231, 1432, 4132}.
//!
//! A code word of length `n` is a word over `{B, E} ∪ {2, 3, ...}` such that
//!
//! * **C1** letter `i` is `B`, `E` or an integer `j` with `2 <= j <= i`;
//! * **C2** a letter following an integer is an integer;
//! * **C3** consecutive integers are non-decreasing.
//!
//! Letter `i` records where the value `i + 1` was inserted when building the
//! permutation value by value: `B` at the front, `E` at the end, an integer
//! `j` when the insertion made position `j` the rightmost entry that has a
//! smaller entry on each side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{first_violation, PatternSet, Permutation};

/// The four forbidden patterns of the class.
pub fn forbidden_patterns() -> PatternSet {
    "2431,4231,1432,4132".parse().expect("static pattern set")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeLetter {
    /// Insert at the beginning.
    B,
    /// Insert at the end.
    E,
    /// Insert at the given 1-based position (always `>= 2`).
    Pos(u32),
}

impl CodeLetter {
    pub fn is_marker(self) -> bool {
        matches!(self, CodeLetter::B | CodeLetter::E)
    }
}

impl fmt::Display for CodeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeLetter::B => f.write_str("B"),
            CodeLetter::E => f.write_str("E"),
            CodeLetter::Pos(j) => write!(f, "{j}"),
        }
    }
}

impl FromStr for CodeLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" => Ok(CodeLetter::B),
            "E" => Ok(CodeLetter::E),
            t => t
                .parse::<u32>()
                .map(CodeLetter::Pos)
                .map_err(|_| Error::Parse(format!("bad code letter {t:?}"))),
        }
    }
}

/// Which condition a word breaks, with the 1-based letter index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordViolation {
    /// Integer letter out of the range `2..=i`.
    C1 { index: usize, letter: u32 },
    /// Marker following an integer.
    C2 { index: usize },
    /// Integer smaller than the integer before it.
    C3 { index: usize },
}

impl fmt::Display for WordViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WordViolation::C1 { index, letter } => write!(
                f,
                "C1 violated at letter {index}: {letter} is not in 2..={index}"
            ),
            WordViolation::C2 { index } => write!(
                f,
                "C2 violated at letter {index}: marker follows an integer"
            ),
            WordViolation::C3 { index } => write!(
                f,
                "C3 violated at letter {index}: integer smaller than its predecessor"
            ),
        }
    }
}

/// First violated condition, scanning left to right.
pub fn check_word(letters: &[CodeLetter]) -> Option<WordViolation> {
    let mut prev: Option<CodeLetter> = None;
    for (i, &letter) in letters.iter().enumerate() {
        let index = i + 1;
        if let CodeLetter::Pos(j) = letter {
            if j < 2 || j as usize > index {
                return Some(WordViolation::C1 { index, letter: j });
            }
        }
        if let Some(CodeLetter::Pos(p)) = prev {
            match letter {
                CodeLetter::B | CodeLetter::E => return Some(WordViolation::C2 { index }),
                CodeLetter::Pos(j) if j < p => return Some(WordViolation::C3 { index }),
                CodeLetter::Pos(_) => {}
            }
        }
        prev = Some(letter);
    }
    None
}

/// True iff `letters` satisfies C1, C2 and C3.
pub fn validate(letters: &[CodeLetter]) -> bool {
    check_word(letters).is_none()
}

/// A validated code word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeWord(Vec<CodeLetter>);

impl CodeWord {
    pub fn new(letters: Vec<CodeLetter>) -> Result<Self> {
        match check_word(&letters) {
            None => Ok(CodeWord(letters)),
            Some(v) => Err(Error::InvalidWord(v)),
        }
    }

    pub fn letters(&self) -> &[CodeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of the initial run of `B`/`E` markers.
    pub fn marker_len(&self) -> usize {
        self.0.iter().take_while(|l| l.is_marker()).count()
    }

    /// The integer letters after the marker segment.
    pub fn tail(&self) -> Vec<u32> {
        self.0[self.marker_len()..]
            .iter()
            .map(|l| match l {
                CodeLetter::Pos(j) => *j,
                _ => unreachable!("C2 keeps markers in the initial segment"),
            })
            .collect()
    }

    /// Comma-free form such as `BE233568`; only defined when all integers are <= 9.
    pub fn compact(&self) -> Option<String> {
        self.0
            .iter()
            .map(|l| match l {
                CodeLetter::Pos(j) if *j > 9 => None,
                l => Some(l.to_string()),
            })
            .collect()
    }
}

impl fmt::Display for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses the letters without validating C1–C3.
pub fn parse_letters(s: &str) -> Result<Vec<CodeLetter>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',').map(CodeLetter::from_str).collect()
    } else {
        s.chars()
            .map(|c| match c {
                'B' => Ok(CodeLetter::B),
                'E' => Ok(CodeLetter::E),
                d => d
                    .to_digit(10)
                    .map(CodeLetter::Pos)
                    .ok_or_else(|| Error::Parse(format!("bad code letter {d:?} in {s:?}"))),
            })
            .collect()
    }
}

impl FromStr for CodeWord {
    type Err = Error;

    /// Accepts `B,E,2,3` or the compact form `BE23` (single-digit integers only).
    fn from_str(s: &str) -> Result<Self> {
        CodeWord::new(parse_letters(s)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LetterRepr {
    Marker(String),
    Int(u32),
}

impl Serialize for CodeWord {
    /// JSON array form, e.g. `["B","E",2,3]`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<LetterRepr> = self
            .0
            .iter()
            .map(|l| match l {
                CodeLetter::Pos(j) => LetterRepr::Int(*j),
                m => LetterRepr::Marker(m.to_string()),
            })
            .collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CodeWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<LetterRepr>::deserialize(deserializer)?;
        let letters = v
            .into_iter()
            .map(|r| match r {
                LetterRepr::Int(j) => Ok(CodeLetter::Pos(j)),
                LetterRepr::Marker(m) => m.parse(),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CodeWord::new(letters).map_err(serde::de::Error::custom)
    }
}

/// Largest 1-based position `i` with a smaller entry somewhere to its left
/// and somewhere to its right; 0 if there is none.
pub fn p_statistic(p: &Permutation) -> usize {
    p_statistic_of(p.values())
}

fn p_statistic_of(values: &[u32]) -> usize {
    let n = values.len();
    if n < 3 {
        return 0;
    }
    let mut suffix_min = vec![u32::MAX; n + 1];
    for i in (0..n).rev() {
        suffix_min[i] = suffix_min[i + 1].min(values[i]);
    }
    let mut prefix_min = values[0];
    let mut best = 0;
    for i in 1..n - 1 {
        if values[i] > prefix_min && values[i] > suffix_min[i + 1] {
            best = i + 1;
        }
        prefix_min = prefix_min.min(values[i]);
    }
    best
}

/// Encodes an avoider of {2431, 4231, 1432, 4132} as a code word of length `n - 1`.
pub fn encode(p: &Permutation) -> Result<CodeWord> {
    if p.is_empty() {
        return Err(Error::Domain("cannot encode the empty permutation".into()));
    }
    let forbidden = forbidden_patterns();
    if let Some((pattern, positions)) = first_violation(p, &forbidden) {
        return Err(Error::ForbiddenPattern {
            pattern: pattern.compact(),
            positions,
        });
    }
    let word = encode_unchecked(p);
    debug_assert!(validate(&word));
    Ok(CodeWord(word))
}

fn encode_unchecked(p: &Permutation) -> Vec<CodeLetter> {
    let n = p.len();
    let mut restricted: Vec<u32> = Vec::with_capacity(n);
    // grow the restriction value by value, tracking where each new maximum lands
    let pos_of: Vec<usize> = {
        let mut v = vec![0; n + 1];
        for (i, &x) in p.values().iter().enumerate() {
            v[x as usize] = i;
        }
        v
    };
    restricted.push(1);
    let mut letters = Vec::with_capacity(n.saturating_sub(1));
    for m in 2..=n {
        let at = restricted
            .iter()
            .filter(|&&x| pos_of[x as usize] < pos_of[m])
            .count();
        restricted.insert(at, m as u32);
        let stat = p_statistic_of(&restricted);
        letters.push(if stat != 0 {
            CodeLetter::Pos(stat as u32)
        } else if at == 0 {
            CodeLetter::B
        } else {
            debug_assert_eq!(at, m - 1);
            CodeLetter::E
        });
    }
    letters
}

/// Rebuilds the permutation of length `|w| + 1` whose code word is `w`.
pub fn decode(w: &CodeWord) -> Permutation {
    let mut values: Vec<u32> = Vec::with_capacity(w.len() + 1);
    values.push(1);
    let mut stat = 0u32;
    for &letter in w.letters() {
        let next = values.len() as u32 + 1;
        match letter {
            CodeLetter::B => {
                debug_assert_eq!(stat, 0);
                values.insert(0, next);
            }
            CodeLetter::E => values.push(next),
            CodeLetter::Pos(j) if j == stat => values.push(next),
            CodeLetter::Pos(j) => {
                debug_assert!(j > stat);
                values.insert(j as usize - 1, next);
                stat = j;
            }
        }
    }
    Permutation::from_vec_unchecked(values)
}

/// Parses, validates and decodes in one step.
pub fn decode_letters(letters: Vec<CodeLetter>) -> Result<Permutation> {
    CodeWord::new(letters).map(|w| decode(&w))
}

/// All code words of length `n`, generated directly from C1–C3 in
/// lexicographic order of (marker segment length, markers, tail).
pub fn enumerate_codewords(n: usize) -> Vec<CodeWord> {
    if n == 0 {
        return vec![CodeWord(Vec::new())];
    }
    let mut out = Vec::new();
    for markers in 1..=n {
        let mut tails = Vec::new();
        let mut cur = Vec::with_capacity(n - markers);
        fill_tails(markers, n, 2, &mut cur, &mut tails);
        for bits in 0..1u64 << markers {
            let prefix: Vec<CodeLetter> = (0..markers)
                .map(|k| {
                    if bits >> (markers - 1 - k) & 1 == 0 {
                        CodeLetter::B
                    } else {
                        CodeLetter::E
                    }
                })
                .collect();
            for tail in &tails {
                let mut letters = prefix.clone();
                letters.extend(tail.iter().map(|&j| CodeLetter::Pos(j)));
                out.push(CodeWord(letters));
            }
        }
    }
    out
}

/// Non-decreasing tails for word positions `markers + 1..=n`, bounded by C1.
fn fill_tails(markers: usize, n: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let index = markers + cur.len() + 1;
    if index > n {
        out.push(cur.clone());
        return;
    }
    for j in min..=index as u32 {
        cur.push(j);
        fill_tails(markers, n, j, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::avoid::generate_avoiders;
    use crate::perm::{all_permutations, avoids_all};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn w(s: &str) -> CodeWord {
        s.parse().unwrap()
    }

    /// Direct transcription of the existential definition.
    fn p_statistic_oracle(p: &Permutation) -> usize {
        let v = p.values();
        (0..v.len())
            .filter(|&i| (0..i).any(|j| v[j] < v[i]) && (i + 1..v.len()).any(|k| v[k] < v[i]))
            .map(|i| i + 1)
            .max()
            .unwrap_or(0)
    }

    /// Every word of length `n` over B, E, 2..=n, filtered by C1–C3.
    fn brute_words(n: usize) -> BTreeSet<CodeWord> {
        let mut alphabet = vec![CodeLetter::B, CodeLetter::E];
        alphabet.extend((2..=n as u32).map(CodeLetter::Pos));
        let mut words = vec![Vec::new()];
        for _ in 0..n {
            words = words
                .into_iter()
                .flat_map(|prefix: Vec<CodeLetter>| {
                    alphabet.iter().map(move |&l| {
                        let mut x = prefix.clone();
                        x.push(l);
                        x
                    })
                })
                .collect();
        }
        words
            .into_iter()
            .filter(|x| validate(x))
            .map(CodeWord)
            .collect()
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&parse_letters("B,E,2,3,3,5,6,8").unwrap()));
        assert_eq!(
            check_word(&parse_letters("B,2,E").unwrap()),
            Some(WordViolation::C2 { index: 3 })
        );
        assert_eq!(
            check_word(&parse_letters("E,3").unwrap()),
            Some(WordViolation::C1 {
                index: 2,
                letter: 3
            })
        );
        assert_eq!(
            check_word(&parse_letters("B,E,3,2").unwrap()),
            Some(WordViolation::C3 { index: 4 })
        );
        assert_eq!(
            check_word(&parse_letters("2").unwrap()),
            Some(WordViolation::C1 {
                index: 1,
                letter: 2
            })
        );
        assert!(validate(&[]));
    }

    #[test]
    fn text_forms() {
        assert_eq!(w("BE233568"), w("B,E,2,3,3,5,6,8"));
        assert_eq!(w("BE233568").to_string(), "B,E,2,3,3,5,6,8");
        assert_eq!(w("B,E,2,3,3,5,6,8").compact().unwrap(), "BE233568");
        let long = "B,E,E,E,E,E,E,E,E,10";
        assert_eq!(w(long).to_string(), long);
        assert!(w(long).compact().is_none());
        assert!("BX".parse::<CodeWord>().is_err());
    }

    #[test]
    fn json_form() {
        let word = w("B,E,2,3,3,5,6,8");
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, r#"["B","E",2,3,3,5,6,8]"#);
        assert_eq!(serde_json::from_str::<CodeWord>(&json).unwrap(), word);
        assert!(serde_json::from_str::<CodeWord>(r#"["B",2,"E"]"#).is_err());
    }

    #[test]
    fn p_statistic_examples() {
        assert_eq!(p_statistic(&p("2413")), 2);
        assert_eq!(p_statistic(&p("123456")), 0);
        assert_eq!(p_statistic(&p("")), 0);
        assert_eq!(p_statistic(&p("245178396")), 8);
        assert_eq!(p_statistic(&p("24513")), 3);
    }

    #[test]
    fn p_statistic_matches_oracle() {
        for n in 0..=7 {
            for q in all_permutations(n) {
                assert_eq!(p_statistic(&q), p_statistic_oracle(&q), "{q}");
            }
        }
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&p("245178396")).unwrap(), w("B,E,2,3,3,5,6,8"));
        assert_eq!(encode(&p("21")).unwrap(), w("B"));
        assert_eq!(encode(&p("12")).unwrap(), w("E"));
        assert!(encode(&p("1")).unwrap().is_empty());
        assert_eq!(
            encode(&p("2431")).unwrap_err(),
            Error::ForbiddenPattern {
                pattern: "2431".into(),
                positions: vec![1, 2, 3, 4]
            }
        );
        assert!(encode(&p("")).is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&w("B,E,2,3,3,5,6,8")), p("245178396"));
        assert_eq!(decode(&w("")), p("1"));
        // 1 -> 12 -> 132 -> 1324
        assert_eq!(decode(&w("E,2,2")), p("1324"));
        assert_eq!(encode(&p("1324")).unwrap(), w("E,2,2"));
        assert!(decode_letters(parse_letters("B,2,E").unwrap()).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let two: Vec<String> = enumerate_codewords(2)
            .iter()
            .map(|x| x.compact().unwrap())
            .collect();
        let two: BTreeSet<_> = two.into_iter().collect();
        assert_eq!(
            two,
            ["BB", "BE", "EB", "EE", "B2", "E2"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        assert_eq!(enumerate_codewords(1).len(), 2);
        assert_eq!(enumerate_codewords(3).len(), 20);
        assert_eq!(enumerate_codewords(0), vec![w("")]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 0..=6 {
            let direct: BTreeSet<_> = enumerate_codewords(n).into_iter().collect();
            assert_eq!(direct.len(), enumerate_codewords(n).len());
            assert_eq!(direct, brute_words(n), "n={n}");
        }
    }

    #[test]
    fn bijection_small() {
        let forbidden = forbidden_patterns();
        for n in 1..=7 {
            let avoiders = generate_avoiders(&forbidden, n).unwrap();
            let mut image = BTreeSet::new();
            for q in &avoiders {
                let word = encode(q).unwrap();
                assert_eq!(decode(&word), *q);
                image.insert(word);
            }
            let words: BTreeSet<_> = enumerate_codewords(n - 1).into_iter().collect();
            assert_eq!(image, words);
            for word in &words {
                let q = decode(word);
                assert!(avoids_all(&q, &forbidden));
                assert_eq!(encode(&q).unwrap(), *word);
            }
        }
    }

    #[test]
    fn zero_statistic_means_maximum_at_an_end() {
        for q in generate_avoiders(&forbidden_patterns(), 7).unwrap() {
            for m in 1..=7 {
                let r = q.restrict(m);
                if p_statistic(&r) == 0 {
                    let pos = r.position_of(m as u32).unwrap();
                    assert!(pos == 1 || pos == m, "{r}");
                }
            }
        }
    }
}
