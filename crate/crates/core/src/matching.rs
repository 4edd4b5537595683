//! Perfect and partial matchings of 2n labeled points on a circle.
//!
//! Points are stored 0-based internally; every public constructor, accessor,
//! and text/JSON form speaks 1-based labels. A [`Matching`] is immutable after
//! construction, so it can be shared freely across threads.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Sentinel for an unmatched slot in a partner table.
const UNMATCHED: u32 = u32::MAX;

/// Validation errors for matchings, partial matchings, and label subsets.
/// Offending points are reported with their 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("point {0} appears more than once")]
    DuplicatePoint(u32),
    #[error("point {0} is not covered by any pair")]
    MissingPoint(u32),
    #[error("point {0} is outside 1..={1}")]
    OutOfRange(u32, u32),
    #[error("cannot parse matching text: {0}")]
    Parse(String),
}

/// A perfect matching of the points 1..=2n placed clockwise on a circle.
///
/// `partner[i]` is the 0-based point matched to point `i`; the table is an
/// involution without fixed points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    n: usize,
    partner: Vec<u32>,
}

impl Matching {
    /// Build a matching from `n` pairs of 1-based labels covering 1..=2n.
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Result<Self, MatchingError> {
        let two_n = 2 * n as u32;
        let mut partner = vec![UNMATCHED; 2 * n];
        for &(a, b) in pairs {
            for p in [a, b] {
                if p < 1 || p > two_n {
                    return Err(MatchingError::OutOfRange(p, two_n));
                }
            }
            if a == b {
                return Err(MatchingError::DuplicatePoint(a));
            }
            for p in [a, b] {
                if partner[(p - 1) as usize] != UNMATCHED {
                    return Err(MatchingError::DuplicatePoint(p));
                }
            }
            partner[(a - 1) as usize] = b - 1;
            partner[(b - 1) as usize] = a - 1;
        }
        if let Some(p) = partner.iter().position(|&q| q == UNMATCHED) {
            return Err(MatchingError::MissingPoint(p as u32 + 1));
        }
        Ok(Matching { n, partner })
    }

    /// Wrap a 0-based partner table that is already a fixed-point-free involution.
    pub(crate) fn from_partner_table(n: usize, partner: Vec<u32>) -> Self {
        debug_assert_eq!(partner.len(), 2 * n);
        debug_assert!((0..2 * n).all(|i| {
            let p = partner[i] as usize;
            p != i && p < 2 * n && partner[p] as usize == i
        }));
        Matching { n, partner }
    }

    /// Half the number of points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The chords as 1-based `(min, max)` pairs, sorted by first element.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.n);
        for i in 0..2 * self.n {
            let j = self.partner[i] as usize;
            if i < j {
                out.push((i as u32 + 1, j as u32 + 1));
            }
        }
        out
    }

    /// The chords as 0-based `(min, max)` pairs, sorted by first element.
    pub(crate) fn pairs0(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.n);
        for i in 0..2 * self.n {
            let j = self.partner[i] as usize;
            if i < j {
                out.push((i as u32, j as u32));
            }
        }
        out
    }

    /// The image of this matching under rotation of every point by `j` steps.
    ///
    /// Rotation by +1 sends the chord `(a, b)` to `(a+1, b+1)` with labels
    /// taken mod 2n; any integer `j` is accepted and reduced. This is a group
    /// action: `rotate(0)` is the identity and rotations compose additively.
    pub fn rotate(&self, j: i64) -> Matching {
        let two_n = 2 * self.n;
        let shift = j.rem_euclid(two_n as i64) as usize;
        let mut partner = vec![UNMATCHED; two_n];
        for i in 0..two_n {
            partner[(i + shift) % two_n] = ((self.partner[i] as usize + shift) % two_n) as u32;
        }
        Matching { n: self.n, partner }
    }

    /// Number of unordered chord pairs whose endpoints interleave on the circle.
    pub fn crossing_number(&self) -> usize {
        let chords = self.pairs0();
        let mut count = 0;
        for (idx, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[idx + 1..] {
                if chords_cross(a, b, c, d) {
                    count += 1;
                }
            }
        }
        count
    }

    /// The least `j >= 1` with `rotate(j)` equal to this matching.
    ///
    /// Always a divisor of 2n, so only divisors are probed, in increasing order.
    pub fn period(&self) -> usize {
        let two_n = 2 * self.n;
        for d in divisors(two_n) {
            if self.rotate(d as i64) == *self {
                return d;
            }
        }
        unreachable!("rotation by 2n is the identity");
    }

    /// Serialize to the `{"n": .., "pairs": [[a,b],..]}` JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matching serialization cannot fail")
    }
}

/// Whether chords `(a,b)` and `(c,d)` interleave, for 0-based `a<b`, `c<d`.
#[inline]
pub(crate) fn chords_cross(a: u32, b: u32, c: u32, d: u32) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Divisors of `n` in increasing order.
pub(crate) fn divisors(n: usize) -> Vec<usize> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

impl fmt::Display for Matching {
    /// Canonical text form: `(a,b)(c,d)...` with 1-based `(min,max)` pairs
    /// sorted by first element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({},{})", a, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching[n={}] {}", self.n, self)
    }
}

impl FromStr for Matching {
    type Err = MatchingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let pairs = parse_pair_list(s)?;
        Matching::from_pairs(pairs.len(), &pairs)
    }
}

/// Parse `(a,b)(c,d)...` into 1-based pairs; whitespace between pairs is allowed.
pub(crate) fn parse_pair_list(s: &str) -> Result<Vec<(u32, u32)>, MatchingError> {
    let mut pairs = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(MatchingError::Parse(format!("expected '(' at `{rest}`")));
        };
        let Some(close) = stripped.find(')') else {
            return Err(MatchingError::Parse("unterminated pair".into()));
        };
        let body = &stripped[..close];
        let mut it = body.split(',');
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(MatchingError::Parse(format!("expected `a,b` in `({body})`")));
        };
        let a: u32 = a
            .trim()
            .parse()
            .map_err(|_| MatchingError::Parse(format!("bad point `{a}`")))?;
        let b: u32 = b
            .trim()
            .parse()
            .map_err(|_| MatchingError::Parse(format!("bad point `{b}`")))?;
        pairs.push((a.min(b), a.max(b)));
        rest = stripped[close + 1..].trim_start();
    }
    pairs.sort_unstable();
    Ok(pairs)
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    n: usize,
    pairs: Vec<(u32, u32)>,
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatchingJson {
            n: self.n,
            pairs: self.pairs(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatchingJson::deserialize(deserializer)?;
        let pairs: Vec<(u32, u32)> = raw
            .pairs
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        Matching::from_pairs(raw.n, &pairs).map_err(D::Error::custom)
    }
}

/// A partial matching: some points paired, the rest unmatched.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialMatching {
    n: usize,
    partner: Vec<u32>,
}

impl PartialMatching {
    /// An all-unmatched partial matching on 2n points.
    pub fn empty(n: usize) -> Self {
        PartialMatching {
            n,
            partner: vec![UNMATCHED; 2 * n],
        }
    }

    /// Build from 1-based pairs; points not mentioned stay unmatched.
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Result<Self, MatchingError> {
        let two_n = 2 * n as u32;
        let mut pm = PartialMatching::empty(n);
        for &(a, b) in pairs {
            for p in [a, b] {
                if p < 1 || p > two_n {
                    return Err(MatchingError::OutOfRange(p, two_n));
                }
            }
            if a == b {
                return Err(MatchingError::DuplicatePoint(a));
            }
            for p in [a, b] {
                if pm.partner[(p - 1) as usize] != UNMATCHED {
                    return Err(MatchingError::DuplicatePoint(p));
                }
            }
            pm.partner[(a - 1) as usize] = b - 1;
            pm.partner[(b - 1) as usize] = a - 1;
        }
        Ok(pm)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn match_points0(&mut self, i: usize, j: usize) {
        debug_assert!(self.partner[i] == UNMATCHED && self.partner[j] == UNMATCHED && i != j);
        self.partner[i] = j as u32;
        self.partner[j] = i as u32;
    }

    pub(crate) fn is_unmatched0(&self, i: usize) -> bool {
        self.partner[i] == UNMATCHED
    }

    /// Matched chords as 1-based `(min, max)` pairs, sorted by first element.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 0..2 * self.n {
            let j = self.partner[i];
            if j != UNMATCHED && i < j as usize {
                out.push((i as u32 + 1, j + 1));
            }
        }
        out
    }

    /// Unmatched points, 1-based, increasing.
    pub fn unmatched(&self) -> Vec<u32> {
        (0..2 * self.n as u32)
            .filter(|&i| self.partner[i as usize] == UNMATCHED)
            .map(|i| i + 1)
            .collect()
    }

    /// Extend by additional pairs into a full [`Matching`].
    pub fn complete_with(&self, extra: &[(u32, u32)]) -> Result<Matching, MatchingError> {
        let mut pairs = self.pairs();
        pairs.extend(extra.iter().map(|&(a, b)| (a.min(b), a.max(b))));
        pairs.sort_unstable();
        Matching::from_pairs(self.n, &pairs)
    }

    /// Whether the matched chords are pairwise noncrossing.
    pub fn is_noncrossing(&self) -> bool {
        let chords: Vec<(u32, u32)> = self
            .pairs()
            .iter()
            .map(|&(a, b)| (a - 1, b - 1))
            .collect();
        for (idx, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[idx + 1..] {
                if chords_cross(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for PartialMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pairs() {
            write!(f, "({},{})", a, b)?;
        }
        Ok(())
    }
}

/// A subset of the circle points, stored 0-based, strictly increasing.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct LabelSubset {
    n: usize,
    members: Vec<u32>,
}

impl LabelSubset {
    /// Build from 1-based labels; duplicates and out-of-range labels are rejected.
    pub fn from_labels(n: usize, labels: &[u32]) -> Result<Self, MatchingError> {
        let two_n = 2 * n as u32;
        let mut members: Vec<u32> = Vec::with_capacity(labels.len());
        for &l in labels {
            if l < 1 || l > two_n {
                return Err(MatchingError::OutOfRange(l, two_n));
            }
            members.push(l - 1);
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(MatchingError::DuplicatePoint(w[0] + 1));
        }
        Ok(LabelSubset { n, members })
    }

    pub(crate) fn from_members0(n: usize, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|&m| (m as usize) < 2 * n));
        LabelSubset { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members as 1-based labels, increasing.
    pub fn labels(&self) -> Vec<u32> {
        self.members.iter().map(|&m| m + 1).collect()
    }

    pub(crate) fn members0(&self) -> &[u32] {
        &self.members
    }

    pub(crate) fn contains0(&self, p: u32) -> bool {
        self.members.binary_search(&p).is_ok()
    }

    /// The subset with every member shifted by `j` (mod 2n).
    pub fn shift(&self, j: i64) -> LabelSubset {
        let two_n = 2 * self.n as i64;
        let members = self
            .members
            .iter()
            .map(|&m| ((m as i64 + j).rem_euclid(two_n)) as u32)
            .collect();
        LabelSubset::from_members0(self.n, members)
    }

    /// Parse a comma-separated list of 1-based labels, e.g. `1,2,3,9,12`.
    pub fn parse_labels(n: usize, s: &str) -> Result<Self, MatchingError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(LabelSubset::from_members0(n, Vec::new()));
        }
        let labels: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let labels = labels.map_err(|e| MatchingError::Parse(format!("bad label list: {e}")))?;
        LabelSubset::from_labels(n, &labels)
    }
}

impl fmt::Display for LabelSubset {
    /// Comma-separated 1-based labels in increasing order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, l) in self.labels().iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}
