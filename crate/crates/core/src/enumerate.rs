//! Exhaustive enumeration of perfect matchings, with crossing-count pruning.
//!
//! The enumerator always pairs the smallest unmatched point first and scans
//! candidate partners in increasing order, so the stream order is canonical
//! and reproducible. When a crossing filter is set, a branch is abandoned as
//! soon as its partial crossing count exceeds the filter; crossings only
//! accumulate as chords are added, so pruning never loses a valid matching.

use std::collections::BTreeMap;

use crate::matching::{chords_cross, Matching};

const UNSET: u32 = u32::MAX;

/// Stream every perfect matching of 2n points, each exactly once.
///
/// With `k_filter` set, yields exactly the matchings whose crossing number
/// equals the filter; the filter also drives branch pruning. A filter above
/// the pairwise maximum n(n-1)/2 yields an empty stream.
pub fn enumerate_matchings(n: usize, k_filter: Option<usize>) -> MatchingIter {
    MatchingIter::new(n, k_filter)
}

struct Frame {
    anchor: u32,
    /// Next partner candidate to try for `anchor`.
    candidate: u32,
    /// Partner currently placed at this frame, if any.
    placed: Option<u32>,
    /// Crossing count before this frame's chord was placed.
    crossings_before: usize,
}

/// Depth-first iterator over perfect matchings. See [`enumerate_matchings`].
pub struct MatchingIter {
    n: usize,
    k_filter: Option<usize>,
    partner: Vec<u32>,
    stack: Vec<Frame>,
    crossings: usize,
    done: bool,
}

impl MatchingIter {
    fn new(n: usize, k_filter: Option<usize>) -> Self {
        assert!(n >= 1, "need at least one chord");
        MatchingIter {
            n,
            k_filter,
            partner: vec![UNSET; 2 * n],
            stack: vec![Frame {
                anchor: 0,
                candidate: 1,
                placed: None,
                crossings_before: 0,
            }],
            crossings: 0,
            done: false,
        }
    }

    fn smallest_unmatched(&self) -> Option<u32> {
        self.partner.iter().position(|&p| p == UNSET).map(|i| i as u32)
    }

    /// Crossings the chord `(a, b)` would add against the placed chords.
    fn added_crossings(&self, a: u32, b: u32) -> usize {
        self.stack
            .iter()
            .filter_map(|f| f.placed.map(|p| (f.anchor, p)))
            .filter(|&(x, y)| chords_cross(x, y, a, b))
            .count()
    }
}

impl Iterator for MatchingIter {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        let two_n = 2 * self.n as u32;
        loop {
            let Some(top) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            let anchor = top.anchor;
            // Undo this frame's previous placement before trying the next candidate.
            if let Some(p) = top.placed.take() {
                self.crossings = top.crossings_before;
                self.partner[anchor as usize] = UNSET;
                self.partner[p as usize] = UNSET;
            }

            let mut placed = false;
            while self.stack.last().unwrap().candidate < two_n {
                let p = self.stack.last().unwrap().candidate;
                self.stack.last_mut().unwrap().candidate += 1;
                if self.partner[p as usize] != UNSET {
                    continue;
                }
                let added = self.added_crossings(anchor, p);
                if let Some(k) = self.k_filter {
                    if self.crossings + added > k {
                        continue;
                    }
                }
                let top = self.stack.last_mut().unwrap();
                top.crossings_before = self.crossings;
                top.placed = Some(p);
                self.crossings += added;
                self.partner[anchor as usize] = p;
                self.partner[p as usize] = anchor;
                placed = true;
                break;
            }
            if !placed {
                self.stack.pop();
                continue;
            }

            match self.smallest_unmatched() {
                None => {
                    if self.k_filter.is_none_or(|k| self.crossings == k) {
                        return Some(Matching::from_partner_table(self.n, self.partner.clone()));
                    }
                    // Filtered out; the top frame resumes scanning next iteration.
                }
                Some(a) => self.stack.push(Frame {
                    anchor: a,
                    candidate: a + 1,
                    placed: None,
                    crossings_before: 0,
                }),
            }
        }
    }
}

/// Number of matchings with exactly `k` crossings fixed by rotation by `j`.
///
/// `j` may be any integer; `count_fixed(n, k, 2n)` is the size of the whole
/// crossing class.
pub fn count_fixed(n: usize, k: usize, j: i64) -> u64 {
    enumerate_matchings(n, Some(k))
        .filter(|m| m.rotate(j) == *m)
        .count() as u64
}

/// Histogram of rotation periods over the matchings with exactly `k` crossings.
///
/// Keys are divisors of 2n. Since a matching is fixed by rotation by `j`
/// exactly when its period divides `j`, one enumeration pass recovers the
/// fixed-point count for every `j` at once.
pub fn period_histogram(n: usize, k: usize) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for m in enumerate_matchings(n, Some(k)) {
        *hist.entry(m.period()).or_insert(0u64) += 1;
    }
    hist
}

/// Fixed-point count for rotation by `j`, read off a period histogram.
pub fn fixed_from_histogram(hist: &BTreeMap<usize, u64>, two_n: usize, j: i64) -> u64 {
    let j = j.rem_euclid(two_n as i64) as usize;
    let j = if j == 0 { two_n } else { j };
    hist.iter()
        .filter(|&(&d, _)| j % d == 0)
        .map(|(_, &c)| c)
        .sum()
}

/// (2n-1)!! — the total number of perfect matchings of 2n points.
pub fn double_factorial_odd(n: usize) -> u64 {
    (0..n).map(|i| 2 * i as u64 + 1).product()
}

/// The n-th Catalan number.
pub fn catalan(n: usize) -> u64 {
    let n = n as u128;
    let mut c: u128 = 1;
    for i in 0..n {
        c = c * (2 * n - i) / (i + 1);
    }
    (c / (n + 1)) as u64
}
