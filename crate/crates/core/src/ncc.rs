//! Noncrossing construction of partial matchings from label subsets, the
//! subset <-> one-crossing bijection, completion enumeration for the
//! two- and three-crossing types, and rotation-closed subset generation.
//!
//! The construction runs rounds with offsets 1, 3, 5, ...: in each round the
//! still-unmatched seed points are scanned in increasing label order, and a
//! seed `i` is matched to `i + offset` (mod 2n) when that target is outside
//! the seed set and still free. Individual rounds may match nothing (all
//! targets taken) and the construction simply moves on; but once every odd
//! offset mod 2n has been swept without progress the state can never change
//! again, and that is surfaced as [`NccError::Stalled`] instead of looping.

use thiserror::Error;

use crate::matching::{LabelSubset, Matching, PartialMatching};
use crate::skeleton::{classify, CrossingKind, CrossingTypeClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NccError {
    #[error("seed subset has {size} members but at most n = {n} are allowed")]
    SubsetTooLarge { size: usize, n: usize },
    #[error("no progress over a full sweep of offsets ending at {offset}; unmatched seeds remain: {unmatched:?}")]
    Stalled { offset: usize, unmatched: Vec<u32> },
    #[error("completion needs exactly {expected} unmatched points, found {got}")]
    WrongUnmatchedCount { expected: usize, got: usize },
    #[error("matching has {crossings} crossings, expected exactly one")]
    NotOneCrossing { crossings: usize },
    #[error("target {target:?} does not fit {unmatched} unmatched points")]
    ArityMismatch {
        target: CrossingKind,
        unmatched: usize,
    },
    #[error("shift {shift} is not a positive divisor of {two_n}")]
    InvalidShift { shift: usize, two_n: usize },
    #[error("no subset of size {size} is closed under the shift (orbit length {orbit_len})")]
    IndivisibleSize { size: usize, orbit_len: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ScanOrder {
    Increasing,
    Decreasing,
}

/// Build the noncrossing partial matching seeded by `s`.
///
/// Every seed ends up matched to a non-seed point; the output has exactly
/// `|s|` chords and `2n - 2|s|` unmatched points.
pub fn ncc(n: usize, s: &LabelSubset) -> Result<PartialMatching, NccError> {
    ncc_scanned(n, s, ScanOrder::Increasing)
}

fn ncc_scanned(n: usize, s: &LabelSubset, order: ScanOrder) -> Result<PartialMatching, NccError> {
    if s.len() > n {
        return Err(NccError::SubsetTooLarge { size: s.len(), n });
    }
    let two_n = 2 * n;
    let mut pm = PartialMatching::empty(n);
    let mut pending: Vec<u32> = s.members0().to_vec();
    if order == ScanOrder::Decreasing {
        pending.reverse();
    }
    let mut offset = 1usize;
    let mut idle_rounds = 0usize;
    while !pending.is_empty() {
        let mut matched_this_round = false;
        pending.retain(|&i| {
            let target = (i as usize + offset) % two_n;
            if !s.contains0(target as u32) && pm.is_unmatched0(target) {
                pm.match_points0(i as usize, target);
                matched_this_round = true;
                false
            } else {
                true
            }
        });
        if matched_this_round {
            idle_rounds = 0;
        } else {
            idle_rounds += 1;
            // There are n odd offsets mod 2n; a full idle sweep repeats forever.
            if idle_rounds >= n {
                let mut unmatched: Vec<u32> = pending.iter().map(|&i| i + 1).collect();
                unmatched.sort_unstable();
                return Err(NccError::Stalled { offset, unmatched });
            }
        }
        offset += 2;
    }
    Ok(pm)
}

/// Close a partial matching with exactly four unmatched points `a<b<c<d`
/// into a full matching by adding the unique interleaving pair `(a,c)(b,d)`.
pub fn complete_one_crossing(pm: &PartialMatching) -> Result<Matching, NccError> {
    let unmatched = pm.unmatched();
    if unmatched.len() != 4 {
        return Err(NccError::WrongUnmatchedCount {
            expected: 4,
            got: unmatched.len(),
        });
    }
    let (a, b, c, d) = (unmatched[0], unmatched[1], unmatched[2], unmatched[3]);
    Ok(pm
        .complete_with(&[(a, c), (b, d)])
        .expect("unmatched points are disjoint from the matched ones"))
}

/// The one-crossing matching determined by an (n-2)-element subset.
pub fn one_crossing_from_subset(n: usize, s: &LabelSubset) -> Result<Matching, NccError> {
    complete_one_crossing(&ncc(n, s)?)
}

/// Invert [`one_crossing_from_subset`]: recover the seed subset of a
/// one-crossing matching.
///
/// The four endpoints of the two crossing chords cut the circle into four
/// arcs, and every noncrossing chord lies inside one of them. Each chord is
/// represented by whichever endpoint comes first in the clockwise walk of its
/// arc, starting just after the arc's boundary point.
pub fn subset_from_one_crossing(m: &Matching) -> Result<LabelSubset, NccError> {
    let chords = crossing_chords(m);
    if m.crossing_number() != 1 {
        return Err(NccError::NotOneCrossing {
            crossings: m.crossing_number(),
        });
    }
    let [(a1, b1), (a2, b2)] = chords[..] else {
        unreachable!("one crossing means exactly one crossing chord pair");
    };
    let mut bounds = [a1, b1, a2, b2];
    bounds.sort_unstable();
    let two_n = 2 * m.n();
    let dist = |from: u32, to: u32| ((to as i64 - from as i64).rem_euclid(two_n as i64)) as u32;
    // Arc start for a non-boundary point: the boundary it follows clockwise.
    let arc_start = |p: u32| -> u32 {
        match bounds.iter().rev().find(|&&b| b < p) {
            Some(&b) => b,
            None => bounds[3],
        }
    };

    let mut picked = Vec::with_capacity(m.n() - 2);
    for (x, y) in m.pairs0() {
        if bounds.contains(&x) {
            continue;
        }
        let u = arc_start(x);
        debug_assert_eq!(u, arc_start(y), "noncrossing chord must stay in one arc");
        picked.push(if dist(u, x) < dist(u, y) { x } else { y });
    }
    Ok(LabelSubset::from_members0(m.n(), picked))
}

/// The chord pairs of `m` that cross, flattened as 0-based `(min, max)` chords.
fn crossing_chords(m: &Matching) -> Vec<(u32, u32)> {
    let pairs = m.pairs0();
    let mut out = Vec::new();
    for (idx, &(a, b)) in pairs.iter().enumerate() {
        let crosses = pairs
            .iter()
            .enumerate()
            .any(|(j, &(c, d))| j != idx && crate::matching::chords_cross(a, b, c, d));
        if crosses {
            out.push((a, b));
        }
    }
    out
}

/// All ways to pair up the unmatched points of `pm` so that the completed
/// matching classifies as `target`.
///
/// For `T(k)` the partial matching must have 2k unmatched points and exactly
/// `k` completions exist; for `R(k)` it must have 6k unmatched points closed
/// under rotation by 2n/3, and the completions (additionally required to be
/// fixed by that rotation) number 2k for k >= 2 and 1 for k = 1. Candidates
/// are enumerated exhaustively and filtered through the classifier.
pub fn list_completions(
    pm: &PartialMatching,
    target: CrossingTypeClass,
) -> Result<Vec<Matching>, NccError> {
    let unmatched = pm.unmatched();
    let n = pm.n();
    let mismatch = || NccError::ArityMismatch {
        target: target.kind,
        unmatched: unmatched.len(),
    };
    let third_turn = match target.kind {
        CrossingKind::T(k) => {
            if unmatched.len() != 2 * k {
                return Err(mismatch());
            }
            None
        }
        CrossingKind::R(k) => {
            if unmatched.len() != 6 * k || !n.is_multiple_of(3) {
                return Err(mismatch());
            }
            let shift = (2 * n / 3) as i64;
            let closed = unmatched.iter().all(|&p| {
                let q = ((p as i64 - 1 + shift).rem_euclid(2 * n as i64) + 1) as u32;
                unmatched.binary_search(&q).is_ok()
            });
            if !closed {
                return Err(mismatch());
            }
            Some(shift)
        }
        CrossingKind::OneCrossing | CrossingKind::Other => return Err(mismatch()),
    };

    let mut out = Vec::new();
    for_each_pairing(&unmatched, &mut |pairs| {
        let full = pm
            .complete_with(pairs)
            .expect("pairing covers exactly the unmatched points");
        if let Some(shift) = third_turn {
            if full.rotate(shift) != full {
                return;
            }
        }
        if classify(&full) == Ok(target) {
            out.push(full);
        }
    });
    Ok(out)
}

/// Visit every perfect pairing of `points`, smallest point matched first,
/// partners in increasing order.
fn for_each_pairing(points: &[u32], visit: &mut impl FnMut(&[(u32, u32)])) {
    fn recurse(
        remaining: &[u32],
        acc: &mut Vec<(u32, u32)>,
        visit: &mut impl FnMut(&[(u32, u32)]),
    ) {
        let Some((&first, rest)) = remaining.split_first() else {
            visit(acc);
            return;
        };
        for (idx, &partner) in rest.iter().enumerate() {
            let mut others = rest.to_vec();
            others.remove(idx);
            acc.push((first, partner));
            recurse(&others, acc, visit);
            acc.pop();
        }
    }
    if !points.len().is_multiple_of(2) {
        return;
    }
    let mut acc = Vec::with_capacity(points.len() / 2);
    recurse(points, &mut acc, visit);
}

/// All subsets of the 2n points with the given size that are closed under
/// the map `i -> i + shift` (mod 2n), in increasing lexicographic order.
///
/// Orbits under the shift all have length `2n / shift`, so such subsets are
/// unions of whole orbits and there are `C(shift, size * shift / 2n)` of them.
pub fn symmetric_subsets(
    n: usize,
    size: usize,
    shift: usize,
) -> Result<Vec<LabelSubset>, NccError> {
    let two_n = 2 * n;
    if shift == 0 || !two_n.is_multiple_of(shift) {
        return Err(NccError::InvalidShift { shift, two_n });
    }
    let orbit_len = two_n / shift;
    if !size.is_multiple_of(orbit_len) {
        return Err(NccError::IndivisibleSize { size, orbit_len });
    }
    let picks = size / orbit_len;

    let mut out = Vec::new();
    for reps in combinations(shift, picks) {
        let mut members = Vec::with_capacity(size);
        for &r in &reps {
            for m in 0..orbit_len {
                members.push((r as usize + m * shift) as u32);
            }
        }
        out.push(LabelSubset::from_members0(n, members));
    }
    out.sort_unstable();
    Ok(out)
}

/// k-element subsets of {0, .., pool-1} in lexicographic order.
fn combinations(pool: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k > pool {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| i as u32).collect());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + pool - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
