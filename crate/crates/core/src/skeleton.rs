//! Skeleton reduction and crossing-type classification.
//!
//! The skeleton of a matching is what survives repeatedly deleting chords
//! that cross nothing and whose endpoints are circularly adjacent within the
//! point set still covered by the remaining chords. A chord that separates
//! two crossings keeps covered points on both sides forever, so it can never
//! become adjacent and stays in the skeleton; the skeleton size therefore
//! identifies the crossing type.

use thiserror::Error;

use crate::matching::{chords_cross, Matching};

/// How ties among simultaneously removable chords are broken.
///
/// The reduction result is order-independent (a tested property); the second
/// order exists so tests can check that claim rather than assume it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeletionOrder {
    IncreasingMin,
    DecreasingMin,
}

/// Outcome of a skeleton reduction: surviving chords and the deletion trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonReduction {
    /// Surviving chords, 1-based `(min, max)`, sorted by first element.
    pub skeleton: Vec<(u32, u32)>,
    /// Deleted chords in deletion order, 1-based.
    pub removed: Vec<(u32, u32)>,
}

/// Crossing-type classification of a matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingKind {
    /// Exactly one crossing; the skeleton is the two crossing chords.
    OneCrossing,
    /// Two crossings with a k-chord skeleton.
    T(usize),
    /// Three crossings in the threefold-symmetric pattern with a 3k-chord skeleton.
    R(usize),
    /// No crossing, or four or more crossings.
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingTypeClass {
    pub kind: CrossingKind,
    pub skeleton_size: usize,
}

impl CrossingTypeClass {
    pub fn one_crossing() -> Self {
        CrossingTypeClass {
            kind: CrossingKind::OneCrossing,
            skeleton_size: 2,
        }
    }

    pub fn t(k: usize) -> Self {
        CrossingTypeClass {
            kind: CrossingKind::T(k),
            skeleton_size: k,
        }
    }

    pub fn r(k: usize) -> Self {
        CrossingTypeClass {
            kind: CrossingKind::R(k),
            skeleton_size: 3 * k,
        }
    }

    pub fn other(skeleton_size: usize) -> Self {
        CrossingTypeClass {
            kind: CrossingKind::Other,
            skeleton_size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    /// Three crossings whose skeleton is not invariant under rotation by 2n/3.
    /// Legal input; the symmetric classification just does not apply to it.
    #[error("three-crossing matching with a {skeleton_size}-chord skeleton does not fit the symmetric pattern")]
    NotClassifiable { skeleton_size: usize },
}

/// Reduce with the default increasing-label deletion order.
pub fn reduce_to_skeleton(m: &Matching) -> SkeletonReduction {
    reduce_to_skeleton_ordered(m, DeletionOrder::IncreasingMin)
}

/// Reduce, breaking removal ties by the given order.
pub fn reduce_to_skeleton_ordered(m: &Matching, order: DeletionOrder) -> SkeletonReduction {
    let two_n = 2 * m.n();
    let mut chords = m.pairs0();
    let mut covered = vec![true; two_n];
    let mut removed = Vec::new();

    loop {
        let mut pick: Option<usize> = None;
        for (idx, &(a, b)) in chords.iter().enumerate() {
            let crosses = chords
                .iter()
                .enumerate()
                .any(|(j, &(c, d))| j != idx && chords_cross(a, b, c, d));
            if crosses || !adjacent_in_covered(&covered, a as usize, b as usize) {
                continue;
            }
            pick = match (pick, order) {
                (None, _) => Some(idx),
                (Some(best), DeletionOrder::IncreasingMin) if chords[best].0 > a => Some(idx),
                (Some(best), DeletionOrder::DecreasingMin) if chords[best].0 < a => Some(idx),
                (Some(best), _) => Some(best),
            };
        }
        let Some(idx) = pick else { break };
        let (a, b) = chords.swap_remove(idx);
        covered[a as usize] = false;
        covered[b as usize] = false;
        removed.push((a + 1, b + 1));
    }

    let mut skeleton: Vec<(u32, u32)> = chords.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    skeleton.sort_unstable();
    SkeletonReduction { skeleton, removed }
}

/// Whether covered points `a` and `b` are neighbors in the circular order of
/// the covered set, i.e. one of the two open arcs between them is empty.
fn adjacent_in_covered(covered: &[bool], a: usize, b: usize) -> bool {
    let two_n = covered.len();
    let clear_between = |from: usize, to: usize| {
        let mut p = (from + 1) % two_n;
        while p != to {
            if covered[p] {
                return false;
            }
            p = (p + 1) % two_n;
        }
        true
    };
    clear_between(a, b) || clear_between(b, a)
}

/// Classify a matching by crossing number and skeleton size.
///
/// One crossing maps to [`CrossingKind::OneCrossing`]; two crossings to
/// `T(skeleton size)`; a three-crossing matching whose skeleton is invariant
/// under rotation by 2n/3 to `R(skeleton size / 3)`. Other three-crossing
/// matchings are not classifiable; zero or four-plus crossings are `Other`.
pub fn classify(m: &Matching) -> Result<CrossingTypeClass, ClassifyError> {
    let reduction = reduce_to_skeleton(m);
    let size = reduction.skeleton.len();
    match m.crossing_number() {
        1 => {
            debug_assert_eq!(size, 2);
            Ok(CrossingTypeClass::one_crossing())
        }
        2 => Ok(CrossingTypeClass::t(size)),
        3 => {
            let n = m.n();
            if n.is_multiple_of(3)
                && size.is_multiple_of(3)
                && skeleton_rotation_invariant(&reduction.skeleton, 2 * n, 2 * n / 3)
            {
                Ok(CrossingTypeClass::r(size / 3))
            } else {
                Err(ClassifyError::NotClassifiable {
                    skeleton_size: size,
                })
            }
        }
        _ => Ok(CrossingTypeClass::other(size)),
    }
}

fn skeleton_rotation_invariant(skeleton: &[(u32, u32)], two_n: usize, shift: usize) -> bool {
    skeleton.iter().all(|&(a, b)| {
        let a0 = (a as usize - 1 + shift) % two_n;
        let b0 = (b as usize - 1 + shift) % two_n;
        let rotated = (a0.min(b0) as u32 + 1, a0.max(b0) as u32 + 1);
        skeleton.binary_search(&rotated).is_ok()
    })
}
