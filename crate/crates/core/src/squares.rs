//! Square occurrences: primitively rooted ones, square prefixes and
//! distinct squares.

use std::collections::HashSet;

use serde::Serialize;

use crate::repetitions::runs_lyndon;
use crate::text::{is_primitive, Interval};

/// Occurrence of the square `uu` starting at `pos` with `|u| = root_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SquareOcc {
    pub pos: usize,
    pub root_len: usize,
}

impl SquareOcc {
    pub fn span(&self) -> Interval {
        Interval::new(self.pos, self.pos + 2 * self.root_len - 1)
    }
}

fn is_square_at(t: &[u8], pos: usize, root_len: usize) -> bool {
    let a = pos - 1;
    t[a..a + root_len] == t[a + root_len..a + 2 * root_len]
}

/// Every square occurrence regardless of primitivity, sorted by
/// `(pos, root_len)`.
pub fn square_occurrences(t: &[u8]) -> Vec<SquareOcc> {
    let n = t.len();
    let mut out = Vec::new();
    for pos in 1..=n {
        for root_len in 1..=(n + 1 - pos) / 2 {
            if is_square_at(t, pos, root_len) {
                out.push(SquareOcc { pos, root_len });
            }
        }
    }
    out
}

/// Exhaustive scan for primitively rooted square occurrences.
pub fn psq_occurrences_bruteforce(t: &[u8]) -> Vec<SquareOcc> {
    square_occurrences(t)
        .into_iter()
        .filter(|occ| is_primitive(&t[occ.pos - 1..occ.pos - 1 + occ.root_len]).unwrap())
        .collect()
}

/// Primitively rooted square occurrences counted as the sum of
/// `len - 2p + 1` over all runs.
pub fn psq_count_via_runs(t: &[u8]) -> usize {
    runs_lyndon(t).iter().map(|r| r.square_count()).sum()
}

/// Root lengths `L` such that `t[1..2L]` is a square, ascending.
pub fn square_prefixes(t: &[u8]) -> Vec<usize> {
    (1..=t.len() / 2)
        .filter(|&l| is_square_at(t, 1, l))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SquarePrefix {
    pub root_len: usize,
    pub primitive: bool,
}

pub fn square_prefixes_flagged(t: &[u8]) -> Vec<SquarePrefix> {
    square_prefixes(t)
        .into_iter()
        .map(|root_len| SquarePrefix {
            root_len,
            primitive: is_primitive(&t[..root_len]).unwrap(),
        })
        .collect()
}

/// Number of distinct square strings occurring in `t`.
pub fn distinct_squares_count(t: &[u8]) -> usize {
    square_occurrences(t)
        .into_iter()
        .map(|occ| occ.span().of(t))
        .collect::<HashSet<&[u8]>>()
        .len()
}

/// Occurrences of squares whose root is not primitive.
pub fn nonprimitive_square_count(t: &[u8]) -> usize {
    square_occurrences(t)
        .into_iter()
        .filter(|occ| !is_primitive(&t[occ.pos - 1..occ.pos - 1 + occ.root_len]).unwrap())
        .count()
}
