//! Runs (maximal repetitions), their lexicographic order and L-roots.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lyndon::{is_lyndon, lyndon_tree};
use crate::text::{compare, smallest_period, Interval, LexOrder};

/// A maximal repetition `t[start..end]` with smallest period `period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl Run {
    pub fn new(start: usize, end: usize, period: usize) -> Self {
        Run { start, end, period }
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.start, self.end)
    }

    /// Number of primitively rooted square occurrences inside the run.
    pub fn square_count(&self) -> usize {
        self.len() + 1 - 2 * self.period
    }
}

/// Every maximal repetition, straight from the definition. Cubic time.
pub fn runs_naive(t: &[u8]) -> Vec<Run> {
    let n = t.len();
    let period = |a: usize, b: usize| smallest_period(&t[a - 1..b]).unwrap();
    let mut runs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let p = period(i, j);
            if 2 * p > j - i + 1 {
                continue;
            }
            let left_maximal = i == 1 || period(i - 1, j) != p;
            let right_maximal = j == n || period(i, j + 1) != p;
            if left_maximal && right_maximal {
                runs.push(Run::new(i, j, p));
            }
        }
    }
    runs.sort();
    runs
}

/// Extends the periodicity of `[i..j]` with period `p` as far as it goes
/// in both directions.
fn extend(t: &[u8], i: usize, j: usize, p: usize) -> (usize, usize) {
    let (mut s, mut e) = (i, j);
    while s > 1 && s - 1 + p <= t.len() && t[s - 2] == t[s - 2 + p] {
        s -= 1;
    }
    while e < t.len() && e + 1 > p && t[e] == t[e - p] {
        e += 1;
    }
    (s, e)
}

/// Every maximal repetition, from the right nodes of the two Lyndon trees.
///
/// Each run has an L-root occurrence that is the longest Lyndon word at its
/// position under one of the two orders, so it shows up as a right node;
/// extending that node's periodicity recovers the run.
pub fn runs_lyndon(t: &[u8]) -> Vec<Run> {
    if t.is_empty() {
        return Vec::new();
    }
    let mut runs = BTreeSet::new();
    for order in LexOrder::BOTH {
        let tree = lyndon_tree(t, order).expect("nonempty");
        for node in tree.nodes().iter().filter(|n| n.is_right_child) {
            let Interval { start, end } = node.interval;
            let p = end - start + 1;
            let (s, e) = extend(t, start, end, p);
            if e - s + 1 >= 2 * p {
                runs.insert(Run::new(s, e, p));
            }
        }
    }
    runs.into_iter().collect()
}

fn check_run(t: &[u8], run: Run) -> Result<()> {
    let bad = Error::NotARun {
        start: run.start,
        end: run.end,
        period: run.period,
    };
    if run.start == 0 || run.start >= run.end || run.end > t.len() || run.period == 0 {
        return Err(bad);
    }
    if smallest_period(&t[run.start - 1..run.end])? != run.period
        || 2 * run.period > run.len()
        || extend(t, run.start, run.end, run.period) != (run.start, run.end)
    {
        return Err(bad);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunOrder {
    pub order: LexOrder,
    /// The run touches the end of the text; the order was fixed by
    /// convention rather than by comparing symbols.
    pub sentinel_resolved: bool,
}

/// The order under which `t[j+1] < t[j+1-p]`. A run ending at the last
/// position gets `Order0`.
pub fn run_order(t: &[u8], run: Run) -> Result<RunOrder> {
    check_run(t, run)?;
    Ok(order_after(t, run.end, run.period))
}

fn order_after(t: &[u8], end: usize, period: usize) -> RunOrder {
    if end == t.len() {
        return RunOrder {
            order: LexOrder::Order0,
            sentinel_resolved: true,
        };
    }
    // 0-based: t[end] is position end + 1
    let order = if t[end] < t[end - period] {
        LexOrder::Order0
    } else {
        LexOrder::Order1
    };
    RunOrder {
        order,
        sentinel_resolved: false,
    }
}

/// L-root data of a repetition `span` of `t` under a fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LRootInfo {
    pub order: LexOrder,
    /// Leftmost L-root occurrence.
    pub lambda: Interval,
    /// Maximal integer power of the L-root inside the repetition.
    pub root_interval: Interval,
    pub k: usize,
    /// Offset of `root_interval` from the repetition start (a proper
    /// suffix of the L-root).
    pub xprime_len: usize,
    /// Prefix length before the rightmost L-root occurrence.
    pub x_len: usize,
    /// Trailing proper prefix of the L-root.
    pub y_len: usize,
}

impl LRootInfo {
    pub fn period(&self) -> usize {
        self.lambda.len()
    }

    /// Start positions of every L-root occurrence, left to right.
    pub fn occurrences(&self) -> impl Iterator<Item = usize> + '_ {
        let p = self.period();
        (0..self.k).map(move |m| self.root_interval.start + m * p)
    }
}

/// Offset of the Lyndon rotation of a primitive block.
fn lyndon_rotation(block: &[u8], order: LexOrder) -> usize {
    let p = block.len();
    let rotation = |o: usize| [&block[o..], &block[..o]].concat();
    (0..p)
        .min_by(|&a, &b| compare(order, &rotation(a), &rotation(b)))
        .unwrap()
}

/// L-root of the repetition occupying `span` (its smallest period must be
/// at most half its length).
pub fn l_root_of_repetition(t: &[u8], span: Interval, order: LexOrder) -> Result<LRootInfo> {
    let w = span.of(t);
    let p = smallest_period(w)?;
    if 2 * p > w.len() {
        return Err(Error::BadParameter(format!("{span} is not a repetition")));
    }
    Ok(l_root_with_period(
        span,
        p,
        order,
        lyndon_rotation(&w[..p], order),
    ))
}

fn l_root_with_period(span: Interval, p: usize, order: LexOrder, offset: usize) -> LRootInfo {
    let len = span.len();
    let k = (len - offset) / p;
    let start = span.start + offset;
    LRootInfo {
        order,
        lambda: Interval::new(start, start + p - 1),
        root_interval: Interval::new(start, start + k * p - 1),
        k,
        xprime_len: offset,
        x_len: offset + (k - 1) * p,
        y_len: len - offset - k * p,
    }
}

/// L-root of a run under the run's own order.
pub fn l_root(t: &[u8], run: Run) -> Result<LRootInfo> {
    let order = run_order(t, run)?.order;
    l_root_of_repetition(t, run.interval(), order)
}

/// L-root of a whole text that is a square `uu`. Without an explicit
/// order the order of the run formed by the text is used, which is
/// `Order0` because that run ends at the last position.
pub fn l_root_of_square(t: &[u8], order: Option<LexOrder>) -> Result<LRootInfo> {
    let n = t.len();
    if n == 0 || n % 2 == 1 || t[..n / 2] != t[n / 2..] {
        return Err(Error::NotASquare);
    }
    let order = order.unwrap_or(order_after(t, n, smallest_period(t)?).order);
    let info = l_root_of_repetition(t, Interval::new(1, n), order)?;
    let u = n / 2;
    debug_assert!(info.root_interval.len() >= u);
    debug_assert!(
        u.is_multiple_of(info.period()) && info.root_interval.len().is_multiple_of(info.period())
    );
    Ok(info)
}

/// The run that contains the repetition `span` and has the same smallest
/// period.
pub fn enclosing_run(t: &[u8], span: Interval) -> Result<Run> {
    let p = smallest_period(span.of(t))?;
    if 2 * p > span.len() {
        return Err(Error::BadParameter(format!("{span} is not a repetition")));
    }
    let (s, e) = extend(t, span.start, span.end, p);
    Ok(Run::new(s, e, p))
}

/// The order of a repetition occurrence: that of its enclosing run.
pub fn repetition_order(t: &[u8], span: Interval) -> Result<RunOrder> {
    let run = enclosing_run(t, span)?;
    Ok(order_after(t, run.end, run.period))
}

/// Sanity predicate used by tests and checkers: the L-root is Lyndon and
/// of length `p`.
pub fn l_root_is_lyndon(t: &[u8], info: &LRootInfo) -> bool {
    is_lyndon(info.lambda.of(t), info.order).unwrap_or(false)
}
