//! Upper and lower bound experiments for the number of primitively rooted
//! square occurrences: the `S(n)` recurrence, exhaustive `psq(n)` maxima
//! and Fibonacci words.

use serde::Serialize;

use crate::enumerate::{map_chunks, Budget};
use crate::error::{Error, Partial, Result};
use crate::squares::{psq_count_via_runs, psq_occurrences_bruteforce};
use crate::text::{render, Text};

/// Relative slack on floating-point bound comparisons. Counts are exact.
pub const REL_EPS: f64 = 1e-9;

/// Longest Fibonacci word [`fibonacci_word`] will build.
pub const MAX_FIB_LEN: usize = 1 << 24;

/// Fibonacci words up to this length are also counted by brute force.
pub const FIB_CROSSCHECK_LEN: usize = 200;

/// Stored maximizing witnesses per search; the total is still counted.
pub const MAX_BOUND_WITNESSES: usize = 64;

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// `2(3 - phi) / (5 log2 phi)`, about 0.7962.
pub fn fib_psq_constant() -> f64 {
    let phi = golden_ratio();
    2.0 * (3.0 - phi) / (5.0 * phi.log2())
}

fn n_log2_n(n: usize) -> f64 {
    n as f64 * (n as f64).log2()
}

fn n_log_phi_n(n: usize) -> f64 {
    n as f64 * (n as f64).ln() / golden_ratio().ln()
}

/// `value <= bound` up to [`REL_EPS`].
pub fn within(value: f64, bound: f64) -> bool {
    value <= bound + REL_EPS * bound.abs().max(1.0)
}

fn nearly_equal(value: f64, bound: f64) -> bool {
    (value - bound).abs() <= REL_EPS * bound.abs().max(1.0)
}

/// Exact maxima of `S(1) = 0`, `S(n) = max S(a) + S(b) + min(a, b)` over
/// `a + b = n`, `a, b >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct STable {
    /// `values[n]` for `n` in `1..=n_max`; index 0 is unused.
    values: Vec<u64>,
    /// Largest smaller part `a <= n/2` attaining the maximum.
    splits: Vec<usize>,
}

impl STable {
    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        (n >= 1).then(|| self.values.get(n).copied()).flatten()
    }

    pub fn split(&self, n: usize) -> Option<usize> {
        (n >= 2).then(|| self.splits.get(n).copied()).flatten()
    }
}

pub fn s_table(n_max: usize) -> Result<STable> {
    if n_max < 1 {
        return Err(Error::BadParameter("nMax must be at least 1".into()));
    }
    let mut values = vec![0u64; n_max + 1];
    let mut splits = vec![0usize; n_max + 1];
    for n in 2..=n_max {
        let (best, split) = (1..=n / 2)
            .map(|a| (values[a] + values[n - a] + a as u64, a))
            .max()
            .unwrap();
        values[n] = best;
        splits[n] = split;
    }
    Ok(STable { values, splits })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SRow {
    pub n: usize,
    pub s: u64,
    /// `(n/2) log2 n`
    pub bound: f64,
    pub gap: f64,
    pub split: usize,
    pub pass: bool,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SBoundReport {
    pub n_max: usize,
    pub all_pass: bool,
    pub equality_at: Vec<usize>,
    pub rows: Vec<SRow>,
}

pub fn check_s_bound(table: &STable) -> SBoundReport {
    let rows: Vec<SRow> = (1..=table.n_max())
        .map(|n| {
            let s = table.values[n];
            let bound = n_log2_n(n) / 2.0;
            SRow {
                n,
                s,
                bound,
                gap: bound - s as f64,
                split: table.splits[n],
                pass: within(s as f64, bound),
                equality: nearly_equal(s as f64, bound),
            }
        })
        .collect();
    SBoundReport {
        n_max: table.n_max(),
        all_pass: rows.iter().all(|r| r.pass),
        equality_at: rows.iter().filter(|r| r.equality).map(|r| r.n).collect(),
        rows,
    }
}

/// Maximum number of primitively rooted square occurrences over one
/// exhaustively searched space of strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub n: usize,
    pub sigma: usize,
    pub psq_max: u64,
    pub n_log2_n: f64,
    pub n_log_phi_n: f64,
    pub within_log2: bool,
    pub within_log_phi: bool,
    /// `n log2 n < n log_phi n`; vacuous for `n = 1`.
    pub log2_tighter: bool,
    pub witness_count: u64,
    pub witnesses: Vec<String>,
    pub strings_examined: u64,
    pub canonical: bool,
    pub complete: bool,
}

impl BoundReport {
    pub fn bounds_hold(&self) -> bool {
        self.within_log2 && self.within_log_phi && self.log2_tighter
    }
}

#[derive(Default)]
struct MaxAcc {
    strings: u64,
    max: u64,
    count: u64,
    witnesses: Vec<Vec<u8>>,
}

impl MaxAcc {
    fn offer(&mut self, value: u64, s: &[u8]) {
        self.strings += 1;
        if value > self.max || self.count == 0 {
            self.max = value;
            self.count = 0;
            self.witnesses.clear();
        }
        if value == self.max {
            self.count += 1;
            if self.witnesses.len() < MAX_BOUND_WITNESSES {
                self.witnesses.push(s.to_vec());
            }
        }
    }

    fn merge(&mut self, other: MaxAcc) {
        let strings = self.strings + other.strings;
        if other.count > 0 && (other.max > self.max || self.count == 0) {
            *self = other;
        } else if other.count > 0 && other.max == self.max {
            self.count += other.count;
            let room = MAX_BOUND_WITNESSES.saturating_sub(self.witnesses.len());
            self.witnesses
                .extend(other.witnesses.into_iter().take(room));
        }
        self.strings = strings;
    }
}

/// Exhaustive `psq` maximum over strings of length `n` over `0..sigma`,
/// with the first symbol fixed to 0 (`psq` is invariant under relabeling).
pub fn psq_max_search(n: usize, sigma: usize, jobs: usize, budget: &Budget) -> Result<BoundReport> {
    if n < 1 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    let (parts, complete) = map_chunks(sigma, n..=n, true, jobs, budget, |chunk| {
        let mut acc = MaxAcc::default();
        chunk.for_each(|s| acc.offer(psq_occurrences_bruteforce(s).len() as u64, s));
        acc
    })?;
    let mut acc = MaxAcc::default();
    for part in parts.into_iter().flatten() {
        acc.merge(part);
    }
    let (log2, log_phi) = (n_log2_n(n), n_log_phi_n(n));
    let report = BoundReport {
        n,
        sigma,
        psq_max: acc.max,
        n_log2_n: log2,
        n_log_phi_n: log_phi,
        within_log2: within(acc.max as f64, log2),
        within_log_phi: within(acc.max as f64, log_phi),
        log2_tighter: n < 2 || log2 < log_phi,
        witness_count: acc.count,
        witnesses: acc.witnesses.iter().map(|w| render(w)).collect(),
        strings_examined: acc.strings,
        canonical: true,
        complete,
    };
    if complete {
        Ok(report)
    } else {
        Err(Error::BudgetExceeded {
            reason: format!(
                "psq search at n = {n} stopped after {} strings",
                report.strings_examined
            ),
            partial: Partial::Bound(Box::new(report)),
        })
    }
}

/// `s_1 = b`, `s_2 = a`, `s_k = s_{k-1} s_{k-2}`.
pub fn fibonacci_word(k: usize) -> Result<Text> {
    if k < 1 {
        return Err(Error::BadParameter("Fibonacci index starts at 1".into()));
    }
    let (mut prev, mut cur) = (b"b".to_vec(), b"a".to_vec());
    if k == 1 {
        return Ok(Text::new(prev));
    }
    for _ in 2..k {
        if cur.len() + prev.len() > MAX_FIB_LEN {
            return Err(Error::BudgetExceeded {
                reason: format!("Fibonacci word {k} is longer than {MAX_FIB_LEN}"),
                partial: Partial::None,
            });
        }
        let next = [&cur[..], &prev[..]].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(Text::new(cur))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FibRecord {
    pub k: usize,
    pub length: usize,
    /// Via the per-run formula.
    pub count: u64,
    /// Brute-force count, for words up to [`FIB_CROSSCHECK_LEN`].
    pub bruteforce: Option<u64>,
    /// `c F log2 F`
    pub leading_term: f64,
    pub ratio: f64,
}

impl FibRecord {
    pub fn counts_agree(&self) -> bool {
        self.bruteforce.is_none_or(|b| b == self.count)
    }
}

pub fn fib_psq_series(k_max: usize) -> Result<Vec<FibRecord>> {
    if k_max < 3 {
        return Err(Error::BadParameter("kMax must be at least 3".into()));
    }
    let c = fib_psq_constant();
    (3..=k_max)
        .map(|k| {
            let word = fibonacci_word(k)?;
            let length = word.len();
            let count = psq_count_via_runs(&word) as u64;
            let bruteforce = (length <= FIB_CROSSCHECK_LEN)
                .then(|| psq_occurrences_bruteforce(&word).len() as u64);
            let leading_term = c * n_log2_n(length);
            Ok(FibRecord {
                k,
                length,
                count,
                bruteforce,
                leading_term,
                ratio: count as f64 / leading_term,
            })
        })
        .collect()
}

/// Closed form for the occurrences of non-primitively rooted squares in a
/// unary string of length `n`: roots of length 2..=n/2.
pub fn unary_nonprimitive_squares(n: usize) -> u64 {
    let m = (n / 2) as u64;
    if m < 2 {
        return 0;
    }
    let n = n as u64;
    (m - 1) * (n + 1) + 2 - m * (m + 1)
}
