//! Chunked enumeration of all strings of given lengths over `0..sigma`.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};

const CHUNK: u64 = 1 << 12;

/// Limits on a sweep. `max_strings` counts the input strings examined.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Budget {
    pub max_strings: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub(crate) fn deadline(&self) -> Option<Instant> {
        self.max_seconds
            .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0)))
    }
}

/// A contiguous block of strings of one length, in lexicographic order.
#[derive(Clone, Copy, Debug)]
pub struct Chunk {
    pub len: usize,
    first: u64,
    count: u64,
    sigma: usize,
    canonical: bool,
}

impl Chunk {
    pub fn for_each(&self, mut f: impl FnMut(&[u8])) {
        let digits = if self.canonical {
            self.len - 1
        } else {
            self.len
        };
        let sigma = self.sigma as u64;
        let mut s = vec![0u8; self.len];
        let mut idx = self.first;
        for slot in s[self.len - digits..].iter_mut().rev() {
            *slot = (idx % sigma) as u8;
            idx /= sigma;
        }
        for step in 0..self.count {
            if step > 0 {
                for slot in s[self.len - digits..].iter_mut().rev() {
                    if (*slot as u64) + 1 < sigma {
                        *slot += 1;
                        break;
                    }
                    *slot = 0;
                }
            }
            f(&s);
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

pub(crate) fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        return Err(Error::BadParameter("jobs must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::BadParameter(e.to_string()))
}

/// Splits the space into fixed chunks and maps them on `jobs` threads.
///
/// Results come back in enumeration order whatever `jobs` is. A chunk
/// skipped because the time budget ran out is `None`. The flag is false
/// when the string budget truncated the space or any chunk was skipped.
pub fn map_chunks<T, F>(
    sigma: usize,
    lens: RangeInclusive<usize>,
    canonical: bool,
    jobs: usize,
    budget: &Budget,
    f: F,
) -> Result<(Vec<Option<T>>, bool)>
where
    T: Send,
    F: Fn(&Chunk) -> T + Sync,
{
    if sigma == 0 || sigma > 256 {
        return Err(Error::BadParameter(format!(
            "sigma must be in 1..=256, got {sigma}"
        )));
    }
    if *lens.start() == 0 {
        return Err(Error::BadParameter("string lengths start at 1".into()));
    }
    let mut chunks = Vec::new();
    let mut remaining = budget.max_strings.unwrap_or(u64::MAX);
    let mut truncated = false;
    'outer: for len in lens {
        let digits = if canonical { len - 1 } else { len };
        let total = (sigma as u64).checked_pow(digits as u32).ok_or_else(|| {
            Error::BadParameter(format!("search space at length {len} overflows"))
        })?;
        let mut first = 0;
        while first < total {
            let mut count = CHUNK.min(total - first);
            if remaining < count {
                truncated = true;
                count = remaining;
            }
            if count == 0 {
                break 'outer;
            }
            remaining -= count;
            chunks.push(Chunk {
                len,
                first,
                count,
                sigma,
                canonical,
            });
            first += count;
        }
    }

    let deadline = budget.deadline();
    let timed_out = AtomicBool::new(false);
    let results = thread_pool(jobs)?.install(|| {
        chunks
            .par_iter()
            .map(|chunk| {
                if deadline.is_some_and(|d| Instant::now() > d) {
                    timed_out.store(true, Ordering::Relaxed);
                    return None;
                }
                Some(f(chunk))
            })
            .collect::<Vec<_>>()
    });
    let complete = !truncated && !timed_out.load(Ordering::Relaxed);
    Ok((results, complete))
}
