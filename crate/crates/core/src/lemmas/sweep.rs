use std::time::Instant;

use rayon::prelude::*;

use super::checkers::{lemma2_outcome, outcome_for};
use super::{order_labels, CheckOutcome, LemmaId, LemmaReport, Witness, MAX_WITNESSES};
use crate::enumerate::{map_chunks, thread_pool, Budget};
use crate::error::{Error, Partial, Result};
use crate::lyndon::is_lyndon;
use crate::text::LexOrder;

/// Aggregate of per-string outcomes, with witness lists truncated to
/// [`MAX_WITNESSES`] in enumeration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepOutcome {
    pub strings: u64,
    pub instances: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Witness>,
    pub equality_count: u64,
    pub equalities: Vec<Witness>,
    pub complete: bool,
}

impl SweepOutcome {
    fn add(&mut self, outcome: CheckOutcome) {
        self.strings += 1;
        self.instances += outcome.instances;
        self.counterexample_count += outcome.counterexamples.len() as u64;
        self.equality_count += outcome.equalities.len() as u64;
        keep(&mut self.counterexamples, outcome.counterexamples);
        keep(&mut self.equalities, outcome.equalities);
    }

    fn merge(&mut self, other: SweepOutcome) {
        self.strings += other.strings;
        self.instances += other.instances;
        self.counterexample_count += other.counterexample_count;
        self.equality_count += other.equality_count;
        keep(&mut self.counterexamples, other.counterexamples);
        keep(&mut self.equalities, other.equalities);
    }
}

fn keep(into: &mut Vec<Witness>, from: Vec<Witness>) {
    let room = MAX_WITNESSES.saturating_sub(into.len());
    into.extend(from.into_iter().take(room));
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub lemma: LemmaId,
    pub sigma: usize,
    pub max_len: usize,
    /// Longest `w` enumerated by the lemma 2 sweep; defaults to `max_len`.
    pub w_max: Option<usize>,
    pub orders: Vec<LexOrder>,
    pub jobs: usize,
    /// Fix the first symbol to code 0 where that is sound.
    pub canonical: bool,
    pub budget: Budget,
}

impl SweepConfig {
    pub fn new(lemma: LemmaId, sigma: usize, max_len: usize) -> Self {
        SweepConfig {
            lemma,
            sigma,
            max_len,
            w_max: None,
            orders: LexOrder::BOTH.to_vec(),
            jobs: 1,
            canonical: true,
            budget: Budget::default(),
        }
    }

    pub fn effective_canonical(&self) -> bool {
        self.canonical && self.lemma.canonicalization_sound(self.sigma, &self.orders)
    }
}

/// Runs `check` on every string of length `1..=max_len` over `0..sigma`,
/// in length-then-lexicographic order. With `canonical` the first symbol
/// is fixed to 0.
///
/// The result does not depend on `jobs`. Only a time budget can make two
/// runs differ, by cutting them off at different chunks.
pub fn sweep_strings<F>(
    sigma: usize,
    max_len: usize,
    canonical: bool,
    jobs: usize,
    budget: &Budget,
    check: F,
) -> Result<SweepOutcome>
where
    F: Fn(&[u8]) -> CheckOutcome + Sync,
{
    let (parts, complete) = map_chunks(sigma, 1..=max_len, canonical, jobs, budget, |chunk| {
        let mut out = SweepOutcome::default();
        chunk.for_each(|s| out.add(check(s)));
        out
    })?;
    let mut total = SweepOutcome::default();
    for part in parts.into_iter().flatten() {
        total.merge(part);
    }
    total.complete = complete;
    Ok(total)
}

/// All Lyndon words of length `1..=max_len` over `0..sigma` under `order`,
/// in length-then-lexicographic (code) order.
pub fn lyndon_words(sigma: usize, max_len: usize, order: LexOrder) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|s| {
                (0..sigma as u8).map(move |c| {
                    let mut s = s.clone();
                    s.push(c);
                    s
                })
            })
            .collect();
        out.extend(
            layer
                .iter()
                .filter(|s| is_lyndon(s, order).unwrap())
                .cloned(),
        );
    }
    out
}

fn lemma2_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    let w_max = cfg.w_max.unwrap_or(cfg.max_len);
    let pool = thread_pool(cfg.jobs)?;
    let deadline = cfg.budget.deadline();
    let mut remaining = cfg.budget.max_strings.unwrap_or(u64::MAX);
    let mut total = SweepOutcome {
        complete: true,
        ..SweepOutcome::default()
    };
    for &order in &cfg.orders {
        let words = lyndon_words(cfg.sigma, w_max, order);
        let mut vs = lyndon_words(cfg.sigma, cfg.max_len, order);
        if (vs.len() as u64) > remaining {
            vs.truncate(remaining as usize);
            total.complete = false;
        }
        remaining -= vs.len() as u64;
        let parts: Vec<Option<CheckOutcome>> = pool.install(|| {
            vs.par_iter()
                .map(|v| {
                    if deadline.is_some_and(|d| Instant::now() > d) {
                        return None;
                    }
                    Some(lemma2_outcome(v, &words, order))
                })
                .collect()
        });
        for part in parts {
            match part {
                Some(p) => total.add(p),
                None => total.complete = false,
            }
        }
    }
    Ok(total)
}

/// Checks `cfg.lemma` on every string of the configured space.
///
/// For lemma 2 the space is every Lyndon `v` with `|v| <= max_len` against
/// every Lyndon `w` with `|w| <= w_max`, under each configured order.
/// Equality instances are only counted and kept when the instance covers
/// the whole string; extensions of a shorter witness are skipped.
///
/// Running out of budget yields [`Error::BudgetExceeded`] carrying the
/// partial report.
pub fn exhaustive_verify(cfg: &SweepConfig) -> Result<LemmaReport> {
    if cfg.max_len == 0 {
        return Err(Error::BadParameter("maxLen must be at least 1".into()));
    }
    if cfg.lemma.uses_orders() && cfg.orders.is_empty() {
        return Err(Error::BadParameter("at least one order is required".into()));
    }
    let started = Instant::now();
    let canonical = cfg.effective_canonical();
    let outcome = if cfg.lemma == LemmaId::Lemma2 {
        if cfg.sigma == 0 || cfg.sigma > 256 {
            return Err(Error::BadParameter(format!(
                "sigma must be in 1..=256, got {}",
                cfg.sigma
            )));
        }
        lemma2_sweep(cfg)?
    } else {
        sweep_strings(
            cfg.sigma,
            cfg.max_len,
            canonical,
            cfg.jobs,
            &cfg.budget,
            |t| {
                let mut out = outcome_for(cfg.lemma, t, &cfg.orders);
                out.equalities.retain(Witness::spans_whole_text);
                out
            },
        )?
    };
    let report = LemmaReport {
        lemma: cfg.lemma,
        sigma: Some(cfg.sigma),
        max_len: cfg.max_len,
        w_max: (cfg.lemma == LemmaId::Lemma2).then(|| cfg.w_max.unwrap_or(cfg.max_len)),
        orders: order_labels(cfg.lemma, &cfg.orders),
        canonical,
        strings_examined: outcome.strings,
        instances_checked: outcome.instances,
        counterexample_count: outcome.counterexample_count,
        counterexamples: outcome.counterexamples,
        equality_count: outcome.equality_count,
        equality_witnesses: outcome.equalities,
        elapsed_ms: started.elapsed().as_millis() as u64,
        complete: outcome.complete,
    };
    if report.complete {
        Ok(report)
    } else {
        Err(Error::BudgetExceeded {
            reason: format!(
                "{} sweep stopped after {} strings",
                cfg.lemma, report.strings_examined
            ),
            partial: Partial::Lemma(Box::new(report)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemmas::{replay, Detail};

    #[test]
    fn enumeration_order_and_canonical_counts() {
        let seen = std::sync::Mutex::new(Vec::new());
        let out = sweep_strings(2, 3, true, 3, &Budget::default(), |t| {
            seen.lock().unwrap().push(t.to_vec());
            CheckOutcome::default()
        })
        .unwrap();
        assert_eq!(out.strings, 1 + 2 + 4);
        let mut seen = seen.into_inner().unwrap();
        seen.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        assert_eq!(seen[0], vec![0]);
        assert!(seen.iter().all(|s| s[0] == 0));

        let out = sweep_strings(3, 4, false, 2, &Budget::default(), |_| {
            CheckOutcome::default()
        })
        .unwrap();
        assert_eq!(out.strings, 3 + 9 + 27 + 81);
        assert!(out.complete);
    }

    #[test]
    fn string_budget_marks_incomplete() {
        let mut cfg = SweepConfig::new(LemmaId::Lemma1, 2, 12);
        cfg.budget.max_strings = Some(100);
        match exhaustive_verify(&cfg) {
            Err(Error::BudgetExceeded {
                partial: Partial::Lemma(report),
                ..
            }) => {
                assert!(!report.complete);
                assert_eq!(report.strings_examined, 100);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn time_budget_marks_incomplete() {
        let mut cfg = SweepConfig::new(LemmaId::Cor2, 2, 18);
        cfg.budget.max_seconds = Some(0.0);
        assert!(matches!(
            exhaustive_verify(&cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn bad_parameters() {
        assert!(exhaustive_verify(&SweepConfig::new(LemmaId::Lemma1, 2, 0)).is_err());
        assert!(exhaustive_verify(&SweepConfig::new(LemmaId::Lemma1, 0, 3)).is_err());
        let mut cfg = SweepConfig::new(LemmaId::Lemma3, 2, 3);
        cfg.orders.clear();
        assert!(exhaustive_verify(&cfg).is_err());
        cfg = SweepConfig::new(LemmaId::Lemma3, 2, 3);
        cfg.jobs = 0;
        assert!(exhaustive_verify(&cfg).is_err());
    }

    #[test]
    fn lyndon_word_counts() {
        // necklace-counting values for binary Lyndon words of length 1..=8
        let counts: Vec<usize> = (1..=8)
            .map(|l| {
                lyndon_words(2, 8, LexOrder::Order0)
                    .iter()
                    .filter(|w| w.len() == l)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn small_sweeps_hold_and_replay() {
        for lemma in LemmaId::ALL {
            // nested triples of squares first appear at length 12
            let max_len = if lemma == LemmaId::Cor2 { 12 } else { 8 };
            let mut cfg = SweepConfig::new(lemma, 2, max_len);
            cfg.jobs = 2;
            let report = exhaustive_verify(&cfg).unwrap();
            assert!(report.holds(), "{lemma}");
            assert!(report.instances_checked > 0, "{lemma}");
            for w in report
                .equality_witnesses
                .iter()
                .chain(&report.counterexamples)
            {
                assert!(replay(lemma, w), "{lemma} {w:?}");
            }
        }
    }

    #[test]
    fn canonical_sweep_agrees_with_full_sweep() {
        for lemma in LemmaId::ALL {
            if lemma == LemmaId::Lemma2 {
                continue;
            }
            let mut cfg = SweepConfig::new(lemma, 2, 10);
            cfg.jobs = 4;
            let canon = exhaustive_verify(&cfg).unwrap();
            cfg.canonical = false;
            let full = exhaustive_verify(&cfg).unwrap();
            assert!(canon.canonical && !full.canonical);
            assert_eq!(canon.holds(), full.holds(), "{lemma}");
            assert_eq!(2 * canon.strings_examined, full.strings_examined);
            assert_eq!(
                2 * canon.instances_checked,
                full.instances_checked,
                "{lemma}"
            );
            assert_eq!(2 * canon.equality_count, full.equality_count, "{lemma}");
        }
    }

    #[test]
    fn lemma1_equality_witness_includes_three_squares_string() {
        let report = exhaustive_verify(&SweepConfig::new(LemmaId::Lemma1, 2, 16)).unwrap();
        assert!(report.holds());
        assert!(report
            .equality_witnesses
            .iter()
            .any(|w| w.text == "0100101001001010"
                && w.detail == Detail::ThreeSquares { u: 8, v: 5, w: 3 }));
    }
}
