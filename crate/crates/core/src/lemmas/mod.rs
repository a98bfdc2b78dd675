//! Checkers for the structural lemmas on squares, runs and Lyndon trees,
//! together with an exhaustive sweep driver.
//!
//! Every checker works on a single text and yields a [`CheckOutcome`];
//! [`exhaustive_verify`] folds those outcomes over all strings up to a
//! given length into a [`LemmaReport`].

mod checkers;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::repetitions::Run;
use crate::squares::SquareOcc;
use crate::text::{render, Interval, LexOrder};

pub use crate::enumerate::Budget;
pub use checkers::{
    check_corollary1, check_corollary2, check_lemma2, check_lemma3, check_lemma4, check_lemma6,
    check_three_squares, lemma2_crossing, outcome_for, replay, three_square_triples,
    ThreeSquaresInstance,
};
pub use sweep::{exhaustive_verify, lyndon_words, sweep_strings, SweepConfig, SweepOutcome};

/// Upper limit on stored witnesses of each kind; totals are still counted.
pub const MAX_WITNESSES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaId {
    /// Three squares prefixes: `|u| >= |v| + |w|`.
    Lemma1,
    /// No Lyndon word starts with a suffix and ends with a prefix of
    /// another Lyndon word.
    Lemma2,
    /// L-root intervals of a square and one of its square prefixes.
    Lemma3,
    /// L-root occurrences of a run are longest Lyndon words.
    Lemma4,
    /// Right nodes of a Lyndon tree are longest Lyndon words.
    Lemma6,
    /// Lemma 3 for inner squares starting before the outer L-root interval.
    Cor1,
    /// Three nested squares, under the order of the innermost one.
    Cor2,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::Lemma1,
        LemmaId::Lemma2,
        LemmaId::Lemma3,
        LemmaId::Lemma4,
        LemmaId::Lemma6,
        LemmaId::Cor1,
        LemmaId::Cor2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Lemma1 => "lemma1",
            LemmaId::Lemma2 => "lemma2",
            LemmaId::Lemma3 => "lemma3",
            LemmaId::Lemma4 => "lemma4",
            LemmaId::Lemma6 => "lemma6",
            LemmaId::Cor1 => "cor1",
            LemmaId::Cor2 => "cor2",
        }
    }

    /// Whether the checker takes its orders from the caller.
    pub fn uses_orders(self) -> bool {
        matches!(
            self,
            LemmaId::Lemma2 | LemmaId::Lemma3 | LemmaId::Lemma6 | LemmaId::Cor1
        )
    }

    /// Whether fixing the first symbol to code 0 leaves the verdict over
    /// the full space unchanged.
    ///
    /// Lemma 1 never looks at the order. The other checkers only see the
    /// two opposite orders, and swapping them is a relabeling only for a
    /// binary alphabet, so the remaining ones need both orders (or an
    /// intrinsic order) and `sigma <= 2`.
    pub fn canonicalization_sound(self, sigma: usize, orders: &[LexOrder]) -> bool {
        match self {
            LemmaId::Lemma1 => true,
            LemmaId::Lemma2 => false,
            LemmaId::Lemma4 | LemmaId::Cor2 => sigma <= 2,
            LemmaId::Lemma3 | LemmaId::Lemma6 | LemmaId::Cor1 => {
                sigma <= 2
                    && orders.contains(&LexOrder::Order0)
                    && orders.contains(&LexOrder::Order1)
            }
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown lemma id {s:?}")))
    }
}

/// What a witness records, per lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Detail {
    #[serde(rename_all = "camelCase")]
    ThreeSquares { u: usize, v: usize, w: usize },
    /// `w = xyz` with `|x| = x_len` a suffix and `|z| = z_len` a prefix of `v`.
    #[serde(rename_all = "camelCase")]
    Crossing {
        v: String,
        v_codes: Vec<u8>,
        x_len: usize,
        z_len: usize,
    },
    #[serde(rename_all = "camelCase")]
    TwoSquares {
        outer: SquareOcc,
        inner: SquareOcc,
        outer_root: Interval,
        inner_root: Interval,
        violation: String,
    },
    #[serde(rename_all = "camelCase")]
    NestedSquares {
        u: SquareOcc,
        v: SquareOcc,
        w: SquareOcc,
        u_root: Interval,
        v_root: Interval,
    },
    #[serde(rename_all = "camelCase")]
    LongestLyndon {
        run: Run,
        position: usize,
        expected: usize,
        observed: usize,
    },
    #[serde(rename_all = "camelCase")]
    RightNode {
        interval: Interval,
        is_right_node: bool,
        is_longest_lyndon: bool,
    },
}

impl Detail {
    /// Interval spanned by the outermost object of the instance, if the
    /// instance has one.
    pub fn outer_span(&self) -> Option<Interval> {
        match self {
            Detail::ThreeSquares { u, .. } => Some(Interval::new(1, 2 * u)),
            Detail::TwoSquares { outer, .. } => Some(outer.span()),
            Detail::NestedSquares { u, .. } => Some(u.span()),
            _ => None,
        }
    }
}

/// A replayable instance: the text, the order it was checked under and
/// the lemma-specific data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub text: String,
    pub codes: Vec<u8>,
    pub order: Option<LexOrder>,
    pub detail: Detail,
}

impl Witness {
    pub fn new(codes: &[u8], order: Option<LexOrder>, detail: Detail) -> Self {
        Witness {
            text: render(codes),
            codes: codes.to_vec(),
            order,
            detail,
        }
    }

    /// The instance's outer object covers the whole text, so the text is
    /// not merely an extension of a shorter witness.
    pub fn spans_whole_text(&self) -> bool {
        self.detail
            .outer_span()
            .is_none_or(|s| s == Interval::new(1, self.codes.len()))
    }
}

/// Result of running one checker on one text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub instances: u64,
    pub counterexamples: Vec<Witness>,
    pub equalities: Vec<Witness>,
}

impl CheckOutcome {
    pub fn absorb(&mut self, other: CheckOutcome) {
        self.instances += other.instances;
        self.counterexamples.extend(other.counterexamples);
        self.equalities.extend(other.equalities);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub sigma: Option<usize>,
    pub max_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_max: Option<usize>,
    pub orders: Vec<String>,
    pub canonical: bool,
    pub strings_examined: u64,
    pub instances_checked: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Witness>,
    pub equality_count: u64,
    pub equality_witnesses: Vec<Witness>,
    pub elapsed_ms: u64,
    pub complete: bool,
}

impl LemmaReport {
    pub(crate) fn single(
        lemma: LemmaId,
        t: &[u8],
        orders: &[LexOrder],
        outcome: CheckOutcome,
    ) -> Self {
        LemmaReport {
            lemma,
            sigma: None,
            max_len: t.len(),
            w_max: None,
            orders: order_labels(lemma, orders),
            canonical: false,
            strings_examined: 1,
            instances_checked: outcome.instances,
            counterexample_count: outcome.counterexamples.len() as u64,
            counterexamples: outcome.counterexamples,
            equality_count: outcome.equalities.len() as u64,
            equality_witnesses: outcome.equalities,
            elapsed_ms: 0,
            complete: true,
        }
    }

    /// No counterexample in the searched space.
    pub fn holds(&self) -> bool {
        self.counterexample_count == 0
    }

    /// Copy with the timing zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> Self {
        LemmaReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

pub(crate) fn order_labels(lemma: LemmaId, orders: &[LexOrder]) -> Vec<String> {
    match lemma {
        LemmaId::Lemma1 => Vec::new(),
        LemmaId::Lemma4 | LemmaId::Cor2 => vec!["run".to_string()],
        _ => orders.iter().map(|o| o.to_string()).collect(),
    }
}
