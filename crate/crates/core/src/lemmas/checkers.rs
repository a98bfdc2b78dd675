use std::collections::BTreeSet;

use serde::Serialize;

use super::{CheckOutcome, Detail, LemmaId, LemmaReport, Witness};
use crate::error::{Error, Result};
use crate::lyndon::{is_lyndon, longest_lyndon_at, lyndon_tree};
use crate::repetitions::{l_root_of_repetition, repetition_order, run_order, runs_naive};
use crate::squares::{square_occurrences, square_prefixes, SquareOcc};
use crate::text::{is_primitive, Interval, LexOrder};

/// Three square prefixes `u^2, v^2, w^2` of a text with `|u| > |v| > |w|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThreeSquaresInstance {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub w_primitive: bool,
    /// `|u| >= |v| + |w|`
    pub satisfied: bool,
    /// `|u| == |v| + |w|`
    pub equality: bool,
}

/// All triples of square prefixes, including those with `w` not primitive.
pub fn three_square_triples(t: &[u8]) -> Vec<ThreeSquaresInstance> {
    let prefixes = square_prefixes(t);
    let mut out = Vec::new();
    for (a, &w) in prefixes.iter().enumerate() {
        let w_primitive = is_primitive(&t[..w]).unwrap();
        for (b, &v) in prefixes.iter().enumerate().skip(a + 1) {
            for &u in &prefixes[b + 1..] {
                out.push(ThreeSquaresInstance {
                    u,
                    v,
                    w,
                    w_primitive,
                    satisfied: u >= v + w,
                    equality: u == v + w,
                });
            }
        }
    }
    out.sort_by_key(|i| {
        (
            std::cmp::Reverse(i.u),
            std::cmp::Reverse(i.v),
            std::cmp::Reverse(i.w),
        )
    });
    out
}

/// Triples meeting the hypotheses of the three squares lemma (`w`
/// primitive), each flagged as satisfied and/or tight.
pub fn check_three_squares(t: &[u8]) -> Vec<ThreeSquaresInstance> {
    three_square_triples(t)
        .into_iter()
        .filter(|i| i.w_primitive)
        .collect()
}

fn lemma1_outcome(t: &[u8]) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for inst in check_three_squares(t) {
        out.instances += 1;
        let witness = || {
            Witness::new(
                t,
                None,
                Detail::ThreeSquares {
                    u: inst.u,
                    v: inst.v,
                    w: inst.w,
                },
            )
        };
        if !inst.satisfied {
            out.counterexamples.push(witness());
        } else if inst.equality {
            out.equalities.push(witness());
        }
    }
    out
}

/// A split `w = xyz` with `x` a nonempty suffix and `z` a nonempty prefix
/// of `v`, returned as `(|x|, |z|)` with both lengths minimal. `x = v` and
/// `z = v` are allowed.
pub fn lemma2_crossing(v: &[u8], w: &[u8]) -> Option<(usize, usize)> {
    let x_len = (1..=v.len().min(w.len())).find(|&a| w[..a] == v[v.len() - a..])?;
    let z_len = (1..=v.len().min(w.len())).find(|&c| w[w.len() - c..] == v[..c])?;
    (x_len + z_len <= w.len()).then_some((x_len, z_len))
}

/// Looks for Lyndon words `w` with `|w| <= w_max` over the alphabet
/// `0..sigma` that split as `xyz` around the Lyndon word `v`.
pub fn check_lemma2(v: &[u8], sigma: usize, w_max: usize, order: LexOrder) -> Result<LemmaReport> {
    if v.is_empty() || !is_lyndon(v, order)? {
        return Err(Error::NotLyndon);
    }
    if v.iter().any(|&c| c as usize >= sigma) {
        return Err(Error::SymbolOutOfRange {
            code: *v.iter().max().unwrap(),
            sigma,
        });
    }
    let words = super::lyndon_words(sigma, w_max, order);
    let outcome = lemma2_outcome(v, &words, order);
    let mut report = LemmaReport::single(LemmaId::Lemma2, v, &[order], outcome);
    report.sigma = Some(sigma);
    report.w_max = Some(w_max);
    Ok(report)
}

pub(crate) fn lemma2_outcome(v: &[u8], words: &[Vec<u8>], order: LexOrder) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for w in words {
        out.instances += 1;
        if let Some((x_len, z_len)) = lemma2_crossing(v, w) {
            out.counterexamples.push(Witness::new(
                w,
                Some(order),
                Detail::Crossing {
                    v: crate::text::render(v),
                    v_codes: v.to_vec(),
                    x_len,
                    z_len,
                },
            ));
        }
    }
    out
}

/// L-root intervals of every square occurrence under one order.
fn square_roots(t: &[u8], squares: &[SquareOcc], order: LexOrder) -> Vec<Interval> {
    squares
        .iter()
        .map(|s| {
            l_root_of_repetition(t, s.span(), order)
                .expect("squares are repetitions")
                .root_interval
        })
        .collect()
}

/// Checks the two-square statement for one (outer, inner) pair; returns
/// the violated clause, if any.
fn two_squares_violation(
    inner: SquareOcc,
    r_outer: Interval,
    r_inner: Interval,
) -> Option<&'static str> {
    if inner.span().contains(&r_outer) {
        return Some("outer L-root interval lies inside the inner square");
    }
    let prefix = r_inner.start == r_outer.start && r_inner.end <= r_outer.end;
    let before = r_inner.end < r_outer.start;
    if !(prefix || before) {
        return Some("inner L-root interval is neither a prefix of nor before the outer one");
    }
    None
}

/// Shared body of lemma 3 and corollary 1: `prefix_only` restricts inner
/// squares to proper prefixes of the outer occurrence.
fn two_squares_outcome(t: &[u8], order: LexOrder, prefix_only: bool) -> CheckOutcome {
    let squares = square_occurrences(t);
    let roots = square_roots(t, &squares, order);
    let mut out = CheckOutcome::default();
    for (a, &outer) in squares.iter().enumerate() {
        let r_outer = roots[a];
        for (b, &inner) in squares.iter().enumerate() {
            let applies = if prefix_only {
                inner.pos == outer.pos && inner.root_len < outer.root_len
            } else {
                inner.span() != outer.span()
                    && outer.span().contains(&inner.span())
                    && inner.pos < r_outer.start
            };
            if !applies {
                continue;
            }
            out.instances += 1;
            if let Some(violation) = two_squares_violation(inner, r_outer, roots[b]) {
                out.counterexamples.push(Witness::new(
                    t,
                    Some(order),
                    Detail::TwoSquares {
                        outer,
                        inner,
                        outer_root: r_outer,
                        inner_root: roots[b],
                        violation: violation.to_string(),
                    },
                ));
            }
        }
    }
    out
}

pub fn check_lemma3(t: &[u8], order: LexOrder) -> LemmaReport {
    LemmaReport::single(
        LemmaId::Lemma3,
        t,
        &[order],
        two_squares_outcome(t, order, true),
    )
}

pub fn check_corollary1(t: &[u8], order: LexOrder) -> LemmaReport {
    LemmaReport::single(
        LemmaId::Cor1,
        t,
        &[order],
        two_squares_outcome(t, order, false),
    )
}

fn cor2_outcome(t: &[u8]) -> CheckOutcome {
    let squares = square_occurrences(t);
    let roots = [
        square_roots(t, &squares, LexOrder::Order0),
        square_roots(t, &squares, LexOrder::Order1),
    ];
    let proper = |outer: &SquareOcc, inner: &SquareOcc| {
        outer.span() != inner.span() && outer.span().contains(&inner.span())
    };
    let mut out = CheckOutcome::default();
    for &w in &squares {
        let w_root = &t[w.pos - 1..w.pos - 1 + w.root_len];
        if !is_primitive(w_root).unwrap() {
            continue;
        }
        let order = repetition_order(t, w.span())
            .expect("primitive square")
            .order;
        let roots = &roots[order.index() as usize];
        for (a, u) in squares.iter().enumerate() {
            let r_u = roots[a];
            if !proper(u, &w) || w.pos >= r_u.start {
                continue;
            }
            for (b, v) in squares.iter().enumerate() {
                let r_v = roots[b];
                if !proper(u, v) || !proper(v, &w) || v.pos >= r_u.start || w.pos >= r_v.start {
                    continue;
                }
                out.instances += 1;
                let witness = || {
                    Witness::new(
                        t,
                        Some(order),
                        Detail::NestedSquares {
                            u: *u,
                            v: *v,
                            w,
                            u_root: r_u,
                            v_root: r_v,
                        },
                    )
                };
                if u.root_len < v.root_len + w.root_len {
                    out.counterexamples.push(witness());
                } else if u.root_len == v.root_len + w.root_len {
                    out.equalities.push(witness());
                }
            }
        }
    }
    out
}

/// Nested squares `w^2 < v^2 < u^2` with `w` primitive, the outer L-root
/// intervals taken under the order of `w^2`.
pub fn check_corollary2(t: &[u8]) -> LemmaReport {
    LemmaReport::single(LemmaId::Cor2, t, &[], cor2_outcome(t))
}

fn lemma4_outcome(t: &[u8]) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    for run in runs_naive(t) {
        let ro = run_order(t, run).expect("run from the oracle");
        // at the text end either order is admissible; check both
        let orders: &[LexOrder] = if ro.sentinel_resolved {
            &LexOrder::BOTH
        } else {
            std::slice::from_ref(&ro.order)
        };
        for &order in orders {
            let info =
                l_root_of_repetition(t, run.interval(), order).expect("runs are repetitions");
            for position in info.occurrences() {
                out.instances += 1;
                let observed = longest_lyndon_at(t, position, order).unwrap();
                if observed != run.period {
                    out.counterexamples.push(Witness::new(
                        t,
                        Some(order),
                        Detail::LongestLyndon {
                            run,
                            position,
                            expected: run.period,
                            observed,
                        },
                    ));
                }
            }
        }
    }
    out
}

pub fn check_lemma4(t: &[u8]) -> LemmaReport {
    LemmaReport::single(LemmaId::Lemma4, t, &[], lemma4_outcome(t))
}

fn lemma6_outcome(t: &[u8], order: LexOrder) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    if t.is_empty() {
        return out;
    }
    let tree = lyndon_tree(t, order).unwrap();
    let right = tree.right_node_intervals();
    let whole = (!tree.sentinel_prepended()).then(|| Interval::new(1, t.len()));
    let longest: BTreeSet<Interval> = (1..=t.len())
        .map(|i| Interval::new(i, i + longest_lyndon_at(t, i, order).unwrap() - 1))
        .filter(|iv| Some(*iv) != whole)
        .collect();
    out.instances = longest.union(&right).count() as u64;
    for &interval in longest.symmetric_difference(&right) {
        out.counterexamples.push(Witness::new(
            t,
            Some(order),
            Detail::RightNode {
                interval,
                is_right_node: right.contains(&interval),
                is_longest_lyndon: longest.contains(&interval),
            },
        ));
    }
    out
}

pub fn check_lemma6(t: &[u8], order: LexOrder) -> LemmaReport {
    LemmaReport::single(LemmaId::Lemma6, t, &[order], lemma6_outcome(t, order))
}

/// Runs the single-text checker of `lemma` under each of `orders` (for
/// the order-taking lemmas) and merges the outcomes.
///
/// Lemma 2 has no single-text form and yields an empty outcome.
pub fn outcome_for(lemma: LemmaId, t: &[u8], orders: &[LexOrder]) -> CheckOutcome {
    let mut out = CheckOutcome::default();
    match lemma {
        LemmaId::Lemma1 => out = lemma1_outcome(t),
        LemmaId::Lemma4 => out = lemma4_outcome(t),
        LemmaId::Cor2 => out = cor2_outcome(t),
        LemmaId::Lemma2 => {}
        LemmaId::Lemma3 | LemmaId::Cor1 | LemmaId::Lemma6 => {
            for &order in orders {
                out.absorb(match lemma {
                    LemmaId::Lemma3 => two_squares_outcome(t, order, true),
                    LemmaId::Cor1 => two_squares_outcome(t, order, false),
                    _ => lemma6_outcome(t, order),
                });
            }
        }
    }
    out
}

/// Re-runs the single-instance checker on a witness; true when the same
/// witness is produced again.
pub fn replay(lemma: LemmaId, witness: &Witness) -> bool {
    if let Detail::Crossing {
        v_codes,
        x_len,
        z_len,
        ..
    } = &witness.detail
    {
        return lemma2_crossing(v_codes, &witness.codes) == Some((*x_len, *z_len));
    }
    let orders: Vec<LexOrder> = witness.order.into_iter().collect();
    let out = outcome_for(lemma, &witness.codes, &orders);
    out.counterexamples.contains(witness) || out.equalities.contains(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Text;

    use LexOrder::{Order0, Order1};

    fn three_squares_text() -> Text {
        Text::from_binary01("0100101001001010").unwrap()
    }

    #[test]
    fn three_squares_examples() {
        let got = check_three_squares(&three_squares_text());
        assert_eq!(got.len(), 1);
        let inst = got[0];
        assert_eq!((inst.u, inst.v, inst.w), (8, 5, 3));
        assert!(inst.satisfied && inst.equality && inst.w_primitive);

        let got = check_three_squares(b"aaaaaa");
        assert_eq!(got.len(), 1);
        assert_eq!((got[0].u, got[0].v, got[0].w), (3, 2, 1));
        assert!(got[0].equality);

        // w = aa is not primitive
        let all = three_square_triples(b"aaaaaaaa");
        assert!(all.iter().any(|i| !i.w_primitive));
        assert!(check_three_squares(b"aaaaaaaa")
            .iter()
            .all(|i| i.w_primitive));

        assert!(check_three_squares(b"ab").is_empty());
    }

    #[test]
    fn lemma2_examples() {
        for (v, w_max) in [(&[0u8, 1][..], 6), (&[0], 4), (&[0, 0, 1], 8)] {
            let report = check_lemma2(v, 2, w_max, Order0).unwrap();
            assert!(report.holds());
            assert!(report.instances_checked > 0);
        }
        assert!(matches!(
            check_lemma2(&[1, 0], 2, 4, Order0),
            Err(Error::NotLyndon)
        ));
        assert!(check_lemma2(&[1, 0], 2, 4, Order1).unwrap().holds());
    }

    #[test]
    fn lemma2_crossing_detects_splits() {
        // v = ab: "ba" would start with suffix b and end with prefix a
        assert_eq!(lemma2_crossing(b"ab", b"ba"), Some((1, 1)));
        assert_eq!(lemma2_crossing(b"ab", b"ab"), None);
        assert_eq!(lemma2_crossing(b"a", b"a"), None);
        assert_eq!(lemma2_crossing(b"a", b"aba"), Some((1, 1)));
    }

    #[test]
    fn lemma3_examples() {
        let report = check_lemma3(b"aaaa", Order0);
        assert!(report.holds());
        assert_eq!(report.instances_checked, 1);
        for order in LexOrder::BOTH {
            let report = check_lemma3(&three_squares_text(), order);
            assert!(report.holds());
            assert!(report.instances_checked >= 3);
        }
    }

    #[test]
    fn corollary1_examples() {
        assert!(check_corollary1(b"aaaa", Order0).holds());
        // outer abab at 1 has r = [1..4] under a < b; nothing starts before it
        let squares = square_occurrences(b"ababab");
        let roots = square_roots(b"ababab", &squares, Order0);
        let outer = squares
            .iter()
            .position(|s| s.pos == 1 && s.root_len == 2)
            .unwrap();
        assert_eq!(roots[outer], Interval::new(1, 4));
        let two = two_squares_outcome(b"abab", Order0, false);
        assert_eq!(two.instances, 0);
    }

    #[test]
    fn corollary2_examples() {
        let report = check_corollary2(&three_squares_text());
        assert!(report.holds());
        assert!(report.equality_witnesses.iter().any(
            |w| matches!(w.detail, Detail::NestedSquares { u, v, w, .. }
                if u == SquareOcc { pos: 1, root_len: 8 }
                    && v == SquareOcc { pos: 1, root_len: 5 }
                    && w == SquareOcc { pos: 1, root_len: 3 })
        ));
        let report = check_corollary2(b"abc");
        assert!(report.holds());
        assert_eq!(report.instances_checked, 0);
    }

    #[test]
    fn lemma4_examples() {
        let report = check_lemma4(b"mississippi");
        assert!(report.holds());
        // two occurrences for each of the four runs
        assert_eq!(report.instances_checked, 8);
        let report = check_lemma4(b"aaaa");
        assert!(report.holds());
        // a at 1..4, checked under both orders (run touches the end)
        assert_eq!(report.instances_checked, 8);
    }

    #[test]
    fn lemma6_examples() {
        assert!(check_lemma6(b"aabab", Order0).holds());
        let report = check_lemma6(b"a", Order0);
        assert!(report.holds());
        assert_eq!(report.instances_checked, 0);
    }

    #[test]
    fn witnesses_replay() {
        let t = three_squares_text();
        let report = check_corollary2(&t);
        for w in &report.equality_witnesses {
            assert!(replay(LemmaId::Cor2, w));
        }
        let lemma1 = outcome_for(LemmaId::Lemma1, &t, &[]);
        assert!(replay(LemmaId::Lemma1, &lemma1.equalities[0]));
        let fake = Witness::new(&t, None, Detail::ThreeSquares { u: 8, v: 5, w: 2 });
        assert!(!replay(LemmaId::Lemma1, &fake));
        let crossing = Witness::new(
            b"ba",
            Some(Order0),
            Detail::Crossing {
                v: "ab".into(),
                v_codes: b"ab".to_vec(),
                x_len: 1,
                z_len: 1,
            },
        );
        assert!(replay(LemmaId::Lemma2, &crossing));
    }
}
