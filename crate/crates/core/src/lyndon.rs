//! Lyndon words: predicates, Duval factorization, standard factorization,
//! Lyndon trees and longest-Lyndon-word queries.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::text::{render, Interval, LexOrder};

const SENTINEL_KEY: i16 = -1;

/// Duval's algorithm over order keys; returns 0-based `(start, len)` pairs.
fn duval_keys(s: &[i16]) -> Vec<(usize, usize)> {
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let (mut j, mut k) = (i + 1, i);
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push((i, j - k));
            i += j - k;
        }
    }
    factors
}

fn is_lyndon_keys(s: &[i16]) -> bool {
    if s.is_empty() {
        return false;
    }
    let (mut j, mut k) = (1, 0);
    while j < s.len() && s[k] <= s[j] {
        if s[k] < s[j] {
            k = 0;
        } else {
            k += 1;
        }
        j += 1;
    }
    j == s.len() && k == 0
}

/// Start of the lexicographically smallest nonempty suffix: the last
/// factor of the Lyndon factorization.
fn min_suffix_start(s: &[i16]) -> usize {
    duval_keys(s).last().map_or(0, |&(start, _)| start)
}

pub fn is_lyndon(t: &[u8], order: LexOrder) -> Result<bool> {
    if t.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(is_lyndon_keys(&order.keys(t)))
}

/// The unique factorization into non-increasing Lyndon factors.
pub fn duval_factorization(t: &[u8], order: LexOrder) -> Result<Vec<Interval>> {
    if t.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(duval_keys(&order.keys(t))
        .into_iter()
        .map(|(start, len)| Interval::new(start + 1, start + len))
        .collect())
}

/// Splits a Lyndon word `t = uv` where `v` is its smallest proper suffix.
pub fn standard_factorization(t: &[u8], order: LexOrder) -> Result<(Interval, Interval)> {
    let keys = order.keys(t);
    if t.len() < 2 || !is_lyndon_keys(&keys) {
        return Err(Error::NotFactorable);
    }
    let split = 1 + min_suffix_start(&keys[1..]);
    Ok((Interval::new(1, split), Interval::new(split + 1, t.len())))
}

/// Length of the longest Lyndon word starting at 1-based position `i`.
///
/// Tries every prefix of `t[i..]`; this is the slow reference route.
/// [`LyndonTree::longest_lyndon_lengths`] gives the same answer from the
/// right nodes of the tree.
pub fn longest_lyndon_at(t: &[u8], i: usize, order: LexOrder) -> Result<usize> {
    if i == 0 || i > t.len() {
        return Err(Error::BadPosition {
            pos: i,
            len: t.len(),
        });
    }
    let keys = order.keys(&t[i - 1..]);
    Ok((1..=keys.len())
        .rev()
        .find(|&len| is_lyndon_keys(&keys[..len]))
        .unwrap_or(1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeNode {
    pub interval: Interval,
    /// Indices of the left and right child in [`LyndonTree::nodes`].
    pub children: Option<(usize, usize)>,
    pub is_right_child: bool,
}

/// Lyndon tree of a text under one order.
///
/// When the text is not a Lyndon word the tree is built over `$t`, where
/// `$` is smaller than every symbol. Text positions are kept as they are
/// and the sentinel sits at pseudo-position 0.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LyndonTree {
    order: LexOrder,
    sentinel_prepended: bool,
    #[serde(skip)]
    symbols: Vec<u8>,
    root: usize,
    nodes: Vec<TreeNode>,
}

impl LyndonTree {
    pub fn build(t: &[u8], order: LexOrder) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::EmptyText);
        }
        let mut keys = order.keys(t);
        let sentinel_prepended = !is_lyndon_keys(&keys);
        // node intervals are `key index + offset`
        let offset = if sentinel_prepended {
            keys.insert(0, SENTINEL_KEY);
            0
        } else {
            1
        };
        let leaf = |a: usize, b: usize, right: bool| TreeNode {
            interval: Interval::new(a + offset, b + offset),
            children: None,
            is_right_child: right,
        };

        let mut nodes = vec![leaf(0, keys.len() - 1, false)];
        let mut stack = vec![0usize];
        while let Some(idx) = stack.pop() {
            let a = nodes[idx].interval.start - offset;
            let b = nodes[idx].interval.end - offset;
            if a == b {
                continue;
            }
            let m = a + 1 + min_suffix_start(&keys[a + 1..=b]);
            let left = nodes.len();
            nodes.push(leaf(a, m - 1, false));
            nodes.push(leaf(m, b, true));
            nodes[idx].children = Some((left, left + 1));
            stack.push(left + 1);
            stack.push(left);
        }

        Ok(LyndonTree {
            order,
            sentinel_prepended,
            symbols: t.to_vec(),
            root: 0,
            nodes,
        })
    }

    pub fn order(&self) -> LexOrder {
        self.order
    }

    pub fn sentinel_prepended(&self) -> bool {
        self.sentinel_prepended
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[self.root]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn text(&self) -> &[u8] {
        &self.symbols
    }

    /// Internal nodes as `(node, left child, right child)` intervals, in
    /// preorder.
    pub fn splits(&self) -> Vec<(Interval, Interval, Interval)> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(idx) = stack.pop() {
            if let Some((l, r)) = self.nodes[idx].children {
                out.push((
                    self.nodes[idx].interval,
                    self.nodes[l].interval,
                    self.nodes[r].interval,
                ));
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    pub fn right_node_intervals(&self) -> BTreeSet<Interval> {
        self.nodes
            .iter()
            .filter(|n| n.is_right_child)
            .map(|n| n.interval)
            .collect()
    }

    /// Longest Lyndon word length for every text position (index 0 is
    /// position 1), read off the right nodes.
    pub fn longest_lyndon_lengths(&self) -> Vec<usize> {
        let n = self.symbols.len();
        let mut lengths = vec![0; n];
        for node in self.nodes.iter().filter(|n| n.is_right_child) {
            lengths[node.interval.start - 1] = node.interval.len();
        }
        if !self.sentinel_prepended {
            // position 1 starts the whole (Lyndon) word
            lengths[0] = n;
        }
        lengths
    }

    /// Rendered label of a node interval, `$` standing for the sentinel.
    pub fn label(&self, interval: Interval) -> String {
        let mut s = String::new();
        let mut start = interval.start;
        if start == 0 {
            s.push('$');
            start = 1;
        }
        if start <= interval.end {
            s.push_str(&render(&self.symbols[start - 1..interval.end]));
        }
        s
    }

    /// Graphviz rendering; right children are filled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lyndon_tree {\n  node [shape=box];\n");
        for (idx, node) in self.nodes.iter().enumerate() {
            let label = format!("{} {}", node.interval, self.label(node.interval))
                .replace('\\', "\\\\")
                .replace('"', "\\\"");
            let style = if node.is_right_child {
                ", style=filled, fillcolor=lightgray"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{idx} [label=\"{label}\"{style}];");
        }
        for (idx, node) in self.nodes.iter().enumerate() {
            if let Some((l, r)) = node.children {
                let _ = writeln!(out, "  n{idx} -> n{l} [label=\"L\"];");
                let _ = writeln!(out, "  n{idx} -> n{r} [label=\"R\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn lyndon_tree(t: &[u8], order: LexOrder) -> Result<LyndonTree> {
    LyndonTree::build(t, order)
}

pub fn right_node_intervals(tree: &LyndonTree) -> BTreeSet<Interval> {
    tree.right_node_intervals()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{border_array, compare};
    use proptest::prelude::*;
    use std::cmp::Ordering;

    use LexOrder::{Order0, Order1};

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    fn naive_lyndon(t: &[u8], order: LexOrder) -> bool {
        !t.is_empty() && (1..t.len()).all(|k| compare(order, t, &t[k..]) == Ordering::Less)
    }

    fn all_strings(sigma: u8, len: usize) -> Vec<Vec<u8>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|s| {
                    (0..sigma).map(move |c| {
                        let mut s = s.clone();
                        s.push(c);
                        s
                    })
                })
                .collect();
        }
        out
    }

    /// Every factorization into Lyndon factors with non-increasing factors.
    fn lyndon_factorizations(t: &[u8], order: LexOrder) -> Vec<Vec<Interval>> {
        fn go(
            t: &[u8],
            from: usize,
            order: LexOrder,
            acc: &mut Vec<Interval>,
            out: &mut Vec<Vec<Interval>>,
        ) {
            if from == t.len() {
                out.push(acc.clone());
                return;
            }
            for end in from + 1..=t.len() {
                if !naive_lyndon(&t[from..end], order) {
                    continue;
                }
                if let Some(prev) = acc.last() {
                    let prev = &t[prev.start - 1..prev.end];
                    if compare(order, prev, &t[from..end]) == Ordering::Less {
                        continue;
                    }
                }
                acc.push(iv(from + 1, end));
                go(t, end, order, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(t, 0, order, &mut Vec::new(), &mut out);
        out
    }

    fn smallest_proper_suffix(t: &[u8], order: LexOrder) -> usize {
        (1..t.len())
            .min_by(|&a, &b| compare(order, &t[a..], &t[b..]))
            .unwrap()
    }

    #[test]
    fn is_lyndon_examples() {
        assert!(is_lyndon(b"aab", Order0).unwrap());
        assert!(!is_lyndon(b"aba", Order0).unwrap());
        assert!(is_lyndon(b"bba", Order1).unwrap());
        assert!(matches!(is_lyndon(b"", Order0), Err(Error::EmptyText)));
    }

    #[test]
    fn duval_examples() {
        assert_eq!(
            duval_factorization(b"aaa", Order0).unwrap(),
            vec![iv(1, 1), iv(2, 2), iv(3, 3)]
        );
        assert_eq!(duval_factorization(b"aab", Order0).unwrap(), vec![iv(1, 3)]);
        let oracle = lyndon_factorizations(b"banana", Order0);
        assert_eq!(oracle.len(), 1);
        assert_eq!(oracle[0], vec![iv(1, 1), iv(2, 3), iv(4, 5), iv(6, 6)]);
        assert_eq!(duval_factorization(b"banana", Order0).unwrap(), oracle[0]);
        assert!(duval_factorization(b"", Order0).is_err());
    }

    #[test]
    fn standard_factorization_examples() {
        assert_eq!(
            standard_factorization(b"ab", Order0).unwrap(),
            (iv(1, 1), iv(2, 2))
        );
        assert_eq!(smallest_proper_suffix(b"aabab", Order0), 3);
        assert_eq!(
            standard_factorization(b"aabab", Order0).unwrap(),
            (iv(1, 3), iv(4, 5))
        );
        assert_eq!(smallest_proper_suffix(b"aabb", Order0), 1);
        assert_eq!(
            standard_factorization(b"aabb", Order0).unwrap(),
            (iv(1, 1), iv(2, 4))
        );
        assert!(matches!(
            standard_factorization(b"a", Order0),
            Err(Error::NotFactorable)
        ));
        assert!(matches!(
            standard_factorization(b"ba", Order0),
            Err(Error::NotFactorable)
        ));
    }

    #[test]
    fn tree_examples() {
        let tree = lyndon_tree(b"ab", Order0).unwrap();
        assert!(!tree.sentinel_prepended());
        assert_eq!(tree.splits(), vec![(iv(1, 2), iv(1, 1), iv(2, 2))]);
        assert_eq!(tree.right_node_intervals(), BTreeSet::from([iv(2, 2)]));

        let tree = lyndon_tree(b"aabab", Order0).unwrap();
        assert_eq!(
            tree.splits(),
            vec![
                (iv(1, 5), iv(1, 3), iv(4, 5)),
                (iv(1, 3), iv(1, 1), iv(2, 3)),
                (iv(2, 3), iv(2, 2), iv(3, 3)),
                (iv(4, 5), iv(4, 4), iv(5, 5)),
            ]
        );
        assert_eq!(
            right_node_intervals(&tree),
            BTreeSet::from([iv(4, 5), iv(2, 3), iv(3, 3), iv(5, 5)])
        );

        let tree = lyndon_tree(b"ba", Order0).unwrap();
        assert!(tree.sentinel_prepended());
        assert_eq!(tree.root().interval, iv(0, 2));
        assert_eq!(tree.splits()[0], (iv(0, 2), iv(0, 1), iv(2, 2)));
        assert_eq!(tree.label(iv(0, 2)), "$ba");

        let tree = lyndon_tree(b"aaa", Order0).unwrap();
        assert!(tree.right_node_intervals().iter().all(|r| r.len() == 1));

        assert!(lyndon_tree(b"", Order0).is_err());
    }

    #[test]
    fn longest_lyndon_examples() {
        assert_eq!(longest_lyndon_at(b"ab", 1, Order0).unwrap(), 2);
        assert_eq!(longest_lyndon_at(b"mississippi", 2, Order0).unwrap(), 3);
        assert_eq!(longest_lyndon_at(b"aaaa", 2, Order0).unwrap(), 1);
        assert!(matches!(
            longest_lyndon_at(b"ab", 3, Order0),
            Err(Error::BadPosition { pos: 3, len: 2 })
        ));
        assert!(longest_lyndon_at(b"ab", 0, Order0).is_err());
    }

    #[test]
    fn dot_marks_right_children() {
        let dot = lyndon_tree(b"ab", Order0).unwrap().to_dot();
        assert_eq!(dot.matches("[label=\"[").count(), 3);
        assert_eq!(dot.matches("filled").count(), 1);
        assert!(dot.contains("[2..2] b"));
    }

    #[test]
    fn exhaustive_binary_properties() {
        for len in 1..=12 {
            for t in all_strings(2, len) {
                for order in LexOrder::BOTH {
                    let lyndon = is_lyndon(&t, order).unwrap();
                    assert_eq!(lyndon, naive_lyndon(&t, order), "{t:?}");
                    if lyndon {
                        // unbordered
                        assert_eq!(*border_array(&t).last().unwrap(), 0);
                        if len >= 2 {
                            let (u, v) = standard_factorization(&t, order).unwrap();
                            assert_eq!(v.start - 1, smallest_proper_suffix(&t, order));
                            assert!(naive_lyndon(u.of(&t), order));
                            assert!(naive_lyndon(v.of(&t), order));
                        }
                    }

                    let factors = duval_factorization(&t, order).unwrap();
                    let glued: Vec<u8> = factors.iter().flat_map(|f| f.of(&t).to_vec()).collect();
                    assert_eq!(glued, t);
                    for w in factors.windows(2) {
                        assert_ne!(compare(order, w[0].of(&t), w[1].of(&t)), Ordering::Less);
                    }
                    assert!(factors.iter().all(|f| naive_lyndon(f.of(&t), order)));

                    let tree = lyndon_tree(&t, order).unwrap();
                    let fast = tree.longest_lyndon_lengths();
                    for i in 1..=len {
                        assert_eq!(
                            fast[i - 1],
                            longest_lyndon_at(&t, i, order).unwrap(),
                            "{t:?} {order} {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn duval_is_the_unique_factorization() {
        for len in 1..=8 {
            for t in all_strings(3, len) {
                let oracle = lyndon_factorizations(&t, Order1);
                assert_eq!(oracle.len(), 1);
                assert_eq!(duval_factorization(&t, Order1).unwrap(), oracle[0]);
            }
        }
    }

    fn check_tree_shape(tree: &LyndonTree) {
        let keys = {
            let mut k = tree.order().keys(tree.text());
            if tree.sentinel_prepended() {
                k.insert(0, SENTINEL_KEY);
            }
            k
        };
        let shift = usize::from(!tree.sentinel_prepended());
        let slice = |iv: Interval| &keys[iv.start - shift..=iv.end - shift];
        let mut leaves = 0;
        for node in tree.nodes() {
            assert!(is_lyndon_keys(slice(node.interval)));
            match node.children {
                None => {
                    assert_eq!(node.interval.len(), 1);
                    leaves += 1;
                }
                Some((l, r)) => {
                    let (l, r) = (&tree.nodes()[l], &tree.nodes()[r]);
                    assert_eq!(l.interval.start, node.interval.start);
                    assert_eq!(l.interval.end + 1, r.interval.start);
                    assert_eq!(r.interval.end, node.interval.end);
                    assert!(!l.is_right_child && r.is_right_child);
                }
            }
        }
        assert_eq!(leaves, keys.len());
    }

    proptest! {
        #[test]
        fn tree_is_a_full_binary_lyndon_tree(
            t in proptest::collection::vec(0u8..4, 1..60),
            flip in any::<bool>(),
        ) {
            let order = if flip { Order1 } else { Order0 };
            check_tree_shape(&lyndon_tree(&t, order).unwrap());
        }

        #[test]
        fn min_suffix_matches_brute_force(t in proptest::collection::vec(0u8..3, 1..40)) {
            let keys = Order0.keys(&t);
            let brute = (0..t.len())
                .min_by(|&a, &b| keys[a..].cmp(&keys[b..]))
                .unwrap();
            prop_assert_eq!(min_suffix_start(&keys), brute);
        }
    }
}
