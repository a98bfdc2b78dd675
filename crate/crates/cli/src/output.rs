use std::fmt::Write as _;
use std::io::{self, Write as _};

use serde::Serialize;
use serde_json::{json, Value};
use sqlab_core::bounds::{fib_psq_constant, BoundReport, FibRecord, SBoundReport};
use sqlab_core::lyndon::LyndonTree;

/// Writes to stdout, ignoring a closed pipe.
pub fn emit(s: &str) {
    let _ = io::stdout().lock().write_all(s.as_bytes());
}

pub fn print_json<T: Serialize + ?Sized>(value: &T) {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    emit(&s);
}

pub fn tree_listing(trees: &[LyndonTree]) -> Value {
    let listed: Vec<Value> = trees
        .iter()
        .map(|tree| {
            let splits: Vec<Value> = tree
                .splits()
                .into_iter()
                .map(|(node, left, right)| {
                    json!({
                        "node": node,
                        "left": left,
                        "right": right,
                        "labels": [tree.label(node), tree.label(left), tree.label(right)],
                    })
                })
                .collect();
            json!({
                "order": tree.order(),
                "sentinelPrepended": tree.sentinel_prepended(),
                "sentinelPosition": tree.sentinel_prepended().then_some(0),
                "root": tree.root().interval,
                "splits": splits,
                "rightNodes": tree.right_node_intervals(),
            })
        })
        .collect();
    if listed.len() == 1 {
        listed.into_iter().next().unwrap()
    } else {
        Value::Array(listed)
    }
}

pub fn tree_tsv(trees: &[LyndonTree]) -> String {
    let mut out = String::from("order\tnode\tleft\tright\tsentinel\n");
    for tree in trees {
        for (node, left, right) in tree.splits() {
            let _ = writeln!(
                out,
                "{}\t{node}\t{left}\t{right}\t{}",
                tree.order(),
                tree.sentinel_prepended()
            );
        }
    }
    out
}

pub fn sn_tsv(report: &SBoundReport) -> String {
    let mut out = String::from("n\tS\tbound\tgap\tsplit\tequality\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.n, r.s, r.bound, r.gap, r.split, r.equality
        );
    }
    out
}

pub fn psq_tsv(reports: &[BoundReport]) -> String {
    let mut out = String::from("n\tsigma\tpsqMax\tnLog2n\tnLogPhiN\twitnessCount\twitnesses\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.n,
            r.sigma,
            r.psq_max,
            r.n_log2_n,
            r.n_log_phi_n,
            r.witness_count,
            r.witnesses.join(",")
        );
    }
    out
}

pub fn fib_json(series: &[FibRecord]) -> Value {
    json!({
        "constant": fib_psq_constant(),
        "records": series,
    })
}

pub fn fib_tsv(series: &[FibRecord]) -> String {
    let mut out = format!(
        "# c = {}\nk\tFk\tcount\tbruteforce\tleadingTerm\tratio\n",
        fib_psq_constant()
    );
    for r in series {
        let brute = r
            .bruteforce
            .map_or_else(|| "-".to_string(), |b| b.to_string());
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.k, r.length, r.count, brute, r.leading_term, r.ratio
        );
    }
    out
}
