//! One-shot structural report of a text.

use serde::Serialize;

use crate::lemmas::{check_three_squares, ThreeSquaresInstance};
use crate::repetitions::{l_root, run_order, runs_lyndon, LRootInfo, Run};
use crate::squares::{
    distinct_squares_count, psq_occurrences_bruteforce, square_prefixes_flagged, SquareOcc,
    SquarePrefix,
};
use crate::text::{render, Text};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    #[serde(flatten)]
    pub run: Run,
    pub length: usize,
    pub sentinel_resolved: bool,
    pub lambda_text: String,
    pub l_root: LRootInfo,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Analysis {
    pub text: String,
    pub length: usize,
    pub runs: Vec<RunReport>,
    pub psq_occurrences: Vec<SquareOcc>,
    pub psq_count_bruteforce: usize,
    pub psq_count_runs: usize,
    pub square_prefixes: Vec<SquarePrefix>,
    pub three_squares: Vec<ThreeSquaresInstance>,
    pub distinct_squares: usize,
}

impl Analysis {
    pub fn psq_counts_agree(&self) -> bool {
        self.psq_count_bruteforce == self.psq_count_runs
    }

    pub fn square_prefix_lengths(&self) -> Vec<usize> {
        self.square_prefixes.iter().map(|p| p.root_len).collect()
    }
}

pub fn analyze(t: &Text) -> Analysis {
    let runs: Vec<RunReport> = runs_lyndon(t)
        .into_iter()
        .map(|run| {
            let order = run_order(t, run).expect("computed run");
            let info = l_root(t, run).expect("computed run");
            RunReport {
                run,
                length: run.len(),
                sentinel_resolved: order.sentinel_resolved,
                lambda_text: render(info.lambda.of(t)),
                l_root: info,
            }
        })
        .collect();
    let psq_occurrences = psq_occurrences_bruteforce(t);
    Analysis {
        text: t.to_string(),
        length: t.len(),
        psq_count_bruteforce: psq_occurrences.len(),
        psq_count_runs: runs.iter().map(|r| r.run.square_count()).sum(),
        runs,
        psq_occurrences,
        square_prefixes: square_prefixes_flagged(t),
        three_squares: check_three_squares(t),
        distinct_squares: distinct_squares_count(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mississippi() {
        let a = analyze(&Text::from("mississippi"));
        assert_eq!(a.runs.len(), 4);
        assert_eq!((a.psq_count_bruteforce, a.psq_count_runs), (5, 5));
        assert_eq!(a.runs[0].lambda_text, "iss");
    }

    #[test]
    fn three_squares_string() {
        let a = analyze(&Text::from_binary01("0100101001001010").unwrap());
        assert_eq!(a.square_prefix_lengths(), vec![3, 5, 8]);
        assert_eq!(a.three_squares.len(), 1);
        assert!(a.psq_counts_agree());
    }

    #[test]
    fn unary() {
        let a = analyze(&Text::from("aaaa"));
        assert_eq!(a.runs.len(), 1);
        assert_eq!(a.psq_count_runs, 3);
        assert!(a.runs[0].sentinel_resolved);
    }
}
