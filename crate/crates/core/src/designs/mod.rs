//! The Witt design W23 from the binary Golay code, the McLaughlin graph built on it, and the
//! arithmetic that rules out sharply transitive point-stabilizer subsets in symmetric designs.

mod automorphism;
mod graph;
mod symmetric;
mod witt;

pub use automorphism::{is_automorphism, random_automorphism};
pub use graph::{common_neighborhood, mclaughlin_graph, srg_check, Graph, SrgReport, VertexKind};
pub use symmetric::{
    symmetric_design_refutation, RefutationOutcome, RefutationStep, RefutationTrace,
    SymmetricDesignParams,
};
pub use witt::{golay_witt_design, steiner_violations, MCL_SPECIAL_POINT};

use std::fmt::Write as _;

use thiserror::Error;

use crate::bitset::PointSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("invalid symmetric design parameters ({v}, {k}, {lambda}): {reason}")]
    Params {
        v: u64,
        k: u64,
        lambda: u64,
        reason: &'static str,
    },
    #[error("block {0} has the wrong size")]
    BlockSize(usize),
    #[error("design file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Points `0..v` with `k`-subsets as blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub name: String,
    pub v: usize,
    pub k: usize,
    pub blocks: Vec<PointSet>,
}

impl Design {
    pub fn new(name: impl Into<String>, v: usize, k: usize, blocks: Vec<PointSet>) -> Result<Self, DesignError> {
        if let Some(i) = blocks.iter().position(|b| b.count() != k || b.universe() != v) {
            return Err(DesignError::BlockSize(i));
        }
        Ok(Self {
            name: name.into(),
            v,
            k,
            blocks,
        })
    }

    pub fn blocks_through(&self, point: usize) -> Vec<&PointSet> {
        self.blocks.iter().filter(|b| b.contains(point)).collect()
    }

    pub fn blocks_avoiding(&self, point: usize) -> Vec<&PointSet> {
        self.blocks.iter().filter(|b| !b.contains(point)).collect()
    }

    /// Multiset of `|B ∩ B'|` over unordered pairs of distinct blocks.
    pub fn intersection_spectrum(&self) -> std::collections::BTreeMap<usize, u64> {
        let mut spectrum = std::collections::BTreeMap::new();
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                *spectrum.entry(a.intersection_count(b)).or_insert(0) += 1;
            }
        }
        spectrum
    }

    /// `v k b`, then one block per line as sorted points.
    pub fn to_file(&self) -> String {
        let mut out = format!("{} {} {}\n", self.v, self.k, self.blocks.len());
        for b in &self.blocks {
            let pts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{}", pts.join(" ")).unwrap();
        }
        out
    }

    pub fn from_file(name: &str, text: &str) -> Result<Self, DesignError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_nums = |line: usize, l: &str| -> Result<Vec<usize>, DesignError> {
            l.split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| DesignError::Parse {
                    line,
                    msg: e.to_string(),
                })
        };
        let (hline, header) = lines.next().ok_or(DesignError::Parse {
            line: 0,
            msg: "empty file".into(),
        })?;
        let header = parse_nums(hline, header)?;
        let [v, k, b] = header[..] else {
            return Err(DesignError::Parse {
                line: hline,
                msg: "expected `v k b`".into(),
            });
        };
        let mut blocks = Vec::with_capacity(b);
        for (line, l) in lines {
            let pts = parse_nums(line, l)?;
            if pts.iter().any(|&x| x >= v) {
                return Err(DesignError::Parse {
                    line,
                    msg: "point out of range".into(),
                });
            }
            blocks.push(PointSet::from_points(v, pts));
        }
        if blocks.len() != b {
            return Err(DesignError::Parse {
                line: 0,
                msg: format!("expected {b} blocks, found {}", blocks.len()),
            });
        }
        Design::new(name, v, k, blocks)
    }
}
