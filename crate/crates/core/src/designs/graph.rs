use std::fmt::Write as _;

use serde::Serialize;

use super::{Design, MCL_SPECIAL_POINT};
use crate::bitset::PointSet;

/// Origin of a McLaughlin graph vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// A point of W23 other than the special point.
    Point(usize),
    /// A block through the special point.
    BlockThrough(PointSet),
    /// A block avoiding the special point.
    BlockAvoiding(PointSet),
}

/// A simple undirected graph with bitset adjacency.
#[derive(Debug, Clone)]
pub struct Graph {
    pub adjacency: Vec<PointSet>,
    pub kinds: Option<Vec<VertexKind>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![PointSet::empty(n); n];
        for (a, b) in edges {
            assert_ne!(a, b, "loops are not allowed");
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        Self {
            adjacency,
            kinds: None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adjacency[a].count()
    }

    pub fn is_simple(&self) -> bool {
        (0..self.vertex_count()).all(|a| {
            !self.adjacent(a, a) && self.adjacency[a].iter().all(|b| self.adjacent(b, a))
        })
    }

    /// Vertices of the given kind class, e.g. all `VertexKind::Point` vertices.
    pub fn vertices_where(&self, pred: impl Fn(&VertexKind) -> bool) -> PointSet {
        let kinds = self.kinds.as_ref().expect("graph has vertex labels");
        PointSet::from_points(
            self.vertex_count(),
            kinds.iter().enumerate().filter(|(_, k)| pred(k)).map(|(i, _)| i),
        )
    }

    /// Non-adjacent pairs `i < j`.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |i| (i + 1..n).filter(move |&j| !self.adjacent(i, j)).map(move |j| (i, j)))
    }

    /// `v`, then one adjacency row per line as a bit string.
    pub fn to_file(&self) -> String {
        let n = self.vertex_count();
        let mut out = format!("{n}\n");
        for row in &self.adjacency {
            let bits: String = (0..n).map(|j| if row.contains(j) { '1' } else { '0' }).collect();
            writeln!(out, "{bits}").unwrap();
        }
        out
    }
}

/// The McLaughlin graph on 22 + 77 + 176 = 275 vertices: the points of W23 other than the
/// special point, the blocks through it, and the blocks avoiding it, in that order.
pub fn mclaughlin_graph(w23: &Design) -> Graph {
    let q = MCL_SPECIAL_POINT;
    let mut kinds: Vec<VertexKind> = (0..w23.v).filter(|&p| p != q).map(VertexKind::Point).collect();
    kinds.extend(w23.blocks_through(q).into_iter().cloned().map(VertexKind::BlockThrough));
    kinds.extend(w23.blocks_avoiding(q).into_iter().cloned().map(VertexKind::BlockAvoiding));
    let n = kinds.len();

    use VertexKind::*;
    let adjacent = |a: &VertexKind, b: &VertexKind| match (a, b) {
        (Point(_), Point(_)) => false,
        (Point(p), BlockThrough(u)) | (BlockThrough(u), Point(p)) => !u.contains(*p),
        (Point(p), BlockAvoiding(v)) | (BlockAvoiding(v), Point(p)) => v.contains(*p),
        (BlockThrough(u), BlockThrough(w)) => u.intersection_count(w) == 1,
        (BlockAvoiding(v), BlockAvoiding(w)) => v.intersection_count(w) == 1,
        (BlockThrough(u), BlockAvoiding(v)) | (BlockAvoiding(v), BlockThrough(u)) => {
            u.intersection_count(v) == 3
        }
    };
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| adjacent(&kinds[i], &kinds[j]))
        .collect();
    let mut g = Graph::from_edges(n, edges);
    g.kinds = Some(kinds);
    g
}

pub fn common_neighborhood(graph: &Graph, i: usize, j: usize) -> PointSet {
    assert_ne!(i, j, "common neighbourhood needs two distinct vertices");
    graph.adjacency[i].intersection(&graph.adjacency[j])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgReport {
    pub params: (usize, usize, usize, usize),
    pub passed: bool,
    pub adjacent_pairs: usize,
    pub non_adjacent_pairs: usize,
    pub first_violation: Option<String>,
}

/// Checks strong regularity with parameters `(v, k, lambda, mu)` on every pair of vertices.
pub fn srg_check(graph: &Graph, params: (usize, usize, usize, usize)) -> SrgReport {
    let (v, k, lambda, mu) = params;
    let mut report = SrgReport {
        params,
        passed: false,
        adjacent_pairs: 0,
        non_adjacent_pairs: 0,
        first_violation: None,
    };
    let n = graph.vertex_count();
    if n != v {
        report.first_violation = Some(format!("vertex count {n} != {v}"));
        return report;
    }
    if !graph.is_simple() {
        report.first_violation = Some("adjacency is not symmetric and loop-free".into());
        return report;
    }
    if let Some(a) = (0..n).find(|&a| graph.degree(a) != k) {
        report.first_violation = Some(format!("vertex {a} has degree {}", graph.degree(a)));
        return report;
    }
    for i in 0..n {
        for j in i + 1..n {
            let common = graph.adjacency[i].intersection_count(&graph.adjacency[j]);
            let (expected, kind) = if graph.adjacent(i, j) {
                report.adjacent_pairs += 1;
                (lambda, "adjacent")
            } else {
                report.non_adjacent_pairs += 1;
                (mu, "non-adjacent")
            };
            if common != expected && report.first_violation.is_none() {
                report.first_violation =
                    Some(format!("{kind} pair ({i}, {j}) has {common} common neighbours"));
            }
        }
    }
    report.passed = report.first_violation.is_none();
    report
}
