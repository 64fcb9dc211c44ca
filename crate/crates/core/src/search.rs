//! Brute-force search for sharply transitive subsets of an enumerated group.
//!
//! A subset `S` of a group on `N` points is sharply transitive iff the rows
//! `{(x, x^g) : x}` for `g` in `S` exactly cover the `N^2` ordered pairs. Sharply
//! `t`-transitive sets are found the same way on the induced action on `t`-arrangements.
//! The cover is solved with dancing links, choosing the column with the fewest remaining
//! rows (lowest index on ties) and trying rows in group enumeration order.

use serde::Serialize;

use crate::perm::{induced_action, GroupEnumeration, PermError, Permutation};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Indices into the group enumeration of a sharply transitive subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpSet {
    pub t: usize,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { set: SharpSet, nodes: u64 },
    ExhaustiveNone { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&SharpSet> {
        match self {
            SearchOutcome::Found { set, .. } => Some(set),
            _ => None,
        }
    }
}

struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    column: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
    columns: usize,
}

impl Dlx {
    /// Node 0 is the root; nodes `1..=columns` are column headers.
    fn new(columns: usize, rows: &[Vec<usize>]) -> Self {
        let header_count = columns + 1;
        let mut d = Dlx {
            left: (0..header_count).map(|i| if i == 0 { columns } else { i - 1 }).collect(),
            right: (0..header_count).map(|i| if i == columns { 0 } else { i + 1 }).collect(),
            up: (0..header_count).collect(),
            down: (0..header_count).collect(),
            column: (0..header_count).collect(),
            row: vec![usize::MAX; header_count],
            size: vec![0; header_count],
            columns,
        };
        for (r, cols) in rows.iter().enumerate() {
            let first = d.left.len();
            for (k, &c) in cols.iter().enumerate() {
                let node = d.left.len();
                let header = c + 1;
                let last = d.up[header];
                d.up.push(last);
                d.down.push(header);
                d.down[last] = node;
                d.up[header] = node;
                d.column.push(header);
                d.row.push(r);
                d.size[header] += 1;
                let prev = if k == 0 { node } else { node - 1 };
                d.left.push(prev);
                d.right.push(first);
                d.right[prev] = node;
                d.left[first] = node;
            }
        }
        d
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.column[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    fn choose_column(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut c = self.right[0];
        while c != 0 {
            if best.is_none_or(|b| self.size[c] < self.size[b]) {
                best = Some(c);
            }
            c = self.right[c];
        }
        best
    }

    /// Returns `Some(true)` when a cover is found, `Some(false)` when this subtree is
    /// exhausted, `None` when the node budget runs out.
    fn search(&mut self, chosen: &mut Vec<usize>, nodes: &mut u64, budget: u64) -> Option<bool> {
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let Some(c) = self.choose_column() else {
            return Some(true);
        };
        if self.size[c] == 0 {
            return Some(false);
        }
        self.cover(c);
        let mut r = self.down[c];
        while r != c {
            chosen.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.column[j]);
                j = self.right[j];
            }
            let result = self.search(chosen, nodes, budget);
            if result != Some(false) {
                // Leave the structure as is; the search is over.
                return result;
            }
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.column[j]);
                j = self.left[j];
            }
            chosen.pop();
            r = self.down[r];
        }
        self.uncover(c);
        Some(false)
    }
}

/// Sharply transitive subset of `perms` (all of degree `n`), by exact cover.
pub fn find_sharply_transitive(perms: &[Permutation], n: usize, budget: u64) -> SearchOutcome {
    let rows: Vec<Vec<usize>> = perms
        .iter()
        .map(|g| (0..n).map(|x| x * n + g.apply(x)).collect())
        .collect();
    let mut dlx = Dlx::new(n * n, &rows);
    debug_assert_eq!(dlx.columns, n * n);
    let mut chosen = Vec::new();
    let mut nodes = 0;
    match dlx.search(&mut chosen, &mut nodes, budget) {
        Some(true) => {
            chosen.sort_unstable();
            SearchOutcome::Found {
                set: SharpSet {
                    t: 1,
                    elements: chosen,
                },
                nodes,
            }
        }
        Some(false) => SearchOutcome::ExhaustiveNone { nodes },
        None => SearchOutcome::BudgetExhausted { nodes: nodes - 1 },
    }
}

/// Searches `group` for a sharply `t`-transitive subset.
pub fn find_sharp_set(
    group: &GroupEnumeration,
    t: usize,
    budget: u64,
) -> Result<SearchOutcome, PermError> {
    let (degree, perms) = if t == 1 {
        (group.degree(), group.elements().to_vec())
    } else {
        let (arr, induced) = induced_action(group, t)?;
        (arr.len(), induced.elements().to_vec())
    };
    let mut outcome = find_sharply_transitive(&perms, degree, budget);
    if let SearchOutcome::Found { set, .. } = &mut outcome {
        set.t = t;
        let members: Vec<Permutation> = set.elements.iter().map(|&i| perms[i].clone()).collect();
        assert!(verify_sharply_transitive(&members, degree), "search returned an invalid witness");
    }
    Ok(outcome)
}

/// Exactly one member maps `x` to `y`, for every ordered pair of points.
pub fn verify_sharply_transitive(set: &[Permutation], n: usize) -> bool {
    if set.len() != n || set.iter().any(|g| g.degree() != n) {
        return false;
    }
    let mut seen = vec![false; n * n];
    for g in set {
        for x in 0..n {
            let cell = &mut seen[x * n + g.apply(x)];
            if *cell {
                return false;
            }
            *cell = true;
        }
    }
    true
}

/// Checks a candidate sharply `t`-transitive subset given as indices into `group`.
pub fn verify_sharp_set(group: &GroupEnumeration, set: &[usize], t: usize) -> Result<bool, PermError> {
    if set.iter().any(|&i| i >= group.order()) {
        return Ok(false);
    }
    let members: Vec<Permutation> = set.iter().map(|&i| group.elements()[i].clone()).collect();
    if t == 1 {
        return Ok(verify_sharply_transitive(&members, group.degree()));
    }
    let arr = crate::perm::Arrangements::new(group.degree(), t)?;
    let induced: Vec<Permutation> = members.iter().map(|g| arr.induce(g)).collect();
    Ok(verify_sharply_transitive(&induced, arr.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate, standard};

    #[test]
    fn regular_group_is_its_own_witness() {
        let c5 = enumerate(&standard::cyclic(5), 10).unwrap();
        let out = find_sharp_set(&c5, 1, 1000).unwrap();
        assert_eq!(out.found().unwrap().elements, vec![0, 1, 2, 3, 4]);
        assert!(verify_sharp_set(&c5, &[0, 1, 2, 3, 4], 1).unwrap());
    }

    #[test]
    fn duplicate_coverage_rejected() {
        let s3 = enumerate(&standard::symmetric(3), 10).unwrap();
        // identity and a transposition both fix a point.
        let t = s3.elements().iter().position(|g| g.cycle_type() == vec![2, 1]).unwrap();
        assert!(!verify_sharp_set(&s3, &[0, t, t], 1).unwrap());
        assert!(!verify_sharp_set(&s3, &[0, t], 1).unwrap());
    }

    #[test]
    fn small_groups() {
        let s3 = enumerate(&standard::symmetric(3), 10).unwrap();
        assert!(find_sharp_set(&s3, 1, 10_000).unwrap().found().is_some());
        // A4 = AGL(1, 4) is itself sharply 2-transitive on 4 points.
        let a4 = enumerate(&standard::alternating(4), 100).unwrap();
        assert_eq!(find_sharp_set(&a4, 2, 1_000_000).unwrap().found().unwrap().elements.len(), 12);
        let one = enumerate(&standard::trivial(2), 1).unwrap();
        assert!(matches!(
            find_sharp_set(&one, 1, 100).unwrap(),
            SearchOutcome::ExhaustiveNone { .. }
        ));
    }

    #[test]
    fn budget_is_reported() {
        let s5 = enumerate(&standard::symmetric(5), 200).unwrap();
        assert_eq!(
            find_sharp_set(&s5, 2, 3).unwrap(),
            SearchOutcome::BudgetExhausted { nodes: 3 }
        );
    }

    #[test]
    fn search_is_deterministic() {
        let s4 = enumerate(&standard::symmetric(4), 100).unwrap();
        let a = find_sharp_set(&s4, 1, 100_000).unwrap();
        let b = find_sharp_set(&s4, 1, 100_000).unwrap();
        assert_eq!(a, b);
    }
}
