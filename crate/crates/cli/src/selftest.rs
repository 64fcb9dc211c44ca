use std::time::Instant;

use serde::Serialize;

use sharpcert::bitset::PointSet;
use sharpcert::certify::{alternating_parity_consistency, doublecount_check, run_case, Case, CaseOptions};
use sharpcert::designs::{golay_witt_design, steiner_violations};
use sharpcert::geometry::Action;
use sharpcert::linsys::{
    build_full_system, build_h_system, solve_integer, solve_mod_p, solve_nonneg_integer, solve_rational, ExactSystem,
    DEFAULT_BRANCH_BUDGET,
};
use sharpcert::perm::{enumerate, standard, GroupEnumeration, GroupSpec, Permutation};
use sharpcert::search::{find_sharp_set, DEFAULT_NODE_BUDGET};

#[derive(Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

fn group(spec: GroupSpec) -> GroupEnumeration {
    enumerate(&spec, 10_000).expect("corpus groups are small")
}

fn corpus() -> Vec<GroupEnumeration> {
    vec![
        group(standard::trivial(2)),
        group(standard::cyclic(5)),
        group(standard::cyclic(6)),
        group(standard::symmetric(3)),
        group(standard::alternating(4)),
        group(standard::symmetric(4)),
    ]
}

/// Columns aligned by element, rows compared as a multiset.
fn same_up_to_row_order(a: &ExactSystem, b: &ExactSystem) -> bool {
    let canon = |s: &ExactSystem| {
        let mut order: Vec<usize> = (0..s.variable_count()).collect();
        order.sort_by_key(|&j| s.vars[j].element);
        let mut rows: Vec<Vec<i64>> = s
            .rows
            .iter()
            .zip(&s.rhs)
            .map(|(r, &b)| order.iter().map(|&j| r[j]).chain([b]).collect())
            .collect();
        rows.sort();
        rows
    };
    canon(a) == canon(b)
}

pub fn run(seed: u64) -> SelftestReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut check = |label: &str, passed: bool, detail: String| {
        checks.push(Check {
            label: label.into(),
            passed,
            detail,
        })
    };

    let w23 = golay_witt_design();
    let violations = steiner_violations(&w23, 4);
    check(
        "witt design is S(4,7,23)",
        w23.blocks.len() == 253 && violations == 0,
        format!("{} blocks, {violations} uncovered or repeated 4-subsets", w23.blocks.len()),
    );

    for g in corpus() {
        let full = build_full_system(&g);
        let fp: Vec<bool> = [2, 3, 5]
            .iter()
            .map(|&p| solve_mod_p(&full, p).expect("prime").is_solvable())
            .collect();
        let q = solve_rational(&full).is_solvable();
        let z = solve_integer(&full).is_solvable();
        let znn = solve_nonneg_integer(&full, DEFAULT_BRANCH_BUDGET).is_solvable();
        let monotone = (!znn || z) && (!z || q) && (!z || fp.iter().all(|&s| s));
        check(
            &format!("ring monotonicity on {}", g.name()),
            monotone,
            format!("znn={znn} z={z} q={q} f_2,f_3,f_5={fp:?}"),
        );

        let trivial = group(standard::trivial(g.degree()));
        let collapsed = build_h_system(&g, &trivial).expect("trivial subgroup");
        check(
            &format!("H = 1 matches the full system on {}", g.name()),
            same_up_to_row_order(&full, &collapsed),
            format!("{} equations, {} unknowns", full.equation_count(), full.variable_count()),
        );

        let n = g.degree() as i64;
        let h = build_h_system(&g, &g).expect("G is a subgroup of itself");
        let column_sums = (0..h.variable_count()).all(|j| h.column(j).iter().sum::<i64>() == n);
        let rhs_sum = h.rhs.iter().sum::<i64>() == n * n;
        check(
            &format!("orbit counts sum to n and n^2 on {}", g.name()),
            column_sums && rhs_sum,
            format!("{} orbits", h.equation_count()),
        );

        if let Some(set) = find_sharp_set(&g, 1, DEFAULT_NODE_BUDGET).expect("t = 1").found() {
            let members: Vec<Permutation> = set.elements.iter().map(|&i| g.elements()[i].clone()).collect();
            let d = g.degree();
            let b = PointSet::from_points(d, 0..d.div_ceil(2));
            let c = PointSet::from_points(d, (0..d).step_by(2));
            let report = doublecount_check(&members, &b, &c);
            check(
                &format!("double count on a sharply transitive subset of {}", g.name()),
                report.holds == Some(true),
                format!("sum {} expected {}", report.sum, report.expected),
            );
        }
    }

    let opts = CaseOptions {
        enumerate_group: true,
        seed,
        ..Default::default()
    };
    match run_case(&Case::Sp { n: 2, m: 1, action: Action::Projective }, &opts) {
        Ok(report) => check(
            "Sp(4,2) refutation agrees with the F_2 solver",
            report.is_refuted() && report.cross_checks.iter().all(|c| c.agrees),
            format!("spectrum support {:?}", report.support()),
        ),
        Err(e) => check("Sp(4,2) refutation agrees with the F_2 solver", false, e.to_string()),
    }

    let parity = alternating_parity_consistency(5).unwrap_or(false);
    check(
        "inversion parity matches cycle-type parity on S5",
        parity,
        "120 elements".into(),
    );

    let passed = checks.iter().all(|c| c.passed);
    SelftestReport {
        passed,
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
