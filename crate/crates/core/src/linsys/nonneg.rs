use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{solve_integer, ExactSystem, SolveOutcome, Witness};

pub const DEFAULT_BRANCH_BUDGET: u64 = 100_000;

fn q(x: i64) -> BigRational {
    BigRational::from(BigInt::from(x))
}

/// Feasibility of `A x = b`, `lower <= x <= upper` over the rationals by a phase-one simplex
/// with Bland's rule. Returns a basic feasible point.
fn lp_feasible(system: &ExactSystem, lower: &[BigInt], upper: &[Option<BigInt>]) -> Option<Vec<BigRational>> {
    let m = system.equation_count();
    let n = system.variable_count();
    let bounded: Vec<usize> = (0..n).filter(|&j| upper[j].is_some()).collect();
    let k = bounded.len();
    // Columns: z (n), slacks (k), artificials (m), then the right-hand side.
    let cols = n + k + m;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m + k);
    for (i, row) in system.rows.iter().enumerate() {
        let shift: BigInt = row.iter().zip(lower).map(|(&a, l)| BigInt::from(a) * l).sum();
        let mut rhs = BigRational::from(BigInt::from(system.rhs[i]) - shift);
        let sign = if rhs.is_negative() { -1 } else { 1 };
        let mut t: Vec<BigRational> = row.iter().map(|&a| q(sign * a)).collect();
        t.extend((0..k + m).map(|_| BigRational::zero()));
        t[n + k + i] = q(1);
        if sign < 0 {
            rhs = -rhs;
        }
        t.push(rhs);
        tab.push(t);
    }
    for (s, &j) in bounded.iter().enumerate() {
        let room = upper[j].as_ref().unwrap() - &lower[j];
        if room.is_negative() {
            return None;
        }
        let mut t = vec![BigRational::zero(); cols + 1];
        t[j] = q(1);
        t[n + s] = q(1);
        t[cols] = BigRational::from(room);
        tab.push(t);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n + k + i).chain((0..k).map(|s| n + s)).collect();
    let mut obj = vec![BigRational::zero(); cols + 1];
    for t in tab.iter().take(m) {
        for (o, x) in obj.iter_mut().zip(t) {
            *o -= x;
        }
    }
    for o in obj.iter_mut().skip(n + k).take(m) {
        *o = BigRational::zero();
    }

    loop {
        let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, t) in tab.iter().enumerate() {
            if !t[enter].is_positive() {
                continue;
            }
            let ratio = &t[cols] / &t[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (r, _) = leave.expect("phase-one objective is bounded below");
        let inv = tab[r][enter].recip();
        for x in tab[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot = tab[r].clone();
        for (i, t) in tab.iter_mut().enumerate() {
            if i == r || t[enter].is_zero() {
                continue;
            }
            let f = t[enter].clone();
            for (x, y) in t.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, y) in obj.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        basis[r] = enter;
    }
    if !obj[cols].is_zero() {
        return None;
    }
    let mut x: Vec<BigRational> = lower.iter().map(|l| BigRational::from(l.clone())).collect();
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] += &tab[i][cols];
        }
    }
    Some(x)
}

/// Upper bounds implied by rows whose coefficients and right-hand side are all non-negative.
fn implied_upper_bounds(system: &ExactSystem) -> Vec<Option<BigInt>> {
    let mut upper: Vec<Option<BigInt>> = vec![None; system.variable_count()];
    for (row, &b) in system.rows.iter().zip(&system.rhs) {
        if b < 0 || row.iter().any(|&a| a < 0) {
            continue;
        }
        for (j, &a) in row.iter().enumerate() {
            if a > 0 {
                let bound = BigInt::from(b / a);
                if upper[j].as_ref().is_none_or(|u| bound < *u) {
                    upper[j] = Some(bound);
                }
            }
        }
    }
    upper
}

/// Decides `A x = b` over the non-negative integers by depth-first branch and bound on the
/// exact rational relaxation. Branches on the lowest-index fractional variable, floor side first.
pub fn solve_nonneg_integer(system: &ExactSystem, budget: u64) -> SolveOutcome {
    if !solve_integer(system).is_solvable() {
        let mut out = SolveOutcome::infeasible("no integral solution");
        out.notes.push("decided by Hermite elimination".to_string());
        return out;
    }
    let n = system.variable_count();
    let mut stack: Vec<(Vec<BigInt>, Vec<Option<BigInt>>)> =
        vec![(vec![BigInt::zero(); n], implied_upper_bounds(system))];
    let mut nodes = 0u64;
    while let Some((lower, upper)) = stack.pop() {
        if nodes == budget {
            return SolveOutcome::unknown(format!("branch budget of {budget} nodes exhausted"));
        }
        nodes += 1;
        let Some(x) = lp_feasible(system, &lower, &upper) else {
            continue;
        };
        match x.iter().position(|v| !v.is_integer()) {
            None => {
                let w = Witness::Integer(x.iter().map(|v| v.to_integer()).collect());
                assert!(system.check_witness(&w), "branch-and-bound witness failed substitution");
                let mut out = SolveOutcome::solvable(w);
                out.notes.push(format!("{nodes} branch-and-bound nodes"));
                return out;
            }
            Some(j) => {
                let fl = x[j].floor().to_integer();
                let mut up_lower = lower.clone();
                up_lower[j] = &fl + 1;
                stack.push((up_lower, upper.clone()));
                let mut down_upper = upper;
                down_upper[j] = Some(fl);
                stack.push((lower, down_upper));
            }
        }
    }
    let mut out = SolveOutcome::infeasible("relaxation infeasible on every branch");
    out.notes.push(format!("{nodes} branch-and-bound nodes"));
    out
}
