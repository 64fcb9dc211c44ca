use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{build_h_system, ExactSystem, SolveOutcome, Witness};
use crate::perm::GroupEnumeration;

/// Exact Gauss-Jordan elimination over the rationals.
pub fn solve_rational(system: &ExactSystem) -> SolveOutcome {
    let m = system.equation_count();
    let n = system.variable_count();
    let mut a: Vec<Vec<BigRational>> = system
        .rows
        .iter()
        .zip(&system.rhs)
        .map(|(r, &b)| {
            r.iter()
                .chain(std::iter::once(&b))
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut().skip(col) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let rank = pivots.len();
    if let Some(i) = (rank..m).find(|&i| !a[i][n].is_zero()) {
        let mut out = SolveOutcome::infeasible(format!("equation {i} reduces to 0 = nonzero"));
        out.rank = Some(rank);
        return out;
    }
    let mut x = vec![BigRational::zero(); n];
    for &(r, c) in &pivots {
        x[c] = a[r][n].clone();
    }
    let w = Witness::Rational(x);
    assert!(system.check_witness(&w), "rational witness failed substitution");
    let mut out = SolveOutcome::solvable(w);
    out.rank = Some(rank);
    out
}

/// Rational solvability via the collapsed system for `H = G`. A transitive group always
/// admits the uniform solution `x_g = n / |G|`, which appears here as class totals.
pub fn solve_rational_collapsed(group: &GroupEnumeration) -> SolveOutcome {
    let system = build_h_system(group, group).expect("a group is a subgroup of itself");
    let n = group.degree();
    let order = group.order();
    let mut reached = vec![false; n];
    for g in group.elements() {
        reached[g.apply(0)] = true;
    }
    if n > 0 && reached.iter().all(|&r| r) {
        let x: Vec<BigRational> = system
            .vars
            .iter()
            .map(|v| BigRational::new(BigInt::from(v.class_size * n), BigInt::from(order)))
            .collect();
        let w = Witness::Rational(x);
        assert!(system.check_witness(&w), "uniform solution failed substitution");
        let mut out = SolveOutcome::solvable(w);
        out.notes.push("transitive: uniform solution".to_string());
        return out;
    }
    let mut out = solve_rational(&system);
    out.notes.push("intransitive: eliminated".to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::super::{build_full_system, solve_integer, Status};
    use super::*;
    use crate::perm::{enumerate, standard};

    #[test]
    fn half_is_rational() {
        let s = ExactSystem::from_rows(vec![vec![2]], vec![1]);
        let out = solve_rational(&s);
        assert_eq!(
            out.witness,
            Some(Witness::Rational(vec![BigRational::new(1.into(), 2.into())]))
        );
        assert!(!solve_rational(&ExactSystem::from_rows(vec![vec![1], vec![1]], vec![1, 2])).is_solvable());
    }

    #[test]
    fn collapsed_agrees_with_full() {
        for spec in [standard::cyclic(5), standard::symmetric(4), standard::alternating(5), standard::trivial(2)] {
            let g = enumerate(&spec, 1000).unwrap();
            let fast = solve_rational_collapsed(&g).status;
            let full = build_full_system(&g);
            assert_eq!(fast, solve_rational(&full).status, "{}", g.name());
            if solve_integer(&full).is_solvable() {
                assert_eq!(fast, Status::Solvable);
            }
        }
    }
}
